//! Dense exact linear algebra over a finite field.
//!
//! [`Subspace`] keeps its basis in reduced row echelon form, so two
//! subspaces are equal exactly when their basis arrays are equal. This is
//! what lets lattice enumeration deduplicate and hash subspaces directly.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fppoly::Poly;
use crate::gf::{Field, FieldElem};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<FieldElem>,
}

// dst -= c * src
#[inline]
fn axpy(field: &Field, dst: &mut [FieldElem], c: FieldElem, src: &[FieldElem]) {
    if c.is_zero() {
        return;
    }
    for (d, &s) in dst.iter_mut().zip(src) {
        if !s.is_zero() {
            *d = field.sub(*d, field.mul(c, s));
        }
    }
}

#[inline]
fn scale_in_place(field: &Field, row: &mut [FieldElem], c: FieldElem) {
    for x in row.iter_mut() {
        *x = field.mul(*x, c);
    }
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![FieldElem::ZERO; rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, FieldElem::ONE);
        }
        m
    }

    pub fn from_rows(field: &Field, cols: usize, rows: &[Vec<FieldElem>]) -> Result<Matrix> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    actual: r.len(),
                });
            }
            data.extend_from_slice(r);
        }
        Ok(Matrix {
            field: field.clone(),
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn from_ints(field: &Field, rows: &[&[u64]]) -> Result<Matrix> {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| field.elem(v)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_rows(field, cols, &rows)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> FieldElem {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: FieldElem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[FieldElem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[FieldElem]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn column(&self, j: usize) -> Vec<FieldElem> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix> {
        self.field.same_as(&rhs.field)?;
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                actual: rhs.rows,
            });
        }
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                let src = rhs.row(k);
                let dst = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
                for (d, &s) in dst.iter_mut().zip(src) {
                    *d = f.add(*d, f.mul(a, s));
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[FieldElem]) -> Result<Vec<FieldElem>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                actual: v.len(),
            });
        }
        let f = &self.field;
        Ok(self
            .row_iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .fold(FieldElem::ZERO, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect())
    }

    pub fn add(&self, rhs: &Matrix) -> Result<Matrix> {
        self.field.same_as(&rhs.field)?;
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                actual: rhs.rows * rhs.cols,
            });
        }
        let f = &self.field;
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(&a, &b)| f.add(a, b))
            .collect();
        Ok(Matrix {
            data,
            ..self.clone()
        })
    }

    pub fn scale(&self, c: FieldElem) -> Matrix {
        let mut m = self.clone();
        scale_in_place(&self.field, &mut m.data, c);
        m
    }

    pub fn pow(&self, mut e: u64) -> Result<Matrix> {
        let mut base = self.clone();
        let mut acc = Matrix::identity(&self.field, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            base = base.mul(&base)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// `poly(self)` by Horner's rule.
    pub fn eval_poly(&self, poly: &Poly) -> Result<Matrix> {
        self.field.same_as(poly.field())?;
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                actual: self.cols,
            });
        }
        let id = Matrix::identity(&self.field, self.rows);
        let mut acc = Matrix::zeros(&self.field, self.rows, self.cols);
        for &c in poly.coeffs().iter().rev() {
            acc = acc.mul(self)?.add(&id.scale(c))?;
        }
        Ok(acc)
    }

    pub fn rank(&self) -> usize {
        rref(self).1.len()
    }

    /// Some `x` with `self * x = b`, if the system is consistent.
    pub fn solve(&self, b: &[FieldElem]) -> Result<Option<Vec<FieldElem>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                actual: b.len(),
            });
        }
        let mut aug = Matrix::zeros(&self.field, self.rows, self.cols + 1);
        for (i, &bi) in b.iter().enumerate() {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, self.cols, bi);
        }
        let (r, pivots) = rref(&aug);
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![FieldElem::ZERO; self.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(i, self.cols);
        }
        Ok(Some(x))
    }

    /// Monic minimal polynomial of a square matrix, found as the first linear
    /// dependency among `I, M, M^2, ...` viewed as flat vectors.
    pub fn minimal_polynomial(&self) -> Result<Poly> {
        let n = self.rows;
        let f = &self.field;
        let mut powers: Vec<Vec<FieldElem>> = vec![Matrix::identity(f, n).data];
        let mut current = Matrix::identity(f, n);
        loop {
            current = current.mul(self)?;
            let k = powers.len();
            let mut cols = Matrix::zeros(f, n * n, k);
            for (j, p) in powers.iter().enumerate() {
                for (i, &v) in p.iter().enumerate() {
                    cols.set(i, j, v);
                }
            }
            if let Some(c) = cols.solve(&current.data)? {
                let mut cs: Vec<FieldElem> = c.iter().map(|&v| f.neg(v)).collect();
                cs.push(FieldElem::ONE);
                return Ok(Poly::new(f, cs));
            }
            powers.push(current.data.clone());
        }
    }
}

/// Reduced row echelon form and its pivot columns.
pub fn rref(m: &Matrix) -> (Matrix, Vec<usize>) {
    let f = &m.field;
    let mut a = m.clone();
    let cols = a.cols;
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == a.rows {
            break;
        }
        let Some(pr) = (r..a.rows).find(|&i| !a.get(i, c).is_zero()) else {
            continue;
        };
        if pr != r {
            for j in 0..cols {
                a.data.swap(pr * cols + j, r * cols + j);
            }
        }
        let inv = f.inv(a.get(r, c)).expect("nonzero pivot");
        scale_in_place(f, &mut a.data[r * cols..(r + 1) * cols], inv);
        let pivot_row: Vec<FieldElem> = a.row(r).to_vec();
        for i in 0..a.rows {
            if i != r {
                let factor = a.get(i, c);
                axpy(f, &mut a.data[i * cols..(i + 1) * cols], factor, &pivot_row);
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

/// Null space `{x : m x = 0}`.
pub fn kernel(m: &Matrix) -> Subspace {
    let f = &m.field;
    let (r, pivots) = rref(m);
    let mut is_pivot = vec![false; m.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..m.cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![FieldElem::ZERO; m.cols];
        v[free] = FieldElem::ONE;
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = f.neg(r.get(i, free));
        }
        basis.push(v);
    }
    SpanBuilder::from_vectors(f, m.cols, basis).finish()
}

/// Subspace of `F^ambient` with an RREF basis.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace {
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: &Field, ambient: usize) -> Subspace {
        Subspace {
            basis: Matrix::zeros(field, 0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: &Field, ambient: usize) -> Subspace {
        Subspace {
            basis: Matrix::identity(field, ambient),
            pivots: (0..ambient).collect(),
        }
    }

    /// Canonical span of the given vectors.
    pub fn span(field: &Field, ambient: usize, vectors: &[Vec<FieldElem>]) -> Result<Subspace> {
        let mut b = SpanBuilder::new(field, ambient);
        for v in vectors {
            b.insert(v)?;
        }
        Ok(b.finish())
    }

    pub fn field(&self) -> &Field {
        &self.basis.field
    }

    pub fn ambient(&self) -> usize {
        self.basis.cols
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<FieldElem>> {
        self.basis.row_iter().map(|r| r.to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.pivots.is_empty()
    }

    fn check_dim(&self, n: usize) -> Result<()> {
        if n == self.ambient() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.ambient(),
                actual: n,
            })
        }
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        self.field().same_as(other.field())?;
        self.check_dim(other.ambient())
    }

    pub fn contains(&self, v: &[FieldElem]) -> Result<bool> {
        self.check_dim(v.len())?;
        let f = self.field();
        // in RREF, v lies in the span iff it equals its own pivot-coordinate combination
        let mut residue = v.to_vec();
        for (i, &pc) in self.pivots.iter().enumerate() {
            let c = residue[pc];
            axpy(f, &mut residue, c, self.basis.row(i));
        }
        Ok(residue.iter().all(|x| x.is_zero()))
    }

    pub fn leq(&self, other: &Subspace) -> Result<bool> {
        other.check_compatible(self)?;
        if self.dim() > other.dim() {
            return Ok(false);
        }
        for row in self.basis.row_iter() {
            if !other.contains(row)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let mut b = SpanBuilder::new(self.field(), self.ambient());
        for row in self.basis.row_iter().chain(other.basis.row_iter()) {
            b.insert(row)?;
        }
        Ok(b.finish())
    }

    /// Linear functionals vanishing on the subspace, `{h : <h, v> = 0}`.
    pub fn annihilator(&self) -> Subspace {
        kernel(&self.basis)
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        // v is in both iff every functional of either annihilator kills it
        let ann_a = self.annihilator();
        let ann_b = other.annihilator();
        let mut rows = ann_a.basis_vectors();
        rows.extend(ann_b.basis_vectors());
        let stacked = Matrix::from_rows(self.field(), self.ambient(), &rows)?;
        Ok(kernel(&stacked))
    }

    pub fn to_json(&self) -> SubspaceJson {
        SubspaceJson {
            ambient: self.ambient(),
            basis: self
                .basis
                .row_iter()
                .map(|r| r.iter().map(|x| x.0).collect())
                .collect(),
        }
    }

    pub fn from_json(field: &Field, json: &SubspaceJson) -> Result<Subspace> {
        let rows = json
            .basis
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&v| field.elem(v as u64))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Subspace::span(field, json.ambient, &rows)
    }
}

/// Wire form `{"ambient": d, "basis": [[...], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubspaceJson {
    pub ambient: usize,
    pub basis: Vec<Vec<u16>>,
}

/// Incremental span accumulator. Rows are kept in echelon form (pivot
/// entries normalized to one) so each insertion costs one reduction pass.
#[derive(Clone, Debug)]
pub struct SpanBuilder {
    field: Field,
    ambient: usize,
    rows: Vec<Vec<FieldElem>>,
    // pivot column -> row index
    pivot_row: Vec<Option<usize>>,
}

impl SpanBuilder {
    pub fn new(field: &Field, ambient: usize) -> SpanBuilder {
        SpanBuilder {
            field: field.clone(),
            ambient,
            rows: Vec::new(),
            pivot_row: vec![None; ambient],
        }
    }

    fn from_vectors(field: &Field, ambient: usize, vs: Vec<Vec<FieldElem>>) -> SpanBuilder {
        let mut b = SpanBuilder::new(field, ambient);
        for v in vs {
            b.insert(&v).expect("consistent dimensions");
        }
        b
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ambient
    }

    /// Adds a vector; returns whether the span grew.
    pub fn insert(&mut self, v: &[FieldElem]) -> Result<bool> {
        if v.len() != self.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                actual: v.len(),
            });
        }
        let f = &self.field;
        let mut w = v.to_vec();
        for c in 0..self.ambient {
            if w[c].is_zero() {
                continue;
            }
            match self.pivot_row[c] {
                Some(ri) => {
                    let coef = w[c];
                    axpy(f, &mut w, coef, &self.rows[ri]);
                }
                None => {
                    let inv = f.inv(w[c]).expect("nonzero");
                    scale_in_place(f, &mut w, inv);
                    self.pivot_row[c] = Some(self.rows.len());
                    self.rows.push(w);
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }

    pub fn finish(self) -> Subspace {
        let m = Matrix::from_rows(&self.field, self.ambient, &self.rows).expect("rectangular");
        let (r, pivots) = rref(&m);
        let k = pivots.len();
        Subspace {
            basis: Matrix {
                data: r.data[..k * self.ambient].to_vec(),
                rows: k,
                ..r
            },
            pivots,
        }
    }
}

/// Calls `visit` once for every subspace of `F^ambient`, rank by rank, by
/// walking all RREF matrices.
pub fn for_each_subspace(field: &Field, ambient: usize, mut visit: impl FnMut(&Subspace)) {
    let q = field.order() as u64;
    for rank in 0..=ambient {
        let mut pivots: Vec<usize> = (0..rank).collect();
        loop {
            // free slots: (row, col) with col > pivot[row] and col not a pivot
            let mut free = Vec::new();
            for (i, &pc) in pivots.iter().enumerate() {
                for c in pc + 1..ambient {
                    if !pivots.contains(&c) {
                        free.push((i, c));
                    }
                }
            }
            let mut basis = Matrix::zeros(field, rank, ambient);
            for (i, &pc) in pivots.iter().enumerate() {
                basis.set(i, pc, FieldElem::ONE);
            }
            let total = q.pow(free.len() as u32);
            let mut digits = vec![0u64; free.len()];
            for step in 0..total {
                if step > 0 {
                    // odometer increment
                    for (d, &(i, c)) in digits.iter_mut().zip(&free) {
                        *d += 1;
                        if *d == q {
                            *d = 0;
                            basis.set(i, c, FieldElem::ZERO);
                        } else {
                            basis.set(i, c, FieldElem(*d as u16));
                            break;
                        }
                    }
                }
                let s = Subspace {
                    basis: basis.clone(),
                    pivots: pivots.clone(),
                };
                visit(&s);
            }
            if !next_combination(&mut pivots, ambient) {
                break;
            }
        }
    }
}

fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    for i in (0..k).rev() {
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}
