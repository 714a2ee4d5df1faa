//! The shift operator `f -> (x -> f(alpha x))` on `F_p^{F_q \ {0}}`.
//!
//! Coordinates of `F_p^{F_q \ {0}}` are ordered by powers of the primitive
//! element: slot `t` holds the value at `alpha^t`. In these coordinates the
//! operator is the cyclic shift moving the value in slot `t + 1` to slot `t`,
//! and `e_0` (the indicator of `1`) is a cyclic vector for the whole space.
//! Function tables use the natural element order instead; [`ShiftOperator::to_natural`]
//! and [`ShiftOperator::from_natural`] convert between the two.

use crate::error::{Error, Guard, Result};
use crate::fppoly::{factor, poly_gcd, target_poly, Factorization, Poly};
use crate::gf::{Field, FieldElem};
use crate::linalg::{for_each_subspace, kernel, Matrix, SpanBuilder, Subspace};

/// Bound on `p^(q-1)` below which all subspaces may be enumerated.
pub const BRUTE_FORCE_LIMIT: u64 = 729;

#[derive(Clone, Debug)]
pub struct ShiftOperator {
    p_field: Field,
    q_field: Field,
    alpha: FieldElem,
    coord_order: Vec<FieldElem>,
    slot_of: Vec<usize>,
    matrix: Matrix,
}

#[derive(Clone, Debug)]
pub struct PrimaryComponent {
    pub factor: Poly,
    pub multiplicity: usize,
    /// `ker(factor(M)^multiplicity)`
    pub space: Subspace,
    /// `ker(factor(M)^j)` for `j = 0..=multiplicity`
    pub chain: Vec<Subspace>,
}

#[derive(Clone, Debug)]
pub struct PrimaryData {
    pub factorization: Factorization,
    pub components: Vec<PrimaryComponent>,
}

/// An invariant subspace tagged with its per-component kernel exponents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantSubspace {
    pub exponents: Vec<usize>,
    pub space: Subspace,
}

impl ShiftOperator {
    pub fn new(p_field: &Field, q_field: &Field) -> Result<ShiftOperator> {
        if p_field.characteristic() == q_field.characteristic() {
            return Err(Error::SameCharacteristic {
                p: p_field.order(),
                q: q_field.order(),
            });
        }
        let alpha = q_field.primitive();
        let d = q_field.order() as usize - 1;
        let coord_order: Vec<FieldElem> = (0..d).map(|t| q_field.pow(alpha, t as u64)).collect();
        let mut slot_of = vec![usize::MAX; d + 1];
        for (t, a) in coord_order.iter().enumerate() {
            slot_of[a.index()] = t;
        }
        let mut matrix = Matrix::zeros(p_field, d, d);
        for t in 0..d {
            matrix.set(t, (t + 1) % d, FieldElem::ONE);
        }
        Ok(ShiftOperator {
            p_field: p_field.clone(),
            q_field: q_field.clone(),
            alpha,
            coord_order,
            slot_of,
            matrix,
        })
    }

    pub fn p_field(&self) -> &Field {
        &self.p_field
    }

    pub fn q_field(&self) -> &Field {
        &self.q_field
    }

    pub fn alpha(&self) -> FieldElem {
        self.alpha
    }

    pub fn dim(&self) -> usize {
        self.coord_order.len()
    }

    /// `alpha^0, alpha^1, ..., alpha^{q-2}`.
    pub fn coord_order(&self) -> &[FieldElem] {
        &self.coord_order
    }

    /// Slot of a nonzero element of `F_q`.
    pub fn slot_of(&self, a: FieldElem) -> usize {
        self.slot_of[a.index()]
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, v: &[FieldElem]) -> Vec<FieldElem> {
        let d = self.dim();
        (0..d).map(|t| v[(t + 1) % d]).collect()
    }

    fn unit_vector(&self, i: usize) -> Vec<FieldElem> {
        let mut v = vec![FieldElem::ZERO; self.dim()];
        v[i] = FieldElem::ONE;
        v
    }

    /// Columns `e_0, M e_0, ..., M^{d-1} e_0`.
    pub fn krylov_matrix(&self) -> Matrix {
        let d = self.dim();
        let mut k = Matrix::zeros(&self.p_field, d, d);
        let mut v = self.unit_vector(0);
        for j in 0..d {
            for (i, &x) in v.iter().enumerate() {
                k.set(i, j, x);
            }
            v = self.apply(&v);
        }
        k
    }

    /// Minimal polynomial, read off the first dependency among Krylov
    /// iterates of `e_0`. Since `e_0` is cyclic this is the operator's
    /// minimal polynomial.
    pub fn minimal_polynomial(&self) -> Poly {
        let f = &self.p_field;
        let d = self.dim();
        let mut iterates = vec![self.unit_vector(0)];
        loop {
            let next = self.apply(iterates.last().unwrap());
            let k = iterates.len();
            let mut cols = Matrix::zeros(f, d, k);
            for (j, v) in iterates.iter().enumerate() {
                for (i, &x) in v.iter().enumerate() {
                    cols.set(i, j, x);
                }
            }
            if let Some(c) = cols.solve(&next).expect("square shapes") {
                let mut cs: Vec<FieldElem> = c.iter().map(|&x| f.neg(x)).collect();
                cs.push(FieldElem::ONE);
                return Poly::new(f, cs);
            }
            iterates.push(next);
        }
    }

    pub fn primary_data(&self) -> Result<PrimaryData> {
        let g = target_poly(&self.p_field, &self.q_field)?;
        let factorization = factor(&g)?;
        let mut components = Vec::with_capacity(factorization.factors.len());
        for (p, k) in &factorization.factors {
            let pm = self.matrix.eval_poly(p)?;
            let mut chain = vec![Subspace::zero(&self.p_field, self.dim())];
            let mut power = Matrix::identity(&self.p_field, self.dim());
            for _ in 0..*k {
                power = power.mul(&pm)?;
                chain.push(kernel(&power));
            }
            components.push(PrimaryComponent {
                factor: p.clone(),
                multiplicity: *k,
                space: chain.last().unwrap().clone(),
                chain,
            });
        }
        Ok(PrimaryData {
            factorization,
            components,
        })
    }

    pub fn is_invariant(&self, w: &Subspace) -> Result<bool> {
        if w.ambient() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                actual: w.ambient(),
            });
        }
        for row in w.basis().row_iter() {
            if !w.contains(&self.apply(row))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Every invariant subspace, found by filtering all subspaces of
    /// `F_p^{q-1}`. Independent of the factorization.
    pub fn brute_force_invariant_subspaces(&self, guard: Guard) -> Result<Vec<Subspace>> {
        let size = (self.p_field.order() as u64)
            .checked_pow(self.dim() as u32)
            .unwrap_or(u64::MAX);
        guard.check("p^(q-1) for subspace enumeration", size, BRUTE_FORCE_LIMIT)?;
        let mut out = Vec::new();
        for_each_subspace(&self.p_field, self.dim(), |s| {
            if self.is_invariant(s).expect("matching dimension") {
                out.push(s.clone());
            }
        });
        Ok(out)
    }

    /// Span of `v, Mv, M^2 v, ...`.
    pub fn cyclic_span(&self, v: &[FieldElem]) -> Result<Subspace> {
        let mut b = SpanBuilder::new(&self.p_field, self.dim());
        let mut cur = v.to_vec();
        for _ in 0..self.dim() {
            b.insert(&cur)?;
            cur = self.apply(&cur);
        }
        Ok(b.finish())
    }

    /// A cyclic vector `d(M) e_0` for an invariant subspace, with `d` the
    /// monic gcd of `x^{q-1} - 1` and the Krylov coordinate polynomials of
    /// the basis. The zero subspace yields `(0, x^{q-1} - 1)`.
    pub fn cyclic_vector(&self, w: &Subspace) -> Result<(Vec<FieldElem>, Poly)> {
        if !self.is_invariant(w)? {
            return Err(Error::NotInvariant);
        }
        let krylov = self.krylov_matrix();
        let mut d = target_poly(&self.p_field, &self.q_field)?;
        for row in w.basis().row_iter() {
            let coords = krylov.solve(row)?.expect("e_0 is cyclic");
            d = poly_gcd(&d, &Poly::new(&self.p_field, coords))?;
        }
        let v = self.matrix.eval_poly(&d)?.mul_vec(&self.unit_vector(0))?;
        Ok((v, d))
    }

    /// Lifts a subspace of `F_p^{F_q \ {0}}` (slot coordinates) to the
    /// 0-preserving subspace of `F_p^{F_q}` (natural coordinates).
    pub fn to_natural(&self, w: &Subspace) -> Result<Subspace> {
        let q = self.q_field.order() as usize;
        let rows: Vec<Vec<FieldElem>> = w
            .basis()
            .row_iter()
            .map(|row| {
                let mut v = vec![FieldElem::ZERO; q];
                for (t, a) in self.coord_order.iter().enumerate() {
                    v[a.index()] = row[t];
                }
                v
            })
            .collect();
        Subspace::span(&self.p_field, q, &rows)
    }

    /// `{(v_1..v_{q-1}) : (0, v_1..v_{q-1}) in V}` in slot coordinates.
    pub fn from_natural(&self, v: &Subspace) -> Result<Subspace> {
        let q = self.q_field.order() as usize;
        let zero_preserving: Vec<Vec<FieldElem>> = (1..q)
            .map(|a| {
                let mut e = vec![FieldElem::ZERO; q];
                e[a] = FieldElem::ONE;
                e
            })
            .collect();
        let v0 = Subspace::span(&self.p_field, q, &zero_preserving)?;
        let part = v.intersect(&v0)?;
        let rows: Vec<Vec<FieldElem>> = part
            .basis()
            .row_iter()
            .map(|row| self.coord_order.iter().map(|a| row[a.index()]).collect())
            .collect();
        Subspace::span(&self.p_field, self.dim(), &rows)
    }
}

impl PrimaryData {
    /// Multiplicities `k_i`, i.e. the largest exponent per component.
    pub fn exponent_bounds(&self) -> Vec<usize> {
        self.components.iter().map(|c| c.multiplicity).collect()
    }

    /// Number of invariant subspaces, `prod (k_i + 1)`.
    pub fn lattice_size(&self) -> u64 {
        self.components
            .iter()
            .map(|c| c.multiplicity as u64 + 1)
            .product()
    }

    /// `sum_i ker(p_i(M)^{j_i})`.
    pub fn subspace_for(&self, exponents: &[usize]) -> Result<Subspace> {
        if exponents.len() != self.components.len() {
            return Err(Error::DimensionMismatch {
                expected: self.components.len(),
                actual: exponents.len(),
            });
        }
        let first = &self.components.first().expect("x - 1 always divides").chain[0];
        let mut acc = Subspace::zero(first.field(), first.ambient());
        for (c, &j) in self.components.iter().zip(exponents) {
            let piece = c.chain.get(j).ok_or(Error::DimensionMismatch {
                expected: c.multiplicity,
                actual: j,
            })?;
            acc = acc.sum(piece)?;
        }
        Ok(acc)
    }

    /// All invariant subspaces, exponent tuples in lexicographic order.
    pub fn invariant_lattice(&self) -> Vec<InvariantSubspace> {
        exponent_tuples(&self.exponent_bounds())
            .into_iter()
            .map(|exponents| InvariantSubspace {
                space: self.subspace_for(&exponents).expect("tuples within bounds"),
                exponents,
            })
            .collect()
    }
}

/// All tuples with `0 <= t_i <= bounds_i`, lexicographically.
pub fn exponent_tuples(bounds: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![vec![0; bounds.len()]];
    loop {
        let mut t = out.last().unwrap().clone();
        let mut i = bounds.len();
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if t[i] < bounds[i] {
                t[i] += 1;
                break;
            }
            t[i] = 0;
        }
        out.push(t);
    }
}
