//! Complete factorization over `F_Q`: squarefree decomposition, then
//! distinct-degree splitting, then a derandomized equal-degree split. The
//! equal-degree step walks candidate polynomials in encoding order instead
//! of sampling, so the output is reproducible.

use std::fmt;

use super::{poly_gcd, Poly};
use crate::error::{Error, Result};
use crate::gf::{Field, FieldElem};

/// `unit * prod(factor_i ^ multiplicity_i)` with monic, pairwise distinct
/// irreducible factors in canonical order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Factorization {
    pub unit: FieldElem,
    pub factors: Vec<(Poly, usize)>,
}

impl Factorization {
    /// Multiplies the factorization back out.
    pub fn expand(&self, field: &Field) -> Poly {
        self.factors
            .iter()
            .fold(Poly::constant(field, self.unit), |acc, (p, k)| {
                &acc * &p.pow(*k as u64)
            })
    }

    pub fn multiplicities(&self) -> Vec<usize> {
        self.factors.iter().map(|(_, k)| *k).collect()
    }

    /// Position of a monic factor, if present.
    pub fn index_of(&self, factor: &Poly) -> Option<usize> {
        self.factors.iter().position(|(p, _)| p == factor)
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.unit != FieldElem::ONE || self.factors.is_empty() {
            parts.push(self.unit.to_string());
        }
        for (p, k) in &self.factors {
            parts.push(format!("({p})^{k}"));
        }
        write!(f, "{}", parts.join(" * "))
    }
}

pub fn factor(f: &Poly) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let unit = f.lead();
    let monic = f.monic();
    let mut factors = Vec::new();
    for (part, mult) in squarefree_decomposition(&monic) {
        for (block, d) in distinct_degree(&part) {
            for irr in equal_degree(&block, d) {
                factors.push((irr, mult));
            }
        }
    }
    factors.sort_by(|a, b| a.0.canonical_cmp(&b.0));
    Ok(Factorization { unit, factors })
}

fn gcd(a: &Poly, b: &Poly) -> Poly {
    poly_gcd(a, b).expect("same field")
}

fn pth_root(f: &Poly) -> Poly {
    let field = f.field();
    let r = field.characteristic() as usize;
    let cs = f
        .coeffs()
        .iter()
        .step_by(r)
        .map(|&c| field.frobenius_root(c))
        .collect();
    Poly::new(field, cs)
}

/// Pairs `(s, m)` of coprime squarefree monic polynomials with
/// `f = prod s^m`. `f` must be monic.
fn squarefree_decomposition(f: &Poly) -> Vec<(Poly, usize)> {
    let r = f.field().characteristic() as usize;
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let d = f.derivative();
    let mut rest = if d.is_zero() {
        f.clone()
    } else {
        let mut c = gcd(f, &d);
        let mut w = f.quo(&c);
        let mut i = 1;
        while !w.is_one() {
            let y = gcd(&w, &c);
            let fac = w.quo(&y);
            if !fac.is_one() {
                out.push((fac, i));
            }
            i += 1;
            w = y;
            c = c.quo(&w);
        }
        c
    };
    if !rest.is_one() {
        rest = pth_root(&rest);
        for (g, m) in squarefree_decomposition(&rest) {
            out.push((g, m * r));
        }
    }
    out
}

/// Splits a squarefree monic polynomial into products of irreducibles of
/// equal degree, returned as `(product, degree)`.
fn distinct_degree(f: &Poly) -> Vec<(Poly, usize)> {
    let field = f.field();
    let q = field.order() as u64;
    let x = Poly::x(field);
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut w = x.clone();
    let mut d = 0;
    while rest.degree().unwrap_or(0) >= 2 * (d + 1) {
        d += 1;
        w = w.pow_mod(q, &rest).expect("nonzero modulus");
        let g = gcd(&(&w - &x), &rest);
        if !g.is_one() {
            rest = rest.quo(&g);
            w = w.rem(&rest).expect("nonzero modulus");
            out.push((g, d));
        }
    }
    if let Some(deg) = rest.degree().filter(|&deg| deg > 0) {
        out.push((rest, deg));
    }
    out
}

/// Candidate splitting polynomial number `code` (base-`Q` digits as
/// coefficients, lowest degree first).
fn candidate(field: &Field, mut code: u64) -> Poly {
    let q = field.order() as u64;
    let mut cs = Vec::new();
    while code > 0 {
        cs.push(FieldElem((code % q) as u16));
        code /= q;
    }
    Poly::new(field, cs)
}

fn splitting_image(h: &Poly, f: &Poly, d: usize) -> Poly {
    let field = f.field();
    let q = field.order() as u64;
    if field.characteristic() == 2 {
        // absolute trace F_{Q^d} -> F_2 applied to h mod f
        let steps = field.degree() as usize * d;
        let mut t = h.rem(f).unwrap();
        let mut acc = t.clone();
        for _ in 1..steps {
            t = (&t * &t).rem(f).unwrap();
            acc = &acc + &t;
        }
        acc
    } else {
        // h^{(Q^d-1)/2} = (h * h^Q * ... * h^{Q^{d-1}})^{(Q-1)/2}
        let mut frob = h.rem(f).unwrap();
        let mut norm = frob.clone();
        for _ in 1..d {
            frob = frob.pow_mod(q, f).unwrap();
            norm = (&norm * &frob).rem(f).unwrap();
        }
        let s = norm.pow_mod((q - 1) / 2, f).unwrap();
        &s - &Poly::one(field)
    }
}

/// Irreducible factors of `f`, all of which have degree `d`.
fn equal_degree(f: &Poly, d: usize) -> Vec<Poly> {
    let n = f.degree().expect("nonzero");
    if n == d {
        return vec![f.clone()];
    }
    let field = f.field();
    let q = field.order() as u64;
    // constants never split, so start at x
    let mut code = q;
    loop {
        let h = candidate(field, code);
        code += 1;
        let g = gcd(&splitting_image(&h, f, d), f);
        let gd = g.degree().unwrap_or(0);
        if gd > 0 && gd < n {
            let mut out = equal_degree(&g, d);
            out.extend(equal_degree(&f.quo(&g), d));
            return out;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fppoly::target_poly;

    fn p(field: &Field, cs: &[u64]) -> Poly {
        Poly::from_ints(field, cs).unwrap()
    }

    #[test]
    fn documented_factorizations() {
        let f2 = Field::new(2).unwrap();
        let fac = factor(&p(&f2, &[1, 0, 1])).unwrap();
        assert_eq!(fac.factors, vec![(p(&f2, &[1, 1]), 2)]);

        let f5 = Field::new(5).unwrap();
        let fac = factor(&p(&f5, &[4, 0, 1])).unwrap();
        assert_eq!(
            fac.factors,
            vec![(p(&f5, &[1, 1]), 1), (p(&f5, &[4, 1]), 1)]
        );
        assert_eq!(fac.to_string(), "(x+1)^1 * (x+4)^1");

        let fac = factor(&p(&f2, &[1, 0, 0, 0, 0, 0, 1])).unwrap();
        assert_eq!(
            fac.factors,
            vec![(p(&f2, &[1, 1]), 2), (p(&f2, &[1, 1, 1]), 2)]
        );
        assert_eq!(fac.to_string(), "(x+1)^2 * (x^2+x+1)^2");

        let f3 = Field::new(3).unwrap();
        let fac = factor(&p(&f3, &[2, 1])).unwrap();
        assert_eq!(fac.factors, vec![(p(&f3, &[2, 1]), 1)]);
    }

    #[test]
    fn zero_has_no_factorization() {
        let f3 = Field::new(3).unwrap();
        assert_eq!(factor(&Poly::zero(&f3)), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn units_and_constants() {
        let f7 = Field::new(7).unwrap();
        let fac = factor(&p(&f7, &[3])).unwrap();
        assert!(fac.factors.is_empty());
        assert_eq!(fac.unit, FieldElem(3));
        let g = p(&f7, &[1, 2, 3, 4]);
        let fac = factor(&g).unwrap();
        assert_eq!(fac.unit, FieldElem(4));
        assert_eq!(fac.expand(&f7), g);
    }

    #[test]
    fn extension_field_targets() {
        // x^2 - 1 over F_4 is (x+1)^2; x^3 - 1 over F_4 splits into three roots
        let f4 = Field::new(4).unwrap();
        let fac = factor(&target_poly(&f4, &Field::new(3).unwrap()).unwrap()).unwrap();
        assert_eq!(fac.multiplicities(), vec![2]);
        let fac = factor(&p(&f4, &[1, 0, 0, 1])).unwrap();
        assert_eq!(fac.factors.len(), 3);
        assert!(fac
            .factors
            .iter()
            .all(|(f, k)| f.degree() == Some(1) && *k == 1));
    }

    #[test]
    fn inseparable_input() {
        // (x^2+x+1)^4 (x+1)^3 over F_2
        let f2 = Field::new(2).unwrap();
        let a = p(&f2, &[1, 1, 1]).pow(4);
        let b = p(&f2, &[1, 1]).pow(3);
        let fac = factor(&(&a * &b)).unwrap();
        assert_eq!(
            fac.factors,
            vec![(p(&f2, &[1, 1]), 3), (p(&f2, &[1, 1, 1]), 4)]
        );
    }
}
