//! Explicit compositions witnessing that line-supported functions lie in
//! the clonoid generated by a single function.

use super::FnTable;
use crate::error::{Error, Result};
use crate::gf::{Field, FieldElem};
use crate::linalg::{kernel, Matrix};

/// `A` with first row `b_i^{-1} e_i` (`i` the first nonzero index of `b`)
/// followed by a basis of the annihilator of `b`. `A (lambda b) =
/// (lambda, 0, ..., 0)`, and `A x` has a nonzero tail off the line.
pub fn line_transport_matrix(q_field: &Field, b: &[FieldElem]) -> Result<Matrix> {
    for &x in b {
        q_field.elem(x.0 as u64)?;
    }
    let i = b
        .iter()
        .position(|x| !x.is_zero())
        .ok_or(Error::ZeroDirection)?;
    let n = b.len();
    let mut first = vec![FieldElem::ZERO; n];
    first[i] = q_field.inv(b[i])?;
    let mut rows = vec![first];
    let ann = kernel(&Matrix::from_rows(q_field, n, &[b.to_vec()])?);
    rows.extend(ann.basis_vectors());
    Matrix::from_rows(q_field, n, &rows)
}

/// Moves `g`, supported on the line through `(1, 0, ..., 0)`, onto the line
/// through `b`: `f(lambda b) = g(lambda, 0, ..., 0)`, zero elsewhere.
pub fn line_transport(g: &FnTable, b: &[FieldElem]) -> Result<FnTable> {
    let n = g.arity();
    if b.len() != n {
        return Err(Error::ArityMismatch {
            expected: n,
            actual: b.len(),
        });
    }
    let pair = g.pair();
    for (idx, v) in g.values().iter().enumerate() {
        let x = pair.decode(idx, n);
        if !v.is_zero() && x[1..].iter().any(|c| !c.is_zero()) {
            return Err(Error::NotLineSupported);
        }
    }
    let a = line_transport_matrix(pair.q(), b)?;
    g.compose(&a)
}

/// The `(m-1) x m` matrices of the lifting step: `A_a : x -> (x_1 - a x_2,
/// x_3, ..., x_m)` for every `a`, and `B_a : x -> (a x_2, x_3, ..., x_m)`
/// for `a != 0`.
pub fn lift_matrices(q_field: &Field, m: usize) -> Result<(Vec<Matrix>, Vec<Matrix>)> {
    if m < 2 {
        return Err(Error::ArityMismatch {
            expected: 2,
            actual: m,
        });
    }
    let build = |first: Vec<FieldElem>| -> Result<Matrix> {
        let mut rows = vec![first];
        for j in 2..m {
            let mut r = vec![FieldElem::ZERO; m];
            r[j] = FieldElem::ONE;
            rows.push(r);
        }
        Matrix::from_rows(q_field, m, &rows)
    };
    let mut a_mats = Vec::new();
    let mut b_mats = Vec::new();
    for a in q_field.elements() {
        let mut first = vec![FieldElem::ZERO; m];
        first[0] = FieldElem::ONE;
        first[1] = q_field.neg(a);
        a_mats.push(build(first)?);
        if !a.is_zero() {
            let mut first = vec![FieldElem::ZERO; m];
            first[1] = a;
            b_mats.push(build(first)?);
        }
    }
    Ok((a_mats, b_mats))
}

/// `t_n` with `t_n(x, 0, ..., 0) = g(x)` and zero elsewhere, via
/// `q t_m = sum_a t_{m-1} o A_a - sum_{a != 0} t_{m-1} o B_a`.
pub fn lift_line_function(g: &FnTable, n: usize) -> Result<FnTable> {
    if g.arity() != 1 {
        return Err(Error::ArityMismatch {
            expected: 1,
            actual: g.arity(),
        });
    }
    if n == 0 {
        return Err(Error::ArityMismatch {
            expected: 1,
            actual: 0,
        });
    }
    if !g.is_zero_preserving() {
        return Err(Error::NotZeroPreserving);
    }
    let pair = g.pair();
    let p = pair.p();
    let q_inv = p.inv(p.from_int(pair.q().order() as i64))?;
    let minus_one = p.neg(FieldElem::ONE);
    let mut t = g.clone();
    for m in 2..=n {
        let (a_mats, b_mats) = lift_matrices(pair.q(), m)?;
        let mut r = FnTable::zero(pair, m)?;
        for a in &a_mats {
            r = r.add(&t.compose(a)?)?;
        }
        for b in &b_mats {
            r = r.add(&t.compose(b)?.scale(minus_one))?;
        }
        t = r.scale(q_inv);
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clonoid::{clonoid_closure_at_arity, lagrange_fn, FieldPair};
    use crate::error::Guard;

    fn ints(t: &FnTable) -> Vec<u16> {
        t.values().iter().map(|v| v.0).collect()
    }

    fn line_g(pr: &FieldPair) -> FnTable {
        lagrange_fn(pr, &[FieldElem(1), FieldElem(0)]).unwrap()
    }

    #[test]
    fn transport_examples() {
        let pr = FieldPair::from_orders(2, 3).unwrap();
        let g = line_g(&pr);
        assert_eq!(
            line_transport(&g, &[FieldElem(1), FieldElem(0)]).unwrap(),
            g
        );

        let f = line_transport(&g, &[FieldElem(1), FieldElem(1)]).unwrap();
        assert_eq!(ints(&f), vec![0, 0, 0, 0, 1, 0, 0, 0, 0]);
        let closure =
            clonoid_closure_at_arity(&pr, std::slice::from_ref(&g), 2, Guard::DESK).unwrap();
        assert!(closure.contains(f.values()).unwrap());

        let f = line_transport(&g, &[FieldElem(0), FieldElem(1)]).unwrap();
        assert_eq!(ints(&f), vec![0, 1, 0, 0, 0, 0, 0, 0, 0]);
    }

    #[test]
    fn transport_errors() {
        let pr = FieldPair::from_orders(2, 3).unwrap();
        let g = line_g(&pr);
        assert_eq!(
            line_transport(&g, &[FieldElem(0), FieldElem(0)]).unwrap_err(),
            Error::ZeroDirection
        );
        let off = lagrange_fn(&pr, &[FieldElem(1), FieldElem(1)]).unwrap();
        assert_eq!(
            line_transport(&off, &[FieldElem(1), FieldElem(0)]).unwrap_err(),
            Error::NotLineSupported
        );
        assert!(matches!(
            line_transport(&g, &[FieldElem(1)]),
            Err(Error::ArityMismatch { .. })
        ));
    }

    #[test]
    fn lift_examples() {
        let pr = FieldPair::from_orders(2, 3).unwrap();
        let g = FnTable::from_ints(&pr, 1, &[0, 1, 0]).unwrap();
        assert_eq!(lift_line_function(&g, 2).unwrap(), line_g(&pr));

        let z = FnTable::zero(&pr, 1).unwrap();
        assert_eq!(
            lift_line_function(&z, 3).unwrap(),
            FnTable::zero(&pr, 3).unwrap()
        );

        let g = FnTable::from_ints(&pr, 1, &[0, 1, 1]).unwrap();
        assert_eq!(
            ints(&lift_line_function(&g, 2).unwrap()),
            vec![0, 0, 0, 1, 0, 0, 1, 0, 0]
        );

        let one = FnTable::from_ints(&pr, 1, &[1, 1, 1]).unwrap();
        assert_eq!(
            lift_line_function(&one, 2).unwrap_err(),
            Error::NotZeroPreserving
        );
    }

    #[test]
    fn lift_needs_real_division() {
        // 3 is not 1 mod 5, so the division by q is exercised
        let pr = FieldPair::from_orders(5, 3).unwrap();
        let g = FnTable::from_ints(&pr, 1, &[0, 2, 4]).unwrap();
        let t = lift_line_function(&g, 3).unwrap();
        for (i, v) in t.values().iter().enumerate() {
            let x = pr.decode(i, 3);
            let expected = if x[1].is_zero() && x[2].is_zero() {
                g.values()[x[0].index()]
            } else {
                FieldElem::ZERO
            };
            assert_eq!(*v, expected, "at {x:?}");
        }
    }
}
