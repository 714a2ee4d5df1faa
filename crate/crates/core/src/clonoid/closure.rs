use super::table::increment;
use super::{FieldPair, FnTable};
use crate::error::{Error, Guard, Result};
use crate::gf::FieldElem;
use crate::linalg::{kernel, Matrix, SpanBuilder, Subspace};

/// Bound on the number `q^{k n}` of right-composition matrices per generator.
pub const CLOSURE_LIMIT: u64 = 15625;
/// Bound on the table length `q^n` for closure and `Pol` computations.
pub const TABLE_LIMIT: u64 = 729;

fn check_table(pair: &FieldPair, n: usize, guard: Guard) -> Result<()> {
    let len = (pair.q().order() as u64)
        .checked_pow(n as u32)
        .unwrap_or(u64::MAX);
    guard.check("table length q^n", len, TABLE_LIMIT)
}

/// The n-ary part of the clonoid generated by `fns`: the span of every
/// `x -> f(A x)` with `A in F_q^{k x n}`. Composites of compositions are
/// again compositions, so a single pass is closed.
pub fn clonoid_closure_at_arity(
    pair: &FieldPair,
    fns: &[FnTable],
    n: usize,
    guard: Guard,
) -> Result<Subspace> {
    if n == 0 {
        return Err(Error::ArityMismatch {
            expected: 1,
            actual: 0,
        });
    }
    check_table(pair, n, guard)?;
    let fq = pair.q();
    let q = fq.order() as usize;
    for f in fns {
        pair.same_as(f.pair())?;
        let count = (q as u64)
            .checked_pow((f.arity() * n) as u32)
            .unwrap_or(u64::MAX);
        guard.check("right-composition matrices q^(k*n)", count, CLOSURE_LIMIT)?;
    }
    let mut span = SpanBuilder::new(pair.p(), pair.table_len(n)?);
    for f in fns {
        let k = f.arity();
        let mut entries = vec![FieldElem::ZERO; k * n];
        let count = q.pow((k * n) as u32);
        for step in 0..count {
            if step > 0 {
                increment(&mut entries, q);
            }
            let rows: Vec<Vec<FieldElem>> = entries
                .chunks(n.max(1))
                .take(k)
                .map(|c| c.to_vec())
                .collect();
            let a = if k == 0 {
                Matrix::zeros(fq, 0, n)
            } else {
                Matrix::from_rows(fq, n, &rows)?
            };
            span.insert(f.compose(&a)?.values())?;
            if span.is_full() {
                return Ok(span.finish());
            }
        }
    }
    Ok(span.finish())
}

/// Whether `v` is closed under `f -> (x -> f(ax))` for every `a in F_q`.
pub fn is_action_closed(pair: &FieldPair, v: &Subspace) -> Result<bool> {
    let q = pair.q();
    if v.ambient() != q.order() as usize {
        return Err(Error::DimensionMismatch {
            expected: q.order() as usize,
            actual: v.ambient(),
        });
    }
    pair.p().same_as(v.field())?;
    for row in v.basis().row_iter() {
        for a in q.elements() {
            let moved: Vec<FieldElem> = q.elements().map(|x| row[q.mul(a, x).index()]).collect();
            if !v.contains(&moved)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `Pol(U, V)` at arity `n`: all tables whose scalar-line specializations
/// `x -> f(c_1 x, ..., c_n x)` lie in `v`.
pub fn pol_at_arity(pair: &FieldPair, v: &Subspace, n: usize, guard: Guard) -> Result<Subspace> {
    if !is_action_closed(pair, v)? {
        return Err(Error::NotActionClosed);
    }
    check_table(pair, n, guard)?;
    let fq = pair.q();
    let len = pair.table_len(n)?;
    let functionals = v.annihilator();
    // one constraint per (c, h): sum_x h(x) f(c x) = 0
    let mut constraints = SpanBuilder::new(pair.p(), len);
    let p = pair.p();
    for c in pair.points(n)? {
        let line: Vec<usize> = fq
            .elements()
            .map(|x| {
                let point: Vec<FieldElem> = c.iter().map(|&ci| fq.mul(ci, x)).collect();
                pair.encode(&point)
            })
            .collect();
        for h in functionals.basis().row_iter() {
            let mut row = vec![FieldElem::ZERO; len];
            for (x, &idx) in line.iter().enumerate() {
                row[idx] = p.add(row[idx], h[x]);
            }
            constraints.insert(&row)?;
        }
        if constraints.is_full() {
            break;
        }
    }
    let stacked = constraints.finish();
    Ok(kernel(stacked.basis()))
}

/// Whether every scalar-line specialization of `f` lies in `unary_part`.
pub fn membership_in(f: &FnTable, unary_part: &Subspace) -> Result<bool> {
    let pair = f.pair();
    pair.p().same_as(unary_part.field())?;
    if unary_part.ambient() != pair.q().order() as usize {
        return Err(Error::DimensionMismatch {
            expected: pair.q().order() as usize,
            actual: unary_part.ambient(),
        });
    }
    for c in pair.points(f.arity())? {
        if !unary_part.contains(f.specialize(&c)?.values())? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clonoid::{lagrange_fn, unary_submodule_closure};

    fn pair(p: u64, q: u64) -> FieldPair {
        FieldPair::from_orders(p, q).unwrap()
    }

    fn zero_preserving(pr: &FieldPair) -> Subspace {
        let f1 = lagrange_fn(pr, &[FieldElem::ONE]).unwrap();
        unary_submodule_closure(pr, &[f1]).unwrap()
    }

    #[test]
    fn closure_examples() {
        let pr = pair(2, 3);
        let f1 = lagrange_fn(&pr, &[FieldElem::ONE]).unwrap();
        let c = clonoid_closure_at_arity(&pr, &[f1], 2, Guard::DESK).unwrap();
        assert_eq!(c.dim(), 8);
        assert_eq!(
            c,
            pol_at_arity(&pr, &zero_preserving(&pr), 2, Guard::DESK).unwrap()
        );

        let z = FnTable::zero(&pr, 1).unwrap();
        assert!(clonoid_closure_at_arity(&pr, &[z], 3, Guard::DESK)
            .unwrap()
            .is_zero());

        let ones = FnTable::constant(&pr, 1, FieldElem::ONE).unwrap();
        let c = clonoid_closure_at_arity(&pr, &[ones], 2, Guard::DESK).unwrap();
        assert_eq!(c.dim(), 1);
        assert!(c.contains(&[FieldElem::ONE; 9]).unwrap());
    }

    #[test]
    fn closure_is_a_fixed_point() {
        let pr = pair(2, 3);
        let g = FnTable::from_ints(&pr, 2, &[0, 1, 0, 0, 0, 0, 1, 0, 1]).unwrap();
        let once = clonoid_closure_at_arity(&pr, &[g], 2, Guard::DESK).unwrap();
        let tables: Vec<FnTable> = once
            .basis_vectors()
            .into_iter()
            .map(|v| FnTable::new(&pr, 2, v).unwrap())
            .collect();
        let twice = clonoid_closure_at_arity(&pr, &tables, 2, Guard::DESK).unwrap();
        assert_eq!(once, twice);
    }

    #[test]
    fn closure_guards() {
        let pr = pair(2, 7);
        let f = FnTable::zero(&pr, 3).unwrap();
        assert!(matches!(
            clonoid_closure_at_arity(&pr, std::slice::from_ref(&f), 3, Guard::DESK),
            Err(Error::TooLarge { .. })
        ));
        let f = FnTable::zero(&pr, 1).unwrap();
        assert!(matches!(
            clonoid_closure_at_arity(&pr, &[f], 4, Guard::DESK),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn pol_examples() {
        let pr = pair(2, 3);
        assert_eq!(
            pol_at_arity(&pr, &zero_preserving(&pr), 2, Guard::DESK)
                .unwrap()
                .dim(),
            8
        );
        let zero = Subspace::zero(pr.p(), 3);
        assert!(pol_at_arity(&pr, &zero, 1, Guard::DESK).unwrap().is_zero());
        let full = Subspace::full(pr.p(), 3);
        assert_eq!(pol_at_arity(&pr, &full, 2, Guard::DESK).unwrap().dim(), 9);
        let f1_only =
            Subspace::span(pr.p(), 3, &[vec![FieldElem(0), FieldElem(1), FieldElem(0)]]).unwrap();
        assert_eq!(
            pol_at_arity(&pr, &f1_only, 2, Guard::DESK).unwrap_err(),
            Error::NotActionClosed
        );
    }

    #[test]
    fn pol_unary_part_is_input() {
        let pr = pair(3, 4);
        let v = zero_preserving(&pr);
        assert_eq!(pol_at_arity(&pr, &v, 1, Guard::DESK).unwrap(), v);
    }

    #[test]
    fn membership_examples() {
        let pr = pair(2, 3);
        let zp = zero_preserving(&pr);
        let f1 = lagrange_fn(&pr, &[FieldElem::ONE]).unwrap();
        assert!(membership_in(&f1, &zp).unwrap());
        let one = FnTable::constant(&pr, 1, FieldElem::ONE).unwrap();
        assert!(!membership_in(&one, &zp).unwrap());
        let f11 = lagrange_fn(&pr, &[FieldElem::ONE, FieldElem::ONE]).unwrap();
        assert!(membership_in(&f11, &zp).unwrap());
    }
}
