//! Cross-checks against independent brute-force computations.

use std::collections::HashSet;

use clonoid_core::clonoid::{clonoid_closure_at_arity, membership_in, pol_at_arity};
use clonoid_core::linalg::for_each_subspace;
use clonoid_core::{
    factor, ClonoidLattice, Field, FieldElem, FieldPair, FnTable, Guard, Matrix, Poly,
    ShiftOperator,
};

fn all_matrices(field: &Field, rows: usize, cols: usize) -> Vec<Matrix> {
    let q = field.order() as u64;
    let total = q.pow((rows * cols) as u32);
    (0..total)
        .map(|mut code| {
            let mut m = Matrix::zeros(field, rows, cols);
            for i in 0..rows {
                for j in 0..cols {
                    m.set(i, j, FieldElem((code % q) as u16));
                    code /= q;
                }
            }
            m
        })
        .collect()
}

/// Closure as a set of tables: saturate under addition and right
/// composition with every square matrix, starting from the compositions of
/// the generators. Only feasible for p = 2.
fn closure_by_saturation(pair: &FieldPair, gens: &[FnTable], n: usize) -> HashSet<Vec<u16>> {
    let fq = pair.q();
    let square = all_matrices(fq, n, n);
    let mut set: HashSet<Vec<u16>> = HashSet::new();
    set.insert(vec![0; pair.table_len(n).unwrap()]);
    let mut frontier: Vec<FnTable> = Vec::new();
    for g in gens {
        for a in all_matrices(fq, g.arity(), n) {
            frontier.push(g.compose(&a).unwrap());
        }
    }
    while let Some(f) = frontier.pop() {
        let key: Vec<u16> = f.values().iter().map(|v| v.0).collect();
        if !set.insert(key) {
            continue;
        }
        for a in &square {
            frontier.push(f.compose(a).unwrap());
        }
        let members: Vec<Vec<u16>> = set.iter().cloned().collect();
        for m in members {
            let other =
                FnTable::from_ints(pair, n, &m.iter().map(|&v| v as u64).collect::<Vec<_>>())
                    .unwrap();
            frontier.push(f.add(&other).unwrap());
        }
    }
    set
}

#[test]
fn closure_matches_saturation() {
    let pair = FieldPair::from_orders(2, 3).unwrap();
    let cases: Vec<Vec<FnTable>> = vec![
        vec![FnTable::from_ints(&pair, 1, &[0, 1, 0]).unwrap()],
        vec![FnTable::from_ints(&pair, 1, &[1, 1, 0]).unwrap()],
        vec![FnTable::from_ints(&pair, 1, &[0, 1, 1]).unwrap()],
        vec![FnTable::from_ints(&pair, 2, &[0, 0, 0, 1, 0, 0, 0, 0, 1]).unwrap()],
        vec![
            FnTable::from_ints(&pair, 2, &[0, 1, 1, 0, 0, 0, 0, 0, 0]).unwrap(),
            FnTable::from_ints(&pair, 1, &[1, 1, 1]).unwrap(),
        ],
    ];
    for gens in cases {
        let span = clonoid_closure_at_arity(&pair, &gens, 2, Guard::DESK).unwrap();
        let set = closure_by_saturation(&pair, &gens, 2);
        assert_eq!(set.len(), 1 << span.dim(), "generators {gens:?}");
        for t in &set {
            let v: Vec<FieldElem> = t.iter().map(|&x| FieldElem(x)).collect();
            assert!(span.contains(&v).unwrap());
        }
    }
}

#[test]
fn membership_matches_closure_containment() {
    let lat = ClonoidLattice::new(&FieldPair::from_orders(2, 3).unwrap(), Guard::DESK).unwrap();
    let pair = lat.pair();
    for c in lat.clonoids() {
        let closure = clonoid_closure_at_arity(pair, &c.unary_basis(), 2, Guard::DESK).unwrap();
        for code in 0..512u64 {
            let values: Vec<u64> = (0..9).map(|i| code >> i & 1).collect();
            let f = FnTable::from_ints(pair, 2, &values).unwrap();
            assert_eq!(
                membership_in(&f, c.unary_part()).unwrap(),
                closure.contains(f.values()).unwrap(),
                "{} table {values:?}",
                c.id()
            );
        }
    }
}

#[test]
fn arity_three_generation() {
    // the same agreement one arity up, where the closure still fits the guard
    let lat = ClonoidLattice::new(&FieldPair::from_orders(2, 3).unwrap(), Guard::DESK).unwrap();
    for c in lat.clonoids() {
        let closure =
            clonoid_closure_at_arity(lat.pair(), &c.unary_basis(), 3, Guard::DESK).unwrap();
        assert_eq!(
            closure,
            pol_at_arity(lat.pair(), c.unary_part(), 3, Guard::DESK).unwrap()
        );
    }
}

#[test]
fn every_action_closed_subspace_is_enumerated() {
    // filter all subspaces of F_p^q for action closure; the enumeration must
    // find exactly these
    for (p, q) in [(2, 3), (3, 2), (2, 5), (5, 3), (3, 4)] {
        let pair = FieldPair::from_orders(p, q).unwrap();
        let lat = ClonoidLattice::new(&pair, Guard::DESK).unwrap();
        let mut found = 0;
        for_each_subspace(pair.p(), q as usize, |s| {
            if clonoid_core::clonoid::is_action_closed(&pair, s).unwrap() {
                found += 1;
                assert!(
                    lat.find_by_unary_part(s).is_some(),
                    "({p},{q}) missing {s:?}"
                );
            }
        });
        assert_eq!(found, lat.len(), "({p},{q})");
    }
}

fn monic_polys(field: &Field, degree: usize) -> Vec<Poly> {
    let q = field.order() as u64;
    (0..q.pow(degree as u32))
        .map(|mut code| {
            let mut c: Vec<FieldElem> = (0..degree)
                .map(|_| {
                    let v = FieldElem((code % q) as u16);
                    code /= q;
                    v
                })
                .collect();
            c.push(FieldElem::ONE);
            Poly::new(field, c)
        })
        .collect()
}

#[test]
fn factors_are_irreducible_by_trial_division() {
    for (p, q) in [(2, 7), (2, 9), (3, 5), (2, 5), (4, 3), (3, 4), (5, 3)] {
        let (fp, fq) = (Field::new(p).unwrap(), Field::new(q).unwrap());
        let g = clonoid_core::target_poly(&fp, &fq).unwrap();
        let f = factor(&g).unwrap();
        assert_eq!(f.expand(&fp), g);
        for (irr, _) in &f.factors {
            let d = irr.degree().unwrap();
            for k in 1..=d / 2 {
                for cand in monic_polys(&fp, k) {
                    assert!(!irr.rem(&cand).unwrap().is_zero(), "{cand} divides {irr}");
                }
            }
        }
    }
}

#[test]
fn primary_chains_against_brute_force_kernels() {
    // ker(p_i(M)^j) dimensions are j * deg(p_i)
    for (p, q) in [(2, 7), (2, 9), (3, 5)] {
        let op = ShiftOperator::new(&Field::new(p).unwrap(), &Field::new(q).unwrap()).unwrap();
        let data = op.primary_data().unwrap();
        for c in &data.components {
            let d = c.factor.degree().unwrap();
            for (j, s) in c.chain.iter().enumerate() {
                assert_eq!(s.dim(), j * d);
                assert!(op.is_invariant(s).unwrap());
            }
        }
    }
}
