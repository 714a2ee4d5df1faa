use std::collections::BTreeMap;

use super::{FieldPair, FnTable};
use crate::error::{Error, Result};
use crate::gf::FieldElem;
use crate::linalg::{SpanBuilder, Subspace};

/// Element `sum_a r_a tau_a` of the monoid ring `F_p[(F_q, *)]`, stored as
/// a map from `a in F_q` to the nonzero coefficient `r_a in F_p`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MonoidRingElem {
    terms: BTreeMap<FieldElem, FieldElem>,
}

impl MonoidRingElem {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn tau(a: FieldElem) -> Self {
        Self {
            terms: BTreeMap::from([(a, FieldElem::ONE)]),
        }
    }

    pub fn from_terms(
        pair: &FieldPair,
        terms: impl IntoIterator<Item = (FieldElem, FieldElem)>,
    ) -> Self {
        let mut out = Self::zero();
        for (a, r) in terms {
            out.add_term(pair, a, r);
        }
        out
    }

    pub fn add_term(&mut self, pair: &FieldPair, a: FieldElem, r: FieldElem) {
        let p = pair.p();
        let cur = self.terms.get(&a).copied().unwrap_or(FieldElem::ZERO);
        let next = p.add(cur, r);
        if next.is_zero() {
            self.terms.remove(&a);
        } else {
            self.terms.insert(a, next);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (FieldElem, FieldElem)> + '_ {
        self.terms.iter().map(|(&a, &r)| (a, r))
    }

    pub fn add(&self, pair: &FieldPair, other: &Self) -> Self {
        let mut out = self.clone();
        for (a, r) in other.terms() {
            out.add_term(pair, a, r);
        }
        out
    }

    /// Ring product with `tau_a * tau_b = tau_{ab}`.
    pub fn mul(&self, pair: &FieldPair, other: &Self) -> Self {
        let (p, q) = (pair.p(), pair.q());
        let mut out = Self::zero();
        for (a, r) in self.terms() {
            for (b, s) in other.terms() {
                out.add_term(pair, q.mul(a, b), p.mul(r, s));
            }
        }
        out
    }
}

/// `(sigma * f)(x) = sum_a r_a f(ax)` for unary `f`.
pub fn monoid_act(sigma: &MonoidRingElem, f: &FnTable) -> Result<FnTable> {
    if f.arity() != 1 {
        return Err(Error::ArityMismatch {
            expected: 1,
            actual: f.arity(),
        });
    }
    let pair = f.pair();
    let (p, q) = (pair.p(), pair.q());
    for (a, r) in sigma.terms() {
        q.elem(a.0 as u64)?;
        p.elem(r.0 as u64)?;
    }
    let values = q
        .elements()
        .map(|x| {
            sigma.terms().fold(FieldElem::ZERO, |acc, (a, r)| {
                p.add(acc, p.mul(r, f.values()[q.mul(a, x).index()]))
            })
        })
        .collect();
    FnTable::new(pair, 1, values)
}

/// Smallest subspace of `F_p^{F_q}` containing every `x -> f(ax)`.
pub fn unary_submodule_closure(pair: &FieldPair, fns: &[FnTable]) -> Result<Subspace> {
    let q = pair.q();
    let mut b = SpanBuilder::new(pair.p(), q.order() as usize);
    for f in fns {
        pair.same_as(f.pair())?;
        if f.arity() != 1 {
            return Err(Error::ArityMismatch {
                expected: 1,
                actual: f.arity(),
            });
        }
        for a in q.elements() {
            let orbit: Vec<FieldElem> = q
                .elements()
                .map(|x| f.values()[q.mul(a, x).index()])
                .collect();
            b.insert(&orbit)?;
        }
    }
    Ok(b.finish())
}
