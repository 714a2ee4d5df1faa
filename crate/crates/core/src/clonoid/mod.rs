//! Finitary functions `F_q^n -> F_p` and the clonoids they generate.
//!
//! A clonoid here is closed under F_p-linear combinations and under
//! precomposition `x -> f(A x)` with F_q-linear maps. Every such clonoid is
//! determined by its unary part, an F_p-subspace of `F_p^{F_q}` closed under
//! `f -> (x -> f(ax))`; [`ClonoidLattice`] enumerates them all through the
//! invariant subspaces of the shift operator.

mod closure;
mod lattice;
mod monoid;
mod table;
mod witness;

pub use closure::{
    clonoid_closure_at_arity, is_action_closed, membership_in, pol_at_arity, CLOSURE_LIMIT,
    TABLE_LIMIT,
};
pub use lattice::{
    count_clonoids, enumerate_clonoids, Clonoid, ClonoidId, ClonoidLattice, ENUMERATION_LIMIT,
};
pub use monoid::{monoid_act, unary_submodule_closure, MonoidRingElem};
pub(crate) use table::increment;
pub use table::{lagrange_fn, FnTable, FnTableJson};
pub use witness::{lift_line_function, lift_matrices, line_transport, line_transport_matrix};

use crate::error::{Error, Result};
use crate::gf::{Field, FieldElem};

/// Target field `F_p` and source field `F_q` of distinct characteristics.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FieldPair {
    p: Field,
    q: Field,
}

impl FieldPair {
    pub fn new(p: &Field, q: &Field) -> Result<FieldPair> {
        if p.characteristic() == q.characteristic() {
            return Err(Error::SameCharacteristic {
                p: p.order(),
                q: q.order(),
            });
        }
        Ok(FieldPair {
            p: p.clone(),
            q: q.clone(),
        })
    }

    pub fn from_orders(p: u64, q: u64) -> Result<FieldPair> {
        FieldPair::new(&Field::new(p)?, &Field::new(q)?)
    }

    pub fn p(&self) -> &Field {
        &self.p
    }

    pub fn q(&self) -> &Field {
        &self.q
    }

    pub fn same_as(&self, other: &FieldPair) -> Result<()> {
        self.p.same_as(&other.p)?;
        self.q.same_as(&other.q)
    }

    /// `q^n`, the length of an n-ary table.
    pub fn table_len(&self, arity: usize) -> Result<usize> {
        (self.q.order() as usize)
            .checked_pow(arity as u32)
            .filter(|&n| n <= 1 << 24)
            .ok_or(Error::TooLarge {
                what: "table length q^n",
                actual: u64::MAX,
                limit: 1 << 24,
            })
    }

    pub fn encode(&self, point: &[FieldElem]) -> usize {
        let q = self.q.order() as usize;
        point.iter().fold(0, |acc, x| acc * q + x.index())
    }

    pub fn decode(&self, mut index: usize, arity: usize) -> Vec<FieldElem> {
        let q = self.q.order() as usize;
        let mut out = vec![FieldElem::ZERO; arity];
        for slot in out.iter_mut().rev() {
            *slot = FieldElem((index % q) as u16);
            index /= q;
        }
        out
    }

    /// All points of `F_q^n` in table order.
    pub fn points(&self, arity: usize) -> Result<impl Iterator<Item = Vec<FieldElem>> + '_> {
        let len = self.table_len(arity)?;
        Ok((0..len).map(move |i| self.decode(i, arity)))
    }
}
