use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::closure::{membership_in, pol_at_arity};
use super::{FieldPair, FnTable};
use crate::error::{Error, Guard, Result};
use crate::fppoly::{factor, target_poly, Poly};
use crate::gf::{Field, FieldElem};
use crate::linalg::Subspace;
use crate::shiftop::{PrimaryData, ShiftOperator};

/// Bound on the number of clonoids materialized by an enumeration.
pub const ENUMERATION_LIMIT: u64 = 4096;

/// Self-describing address of a clonoid: whether the constants are in,
/// and one kernel exponent per primary factor (factor order as in
/// [`crate::factor`]).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ClonoidId {
    pub constants: bool,
    pub exponents: Vec<usize>,
}

impl ClonoidId {
    pub fn parse(text: &str) -> Result<ClonoidId> {
        serde_json::from_str(text).map_err(|e| Error::from_json(&e))
    }

    /// `c1-e21-d5`. Exponents are concatenated, dot-separated if any
    /// needs more than one digit.
    pub fn label(&self, dim: usize) -> String {
        let sep = if self.exponents.iter().any(|&j| j > 9) {
            "."
        } else {
            ""
        };
        let e: Vec<String> = self.exponents.iter().map(|j| j.to_string()).collect();
        format!("c{}-e{}-d{}", self.constants as u8, e.join(sep), dim)
    }
}

impl fmt::Display for ClonoidId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serde_json::to_string(self).expect("plain struct"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Clonoid {
    pair: FieldPair,
    id: ClonoidId,
    unary_part: Subspace,
}

impl Clonoid {
    pub fn pair(&self) -> &FieldPair {
        &self.pair
    }

    pub fn id(&self) -> &ClonoidId {
        &self.id
    }

    pub fn constants(&self) -> bool {
        self.id.constants
    }

    pub fn exponents(&self) -> &[usize] {
        &self.id.exponents
    }

    /// Subspace of `F_p^{F_q}`, natural coordinates.
    pub fn unary_part(&self) -> &Subspace {
        &self.unary_part
    }

    pub fn dim(&self) -> usize {
        self.unary_part.dim()
    }

    pub fn label(&self) -> String {
        self.id.label(self.dim())
    }

    pub fn unary_basis(&self) -> Vec<FnTable> {
        self.unary_part
            .basis_vectors()
            .into_iter()
            .map(|v| FnTable::from_values_unchecked(&self.pair, 1, v))
            .collect()
    }

    pub fn contains(&self, f: &FnTable) -> Result<bool> {
        self.pair.same_as(f.pair())?;
        membership_in(f, &self.unary_part)
    }

    /// The n-ary part.
    pub fn at_arity(&self, n: usize, guard: Guard) -> Result<Subspace> {
        pol_at_arity(&self.pair, &self.unary_part, n, guard)
    }
}

/// Every clonoid of a field pair, with the operator data behind them.
#[derive(Clone, Debug)]
pub struct ClonoidLattice {
    pair: FieldPair,
    op: ShiftOperator,
    primary: PrimaryData,
    clonoids: Vec<Clonoid>,
    by_unary: HashMap<Subspace, usize>,
}

impl ClonoidLattice {
    pub fn new(pair: &FieldPair, guard: Guard) -> Result<ClonoidLattice> {
        let op = ShiftOperator::new(pair.p(), pair.q())?;
        let primary = op.primary_data()?;
        guard.check(
            "number of clonoids",
            2 * primary.lattice_size(),
            ENUMERATION_LIMIT,
        )?;
        let q = pair.q().order() as usize;
        let ones = Subspace::span(pair.p(), q, &[vec![FieldElem::ONE; q]])?;
        let mut clonoids = Vec::new();
        for inv in primary.invariant_lattice() {
            let zero_part = op.to_natural(&inv.space)?;
            for constants in [false, true] {
                let unary_part = if constants {
                    zero_part.sum(&ones)?
                } else {
                    zero_part.clone()
                };
                clonoids.push(Clonoid {
                    pair: pair.clone(),
                    id: ClonoidId {
                        constants,
                        exponents: inv.exponents.clone(),
                    },
                    unary_part,
                });
            }
        }
        let by_unary = clonoids
            .iter()
            .enumerate()
            .map(|(i, c)| (c.unary_part.clone(), i))
            .collect();
        Ok(ClonoidLattice {
            pair: pair.clone(),
            op,
            primary,
            clonoids,
            by_unary,
        })
    }

    pub fn pair(&self) -> &FieldPair {
        &self.pair
    }

    pub fn operator(&self) -> &ShiftOperator {
        &self.op
    }

    pub fn primary(&self) -> &PrimaryData {
        &self.primary
    }

    pub fn clonoids(&self) -> &[Clonoid] {
        &self.clonoids
    }

    pub fn into_clonoids(self) -> Vec<Clonoid> {
        self.clonoids
    }

    pub fn len(&self) -> usize {
        self.clonoids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clonoids.is_empty()
    }

    pub fn get(&self, id: &ClonoidId) -> Result<&Clonoid> {
        let bounds = self.primary.exponent_bounds();
        if id.exponents.len() != bounds.len() {
            return Err(Error::InvalidClonoid(format!(
                "expected {} exponents, got {}",
                bounds.len(),
                id.exponents.len()
            )));
        }
        if let Some((i, (j, k))) = id
            .exponents
            .iter()
            .zip(&bounds)
            .enumerate()
            .find(|(_, (j, k))| j > k)
        {
            return Err(Error::InvalidClonoid(format!(
                "exponent {j} at position {i} exceeds multiplicity {k}"
            )));
        }
        // exponents in lexicographic order, constants minor
        let mut index = 0;
        for (&j, &k) in id.exponents.iter().zip(&bounds) {
            index = index * (k + 1) + j;
        }
        Ok(&self.clonoids[2 * index + id.constants as usize])
    }

    pub fn find_by_unary_part(&self, v: &Subspace) -> Option<&Clonoid> {
        self.by_unary.get(v).map(|&i| &self.clonoids[i])
    }

    /// One unary table generating `c`: the cyclic vector of the
    /// 0-preserving part lifted to natural order, plus all-ones if `c`
    /// contains the constants. Depends on the fixed primitive element.
    pub fn unary_generator(&self, c: &Clonoid) -> Result<FnTable> {
        self.pair.same_as(c.pair())?;
        let w = self.op.from_natural(c.unary_part())?;
        let (v, _) = self.op.cyclic_vector(&w)?;
        let p = self.pair.p();
        let mut values = vec![FieldElem::ZERO; self.pair.q().order() as usize];
        for (t, a) in self.op.coord_order().iter().enumerate() {
            values[a.index()] = v[t];
        }
        if c.constants() {
            for x in values.iter_mut() {
                *x = p.add(*x, FieldElem::ONE);
            }
        }
        FnTable::new(&self.pair, 1, values)
    }

    /// The clonoid of star functions: constants plus the tables
    /// constant on `F_q \ {0}` and 0 at 0, i.e. exponent 1 at `x - 1`.
    pub fn star_clonoid(&self) -> &Clonoid {
        let p = self.pair.p();
        let x_minus_1 = Poly::new(p, vec![p.neg(FieldElem::ONE), FieldElem::ONE]);
        let at = self
            .primary
            .factorization
            .index_of(&x_minus_1)
            .expect("x - 1 divides x^(q-1) - 1");
        let mut exponents = vec![0; self.primary.components.len()];
        exponents[at] = 1;
        self.get(&ClonoidId {
            constants: true,
            exponents,
        })
        .expect("in range")
    }

    pub fn bottom(&self) -> &Clonoid {
        &self.clonoids[0]
    }

    pub fn top(&self) -> &Clonoid {
        self.clonoids.last().expect("never empty")
    }
}

pub fn enumerate_clonoids(p_field: &Field, q_field: &Field, guard: Guard) -> Result<Vec<Clonoid>> {
    Ok(ClonoidLattice::new(&FieldPair::new(p_field, q_field)?, guard)?.into_clonoids())
}

/// `2 prod (k_i + 1)` over the factorization of `x^{q-1} - 1`.
pub fn count_clonoids(p_field: &Field, q_field: &Field) -> Result<u64> {
    let f = factor(&target_poly(p_field, q_field)?)?;
    Ok(2 * f
        .factors
        .iter()
        .map(|(_, k)| *k as u64 + 1)
        .product::<u64>())
}
