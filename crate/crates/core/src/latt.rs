//! Finite lattices given by an explicit order: Hasse diagrams,
//! distributivity and recognition of products of chains.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde_json::json;

use crate::clonoid::Clonoid;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct FiniteLattice {
    labels: Vec<String>,
    leq: Vec<Vec<bool>>,
    meet: Vec<Vec<usize>>,
    join: Vec<Vec<usize>>,
}

impl FiniteLattice {
    /// Builds meet and join tables from a partial order; fails unless every
    /// pair has a greatest lower and least upper bound.
    pub fn from_order(labels: Vec<String>, leq: Vec<Vec<bool>>) -> Result<FiniteLattice> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::NotALattice("empty".into()));
        }
        if leq.len() != n || leq.iter().any(|r| r.len() != n) {
            return Err(Error::NotALattice("order table has the wrong shape".into()));
        }
        for a in 0..n {
            if !leq[a][a] {
                return Err(Error::NotALattice(format!(
                    "{} is not reflexive",
                    labels[a]
                )));
            }
            for b in 0..n {
                if a != b && leq[a][b] && leq[b][a] {
                    return Err(Error::NotALattice(format!(
                        "{} and {} are equivalent",
                        labels[a], labels[b]
                    )));
                }
                for c in 0..n {
                    if leq[a][b] && leq[b][c] && !leq[a][c] {
                        return Err(Error::NotALattice("order is not transitive".into()));
                    }
                }
            }
        }
        let bound = |a: usize, b: usize, upper: bool| -> Option<usize> {
            let rel = |x: usize, y: usize| if upper { leq[x][y] } else { leq[y][x] };
            let cands: Vec<usize> = (0..n).filter(|&c| rel(a, c) && rel(b, c)).collect();
            cands
                .iter()
                .copied()
                .find(|&c| cands.iter().all(|&d| rel(c, d)))
        };
        let mut meet = vec![vec![0; n]; n];
        let mut join = vec![vec![0; n]; n];
        for a in 0..n {
            for b in 0..n {
                join[a][b] = bound(a, b, true).ok_or_else(|| {
                    Error::NotALattice(format!("{} and {} have no join", labels[a], labels[b]))
                })?;
                meet[a][b] = bound(a, b, false).ok_or_else(|| {
                    Error::NotALattice(format!("{} and {} have no meet", labels[a], labels[b]))
                })?;
            }
        }
        Ok(FiniteLattice {
            labels,
            leq,
            meet,
            join,
        })
    }

    pub fn chain(n: usize) -> FiniteLattice {
        let labels = (0..n).map(|i| i.to_string()).collect();
        let leq = (0..n).map(|a| (0..n).map(|b| a <= b).collect()).collect();
        FiniteLattice::from_order(labels, leq).expect("chains are lattices")
    }

    pub fn diamond_m3() -> FiniteLattice {
        let labels = ["0", "a", "b", "c", "1"].map(String::from).to_vec();
        let leq = (0..5)
            .map(|a| (0..5).map(|b| a == b || a == 0 || b == 4).collect())
            .collect();
        FiniteLattice::from_order(labels, leq).expect("M3 is a lattice")
    }

    /// Componentwise order on tuples, first coordinate most significant.
    pub fn product_of_chains(lengths: &[usize]) -> FiniteLattice {
        let mut tuples: Vec<Vec<usize>> = vec![vec![]];
        for &l in lengths {
            tuples = tuples
                .into_iter()
                .flat_map(|t| {
                    (0..l).map(move |i| {
                        let mut t = t.clone();
                        t.push(i);
                        t
                    })
                })
                .collect();
        }
        let labels = tuples.iter().map(|t| format!("{t:?}")).collect();
        let leq = tuples
            .iter()
            .map(|a| {
                tuples
                    .iter()
                    .map(|b| a.iter().zip(b).all(|(x, y)| x <= y))
                    .collect()
            })
            .collect();
        FiniteLattice::from_order(labels, leq).expect("products of chains are lattices")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a][b]
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a][b]
    }

    pub fn bottom(&self) -> usize {
        (0..self.len()).fold(0, |acc, x| self.meet(acc, x))
    }

    pub fn top(&self) -> usize {
        (0..self.len()).fold(0, |acc, x| self.join(acc, x))
    }

    /// Lattice identities, checked exhaustively.
    pub fn check_axioms(&self) -> Result<()> {
        let n = self.len();
        let fail = |what: &str| Err(Error::NotALattice(what.to_string()));
        for a in 0..n {
            if self.meet(a, a) != a || self.join(a, a) != a {
                return fail("idempotency");
            }
            for b in 0..n {
                if self.meet(a, b) != self.meet(b, a) || self.join(a, b) != self.join(b, a) {
                    return fail("commutativity");
                }
                if self.join(a, self.meet(a, b)) != a || self.meet(a, self.join(a, b)) != a {
                    return fail("absorption");
                }
                if self.leq(a, b) != (self.meet(a, b) == a) {
                    return fail("order and meet disagree");
                }
                for c in 0..n {
                    if self.meet(a, self.meet(b, c)) != self.meet(self.meet(a, b), c)
                        || self.join(a, self.join(b, c)) != self.join(self.join(a, b), c)
                    {
                        return fail("associativity");
                    }
                }
            }
        }
        Ok(())
    }

    /// Covering pairs `(a, b)`: `a < b` with nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let lt = |a: usize, b: usize| a != b && self.leq(a, b);
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if lt(a, b) && !(0..n).any(|c| lt(a, c) && lt(c, b)) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Elements with exactly one lower cover.
    pub fn join_irreducibles(&self) -> Vec<usize> {
        let mut lower = vec![0usize; self.len()];
        for (_, b) in self.covers() {
            lower[b] += 1;
        }
        (0..self.len()).filter(|&x| lower[x] == 1).collect()
    }

    pub fn is_distributive(&self) -> bool {
        let n = self.len();
        (0..n).all(|x| {
            (0..n).all(|y| {
                (0..n).all(|z| {
                    self.meet(x, self.join(y, z)) == self.join(self.meet(x, y), self.meet(x, z))
                })
            })
        })
    }

    /// Whether the lattice is isomorphic to `C_{l_1} x ... x C_{l_s}`. A
    /// finite distributive lattice is determined by its poset of
    /// join-irreducibles, which for the product is a disjoint union of
    /// chains with `l_i - 1` elements.
    pub fn iso_product_of_chains(&self, lengths: &[usize]) -> bool {
        if lengths.contains(&0) {
            return false;
        }
        if self.len() as u64 != lengths.iter().map(|&l| l as u64).product::<u64>() {
            return false;
        }
        if !self.is_distributive() {
            return false;
        }
        let ji = self.join_irreducibles();
        let related = |a: usize, b: usize| self.leq(a, b) || self.leq(b, a);
        // connected components of the comparability graph
        let mut comp = vec![usize::MAX; ji.len()];
        let mut sizes = Vec::new();
        for s in 0..ji.len() {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = sizes.len();
            let mut stack = vec![s];
            comp[s] = id;
            let mut members = Vec::new();
            while let Some(u) = stack.pop() {
                members.push(u);
                for v in 0..ji.len() {
                    if comp[v] == usize::MAX && related(ji[u], ji[v]) {
                        comp[v] = id;
                        stack.push(v);
                    }
                }
            }
            let is_chain = members
                .iter()
                .all(|&u| members.iter().all(|&v| related(ji[u], ji[v])));
            if !is_chain {
                return false;
            }
            sizes.push(members.len());
        }
        let mut expected: Vec<usize> = lengths.iter().map(|l| l - 1).filter(|&k| k > 0).collect();
        expected.sort_unstable();
        sizes.sort_unstable();
        sizes == expected
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph lattice {\n  rankdir=BT;\n");
        for (i, l) in self.labels.iter().enumerate() {
            let _ = writeln!(s, "  n{i} [label=\"{l}\"];");
        }
        for (a, b) in self.covers() {
            let _ = writeln!(s, "  n{a} -> n{b};");
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        let nodes: Vec<_> = self
            .labels
            .iter()
            .enumerate()
            .map(|(i, l)| json!({"id": i, "label": l}))
            .collect();
        let edges: Vec<_> = self
            .covers()
            .into_iter()
            .map(|(a, b)| json!([a, b]))
            .collect();
        json!({"nodes": nodes, "edges": edges})
    }
}

/// The containment lattice of a family of clonoids. Meets must be realized
/// as intersections within the family; joins are least upper bounds, i.e.
/// the smallest member containing the sum.
pub fn build_lattice(clonoids: &[Clonoid]) -> Result<FiniteLattice> {
    let mut index = HashMap::new();
    for (i, c) in clonoids.iter().enumerate() {
        if index.insert(c.unary_part().clone(), i).is_some() {
            return Err(Error::DuplicateElements);
        }
    }
    let n = clonoids.len();
    let mut leq = vec![vec![false; n]; n];
    for a in 0..n {
        for b in 0..n {
            leq[a][b] = clonoids[a].unary_part().leq(clonoids[b].unary_part())?;
        }
    }
    let labels = clonoids.iter().map(Clonoid::label).collect();
    let lattice = FiniteLattice::from_order(labels, leq)?;
    for a in 0..n {
        for b in a + 1..n {
            let cap = clonoids[a]
                .unary_part()
                .intersect(clonoids[b].unary_part())?;
            if index.get(&cap) != Some(&lattice.meet(a, b)) {
                return Err(Error::NotALattice(format!(
                    "intersection of {} and {} is not a member",
                    clonoids[a].label(),
                    clonoids[b].label()
                )));
            }
        }
    }
    Ok(lattice)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clonoid::{ClonoidLattice, FieldPair};
    use crate::error::Guard;

    fn clonoids(p: u64, q: u64) -> Vec<Clonoid> {
        ClonoidLattice::new(&FieldPair::from_orders(p, q).unwrap(), Guard::DESK)
            .unwrap()
            .into_clonoids()
    }

    #[test]
    fn clonoid_lattice_examples() {
        let l = build_lattice(&clonoids(2, 3)).unwrap();
        assert_eq!(l.len(), 6);
        assert_eq!(l.labels()[l.bottom()], "c0-e0-d0");
        assert_eq!(l.labels()[l.top()], "c1-e2-d3");
        l.check_axioms().unwrap();
        assert!(l.iso_product_of_chains(&[2, 3]));
        assert!(l.iso_product_of_chains(&[3, 2]));
        assert!(!l.iso_product_of_chains(&[6]));
        assert!(l.is_distributive());
        assert!(build_lattice(&clonoids(5, 3))
            .unwrap()
            .iso_product_of_chains(&[2, 2, 2]));

        let one = build_lattice(&clonoids(2, 3)[..1]).unwrap();
        assert_eq!(one.len(), 1);
        assert!(one.covers().is_empty());
    }

    #[test]
    fn duplicates_rejected() {
        let mut cs = clonoids(3, 2);
        cs.push(cs[0].clone());
        assert!(matches!(build_lattice(&cs), Err(Error::DuplicateElements)));
    }

    #[test]
    fn synthetic_lattices() {
        let m3 = FiniteLattice::diamond_m3();
        m3.check_axioms().unwrap();
        assert!(!m3.is_distributive());
        assert!(!m3.iso_product_of_chains(&[5]));
        let c5 = FiniteLattice::chain(5);
        assert!(c5.is_distributive());
        assert_eq!(c5.join_irreducibles().len(), 4);
        assert!(c5.iso_product_of_chains(&[5]));
        assert!(!c5.iso_product_of_chains(&[2, 2]));
        let p = FiniteLattice::product_of_chains(&[2, 3, 2]);
        assert!(p.iso_product_of_chains(&[3, 2, 2]));
        assert!(!p.iso_product_of_chains(&[12]));
        assert!(!FiniteLattice::product_of_chains(&[2, 2]).iso_product_of_chains(&[4]));
    }

    #[test]
    fn not_a_lattice() {
        // two incomparable maxima
        let leq = vec![
            vec![true, true, true],
            vec![false, true, false],
            vec![false, false, true],
        ];
        let labels = ["0", "a", "b"].map(String::from).to_vec();
        assert!(matches!(
            FiniteLattice::from_order(labels, leq),
            Err(Error::NotALattice(_))
        ));
    }

    #[test]
    fn dot_shape() {
        let dot = build_lattice(&clonoids(3, 2)).unwrap().to_dot();
        assert!(dot.starts_with("digraph lattice {\n  rankdir=BT;"));
        assert_eq!(dot.matches("[label=").count(), 4);
        assert_eq!(dot.matches(" -> ").count(), 4);
    }
}
