//! End-to-end checks of the structure results for one field pair, each
//! computed two independent ways where possible.

use std::collections::HashSet;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::clonoid::increment;
use crate::clonoid::{
    clonoid_closure_at_arity, is_action_closed, lagrange_fn, lift_line_function, line_transport,
    monoid_act, pol_at_arity, unary_submodule_closure, ClonoidLattice, FieldPair, FnTable,
    MonoidRingElem, TABLE_LIMIT,
};
use crate::error::{Error, Guard, Result};
use crate::fppoly::target_poly;
use crate::gf::{Field, FieldElem};
use crate::latt::build_lattice;
use crate::linalg::{SpanBuilder, Subspace};

/// Random samples per seeded check.
pub const SAMPLES: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug)]
pub struct Check {
    pub name: &'static str,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct Report {
    pub p: u64,
    pub q: u64,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> usize {
        self.checks
            .iter()
            .filter(|c| c.status == Status::Fail)
            .count()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skip => "SKIP",
            };
            writeln!(f, "{tag} {}: {}", c.name, c.detail)?;
        }
        let verdict = if self.all_passed() { "ok" } else { "FAILED" };
        write!(
            f,
            "verify p={} q={}: {verdict} ({} failed)",
            self.p,
            self.q,
            self.failures()
        )
    }
}

struct Runner {
    checks: Vec<Check>,
}

impl Runner {
    fn record(&mut self, name: &'static str, outcome: Result<(bool, String)>) {
        let (status, detail) = match outcome {
            Ok((true, d)) => (Status::Pass, d),
            Ok((false, d)) => (Status::Fail, d),
            Err(e) if e.is_guard_violation() => (Status::Skip, e.to_string()),
            Err(e) => (Status::Fail, format!("error[{}]: {e}", e.code())),
        };
        self.checks.push(Check {
            name,
            status,
            detail,
        });
    }
}

fn random_elem(rng: &mut ChaCha8Rng, field: &Field) -> FieldElem {
    FieldElem(rng.gen_range(0..field.order()) as u16)
}

/// Runs every check that fits the guard. Only errors in setting up the
/// pair itself are returned as `Err`.
pub fn verify_pair(p_field: &Field, q_field: &Field, guard: Guard, seed: u64) -> Result<Report> {
    let pair = FieldPair::new(p_field, q_field)?;
    let lat = ClonoidLattice::new(&pair, guard)?;
    let op = lat.operator();
    let primary = lat.primary();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut r = Runner { checks: Vec::new() };
    let brute = op.brute_force_invariant_subspaces(guard);

    let formula = crate::clonoid::count_clonoids(p_field, q_field);
    r.record(
        "count",
        formula.and_then(|n| {
            let enumerated = lat.len() as u64;
            match &brute {
                Ok(b) => {
                    let bf = 2 * b.len() as u64;
                    Ok((
                        n == bf && n == enumerated,
                        format!("formula={n} bruteforce={bf} enumerated={enumerated}"),
                    ))
                }
                Err(e) if e.is_guard_violation() => Ok((
                    n == enumerated,
                    format!("formula={n} enumerated={enumerated} bruteforce=skipped"),
                )),
                Err(e) => Err(e.clone()),
            }
        }),
    );

    r.record(
        "minimal polynomial",
        (|| {
            let g = target_poly(p_field, q_field)?;
            let krylov = op.minimal_polynomial();
            let oracle = op.matrix().minimal_polynomial()?;
            Ok((
                krylov == g && oracle == g,
                format!("{krylov} (power-dependency oracle {oracle})"),
            ))
        })(),
    );

    let lattice = primary.invariant_lattice();
    r.record(
        "invariant subspaces",
        (|| {
            let chain = lattice.len();
            let b = match &brute {
                Ok(b) => b,
                Err(e) => return Err(e.clone()),
            };
            let ours: HashSet<&Subspace> = lattice.iter().map(|i| &i.space).collect();
            let theirs: HashSet<&Subspace> = b.iter().collect();
            Ok((
                ours == theirs && ours.len() == chain,
                format!("chain-product={chain} bruteforce={}", b.len()),
            ))
        })(),
    );

    r.record(
        "cyclic vectors",
        (|| {
            for inv in &lattice {
                let (v, _) = op.cyclic_vector(&inv.space)?;
                if op.cyclic_span(&v)? != inv.space {
                    return Ok((false, format!("exponents {:?} not cyclic", inv.exponents)));
                }
            }
            Ok((
                true,
                format!("{} invariant subspaces cyclic", lattice.len()),
            ))
        })(),
    );

    let mut lengths = vec![2];
    lengths.extend(primary.exponent_bounds().iter().map(|k| k + 1));
    r.record(
        "lattice shape",
        (|| {
            let l = build_lattice(lat.clonoids())?;
            l.check_axioms()?;
            let iso = l.iso_product_of_chains(&lengths);
            let dist = l.is_distributive();
            Ok((
                iso && dist,
                format!("product of chains {lengths:?}: {iso}, distributive: {dist}"),
            ))
        })(),
    );

    r.record(
        "action closure",
        (|| {
            for c in lat.clonoids() {
                for f in c.unary_basis() {
                    for a in q_field.elements() {
                        let g = monoid_act(&MonoidRingElem::tau(a), &f)?;
                        if !c.unary_part().contains(g.values())? {
                            return Ok((false, format!("{} not closed", c.id())));
                        }
                    }
                }
            }
            Ok((true, format!("{} unary parts", lat.len())))
        })(),
    );

    r.record(
        "single generator",
        (|| {
            for c in lat.clonoids() {
                let g = lat.unary_generator(c)?;
                if unary_submodule_closure(&pair, &[g])? != *c.unary_part() {
                    return Ok((false, format!("{} not generated", c.id())));
                }
            }
            Ok((true, format!("{} clonoids singly generated", lat.len())))
        })(),
    );

    r.record(
        "generation by unary part",
        (|| {
            for c in lat.clonoids() {
                let closure = clonoid_closure_at_arity(&pair, &c.unary_basis(), 2, guard)?;
                if closure != pol_at_arity(&pair, c.unary_part(), 2, guard)? {
                    return Ok((false, format!("{} differs at arity 2", c.id())));
                }
            }
            Ok((true, format!("{} clonoids at arity 2", lat.len())))
        })(),
    );

    r.record(
        "unary determination",
        (|| {
            let mut seen = HashSet::new();
            for c in lat.clonoids() {
                seen.insert(pol_at_arity(&pair, c.unary_part(), 2, guard)?);
            }
            Ok((
                seen.len() == lat.len(),
                format!("{} distinct binary parts of {}", seen.len(), lat.len()),
            ))
        })(),
    );

    r.record(
        "lagrange generator",
        (|| {
            let f1 = lagrange_fn(&pair, &[FieldElem::ONE])?;
            let unary = unary_submodule_closure(&pair, std::slice::from_ref(&f1))?;
            let q = q_field.order() as usize;
            let zero_coord = unary.basis().row_iter().all(|row| row[0].is_zero());
            let binary = clonoid_closure_at_arity(&pair, &[f1], 2, guard)?;
            let ok = unary.dim() == q - 1
                && zero_coord
                && binary.dim() == q * q - 1
                && binary.basis().column(0).iter().all(|x| x.is_zero());
            Ok((
                ok,
                format!("unary dim={} binary dim={}", unary.dim(), binary.dim()),
            ))
        })(),
    );

    r.record(
        "star functions",
        (|| {
            let star = lat.star_clonoid();
            let q = q_field.order() as usize;
            let count = (p_field.order() as u64)
                .checked_pow(q as u32)
                .unwrap_or(u64::MAX);
            // the star unary tables, found by filtering every unary table
            let mut span = SpanBuilder::new(p_field, q);
            let mut all_star = true;
            if guard.force || count <= TABLE_LIMIT {
                let mut values = vec![FieldElem::ZERO; q];
                for _ in 0..count {
                    let t = FnTable::new(&pair, 1, values.clone())?;
                    if t.is_star() {
                        span.insert(t.values())?;
                    } else if star.contains(&t)? {
                        all_star = false;
                    }
                    increment(&mut values, p_field.order() as usize);
                }
            } else {
                return Err(Error::TooLarge {
                    what: "unary tables p^q",
                    actual: count,
                    limit: TABLE_LIMIT,
                });
            }
            let stars = span.finish();
            if !all_star || stars != *star.unary_part() || !is_action_closed(&pair, &stars)? {
                return Ok((
                    false,
                    format!(
                        "star unary part dim {} vs clonoid {}",
                        stars.dim(),
                        star.dim()
                    ),
                ));
            }
            for _ in 0..SAMPLES {
                let values = (0..q * q).map(|_| random_elem(&mut rng, p_field)).collect();
                let f = FnTable::new(&pair, 2, values)?;
                if f.is_star() != star.contains(&f)? {
                    return Ok((false, "binary star membership mismatch".into()));
                }
            }
            Ok((
                true,
                format!("unary dim={}, {SAMPLES} binary samples", stars.dim()),
            ))
        })(),
    );

    r.record(
        "witnesses",
        (|| {
            let q = q_field.order() as usize;
            for _ in 0..SAMPLES {
                let mut values = vec![FieldElem::ZERO; q * q];
                for l in 0..q {
                    values[l * q] = random_elem(&mut rng, p_field);
                }
                let g = FnTable::new(&pair, 2, values)?;
                let closure = clonoid_closure_at_arity(&pair, std::slice::from_ref(&g), 2, guard)?;
                for b in pair.points(2)?.filter(|b| b.iter().any(|x| !x.is_zero())) {
                    let f = line_transport(&g, &b)?;
                    if !closure.contains(f.values())? {
                        return Ok((false, format!("transport along {b:?} left the closure")));
                    }
                }
                let mut unary: Vec<FieldElem> =
                    (0..q).map(|_| random_elem(&mut rng, p_field)).collect();
                unary[0] = FieldElem::ZERO;
                let g = FnTable::new(&pair, 1, unary)?;
                let t = lift_line_function(&g, 2)?;
                for (i, v) in t.values().iter().enumerate() {
                    let x = pair.decode(i, 2);
                    let want = if x[1].is_zero() {
                        g.values()[x[0].index()]
                    } else {
                        FieldElem::ZERO
                    };
                    if *v != want {
                        return Ok((false, "lifted function misses its boundary values".into()));
                    }
                }
                if !clonoid_closure_at_arity(&pair, &[g], 2, guard)?.contains(t.values())? {
                    return Ok((false, "lifted function left the closure".into()));
                }
            }
            Ok((true, format!("{SAMPLES} seeded samples")))
        })(),
    );

    Ok(Report {
        p: p_field.order() as u64,
        q: q_field.order() as u64,
        checks: r.checks,
    })
}
