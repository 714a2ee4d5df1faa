//! Exact computation of the lattice of (F_p, F_q)-linearly closed clonoids.
//!
//! For powers `p`, `q` of distinct primes, the clonoids of functions
//! `F_q^n -> F_p` closed under F_p-linear combinations and precomposition with
//! F_q-linear maps correspond to submodules of `F_p^{F_q}` under the action
//! `f -> (x -> f(ax))`. This crate builds the finite fields, factors
//! `x^{q-1} - 1` over `F_p`, computes the invariant subspaces of the shift
//! operator `f -> (x -> f(alpha x))`, and lifts them to clonoids together with
//! closure, membership and generator computations.
//!
//! - [`gf`]: finite fields with deterministic modulus and primitive element
//! - [`fppoly`]: polynomials and factorization over `F_p`
//! - [`linalg`]: matrices, RREF, kernels and canonical [`Subspace`]s
//! - [`shiftop`]: the shift operator, its primary decomposition and invariant lattice
//! - [`clonoid`]: function tables, closures, membership, enumeration, generators
//! - [`latt`]: finite lattices, Hasse diagrams, product-of-chains recognition
//! - [`verify`]: the end-to-end check report used by the CLI

pub mod clonoid;
pub mod error;
pub mod fppoly;
pub mod gf;
pub mod latt;
pub mod linalg;
pub mod shiftop;
pub mod verify;

pub use clonoid::{
    count_clonoids, enumerate_clonoids, Clonoid, ClonoidId, ClonoidLattice, FieldPair, FnTable,
    FnTableJson, MonoidRingElem,
};
pub use error::{Error, Guard, Result};
pub use fppoly::{factor, poly_gcd, target_poly, Factorization, Poly};
pub use gf::{field_make, Field, FieldElem};
pub use latt::{build_lattice, FiniteLattice};
pub use linalg::{kernel, rref, Matrix, Subspace, SubspaceJson};
pub use shiftop::{PrimaryData, ShiftOperator};
