//! Fixtures shared by the criterion benches.

use clonoid_core::{Field, FieldPair};

/// Pairs spanning the desk-scale range, smallest first.
pub const PAIRS: &[(u64, u64)] = &[(2, 3), (5, 3), (2, 7), (3, 4), (2, 9)];

pub fn fields(p: u64, q: u64) -> (Field, Field) {
    (
        Field::new(p).expect("prime power"),
        Field::new(q).expect("prime power"),
    )
}

pub fn pair(p: u64, q: u64) -> FieldPair {
    FieldPair::from_orders(p, q).expect("distinct characteristics")
}
