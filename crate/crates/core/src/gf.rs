//! Finite fields `F_{r^d}` with table-driven arithmetic.
//!
//! Elements are packed as integers: the base-`r` digits of the encoding are
//! the coefficients of the polynomial representative, least significant digit
//! first. The modulus is the first monic irreducible polynomial of degree `d`
//! in ascending order of its coefficient tuple (highest non-leading
//! coefficient compared first), and the primitive element is the smallest
//! encoding of full multiplicative order. Both choices are deterministic, so
//! two fields built from the same order are interchangeable.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest field order accepted by [`Field::new`].
pub const MAX_FIELD_ORDER: u32 = 256;

/// An element of some [`Field`], identified by its integer encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FieldElem(pub u16);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

struct FieldData {
    characteristic: u32,
    degree: u32,
    order: u32,
    modulus: Vec<u32>,
    primitive: FieldElem,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
}

/// A finite field of prime-power order. Cheap to clone.
#[derive(Clone)]
pub struct Field(Arc<FieldData>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        // construction is deterministic in the order
        self.0.order == other.0.order
    }
}

impl Eq for Field {}

impl std::hash::Hash for Field {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.order.hash(state);
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}", self.0.order)
    }
}

/// Splits `n` as `r^d` with `r` prime, or returns `None`.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let mut r = 2;
    while r * r <= n {
        if n.is_multiple_of(r) {
            break;
        }
        r += 1;
    }
    if !n.is_multiple_of(r) {
        r = n;
    }
    let mut m = n;
    let mut d = 0;
    while m.is_multiple_of(r) {
        m /= r;
        d += 1;
    }
    (m == 1).then_some((r, d))
}

// Small polynomial helpers over Z_r used only while choosing a modulus.
// Coefficients are stored lowest degree first.

fn zr_trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn zr_rem(a: &[u32], b: &[u32], r: u32) -> Vec<u32> {
    // b monic
    let mut a = a.to_vec();
    let db = b.len() - 1;
    while a.len() > db {
        let lead = *a.last().unwrap();
        let shift = a.len() - 1 - db;
        if lead != 0 {
            for (i, &bc) in b.iter().enumerate() {
                let t = (lead * bc) % r;
                a[shift + i] = (a[shift + i] + r - t) % r;
            }
        }
        a.pop();
    }
    zr_trim(a)
}

fn zr_is_irreducible(f: &[u32], r: u32) -> bool {
    let deg = f.len() - 1;
    // trial division by every monic polynomial of degree 1..=deg/2
    for d in 1..=deg / 2 {
        let count = (r as u64).pow(d as u32);
        for code in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut c = code;
            for _ in 0..d {
                g.push((c % r as u64) as u32);
                c /= r as u64;
            }
            g.push(1);
            if zr_rem(f, &g, r).is_empty() {
                return false;
            }
        }
    }
    true
}

fn choose_modulus(r: u32, d: u32) -> Vec<u32> {
    if d == 1 {
        return vec![0, 1];
    }
    let count = (r as u64).pow(d);
    for code in 0..count {
        // code's most significant digit is the x^{d-1} coefficient, so plain
        // counting walks the tuple (c_{d-1}, ..., c_0) in ascending order
        let mut f = vec![0u32; d as usize + 1];
        let mut c = code;
        for slot in f.iter_mut().take(d as usize) {
            *slot = (c % r as u64) as u32;
            c /= r as u64;
        }
        f[d as usize] = 1;
        if zr_is_irreducible(&f, r) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl Field {
    /// Builds the field of the given order.
    pub fn new(order: u64) -> Result<Field> {
        let (r, d) = prime_power(order).ok_or(Error::NotAPrimePower(order))?;
        if order > MAX_FIELD_ORDER as u64 {
            return Err(Error::FieldTooLarge {
                order,
                max: MAX_FIELD_ORDER as u64,
            });
        }
        let r = r as u32;
        let n = order as u32;
        let modulus = choose_modulus(r, d);

        let digits = |mut v: u32| -> Vec<u32> {
            let mut out = vec![0; d as usize];
            for slot in out.iter_mut() {
                *slot = v % r;
                v /= r;
            }
            out
        };
        let pack = |ds: &[u32]| -> u16 { ds.iter().rev().fold(0u32, |acc, &x| acc * r + x) as u16 };

        let size = (n * n) as usize;
        let mut add = vec![0u16; size];
        let mut mul = vec![0u16; size];
        let decoded: Vec<Vec<u32>> = (0..n).map(digits).collect();
        for a in 0..n {
            for b in 0..n {
                let da = &decoded[a as usize];
                let db = &decoded[b as usize];
                let sum: Vec<u32> = da.iter().zip(db).map(|(x, y)| (x + y) % r).collect();
                add[(a * n + b) as usize] = pack(&sum);

                let mut prod = vec![0u32; 2 * d as usize - 1];
                for (i, &x) in da.iter().enumerate() {
                    for (j, &y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % r;
                    }
                }
                let mut red = zr_rem(&prod, &modulus, r);
                red.resize(d as usize, 0);
                mul[(a * n + b) as usize] = pack(&red);
            }
        }
        let mut neg = vec![0u16; n as usize];
        let mut inv = vec![0u16; n as usize];
        for a in 0..n {
            for b in 0..n {
                if add[(a * n + b) as usize] == 0 {
                    neg[a as usize] = b as u16;
                }
                if mul[(a * n + b) as usize] == 1 {
                    inv[a as usize] = b as u16;
                }
            }
        }

        let unit_order = |g: u32| -> u32 {
            let mut x = g;
            let mut k = 1;
            while x != 1 {
                x = mul[(x * n + g) as usize] as u32;
                k += 1;
            }
            k
        };
        let primitive = (1..n)
            .find(|&g| unit_order(g) == n - 1)
            .map(|g| FieldElem(g as u16))
            .expect("finite fields have cyclic unit groups");

        Ok(Field(Arc::new(FieldData {
            characteristic: r,
            degree: d,
            order: n,
            modulus,
            primitive,
            add,
            mul,
            neg,
            inv,
        })))
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.0.characteristic
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.0.degree
    }

    #[inline]
    pub fn order(&self) -> u32 {
        self.0.order
    }

    /// Modulus coefficients over the prime subfield, lowest degree first.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    #[inline]
    pub fn primitive(&self) -> FieldElem {
        self.0.primitive
    }

    pub fn elem(&self, value: u64) -> Result<FieldElem> {
        if value < self.0.order as u64 {
            Ok(FieldElem(value as u16))
        } else {
            Err(Error::InvalidElement {
                value,
                order: self.0.order,
            })
        }
    }

    /// All elements in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> + Clone {
        (0..self.0.order).map(|v| FieldElem(v as u16))
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = FieldElem> + Clone {
        (1..self.0.order).map(|v| FieldElem(v as u16))
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> FieldElem {
        let r = self.0.characteristic as i64;
        FieldElem(n.rem_euclid(r) as u16)
    }

    #[inline]
    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        FieldElem(self.0.add[a.index() * self.0.order as usize + b.index()])
    }

    #[inline]
    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn neg(&self, a: FieldElem) -> FieldElem {
        FieldElem(self.0.neg[a.index()])
    }

    #[inline]
    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        FieldElem(self.0.mul[a.index() * self.0.order as usize + b.index()])
    }

    pub fn inv(&self, a: FieldElem) -> Result<FieldElem> {
        if a.is_zero() {
            Err(Error::DivisionByZero)
        } else {
            Ok(FieldElem(self.0.inv[a.index()]))
        }
    }

    pub fn div(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElem, mut e: u64) -> FieldElem {
        let mut base = a;
        let mut acc = FieldElem::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Inverse of the Frobenius map `a -> a^r`.
    pub fn frobenius_root(&self, a: FieldElem) -> FieldElem {
        self.pow(a, (self.0.order / self.0.characteristic) as u64)
    }

    /// Order of `a` in the multiplicative group; 0 for `a = 0`.
    pub fn multiplicative_order(&self, a: FieldElem) -> u32 {
        if a.is_zero() {
            return 0;
        }
        let mut x = a;
        let mut k = 1;
        while x != FieldElem::ONE {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn same_as(&self, other: &Field) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::FieldMismatch {
                left: self.order(),
                right: other.order(),
            })
        }
    }
}

/// Convenience alias for [`Field::new`].
pub fn field_make(order: u64) -> Result<Field> {
    Field::new(order)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(v: u16) -> FieldElem {
        FieldElem(v)
    }

    #[test]
    fn prime_fields() {
        let f5 = Field::new(5).unwrap();
        assert_eq!((f5.characteristic(), f5.degree()), (5, 1));
        assert_eq!(f5.modulus(), &[0, 1]);
        assert_eq!(f5.mul(e(2), e(3)), e(1));
        assert_eq!(f5.primitive(), e(2));

        let f7 = Field::new(7).unwrap();
        assert_eq!(f7.inv(e(3)).unwrap(), e(5));
        assert_eq!(Field::new(2).unwrap().primitive(), e(1));
    }

    #[test]
    fn extension_moduli() {
        let f4 = Field::new(4).unwrap();
        assert_eq!(f4.modulus(), &[1, 1, 1]);
        assert_eq!(f4.mul(e(2), e(2)), e(3));
        assert_eq!(f4.primitive(), e(2));

        let f9 = Field::new(9).unwrap();
        assert_eq!(f9.modulus(), &[1, 0, 1]);
        let f8 = Field::new(8).unwrap();
        assert_eq!(f8.modulus(), &[1, 1, 0, 1]);
        let f25 = Field::new(25).unwrap();
        assert_eq!(f25.modulus(), &[2, 0, 1]);
    }

    #[test]
    fn rejects_non_prime_powers() {
        assert_eq!(Field::new(6).unwrap_err(), Error::NotAPrimePower(6));
        assert_eq!(Field::new(1).unwrap_err(), Error::NotAPrimePower(1));
        assert_eq!(Field::new(0).unwrap_err(), Error::NotAPrimePower(0));
        assert!(matches!(Field::new(512), Err(Error::FieldTooLarge { .. })));
    }

    #[test]
    fn inverse_of_zero() {
        let f = Field::new(3).unwrap();
        assert_eq!(f.inv(FieldElem::ZERO), Err(Error::DivisionByZero));
    }

    #[test]
    fn field_axioms_exhaustive() {
        for order in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 32, 49] {
            let f = Field::new(order).unwrap();
            for a in f.elements() {
                assert_eq!(f.mul(a, FieldElem::ONE), a);
                assert_eq!(f.add(a, f.neg(a)), FieldElem::ZERO);
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), FieldElem::ONE);
                }
                for b in f.elements() {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in f.elements().step_by(3) {
                        let lhs = f.mul(a, f.add(b, c));
                        let rhs = f.add(f.mul(a, b), f.mul(a, c));
                        assert_eq!(lhs, rhs);
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn primitive_powers_enumerate_units() {
        for order in [2u64, 3, 4, 5, 7, 8, 9, 16, 25, 27, 49] {
            let f = Field::new(order).unwrap();
            let g = f.primitive();
            let mut seen = vec![false; order as usize];
            for k in 0..order - 1 {
                let x = f.pow(g, k);
                assert!(!seen[x.index()]);
                seen[x.index()] = true;
            }
            assert!(!seen[0]);
            assert_eq!(seen.iter().filter(|&&s| s).count() as u64, order - 1);
            // smallest such encoding
            for v in 1..g.0 {
                assert!(f.multiplicative_order(e(v)) < order as u32 - 1);
            }
        }
    }

    #[test]
    fn construction_is_deterministic() {
        let a = Field::new(27).unwrap();
        let b = Field::new(27).unwrap();
        assert_eq!(a.modulus(), b.modulus());
        assert_eq!(a.primitive(), b.primitive());
        for x in a.elements() {
            for y in a.elements() {
                assert_eq!(a.mul(x, y), b.mul(x, y));
            }
        }
    }

    #[test]
    fn frobenius_root_inverts_power() {
        for order in [4u64, 8, 9, 25] {
            let f = Field::new(order).unwrap();
            let r = f.characteristic() as u64;
            for a in f.elements() {
                assert_eq!(f.pow(f.frobenius_root(a), r), a);
            }
        }
    }
}
