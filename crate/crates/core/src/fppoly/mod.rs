//! Dense univariate polynomials over a finite field.

mod factor;

pub use factor::{factor, Factorization};

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use crate::error::{Error, Result};
use crate::gf::{Field, FieldElem};

/// Polynomial with coefficients stored lowest degree first and no trailing
/// zeros; the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: Field,
    coeffs: Vec<FieldElem>,
}

impl Poly {
    pub fn new(field: &Field, mut coeffs: Vec<FieldElem>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    /// Builds from integer coefficients, validating each encoding.
    pub fn from_ints(field: &Field, coeffs: &[u64]) -> Result<Poly> {
        let cs = coeffs
            .iter()
            .map(|&c| field.elem(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(Poly::new(field, cs))
    }

    pub fn zero(field: &Field) -> Poly {
        Poly::new(field, Vec::new())
    }

    pub fn one(field: &Field) -> Poly {
        Poly::constant(field, FieldElem::ONE)
    }

    pub fn constant(field: &Field, c: FieldElem) -> Poly {
        Poly::new(field, vec![c])
    }

    pub fn x(field: &Field) -> Poly {
        Poly::monomial(field, FieldElem::ONE, 1)
    }

    pub fn monomial(field: &Field, c: FieldElem, degree: usize) -> Poly {
        let mut cs = vec![FieldElem::ZERO; degree + 1];
        cs[degree] = c;
        Poly::new(field, cs)
    }

    /// The modulus of `field` as a polynomial over its prime subfield.
    pub fn field_modulus(field: &Field) -> Result<Poly> {
        let prime = Field::new(field.characteristic() as u64)?;
        let cs: Vec<u64> = field.modulus().iter().map(|&c| c as u64).collect();
        Poly::from_ints(&prime, &cs)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElem {
        self.coeffs.get(i).copied().unwrap_or(FieldElem::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [FieldElem::ONE]
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> FieldElem {
        self.coeffs.last().copied().unwrap_or(FieldElem::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.lead() == FieldElem::ONE
    }

    pub fn to_ints(&self) -> Vec<u16> {
        self.coeffs.iter().map(|c| c.0).collect()
    }

    pub fn scale(&self, c: FieldElem) -> Poly {
        let f = &self.field;
        Poly::new(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn monic(&self) -> Poly {
        match self.field.inv(self.lead()) {
            Ok(li) => self.scale(li),
            Err(_) => self.clone(),
        }
    }

    pub fn eval(&self, x: FieldElem) -> FieldElem {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(FieldElem::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn derivative(&self) -> Poly {
        let f = &self.field;
        let cs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| f.mul(f.from_int(i as i64), c))
            .collect();
        Poly::new(f, cs)
    }

    /// Quotient and remainder; fails on division by zero or mixed fields.
    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.field.same_as(&divisor.field)?;
        let f = &self.field;
        let db = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = f.inv(divisor.lead())?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= db {
            return Ok((Poly::zero(f), self.clone()));
        }
        let mut quot = vec![FieldElem::ZERO; rem.len() - db];
        for i in (db..rem.len()).rev() {
            let c = rem[i];
            if c.is_zero() {
                continue;
            }
            let t = f.mul(c, lead_inv);
            quot[i - db] = t;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                let k = i - db + j;
                rem[k] = f.sub(rem[k], f.mul(t, d));
            }
        }
        rem.truncate(db);
        Ok((Poly::new(f, quot), Poly::new(f, rem)))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly> {
        Ok(self.div_rem(divisor)?.1)
    }

    /// Exact division; the remainder is discarded.
    pub(crate) fn quo(&self, divisor: &Poly) -> Poly {
        self.div_rem(divisor).expect("nonzero divisor").0
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, mut e: u64, m: &Poly) -> Result<Poly> {
        let mut base = self.rem(m)?;
        let mut acc = Poly::one(&self.field).rem(m)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = (&acc * &base).rem(m)?;
            }
            base = (&base * &base).rem(m)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Canonical order: degree first, then coefficients from the highest
    /// non-leading one down to the constant term.
    pub fn canonical_cmp(&self, other: &Poly) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }

    /// Ascending text form `c0 + c1*x + ... + ck*x^k`, zero terms omitted.
    pub fn to_ascending_text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("{c}*x"),
                _ => format!("{c}*x^{i}"),
            })
            .collect();
        terms.join(" + ")
    }

    /// Parses either the JSON array form `[c0, c1, ...]` or a sum of terms
    /// such as `1 + 2*x + x^3` (terms in any order, `*` optional).
    pub fn parse(field: &Field, text: &str) -> Result<Poly> {
        let trimmed = text.trim();
        if trimmed.starts_with('[') {
            let cs: Vec<u64> = serde_json::from_str(trimmed).map_err(|e| Error::from_json(&e))?;
            return Poly::from_ints(field, &cs);
        }
        let bad = |col: usize, msg: &str| Error::Parse {
            line: 1,
            column: col + 1,
            message: msg.to_string(),
        };
        let mut acc: Vec<FieldElem> = Vec::new();
        let mut pos = 0;
        for raw in trimmed.split('+') {
            let term: String = raw.chars().filter(|c| !c.is_whitespace()).collect();
            if term.is_empty() {
                return Err(bad(pos, "empty term"));
            }
            let (coef_txt, power) = match term.find('x') {
                None => (term.as_str(), 0usize),
                Some(ix) => {
                    let coef = term[..ix].trim_end_matches('*');
                    let rest = &term[ix + 1..];
                    let power = if rest.is_empty() {
                        1
                    } else if let Some(exp) = rest.strip_prefix('^') {
                        exp.parse().map_err(|_| bad(pos, "bad exponent"))?
                    } else {
                        return Err(bad(pos, "unexpected text after x"));
                    };
                    (coef, power)
                }
            };
            let coef = if coef_txt.is_empty() {
                FieldElem::ONE
            } else {
                let v: u64 = coef_txt.parse().map_err(|_| bad(pos, "bad coefficient"))?;
                field.elem(v)?
            };
            if acc.len() <= power {
                acc.resize(power + 1, FieldElem::ZERO);
            }
            acc[power] = field.add(acc[power], coef);
            pos += raw.len() + 1;
        }
        Ok(Poly::new(field, acc))
    }
}

/// Monic gcd; `gcd(0, 0) = 0`.
pub fn poly_gcd(a: &Poly, b: &Poly) -> Result<Poly> {
    a.field.same_as(&b.field)?;
    let mut x = a.clone();
    let mut y = b.clone();
    while !y.is_zero() {
        let r = x.rem(&y)?;
        x = y;
        y = r;
    }
    Ok(x.monic())
}

/// `x^{q-1} - 1` over `F_p`, where `q` is the order of `q_field`.
pub fn target_poly(p_field: &Field, q_field: &Field) -> Result<Poly> {
    if p_field.characteristic() == q_field.characteristic() {
        return Err(Error::SameCharacteristic {
            p: p_field.order(),
            q: q_field.order(),
        });
    }
    let n = q_field.order() as usize - 1;
    let mut cs = vec![FieldElem::ZERO; n + 1];
    cs[n] = FieldElem::ONE;
    cs[0] = p_field.sub(cs[0], FieldElem::ONE);
    Ok(Poly::new(p_field, cs))
}

fn zip_with(a: &Poly, b: &Poly, op: impl Fn(FieldElem, FieldElem) -> FieldElem) -> Poly {
    assert_eq!(a.field, b.field, "polynomials over different fields");
    let n = a.coeffs.len().max(b.coeffs.len());
    let cs = (0..n).map(|i| op(a.coeff(i), b.coeff(i))).collect();
    Poly::new(&a.field, cs)
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let f = self.field.clone();
        zip_with(self, rhs, |x, y| f.add(x, y))
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let f = self.field.clone();
        zip_with(self, rhs, |x, y| f.sub(x, y))
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.field, rhs.field, "polynomials over different fields");
        let f = &self.field;
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(f);
        }
        let mut cs = vec![FieldElem::ZERO; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                cs[i + j] = f.add(cs[i + j], f.mul(a, b));
            }
        }
        Poly::new(f, cs)
    }
}

/// Compact descending form, e.g. `x^2+3*x+1`.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (i, c.0) {
                (0, _) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, _) => write!(f, "{c}*x")?,
                (_, 1) => write!(f, "x^{i}")?,
                _ => write!(f, "{c}*x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {:?}", self, self.field)
    }
}
