//! Exact arithmetic in a real quadratic field `ℚ(√d)`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

type Q = Ratio<i128>;

/// `rational + surd·√d` with `d` square-free; `d = 1` holds rationals, whose
/// surd part is always zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadraticNumber {
    rational: Q,
    surd: Q,
    radicand: i64,
}

/// JSON form `(p + q√d)/r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadraticDoc {
    pub p: i64,
    pub q: i64,
    pub r: i64,
    pub d: i64,
}

impl QuadraticNumber {
    /// `(p + q√d)/r`. The radicand is reduced to its square-free part.
    pub fn new(p: i64, q: i64, r: i64, d: i64) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidInput("zero denominator".into()));
        }
        if d < 1 {
            return Err(Error::InvalidInput("radicand must be positive".into()));
        }
        let (square, free) = split_square(d);
        let r = Q::from_integer(r as i128);
        let rational = Q::from_integer(p as i128) / r;
        let surd = Q::from_integer(q as i128 * square as i128) / r;
        Ok(QuadraticNumber::from_parts(rational, surd, free))
    }

    fn from_parts(rational: Q, surd: Q, radicand: i64) -> Self {
        if radicand == 1 || surd.is_zero() {
            QuadraticNumber {
                rational: rational + surd,
                surd: Q::zero(),
                radicand: 1,
            }
        } else {
            QuadraticNumber {
                rational,
                surd,
                radicand,
            }
        }
    }

    pub fn integer(n: i64) -> Self {
        QuadraticNumber::rational(n, 1)
    }

    pub fn rational(p: i64, r: i64) -> Self {
        QuadraticNumber::from_parts(Q::new(p as i128, r as i128), Q::zero(), 1)
    }

    pub fn zero() -> Self {
        QuadraticNumber::integer(0)
    }

    pub fn one() -> Self {
        QuadraticNumber::from_parts(Q::one(), Q::zero(), 1)
    }

    pub fn is_rational(&self) -> bool {
        self.surd.is_zero()
    }

    /// Square-free radicand; 1 for rationals.
    pub fn radicand(&self) -> i64 {
        self.radicand
    }

    fn field_with(&self, other: &Self) -> Result<i64> {
        match (self.radicand(), other.radicand()) {
            (1, d) | (d, 1) => Ok(d),
            (d, e) if d == e => Ok(d),
            (d, e) => Err(Error::FieldMismatch(d, e)),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let d = self.field_with(other)?;
        Ok(QuadraticNumber::from_parts(
            self.rational + other.rational,
            self.surd + other.surd,
            d,
        ))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-*other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let d = self.field_with(other)?;
        let dq = Q::from_integer(d as i128);
        Ok(QuadraticNumber::from_parts(
            self.rational * other.rational + self.surd * other.surd * dq,
            self.rational * other.surd + self.surd * other.rational,
            d,
        ))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::InvalidInput("division by zero".into()));
        }
        let d = self.field_with(other)?;
        // multiply by the conjugate of the denominator
        let dq = Q::from_integer(d as i128);
        let norm = other.rational * other.rational - other.surd * other.surd * dq;
        let conjugate = QuadraticNumber::from_parts(other.rational / norm, -other.surd / norm, d);
        self.checked_mul(&conjugate)
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.surd.is_zero()
    }

    /// Exact sign: −1, 0 or 1.
    pub fn signum(&self) -> i32 {
        let sa = sign(&self.rational);
        let sb = sign(&self.surd);
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        // opposite signs: compare a² with b²d
        let lhs = self.rational * self.rational;
        let rhs = self.surd * self.surd * Q::from_integer(self.radicand as i128);
        match lhs.cmp(&rhs) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.rational.to_f64().unwrap_or(f64::NAN);
        let b = self.surd.to_f64().unwrap_or(f64::NAN);
        a + b * (self.radicand as f64).sqrt()
    }

    /// Greatest integer not above `self`.
    pub fn floor(&self) -> i64 {
        let mut n = self.to_f64().floor() as i64;
        while (*self - QuadraticNumber::integer(n)).signum() < 0 {
            n -= 1;
        }
        while (*self - QuadraticNumber::integer(n + 1)).signum() >= 0 {
            n += 1;
        }
        n
    }

    /// `self - floor(self)`, in `[0, 1)`.
    pub fn fract(&self) -> Self {
        *self - QuadraticNumber::integer(self.floor())
    }

    pub fn to_doc(&self) -> QuadraticDoc {
        let denominator = self.rational.denom().lcm(self.surd.denom());
        let p = *self.rational.numer() * (denominator / self.rational.denom());
        let q = *self.surd.numer() * (denominator / self.surd.denom());
        QuadraticDoc {
            p: p as i64,
            q: q as i64,
            r: denominator as i64,
            d: self.radicand(),
        }
    }

    pub fn from_doc(doc: &QuadraticDoc) -> Result<Self> {
        QuadraticNumber::new(doc.p, doc.q, doc.r, doc.d)
    }
}

fn sign(x: &Q) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// `d = square² · free` with `free` square-free.
fn split_square(d: i64) -> (i64, i64) {
    let mut square = 1;
    let mut free = d;
    let mut p = 2;
    while p * p <= free {
        while free % (p * p) == 0 {
            free /= p * p;
            square *= p;
        }
        p += 1;
    }
    (square, free)
}

impl Ord for QuadraticNumber {
    /// Panics when the numbers lie in different fields.
    fn cmp(&self, other: &Self) -> Ordering {
        match self.checked_sub(other).expect("same quadratic field").signum() {
            -1 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }
}

impl PartialOrd for QuadraticNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Neg for QuadraticNumber {
    type Output = Self;
    fn neg(self) -> Self {
        QuadraticNumber::from_parts(-self.rational, -self.surd, self.radicand)
    }
}

/// The operator forms panic on a field mismatch; use the `checked_` methods
/// for untrusted input.
impl Add for QuadraticNumber {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.checked_add(&rhs).expect("same quadratic field")
    }
}

impl Sub for QuadraticNumber {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.checked_sub(&rhs).expect("same quadratic field")
    }
}

impl Mul for QuadraticNumber {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.checked_mul(&rhs).expect("same quadratic field")
    }
}

impl Div for QuadraticNumber {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        self.checked_div(&rhs).expect("nonzero divisor in the same field")
    }
}

impl fmt::Display for QuadraticNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let doc = self.to_doc();
        if doc.q == 0 {
            if doc.r == 1 {
                write!(f, "{}", doc.p)
            } else {
                write!(f, "{}/{}", doc.p, doc.r)
            }
        } else {
            let op = if doc.q < 0 { '-' } else { '+' };
            let q = doc.q.abs();
            let surd = if q == 1 {
                format!("√{}", doc.d)
            } else {
                format!("{q}√{}", doc.d)
            };
            if doc.r == 1 {
                write!(f, "{} {op} {surd}", doc.p)
            } else {
                write!(f, "({} {op} {surd})/{}", doc.p, doc.r)
            }
        }
    }
}

impl From<i64> for QuadraticNumber {
    fn from(n: i64) -> Self {
        QuadraticNumber::integer(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn golden() -> QuadraticNumber {
        QuadraticNumber::new(1, 1, 2, 5).unwrap()
    }

    #[test]
    fn field_arithmetic() {
        let g = golden();
        // g² = g + 1
        assert_eq!(g * g, g + QuadraticNumber::one());
        assert_eq!((g * g) / g, g);
        assert_eq!(g - g, QuadraticNumber::zero());
    }

    #[test]
    fn exact_comparisons() {
        let s2 = QuadraticNumber::new(0, 1, 1, 2).unwrap();
        let a = QuadraticNumber::rational(14142, 10000);
        let b = QuadraticNumber::rational(14143, 10000);
        assert!(a < s2 && s2 < b);
        assert_eq!(QuadraticNumber::new(-2, 1, 1, 4).unwrap(), QuadraticNumber::zero());
    }

    #[test]
    fn floor_and_fract() {
        let x = QuadraticNumber::new(1, -1, 2, 5).unwrap();
        assert_eq!(x.floor(), -1);
        assert_eq!(x.fract(), QuadraticNumber::new(3, -1, 2, 5).unwrap());
        assert_eq!(QuadraticNumber::integer(3).floor(), 3);
        assert_eq!(QuadraticNumber::integer(3).fract(), QuadraticNumber::zero());
    }

    #[test]
    fn field_mismatch() {
        let s2 = QuadraticNumber::new(0, 1, 1, 2).unwrap();
        let s3 = QuadraticNumber::new(0, 1, 1, 3).unwrap();
        assert_eq!(s2.checked_add(&s3), Err(Error::FieldMismatch(2, 3)));
        assert!(s2.checked_add(&QuadraticNumber::one()).is_ok());
    }

    #[test]
    fn square_factors_are_pulled_out() {
        let x = QuadraticNumber::new(0, 1, 1, 8).unwrap();
        assert_eq!(x, QuadraticNumber::new(0, 2, 1, 2).unwrap());
        assert_eq!(x.to_doc(), QuadraticDoc { p: 0, q: 2, r: 1, d: 2 });
    }

    #[test]
    fn display() {
        assert_eq!(golden().to_string(), "(1 + √5)/2");
        assert_eq!(QuadraticNumber::rational(3, 4).to_string(), "3/4");
    }
}
