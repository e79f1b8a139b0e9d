//! Scalar tower: exact big rationals for crystallographic data, `f64` for
//! non-crystallographic dihedral groups.

use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Float, One, Signed, ToPrimitive, Zero};

/// Exact rational number used for every crystallographic computation.
pub type Rational = num_rational::BigRational;

/// Global tolerance for approximate (non-crystallographic) arithmetic.
pub const APPROX_TOLERANCE: f64 = 1e-9;

/// Field operations shared by the exact and the approximate scalar modes.
pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + PartialOrd
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// `true` when equality is exact.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn from_ratio(num: i64, den: i64) -> Self;
    fn to_f64(&self) -> f64;
    fn is_zero(&self) -> bool;
    fn is_integer(&self) -> bool;
    fn floor_i64(&self) -> i64;

    /// Lifts an `f64`; `None` in exact mode, where floats never enter.
    fn try_from_f64(x: f64) -> Option<Self>;

    /// Equality up to `tol` in approximate mode, exact equality otherwise.
    fn approx_eq(&self, other: &Self, tol: f64) -> bool;

    fn is_negative(&self) -> bool {
        *self < Self::zero()
    }

    fn abs(&self) -> Self {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(n: i64) -> Self {
        Rational::from_integer(BigInt::from(n))
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Rational::new(BigInt::from(num), BigInt::from(den))
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_integer(&self) -> bool {
        self.denom().is_one()
    }
    fn floor_i64(&self) -> i64 {
        let (q, _) = self.numer().div_mod_floor(self.denom());
        q.to_i64().expect("floor out of i64 range")
    }
    fn try_from_f64(_x: f64) -> Option<Self> {
        None
    }
    fn approx_eq(&self, other: &Self, _tol: f64) -> bool {
        self == other
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(n: i64) -> Self {
        n as f64
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn is_integer(&self) -> bool {
        Float::abs(*self - Float::round(*self)) <= APPROX_TOLERANCE
    }
    fn floor_i64(&self) -> i64 {
        // Snap values within tolerance of an integer before flooring.
        let r = Float::round(*self);
        if Float::abs(*self - r) <= APPROX_TOLERANCE {
            r as i64
        } else {
            Float::floor(*self) as i64
        }
    }
    fn try_from_f64(x: f64) -> Option<Self> {
        Some(x)
    }
    fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        Float::abs(*self - *other) <= tol
    }
}

pub(crate) fn min_of<S: Scalar>(a: S, b: S) -> S {
    match a.partial_cmp(&b) {
        Some(Ordering::Greater) => b,
        _ => a,
    }
}

pub(crate) fn max_of<S: Scalar>(a: S, b: S) -> S {
    match a.partial_cmp(&b) {
        Some(Ordering::Less) => b,
        _ => a,
    }
}

/// Parses `"p/q"`, `"p"` or `"-p/q"` into an exact rational.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if Zero::is_zero(&den) {
        return None;
    }
    Some(Rational::new(num, den))
}

/// Converts an `f64` to the nearest rational with denominator at most `2^52`.
pub fn rational_from_f64(x: f64) -> Option<Rational> {
    Rational::from_float(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn rational_display_and_parse_roundtrip() {
        let r = <Rational as Scalar>::from_ratio(-6, 4);
        assert_eq!(r.to_string(), "-3/2");
        assert_eq!(parse_rational("-3/2"), Some(r));
        assert_eq!(parse_rational("4").unwrap().to_string(), "4");
        assert!(parse_rational("1/0").is_none());
        assert!(parse_rational("x").is_none());
    }

    #[test]
    fn floor_is_mathematical_floor() {
        assert_eq!(<Rational as Scalar>::from_ratio(-1, 2).floor_i64(), -1);
        assert_eq!(<Rational as Scalar>::from_ratio(7, 2).floor_i64(), 3);
        assert_eq!((-0.5f64).floor_i64(), -1);
        assert_eq!((2.0 - 1e-12f64).floor_i64(), 2);
    }
}
