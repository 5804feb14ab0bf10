//! Scalar traits and rational helpers.

use std::cmp::Ordering;
use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::Rational;

/// Field operations needed by the split-quaternion algebra.
///
/// Blanket-implemented, so `f64`, [`Rational`] and
/// [`QuadraticSurd`](crate::QuadraticSurd) all qualify.
pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
}

impl<T> Scalar for T where
    T: Clone
        + PartialEq
        + Debug
        + Zero
        + One
        + Neg<Output = T>
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Div<Output = T>
{
}

/// An ordered field with exact equality that contains the rationals.
pub trait ExactScalar: Scalar {
    fn from_rational(r: &Rational) -> Self;
    /// Sign relative to zero.
    fn sign(&self) -> Ordering;
    fn to_f64(&self) -> f64;
}

impl ExactScalar for Rational {
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn sign(&self) -> Ordering {
        if self.is_zero() {
            Ordering::Equal
        } else if self.is_positive() {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n/d`; panics when `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Exact square root of a non-negative integer, if it is a perfect square.
pub fn isqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Exact square root of a rational, if it is the square of a rational.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    let n = isqrt_exact(r.numer())?;
    let d = isqrt_exact(r.denom())?;
    Some(Rational::new(n, d))
}

/// Canonical text: `n` for integers, `n/d` otherwise.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Always `n/d`, the form used in JSON documents.
pub fn format_rational_fraction(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `n`, `-n` or `n/d` with `d > 0`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let err = |position: usize, expected: &str| Error::Parse {
        position,
        expected: expected.to_string(),
    };
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (text, None),
    };
    let numer: BigInt = num.parse().map_err(|_| err(0, "integer"))?;
    let denom: BigInt = match den {
        Some(d) => d.parse().map_err(|_| err(num.len() + 1, "positive integer"))?,
        None => BigInt::one(),
    };
    if !denom.is_positive() {
        return Err(err(num.len() + 1, "positive integer"));
    }
    Ok(Rational::new(numer, denom))
}

/// Best rational approximation of `value` with denominator at most `max_den`,
/// accepted only when it lies within `tol` of `value`.
pub fn snap(value: f64, max_den: u64, tol: f64) -> Option<Rational> {
    if !value.is_finite() {
        return None;
    }
    // Continued-fraction convergents.
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut x = value;
    let mut best = None;
    for _ in 0..64 {
        let a = x.floor();
        if a.abs() > 1e15 {
            break;
        }
        let ai = a as i128;
        let h2 = ai * h1 + h0;
        let k2 = ai * k1 + k0;
        if k2 > max_den as i128 {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let approx = h1 as f64 / k1 as f64;
        if (approx - value).abs() <= tol {
            best = Some(Rational::new(BigInt::from(h1), BigInt::from(k1)));
            break;
        }
        let frac = x - a;
        if frac.abs() < 1e-300 {
            break;
        }
        x = 1.0 / frac;
    }
    best
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("-3/6").unwrap(), rat(-1, 2));
        assert_eq!(format_rational(&rat(4, 2)), "2");
        assert_eq!(format_rational(&rat(-1, 3)), "-1/3");
        assert_eq!(format_rational_fraction(&int(2)), "2/1");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("1/-2").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn rational_square_roots() {
        assert_eq!(rational_sqrt(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(rational_sqrt(&rat(2, 1)), None);
        assert_eq!(rational_sqrt(&rat(-1, 1)), None);
    }

    #[test]
    fn snapping() {
        assert_eq!(snap(0.333_333_333_333_3, 1_000_000, 1e-9), Some(rat(1, 3)));
        assert_eq!(snap(-2.5, 1_000_000, 1e-9), Some(rat(-5, 2)));
        assert_eq!(snap(std::f64::consts::SQRT_2, 1_000_000, 1e-13), None);
    }
}
