//! Real-coefficient polynomials: the companion quartic of a quadratic
//! split-quaternion equation and its monic quadratic divisors.

mod divisors;
mod roots;

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{format_rational, Scalar};
use crate::{Quat, Rational, RealPoly};

pub use divisors::{quadratic_divisors, QuadDivisor};
pub use roots::{isolate_real_roots, RealRoot};

/// Polynomial with coefficients in ascending degree, without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::new(vec![T::one()])
    }

    /// `x − r`.
    pub fn linear_root(r: T) -> Self {
        Poly::new(vec![-r, T::one()])
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn scale(&self, s: &T) -> Self {
        Poly::new(self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let d = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.coeffs[d].clone();
        let mut rem = self.coeffs.clone();
        let Some(n) = self.degree().filter(|&n| n >= d) else {
            return (Poly::zero(), self.clone());
        };
        let mut quot = vec![T::zero(); n - d + 1];
        for k in (0..=n - d).rev() {
            let c = rem[k + d].clone() / lead.clone();
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].clone() - c.clone() * dc.clone();
            }
            quot[k] = c;
        }
        rem.truncate(d);
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn derivative(&self) -> Self {
        let mut k = T::zero();
        let mut out = Vec::new();
        for c in self.coeffs.iter() {
            if !k.is_zero() {
                out.push(c.clone() * k.clone());
            }
            k = k + T::one();
        }
        Poly::new(out)
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => self.scale(&(T::one() / l.clone())),
            None => Poly::zero(),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `self(α·x + β)`.
    pub fn compose_linear(&self, alpha: &T, beta: &T) -> Self {
        let inner = Poly::new(vec![beta.clone(), alpha.clone()]);
        self.coeffs.iter().rev().fold(Poly::zero(), |acc, c| {
            acc.mul(&inner).add(&Poly::new(vec![c.clone()]))
        })
    }

    pub fn divides(&self, other: &Self) -> bool {
        !self.is_zero() && other.div_rem(self).1.is_zero()
    }
}

impl RealPoly {
    /// Rejects degree above four.
    pub fn checked(coeffs: Vec<Rational>) -> Result<Self> {
        let p = Poly::new(coeffs);
        match p.degree() {
            Some(d) if d > 4 => Err(Error::DegreeTooHigh(d)),
            _ => Ok(p),
        }
    }

    /// `x² − T·x + N`.
    pub fn monic_quadratic(t: &Rational, n: &Rational) -> Self {
        Poly::new(vec![n.clone(), -t.clone(), Rational::one()])
    }
}

/// `c(x) = I_a x⁴ + 2P_ab x³ + (2P_ac + I_b) x² + 2P_bc x + I_c`, where
/// `P_uv = Re(ū·v)`. For real `t`, `c(t) = I(a t² + b t + c)`.
pub fn companion(a: &Quat, b: &Quat, c: &Quat) -> RealPoly {
    let two = Rational::from_integer(2.into());
    Poly::new(vec![
        c.norm(),
        &two * b.semi_inner(c),
        &two * a.semi_inner(c) + b.norm(),
        &two * a.semi_inner(b),
        a.norm(),
    ])
}

impl fmt::Display for Poly<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (deg, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let mono = match deg {
                0 => String::new(),
                1 => "x".to_string(),
                d => format!("x^{d}"),
            };
            let body = if mono.is_empty() {
                format_rational(&mag)
            } else if mag.is_one() {
                mono
            } else {
                format!("{}{}", format_rational(&mag), mono)
            };
            match (first, c.is_negative()) {
                (true, true) => write!(f, "-{body}")?,
                (true, false) => write!(f, "{body}")?,
                (false, true) => write!(f, " - {body}")?,
                (false, false) => write!(f, " + {body}")?,
            }
            first = false;
        }
        Ok(())
    }
}
