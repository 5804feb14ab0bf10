//! Elements of a real quadratic extension `Q(√d)`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::scalar::{format_rational, isqrt_exact, rational_sqrt, ExactScalar};
use crate::Rational;

/// `rational + radical·√radicand`.
///
/// When `radical` is zero the radicand is stored as zero and the value is a
/// plain rational. Otherwise the radicand is an integer greater than one with
/// no small square factors. Two surds over different radicands can only be
/// combined arithmetically when the radicands differ by a rational square;
/// mixing genuinely different extensions panics. Comparisons never panic.
#[derive(Clone, Debug)]
pub struct QuadraticSurd {
    rational: Rational,
    radical: Rational,
    radicand: BigInt,
}

impl QuadraticSurd {
    pub fn from_rational(r: Rational) -> Self {
        QuadraticSurd {
            rational: r,
            radical: Rational::zero(),
            radicand: BigInt::zero(),
        }
    }

    /// `rational + radical·√radicand` for a non-negative rational radicand.
    pub fn new(rational: Rational, radical: Rational, radicand: &Rational) -> Self {
        assert!(!radicand.is_negative(), "negative radicand");
        let root = QuadraticSurd::sqrt_rational(radicand).expect("non-negative radicand");
        QuadraticSurd::from_rational(rational) + root * QuadraticSurd::from_rational(radical)
    }

    /// Square root of a non-negative rational; `None` for negative input.
    pub fn sqrt_rational(r: &Rational) -> Option<Self> {
        if r.is_negative() {
            return None;
        }
        if let Some(s) = rational_sqrt(r) {
            return Some(QuadraticSurd::from_rational(s));
        }
        // √(p/q) = √(pq)/q, then pull square factors out of pq.
        let q = r.denom().clone();
        let (square, free) = split_square_factor(&(r.numer() * &q));
        Some(QuadraticSurd {
            rational: Rational::zero(),
            radical: Rational::new(square, q),
            radicand: free,
        })
    }

    pub fn rational_part(&self) -> &Rational {
        &self.rational
    }

    pub fn radical_part(&self) -> &Rational {
        &self.radical
    }

    pub fn radicand(&self) -> &BigInt {
        &self.radicand
    }

    pub fn is_rational(&self) -> bool {
        self.radical.is_zero()
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.rational.clone())
    }

    /// Conjugate `a − b√d`.
    pub fn conjugate(&self) -> Self {
        QuadraticSurd {
            rational: self.rational.clone(),
            radical: -self.radical.clone(),
            radicand: self.radicand.clone(),
        }
    }

    /// Field norm `a² − b²d`.
    pub fn field_norm(&self) -> Rational {
        &self.rational * &self.rational
            - &self.radical * &self.radical * Rational::from_integer(self.radicand.clone())
    }

    /// Non-negative square root inside the same extension, if one exists.
    pub fn sqrt(&self) -> Option<Self> {
        match self.sign() {
            Ordering::Less => return None,
            Ordering::Equal => return Some(QuadraticSurd::zero()),
            Ordering::Greater => {}
        }
        if self.is_rational() {
            return QuadraticSurd::sqrt_rational(&self.rational);
        }
        // (p + q√d)² = p² + q²d + 2pq√d; p² solves z² − a z + b²d/4 = 0.
        let a = &self.rational;
        let disc_root = rational_sqrt(&self.field_norm())?;
        let two = Rational::from_integer(BigInt::from(2));
        for z in [(a + &disc_root) / &two, (a - &disc_root) / &two] {
            if !z.is_positive() {
                continue;
            }
            if let Some(p) = rational_sqrt(&z) {
                let q = &self.radical / (&two * &p);
                let candidate = QuadraticSurd {
                    rational: p,
                    radical: q,
                    radicand: self.radicand.clone(),
                };
                let candidate = if candidate.sign() == Ordering::Less {
                    -candidate
                } else {
                    candidate
                };
                if &candidate * &candidate == *self {
                    return Some(candidate);
                }
            }
        }
        None
    }

    /// Expresses `other` over `self`'s radicand, when the two are compatible.
    fn common_radicand(&self, other: &Self) -> (BigInt, Rational, Rational) {
        if other.radical.is_zero() {
            return (self.radicand.clone(), self.radical.clone(), Rational::zero());
        }
        if self.radical.is_zero() {
            return (other.radicand.clone(), Rational::zero(), other.radical.clone());
        }
        if self.radicand == other.radicand {
            return (self.radicand.clone(), self.radical.clone(), other.radical.clone());
        }
        // √d2 = √(d1·d2)/d1 · √d1 when d1·d2 is a square.
        let product = &self.radicand * &other.radicand;
        let root = isqrt_exact(&product).unwrap_or_else(|| {
            panic!(
                "cannot combine √{} and √{}: different quadratic extensions",
                self.radicand, other.radicand
            )
        });
        let scale = Rational::new(root, self.radicand.clone());
        (
            self.radicand.clone(),
            self.radical.clone(),
            &other.radical * scale,
        )
    }

    fn normalized(rational: Rational, radical: Rational, radicand: BigInt) -> Self {
        if radical.is_zero() {
            QuadraticSurd::from_rational(rational)
        } else {
            QuadraticSurd {
                rational,
                radical,
                radicand,
            }
        }
    }
}

/// Splits `n > 0` as `s²·f`, removing square factors found by trial division.
fn split_square_factor(n: &BigInt) -> (BigInt, BigInt) {
    let mut square = BigInt::one();
    let mut free = n.clone();
    let mut p = BigInt::from(2);
    let limit = BigInt::from(10_000);
    while p <= limit && &p * &p <= free {
        let p2 = &p * &p;
        while free.is_multiple_of(&p2) {
            free /= &p2;
            square *= &p;
        }
        p += 1;
    }
    if let Some(r) = isqrt_exact(&free) {
        square *= r;
        free = BigInt::one();
    }
    (square, free)
}

impl PartialEq for QuadraticSurd {
    fn eq(&self, other: &Self) -> bool {
        if self.rational != other.rational {
            return false;
        }
        match (self.radical.is_zero(), other.radical.is_zero()) {
            (true, true) => true,
            (true, false) | (false, true) => false,
            (false, false) => {
                if self.radicand == other.radicand {
                    return self.radical == other.radical;
                }
                self.radical.is_positive() == other.radical.is_positive()
                    && &self.radical * &self.radical * Rational::from_integer(self.radicand.clone())
                        == &other.radical
                            * &other.radical
                            * Rational::from_integer(other.radicand.clone())
            }
        }
    }
}

impl Eq for QuadraticSurd {}

impl Zero for QuadraticSurd {
    fn zero() -> Self {
        QuadraticSurd::from_rational(Rational::zero())
    }

    fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.radical.is_zero()
    }
}

impl One for QuadraticSurd {
    fn one() -> Self {
        QuadraticSurd::from_rational(Rational::one())
    }
}

impl From<Rational> for QuadraticSurd {
    fn from(r: Rational) -> Self {
        QuadraticSurd::from_rational(r)
    }
}

impl<'a> Add<&'a QuadraticSurd> for &'a QuadraticSurd {
    type Output = QuadraticSurd;

    fn add(self, rhs: &'a QuadraticSurd) -> QuadraticSurd {
        let (d, b1, b2) = self.common_radicand(rhs);
        QuadraticSurd::normalized(&self.rational + &rhs.rational, b1 + b2, d)
    }
}

impl<'a> Sub<&'a QuadraticSurd> for &'a QuadraticSurd {
    type Output = QuadraticSurd;

    fn sub(self, rhs: &'a QuadraticSurd) -> QuadraticSurd {
        let (d, b1, b2) = self.common_radicand(rhs);
        QuadraticSurd::normalized(&self.rational - &rhs.rational, b1 - b2, d)
    }
}

impl<'a> Mul<&'a QuadraticSurd> for &'a QuadraticSurd {
    type Output = QuadraticSurd;

    fn mul(self, rhs: &'a QuadraticSurd) -> QuadraticSurd {
        let (d, b1, b2) = self.common_radicand(rhs);
        let dr = Rational::from_integer(d.clone());
        let a1 = &self.rational;
        let a2 = &rhs.rational;
        QuadraticSurd::normalized(a1 * a2 + &b1 * &b2 * dr, a1 * &b2 + a2 * &b1, d)
    }
}

impl<'a> Div<&'a QuadraticSurd> for &'a QuadraticSurd {
    type Output = QuadraticSurd;

    fn div(self, rhs: &'a QuadraticSurd) -> QuadraticSurd {
        let norm = rhs.field_norm();
        assert!(!norm.is_zero(), "division by zero");
        let numerator = self * &rhs.conjugate();
        QuadraticSurd::normalized(
            numerator.rational / &norm,
            numerator.radical / &norm,
            numerator.radicand,
        )
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $method:ident),*) => {$(
        impl $tr for QuadraticSurd {
            type Output = QuadraticSurd;
            fn $method(self, rhs: QuadraticSurd) -> QuadraticSurd {
                (&self).$method(&rhs)
            }
        }
    )*};
}

forward_owned!(Add::add, Sub::sub, Mul::mul, Div::div);

impl Neg for QuadraticSurd {
    type Output = QuadraticSurd;

    fn neg(self) -> QuadraticSurd {
        QuadraticSurd {
            rational: -self.rational,
            radical: -self.radical,
            radicand: self.radicand,
        }
    }
}

impl ExactScalar for QuadraticSurd {
    fn from_rational(r: &Rational) -> Self {
        QuadraticSurd::from_rational(r.clone())
    }

    fn sign(&self) -> Ordering {
        let sa = self.rational.sign();
        let sb = self.radical.sign();
        if sb == Ordering::Equal {
            return sa;
        }
        if sa == Ordering::Equal || sa == sb {
            return sb;
        }
        // Opposite signs: compare a² with b²d.
        let a2 = &self.rational * &self.rational;
        let b2d = &self.radical * &self.radical * Rational::from_integer(self.radicand.clone());
        match a2.cmp(&b2d) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => Ordering::Equal,
        }
    }

    fn to_f64(&self) -> f64 {
        let d = ExactScalar::to_f64(&Rational::from_integer(self.radicand.clone()));
        ExactScalar::to_f64(&self.rational) + ExactScalar::to_f64(&self.radical) * d.sqrt()
    }
}

impl PartialOrd for QuadraticSurd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some((self - other).sign())
    }
}

impl fmt::Display for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.radical.is_zero() {
            return write!(f, "{}", format_rational(&self.rational));
        }
        let root = format!("sqrt({})", self.radicand);
        let radical = if self.radical.is_one() {
            root
        } else if self.radical == -Rational::one() {
            format!("-{root}")
        } else {
            format!("{}*{}", format_rational(&self.radical), root)
        };
        if self.rational.is_zero() {
            write!(f, "{radical}")
        } else if radical.starts_with('-') {
            write!(f, "{}{}", format_rational(&self.rational), radical)
        } else {
            write!(f, "{}+{}", format_rational(&self.rational), radical)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    fn s(a: Rational, b: Rational, d: i64) -> QuadraticSurd {
        QuadraticSurd::new(a, b, &int(d))
    }

    #[test]
    fn sqrt_two_squares_to_two() {
        let r = QuadraticSurd::sqrt_rational(&int(2)).unwrap();
        assert_eq!(&r * &r, QuadraticSurd::from(int(2)));
        assert!(!r.is_rational());
    }

    #[test]
    fn radicands_are_reduced() {
        // √8 = 2√2 and √(1/8) = (1/4)√2
        let r = QuadraticSurd::sqrt_rational(&int(8)).unwrap();
        assert_eq!(r.radicand(), &BigInt::from(2));
        assert_eq!(r.radical_part(), &int(2));
        let r = QuadraticSurd::sqrt_rational(&rat(1, 8)).unwrap();
        assert_eq!(r.radicand(), &BigInt::from(2));
        assert_eq!(r.radical_part(), &rat(1, 4));
    }

    #[test]
    fn sign_of_mixed_terms() {
        // -3/2 + √2 < 0, -3/2 - √2 < 0, -1 + √2 > 0
        assert_eq!(s(rat(-3, 2), int(1), 2).sign(), Ordering::Less);
        assert_eq!(s(rat(-3, 2), int(-1), 2).sign(), Ordering::Less);
        assert_eq!(s(int(-1), int(1), 2).sign(), Ordering::Greater);
    }

    #[test]
    fn division_and_inverse() {
        let x = s(int(1), int(1), 2);
        let inv = &QuadraticSurd::one() / &x;
        assert_eq!(inv, s(int(-1), int(1), 2));
        assert_eq!(&x * &inv, QuadraticSurd::one());
    }

    #[test]
    fn denesting_square_roots() {
        // 3 + 2√2 = (1 + √2)²
        let x = s(int(3), int(2), 2);
        assert_eq!(x.sqrt(), Some(s(int(1), int(1), 2)));
        // 1 + √2 has no square root in Q(√2)
        assert_eq!(s(int(1), int(1), 2).sqrt(), None);
        assert_eq!(QuadraticSurd::from(int(-1)).sqrt(), None);
    }

    #[test]
    fn compatible_radicands_combine() {
        let a = QuadraticSurd::sqrt_rational(&int(2)).unwrap();
        // √(1/2) = (1/2)√2
        let b = QuadraticSurd::sqrt_rational(&rat(1, 2)).unwrap();
        assert_eq!(&a * &b, QuadraticSurd::one());
        assert_eq!(&a - &(&b + &b), QuadraticSurd::zero());
    }

    #[test]
    fn different_extensions_compare_unequal() {
        let a = QuadraticSurd::sqrt_rational(&int(2)).unwrap();
        let b = QuadraticSurd::sqrt_rational(&int(3)).unwrap();
        assert_ne!(a, b);
    }

    #[test]
    fn display() {
        assert_eq!(s(rat(1, 2), int(-1), 2).to_string(), "1/2-sqrt(2)");
        assert_eq!(s(int(0), rat(3, 4), 5).to_string(), "3/4*sqrt(5)");
    }
}
