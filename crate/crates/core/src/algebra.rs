//! Arithmetic and structure of the split quaternions.
//!
//! Basis `1, i, j, k` with `i² = −1`, `j² = k² = 1`, `ij = k = −ji`,
//! `jk = −i = −(−kj)`, `ki = j = −ik`. Every element is also `z1 + z2·j`
//! with `z1 = x0 + x1·i` and `z2 = x2 + x3·i`, and the norm form
//! `I_x = x̄x = x0² + x1² − x2² − x3² = |z1|² − |z2|²` is multiplicative.
//! Elements with `I_x = 0` are exactly the zero divisors.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{format_rational, int, Scalar};
use crate::surd::QuadraticSurd;
use crate::{Quat, Rational, SurdQuat};

/// `x0 + x1·i + x2·j + x3·k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct SplitQuaternion<T> {
    pub x0: T,
    pub x1: T,
    pub x2: T,
    pub x3: T,
}

/// Zero, nonzero zero divisor, or invertible.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AlgebraClass {
    Zero,
    ZeroDivisorNonzero,
    Invertible,
}

impl<T> SplitQuaternion<T> {
    pub const fn new(x0: T, x1: T, x2: T, x3: T) -> Self {
        SplitQuaternion { x0, x1, x2, x3 }
    }

    pub fn components(&self) -> [&T; 4] {
        [&self.x0, &self.x1, &self.x2, &self.x3]
    }

    pub fn from_array([x0, x1, x2, x3]: [T; 4]) -> Self {
        SplitQuaternion { x0, x1, x2, x3 }
    }

    pub fn into_array(self) -> [T; 4] {
        [self.x0, self.x1, self.x2, self.x3]
    }

    /// Applies `f` to each coefficient.
    pub fn map<U>(&self, mut f: impl FnMut(&T) -> U) -> SplitQuaternion<U> {
        SplitQuaternion::new(f(&self.x0), f(&self.x1), f(&self.x2), f(&self.x3))
    }
}

impl<T: Scalar> SplitQuaternion<T> {
    pub fn real(r: T) -> Self {
        SplitQuaternion::new(r, T::zero(), T::zero(), T::zero())
    }

    pub fn unit_i() -> Self {
        SplitQuaternion::new(T::zero(), T::one(), T::zero(), T::zero())
    }

    pub fn unit_j() -> Self {
        SplitQuaternion::new(T::zero(), T::zero(), T::one(), T::zero())
    }

    pub fn unit_k() -> Self {
        SplitQuaternion::new(T::zero(), T::zero(), T::zero(), T::one())
    }

    /// `1, i, j, k` in order.
    pub fn units() -> [Self; 4] {
        [Self::one(), Self::unit_i(), Self::unit_j(), Self::unit_k()]
    }

    pub fn conjugate(&self) -> Self {
        SplitQuaternion::new(
            self.x0.clone(),
            -self.x1.clone(),
            -self.x2.clone(),
            -self.x3.clone(),
        )
    }

    /// Real part `(x + x̄)/2 = x0`.
    pub fn re(&self) -> T {
        self.x0.clone()
    }

    /// Imaginary part `(x − x̄)/2`.
    pub fn im(&self) -> Self {
        SplitQuaternion::new(
            T::zero(),
            self.x1.clone(),
            self.x2.clone(),
            self.x3.clone(),
        )
    }

    pub fn is_real(&self) -> bool {
        self.x1.is_zero() && self.x2.is_zero() && self.x3.is_zero()
    }

    /// The norm form `I_x = x0² + x1² − x2² − x3²`.
    pub fn norm(&self) -> T {
        self.x0.clone() * self.x0.clone() + self.x1.clone() * self.x1.clone()
            - self.x2.clone() * self.x2.clone()
            - self.x3.clone() * self.x3.clone()
    }

    /// `Re(ā·b)`, the symmetric bilinear form polar to [`norm`](Self::norm).
    pub fn semi_inner(&self, other: &Self) -> T {
        self.x0.clone() * other.x0.clone() + self.x1.clone() * other.x1.clone()
            - self.x2.clone() * other.x2.clone()
            - self.x3.clone() * other.x3.clone()
    }

    pub fn classify(&self) -> AlgebraClass {
        if self.is_zero() {
            AlgebraClass::Zero
        } else if self.norm().is_zero() {
            AlgebraClass::ZeroDivisorNonzero
        } else {
            AlgebraClass::Invertible
        }
    }

    pub fn is_invertible(&self) -> bool {
        self.classify() == AlgebraClass::Invertible
    }

    /// `x̄ / I_x`.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::NotInvertible);
        }
        Ok(self.conjugate().scale_div(&n))
    }

    /// Moore–Penrose inverse.
    ///
    /// `0` for `a = 0`, `ā/I_a` when `a` is invertible, and
    /// `(z̄1 + z2·j) / (4|z1|²)` for a nonzero zero divisor `a = z1 + z2·j`.
    /// Always satisfies `a·a⁺·a = a` and `a⁺·a·a⁺ = a⁺`.
    pub fn mp_inverse(&self) -> Self {
        match self.classify() {
            AlgebraClass::Zero => Self::zero(),
            AlgebraClass::Invertible => self.conjugate().scale_div(&self.norm()),
            AlgebraClass::ZeroDivisorNonzero => {
                let z1_sq = self.x0.clone() * self.x0.clone() + self.x1.clone() * self.x1.clone();
                assert!(!z1_sq.is_zero(), "nonzero zero divisor with z1 = 0");
                let four = T::one() + T::one() + T::one() + T::one();
                SplitQuaternion::new(
                    self.x0.clone(),
                    -self.x1.clone(),
                    self.x2.clone(),
                    self.x3.clone(),
                )
                .scale_div(&(four * z1_sq))
            }
        }
    }

    /// `(z1, z2)` as `(re, im)` pairs with `x = z1 + z2·j`.
    pub fn complex_form(&self) -> ((T, T), (T, T)) {
        (
            (self.x0.clone(), self.x1.clone()),
            (self.x2.clone(), self.x3.clone()),
        )
    }

    pub fn from_complex_form((z1, z2): ((T, T), (T, T))) -> Self {
        SplitQuaternion::new(z1.0, z1.1, z2.0, z2.1)
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|c| c.clone() * s.clone())
    }

    pub fn scale_div(&self, s: &T) -> Self {
        self.map(|c| c.clone() / s.clone())
    }

    /// Matrix of `y ↦ self·y` acting on coefficient vectors.
    pub fn left_matrix(&self) -> [[T; 4]; 4] {
        let units = Self::units();
        let cols: Vec<[T; 4]> = units
            .iter()
            .map(|u| (self.clone() * u.clone()).into_array())
            .collect();
        std::array::from_fn(|r| std::array::from_fn(|c| cols[c][r].clone()))
    }

    /// Matrix of `y ↦ y·self` acting on coefficient vectors.
    pub fn right_matrix(&self) -> [[T; 4]; 4] {
        let units = Self::units();
        let cols: Vec<[T; 4]> = units
            .iter()
            .map(|u| (u.clone() * self.clone()).into_array())
            .collect();
        std::array::from_fn(|r| std::array::from_fn(|c| cols[c][r].clone()))
    }
}

impl<T: Scalar> Zero for SplitQuaternion<T> {
    fn zero() -> Self {
        SplitQuaternion::new(T::zero(), T::zero(), T::zero(), T::zero())
    }

    fn is_zero(&self) -> bool {
        self.x0.is_zero() && self.x1.is_zero() && self.x2.is_zero() && self.x3.is_zero()
    }
}

impl<T: Scalar> One for SplitQuaternion<T> {
    fn one() -> Self {
        SplitQuaternion::real(T::one())
    }
}

fn product<T: Scalar>(a: &SplitQuaternion<T>, b: &SplitQuaternion<T>) -> SplitQuaternion<T> {
    let (a0, a1, a2, a3) = (&a.x0, &a.x1, &a.x2, &a.x3);
    let (b0, b1, b2, b3) = (&b.x0, &b.x1, &b.x2, &b.x3);
    let m = |x: &T, y: &T| x.clone() * y.clone();
    SplitQuaternion::new(
        m(a0, b0) - m(a1, b1) + m(a2, b2) + m(a3, b3),
        m(a0, b1) + m(a1, b0) - m(a2, b3) + m(a3, b2),
        m(a0, b2) + m(a2, b0) - m(a1, b3) + m(a3, b1),
        m(a0, b3) + m(a3, b0) + m(a1, b2) - m(a2, b1),
    )
}

impl<T: Scalar> Mul for SplitQuaternion<T> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        product(&self, &rhs)
    }
}

impl<'a, T: Scalar> Mul<&'a SplitQuaternion<T>> for &'a SplitQuaternion<T> {
    type Output = SplitQuaternion<T>;

    fn mul(self, rhs: &'a SplitQuaternion<T>) -> SplitQuaternion<T> {
        product(self, rhs)
    }
}

impl<T: Scalar> Add for SplitQuaternion<T> {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        SplitQuaternion::new(
            self.x0 + rhs.x0,
            self.x1 + rhs.x1,
            self.x2 + rhs.x2,
            self.x3 + rhs.x3,
        )
    }
}

impl<'a, T: Scalar> Add<&'a SplitQuaternion<T>> for &'a SplitQuaternion<T> {
    type Output = SplitQuaternion<T>;

    fn add(self, rhs: &'a SplitQuaternion<T>) -> SplitQuaternion<T> {
        self.clone() + rhs.clone()
    }
}

impl<T: Scalar> Sub for SplitQuaternion<T> {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        SplitQuaternion::new(
            self.x0 - rhs.x0,
            self.x1 - rhs.x1,
            self.x2 - rhs.x2,
            self.x3 - rhs.x3,
        )
    }
}

impl<'a, T: Scalar> Sub<&'a SplitQuaternion<T>> for &'a SplitQuaternion<T> {
    type Output = SplitQuaternion<T>;

    fn sub(self, rhs: &'a SplitQuaternion<T>) -> SplitQuaternion<T> {
        self.clone() - rhs.clone()
    }
}

impl<T: Scalar> Neg for SplitQuaternion<T> {
    type Output = Self;

    fn neg(self) -> Self {
        SplitQuaternion::new(-self.x0, -self.x1, -self.x2, -self.x3)
    }
}

impl Quat {
    pub fn from_ints(x0: i64, x1: i64, x2: i64, x3: i64) -> Self {
        SplitQuaternion::new(int(x0), int(x1), int(x2), int(x3))
    }

    pub fn lift(&self) -> SurdQuat {
        self.map(|c| QuadraticSurd::from_rational(c.clone()))
    }
}

impl SurdQuat {
    /// The rational quaternion this equals, when every coefficient is rational.
    pub fn to_rational(&self) -> Option<Quat> {
        Some(SplitQuaternion::new(
            self.x0.to_rational()?,
            self.x1.to_rational()?,
            self.x2.to_rational()?,
            self.x3.to_rational()?,
        ))
    }
}

fn write_terms(f: &mut fmt::Formatter<'_>, terms: [(String, bool); 4]) -> fmt::Result {
    // (text, is_negative)
    let mut first = true;
    for (idx, (text, negative)) in terms.iter().enumerate() {
        if text.is_empty() {
            continue;
        }
        let unit = ["", "i", "j", "k"][idx];
        let magnitude = text.trim_start_matches('-');
        let body = if !unit.is_empty() && magnitude == "1" {
            unit.to_string()
        } else {
            format!("{magnitude}{unit}")
        };
        match (first, negative) {
            (true, true) => write!(f, "-{body}")?,
            (true, false) => write!(f, "{body}")?,
            (false, true) => write!(f, "-{body}")?,
            (false, false) => write!(f, "+{body}")?,
        }
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

/// Canonical form, e.g. `1+2i-3j+k`, `1/2+1/2k`, `0`. Parses back exactly.
impl fmt::Display for SplitQuaternion<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let term = |c: &Rational| {
            if c.is_zero() {
                (String::new(), false)
            } else {
                (format_rational(c), c < &Rational::zero())
            }
        };
        write_terms(
            f,
            [term(&self.x0), term(&self.x1), term(&self.x2), term(&self.x3)],
        )
    }
}

/// Rational coefficients print as for [`Quat`]; irrational ones in parentheses.
impl fmt::Display for SplitQuaternion<QuadraticSurd> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let term = |c: &QuadraticSurd| {
            if c.is_zero() {
                (String::new(), false)
            } else if let Some(r) = c.to_rational() {
                (format_rational(&r), r < Rational::zero())
            } else {
                (format!("({c})"), false)
            }
        };
        write_terms(
            f,
            [term(&self.x0), term(&self.x1), term(&self.x2), term(&self.x3)],
        )
    }
}

impl FromStr for SplitQuaternion<Rational> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        crate::cli::parse_quaternion(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn q(s: &str) -> Quat {
        s.parse().unwrap()
    }

    #[test]
    fn unit_table() {
        let [one, i, j, k] = Quat::units();
        let neg = |x: &Quat| -x.clone();
        let table = [
            [&one, &i, &j, &k],
            [&i, &neg(&one), &k, &neg(&j)],
            [&j, &neg(&k), &one, &neg(&i)],
            [&k, &j, &i, &one],
        ];
        let units = Quat::units();
        for (r, row) in table.iter().enumerate() {
            for (c, expected) in row.iter().enumerate() {
                assert_eq!(&(&units[r] * &units[c]), *expected, "row {r} col {c}");
            }
        }
    }

    #[test]
    fn products_from_examples() {
        assert_eq!(&q("j") * &q("k"), q("-i"));
        assert_eq!(&q("1+k") * &q("i-k"), q("-1+i+j-k"));
        let x = q("3-2i+1/2j+k");
        assert_eq!(&Quat::one() * &x, x);
    }

    #[test]
    fn parts() {
        assert_eq!(q("1+i+j+k").conjugate(), q("1-i-j-k"));
        assert_eq!(q("j+k").re(), rat(0, 1));
        assert_eq!(q("1+2i").im(), q("2i"));
        let x = q("2-i+3j-k");
        assert_eq!(Quat::real(x.re()) + x.im(), x);
    }

    #[test]
    fn norms() {
        assert_eq!(q("1+k").norm(), rat(0, 1));
        assert_eq!(q("j").norm(), rat(-1, 1));
        assert_eq!(q("-3/8+1/8i+1/8j+1/8k").norm(), rat(1, 8));
        let x = q("1-2i+3j+4k");
        assert_eq!(&x.conjugate() * &x, Quat::real(x.norm()));
    }

    #[test]
    fn semi_inner_values() {
        assert_eq!(q("1+k").semi_inner(&q("-1-i+j+k")), rat(-2, 1));
        assert_eq!(q("1").semi_inner(&q("-i-j")), rat(0, 1));
        let a = q("2+i-j+3k");
        assert_eq!(a.semi_inner(&a), a.norm());
    }

    #[test]
    fn classification_and_inverses() {
        assert_eq!(q("1+k").classify(), AlgebraClass::ZeroDivisorNonzero);
        assert_eq!(q("0").classify(), AlgebraClass::Zero);
        assert_eq!(q("j").inverse().unwrap(), q("j"));
        assert_eq!(q("2").inverse().unwrap(), q("1/2"));
        assert_eq!(q("1+k").inverse(), Err(Error::NotInvertible));
        let x = q("3+i-j+k");
        assert_eq!(&x * &x.inverse().unwrap(), Quat::one());
    }

    #[test]
    fn moore_penrose_branches() {
        assert_eq!(q("0").mp_inverse(), q("0"));
        assert_eq!(q("1+i").mp_inverse(), q("1/2-1/2i"));
        let a = q("1+k");
        let ap = a.mp_inverse();
        assert_eq!(ap, q("1/4+1/4k"));
        assert_eq!(&(&a * &ap) * &a, a);
        assert_eq!(&(&ap * &a) * &ap, ap);
    }

    #[test]
    fn complex_form_round_trip() {
        let x = q("1-2i+3j-4k");
        assert_eq!(Quat::from_complex_form(x.complex_form()), x);
        // z2·j with z2 = x2 + x3 i
        let ((_, _), (z2r, z2i)) = x.complex_form();
        assert_eq!(
            &Quat::new(z2r, z2i, rat(0, 1), rat(0, 1)) * &q("j"),
            q("3j-4k")
        );
    }

    #[test]
    fn left_matrix_matches_product() {
        let a = q("1-2i+1/3j+k");
        let y = q("2+i-j+5k");
        let m = a.left_matrix();
        let yv = y.clone().into_array();
        let prod: Vec<Rational> = (0..4)
            .map(|r| (0..4).map(|c| &m[r][c] * &yv[c]).sum())
            .collect();
        assert_eq!(prod, (&a * &y).into_array().to_vec());
        let m = a.right_matrix();
        let prod: Vec<Rational> = (0..4)
            .map(|r| (0..4).map(|c| &m[r][c] * &yv[c]).sum())
            .collect();
        assert_eq!(prod, (&y * &a).into_array().to_vec());
    }

    #[test]
    fn float_scalars_work_too() {
        let a = SplitQuaternion::new(1.0, 0.0, 0.0, 1.0);
        let b = SplitQuaternion::new(0.0, 1.0, 0.0, -1.0);
        assert_eq!(a * b, SplitQuaternion::new(-1.0, 1.0, 1.0, -1.0));
        assert_eq!(SplitQuaternion::new(0.0f32, 0.0, 1.0, 0.0).norm(), -1.0);
    }

    #[test]
    fn display_round_trip_examples() {
        for s in ["1+2i-3j+k", "-3-i-j-k", "1/2+1/2k", "0", "-i", "5/3j"] {
            assert_eq!(q(s).to_string(), s);
        }
    }
}
