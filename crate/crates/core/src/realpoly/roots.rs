//! Exact real-root isolation (Sturm sequences) and floating-point complex roots.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::scalar::{common_denominator, ExactScalar};
use crate::{Rational, RealPoly};

/// A real root of a square-free polynomial.
#[derive(Clone, Debug, PartialEq)]
pub enum RealRoot {
    Exact(Rational),
    /// The unique root in the half-open interval `(lo, hi]`, `hi − lo ≤ 10⁻¹²`.
    Isolated { lo: Rational, hi: Rational },
}

impl RealRoot {
    pub fn approx(&self) -> f64 {
        match self {
            RealRoot::Exact(r) => r.to_f64(),
            RealRoot::Isolated { lo, hi } => ((lo + hi) / Rational::from_integer(2.into())).to_f64(),
        }
    }

    pub fn exact(&self) -> Option<&Rational> {
        match self {
            RealRoot::Exact(r) => Some(r),
            RealRoot::Isolated { .. } => None,
        }
    }
}

fn sturm_sequence(p: &RealPoly) -> Vec<RealPoly> {
    let mut seq = vec![p.clone(), p.derivative()];
    loop {
        let n = seq.len();
        if seq[n - 1].is_zero() {
            seq.pop();
            break;
        }
        let r = seq[n - 2].div_rem(&seq[n - 1]).1;
        if r.is_zero() {
            break;
        }
        seq.push(r.scale(&-Rational::one()));
    }
    seq
}

fn sign_changes(seq: &[RealPoly], x: &Rational) -> usize {
    let signs: Vec<bool> = seq
        .iter()
        .map(|p| p.eval(x))
        .filter(|v| !v.is_zero())
        .map(|v| v.is_positive())
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Roots in `(lo, hi]`.
fn count_roots(seq: &[RealPoly], lo: &Rational, hi: &Rational) -> usize {
    sign_changes(seq, lo).saturating_sub(sign_changes(seq, hi))
}

/// Bound strictly above the absolute value of every root.
fn cauchy_bound(p: &RealPoly) -> Rational {
    let lead = p.leading().expect("nonzero").abs();
    let max = p.coeffs()[..p.coeffs().len() - 1]
        .iter()
        .map(|c| c.abs() / &lead)
        .max()
        .unwrap_or_else(Rational::zero);
    max + Rational::from_integer(2.into())
}

/// Primitive integer polynomial proportional to `p`, as its leading coefficient.
fn integer_leading(p: &RealPoly) -> BigInt {
    let den = common_denominator(p.coeffs());
    let ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| (c * Rational::from_integer(den.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    (ints.last().expect("nonzero") / g).abs()
}

/// Isolates and refines every real root of a square-free polynomial.
///
/// Rational roots are detected exactly: a rational root `r` of a primitive
/// integer polynomial with leading coefficient `L` has `L·r ∈ ℤ`, so once
/// an isolating interval is narrower than `1/L` at most one candidate
/// remains to test.
pub fn isolate_real_roots(p: &RealPoly) -> Vec<RealRoot> {
    if p.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let seq = sturm_sequence(p);
    let bound = cauchy_bound(p);
    let two = Rational::from_integer(2.into());
    let mut pending = vec![(-bound.clone(), bound)];
    let mut isolated = Vec::new();
    while let Some((lo, hi)) = pending.pop() {
        match count_roots(&seq, &lo, &hi) {
            0 => {}
            1 => isolated.push((lo, hi)),
            _ => {
                let mid = (&lo + &hi) / &two;
                pending.push((mid.clone(), hi));
                pending.push((lo, mid));
            }
        }
    }
    isolated.sort_by(|a, b| a.0.cmp(&b.0));
    let lead = Rational::from_integer(integer_leading(p));
    let tol = Rational::new(BigInt::one(), BigInt::from(10u64).pow(12));
    isolated
        .into_iter()
        .map(|(mut lo, mut hi)| {
            for _ in 0..4000 {
                if p.eval(&hi).is_zero() {
                    return RealRoot::Exact(hi);
                }
                let width = &hi - &lo;
                if &width * &lead < Rational::one() {
                    // candidates m/L with L·lo < m ≤ L·hi
                    let m = (&hi * &lead).floor();
                    let candidate = m / &lead;
                    if candidate > lo && p.eval(&candidate).is_zero() {
                        return RealRoot::Exact(candidate);
                    }
                    if width <= tol {
                        break;
                    }
                }
                let mid = (&lo + &hi) / &two;
                if count_roots(&seq, &lo, &mid) == 1 {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            RealRoot::Isolated { lo, hi }
        })
        .collect()
}

/// All complex roots of `p` by Durand–Kerner iteration in `f64`.
pub fn complex_roots(p: &RealPoly) -> Vec<Complex64> {
    let Some(deg) = p.degree().filter(|&d| d > 0) else {
        return Vec::new();
    };
    let lead = p.leading().expect("nonzero").to_f64();
    let coeffs: Vec<f64> = p.coeffs().iter().map(|c| c.to_f64() / lead).collect();
    let eval = |z: Complex64| {
        coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    };
    let seed = Complex64::new(0.4, 0.9);
    let mut roots: Vec<Complex64> = (0..deg).map(|k| seed.powu(k as u32)).collect();
    for _ in 0..2000 {
        let mut delta = 0.0f64;
        for i in 0..deg {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..deg {
                if i != j {
                    denom *= roots[i] - roots[j];
                }
            }
            if denom.norm() == 0.0 {
                denom = Complex64::new(1e-12, 0.0);
            }
            let step = eval(roots[i]) / denom;
            roots[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-15 {
            break;
        }
    }
    roots
}
