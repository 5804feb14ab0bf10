//! Monic real quadratic divisors `x² − T·x + N` of a rational polynomial.

use std::cmp::Ordering;
use std::fmt;

use num_complex::Complex64;
use num_traits::{One, Signed};

use super::roots::{complex_roots, isolate_real_roots};
use super::Poly;
use crate::error::{Error, Result};
use crate::scalar::{format_rational, rational_sqrt, snap, ExactScalar};
use crate::surd::QuadraticSurd;
use crate::{Rational, RealPoly};

const SNAP_DEN: u64 = 1_000_000;
const SNAP_TOL: f64 = 1e-9;

/// A divisor `x² − T·x + N`.
#[derive(Clone, Debug, PartialEq)]
pub enum QuadDivisor {
    Exact { t: Rational, n: Rational },
    /// `T` and `N` in a common real quadratic field, verified by exact division.
    Surd { t: QuadraticSurd, n: QuadraticSurd },
    /// Irrational coefficients, known to double precision only.
    Approximate { t: f64, n: f64 },
}

impl QuadDivisor {
    /// Whether `T` and `N` are known exactly (rational or surd).
    pub fn is_exact(&self) -> bool {
        !matches!(self, QuadDivisor::Approximate { .. })
    }

    /// `(T, N)` when both are rational.
    pub fn exact(&self) -> Option<(&Rational, &Rational)> {
        match self {
            QuadDivisor::Exact { t, n } => Some((t, n)),
            _ => None,
        }
    }

    /// `(T, N)` as surds, for exact divisors.
    pub fn surd(&self) -> Option<(QuadraticSurd, QuadraticSurd)> {
        match self {
            QuadDivisor::Exact { t, n } => {
                Some((QuadraticSurd::from_rational(t.clone()), QuadraticSurd::from_rational(n.clone())))
            }
            QuadDivisor::Surd { t, n } => Some((t.clone(), n.clone())),
            QuadDivisor::Approximate { .. } => None,
        }
    }

    pub fn approx(&self) -> (f64, f64) {
        match self {
            QuadDivisor::Exact { t, n } => (t.to_f64(), n.to_f64()),
            QuadDivisor::Surd { t, n } => (t.to_f64(), n.to_f64()),
            QuadDivisor::Approximate { t, n } => (*t, *n),
        }
    }
}

impl fmt::Display for QuadDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuadDivisor::Exact { t, n } => {
                write!(f, "(T={}, N={})", format_rational(t), format_rational(n))
            }
            QuadDivisor::Surd { t, n } => write!(f, "(T={t}, N={n})"),
            QuadDivisor::Approximate { t, n } => write!(f, "(T~{t:.12}, N~{n:.12})"),
        }
    }
}

/// Square-free factors `(f, m)` with `p = lead · Π f^m` (Yun's algorithm).
fn square_free_decomposition(p: &RealPoly) -> Vec<(RealPoly, usize)> {
    let dp = p.derivative();
    let g = p.gcd(&dp);
    let mut c = p.div_rem(&g).0.monic();
    let mut d = dp.div_rem(&g).0.scale(&(Rational::one() / p.leading().unwrap().clone()));
    d = d.sub(&c.derivative());
    let mut out = Vec::new();
    let mut m = 1;
    while c.degree().unwrap_or(0) > 0 {
        let a = c.gcd(&d);
        if a.degree().unwrap_or(0) > 0 {
            out.push((a.clone(), m));
        }
        c = c.div_rem(&a).0;
        d = d.div_rem(&a).0.sub(&c.derivative());
        m += 1;
    }
    out
}

/// Splits a monic rational quartic without rational roots into two rational
/// quadratics `(T, N)` through its resolvent cubic, if possible.
fn split_quartic(f: &RealPoly) -> Option<[(Rational, Rational); 2]> {
    let two = Rational::from_integer(2.into());
    let four = Rational::from_integer(4.into());
    // x = y − s with s = a3/4
    let s = f.coeff(3) / &four;
    let g = f.compose_linear(&Rational::one(), &-s.clone());
    let (p, q, r) = (g.coeff(2), g.coeff(1), g.coeff(0));
    let resolvent = Poly::new(vec![
        -(&q * &q),
        &p * &p - &four * &r,
        &two * &p,
        Rational::one(),
    ]);
    let sqf = resolvent.div_rem(&resolvent.gcd(&resolvent.derivative())).0;
    for root in isolate_real_roots(&sqf) {
        let Some(u2) = root.exact() else { continue };
        if !u2.is_positive() {
            continue;
        }
        let Some(u) = rational_sqrt(u2) else { continue };
        let v = (&p + u2 - &q / &u) / &two;
        let w = (&p + u2 + &q / &u) / &two;
        // y² + u·y + v and y² − u·y + w, shifted back to x
        let factor = |u: Rational, v: Rational| {
            let t = -(&two * &s + &u);
            let n = &s * &s + &u * &s + v;
            (t, n)
        };
        let pair = [factor(u.clone(), v), factor(-u, w)];
        let product = RealPoly::monic_quadratic(&pair[0].0, &pair[0].1)
            .mul(&RealPoly::monic_quadratic(&pair[1].0, &pair[1].1));
        if product == *f {
            return Some(pair);
        }
    }
    None
}

#[derive(Clone, Debug)]
enum Origin {
    Rational(Rational),
    /// Root of the irreducible rational factor `x² − T·x + N` with this id.
    Quadratic { id: usize, t: Rational, n: Rational },
    Numeric,
}

#[derive(Clone, Debug)]
struct Root {
    value: Complex64,
    origin: Origin,
    multiplicity: usize,
}

fn quadratic_roots(t: f64, n: f64) -> [Complex64; 2] {
    let disc = Complex64::new(t * t - 4.0 * n, 0.0).sqrt();
    [(t + disc) / 2.0, (t - disc) / 2.0]
}

/// Roots of a square-free factor whose rational roots have been removed and
/// that has no rational quadratic split: real ones from Sturm isolation,
/// complex ones from Durand–Kerner paired as conjugates.
fn numeric_roots(f: &RealPoly) -> Vec<Complex64> {
    let real: Vec<Complex64> = isolate_real_roots(f)
        .iter()
        .map(|r| Complex64::new(r.approx(), 0.0))
        .collect();
    let deg = f.degree().unwrap_or(0);
    let mut complex: Vec<Complex64> = complex_roots(f)
        .into_iter()
        .filter(|z| z.im > 0.0)
        .collect();
    complex.sort_by(|a, b| b.im.partial_cmp(&a.im).unwrap_or(Ordering::Equal));
    complex.truncate((deg - real.len()) / 2);
    let mut out = real;
    for z in complex {
        out.push(z);
        out.push(z.conj());
    }
    out
}

fn collect_roots(p: &RealPoly) -> Vec<Root> {
    let mut roots = Vec::new();
    let mut next_id = 0;
    let mut push_quadratic = |roots: &mut Vec<Root>, t: Rational, n: Rational, m: usize| {
        for value in quadratic_roots(t.to_f64(), n.to_f64()) {
            roots.push(Root {
                value,
                origin: Origin::Quadratic { id: next_id, t: t.clone(), n: n.clone() },
                multiplicity: m,
            });
        }
        next_id += 1;
    };
    for (factor, m) in square_free_decomposition(p) {
        let mut rest = factor.monic();
        for r in isolate_real_roots(&factor) {
            if let Some(r) = r.exact() {
                roots.push(Root {
                    value: Complex64::new(r.to_f64(), 0.0),
                    origin: Origin::Rational(r.clone()),
                    multiplicity: m,
                });
                rest = rest.div_rem(&Poly::linear_root(r.clone())).0;
            }
        }
        match rest.degree().unwrap_or(0) {
            0 => {}
            2 => push_quadratic(&mut roots, -rest.coeff(1), rest.coeff(0), m),
            4 if split_quartic(&rest).is_some() => {
                for (t, n) in split_quartic(&rest).unwrap() {
                    push_quadratic(&mut roots, t, n, m);
                }
            }
            _ => {
                for value in numeric_roots(&rest) {
                    roots.push(Root { value, origin: Origin::Numeric, multiplicity: m });
                }
            }
        }
    }
    roots
}

fn is_real(z: Complex64) -> bool {
    z.im.abs() <= 1e-9 * (1.0 + z.re.abs())
}

/// The pair `{a, b}` as a divisor, if `(x − a)(x − b)` is real.
fn pair_divisor(a: &Root, b: &Root, same: bool, p: &RealPoly) -> Option<QuadDivisor> {
    match (&a.origin, &b.origin) {
        _ if same && !is_real(a.value) => return None,
        (Origin::Rational(r), Origin::Rational(s)) => {
            return Some(QuadDivisor::Exact { t: r + s, n: r * s });
        }
        (Origin::Quadratic { id: i, t, n }, Origin::Quadratic { id: j, .. }) if i == j && !same => {
            return Some(QuadDivisor::Exact { t: t.clone(), n: n.clone() });
        }
        _ => {}
    }
    let conjugates = (a.value - b.value.conj()).norm() <= 1e-9 * (1.0 + a.value.norm());
    if !(is_real(a.value) && is_real(b.value)) && !conjugates {
        return None;
    }
    let t = (a.value + b.value).re;
    let n = (a.value * b.value).re;
    if let (Some(te), Some(ne)) = (snap(t, SNAP_DEN, SNAP_TOL), snap(n, SNAP_DEN, SNAP_TOL)) {
        if RealPoly::monic_quadratic(&te, &ne).divides(p) {
            return Some(QuadDivisor::Exact { t: te, n: ne });
        }
    }
    Some(QuadDivisor::Approximate { t, n })
}

/// The root of `y² − sum·y + product` closest to `value`, when `sum` and
/// `product` snap to rationals and the discriminant is non-negative.
fn snapped_root(sum: f64, product: f64, value: f64) -> Option<QuadraticSurd> {
    let s = snap(sum, SNAP_DEN, SNAP_TOL)?;
    let p = snap(product, SNAP_DEN, SNAP_TOL)?;
    let disc = &s * &s - Rational::from_integer(4.into()) * &p;
    let root = QuadraticSurd::sqrt_rational(&disc)?;
    let half = QuadraticSurd::from_rational(Rational::new(1.into(), 2.into()));
    let s = QuadraticSurd::from_rational(s);
    let candidates = [&(&s + &root) * &half, &(&s - &root) * &half];
    let [x, y] = [0, 1].map(|i| (candidates[i].to_f64() - value).abs());
    let (best, err) = if x <= y { (&candidates[0], x) } else { (&candidates[1], y) };
    (err <= 1e-7 * (1.0 + value.abs())).then(|| best.clone())
}

fn same_field(a: &QuadraticSurd, b: &QuadraticSurd) -> bool {
    a.is_rational()
        || b.is_rational()
        || rational_sqrt(&Rational::from_integer(a.radicand() * b.radicand())).is_some()
}

/// Lifts the approximate divisor `d` to `Q(√D)` assuming `e` is its
/// conjugate, and checks the lift divides `p` exactly.
fn conjugate_lift(d: (f64, f64), e: (f64, f64), p: &RealPoly) -> Option<QuadDivisor> {
    let t = snapped_root(d.0 + e.0, d.0 * e.0, d.0)?;
    let n = snapped_root(d.1 + e.1, d.1 * e.1, d.1)?;
    if (t.is_rational() && n.is_rational()) || !same_field(&t, &n) {
        return None;
    }
    let lifted = Poly::new(p.coeffs().iter().cloned().map(QuadraticSurd::from_rational).collect());
    let divisor = Poly::new(vec![n.clone(), -t.clone(), QuadraticSurd::one()]);
    lifted.div_rem(&divisor).1.is_zero().then_some(QuadDivisor::Surd { t, n })
}

/// Every monic real quadratic `x² − T·x + N` dividing `p`, deduplicated.
/// Exact divisors come first, ordered by `(T, N)`.
pub fn quadratic_divisors(p: &RealPoly) -> Result<Vec<QuadDivisor>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.degree().unwrap_or(0) < 2 {
        return Ok(Vec::new());
    }
    let roots = collect_roots(p);
    let mut exact: Vec<(Rational, Rational)> = Vec::new();
    let mut approximate: Vec<(f64, f64)> = Vec::new();
    for i in 0..roots.len() {
        for j in i..roots.len() {
            if i == j && roots[i].multiplicity < 2 {
                continue;
            }
            match pair_divisor(&roots[i], &roots[j], i == j, p) {
                Some(QuadDivisor::Exact { t, n }) => {
                    if !exact.contains(&(t.clone(), n.clone())) {
                        exact.push((t, n));
                    }
                }
                Some(QuadDivisor::Approximate { t, n }) => {
                    let seen = approximate
                        .iter()
                        .any(|&(t2, n2)| (t - t2).abs() < 1e-9 && (n - n2).abs() < 1e-9);
                    if !seen {
                        approximate.push((t, n));
                    }
                }
                Some(QuadDivisor::Surd { .. }) | None => {}
            }
        }
    }
    exact.sort();
    approximate.sort_by(|a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal));
    let mut surd: Vec<QuadDivisor> = Vec::new();
    let mut numeric: Vec<QuadDivisor> = Vec::new();
    for (i, &d) in approximate.iter().enumerate() {
        let lift = approximate
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .find_map(|(_, &e)| conjugate_lift(d, e, p));
        match lift {
            Some(lift) if !surd.contains(&lift) => surd.push(lift),
            Some(_) => {}
            None => numeric.push(QuadDivisor::Approximate { t: d.0, n: d.1 }),
        }
    }
    Ok(exact
        .into_iter()
        .map(|(t, n)| QuadDivisor::Exact { t, n })
        .chain(surd)
        .chain(numeric)
        .collect())
}
