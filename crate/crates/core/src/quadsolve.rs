//! The unilateral quadratic `a·x² + b·x + c = 0`.
//!
//! Solutions are sorted by quasi-similarity class: for every monic real
//! quadratic divisor `x² − T·x + N` of the companion polynomial, the solutions
//! in the class `{2·Re x = T, I_x = N}` are exactly the members of that class
//! solving the linear equation `(T·a + b)·x = a·N − c`. When the companion
//! polynomial vanishes identically and `a` is a zero divisor, the equation is
//! rewritten as `(x − r)² ∈ w + ker(a)` and solved by elimination.

use std::cmp::Ordering;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::algebra::AlgebraClass;
use crate::error::{Error, Result};
use crate::linalg::{rank, solve_affine};
use crate::linsolve::{kernel, solve_linear};
use crate::quadric::{coords, Quadric};
use crate::realpoly::{companion, quadratic_divisors, QuadDivisor};
use crate::solsets::{AffineFamily, Fibration, QuasiClass, SolutionSet};
use crate::scalar::ExactScalar;
use crate::surd::QuadraticSurd;
use crate::{Quat, Rational, RealPoly, SurdQuat};

/// How one class `(T, N)` contributed to the solution set.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassTrace {
    pub divisor: QuadDivisor,
    /// `(T·a + b, a·N − c)`, for exact divisors.
    pub linear: Option<(Quat, Quat)>,
    pub linear_set: Option<SolutionSet>,
    pub intersection: SolutionSet,
}

/// Candidates `t = x0²` for `x² = w` with `w` not real.
#[derive(Clone, Debug, PartialEq)]
pub struct SqrtTrace {
    pub w: Quat,
    pub norm: Rational,
    pub candidates: Vec<QuadraticSurd>,
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct DegenerateTrace {
    pub beta: Option<Quat>,
    pub gamma: Option<Quat>,
    pub shift: Option<Rational>,
    pub failure: Option<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum QuadraticPath {
    /// `a = 0`: the equation is linear.
    Linear,
    /// After normalization `x² = w`.
    SquareRoot(SqrtTrace),
    Divisors(Vec<ClassTrace>),
    Degenerate(DegenerateTrace),
}

/// A solve together with the intermediate objects that produced it.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadraticReport {
    /// `(a, b, c)` after dividing by an invertible leading coefficient.
    pub normalized: (Quat, Quat, Quat),
    pub companion: RealPoly,
    pub path: QuadraticPath,
    pub result: SolutionSet,
}

pub fn solve_quadratic(a: &Quat, b: &Quat, c: &Quat) -> SolutionSet {
    solve_quadratic_traced(a, b, c).result
}

pub fn solve_quadratic_traced(a: &Quat, b: &Quat, c: &Quat) -> QuadraticReport {
    if a.is_zero() {
        return QuadraticReport {
            normalized: (a.clone(), b.clone(), c.clone()),
            companion: companion(a, b, c),
            path: QuadraticPath::Linear,
            result: solve_linear(b, &-c.clone()),
        };
    }
    let (a, b, c) = match a.inverse() {
        Ok(inv) => (Quat::one(), &inv * b, &inv * c),
        Err(_) => (a.clone(), b.clone(), c.clone()),
    };
    let comp = companion(&a, &b, &c);
    let (path, result) = if a.is_one() && b.is_zero() {
        let (set, trace) = sqrt_set_traced(&-c.clone());
        (QuadraticPath::SquareRoot(trace), set)
    } else if comp.is_zero() {
        let (set, trace) = degenerate(&a, &b, &c);
        (QuadraticPath::Degenerate(trace), set)
    } else {
        let divisors = quadratic_divisors(&comp).expect("nonzero companion");
        let classes: Vec<ClassTrace> = divisors
            .into_par_iter()
            .map(|divisor| class_branch(&a, &b, &c, divisor))
            .collect();
        let result = SolutionSet::union(classes.iter().map(|t| t.intersection.clone()));
        (QuadraticPath::Divisors(classes), result)
    };
    QuadraticReport {
        normalized: (a, b, c),
        companion: comp,
        path,
        result,
    }
}

/// Floating-point look at a class whose `(T, N)` is irrational: the member
/// of the class solving the linear equation, when that equation has a unique
/// solution.
fn numeric_class_member(a: &Quat, b: &Quat, c: &Quat, t: f64, n: f64) -> String {
    let [a, b, c] = [a, b, c].map(|q| q.map(ExactScalar::to_f64));
    let lhs = &a.scale(&t) + &b;
    let rhs = &a.scale(&n) - &c;
    let norm = lhs.norm();
    let size = lhs.components().iter().map(|x| x.abs()).fold(0.0, f64::max);
    if norm.abs() <= 1e-9 * size * size.max(1.0) {
        return "the linear equation is numerically singular".into();
    }
    let x = &lhs.conjugate().scale_div(&norm) * &rhs;
    let tol = 1e-7;
    if (2.0 * x.x0 - t).abs() > tol * (1.0 + t.abs()) || (x.norm() - n).abs() > tol * (1.0 + n.abs()) {
        return "numerically no member".into();
    }
    let mut text = format!("numerical member x ≈ {:.9}", x.x0);
    for (value, unit) in [(x.x1, 'i'), (x.x2, 'j'), (x.x3, 'k')] {
        let sign = if value < 0.0 { '-' } else { '+' };
        text.push_str(&format!(" {sign} {:.9}{unit}", value.abs()));
    }
    text
}

/// The class `(T, N)` over `Q(√D)`. An invertible `T·a + b` pins down a
/// single candidate; the singular case is left unresolved.
fn surd_class_member(a: &Quat, b: &Quat, c: &Quat, t: &QuadraticSurd, n: &QuadraticSurd) -> SolutionSet {
    let (a, b, c) = (a.lift(), b.lift(), c.lift());
    let lhs = &a.scale(t) + &b;
    let rhs = &a.scale(n) - &c;
    match lhs.inverse() {
        Ok(inv) => {
            let x = &inv * &rhs;
            let two = QuadraticSurd::from_rational(Rational::from_integer(2.into()));
            if &x.re() * &two == *t && x.norm() == *n {
                SolutionSet::points([x])
            } else {
                SolutionSet::Empty
            }
        }
        Err(_) if lhs.is_zero() && !rhs.is_zero() => SolutionSet::Empty,
        Err(_) => SolutionSet::Unresolved(format!(
            "class of the divisor x^2 - ({t})x + ({n}) meets a singular linear equation over a quadratic field"
        )),
    }
}

fn class_branch(a: &Quat, b: &Quat, c: &Quat, divisor: QuadDivisor) -> ClassTrace {
    match &divisor {
        QuadDivisor::Exact { t, n } => {
            let lhs = &a.scale(t) + b;
            let rhs = &a.scale(n) - c;
            let linear_set = solve_linear(&lhs, &rhs);
            let intersection = linear_set.intersect_class(&QuasiClass::new(t.clone(), n.clone()));
            ClassTrace {
                divisor,
                linear: Some((lhs, rhs)),
                linear_set: Some(linear_set),
                intersection,
            }
        }
        QuadDivisor::Surd { t, n } => ClassTrace {
            intersection: surd_class_member(a, b, c, t, n),
            divisor,
            linear: None,
            linear_set: None,
        },
        QuadDivisor::Approximate { t, n } => {
            let intersection = SolutionSet::Unresolved(format!(
                "class of the divisor x^2 - ({t:.12})x + ({n:.12}) has irrational T, N; {}",
                numeric_class_member(a, b, c, *t, *n)
            ));
            ClassTrace {
                divisor,
                linear: None,
                linear_set: None,
                intersection,
            }
        }
    }
}

/// `{x : x² = w}`.
pub fn sqrt_set(w: &Quat) -> SolutionSet {
    sqrt_set_traced(w).0
}

pub fn sqrt_set_traced(w: &Quat) -> (SolutionSet, SqrtTrace) {
    let norm = w.norm();
    let mut trace = SqrtTrace {
        w: w.clone(),
        norm: norm.clone(),
        candidates: Vec::new(),
    };
    let w0 = w.re();
    if w.is_real() {
        // real part: ±√w0; purely imaginary part: x0 = 0, −I_X = w0
        let mut points = Vec::new();
        if let Some(root) = QuadraticSurd::sqrt_rational(&w0) {
            points.push(SurdQuat::real(root.clone()));
            points.push(SurdQuat::real(-root));
        }
        let diagonal = [0, 1, -1, -1].map(|s| Rational::from_integer(s.into()));
        let quad = (0..4)
            .map(|i| (0..4).map(|j| if i == j { diagonal[i].clone() } else { Rational::zero() }).collect())
            .collect();
        let hyperboloid = Quadric::from_parts(quad, vec![Rational::zero(); 4], w0);
        let x0 = Quadric::variable(4, 0);
        let set = SolutionSet::union([
            SolutionSet::points(points),
            SolutionSet::variety(vec![x0, hyperboloid]),
        ]);
        return (set, trace);
    }
    if norm.is_negative() {
        return (SolutionSet::Empty, trace);
    }
    let root = QuadraticSurd::sqrt_rational(&norm).expect("non-negative");
    let half = QuadraticSurd::from_rational(Rational::new(1.into(), 2.into()));
    let w0s = QuadraticSurd::from_rational(w0);
    let mut ts = vec![&(&w0s + &root) * &half];
    if !norm.is_zero() {
        ts.push(&(&w0s - &root) * &half);
    }
    trace.candidates = ts.clone();
    let im = w.im().lift();
    let mut points = Vec::new();
    let mut unresolved = Vec::new();
    for t in ts {
        if t.sign() != Ordering::Greater {
            continue;
        }
        let Some(s) = t.sqrt() else {
            unresolved.push(SolutionSet::Unresolved(format!(
                "x0 = ±√({t}) needs a nested radical"
            )));
            continue;
        };
        for x0 in [s.clone(), -s] {
            let two_x0 = &x0 + &x0;
            let x = &SurdQuat::real(x0) + &im.scale_div(&two_x0);
            points.push(x);
        }
    }
    let set = SolutionSet::union(std::iter::once(SolutionSet::points(points)).chain(unresolved));
    (set, trace)
}

/// Solutions of `(x − r)² ∈ W` for an affine set `W` (a point or an
/// unconstrained family).
///
/// With `y = x − r` the four components of `y² = w + Σ sₖ·uₖ` are linear in
/// the parameters `s`; they are eliminated through the first set of
/// components (in the order x0, x1, x2, x3) on which the directions `uₖ` are
/// independent, and the remaining components give quadrics in `x`.
pub fn solve_square_in_affine(r: &Rational, w: &SolutionSet) -> Result<SolutionSet> {
    let shift = Quat::real(r.clone());
    let family = match w {
        SolutionSet::FinitePoints(ps) if ps.len() == 1 => {
            let point = ps[0].to_rational().ok_or_else(|| {
                Error::DegeneratePreconditionFailed("W must have rational coordinates".into())
            })?;
            return Ok(sqrt_set(&point).affine_image(&shift, &Quat::one()));
        }
        SolutionSet::All => return Ok(SolutionSet::All),
        SolutionSet::Affine(f) if f.constraints().is_empty() => f,
        _ => {
            return Err(Error::DegeneratePreconditionFailed(
                "W must be a point or an unconstrained affine family".into(),
            ))
        }
    };
    let m = family.dim();
    let directions: Vec<Vec<Rational>> = family.basis().iter().map(coords).collect();
    let chosen = component_subsets(m)
        .into_iter()
        .find(|rows| {
            let sub: Vec<Vec<Rational>> = rows
                .iter()
                .map(|&c| directions.iter().map(|d| d[c].clone()).collect())
                .collect();
            rank(&sub, m) == m
        })
        .expect("independent directions have a nonsingular component subset");
    let square = Quadric::square_components();
    let base = coords(family.base());
    // residual_c(y) = (y²)_c − w_c, so that residual = U·s on every component
    let residual: Vec<Quadric> = (0..4)
        .map(|c| square[c].sub(&Quadric::constant(4, base[c].clone())))
        .collect();
    // s = U_S⁻¹ · residual_S, entrywise as quadrics
    let u_s: Vec<Vec<Rational>> = chosen
        .iter()
        .map(|&c| directions.iter().map(|d| d[c].clone()).collect())
        .collect();
    let params: Vec<Quadric> = (0..m)
        .map(|k| {
            let mut e = vec![Rational::zero(); m];
            e[k] = Rational::one();
            // row k of U_S⁻¹ solves U_Sᵀ·v = e_k
            let transpose: Vec<Vec<Rational>> = (0..m)
                .map(|i| (0..m).map(|j| u_s[j][i].clone()).collect())
                .collect();
            let (row, _) = solve_affine(&transpose, &e, m).expect("nonsingular");
            chosen
                .iter()
                .zip(&row)
                .fold(Quadric::zero(4), |acc, (&c, coef)| acc.add(&residual[c].scale(coef)))
        })
        .collect();
    let y_equations: Vec<Quadric> = (0..4)
        .filter(|c| !chosen.contains(c))
        .map(|c| {
            params
                .iter()
                .zip(&directions)
                .fold(residual[c].clone(), |acc, (s, d)| acc.sub(&s.scale(&d[c])))
        })
        .collect();
    // y = x − r
    let origin = coords(&-shift.clone());
    let identity: Vec<Vec<Rational>> = (0..4)
        .map(|i| (0..4).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
        .collect();
    let equations = y_equations
        .iter()
        .map(|q| q.pullback(&origin, &identity))
        .collect();
    let fibration = annihilator(family.basis()).map(|a| Fibration {
        aw: &a * family.base(),
        a,
        shift,
        image: (Quat::zero(), Quat::one()),
    });
    Ok(SolutionSet::variety_with(equations, fibration))
}

/// Subsets of `{0, 1, 2, 3}` of size `m`, in lexicographic order.
fn component_subsets(m: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, m: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == m {
            out.push(current.clone());
            return;
        }
        for c in start..4 {
            current.push(c);
            go(c + 1, m, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    go(0, m, &mut Vec::new(), &mut out);
    out
}

/// A nonzero `a` with `a·u = 0` for every `u` in `span`, whose kernel is
/// exactly that span.
fn annihilator(span: &[Quat]) -> Option<Quat> {
    let rows: Vec<Vec<Rational>> = span
        .iter()
        .flat_map(|u| u.right_matrix().into_iter().map(|r| r.to_vec()))
        .collect();
    let zeros = vec![Rational::zero(); rows.len()];
    let (_, null) = solve_affine(&rows, &zeros, 4)?;
    null.into_iter()
        .map(|v| Quat::new(v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone()))
        .find(|a| {
            let k = kernel(a);
            span.iter().all(|u| k.contains(u).unwrap_or(false))
                && matches!(&k, SolutionSet::Affine(f) if f.dim() == span.len())
        })
}

/// The identically-vanishing companion case for a zero-divisor `a`: requires
/// `b = a·β` with real `β` and `c = a·γ`.
fn degenerate(a: &Quat, b: &Quat, c: &Quat) -> (SolutionSet, DegenerateTrace) {
    let mut trace = DegenerateTrace::default();
    let fail = |mut trace: DegenerateTrace, why: String| {
        trace.failure = Some(why.clone());
        (SolutionSet::Unresolved(why), trace)
    };
    if a.classify() != AlgebraClass::ZeroDivisorNonzero {
        return fail(trace, "vanishing companion polynomial with invertible leading coefficient".into());
    }
    let real_axis: Vec<Quadric> = (1..4).map(|i| Quadric::variable(4, i)).collect();
    let beta = match solve_linear(a, b).impose(&real_axis) {
        SolutionSet::FinitePoints(ps) => ps[0].to_rational(),
        _ => None,
    };
    let Some(beta) = beta else {
        return fail(trace, "no real β with a·β = b".into());
    };
    trace.beta = Some(beta.clone());
    let gamma = match solve_linear(a, c) {
        SolutionSet::Affine(f) => f.base().clone(),
        SolutionSet::FinitePoints(ps) => ps[0].to_rational().expect("rational"),
        _ => return fail(trace, "a·γ = c has no solution".into()),
    };
    trace.gamma = Some(gamma.clone());
    let r = -beta.re() / Rational::from_integer(2.into());
    trace.shift = Some(r.clone());
    // a·x² + a·β·x + a·γ = a·((x − r)² − β²/4 + γ)
    let w = &(&beta * &beta).scale_div(&Rational::from_integer(4.into())) - &gamma;
    let space = match kernel(a) {
        SolutionSet::Affine(k) => SolutionSet::Affine(AffineFamily::unconstrained(w, k.basis().to_vec())),
        other => other,
    };
    match solve_square_in_affine(&r, &space) {
        Ok(set) => (set, trace),
        Err(e) => fail(trace, e.to_string()),
    }
}
