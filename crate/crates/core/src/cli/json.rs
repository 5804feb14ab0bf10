//! JSON encodings of quaternions, solution sets and spectra.

use num_traits::Zero;
use serde_json::{json, Map, Value};

use crate::quadric::{coordinate_names, parameter_names};
use crate::quadsolve::{ClassTrace, QuadraticPath, QuadraticReport};
use crate::realpoly::QuadDivisor;
use crate::scalar::format_rational_fraction;
use crate::solsets::SolutionSet;
use crate::spectrum::{Completeness, EigenFamily, LeftSpectrum, Matrix2, SolveRecord};
use crate::surd::QuadraticSurd;
use crate::{Quat, Rational, SplitQuaternion, SurdQuat};

/// `n/d`, or `a/b+c/d*sqrt(D)` for an irrational surd.
pub fn surd(s: &QuadraticSurd) -> String {
    let rational = format_rational_fraction(s.rational_part());
    if s.radical_part().is_zero() {
        return rational;
    }
    let radical = format_rational_fraction(s.radical_part());
    let sign = if radical.starts_with('-') { "" } else { "+" };
    format!("{rational}{sign}{radical}*sqrt({})", s.radicand())
}

pub fn rational(r: &Rational) -> Value {
    Value::String(format_rational_fraction(r))
}

fn components<T>(x: &SplitQuaternion<T>, f: impl Fn(&T) -> String) -> Value {
    let mut map = Map::new();
    for (name, c) in ["x0", "x1", "x2", "x3"].into_iter().zip(x.components()) {
        map.insert(name.to_string(), Value::String(f(c)));
    }
    Value::Object(map)
}

pub fn quat(x: &Quat) -> Value {
    components(x, format_rational_fraction)
}

pub fn surd_quat(x: &SurdQuat) -> Value {
    components(x, surd)
}

pub fn solution_set(set: &SolutionSet) -> Value {
    match set {
        SolutionSet::Empty => json!({ "kind": "empty" }),
        SolutionSet::All => json!({ "kind": "all" }),
        SolutionSet::FinitePoints(ps) => json!({
            "kind": "points",
            "points": ps.iter().map(surd_quat).collect::<Vec<_>>(),
        }),
        SolutionSet::Affine(f) => {
            let names = parameter_names(f.dim());
            json!({
                "kind": "affine",
                "base": quat(f.base()),
                "basis": f.basis().iter().map(quat).collect::<Vec<_>>(),
                "parameters": names,
                "constraints": f
                    .constraints()
                    .iter()
                    .map(|c| format!("{} = 0", c.format_with(&names)))
                    .collect::<Vec<_>>(),
            })
        }
        SolutionSet::Variety(v) => json!({
            "kind": "variety",
            "equations": v
                .equations()
                .iter()
                .map(|e| format!("{} = 0", e.format_with(&coordinate_names())))
                .collect::<Vec<_>>(),
            "branches": v.branches().iter().map(solution_set).collect::<Vec<_>>(),
        }),
        SolutionSet::Union(pieces) => json!({
            "kind": "union",
            "pieces": pieces.iter().map(solution_set).collect::<Vec<_>>(),
        }),
        SolutionSet::Unresolved(d) => json!({ "kind": "unresolved", "diagnostic": d }),
    }
}

fn divisor(d: &QuadDivisor) -> Value {
    match d {
        QuadDivisor::Exact { t, n } => json!({ "exact": true, "T": rational(t), "N": rational(n) }),
        QuadDivisor::Surd { t, n } => json!({ "exact": true, "T": surd(t), "N": surd(n) }),
        QuadDivisor::Approximate { t, n } => json!({ "exact": false, "T": t, "N": n }),
    }
}

fn class_trace(c: &ClassTrace) -> Value {
    let mut map = Map::new();
    map.insert("divisor".into(), divisor(&c.divisor));
    if let Some((a, d)) = &c.linear {
        map.insert("linear".into(), json!({ "a": quat(a), "d": quat(d) }));
    }
    if let Some(set) = &c.linear_set {
        map.insert("linear_set".into(), solution_set(set));
    }
    map.insert("intersection".into(), solution_set(&c.intersection));
    Value::Object(map)
}

pub fn quadratic_report(r: &QuadraticReport) -> Value {
    let (a, b, c) = &r.normalized;
    let path = match &r.path {
        QuadraticPath::Linear => json!({ "kind": "linear" }),
        QuadraticPath::SquareRoot(t) => json!({
            "kind": "square_root",
            "w": quat(&t.w),
            "norm": rational(&t.norm),
            "candidates": t.candidates.iter().map(surd).collect::<Vec<_>>(),
        }),
        QuadraticPath::Divisors(classes) => json!({
            "kind": "divisors",
            "classes": classes.iter().map(class_trace).collect::<Vec<_>>(),
        }),
        QuadraticPath::Degenerate(t) => json!({
            "kind": "degenerate",
            "beta": t.beta.as_ref().map(quat),
            "gamma": t.gamma.as_ref().map(quat),
            "shift": t.shift.as_ref().map(rational),
            "failure": t.failure,
        }),
    };
    json!({
        "normalized": { "a": quat(a), "b": quat(b), "c": quat(c) },
        "companion": r.companion.to_string(),
        "companion_coefficients": r.companion.coeffs().iter().map(rational).collect::<Vec<_>>(),
        "path": path,
    })
}

pub fn matrix(m: &Matrix2<Rational>) -> Value {
    json!([[quat(&m.a), quat(&m.b)], [quat(&m.c), quat(&m.d)]])
}

fn solve_record(r: &SolveRecord) -> Value {
    let mut map = Map::new();
    map.insert("source".into(), json!(r.source.to_string()));
    map.insert("equation".into(), json!(r.equation.to_string()));
    if let Some(report) = &r.report {
        map.insert("trace".into(), quadratic_report(report));
    }
    map.insert("result".into(), solution_set(&r.result));
    Value::Object(map)
}

fn family(f: &EigenFamily) -> Value {
    let (p, q) = &f.eigenvalue_map;
    json!({
        "source": f.source.to_string(),
        "equation": f.equation.to_string(),
        "eigenvalue_map": { "p": quat(p), "q": quat(q) },
        "vector_shape": f.vector_shape.to_string(),
        "parameter_set": solution_set(&f.parameter_set),
        "eigenvalues": solution_set(&f.eigenvalues()),
    })
}

pub fn completeness(c: &Completeness) -> Value {
    match c {
        Completeness::Complete => json!({ "status": "complete" }),
        Completeness::PossiblyIncomplete(d) => json!({ "status": "possibly_incomplete", "diagnostics": d }),
    }
}

/// Eigenvalues with their eigenvectors, one entry per finite eigenvalue.
fn eigenvalue_entries(s: &LeftSpectrum) -> Vec<Value> {
    s.finite_eigenvalues()
        .iter()
        .map(|value| {
            let vectors: Vec<Value> = match value.to_rational() {
                Some(lambda) => s
                    .eigenvectors_of(&lambda)
                    .iter()
                    .map(|set| {
                        let points = set.parameters.finite_points();
                        json!({
                            "source": set.source.to_string(),
                            "shape": set.vector_shape.to_string(),
                            "parameters": solution_set(&set.parameters),
                            "vectors": points
                                .iter()
                                .map(|x| set.vector_shape.vector(x).iter().map(surd_quat).collect::<Vec<_>>())
                                .collect::<Vec<_>>(),
                        })
                    })
                    .collect(),
                None => Vec::new(),
            };
            json!({ "value": surd_quat(value), "eigenvectors": vectors })
        })
        .collect()
}

pub fn spectrum(s: &LeftSpectrum) -> Value {
    json!({
        "matrix": matrix(&s.matrix),
        "empty": s.is_empty(),
        "completeness": completeness(&s.completeness),
        "eigenvalues": eigenvalue_entries(s),
        "families": s.families.iter().map(family).collect::<Vec<_>>(),
        "solves": s.solves.iter().map(solve_record).collect::<Vec<_>>(),
    })
}
