//! Left eigenvalues of 2×2 split-quaternion matrices.
//!
//! `A·v = λ·v` with an admissible `v` (some component invertible) can be
//! right-scaled so that `v = (1, x)ᵀ` or `v = (x, 1)ᵀ`. Substituting either
//! shape turns the two rows into one equation fixing `λ` and one linear or
//! quadratic equation for `x`, so the spectrum is a union of images of
//! solution sets under affine maps `x ↦ p + q·x`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linsolve::solve_linear;
use crate::quadric::Quadric;
use crate::quadsolve::{solve_quadratic_traced, QuadraticReport};
use crate::scalar::Scalar;
use crate::solsets::SolutionSet;
use crate::{Quat, Rational, SplitQuaternion, SurdQuat};

/// `[[a, b], [c, d]]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix2<T> {
    pub a: SplitQuaternion<T>,
    pub b: SplitQuaternion<T>,
    pub c: SplitQuaternion<T>,
    pub d: SplitQuaternion<T>,
}

impl<T: Scalar> Matrix2<T> {
    pub fn new(
        a: SplitQuaternion<T>,
        b: SplitQuaternion<T>,
        c: SplitQuaternion<T>,
        d: SplitQuaternion<T>,
    ) -> Self {
        Matrix2 { a, b, c, d }
    }

    pub fn identity() -> Self {
        Matrix2::new(
            SplitQuaternion::one(),
            SplitQuaternion::zero(),
            SplitQuaternion::zero(),
            SplitQuaternion::one(),
        )
    }

    pub fn apply(&self, v: &[SplitQuaternion<T>; 2]) -> [SplitQuaternion<T>; 2] {
        [
            &(&self.a * &v[0]) + &(&self.b * &v[1]),
            &(&self.c * &v[0]) + &(&self.d * &v[1]),
        ]
    }

    /// `p·E₂ + q·A`.
    pub fn shifted(&self, p: &SplitQuaternion<T>, q: &SplitQuaternion<T>) -> Self {
        Matrix2::new(
            p + &(q * &self.a),
            q * &self.b,
            q * &self.c,
            p + &(q * &self.d),
        )
    }

    /// `p·A·q`.
    pub fn sandwiched(&self, p: &SplitQuaternion<T>, q: &SplitQuaternion<T>) -> Self {
        let f = |x: &SplitQuaternion<T>| &(p * x) * q;
        Matrix2::new(f(&self.a), f(&self.b), f(&self.c), f(&self.d))
    }

    pub fn map<U>(&self, mut f: impl FnMut(&SplitQuaternion<T>) -> SplitQuaternion<U>) -> Matrix2<U> {
        Matrix2 {
            a: f(&self.a),
            b: f(&self.b),
            c: f(&self.c),
            d: f(&self.d),
        }
    }
}

impl FromStr for Matrix2<Rational> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        crate::cli::parse_matrix(s)
    }
}

impl fmt::Display for Matrix2<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

/// `A·v = λ·v` exactly, with at least one invertible component of `v`.
pub fn verify_eigenpair<T: Scalar>(
    m: &Matrix2<T>,
    lambda: &SplitQuaternion<T>,
    v: &[SplitQuaternion<T>; 2],
) -> bool {
    let admissible = v.iter().any(|x| x.is_invertible());
    admissible && m.apply(v) == [lambda * &v[0], lambda * &v[1]]
}

/// The complex adjoint `[[A1, A2], [conj A2, conj A1]]` of `A = A1 + A2·j`,
/// with `x0 + x1i + x2j + x3k = (x0 + x1i) + (x2 + x3i)·j`.
pub fn complex_adjoint<T: Scalar>(m: &Matrix2<T>) -> [[Complex<T>; 4]; 4] {
    let entries = [[&m.a, &m.b], [&m.c, &m.d]];
    let part = |r: usize, c: usize, second: bool, conj: bool| {
        let ((x0, x1), (x2, x3)) = entries[r][c].complex_form();
        let (re, im) = if second { (x2, x3) } else { (x0, x1) };
        Complex::new(re, if conj { -im } else { im })
    };
    std::array::from_fn(|row| {
        std::array::from_fn(|col| {
            let (r, c) = (row % 2, col % 2);
            match (row < 2, col < 2) {
                (true, true) => part(r, c, false, false),
                (true, false) => part(r, c, true, false),
                (false, true) => part(r, c, true, true),
                (false, false) => part(r, c, false, true),
            }
        })
    })
}

/// Which eigenvector shape a family uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VectorShape {
    /// `v = (1, x)ᵀ`.
    FirstUnit,
    /// `v = (x, 1)ᵀ`.
    SecondUnit,
}

impl VectorShape {
    pub fn vector<T: Scalar>(&self, x: &SplitQuaternion<T>) -> [SplitQuaternion<T>; 2] {
        match self {
            VectorShape::FirstUnit => [SplitQuaternion::one(), x.clone()],
            VectorShape::SecondUnit => [x.clone(), SplitQuaternion::one()],
        }
    }
}

impl fmt::Display for VectorShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VectorShape::FirstUnit => write!(f, "(1, x)"),
            VectorShape::SecondUnit => write!(f, "(x, 1)"),
        }
    }
}

/// Case that produced a family: lower triangular (`b = 0`), upper triangular
/// (`c = 0`) or general, with the eigenvalue pinned (`1`), varying (`2`) or
/// queried at the pinned diagonal entry (`3`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SourceTag {
    T31_1,
    T31_2,
    T31_3,
    T32_1,
    T32_2,
    T32_3,
    T33_1,
    T33_2,
}

impl fmt::Display for SourceTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SourceTag::T31_1 => "T31-1",
            SourceTag::T31_2 => "T31-2",
            SourceTag::T31_3 => "T31-3",
            SourceTag::T32_1 => "T32-1",
            SourceTag::T32_2 => "T32-2",
            SourceTag::T32_3 => "T32-3",
            SourceTag::T33_1 => "T33-1",
            SourceTag::T33_2 => "T33-2",
        };
        write!(f, "{s}")
    }
}

/// The equation whose solutions form a family's parameter set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DefiningEquation {
    /// `a·x = d`.
    Linear { a: Quat, d: Quat },
    /// `a·x² + b·x + c = 0`.
    Quadratic { a: Quat, b: Quat, c: Quat },
}

impl DefiningEquation {
    pub fn residual(&self, x: &SurdQuat) -> SurdQuat {
        match self {
            DefiningEquation::Linear { a, d } => &(&a.lift() * x) - &d.lift(),
            DefiningEquation::Quadratic { a, b, c } => {
                let (a, b, c) = (a.lift(), b.lift(), c.lift());
                &(&(&a * &(x * x)) + &(&b * x)) + &c
            }
        }
    }

    pub fn holds(&self, x: &SurdQuat) -> bool {
        self.residual(x).is_zero()
    }

    /// The four coordinate equations in `x0..x3`.
    pub fn quadrics(&self) -> [Quadric; 4] {
        match self {
            DefiningEquation::Linear { a, d } => Quadric::quaternion_equation(&Quat::zero(), a, &-d.clone()),
            DefiningEquation::Quadratic { a, b, c } => Quadric::quaternion_equation(a, b, c),
        }
    }
}

impl fmt::Display for DefiningEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DefiningEquation::Linear { a, d } => write!(f, "S_L({a}, {d})"),
            DefiningEquation::Quadratic { a, b, c } => write!(f, "S_Q({a}, {b}, {c})"),
        }
    }
}

/// Eigenpairs `(p + q·x, v(x))` for `x` in a solution set.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenFamily {
    pub parameter_set: SolutionSet,
    /// `(p, q)` in `λ(x) = p + q·x`.
    pub eigenvalue_map: (Quat, Quat),
    pub vector_shape: VectorShape,
    pub source: SourceTag,
    pub equation: DefiningEquation,
}

impl EigenFamily {
    pub fn eigenvalue_at(&self, x: &SurdQuat) -> SurdQuat {
        let (p, q) = &self.eigenvalue_map;
        &p.lift() + &(&q.lift() * x)
    }

    pub fn eigenvector_at(&self, x: &SurdQuat) -> [SurdQuat; 2] {
        self.vector_shape.vector(x)
    }

    /// `{p + q·x}` over the parameter set.
    pub fn eigenvalues(&self) -> SolutionSet {
        let (p, q) = &self.eigenvalue_map;
        self.parameter_set.affine_image(p, q)
    }

    /// Up to `count` eigenpairs `(x, λ, v)`.
    pub fn sample(&self, count: usize, seed: u64) -> Result<Vec<(SurdQuat, SurdQuat, [SurdQuat; 2])>> {
        Ok(self
            .parameter_set
            .sample(count, seed)?
            .into_iter()
            .map(|x| (self.eigenvalue_at(&x), self.eigenvector_at(&x), x))
            .map(|(l, v, x)| (x, l, v))
            .collect())
    }

    /// Parameters `x` in this family with `λ(x) = lambda`.
    pub fn parameters_for(&self, lambda: &Quat) -> SolutionSet {
        let (p, q) = &self.eigenvalue_map;
        let on_map = solve_linear(q, &(lambda - p));
        on_map.impose(&self.equation.quadrics())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Completeness {
    Complete,
    /// Some solve left unresolved pieces; the strings say which.
    PossiblyIncomplete(Vec<String>),
}

/// One solve performed while computing a spectrum.
#[derive(Clone, Debug, PartialEq)]
pub struct SolveRecord {
    pub source: SourceTag,
    pub equation: DefiningEquation,
    /// Present for quadratic equations.
    pub report: Option<QuadraticReport>,
    pub result: SolutionSet,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LeftSpectrum {
    pub matrix: Matrix2<Rational>,
    /// Nonempty families, in case order.
    pub families: Vec<EigenFamily>,
    pub completeness: Completeness,
    pub solves: Vec<SolveRecord>,
}

/// Eigenvectors found for one eigenvalue by a derived query.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenvectorSet {
    pub source: SourceTag,
    pub vector_shape: VectorShape,
    pub parameters: SolutionSet,
}

impl LeftSpectrum {
    pub fn is_empty(&self) -> bool {
        self.families.is_empty()
    }

    pub fn is_complete(&self) -> bool {
        self.completeness == Completeness::Complete
    }

    /// Eigenvalues attained at isolated parameter points or by constant
    /// maps, deduplicated across families in order of appearance.
    pub fn finite_eigenvalues(&self) -> Vec<SurdQuat> {
        let mut out: Vec<SurdQuat> = Vec::new();
        for family in &self.families {
            for value in family.eigenvalues().finite_points() {
                if !out.contains(&value) {
                    out.push(value);
                }
            }
        }
        out
    }

    /// All eigenvectors for `lambda`, per family; empty when `lambda ∉ σ_l`.
    pub fn eigenvectors_of(&self, lambda: &Quat) -> Vec<EigenvectorSet> {
        let m = &self.matrix;
        let pinned = if m.b.is_zero() && *lambda == m.a {
            Some(SourceTag::T31_3)
        } else if !m.b.is_zero() && m.c.is_zero() && *lambda == m.d {
            Some(SourceTag::T32_3)
        } else {
            None
        };
        self.families
            .iter()
            .map(|f| EigenvectorSet {
                source: match (pinned, f.source) {
                    (Some(tag), SourceTag::T31_2 | SourceTag::T32_2) => tag,
                    (_, source) => source,
                },
                vector_shape: f.vector_shape,
                parameters: f.parameters_for(lambda),
            })
            .filter(|s| !s.parameters.is_empty())
            .collect()
    }

    /// Whether `lambda` is a left eigenvalue. Decided exactly from the
    /// defining equations, even for families whose parameter set was only
    /// partly resolved.
    pub fn contains(&self, lambda: &Quat) -> bool {
        !self.eigenvectors_of(lambda).is_empty()
    }
}

fn linear_family(
    source: SourceTag,
    a: Quat,
    d: Quat,
    eigenvalue_map: (Quat, Quat),
    vector_shape: VectorShape,
) -> (EigenFamily, SolveRecord) {
    let equation = DefiningEquation::Linear { a: a.clone(), d: d.clone() };
    let set = solve_linear(&a, &d);
    let record = SolveRecord {
        source,
        equation: equation.clone(),
        report: None,
        result: set.clone(),
    };
    let family = EigenFamily {
        parameter_set: set,
        eigenvalue_map,
        vector_shape,
        source,
        equation,
    };
    (family, record)
}

fn quadratic_family(
    source: SourceTag,
    (a, b, c): (Quat, Quat, Quat),
    eigenvalue_map: (Quat, Quat),
    vector_shape: VectorShape,
) -> (EigenFamily, SolveRecord) {
    let equation = DefiningEquation::Quadratic {
        a: a.clone(),
        b: b.clone(),
        c: c.clone(),
    };
    let report = solve_quadratic_traced(&a, &b, &c);
    let record = SolveRecord {
        source,
        equation: equation.clone(),
        report: Some(report.clone()),
        result: report.result.clone(),
    };
    let family = EigenFamily {
        parameter_set: report.result,
        eigenvalue_map,
        vector_shape,
        source,
        equation,
    };
    (family, record)
}

/// `σ_l(A)` as eigenvalue families.
pub fn left_spectrum(m: &Matrix2<Rational>) -> LeftSpectrum {
    let Matrix2 { a, b, c, d } = m.clone();
    let zero = Quat::zero();
    let (first, second) = if b.is_zero() {
        rayon::join(
            || linear_family(SourceTag::T31_1, &a - &d, c.clone(), (a.clone(), zero.clone()), VectorShape::FirstUnit),
            || {
                quadratic_family(
                    SourceTag::T31_2,
                    (c.clone(), &d - &a, zero.clone()),
                    (d.clone(), c.clone()),
                    VectorShape::SecondUnit,
                )
            },
        )
    } else if c.is_zero() {
        rayon::join(
            || linear_family(SourceTag::T32_1, &d - &a, b.clone(), (d.clone(), zero.clone()), VectorShape::SecondUnit),
            || {
                quadratic_family(
                    SourceTag::T32_2,
                    (b.clone(), &a - &d, zero.clone()),
                    (a.clone(), b.clone()),
                    VectorShape::FirstUnit,
                )
            },
        )
    } else {
        rayon::join(
            || {
                quadratic_family(
                    SourceTag::T33_1,
                    (b.clone(), &a - &d, -c.clone()),
                    (a.clone(), b.clone()),
                    VectorShape::FirstUnit,
                )
            },
            || {
                quadratic_family(
                    SourceTag::T33_2,
                    (c.clone(), &d - &a, -b.clone()),
                    (d.clone(), c.clone()),
                    VectorShape::SecondUnit,
                )
            },
        )
    };
    let solves = vec![first.1, second.1];
    let diagnostics: Vec<String> = solves
        .iter()
        .flat_map(|r| {
            r.result
                .unresolved_diagnostics()
                .into_iter()
                .map(move |d| format!("{}: {d}", r.equation))
        })
        .collect();
    let completeness = if diagnostics.is_empty() {
        Completeness::Complete
    } else {
        Completeness::PossiblyIncomplete(diagnostics)
    };
    let families = [first.0, second.0]
        .into_iter()
        .filter(|f| !f.parameter_set.is_empty())
        .collect();
    LeftSpectrum {
        matrix: m.clone(),
        families,
        completeness,
        solves,
    }
}
