//! Closed representations of solution sets over the split quaternions.
//!
//! A [`SolutionSet`] is exact: membership is decided in rational (or
//! quadratic-extension) arithmetic, never by tolerance. Infinite sets are
//! affine families `base + Σ tᵢ·basisᵢ` cut by parameter constraints of degree
//! at most two, or varieties given by equations in the coordinates `x0..x3`.

mod reduce;
mod sample;

use std::fmt;

use num_traits::Zero;

use crate::algebra::AlgebraClass;
use crate::error::{Error, Result};
use crate::linalg::{independent_subset, solve_affine};
use crate::quadric::{coords, parameter_names, Quadric};
use crate::scalar::{format_rational, ExactScalar};
use crate::surd::QuadraticSurd;
use crate::{Quat, Rational, SplitQuaternion, SurdQuat};

pub(crate) use reduce::reduce;

/// The quasi-similarity class `{x : 2·Re x = T, I_x = N}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuasiClass {
    pub t: Rational,
    pub n: Rational,
}

impl QuasiClass {
    pub fn new(t: Rational, n: Rational) -> Self {
        QuasiClass { t, n }
    }

    /// The class containing `x`.
    pub fn of(x: &Quat) -> Self {
        QuasiClass {
            t: x.re() * Rational::from_integer(2.into()),
            n: x.norm(),
        }
    }

    /// `2·x0 − T` and `I_x − N`.
    pub fn equations(&self) -> [Quadric; 2] {
        let two = Rational::from_integer(2.into());
        let linear = Quadric::linear(
            vec![two, Rational::zero(), Rational::zero(), Rational::zero()],
            -self.t.clone(),
        );
        let norm = Quadric::norm_form().sub(&Quadric::constant(4, self.n.clone()));
        [linear, norm]
    }
}

impl fmt::Display for QuasiClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(T={}, N={})", format_rational(&self.t), format_rational(&self.n))
    }
}

/// `base + Σ tᵢ·basisᵢ` over real parameters satisfying every constraint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineFamily {
    base: Quat,
    basis: Vec<Quat>,
    constraints: Vec<Quadric>,
}

impl AffineFamily {
    /// Panics if the basis is dependent or a constraint has the wrong arity.
    pub fn new(base: Quat, basis: Vec<Quat>, constraints: Vec<Quadric>) -> Self {
        let vectors: Vec<Vec<Rational>> = basis.iter().map(coords).collect();
        assert_eq!(
            independent_subset(&vectors).len(),
            basis.len(),
            "family basis must be linearly independent"
        );
        assert!(constraints.iter().all(|q| q.nvars() == basis.len()));
        AffineFamily {
            base,
            basis,
            constraints,
        }
    }

    pub fn unconstrained(base: Quat, basis: Vec<Quat>) -> Self {
        AffineFamily::new(base, basis, Vec::new())
    }

    /// All of ℍₛ as a family over the unit basis.
    pub fn everything() -> Self {
        AffineFamily::unconstrained(Quat::zero(), Quat::units().to_vec())
    }

    pub fn base(&self) -> &Quat {
        &self.base
    }

    pub fn basis(&self) -> &[Quat] {
        &self.basis
    }

    pub fn constraints(&self) -> &[Quadric] {
        &self.constraints
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn point_at<T: ExactScalar>(&self, params: &[T]) -> SplitQuaternion<T> {
        assert_eq!(params.len(), self.dim());
        let mut acc = self.base.map(T::from_rational);
        for (t, b) in params.iter().zip(&self.basis) {
            acc = acc + b.map(T::from_rational).scale(t);
        }
        acc
    }

    /// The parameters of `x` if it lies on the unconstrained affine span.
    pub fn parameters_of(&self, x: &SurdQuat) -> Option<Vec<QuadraticSurd>> {
        let k = self.dim();
        let rows: Vec<Vec<QuadraticSurd>> = (0..4)
            .map(|c| {
                self.basis
                    .iter()
                    .map(|b| QuadraticSurd::from_rational(coords(b)[c].clone()))
                    .collect()
            })
            .collect();
        let rhs: Vec<QuadraticSurd> = coords(x)
            .into_iter()
            .zip(coords(&self.base))
            .map(|(xi, bi)| xi - QuadraticSurd::from_rational(bi))
            .collect();
        solve_affine(&rows, &rhs, k).map(|(particular, _)| particular)
    }

    pub fn contains(&self, x: &SurdQuat) -> bool {
        match self.parameters_of(x) {
            Some(params) => self
                .constraints
                .iter()
                .all(|q| q.eval(&params).is_zero()),
            None => false,
        }
    }

    /// Expresses a quadric in `x0..x3` in this family's parameters.
    pub fn pull_back(&self, q: &Quadric) -> Quadric {
        let directions: Vec<Vec<Rational>> = self.basis.iter().map(coords).collect();
        q.pullback(&coords(&self.base), &directions)
    }

    pub fn with_constraints(&self, extra: impl IntoIterator<Item = Quadric>) -> Self {
        let mut out = self.clone();
        out.constraints.extend(extra);
        out
    }

    fn image(&self, p: &Quat, q: &Quat) -> Self {
        AffineFamily {
            base: p + &(q * &self.base),
            basis: self.basis.iter().map(|b| q * b).collect(),
            constraints: self.constraints.clone(),
        }
    }
}

/// A rational parametrization of `{x : a·(x − s)² = a·w}` for a zero divisor
/// `a`, seen through the map `x ↦ p + q·x`.
///
/// Every solution `y = x − s` has `z = a·y` in the right ideal `a·ℍₛ` and then
/// solves the linear system `a·y = z`, `z·y = a·w`; conversely any solution of
/// that system satisfies `a·y² = z·y = a·w`. Choosing `z` at random thus
/// yields rational members.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fibration {
    pub a: Quat,
    pub aw: Quat,
    pub shift: Quat,
    pub image: (Quat, Quat),
}

/// The real zero set of quadrics in `x0..x3`, optionally decomposed into
/// branches whose union is the same set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Variety {
    equations: Vec<Quadric>,
    branches: Vec<SolutionSet>,
    fibration: Option<Fibration>,
}

impl Variety {
    pub fn equations(&self) -> &[Quadric] {
        &self.equations
    }

    pub fn branches(&self) -> &[SolutionSet] {
        &self.branches
    }

    pub fn fibration(&self) -> Option<&Fibration> {
        self.fibration.as_ref()
    }

    pub fn contains(&self, x: &SurdQuat) -> bool {
        let point = coords(x);
        self.equations.iter().all(|q| q.eval(&point).is_zero())
    }

    fn trivial_family(&self) -> AffineFamily {
        AffineFamily::everything().with_constraints(self.equations.iter().cloned())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolutionSet {
    Empty,
    /// Distinct points, possibly with coordinates in a quadratic extension.
    FinitePoints(Vec<SurdQuat>),
    Affine(AffineFamily),
    /// Every split quaternion.
    All,
    Variety(Variety),
    /// A union of pieces, none of them a union or `Empty`.
    Union(Vec<SolutionSet>),
    /// A piece the solver could not describe; the text says why.
    Unresolved(String),
}

impl SolutionSet {
    /// Finite set of points; duplicates are dropped, order is kept.
    pub fn points(points: impl IntoIterator<Item = SurdQuat>) -> Self {
        let mut out: Vec<SurdQuat> = Vec::new();
        for p in points {
            if !out.contains(&p) {
                out.push(p);
            }
        }
        if out.is_empty() {
            SolutionSet::Empty
        } else {
            SolutionSet::FinitePoints(out)
        }
    }

    pub fn rational_points(points: impl IntoIterator<Item = Quat>) -> Self {
        SolutionSet::points(points.into_iter().map(|p| p.lift()))
    }

    pub fn point(p: Quat) -> Self {
        SolutionSet::rational_points([p])
    }

    /// Family canonicalized: solved into points, split into branches, or
    /// proven empty when its constraints allow.
    pub fn family(family: AffineFamily) -> Self {
        reduce(family)
    }

    /// Zero set of `equations` in `x0..x3`.
    pub fn variety(equations: Vec<Quadric>) -> Self {
        SolutionSet::variety_with(equations, None)
    }

    pub fn variety_with(equations: Vec<Quadric>, fibration: Option<Fibration>) -> Self {
        let equations: Vec<Quadric> = equations.into_iter().filter(|q| !q.is_zero()).collect();
        if equations.is_empty() {
            return SolutionSet::All;
        }
        let variety = Variety {
            equations,
            branches: Vec::new(),
            fibration,
        };
        let reduced = reduce(variety.trivial_family());
        let branches = match reduced {
            SolutionSet::Empty => return SolutionSet::Empty,
            SolutionSet::FinitePoints(_) | SolutionSet::All => return reduced,
            SolutionSet::Union(pieces) => pieces,
            SolutionSet::Affine(ref f) if *f == variety.trivial_family() => Vec::new(),
            other => vec![other],
        };
        SolutionSet::Variety(Variety { branches, ..variety })
    }

    /// Flattened union with empty pieces dropped, finite points merged and
    /// duplicate pieces removed.
    pub fn union(pieces: impl IntoIterator<Item = SolutionSet>) -> Self {
        let mut flat = Vec::new();
        fn flatten(set: SolutionSet, out: &mut Vec<SolutionSet>) {
            match set {
                SolutionSet::Union(pieces) => pieces.into_iter().for_each(|p| flatten(p, out)),
                SolutionSet::Empty => {}
                other => out.push(other),
            }
        }
        pieces.into_iter().for_each(|p| flatten(p, &mut flat));
        if flat.iter().any(|p| matches!(p, SolutionSet::All)) {
            return SolutionSet::All;
        }
        let mut points: Vec<SurdQuat> = Vec::new();
        let mut points_slot = None;
        let mut out: Vec<SolutionSet> = Vec::new();
        for piece in flat {
            match piece {
                SolutionSet::FinitePoints(ps) => {
                    if points_slot.is_none() {
                        points_slot = Some(out.len());
                        out.push(SolutionSet::Empty);
                    }
                    for p in ps {
                        if !points.contains(&p) {
                            points.push(p);
                        }
                    }
                }
                other => {
                    if !out.contains(&other) {
                        out.push(other);
                    }
                }
            }
        }
        if let Some(slot) = points_slot {
            out[slot] = SolutionSet::FinitePoints(points);
        }
        match out.len() {
            0 => SolutionSet::Empty,
            1 => out.pop().unwrap(),
            _ => SolutionSet::Union(out),
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, SolutionSet::Empty)
    }

    /// The pieces of a union, or the set itself.
    pub fn pieces(&self) -> Vec<&SolutionSet> {
        match self {
            SolutionSet::Union(pieces) => pieces.iter().collect(),
            SolutionSet::Empty => Vec::new(),
            other => vec![other],
        }
    }

    pub fn has_unresolved(&self) -> bool {
        !self.unresolved_diagnostics().is_empty()
    }

    pub fn unresolved_diagnostics(&self) -> Vec<String> {
        match self {
            SolutionSet::Unresolved(d) => vec![d.clone()],
            SolutionSet::Union(pieces) => pieces
                .iter()
                .flat_map(|p| p.unresolved_diagnostics())
                .collect(),
            SolutionSet::Variety(v) => v
                .branches
                .iter()
                .flat_map(|p| p.unresolved_diagnostics())
                .collect(),
            _ => Vec::new(),
        }
    }

    /// The isolated points listed in this set (including those of union pieces).
    pub fn finite_points(&self) -> Vec<SurdQuat> {
        self.pieces()
            .into_iter()
            .filter_map(|p| match p {
                SolutionSet::FinitePoints(ps) => Some(ps.clone()),
                _ => None,
            })
            .flatten()
            .collect()
    }

    /// True when the set is known to be finite.
    pub fn is_finite(&self) -> bool {
        self.pieces()
            .iter()
            .all(|p| matches!(p, SolutionSet::FinitePoints(_)))
    }

    pub fn contains(&self, x: &Quat) -> Result<bool> {
        self.contains_surd(&x.lift())
    }

    pub fn contains_surd(&self, x: &SurdQuat) -> Result<bool> {
        match self {
            SolutionSet::Empty => Ok(false),
            SolutionSet::All => Ok(true),
            SolutionSet::FinitePoints(ps) => Ok(ps.contains(x)),
            SolutionSet::Affine(f) => Ok(f.contains(x)),
            SolutionSet::Variety(v) => Ok(v.contains(x)),
            SolutionSet::Unresolved(_) => Err(Error::UndecidableOnUnresolved),
            SolutionSet::Union(pieces) => {
                let mut undecided = false;
                for piece in pieces {
                    match piece.contains_surd(x) {
                        Ok(true) => return Ok(true),
                        Ok(false) => {}
                        Err(_) => undecided = true,
                    }
                }
                if undecided {
                    Err(Error::UndecidableOnUnresolved)
                } else {
                    Ok(false)
                }
            }
        }
    }

    /// Up to `count` distinct members, reproducible for a given `seed`.
    pub fn sample(&self, count: usize, seed: u64) -> Result<Vec<SurdQuat>> {
        sample::sample(self, count, seed)
    }

    /// Intersection with the common zeros of quadrics in `x0..x3`.
    pub fn impose(&self, equations: &[Quadric]) -> SolutionSet {
        match self {
            SolutionSet::Empty | SolutionSet::Unresolved(_) => self.clone(),
            SolutionSet::FinitePoints(ps) => SolutionSet::points(
                ps.iter()
                    .filter(|p| {
                        let c = coords(*p);
                        equations.iter().all(|q| q.eval(&c).is_zero())
                    })
                    .cloned(),
            ),
            SolutionSet::Affine(f) => {
                reduce(f.with_constraints(equations.iter().map(|q| f.pull_back(q))))
            }
            SolutionSet::All => {
                SolutionSet::family(AffineFamily::everything().with_constraints(equations.iter().cloned()))
            }
            SolutionSet::Variety(v) => {
                let all: Vec<Quadric> = v.equations.iter().chain(equations).cloned().collect();
                SolutionSet::variety(all)
            }
            SolutionSet::Union(pieces) => {
                SolutionSet::union(pieces.iter().map(|p| p.impose(equations)))
            }
        }
    }

    /// `self ∩ K`.
    pub fn intersect_class(&self, class: &QuasiClass) -> SolutionSet {
        self.impose(&class.equations())
    }

    /// Image under `x ↦ p + q·x`.
    pub fn affine_image(&self, p: &Quat, q: &Quat) -> SolutionSet {
        let class = q.classify();
        match self {
            SolutionSet::Empty | SolutionSet::Unresolved(_) => self.clone(),
            _ if class == AlgebraClass::Zero => SolutionSet::point(p.clone()),
            SolutionSet::FinitePoints(ps) => {
                let (pl, ql) = (p.lift(), q.lift());
                SolutionSet::points(ps.iter().map(|x| &pl + &(&ql * x)))
            }
            SolutionSet::All => match class {
                AlgebraClass::Invertible => SolutionSet::All,
                _ => {
                    let images: Vec<Quat> = Quat::units().iter().map(|u| q * u).collect();
                    let vectors: Vec<Vec<Rational>> = images.iter().map(coords).collect();
                    let basis = independent_subset(&vectors)
                        .into_iter()
                        .map(|i| images[i].clone())
                        .collect();
                    SolutionSet::Affine(AffineFamily::unconstrained(p.clone(), basis))
                }
            },
            SolutionSet::Affine(f) => {
                let mapped = f.image(p, q);
                let vectors: Vec<Vec<Rational>> = mapped.basis.iter().map(coords).collect();
                if independent_subset(&vectors).len() == mapped.dim() {
                    SolutionSet::family(mapped)
                } else if f.constraints.is_empty() {
                    let basis = independent_subset(&vectors)
                        .into_iter()
                        .map(|i| mapped.basis[i].clone())
                        .collect();
                    SolutionSet::family(AffineFamily::unconstrained(mapped.base, basis))
                } else {
                    SolutionSet::Unresolved(
                        "image of a constrained family under a non-injective map".into(),
                    )
                }
            }
            SolutionSet::Variety(v) => match q.inverse() {
                Ok(q_inv) => {
                    // x = q⁻¹·y − q⁻¹·p
                    let origin = coords(&-(&q_inv * p));
                    let m = q_inv.left_matrix();
                    let directions: Vec<Vec<Rational>> = (0..4)
                        .map(|col| (0..4).map(|row| m[row][col].clone()).collect())
                        .collect();
                    let equations = v
                        .equations
                        .iter()
                        .map(|e| e.pullback(&origin, &directions))
                        .collect();
                    let fibration = v.fibration.as_ref().map(|fib| Fibration {
                        image: (p + &(q * &fib.image.0), q * &fib.image.1),
                        ..fib.clone()
                    });
                    let branches = v.branches.iter().map(|b| b.affine_image(p, q)).collect();
                    SolutionSet::Variety(Variety {
                        equations,
                        branches,
                        fibration,
                    })
                }
                Err(_) if !v.branches.is_empty() => {
                    SolutionSet::union(v.branches.iter().map(|b| b.affine_image(p, q)))
                }
                Err(_) => SolutionSet::Unresolved(
                    "image of an undecomposed variety under a non-injective map".into(),
                ),
            },
            SolutionSet::Union(pieces) => {
                SolutionSet::union(pieces.iter().map(|piece| piece.affine_image(p, q)))
            }
        }
    }
}

fn format_family(f: &AffineFamily) -> String {
    let names = parameter_names(f.dim());
    let mut text = if f.base.is_zero() && f.dim() > 0 {
        String::new()
    } else {
        format!("({})", f.base)
    };
    for (name, b) in names.iter().zip(&f.basis) {
        if !text.is_empty() {
            text.push_str(" + ");
        }
        text.push_str(&format!("{name}*({b})"));
    }
    if f.constraints.is_empty() {
        return format!("{{{text}}}");
    }
    let constraints: Vec<String> = f
        .constraints
        .iter()
        .map(|c| format!("{} = 0", c.format_with(&names)))
        .collect();
    format!("{{{text} : {}}}", constraints.join(", "))
}

impl fmt::Display for AffineFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_family(self))
    }
}

impl fmt::Display for Variety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let eqs: Vec<String> = self.equations.iter().map(|e| format!("{e} = 0")).collect();
        write!(f, "{{x : {}}}", eqs.join(", "))
    }
}

impl fmt::Display for SolutionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolutionSet::Empty => write!(f, "empty"),
            SolutionSet::All => write!(f, "all split quaternions"),
            SolutionSet::FinitePoints(ps) => {
                let items: Vec<String> = ps.iter().map(|p| p.to_string()).collect();
                write!(f, "{{{}}}", items.join(", "))
            }
            SolutionSet::Affine(fam) => write!(f, "{fam}"),
            SolutionSet::Variety(v) => write!(f, "{v}"),
            SolutionSet::Union(pieces) => {
                let items: Vec<String> = pieces.iter().map(|p| p.to_string()).collect();
                write!(f, "{}", items.join(" ∪ "))
            }
            SolutionSet::Unresolved(d) => write!(f, "unresolved ({d})"),
        }
    }
}
