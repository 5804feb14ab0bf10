//! The linear equation `a·x = d`.

use num_traits::{One, Zero};

use crate::algebra::AlgebraClass;
use crate::linalg::independent_subset;
use crate::quadric::coords;
use crate::solsets::{AffineFamily, SolutionSet};
use crate::{Quat, Rational};

/// All `x` with `a·x = d`.
///
/// Solvable exactly when `a·a⁺·d = d`; the solutions are then
/// `a⁺·d + (1 − a⁺·a)·y` for arbitrary `y`.
pub fn solve_linear(a: &Quat, d: &Quat) -> SolutionSet {
    match a.classify() {
        AlgebraClass::Zero => {
            if d.is_zero() {
                SolutionSet::All
            } else {
                SolutionSet::Empty
            }
        }
        AlgebraClass::Invertible => {
            let inv = a.inverse().expect("invertible");
            SolutionSet::point(&inv * d)
        }
        AlgebraClass::ZeroDivisorNonzero => {
            let mp = a.mp_inverse();
            if &(a * &mp) * d != *d {
                return SolutionSet::Empty;
            }
            let complement = Quat::one() - &mp * a;
            let images: Vec<Quat> = Quat::units().iter().map(|u| &complement * u).collect();
            let vectors: Vec<Vec<Rational>> = images.iter().map(coords).collect();
            let basis = independent_subset(&vectors)
                .into_iter()
                .map(|i| images[i].clone())
                .collect();
            SolutionSet::Affine(AffineFamily::unconstrained(&mp * d, basis))
        }
    }
}

/// `{x : a·x = 0}`.
pub fn kernel(a: &Quat) -> SolutionSet {
    solve_linear(a, &Quat::zero())
}
