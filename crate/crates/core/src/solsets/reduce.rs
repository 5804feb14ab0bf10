//! Canonicalization of constrained affine families.
//!
//! Linear consequences of the constraints are solved and substituted, a
//! one-parameter family collapses to the roots of a univariate quadratic, and
//! constraints that factor into rational linear forms split the family into
//! branches. What remains is a family cut by genuinely quadratic constraints.

use num_traits::{Signed, Zero};

use super::{AffineFamily, SolutionSet};
use crate::linalg::{rref, solve_affine};
use crate::quadric::{Quadric, ZeroSet};
use crate::surd::QuadraticSurd;
use crate::{Quat, Rational};

/// Linear equations implied by linear combinations of `constraints`, as
/// `(coefficients, constant)`; `None` when the constraints are inconsistent.
fn implied_linear(constraints: &[Quadric], k: usize) -> Option<Vec<(Vec<Rational>, Rational)>> {
    let nquad = Quadric::quadratic_monomials(k);
    let width = nquad + k + 1;
    let mut rows: Vec<Vec<Rational>> = constraints.iter().map(|q| q.coefficient_vector()).collect();
    let pivots = rref(&mut rows, width);
    let mut out = Vec::new();
    for (row, &p) in rows.iter().zip(&pivots) {
        if p == width - 1 {
            return None;
        }
        if p >= nquad {
            out.push((row[nquad..nquad + k].to_vec(), row[width - 1].clone()));
        }
    }
    Some(out)
}

/// Roots of `a·t² + b·t + c` with `a ≠ 0`.
fn quadratic_roots(a: &Rational, b: &Rational, c: &Rational) -> Vec<QuadraticSurd> {
    let four = Rational::from_integer(4.into());
    let disc = b * b - &four * a * c;
    if disc.is_negative() {
        return Vec::new();
    }
    let two_a = a * Rational::from_integer(2.into());
    let root = QuadraticSurd::sqrt_rational(&disc).expect("non-negative");
    let minus_b = QuadraticSurd::from_rational(-b.clone());
    let denom = QuadraticSurd::from_rational(two_a);
    let mut out = vec![&(&minus_b + &root) / &denom];
    if !disc.is_zero() {
        out.push(&(&minus_b - &root) / &denom);
    }
    out
}

fn dedup_constraints(constraints: Vec<Quadric>) -> Vec<Quadric> {
    let mut out: Vec<Quadric> = Vec::new();
    for q in constraints {
        if q.is_zero() {
            continue;
        }
        let n = q.normalized();
        if !out.iter().any(|o| o.normalized() == n) {
            out.push(q);
        }
    }
    out
}

fn branch(family: &AffineFamily, replace: usize, factors: (Quadric, Quadric)) -> SolutionSet {
    let pieces = [factors.0, factors.1].map(|factor| {
        let mut constraints = family.constraints.clone();
        constraints[replace] = factor;
        reduce(AffineFamily {
            constraints,
            ..family.clone()
        })
    });
    SolutionSet::union(pieces)
}

/// Canonical form of a family: `Empty`, points, `All`, a family, or a union.
pub(crate) fn reduce(mut family: AffineFamily) -> SolutionSet {
    loop {
        let k = family.dim();
        family.constraints = dedup_constraints(std::mem::take(&mut family.constraints));
        if family.constraints.iter().any(|q| q.degree() == Some(0)) {
            return SolutionSet::Empty;
        }
        if family.constraints.is_empty() {
            return match k {
                0 => SolutionSet::point(family.base),
                4 => SolutionSet::All,
                _ => SolutionSet::Affine(family),
            };
        }
        let Some(linear) = implied_linear(&family.constraints, k) else {
            return SolutionSet::Empty;
        };
        if !linear.is_empty() {
            let a: Vec<Vec<Rational>> = linear.iter().map(|(c, _)| c.clone()).collect();
            let b: Vec<Rational> = linear.iter().map(|(_, c)| -c.clone()).collect();
            let Some((origin, null)) = solve_affine(&a, &b, k) else {
                return SolutionSet::Empty;
            };
            let base = family.point_at(&origin);
            let basis: Vec<Quat> = null
                .iter()
                .map(|n| {
                    family
                        .basis
                        .iter()
                        .zip(n)
                        .fold(Quat::zero(), |acc, (b, c)| acc + b.scale(c))
                })
                .collect();
            let constraints = family
                .constraints
                .iter()
                .map(|q| q.pullback(&origin, &null))
                .collect();
            family = AffineFamily {
                base,
                basis,
                constraints,
            };
            continue;
        }
        // Every constraint is now genuinely quadratic.
        if k == 1 {
            let q = &family.constraints[0];
            let roots = quadratic_roots(&q.quadratic_part()[0][0], &q.linear_part()[0], q.constant_term());
            let points = roots
                .into_iter()
                .filter(|t| {
                    family.constraints[1..]
                        .iter()
                        .all(|c| c.eval(std::slice::from_ref(t)).is_zero())
                })
                .map(|t| family.point_at(&[t]));
            return SolutionSet::points(points);
        }
        if family.constraints.len() == 1 {
            match family.constraints[0].zero_set() {
                ZeroSet::Empty => return SolutionSet::Empty,
                ZeroSet::Everything => {
                    family.constraints.clear();
                    continue;
                }
                ZeroSet::Linear(eqs) => {
                    family.constraints = eqs;
                    continue;
                }
                ZeroSet::Quadratic => {}
            }
        }
        for (idx, q) in family.constraints.iter().enumerate() {
            if let Some(factors) = q.factor_linear() {
                return branch(&family, idx, factors);
            }
        }
        return SolutionSet::Affine(family);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};
    use num_traits::One;

    fn q(s: &str) -> Quat {
        s.parse().unwrap()
    }

    #[test]
    fn linear_constraints_are_solved() {
        // t1 + t2 = 1 and t1 − t2 = 0 over basis {i, j}
        let fam = AffineFamily::new(
            Quat::zero(),
            vec![q("i"), q("j")],
            vec![
                Quadric::linear(vec![int(1), int(1)], int(-1)),
                Quadric::linear(vec![int(1), int(-1)], int(0)),
            ],
        );
        assert_eq!(reduce(fam), SolutionSet::point(q("1/2i+1/2j")));
    }

    #[test]
    fn line_meets_conic_in_surd_points() {
        // t² = 2 over basis {1}
        let mut quad = vec![vec![int(0)]];
        quad[0][0] = int(1);
        let fam = AffineFamily::new(
            Quat::zero(),
            vec![Quat::one()],
            vec![Quadric::from_parts(quad, vec![int(0)], int(-2))],
        );
        match reduce(fam) {
            SolutionSet::FinitePoints(ps) => {
                assert_eq!(ps.len(), 2);
                for p in ps {
                    assert_eq!(&p * &p, Quat::real(int(2)).lift());
                }
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn inconsistent_constraints_are_empty() {
        let fam = AffineFamily::new(
            Quat::zero(),
            vec![q("i"), q("j")],
            vec![
                Quadric::linear(vec![int(1), int(1)], int(-1)),
                Quadric::linear(vec![int(2), int(2)], int(0)),
            ],
        );
        assert_eq!(reduce(fam), SolutionSet::Empty);
    }

    #[test]
    fn factorable_constraint_branches() {
        // t1·t2 = 0 over {i, j}: the two axes
        let quad = vec![vec![int(0), rat(1, 2)], vec![rat(1, 2), int(0)]];
        let fam = AffineFamily::new(
            Quat::zero(),
            vec![q("i"), q("j")],
            vec![Quadric::from_parts(quad, vec![int(0), int(0)], int(0))],
        );
        match reduce(fam) {
            SolutionSet::Union(pieces) => {
                assert_eq!(pieces.len(), 2);
                assert!(pieces.iter().all(|p| matches!(p, SolutionSet::Affine(f) if f.dim() == 1)));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn definite_constraint() {
        // t1² + t2² + 1 = 0 has no real points; t1² + t2² = 0 only the origin
        let quad = vec![vec![int(1), int(0)], vec![int(0), int(1)]];
        let fam = |c| {
            AffineFamily::new(
                q("1"),
                vec![q("i"), q("j")],
                vec![Quadric::from_parts(quad.clone(), vec![int(0), int(0)], c)],
            )
        };
        assert_eq!(reduce(fam(int(1))), SolutionSet::Empty);
        assert_eq!(reduce(fam(int(0))), SolutionSet::point(q("1")));
    }
}
