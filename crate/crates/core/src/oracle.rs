//! Independent checkers: exhaustive grid search and the real 2×2 matrix
//! representation of the split quaternions.
//!
//! The grid search does not use the algebra module's multiplication; it
//! multiplies integer 2×2 matrices instead, so agreement between the two is
//! meaningful.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::scalar::{common_denominator, format_rational, parse_rational, Scalar};
use crate::{Quat, Rational, SplitQuaternion};

/// Largest number of grid points searched.
pub const MAX_GRID_POINTS: u128 = 10_000_000;

/// The values `lo, lo + step, …` not exceeding `hi`, in each coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridSpec {
    lo: Rational,
    hi: Rational,
    step: Rational,
}

impl GridSpec {
    pub fn new(lo: Rational, hi: Rational, step: Rational) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidGrid("lo must not exceed hi".into()));
        }
        if !step.is_positive() {
            return Err(Error::InvalidGrid("step must be positive".into()));
        }
        Ok(GridSpec { lo, hi, step })
    }

    /// Parses `lo:hi:step`.
    pub fn parse(text: &str) -> Result<Self> {
        let parts: Vec<&str> = text.split(':').collect();
        if parts.len() != 3 {
            return Err(Error::InvalidGrid(format!("expected lo:hi:step, got {text:?}")));
        }
        let value = |s: &str| parse_rational(s.trim()).map_err(|e| Error::InvalidGrid(e.to_string()));
        GridSpec::new(value(parts[0])?, value(parts[1])?, value(parts[2])?)
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn step(&self) -> &Rational {
        &self.step
    }

    /// Values per coordinate.
    pub fn values(&self) -> Vec<Rational> {
        let n = ((&self.hi - &self.lo) / &self.step).floor().to_integer();
        let n = n.to_u64().unwrap_or(u64::MAX);
        (0..=n)
            .map(|k| &self.lo + &self.step * Rational::from_integer(k.into()))
            .collect()
    }

    pub fn cardinality(&self) -> u128 {
        let n: BigInt = ((&self.hi - &self.lo) / &self.step).floor().to_integer() + 1;
        let n = n.to_u128().unwrap_or(u128::MAX);
        n.saturating_mul(n).saturating_mul(n).saturating_mul(n)
    }

    /// Whether `x` has all four coordinates on the grid.
    pub fn contains(&self, x: &Quat) -> bool {
        x.components().into_iter().all(|c| {
            let k = (c - &self.lo) / &self.step;
            k.is_integer() && !k.is_negative() && *c <= self.hi
        })
    }
}

impl std::fmt::Display for GridSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{}:{}:{}",
            format_rational(&self.lo),
            format_rational(&self.hi),
            format_rational(&self.step)
        )
    }
}

/// `x ↦ [[x0 + x3, x1 + x2], [x2 − x1, x0 − x3]]`, sending `1` to the
/// identity, `i` to `[[0, 1], [−1, 0]]`, `j` to `[[0, 1], [1, 0]]` and `k` to
/// `[[1, 0], [0, −1]]`.
pub fn real_rep<T: Scalar>(x: &SplitQuaternion<T>) -> [[T; 2]; 2] {
    let [x0, x1, x2, x3] = x.clone().into_array();
    [
        [x0.clone() + x3.clone(), x1.clone() + x2.clone()],
        [x2 - x1, x0 - x3],
    ]
}

fn mat_mul<T: Scalar>(p: &[[T; 2]; 2], q: &[[T; 2]; 2]) -> [[T; 2]; 2] {
    std::array::from_fn(|r| {
        std::array::from_fn(|c| p[r][0].clone() * q[0][c].clone() + p[r][1].clone() * q[1][c].clone())
    })
}

fn mat_add<T: Scalar>(p: &[[T; 2]; 2], q: &[[T; 2]; 2]) -> [[T; 2]; 2] {
    std::array::from_fn(|r| std::array::from_fn(|c| p[r][c].clone() + q[r][c].clone()))
}

/// `a·X² + b·X + c` with small integer matrices, `None` on overflow.
fn residual_i128(a: &[[i128; 2]; 2], b: &[[i128; 2]; 2], c: &[[i128; 2]; 2], x: &[[i128; 2]; 2]) -> Option<bool> {
    let mul = |p: &[[i128; 2]; 2], q: &[[i128; 2]; 2]| -> Option<[[i128; 2]; 2]> {
        let mut out = [[0i128; 2]; 2];
        for r in 0..2 {
            for col in 0..2 {
                out[r][col] = p[r][0]
                    .checked_mul(q[0][col])?
                    .checked_add(p[r][1].checked_mul(q[1][col])?)?;
            }
        }
        Some(out)
    };
    let x2 = mul(x, x)?;
    let ax2 = mul(a, &x2)?;
    let bx = mul(b, x)?;
    for r in 0..2 {
        for col in 0..2 {
            let v = ax2[r][col].checked_add(bx[r][col])?.checked_add(c[r][col])?;
            if v != 0 {
                return Some(false);
            }
        }
    }
    Some(true)
}

fn to_i128(m: &[[BigInt; 2]; 2]) -> Option<[[i128; 2]; 2]> {
    let mut out = [[0i128; 2]; 2];
    for r in 0..2 {
        for c in 0..2 {
            out[r][c] = m[r][c].to_i128()?;
        }
    }
    Some(out)
}

/// Every grid point `x` with `a·x² + b·x + c = 0`, in lexicographic order.
///
/// With grid values `X/D` and coefficient denominators cleared by `L`, the
/// equation becomes `(L·a)·X² + (L·D·b)·X + (L·D²·c) = 0` over integer
/// matrices.
pub fn brute_quadratic(a: &Quat, b: &Quat, c: &Quat, grid: &GridSpec) -> Result<Vec<Quat>> {
    let count = grid.cardinality();
    if count > MAX_GRID_POINTS {
        return Err(Error::GridTooLarge(count));
    }
    let values = grid.values();
    let d = common_denominator(values.iter());
    let l = common_denominator(a.components().into_iter().chain(b.components()).chain(c.components()));
    let scale = |q: &Quat, factor: &BigInt| -> [[BigInt; 2]; 2] {
        let m = real_rep(q);
        m.map(|row| row.map(|v| (v * Rational::from_integer(factor.clone())).to_integer()))
    };
    let am = scale(a, &l);
    let bm = scale(b, &(&l * &d));
    let cm = scale(c, &(&l * &d * &d));
    let ints: Vec<BigInt> = values
        .iter()
        .map(|v| (v * Rational::from_integer(d.clone())).to_integer())
        .collect();
    let small = (to_i128(&am), to_i128(&bm), to_i128(&cm));
    let n = values.len();
    let hits: Vec<Vec<[usize; 4]>> = (0..n)
        .into_par_iter()
        .map(|i0| {
            let mut found = Vec::new();
            for i1 in 0..n {
                for i2 in 0..n {
                    for i3 in 0..n {
                        let x = SplitQuaternion::new(
                            ints[i0].clone(),
                            ints[i1].clone(),
                            ints[i2].clone(),
                            ints[i3].clone(),
                        );
                        let xm = integer_rep(&x);
                        let fast = match (&small, to_i128(&xm)) {
                            (&(Some(a), Some(b), Some(c)), Some(x)) => residual_i128(&a, &b, &c, &x),
                            _ => None,
                        };
                        let hit = fast.unwrap_or_else(|| {
                            let lhs = mat_add(&mat_add(&mat_mul(&am, &mat_mul(&xm, &xm)), &mat_mul(&bm, &xm)), &cm);
                            lhs.iter().flatten().all(Zero::is_zero)
                        });
                        if hit {
                            found.push([i0, i1, i2, i3]);
                        }
                    }
                }
            }
            found
        })
        .collect();
    Ok(hits
        .into_iter()
        .flatten()
        .map(|[i0, i1, i2, i3]| {
            Quat::new(
                values[i0].clone(),
                values[i1].clone(),
                values[i2].clone(),
                values[i3].clone(),
            )
        })
        .collect())
}

fn integer_rep(x: &SplitQuaternion<BigInt>) -> [[BigInt; 2]; 2] {
    let [x0, x1, x2, x3] = x.clone().into_array();
    [[&x0 + &x3, &x1 + &x2], [&x2 - &x1, &x0 - &x3]]
}

/// Grid points with `a·x = d`.
pub fn brute_linear(a: &Quat, d: &Quat, grid: &GridSpec) -> Result<Vec<Quat>> {
    brute_quadratic(&Quat::zero(), a, &-d.clone(), grid)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};
    use proptest::prelude::*;

    fn q(s: &str) -> Quat {
        s.parse().unwrap()
    }

    fn unit_grid() -> GridSpec {
        GridSpec::new(int(-2), int(2), int(1)).unwrap()
    }

    #[test]
    fn representation_table() {
        let rep = |s: &str| real_rep(&q(s));
        assert_eq!(mat_mul(&rep("i"), &rep("j")), rep("k"));
        assert_eq!(mat_mul(&rep("j"), &rep("k")), rep("-i"));
        assert_eq!(mat_mul(&rep("i"), &rep("i")), rep("-1"));
        let m = rep("1+k");
        assert_eq!(&m[0][0] * &m[1][1] - &m[0][1] * &m[1][0], int(0));
    }

    #[test]
    fn grid_examples() {
        let hits = brute_quadratic(&q("1"), &q("-i-j"), &q("k"), &unit_grid()).unwrap();
        assert_eq!(hits, vec![q("j")]);
        let hits = brute_quadratic(&q("1"), &q("0"), &q("1"), &unit_grid()).unwrap();
        assert!(hits.contains(&q("i")) && hits.contains(&q("-i")));
        for h in &hits {
            assert_eq!(h * h, q("-1"));
        }
        let grid = GridSpec::new(int(-1), int(1), rat(1, 2)).unwrap();
        assert!(brute_quadratic(&q("1"), &q("0"), &q("3+i+j+k"), &grid).unwrap().is_empty());
    }

    #[test]
    fn grid_validation() {
        assert!(GridSpec::new(int(1), int(0), int(1)).is_err());
        assert!(GridSpec::parse("0:1:0").is_err());
        let big = GridSpec::new(int(-100), int(100), int(1)).unwrap();
        assert!(matches!(brute_quadratic(&q("1"), &q("0"), &q("0"), &big), Err(Error::GridTooLarge(_))));
        let g = GridSpec::parse("-2:2:1/2").unwrap();
        assert_eq!(g.values().len(), 9);
        assert!(g.contains(&q("1/2-2k")));
        assert!(!g.contains(&q("1/3")));
    }

    fn small_quat() -> impl Strategy<Value = Quat> {
        (-3i64..=3, -3i64..=3, -3i64..=3, -3i64..=3).prop_map(|(a, b, c, d)| Quat::from_ints(a, b, c, d))
    }

    proptest! {
        #[test]
        fn representation_is_multiplicative(x in small_quat(), y in small_quat()) {
            prop_assert_eq!(real_rep(&(&x * &y)), mat_mul(&real_rep(&x), &real_rep(&y)));
            let m = real_rep(&x);
            prop_assert_eq!(&m[0][0] * &m[1][1] - &m[0][1] * &m[1][0], x.norm());
            prop_assert_eq!(&m[0][0] + &m[1][1], x.re() * int(2));
        }
    }
}
