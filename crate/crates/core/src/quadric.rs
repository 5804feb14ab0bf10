//! Real polynomials of degree at most two in several variables.
//!
//! These carry the constraints of parametrized solution sets and the defining
//! equations of varieties. Besides evaluation and affine substitution, a
//! quadric can be split into rational linear factors and its real zero set can
//! be classified when it is a single equation.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::algebra::SplitQuaternion;
use crate::linalg::{rank, rref, solve_affine};
use crate::scalar::{format_rational, rational_sqrt, ExactScalar};
use crate::{Quat, Rational};

/// `sᵀ·A·s + bᵀ·s + c` with symmetric `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quadric {
    quad: Vec<Vec<Rational>>,
    lin: Vec<Rational>,
    constant: Rational,
}

/// Real zero set of a single equation `q = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ZeroSet {
    Empty,
    /// Every point.
    Everything,
    /// Exactly the common zeros of these linear equations.
    Linear(Vec<Quadric>),
    /// Nonempty, and not contained in a proper affine subspace description.
    Quadratic,
}

impl Quadric {
    pub fn zero(n: usize) -> Self {
        Quadric {
            quad: vec![vec![Rational::zero(); n]; n],
            lin: vec![Rational::zero(); n],
            constant: Rational::zero(),
        }
    }

    pub fn constant(n: usize, c: Rational) -> Self {
        Quadric {
            constant: c,
            ..Quadric::zero(n)
        }
    }

    /// `Σ coeffs[i]·s_i + c`.
    pub fn linear(coeffs: Vec<Rational>, c: Rational) -> Self {
        let n = coeffs.len();
        Quadric {
            quad: vec![vec![Rational::zero(); n]; n],
            lin: coeffs,
            constant: c,
        }
    }

    /// `s_index`.
    pub fn variable(n: usize, index: usize) -> Self {
        let mut q = Quadric::zero(n);
        q.lin[index] = Rational::one();
        q
    }

    /// Builds from a possibly non-symmetric quadratic part (it is symmetrized).
    pub fn from_parts(quad: Vec<Vec<Rational>>, lin: Vec<Rational>, constant: Rational) -> Self {
        let n = lin.len();
        assert!(quad.len() == n && quad.iter().all(|r| r.len() == n));
        let two = Rational::from_integer(2.into());
        let sym = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (&quad[i][j] + &quad[j][i]) / &two)
                    .collect()
            })
            .collect();
        Quadric {
            quad: sym,
            lin,
            constant,
        }
    }

    pub fn nvars(&self) -> usize {
        self.lin.len()
    }

    pub fn quadratic_part(&self) -> &[Vec<Rational>] {
        &self.quad
    }

    pub fn linear_part(&self) -> &[Rational] {
        &self.lin
    }

    pub fn constant_term(&self) -> &Rational {
        &self.constant
    }

    pub fn is_zero(&self) -> bool {
        self.degree().is_none()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.quad.iter().flatten().any(|c| !c.is_zero()) {
            Some(2)
        } else if self.lin.iter().any(|c| !c.is_zero()) {
            Some(1)
        } else if !self.constant.is_zero() {
            Some(0)
        } else {
            None
        }
    }

    pub fn eval<T: ExactScalar>(&self, point: &[T]) -> T {
        assert_eq!(point.len(), self.nvars());
        let mut acc = T::from_rational(&self.constant);
        for (i, xi) in point.iter().enumerate() {
            if !self.lin[i].is_zero() {
                acc = acc + T::from_rational(&self.lin[i]) * xi.clone();
            }
            for (j, xj) in point.iter().enumerate() {
                if !self.quad[i][j].is_zero() {
                    acc = acc + T::from_rational(&self.quad[i][j]) * xi.clone() * xj.clone();
                }
            }
        }
        acc
    }

    /// Substitutes `s = origin + Σ_j σ_j·directions[j]`, giving a quadric in `σ`.
    pub fn pullback(&self, origin: &[Rational], directions: &[Vec<Rational>]) -> Quadric {
        let n = self.nvars();
        let k = directions.len();
        assert_eq!(origin.len(), n);
        // A·origin
        let a_o: Vec<Rational> = (0..n)
            .map(|i| (0..n).map(|j| &self.quad[i][j] * &origin[j]).sum())
            .collect();
        let quad = (0..k)
            .map(|p| {
                (0..k)
                    .map(|q| {
                        let mut acc = Rational::zero();
                        for i in 0..n {
                            if directions[p][i].is_zero() {
                                continue;
                            }
                            for j in 0..n {
                                acc += &directions[p][i] * &self.quad[i][j] * &directions[q][j];
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        let two = Rational::from_integer(2.into());
        let lin = (0..k)
            .map(|p| {
                (0..n)
                    .map(|i| &directions[p][i] * (&two * &a_o[i] + &self.lin[i]))
                    .sum()
            })
            .collect();
        let constant = (0..n)
            .map(|i| &origin[i] * (&a_o[i] + &self.lin[i]))
            .sum::<Rational>()
            + &self.constant;
        Quadric {
            quad,
            lin,
            constant,
        }
    }

    pub fn scale(&self, s: &Rational) -> Quadric {
        Quadric {
            quad: self
                .quad
                .iter()
                .map(|r| r.iter().map(|c| c * s).collect())
                .collect(),
            lin: self.lin.iter().map(|c| c * s).collect(),
            constant: &self.constant * s,
        }
    }

    pub fn add(&self, other: &Quadric) -> Quadric {
        assert_eq!(self.nvars(), other.nvars());
        Quadric {
            quad: self
                .quad
                .iter()
                .zip(&other.quad)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
                .collect(),
            lin: self.lin.iter().zip(&other.lin).map(|(x, y)| x + y).collect(),
            constant: &self.constant + &other.constant,
        }
    }

    pub fn sub(&self, other: &Quadric) -> Quadric {
        self.add(&other.scale(&-Rational::one()))
    }

    /// Product of two polynomials of degree at most one.
    pub fn product_of_linear(l1: &Quadric, l2: &Quadric) -> Quadric {
        assert!(l1.degree().unwrap_or(0) <= 1 && l2.degree().unwrap_or(0) <= 1);
        let n = l1.nvars();
        let quad = (0..n)
            .map(|i| (0..n).map(|j| &l1.lin[i] * &l2.lin[j]).collect())
            .collect();
        let lin = (0..n)
            .map(|i| &l1.lin[i] * &l2.constant + &l2.lin[i] * &l1.constant)
            .collect();
        Quadric::from_parts(quad, lin, &l1.constant * &l2.constant)
    }

    /// Coefficients over the monomials `s_i·s_j (i ≤ j)`, then `s_i`, then `1`.
    pub fn coefficient_vector(&self) -> Vec<Rational> {
        let n = self.nvars();
        let mut v = Vec::with_capacity(n * (n + 1) / 2 + n + 1);
        for i in 0..n {
            for j in i..n {
                if i == j {
                    v.push(self.quad[i][i].clone());
                } else {
                    v.push(&self.quad[i][j] + &self.quad[j][i]);
                }
            }
        }
        v.extend(self.lin.iter().cloned());
        v.push(self.constant.clone());
        v
    }

    pub fn from_coefficient_vector(n: usize, v: &[Rational]) -> Quadric {
        let two = Rational::from_integer(2.into());
        let mut quad = vec![vec![Rational::zero(); n]; n];
        let mut idx = 0;
        for i in 0..n {
            for j in i..n {
                if i == j {
                    quad[i][i] = v[idx].clone();
                } else {
                    quad[i][j] = &v[idx] / &two;
                    quad[j][i] = quad[i][j].clone();
                }
                idx += 1;
            }
        }
        let lin = v[idx..idx + n].to_vec();
        Quadric {
            quad,
            lin,
            constant: v[idx + n].clone(),
        }
    }

    /// Number of quadratic monomials in `n` variables.
    pub fn quadratic_monomials(n: usize) -> usize {
        n * (n + 1) / 2
    }

    /// Divides by the first nonzero coefficient so equal zero sets compare equal.
    pub fn normalized(&self) -> Quadric {
        match self.coefficient_vector().into_iter().find(|c| !c.is_zero()) {
            Some(lead) => self.scale(&(Rational::one() / lead)),
            None => self.clone(),
        }
    }

    fn homogenized(&self) -> Vec<Vec<Rational>> {
        let n = self.nvars();
        let two = Rational::from_integer(2.into());
        let mut h = vec![vec![Rational::zero(); n + 1]; n + 1];
        for i in 0..n {
            for j in 0..n {
                h[i][j] = self.quad[i][j].clone();
            }
            h[i][n] = &self.lin[i] / &two;
            h[n][i] = h[i][n].clone();
        }
        h[n][n] = self.constant.clone();
        h
    }

    /// The linear form `Σ_i column[i]·x̃_i` with `x̃ = (s, 1)`.
    fn form_from_column(column: &[Rational]) -> Quadric {
        let n = column.len() - 1;
        Quadric::linear(column[..n].to_vec(), column[n].clone())
    }

    /// Writes a degree-2 quadric as a product of two rational linear
    /// polynomials, if possible.
    pub fn factor_linear(&self) -> Option<(Quadric, Quadric)> {
        if self.degree() != Some(2) {
            return None;
        }
        let h = self.homogenized();
        let size = h.len();
        let factors = match rank(&h, size) {
            1 => {
                let p = (0..size).find(|&p| !h[p][p].is_zero())?;
                let l = Quadric::form_from_column(&h[p]);
                (l.scale(&(Rational::one() / &h[p][p])), l)
            }
            2 => {
                let (p, q, det) = (0..size)
                    .flat_map(|p| (p + 1..size).map(move |q| (p, q)))
                    .map(|(p, q)| (p, q, &h[p][p] * &h[q][q] - &h[p][q] * &h[p][q]))
                    .find(|(_, _, det)| !det.is_zero())?;
                rational_sqrt(&-det.clone())?;
                let col = |c: usize| -> Vec<Rational> { h.iter().map(|row| row[c].clone()).collect() };
                let y1 = Quadric::form_from_column(&col(p));
                let y2 = Quadric::form_from_column(&col(q));
                let alpha = &h[q][q] / &det;
                let beta = -&h[p][q] / &det;
                let gamma = &h[p][p] / &det;
                if alpha.is_zero() {
                    let two = Rational::from_integer(2.into());
                    (y2.clone(), y1.scale(&(&two * &beta)).add(&y2.scale(&gamma)))
                } else {
                    let root = rational_sqrt(&(&beta * &beta - &alpha * &gamma))?;
                    let z1 = (-&beta + &root) / &alpha;
                    let z2 = (-&beta - &root) / &alpha;
                    (
                        y1.sub(&y2.scale(&z1)).scale(&alpha),
                        y1.sub(&y2.scale(&z2)),
                    )
                }
            }
            _ => return None,
        };
        (Quadric::product_of_linear(&factors.0, &factors.1) == *self).then_some(factors)
    }

    /// Counts of positive, negative and zero eigenvalues of the quadratic part.
    pub fn inertia(&self) -> (usize, usize, usize) {
        let mut a = self.quad.clone();
        let n = a.len();
        let mut signs = Vec::new();
        let mut active: Vec<usize> = (0..n).collect();
        while !active.is_empty() {
            let pivot = match active.iter().position(|&i| !a[i][i].is_zero()) {
                Some(pos) => pos,
                None => {
                    // zero diagonal: find an off-diagonal entry and add row/col j to i
                    let found = active.iter().enumerate().find_map(|(pi, &i)| {
                        active
                            .iter()
                            .find(|&&j| j != i && !a[i][j].is_zero())
                            .map(|&j| (pi, i, j))
                    });
                    let Some((pi, i, j)) = found else { break };
                    for c in 0..n {
                        let v = a[j][c].clone();
                        a[i][c] += v;
                    }
                    for r in 0..n {
                        let v = a[r][j].clone();
                        a[r][i] += v;
                    }
                    pi
                }
            };
            let p = active.remove(pivot);
            let d = a[p][p].clone();
            signs.push(d.signum());
            for &r in &active {
                if a[r][p].is_zero() {
                    continue;
                }
                let f = &a[r][p] / &d;
                for c in 0..n {
                    let v = &f * &a[p][c];
                    a[r][c] -= v;
                }
            }
            for &c in &active {
                a[p][c] = Rational::zero();
                a[c][p] = Rational::zero();
            }
        }
        let pos = signs.iter().filter(|s| s.is_positive()).count();
        let neg = signs.iter().filter(|s| s.is_negative()).count();
        (pos, neg, n - pos - neg)
    }

    /// Classifies the real solutions of `self = 0`.
    pub fn zero_set(&self) -> ZeroSet {
        match self.degree() {
            None => return ZeroSet::Everything,
            Some(0) => return ZeroSet::Empty,
            Some(1) => return ZeroSet::Linear(vec![self.clone()]),
            Some(_) => {}
        }
        let (pos, neg, _) = self.inertia();
        if pos > 0 && neg > 0 {
            return ZeroSet::Quadratic;
        }
        let q = if neg > 0 {
            self.scale(&-Rational::one())
        } else {
            self.clone()
        };
        // q is bounded below iff the stationary equation 2A·s = −b is solvable.
        let n = q.nvars();
        let two = Rational::from_integer(2.into());
        let a2: Vec<Vec<Rational>> = q
            .quad
            .iter()
            .map(|r| r.iter().map(|c| c * &two).collect())
            .collect();
        let rhs: Vec<Rational> = q.lin.iter().map(|c| -c).collect();
        let Some((stationary, _)) = solve_affine(&a2, &rhs, n) else {
            return ZeroSet::Quadratic;
        };
        match q.eval(&stationary).cmp(&Rational::zero()) {
            Ordering::Greater => ZeroSet::Empty,
            Ordering::Less => ZeroSet::Quadratic,
            Ordering::Equal => {
                // q = (s − s*)ᵀA(s − s*), zero exactly on s* + ker A.
                let mut rows = q.quad.clone();
                let pivots = rref(&mut rows, n);
                let eqs = rows
                    .into_iter()
                    .take(pivots.len())
                    .map(|row| {
                        let c = -row
                            .iter()
                            .zip(&stationary)
                            .map(|(x, y)| x * y)
                            .sum::<Rational>();
                        Quadric::linear(row, c)
                    })
                    .collect();
                ZeroSet::Linear(eqs)
            }
        }
    }

    /// Renders `… = 0`'s left side using `names` for the variables.
    pub fn format_with(&self, names: &[String]) -> String {
        let n = self.nvars();
        let mut terms: Vec<(Rational, String)> = Vec::new();
        for i in 0..n {
            for j in i..n {
                let c = if i == j {
                    self.quad[i][i].clone()
                } else {
                    &self.quad[i][j] + &self.quad[j][i]
                };
                let mono = if i == j {
                    format!("{}^2", names[i])
                } else {
                    format!("{}*{}", names[i], names[j])
                };
                terms.push((c, mono));
            }
        }
        for i in 0..n {
            terms.push((self.lin[i].clone(), names[i].clone()));
        }
        terms.push((self.constant.clone(), String::new()));
        let mut out = String::new();
        for (c, mono) in terms.into_iter().filter(|(c, _)| !c.is_zero()) {
            let negative = c.is_negative();
            let mag = c.abs();
            let body = if mono.is_empty() {
                format_rational(&mag)
            } else if mag.is_one() {
                mono
            } else {
                format!("{}*{}", format_rational(&mag), mono)
            };
            if out.is_empty() {
                out = if negative { format!("-{body}") } else { body };
            } else {
                out.push_str(if negative { " - " } else { " + " });
                out.push_str(&body);
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    // Quadrics in the four coordinates of a split quaternion.

    /// `I_x = x0² + x1² − x2² − x3²`.
    pub fn norm_form() -> Quadric {
        let mut q = Quadric::zero(4);
        for (i, s) in [1, 1, -1, -1].into_iter().enumerate() {
            q.quad[i][i] = Rational::from_integer(s.into());
        }
        q
    }

    /// The four coordinates of `x²`.
    pub fn square_components() -> [Quadric; 4] {
        let mut real = Quadric::zero(4);
        for (i, s) in [1, -1, 1, 1].into_iter().enumerate() {
            real.quad[i][i] = Rational::from_integer(s.into());
        }
        let cross = |c: usize| {
            let mut q = Quadric::zero(4);
            q.quad[0][c] = Rational::one();
            q.quad[c][0] = Rational::one();
            q
        };
        [real, cross(1), cross(2), cross(3)]
    }

    /// The four coordinates of `a·x² + b·x + c` as quadrics in `x`.
    pub fn quaternion_equation(a: &Quat, b: &Quat, c: &Quat) -> [Quadric; 4] {
        let sq = Quadric::square_components();
        let la = a.left_matrix();
        let lb = b.left_matrix();
        let cc = c.clone().into_array();
        std::array::from_fn(|r| {
            let mut q = Quadric::constant(4, cc[r].clone());
            for (d, sq_d) in sq.iter().enumerate() {
                if !la[r][d].is_zero() {
                    q = q.add(&sq_d.scale(&la[r][d]));
                }
            }
            let lin = (0..4).map(|d| lb[r][d].clone()).collect();
            q.add(&Quadric::linear(lin, Rational::zero()))
        })
    }
}

/// Names `x0 … x3` for quadrics over quaternion coordinates.
pub fn coordinate_names() -> Vec<String> {
    (0..4).map(|i| format!("x{i}")).collect()
}

/// Names `t1 … tn` for family parameters.
pub fn parameter_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("t{i}")).collect()
}

impl fmt::Display for Quadric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = if self.nvars() == 4 {
            coordinate_names()
        } else {
            parameter_names(self.nvars())
        };
        write!(f, "{}", self.format_with(&names))
    }
}

/// Coordinates of a quaternion as a point for [`Quadric::eval`].
pub fn coords<T: Clone>(x: &SplitQuaternion<T>) -> Vec<T> {
    x.clone().into_array().to_vec()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};
    use crate::SurdQuat;

    fn lin(c: &[i64], k: i64) -> Quadric {
        Quadric::linear(c.iter().map(|&x| int(x)).collect(), int(k))
    }

    #[test]
    fn pullback_matches_substitution() {
        let q = Quadric::norm_form().add(&lin(&[1, 0, 2, 0], -3));
        let origin = vec![int(1), int(0), rat(1, 2), int(2)];
        let dirs = vec![vec![int(1), int(1), int(0), int(0)], vec![int(0), int(0), int(1), int(-1)]];
        let p = q.pullback(&origin, &dirs);
        for (s, t) in [(0, 0), (1, 2), (-3, 5)] {
            let x: Vec<Rational> = (0..4)
                .map(|i| &origin[i] + int(s) * &dirs[0][i] + int(t) * &dirs[1][i])
                .collect();
            assert_eq!(p.eval(&[int(s), int(t)]), q.eval(&x));
        }
    }

    #[test]
    fn factors_product_of_lines() {
        // x0·(x1 + x2)
        let q = Quadric::product_of_linear(&lin(&[1, 0, 0, 0], 0), &lin(&[0, 1, 1, 0], 0));
        let (l1, l2) = q.factor_linear().unwrap();
        assert_eq!(Quadric::product_of_linear(&l1, &l2), q);
        // (x0 + x3)² − 1/4
        let mut q = Quadric::product_of_linear(&lin(&[1, 0, 0, 1], 0), &lin(&[1, 0, 0, 1], 0));
        q = q.sub(&Quadric::constant(4, rat(1, 4)));
        let (l1, l2) = q.factor_linear().unwrap();
        assert_eq!(l1.degree(), Some(1));
        assert_eq!(Quadric::product_of_linear(&l1, &l2), q);
    }

    #[test]
    fn irreducible_quadrics_do_not_factor() {
        assert!(Quadric::norm_form().factor_linear().is_none());
        // x0² − 2 factors only over Q(√2)
        let q = Quadric::product_of_linear(&lin(&[1, 0], 0), &lin(&[1, 0], 0))
            .sub(&Quadric::constant(2, int(2)));
        assert!(q.factor_linear().is_none());
    }

    #[test]
    fn inertia_of_norm_form() {
        assert_eq!(Quadric::norm_form().inertia(), (2, 2, 0));
        // t1·t2 has zero diagonal
        let q = Quadric::product_of_linear(&lin(&[1, 0], 0), &lin(&[0, 1], 0));
        assert_eq!(q.inertia(), (1, 1, 0));
    }

    #[test]
    fn zero_set_classification() {
        let sq = |c: &[i64]| Quadric::product_of_linear(&lin(c, 0), &lin(c, 0));
        // t1² + t2² + 1 = 0 has no real zeros
        let q = sq(&[1, 0]).add(&sq(&[0, 1])).add(&Quadric::constant(2, int(1)));
        assert_eq!(q.zero_set(), ZeroSet::Empty);
        // t1² + t2² = 0 only at the origin
        let q = sq(&[1, 0]).add(&sq(&[0, 1]));
        match q.zero_set() {
            ZeroSet::Linear(eqs) => assert_eq!(eqs.len(), 2),
            other => panic!("{other:?}"),
        }
        // t1² − t2² − 1 = 0 is a hyperbola
        let q = sq(&[1, 0]).sub(&sq(&[0, 1])).sub(&Quadric::constant(2, int(1)));
        assert_eq!(q.zero_set(), ZeroSet::Quadratic);
        // t1² + t2 = 0 is unbounded below
        let q = sq(&[1, 0]).add(&lin(&[0, 1], 0));
        assert_eq!(q.zero_set(), ZeroSet::Quadratic);
    }

    #[test]
    fn quaternion_equation_matches_algebra() {
        let a: Quat = "1+k".parse().unwrap();
        let b: Quat = "-1-i+j+k".parse().unwrap();
        let c: Quat = "2-j".parse().unwrap();
        let eqs = Quadric::quaternion_equation(&a, &b, &c);
        for x in ["1+2i-j+3k", "1/2-k", "0"] {
            let x: Quat = x.parse().unwrap();
            let direct = &(&(&a * &x) * &x) + &(&(&b * &x) + &c);
            let via: Vec<Rational> = eqs.iter().map(|q| q.eval(&coords(&x))).collect();
            assert_eq!(via, direct.into_array().to_vec());
        }
        // also over a quadratic extension
        let x: SurdQuat = SplitQuaternion::new(
            crate::QuadraticSurd::sqrt_rational(&int(2)).unwrap(),
            crate::QuadraticSurd::from(int(1)),
            crate::QuadraticSurd::from(int(0)),
            crate::QuadraticSurd::from(rat(1, 3)),
        );
        let direct = &(&(&a.lift() * &x) * &x) + &(&(&b.lift() * &x) + &c.lift());
        let via: Vec<_> = eqs.iter().map(|q| q.eval(&coords(&x))).collect();
        assert_eq!(via, direct.into_array().to_vec());
    }

    #[test]
    fn formatting() {
        let q = Quadric::norm_form().scale(&int(-1)).add(&Quadric::constant(4, rat(-1, 4)));
        assert_eq!(q.to_string(), "-x0^2 - x1^2 + x2^2 + x3^2 - 1/4");
        assert_eq!(lin(&[2, -1], 0).to_string(), "2*t1 - t2");
    }
}
