//! Seeded sampling of solution-set members.

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{AffineFamily, Fibration, SolutionSet, Variety};
use crate::error::{Error, Result};
use crate::linalg::solve_affine;
use crate::quadric::{coords, Quadric};
use crate::scalar::{rat, rational_sqrt};
use crate::surd::QuadraticSurd;
use crate::{Quat, Rational, SurdQuat};

/// Attempts spent looking for points on a constrained family.
const BUDGET: usize = 4000;

fn small_rational(rng: &mut ChaCha8Rng) -> Rational {
    let den = [1, 1, 2, 3][rng.gen_range(0..4)];
    rat(rng.gen_range(-6..=6), den)
}

fn random_quat(rng: &mut ChaCha8Rng) -> Quat {
    Quat::new(
        small_rational(rng),
        small_rational(rng),
        small_rational(rng),
        small_rational(rng),
    )
}

fn push_distinct(out: &mut Vec<SurdQuat>, p: SurdQuat) {
    if !out.contains(&p) {
        out.push(p);
    }
}

pub(super) fn sample(set: &SolutionSet, count: usize, seed: u64) -> Result<Vec<SurdQuat>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_with(set, count, &mut rng)
}

fn sample_with(set: &SolutionSet, count: usize, rng: &mut ChaCha8Rng) -> Result<Vec<SurdQuat>> {
    match set {
        SolutionSet::Empty => Err(Error::EmptySet),
        SolutionSet::Unresolved(_) => Err(Error::UndecidableOnUnresolved),
        SolutionSet::FinitePoints(ps) => Ok(ps.iter().take(count).cloned().collect()),
        SolutionSet::All => {
            let mut out = Vec::new();
            while out.len() < count {
                push_distinct(&mut out, random_quat(rng).lift());
            }
            Ok(out)
        }
        SolutionSet::Affine(f) => sample_family(f, count, rng),
        SolutionSet::Variety(v) => sample_variety(v, count, rng),
        SolutionSet::Union(pieces) => sample_union(pieces, count, rng),
    }
}

fn sample_union(pieces: &[SolutionSet], count: usize, rng: &mut ChaCha8Rng) -> Result<Vec<SurdQuat>> {
    let mut first_error = None;
    let mut per_piece = Vec::new();
    for piece in pieces {
        match sample_with(piece, count, rng) {
            Ok(ps) => per_piece.push(ps),
            Err(e) => {
                first_error.get_or_insert(e);
            }
        }
    }
    if per_piece.is_empty() {
        return Err(first_error.unwrap_or(Error::EmptySet));
    }
    // round-robin over pieces
    let mut out = Vec::new();
    let longest = per_piece.iter().map(Vec::len).max().unwrap_or(0);
    for i in 0..longest {
        for ps in &per_piece {
            if let Some(p) = ps.get(i) {
                push_distinct(&mut out, p.clone());
            }
        }
    }
    out.truncate(count);
    Ok(out)
}

fn sample_variety(v: &Variety, count: usize, rng: &mut ChaCha8Rng) -> Result<Vec<SurdQuat>> {
    if !v.branches.is_empty() {
        return sample_union(&v.branches, count, rng);
    }
    if let Some(fib) = &v.fibration {
        let found = sample_fibration(fib, v, count, rng);
        if !found.is_empty() {
            return Ok(found);
        }
    }
    sample_family(&v.trivial_family(), count, rng)
}

fn sample_fibration(fib: &Fibration, v: &Variety, count: usize, rng: &mut ChaCha8Rng) -> Vec<SurdQuat> {
    let mut out = Vec::new();
    for _ in 0..BUDGET {
        if out.len() >= count {
            break;
        }
        let z = &fib.a * &random_quat(rng);
        let la = fib.a.left_matrix();
        let lz = z.left_matrix();
        let rows: Vec<Vec<Rational>> = la.iter().chain(lz.iter()).map(|r| r.to_vec()).collect();
        let rhs: Vec<Rational> = coords(&z).into_iter().chain(coords(&fib.aw)).collect();
        let Some((particular, null)) = solve_affine(&rows, &rhs, 4) else {
            continue;
        };
        let mut y = particular;
        for n in &null {
            let t = small_rational(rng);
            for (yi, ni) in y.iter_mut().zip(n) {
                *yi += &t * ni;
            }
        }
        let y = Quat::new(y[0].clone(), y[1].clone(), y[2].clone(), y[3].clone());
        let x = &fib.image.0 + &(&fib.image.1 * &(&fib.shift + &y));
        let x = x.lift();
        if v.contains(&x) {
            push_distinct(&mut out, x);
        }
    }
    out
}

/// `q` restricted to the line `point + t·e_var`, as `(a, b, c)` in `a t² + b t + c`.
fn restrict(q: &Quadric, point: &[Rational], var: usize) -> (Rational, Rational, Rational) {
    let mut origin = point.to_vec();
    origin[var] = Rational::zero();
    let mut e = vec![Rational::zero(); point.len()];
    e[var] = Rational::one();
    let r = q.pullback(&origin, &[e]);
    (r.quadratic_part()[0][0].clone(), r.linear_part()[0].clone(), r.constant_term().clone())
}

/// Roots in `t`, rational ones first; surd roots only when `allow_surd`.
fn univariate_roots(
    (a, b, c): &(Rational, Rational, Rational),
    allow_surd: bool,
) -> Vec<QuadraticSurd> {
    if a.is_zero() {
        if b.is_zero() {
            return Vec::new();
        }
        return vec![QuadraticSurd::from_rational(-c / b)];
    }
    let disc = b * b - Rational::from_integer(4.into()) * a * c;
    if disc.is_negative() {
        return Vec::new();
    }
    if rational_sqrt(&disc).is_none() && !allow_surd {
        return Vec::new();
    }
    let root = QuadraticSurd::sqrt_rational(&disc).expect("non-negative");
    let two_a = QuadraticSurd::from_rational(a * Rational::from_integer(2.into()));
    let minus_b = QuadraticSurd::from_rational(-b.clone());
    vec![&(&minus_b + &root) / &two_a, &(&minus_b - &root) / &two_a]
}

fn satisfies(f: &AffineFamily, params: &[QuadraticSurd]) -> bool {
    f.constraints.iter().all(|q| q.eval(params).is_zero())
}

/// Variables to solve for, those in which `q` is linear first.
fn solve_order(q: &Quadric) -> Vec<usize> {
    let k = q.nvars();
    let involved = |v: usize| {
        !q.linear_part()[v].is_zero() || q.quadratic_part()[v].iter().any(|c| !c.is_zero())
    };
    let mut linear: Vec<usize> = (0..k)
        .filter(|&v| involved(v) && q.quadratic_part()[v][v].is_zero())
        .collect();
    let quadratic: Vec<usize> = (0..k)
        .filter(|&v| involved(v) && !q.quadratic_part()[v][v].is_zero())
        .collect();
    linear.extend(quadratic);
    linear
}

fn sample_family(f: &AffineFamily, count: usize, rng: &mut ChaCha8Rng) -> Result<Vec<SurdQuat>> {
    let k = f.dim();
    let mut out: Vec<SurdQuat> = Vec::new();
    if k == 0 {
        return if satisfies(f, &[]) {
            Ok(vec![f.base.lift()])
        } else {
            Err(Error::SamplerExhausted)
        };
    }
    if f.constraints.is_empty() {
        for _ in 0..BUDGET {
            if out.len() >= count {
                break;
            }
            let params: Vec<Rational> = (0..k).map(|_| small_rational(rng)).collect();
            push_distinct(&mut out, f.point_at(&params).lift());
        }
        return Ok(out);
    }
    let first = &f.constraints[0];
    let order = solve_order(first);
    if order.is_empty() {
        return Err(Error::SamplerExhausted);
    }
    let mut anchor: Option<Vec<Rational>> = None;
    for allow_surd in [false, true] {
        for attempt in 0..BUDGET {
            if out.len() >= count {
                return Ok(out);
            }
            // Once a rational point of a single quadric is known, lines
            // through it meet the quadric again at a rational point.
            if let (Some(p), 1) = (&anchor, f.constraints.len()) {
                if let Some(params) = second_intersection(first, p, rng) {
                    push_distinct(&mut out, f.point_at(&params).lift());
                    continue;
                }
            }
            let var = order[attempt % order.len()];
            let mut point: Vec<Rational> = (0..k).map(|_| small_rational(rng)).collect();
            point[var] = Rational::zero();
            let coeffs = restrict(first, &point, var);
            for t in univariate_roots(&coeffs, allow_surd) {
                let params: Vec<QuadraticSurd> = point
                    .iter()
                    .enumerate()
                    .map(|(i, p)| {
                        if i == var {
                            t.clone()
                        } else {
                            QuadraticSurd::from_rational(p.clone())
                        }
                    })
                    .collect();
                if !satisfies(f, &params) {
                    continue;
                }
                if anchor.is_none() {
                    if let Some(rational) = params.iter().map(|s| s.to_rational()).collect::<Option<Vec<_>>>() {
                        anchor = Some(rational);
                    }
                }
                push_distinct(&mut out, f.point_at(&params));
            }
        }
        if !out.is_empty() {
            break;
        }
    }
    if out.is_empty() {
        Err(Error::SamplerExhausted)
    } else {
        out.truncate(count);
        Ok(out)
    }
}

/// The other intersection of `q = 0` with a random line through its point `p`.
fn second_intersection(q: &Quadric, p: &[Rational], rng: &mut ChaCha8Rng) -> Option<Vec<Rational>> {
    let d: Vec<Rational> = (0..p.len()).map(|_| small_rational(rng)).collect();
    if d.iter().all(Zero::is_zero) {
        return None;
    }
    let r = q.pullback(p, std::slice::from_ref(&d));
    let (a, b) = (&r.quadratic_part()[0][0], &r.linear_part()[0]);
    let t = if a.is_zero() {
        if !b.is_zero() {
            return None;
        }
        // the whole line lies on the quadric
        small_rational(rng)
    } else {
        -b / a
    };
    Some(p.iter().zip(&d).map(|(pi, di)| pi + &t * di).collect())
}
