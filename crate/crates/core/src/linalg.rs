//! Exact Gaussian elimination over any [`Scalar`] field.

use crate::scalar::Scalar;

/// Reduces `m` (rows of equal length `ncols`) to reduced row echelon form and
/// returns the pivot column of each nonzero row.
pub fn rref<T: Scalar>(m: &mut Vec<Vec<T>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = T::one() / m[row][col].clone();
        for c in 0..ncols {
            m[row][c] = m[row][c].clone() * inv.clone();
        }
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in 0..ncols {
                    let delta = factor.clone() * m[row][c].clone();
                    m[r][c] = m[r][c].clone() - delta;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    m.truncate(pivots.len().max(row));
    pivots
}

pub fn rank<T: Scalar>(rows: &[Vec<T>], ncols: usize) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m, ncols).len()
}

/// Solution set of `A·s = b` for `A` with `ncols` columns, as a particular
/// solution plus a basis of the null space; `None` if inconsistent.
pub fn solve_affine<T: Scalar>(
    a: &[Vec<T>],
    b: &[T],
    ncols: usize,
) -> Option<(Vec<T>, Vec<Vec<T>>)> {
    let mut aug: Vec<Vec<T>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut particular = vec![T::zero(); ncols];
    for (r, &p) in pivots.iter().enumerate() {
        particular[p] = aug[r][ncols].clone();
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    let null = free
        .iter()
        .map(|&f| {
            let mut v = vec![T::zero(); ncols];
            v[f] = T::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -aug[r][f].clone();
            }
            v
        })
        .collect();
    Some((particular, null))
}

/// Indices of a maximal linearly independent prefix-greedy subset of `vectors`.
pub fn independent_subset<T: Scalar>(vectors: &[Vec<T>]) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    let mut rows: Vec<Vec<T>> = Vec::new();
    for (idx, v) in vectors.iter().enumerate() {
        let mut trial = rows.clone();
        trial.push(v.clone());
        if rank(&trial, v.len()) == trial.len() {
            rows = trial;
            chosen.push(idx);
        }
    }
    chosen
}
