//! Exact dense linear algebra over the rationals, sized for the small
//! systems this crate solves (ambient dimension at most 6).

use num_traits::Zero;

use crate::rational::Rat;

/// Row-echelon reduction in place. Returns the pivot column of each
/// eliminated row (pivot list length = rank).
fn echelonize(rows: &mut [Vec<Rat>]) -> Vec<usize> {
    let nrows = rows.len();
    if nrows == 0 {
        return Vec::new();
    }
    let ncols = rows[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..nrows).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for v in rows[r].iter_mut().skip(c) {
            *v = &*v * &inv;
        }
        for i in 0..nrows {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in c..ncols {
                    let delta = &f * &rows[r][j];
                    rows[i][j] = &rows[i][j] - delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == nrows {
            break;
        }
    }
    pivots
}

/// Rank of the matrix given by `rows`.
pub fn rank(rows: &[Vec<Rat>]) -> usize {
    let mut m: Vec<Vec<Rat>> = rows.to_vec();
    echelonize(&mut m).len()
}

/// Solves the square-or-overdetermined system `rows * x = rhs` exactly.
/// Returns `None` when the system is inconsistent or underdetermined.
pub fn solve_unique(rows: &[Vec<Rat>], rhs: &[Rat]) -> Option<Vec<Rat>> {
    assert_eq!(rows.len(), rhs.len());
    if rows.is_empty() {
        return None;
    }
    let ncols = rows[0].len();
    let mut aug: Vec<Vec<Rat>> = rows
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut v = row.clone();
            v.push(b.clone());
            v
        })
        .collect();
    let pivots = echelonize(&mut aug);
    // inconsistent: a pivot in the rhs column
    if pivots.last().is_some_and(|&c| c == ncols) {
        return None;
    }
    if pivots.len() != ncols {
        return None; // underdetermined
    }
    let mut x = vec![Rat::zero(); ncols];
    for (row_idx, &col) in pivots.iter().enumerate() {
        x[col] = aug[row_idx][ncols].clone();
    }
    Some(x)
}

/// Basis of the (right) nullspace `{x : rows * x = 0}`.
pub fn nullspace(rows: &[Vec<Rat>], ncols: usize) -> Vec<Vec<Rat>> {
    let mut m: Vec<Vec<Rat>> = rows.to_vec();
    for row in &m {
        assert_eq!(row.len(), ncols);
    }
    let pivots = echelonize(&mut m);
    let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
    let free: Vec<usize> = (0..ncols).filter(|c| !pivot_set.contains(c)).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &f in &free {
        let mut v = vec![Rat::zero(); ncols];
        v[f] = Rat::from_integer(1.into());
        for (row_idx, &col) in pivots.iter().enumerate() {
            v[col] = -m[row_idx][f].clone();
        }
        basis.push(v);
    }
    basis
}

/// Dot product of two equal-length slices.
pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

use num_bigint::BigInt;

/// Integer dot product.
pub fn dot_int(a: &[BigInt], b: &[BigInt]) -> BigInt {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Determinant of a small square integer matrix by cofactor expansion
/// (sizes up to 6 in this crate).
pub fn det_int(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    match n {
        0 => BigInt::from(1),
        1 => m[0][0].clone(),
        2 => &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0],
        _ => {
            let mut acc = BigInt::from(0);
            for (j, top) in m[0].iter().enumerate() {
                if top.is_zero() {
                    continue;
                }
                let minor: Vec<Vec<BigInt>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(k, _)| *k != j)
                            .map(|(_, v)| v.clone())
                            .collect()
                    })
                    .collect();
                let term = top * det_int(&minor);
                if j % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            acc
        }
    }
}

/// Cramer solution of a square integer system: `(numerators, det)` with
/// `x_j = numerators[j] / det`, or `None` when the matrix is singular.
pub fn solve_square_int(
    rows: &[Vec<BigInt>],
    rhs: &[BigInt],
) -> Option<(Vec<BigInt>, BigInt)> {
    let n = rows.len();
    assert_eq!(n, rhs.len());
    let det = det_int(rows);
    if det.is_zero() {
        return None;
    }
    let mut nums = Vec::with_capacity(n);
    for col in 0..n {
        let replaced: Vec<Vec<BigInt>> = rows
            .iter()
            .enumerate()
            .map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .map(|(j, v)| if j == col { rhs[i].clone() } else { v.clone() })
                    .collect()
            })
            .collect();
        nums.push(det_int(&replaced));
    }
    Some((nums, det))
}

/// Kernel vector of a `(k-1) x k` integer matrix with full row rank: the
/// vector of signed maximal minors. Returns `None` when the rows are
/// dependent (every maximal minor vanishes).
pub fn kernel_vector_int(rows: &[Vec<BigInt>], ncols: usize) -> Option<Vec<BigInt>> {
    assert_eq!(rows.len() + 1, ncols);
    let mut v = Vec::with_capacity(ncols);
    let mut any_nonzero = false;
    for j in 0..ncols {
        let minor: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(k, _)| *k != j)
                    .map(|(_, val)| val.clone())
                    .collect()
            })
            .collect();
        let mut d = det_int(&minor);
        if j % 2 == 1 {
            d = -d;
        }
        if !d.is_zero() {
            any_nonzero = true;
        }
        v.push(d);
    }
    any_nonzero.then_some(v)
}
