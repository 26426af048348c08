//! Dense exact linear algebra on small matrices.
//!
//! Everything here is plain Gaussian elimination over the scalar field,
//! plus an integer column-echelon reduction used to extract kernel
//! *lattices* (the basis against which normalized volumes are measured).
//! Matrices are row-major `Vec<Vec<S>>` and stay small (at most a few
//! dozen rows over nine columns), so no pivoting strategy beyond "first
//! nonzero" is needed for exactness.

use crate::scalar::Scalar;

/// Rank of the row span.
pub fn rank<S: Scalar>(rows: &[Vec<S>]) -> usize {
    let mut m: Vec<Vec<S>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv_pivot = S::one() / m[r][c].clone();
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let factor = m[i][c].clone() * &inv_pivot;
                for j in c..cols {
                    let delta = factor.clone() * &m[r][j];
                    m[i][j] = m[i][j].clone() - delta;
                }
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// Affine rank of a point set: rank of the differences to the first point.
/// Empty input has affine rank 0 by convention (dimension -1 is the
/// caller's business).
pub fn affine_rank<S: Scalar>(points: &[Vec<S>]) -> usize {
    let Some((first, rest)) = points.split_first() else {
        return 0;
    };
    let diffs: Vec<Vec<S>> = rest
        .iter()
        .map(|p| {
            p.iter()
                .zip(first)
                .map(|(a, b)| a.clone() - b)
                .collect()
        })
        .collect();
    rank(&diffs)
}

/// Determinant of a square matrix by fraction elimination.
pub fn det<S: Scalar>(mut m: Vec<Vec<S>>) -> S {
    let n = m.len();
    debug_assert!(m.iter().all(|row| row.len() == n));
    let mut result = S::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return S::zero();
        };
        if p != c {
            m.swap(c, p);
            result = -result;
        }
        result = result * &m[c][c];
        let inv_pivot = S::one() / m[c][c].clone();
        for i in c + 1..n {
            if !m[i][c].is_zero() {
                let factor = m[i][c].clone() * &inv_pivot;
                for j in c..n {
                    let delta = factor.clone() * &m[c][j];
                    m[i][j] = m[i][j].clone() - delta;
                }
            }
        }
    }
    result
}

/// A basis (as rows) of the rational kernel `{x : rows * x = 0}` in an
/// `n`-dimensional ambient space.
pub fn kernel_basis<S: Scalar>(rows: &[Vec<S>], n: usize) -> Vec<Vec<S>> {
    // Reduced row echelon form, then read the free columns.
    let mut m: Vec<Vec<S>> = rows.iter().filter(|r| !r.is_empty()).cloned().collect();
    debug_assert!(m.iter().all(|row| row.len() == n));
    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv_pivot = S::one() / m[r][c].clone();
        for j in c..n {
            m[r][j] = m[r][j].clone() * &inv_pivot;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let factor = m[i][c].clone();
                for j in c..n {
                    let delta = factor.clone() * &m[r][j];
                    m[i][j] = m[i][j].clone() - delta;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    let mut basis = Vec::new();
    for c in 0..n {
        if pivot_cols.contains(&c) {
            continue;
        }
        let mut v = vec![S::zero(); n];
        v[c] = S::one();
        for (row_idx, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = -m[row_idx][c].clone();
        }
        basis.push(v);
    }
    basis
}

/// A basis (as rows) of the kernel *lattice* `{x in Z^n : rows * x = 0}`
/// of an integer matrix, via unimodular column reduction to echelon form.
///
/// Entries of `rows` must be integer-valued scalars; the returned basis
/// vectors are integer-valued. This is the Hermite-style reduction that
/// fixes the volume normalization for an ambient equality system.
pub fn integer_kernel_lattice<S: Scalar>(rows: &[Vec<S>], n: usize) -> Vec<Vec<S>> {
    debug_assert!(rows.iter().flatten().all(Scalar::is_integer));
    // u tracks column operations; columns of u that map to zero columns of w
    // form the lattice basis.
    let mut u: Vec<Vec<S>> = (0..n)
        .map(|i| {
            let mut row = vec![S::zero(); n];
            row[i] = S::one();
            row
        })
        .collect();
    let mut w: Vec<Vec<S>> = rows.to_vec();
    let m = w.len();

    let col_swap = |w: &mut Vec<Vec<S>>, u: &mut Vec<Vec<S>>, a: usize, b: usize| {
        for row in w.iter_mut() {
            row.swap(a, b);
        }
        for row in u.iter_mut() {
            row.swap(a, b);
        }
    };
    // col[b] -= q * col[a]
    let col_submul = |w: &mut Vec<Vec<S>>, u: &mut Vec<Vec<S>>, b: usize, q: &S, a: usize| {
        for row in w.iter_mut() {
            let delta = q.clone() * &row[a];
            row[b] = row[b].clone() - delta;
        }
        for row in u.iter_mut() {
            let delta = q.clone() * &row[a];
            row[b] = row[b].clone() - delta;
        }
    };

    let mut pivot = 0usize;
    for row in 0..m {
        if pivot == n {
            break;
        }
        loop {
            let best = (pivot..n)
                .filter(|&j| !w[row][j].is_zero())
                .min_by_key(|&j| w[row][j].abs());
            let Some(best) = best else {
                break; // no pivot in this row
            };
            if best != pivot {
                col_swap(&mut w, &mut u, best, pivot);
            }
            let mut pending = false;
            for j in pivot + 1..n {
                if w[row][j].is_zero() {
                    continue;
                }
                let q = (w[row][j].clone() / &w[row][pivot]).floor_int();
                if !q.is_zero() {
                    col_submul(&mut w, &mut u, j, &q, pivot);
                }
                if !w[row][j].is_zero() {
                    pending = true;
                }
            }
            if !pending {
                pivot += 1;
                break;
            }
        }
    }

    // Kernel columns are those with zeros in every processed row.
    let mut basis = Vec::new();
    for j in pivot..n {
        debug_assert!(w.iter().all(|row| row[j].is_zero()));
        basis.push(u.iter().map(|row| row[j].clone()).collect());
    }
    basis
}

/// Solves `basis^T * z = v` for `z`, where `basis` rows are linearly
/// independent vectors spanning a space containing `v`. Returns `None`
/// if `v` is not in the span.
pub fn coordinates_in_basis<S: Scalar>(basis: &[Vec<S>], v: &[S]) -> Option<Vec<S>> {
    let d = basis.len();
    let n = v.len();
    // Augmented system over the n ambient coordinates.
    let mut m: Vec<Vec<S>> = (0..n)
        .map(|i| {
            let mut row: Vec<S> = basis.iter().map(|b| b[i].clone()).collect();
            row.push(v[i].clone());
            row
        })
        .collect();
    let mut pivot_rows = Vec::new();
    let mut r = 0;
    for c in 0..d {
        let p = (r..n).find(|&i| !m[i][c].is_zero())?;
        m.swap(r, p);
        let inv_pivot = S::one() / m[r][c].clone();
        for j in c..=d {
            m[r][j] = m[r][j].clone() * &inv_pivot;
        }
        for i in 0..n {
            if i != r && !m[i][c].is_zero() {
                let factor = m[i][c].clone();
                for j in c..=d {
                    let delta = factor.clone() * &m[r][j];
                    m[i][j] = m[i][j].clone() - delta;
                }
            }
        }
        pivot_rows.push(r);
        r += 1;
    }
    // Consistency: all remaining rows must have zero rhs.
    for i in r..n {
        if !m[i][d].is_zero() {
            return None;
        }
    }
    Some((0..d).map(|c| m[c][d].clone()).collect())
}
