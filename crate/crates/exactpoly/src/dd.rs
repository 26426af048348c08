//! Exact vertex enumeration by incremental halfspace insertion.
//!
//! The polytope is first projected onto a parametrization of its affine
//! hull (so the cut problem is full-dimensional and has a strictly
//! interior point), redundant inequalities are removed by one LP each,
//! and the remaining halfspaces are inserted one at a time into a
//! bounding box. Vertices are maintained together with their tight
//! constraint sets; two vertices on opposite sides of a new hyperplane
//! are joined by an edge iff their common tight set has rank `dim - 1`,
//! which is exact in rational arithmetic and needs no perturbation.

use crate::error::PolyError;
use crate::linalg;
use crate::lp::{self, LpOutcome, LpProblem};
use crate::polytope::HPolytope;
use crate::scalar::Scalar;

/// A full-dimensional reduction of a polytope to the coordinates of its
/// affine hull: `x = x0 + y . basis` with `y` ranging over `ineqs`.
pub(crate) struct Reduced<S> {
    pub x0: Vec<S>,
    /// Rows are basis vectors of the affine hull's direction space.
    pub basis: Vec<Vec<S>>,
    /// Irredundant inequality system in y-coordinates.
    pub ineqs: Vec<(Vec<S>, S)>,
    /// Vertices in y-coordinates, lexicographically sorted.
    pub vertices: Vec<Vec<S>>,
}

impl<S: Scalar> Reduced<S> {
    pub fn to_ambient(&self, y: &[S]) -> Vec<S> {
        let mut x = self.x0.clone();
        for (coef, bvec) in y.iter().zip(&self.basis) {
            for (xi, bi) in x.iter_mut().zip(bvec) {
                let delta = coef.clone() * bi;
                *xi = xi.clone() + delta;
            }
        }
        x
    }
}

struct Vertex<S> {
    y: Vec<S>,
    /// Sorted indices of tight constraints. Box bounds occupy `0..2d`,
    /// inserted halfspaces start at `2d`.
    tight: Vec<u32>,
}

fn intersect_sorted(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len().min(b.len()));
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Inner cutting loop over a full-dimensional bounded system with a
/// strictly interior origin. `ineqs` must be irredundant.
fn cut_vertices<S: Scalar>(
    dim: usize,
    ineqs: &[(Vec<S>, S)],
    lo: &[S],
    hi: &[S],
) -> Result<Vec<Vertex<S>>, PolyError> {
    if dim > 16 {
        return Err(PolyError::input(format!(
            "vertex enumeration limited to affine dimension <= 16, got {dim}"
        )));
    }
    // Normal vectors by constraint index: box bounds then halfspaces.
    let mut normals: Vec<Vec<S>> = Vec::with_capacity(2 * dim + ineqs.len());
    for j in 0..dim {
        let mut low = vec![S::zero(); dim];
        low[j] = -S::one();
        normals.push(low);
        let mut up = vec![S::zero(); dim];
        up[j] = S::one();
        normals.push(up);
    }
    for (a, _) in ineqs {
        normals.push(a.clone());
    }

    // Box corners.
    let mut verts: Vec<Vertex<S>> = Vec::with_capacity(1 << dim);
    for mask in 0u32..(1u32 << dim) {
        let mut y = Vec::with_capacity(dim);
        let mut tight = Vec::with_capacity(dim);
        for j in 0..dim {
            if mask >> j & 1 == 0 {
                y.push(lo[j].clone());
                tight.push(2 * j as u32);
            } else {
                y.push(hi[j].clone());
                tight.push(2 * j as u32 + 1);
            }
        }
        verts.push(Vertex { y, tight });
    }

    for (idx, (a, b)) in ineqs.iter().enumerate() {
        let cidx = (2 * dim + idx) as u32;
        let slack: Vec<S> = verts
            .iter()
            .map(|v| {
                let dot = a
                    .iter()
                    .zip(&v.y)
                    .fold(S::zero(), |acc, (ai, yi)| acc + ai.clone() * yi);
                b.clone() - dot
            })
            .collect();
        if slack.iter().all(|s| !s.is_negative()) {
            for (v, s) in verts.iter_mut().zip(&slack) {
                if s.is_zero() {
                    let pos = v.tight.binary_search(&cidx).unwrap_err();
                    v.tight.insert(pos, cidx);
                }
            }
            continue;
        }

        let mut next: Vec<Vertex<S>> = Vec::with_capacity(verts.len());
        let ins: Vec<usize> = (0..verts.len()).filter(|&i| slack[i].is_positive()).collect();
        let outs: Vec<usize> = (0..verts.len()).filter(|&i| slack[i].is_negative()).collect();
        for (i, v) in verts.iter().enumerate() {
            if slack[i].is_negative() {
                continue;
            }
            let mut keep = Vertex {
                y: v.y.clone(),
                tight: v.tight.clone(),
            };
            if slack[i].is_zero() {
                let pos = keep.tight.binary_search(&cidx).unwrap_err();
                keep.tight.insert(pos, cidx);
            }
            next.push(keep);
        }
        for &u in &ins {
            for &w in &outs {
                let common = intersect_sorted(&verts[u].tight, &verts[w].tight);
                if common.len() + 1 < dim {
                    continue;
                }
                let rows: Vec<Vec<S>> =
                    common.iter().map(|&c| normals[c as usize].clone()).collect();
                if linalg::rank(&rows) != dim - 1 {
                    continue;
                }
                // New vertex on the hyperplane, strictly between u and w.
                let denom = slack[u].clone() - &slack[w];
                let t = slack[u].clone() / &denom;
                let y: Vec<S> = verts[u]
                    .y
                    .iter()
                    .zip(&verts[w].y)
                    .map(|(yu, yw)| {
                        let step = t.clone() * &(yw.clone() - yu);
                        yu.clone() + step
                    })
                    .collect();
                let mut tight = common;
                let pos = tight.binary_search(&cidx).unwrap_err();
                tight.insert(pos, cidx);
                next.push(Vertex { y, tight });
            }
        }
        verts = next;
    }

    // The artificial box strictly contains the polytope, so no surviving
    // vertex may rest on it.
    let boxless = verts
        .iter()
        .all(|v| v.tight.iter().all(|&c| c as usize >= 2 * dim));
    debug_assert!(boxless, "vertex tight on the artificial bounding box");
    if !boxless {
        return Err(PolyError::input(
            "internal: unbounded direction survived the boundedness check".to_string(),
        ));
    }
    Ok(verts)
}

/// Reduces `p` to the affine hull spanned by `basis` around the relative
/// interior point `x0`, prunes redundant inequalities, and enumerates
/// vertices in y-coordinates.
pub(crate) fn reduce_with_basis<S: Scalar>(
    p: &HPolytope<S>,
    x0: Vec<S>,
    basis: Vec<Vec<S>>,
) -> Result<Reduced<S>, PolyError> {
    let dim = basis.len();
    debug_assert!(dim > 0);

    // Transform inequalities to y-space and drop the ones with zero normal
    // (valid on the whole hull).
    let mut seen = std::collections::HashSet::new();
    let mut ineqs: Vec<(Vec<S>, S)> = Vec::new();
    for c in p.inequalities() {
        let a: Vec<S> = basis
            .iter()
            .map(|bvec| {
                c.coeffs
                    .iter()
                    .zip(bvec)
                    .fold(S::zero(), |acc, (ci, bi)| acc + ci.clone() * bi)
            })
            .collect();
        if a.iter().all(S::is_zero) {
            continue;
        }
        let rhs = c.rhs.clone() - c.eval(&x0);
        // Dedup up to positive scaling.
        let lead = a
            .iter()
            .find(|v| !v.is_zero())
            .expect("nonzero row")
            .clone();
        let lead_abs = lead.abs();
        let key: Vec<String> = a
            .iter()
            .chain(std::iter::once(&rhs))
            .map(|v| (v.clone() / &lead_abs).to_string())
            .collect();
        if seen.insert(key) {
            ineqs.push((a, rhs));
        }
    }

    // Bounding box in y-space; also the boundedness verdict.
    let mut lo = Vec::with_capacity(dim);
    let mut hi = Vec::with_capacity(dim);
    for j in 0..dim {
        let mut dir = vec![S::zero(); dim];
        dir[j] = S::one();
        let up = lp::maximize(&LpProblem {
            num_vars: dim,
            objective: dir.clone(),
            eq: vec![],
            le: ineqs.clone(),
        });
        let LpOutcome::Optimal { value: max, .. } = up else {
            return Err(PolyError::Unbounded);
        };
        dir[j] = -S::one();
        let down = lp::maximize(&LpProblem {
            num_vars: dim,
            objective: dir,
            eq: vec![],
            le: ineqs.clone(),
        });
        let LpOutcome::Optimal { value: neg_min, .. } = down else {
            return Err(PolyError::Unbounded);
        };
        lo.push(-neg_min - S::one());
        hi.push(max + S::one());
    }

    // Redundancy removal: a constraint is kept iff the others do not
    // already imply it.
    let mut keep: Vec<bool> = vec![true; ineqs.len()];
    for i in 0..ineqs.len() {
        let le: Vec<(Vec<S>, S)> = ineqs
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i && keep[j])
            .map(|(_, c)| c.clone())
            .collect();
        let outcome = lp::maximize(&LpProblem {
            num_vars: dim,
            objective: ineqs[i].0.clone(),
            eq: vec![],
            le,
        });
        if let LpOutcome::Optimal { value, .. } = outcome {
            if value <= ineqs[i].1 {
                keep[i] = false;
            }
        }
    }
    let ineqs: Vec<(Vec<S>, S)> = ineqs
        .into_iter()
        .zip(keep)
        .filter_map(|(c, k)| k.then_some(c))
        .collect();

    let verts = cut_vertices(dim, &ineqs, &lo, &hi)?;
    let mut vertices: Vec<Vec<S>> = verts.into_iter().map(|v| v.y).collect();
    vertices.sort();
    Ok(Reduced {
        x0,
        basis,
        ineqs,
        vertices,
    })
}

/// All vertices of a bounded polytope, deduplicated and sorted; empty
/// iff the polytope is empty.
pub fn enumerate_vertices<S: Scalar>(p: &HPolytope<S>) -> Result<Vec<Vec<S>>, PolyError> {
    let Some(x0) = p.relint_point() else {
        return Ok(Vec::new());
    };
    p.check_bounded()?;
    let implicit = p.implicit_equalities();
    let mut normals: Vec<Vec<S>> = p.equalities().iter().map(|c| c.coeffs.clone()).collect();
    normals.extend(implicit.iter().map(|&i| p.inequalities()[i].coeffs.clone()));
    let basis = linalg::kernel_basis(&normals, p.num_vars());
    if basis.is_empty() {
        return Ok(vec![x0]);
    }
    let red = reduce_with_basis(p, x0, basis)?;
    let mut out: Vec<Vec<S>> = red.vertices.iter().map(|y| red.to_ambient(y)).collect();
    for v in &out {
        if !p.satisfied_by(v) {
            return Err(PolyError::input(
                "internal: enumerated vertex violates the system".to_string(),
            ));
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}
