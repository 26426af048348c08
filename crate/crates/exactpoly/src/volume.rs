//! Lattice-normalized volumes by exact triangulation.
//!
//! The volume of a polytope is measured inside its ambient affine
//! lattice: the equality system's homogeneous part is cleared to
//! integers, the kernel *lattice* basis is extracted by unimodular
//! column reduction, and vertex coordinates are rewritten in that basis.
//! The polytope is then triangulated by pulling (cone from an extreme
//! vertex over the facets of each face, recursively through the face
//! lattice, which is available exactly from the vertex/facet incidence)
//! and the simplex volumes `|det|` are summed. On lattice polytopes
//! this yields the usual `dim! * euclidean` normalized volume; the
//! result is independent of the pulling order, which the test suites
//! exercise by comparing the two built-in orders.

use std::collections::{BTreeSet, HashMap};
use std::rc::Rc;

use crate::dd;
use crate::error::PolyError;
use crate::linalg;
use crate::polytope::HPolytope;
use crate::scalar::Scalar;

/// Which vertex a face is coned from: the lexicographically smallest or
/// largest (by coordinates in the lattice basis).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PullOrder {
    Lex,
    RevLex,
}

pub fn normalized_volume<S: Scalar>(p: &HPolytope<S>) -> Result<S, PolyError> {
    normalized_volume_with_order(p, PullOrder::Lex)
}

pub fn normalized_volume_with_order<S: Scalar>(
    p: &HPolytope<S>,
    order: PullOrder,
) -> Result<S, PolyError> {
    if p.is_empty() {
        return Ok(S::zero());
    }
    p.check_bounded()?;

    // The ambient lattice is fixed by the declared equalities alone, so
    // pieces sharing an ambient get comparable volumes.
    let eq_rows: Vec<Vec<S>> = p
        .equalities()
        .iter()
        .map(|c| c.canonical().coeffs)
        .collect();
    let lattice = linalg::integer_kernel_lattice(&eq_rows, p.num_vars());
    let dim = lattice.len();
    if dim == 0 {
        // The equalities pin a single point and the polytope is nonempty.
        return Ok(S::one());
    }
    let adim = p.affine_dim();
    if adim < dim as i64 {
        return Ok(S::zero());
    }

    let x0 = p.relint_point().expect("nonempty polytope");
    let red = dd::reduce_with_basis(p, x0, lattice)?;
    if red.vertices.len() < dim + 1 {
        return Ok(S::zero());
    }

    // Vertex/facet incidence in y-coordinates.
    let tight_sets: Vec<Vec<u32>> = red
        .ineqs
        .iter()
        .map(|(a, b)| {
            red.vertices
                .iter()
                .enumerate()
                .filter(|(_, y)| {
                    let dot = a
                        .iter()
                        .zip(y.iter())
                        .fold(S::zero(), |acc, (ai, yi)| acc + ai.clone() * yi);
                    dot == *b
                })
                .map(|(i, _)| i as u32)
                .collect()
        })
        .collect();

    let mut by_coords: Vec<u32> = (0..red.vertices.len() as u32).collect();
    by_coords.sort_by(|&a, &b| red.vertices[a as usize].cmp(&red.vertices[b as usize]));
    let mut pull_rank = vec![0usize; red.vertices.len()];
    for (rank, &v) in by_coords.iter().enumerate() {
        pull_rank[v as usize] = match order {
            PullOrder::Lex => rank,
            PullOrder::RevLex => red.vertices.len() - 1 - rank,
        };
    }

    let mut tri = Triangulator {
        verts: &red.vertices,
        tight_sets,
        pull_rank,
        memo: HashMap::new(),
        rank_memo: HashMap::new(),
    };
    let all: Vec<u32> = (0..red.vertices.len() as u32).collect();
    let simplices = tri.triangulate(&all, dim);

    let mut total = S::zero();
    for simplex in simplices.iter() {
        let base = &red.vertices[simplex[0] as usize];
        let rows: Vec<Vec<S>> = simplex[1..]
            .iter()
            .map(|&v| {
                red.vertices[v as usize]
                    .iter()
                    .zip(base)
                    .map(|(a, b)| a.clone() - b)
                    .collect()
            })
            .collect();
        total = total + linalg::det(rows).abs();
    }
    Ok(total)
}

struct Triangulator<'a, S> {
    verts: &'a [Vec<S>],
    /// Per inequality: sorted vertex ids lying on it.
    tight_sets: Vec<Vec<u32>>,
    pull_rank: Vec<usize>,
    memo: HashMap<Vec<u32>, Rc<Vec<Vec<u32>>>>,
    rank_memo: HashMap<Vec<u32>, usize>,
}

impl<S: Scalar> Triangulator<'_, S> {
    fn affine_rank(&mut self, ids: &[u32]) -> usize {
        if let Some(&r) = self.rank_memo.get(ids) {
            return r;
        }
        let pts: Vec<Vec<S>> = ids.iter().map(|&i| self.verts[i as usize].clone()).collect();
        let r = linalg::affine_rank(&pts);
        self.rank_memo.insert(ids.to_vec(), r);
        r
    }

    /// Simplices (as vertex id lists) of the pulling triangulation of the
    /// face spanned by `face` (sorted ids) of dimension `dim`.
    fn triangulate(&mut self, face: &[u32], dim: usize) -> Rc<Vec<Vec<u32>>> {
        if let Some(hit) = self.memo.get(face) {
            return hit.clone();
        }
        let result = if face.len() == dim + 1 {
            Rc::new(vec![face.to_vec()])
        } else {
            let apex = *face
                .iter()
                .min_by_key(|&&v| self.pull_rank[v as usize])
                .expect("nonempty face");
            let mut subfacets: BTreeSet<Vec<u32>> = BTreeSet::new();
            for c in 0..self.tight_sets.len() {
                let sub = intersect_sorted(face, &self.tight_sets[c]);
                if sub.len() == face.len() || sub.len() < dim {
                    continue;
                }
                if self.affine_rank(&sub) == dim - 1 {
                    subfacets.insert(sub);
                }
            }
            let mut simplices = Vec::new();
            for sub in subfacets {
                if sub.binary_search(&apex).is_ok() {
                    continue;
                }
                let inner = self.triangulate(&sub, dim - 1);
                for s in inner.iter() {
                    let mut simplex = Vec::with_capacity(s.len() + 1);
                    simplex.push(apex);
                    simplex.extend_from_slice(s);
                    simplices.push(simplex);
                }
            }
            Rc::new(simplices)
        };
        self.memo.insert(face.to_vec(), result.clone());
        result
    }
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::{Constraint, Relation};
    use crate::Q;

    fn qi(v: i64) -> Q {
        Q::from_int(v)
    }

    #[test]
    fn standard_simplex_has_volume_one() {
        // Conv(0, e1, e2): x, y >= 0, x + y <= 1.
        let vars: Vec<String> = vec!["x".into(), "y".into()];
        let mut p = HPolytope::whole_space(vars).unwrap();
        p.push(Constraint::new(vec![qi(-1), qi(0)], qi(0), Relation::Le).unwrap())
            .unwrap();
        p.push(Constraint::new(vec![qi(0), qi(-1)], qi(0), Relation::Le).unwrap())
            .unwrap();
        p.push(Constraint::new(vec![qi(1), qi(1)], qi(1), Relation::Le).unwrap())
            .unwrap();
        assert_eq!(normalized_volume(&p).unwrap(), qi(1));
    }

    #[test]
    fn unit_cube_volume_is_factorial_normalized() {
        let vars: Vec<String> = vec!["x".into(), "y".into(), "z".into()];
        let mut p = HPolytope::whole_space(vars).unwrap();
        for i in 0..3 {
            let mut up = vec![qi(0); 3];
            up[i] = qi(1);
            p.push(Constraint::new(up.clone(), qi(1), Relation::Le).unwrap())
                .unwrap();
            let mut down = vec![qi(0); 3];
            down[i] = qi(-1);
            p.push(Constraint::new(down, qi(0), Relation::Le).unwrap())
                .unwrap();
        }
        // Euclidean volume 1, normalization 3! = 6.
        assert_eq!(normalized_volume(&p).unwrap(), qi(6));
        assert_eq!(
            normalized_volume_with_order(&p, PullOrder::RevLex).unwrap(),
            qi(6)
        );
    }

    #[test]
    fn lower_dimensional_piece_has_volume_zero() {
        let vars: Vec<String> = vec!["x".into(), "y".into()];
        let mut p = HPolytope::whole_space(vars).unwrap();
        p.push(Constraint::new(vec![qi(1), qi(0)], qi(1), Relation::Le).unwrap())
            .unwrap();
        p.push(Constraint::new(vec![qi(-1), qi(0)], qi(-1), Relation::Le).unwrap())
            .unwrap();
        p.push(Constraint::new(vec![qi(0), qi(1)], qi(1), Relation::Le).unwrap())
            .unwrap();
        p.push(Constraint::new(vec![qi(0), qi(-1)], qi(0), Relation::Le).unwrap())
            .unwrap();
        // x is pinned to 1 by inequalities only: affine dim 1 < lattice dim 2.
        assert_eq!(normalized_volume(&p).unwrap(), qi(0));
    }

    #[test]
    fn segment_against_equality_lattice() {
        // In the plane x + y = 1, the segment from (0,1) to (1,0) has
        // lattice length 1.
        let vars: Vec<String> = vec!["x".into(), "y".into()];
        let mut p = HPolytope::whole_space(vars).unwrap();
        p.push(Constraint::new(vec![qi(1), qi(1)], qi(1), Relation::Eq).unwrap())
            .unwrap();
        p.push(Constraint::new(vec![qi(-1), qi(0)], qi(0), Relation::Le).unwrap())
            .unwrap();
        p.push(Constraint::new(vec![qi(0), qi(-1)], qi(0), Relation::Le).unwrap())
            .unwrap();
        assert_eq!(normalized_volume(&p).unwrap(), qi(1));
    }

    #[test]
    fn point_against_point_lattice() {
        let vars: Vec<String> = vec!["x".into()];
        let mut p = HPolytope::whole_space(vars).unwrap();
        p.push(Constraint::new(vec![qi(1)], qi(7), Relation::Eq).unwrap())
            .unwrap();
        assert_eq!(normalized_volume(&p).unwrap(), qi(1));
    }
}
