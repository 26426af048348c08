//! Hypersimplices, weight cuts and point faces.
//!
//! The hypersimplex `D(r,n)` is `{0 <= x_i <= 1, sum x_i = r}`; cutting
//! it by a weight `b` gives `{x in D(r,n) : x_i <= b_i}`, the ambient of
//! every weighted-stable-pair region in this workspace. The face at a
//! point of a line arrangement pins `x_i = b_i` for every line through
//! the point.

use exactpoly::num_traits::{One, Zero};
use exactpoly::polytope::{Constraint, Relation};
use exactpoly::{PolyError, QPolytope, Scalar, Q};

/// A weight vector with `0 < b_i <= 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Weight(Vec<Q>);

impl Weight {
    pub fn new(entries: Vec<Q>) -> Result<Self, PolyError> {
        for (i, b) in entries.iter().enumerate() {
            if !(b > &Q::zero() && b <= &Q::one()) {
                return Err(PolyError::input(format!(
                    "weight entry {i} is {b}, outside (0, 1]"
                )));
            }
        }
        Ok(Weight(entries))
    }

    /// The all-halves weight on `n` entries.
    pub fn half(n: usize) -> Self {
        Weight(vec![Q::fraction(1, 2); n])
    }

    pub fn entries(&self) -> &[Q] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> Q {
        self.0.iter().fold(Q::zero(), |acc, b| acc + b)
    }
}

/// `D(r,n)` over variables `x1..xn`.
pub fn hypersimplex(r: usize, n: usize) -> Result<QPolytope, PolyError> {
    let vars = (1..=n).map(|i| format!("x{i}")).collect();
    hypersimplex_named(r, vars)
}

/// `D(r, vars.len())` over the given variable names.
pub fn hypersimplex_named(r: usize, vars: Vec<String>) -> Result<QPolytope, PolyError> {
    let n = vars.len();
    if r == 0 || r >= n {
        return Err(PolyError::input(format!(
            "hypersimplex needs 1 <= r < n, got r={r}, n={n}"
        )));
    }
    let mut p = QPolytope::whole_space(vars)?;
    p.push(Constraint::new(
        vec![Q::one(); n],
        Q::from_int(r as i64),
        Relation::Eq,
    )?)?;
    for i in 0..n {
        let mut up = vec![Q::zero(); n];
        up[i] = Q::one();
        p.push(Constraint::new(up, Q::one(), Relation::Le)?)?;
        let mut down = vec![Q::zero(); n];
        down[i] = -Q::one();
        p.push(Constraint::new(down, Q::zero(), Relation::Le)?)?;
    }
    Ok(p)
}

/// The weight cut `{x in delta : x_i <= b_i}`.
pub fn b_cut(delta: &QPolytope, w: &Weight) -> Result<QPolytope, PolyError> {
    let n = delta.num_vars();
    if w.len() != n {
        return Err(PolyError::input(format!(
            "weight has {} entries for {} variables",
            w.len(),
            n
        )));
    }
    let mut p = delta.clone();
    for (i, b) in w.entries().iter().enumerate() {
        let mut up = vec![Q::zero(); n];
        up[i] = Q::one();
        p.push(Constraint::new(up, b.clone(), Relation::Le)?)?;
    }
    Ok(p)
}

/// The (possibly empty) face of the cut where `x_i = b_i` for every
/// index in `incidence`.
pub fn face_at_point(
    delta_b: &QPolytope,
    incidence: &[usize],
    w: &Weight,
) -> Result<QPolytope, PolyError> {
    let n = delta_b.num_vars();
    if w.len() != n {
        return Err(PolyError::input(format!(
            "weight has {} entries for {} variables",
            w.len(),
            n
        )));
    }
    let mut p = delta_b.clone();
    for &i in incidence {
        if i >= n {
            return Err(PolyError::input(format!("incidence index {i} out of range")));
        }
        let mut row = vec![Q::zero(); n];
        row[i] = Q::one();
        p.push(Constraint::new(row, w.entries()[i].clone(), Relation::Eq)?)?;
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use exactpoly::{enumerate_vertices, normalized_volume};

    #[test]
    fn hypersimplex_shape() {
        let d = hypersimplex(3, 9).unwrap();
        assert_eq!(d.equalities().len(), 1);
        assert_eq!(d.inequalities().len(), 18);
        assert_eq!(d.affine_dim(), 8);
        assert!(hypersimplex(3, 3).is_err());
        assert!(hypersimplex(0, 3).is_err());
    }

    #[test]
    fn small_hypersimplex_vertices() {
        // D(1,3): the standard triangle.
        let d = hypersimplex(1, 3).unwrap();
        let v = enumerate_vertices(&d).unwrap();
        assert_eq!(v.len(), 3);
        for vert in &v {
            assert_eq!(vert.iter().filter(|x| x.is_one()).count(), 1);
        }
        // D(1,2): a segment.
        let seg = hypersimplex(1, 2).unwrap();
        assert_eq!(enumerate_vertices(&seg).unwrap().len(), 2);
        // D(2,4): the octahedron, 6 vertices, Eulerian volume A(3,1) = 4.
        let oct = hypersimplex(2, 4).unwrap();
        assert_eq!(enumerate_vertices(&oct).unwrap().len(), 6);
        assert_eq!(normalized_volume(&oct).unwrap(), Q::from_int(4));
    }

    #[test]
    fn trivial_weight_cut_is_identity() {
        let d = hypersimplex(2, 4).unwrap();
        let cut = b_cut(&d, &Weight::new(vec![Q::one(); 4]).unwrap()).unwrap();
        assert!(d.same_point_set(&cut).unwrap());
    }

    #[test]
    fn half_cut_of_d39_has_symmetric_interior_point() {
        let d = hypersimplex(3, 9).unwrap();
        let cut = b_cut(&d, &Weight::half(9)).unwrap();
        let third = vec![Q::fraction(1, 3); 9];
        assert!(cut.satisfied_by(&third));
        assert_eq!(cut.affine_dim(), 8);
    }

    #[test]
    fn weight_below_r_gives_empty_interior() {
        // D(2,3) cut at 1/2: the weight sum 3/2 < 2, so the cut is empty.
        let d = hypersimplex(2, 3).unwrap();
        let cut = b_cut(&d, &Weight::half(3)).unwrap();
        assert!(cut.is_empty());
    }

    #[test]
    fn face_saturation() {
        let d = hypersimplex(3, 9).unwrap();
        let w = Weight::half(9);
        let cut = b_cut(&d, &w).unwrap();
        // Empty incidence: the face is the cut itself.
        let f0 = face_at_point(&cut, &[], &w).unwrap();
        assert!(f0.same_point_set(&cut).unwrap());
        // Six pinned halves saturate the sum: all other coordinates zero.
        let f6 = face_at_point(&cut, &[0, 1, 2, 3, 4, 5], &w).unwrap();
        let verts = enumerate_vertices(&f6).unwrap();
        assert_eq!(verts.len(), 1);
        assert!(verts[0][6..].iter().all(Zero::is_zero));
        // Seven pinned halves exceed the sum: empty face.
        let f7 = face_at_point(&cut, &[0, 1, 2, 3, 4, 5, 6], &w).unwrap();
        assert!(f7.is_empty());
    }
}
