//! The Burniat polytopes.
//!
//! Free coordinates are `(a0,a1,a2,b0,b1,b2,c0,c1,c2)`; the exceptional
//! multiplicities are affine functionals of them:
//!
//! ```text
//! a3 = c0 + c1 + c2 + b0 - 1
//! b3 = a0 + a1 + a2 + c0 - 1
//! c3 = b0 + b1 + b2 + a0 - 1
//! ```
//!
//! The degree-6 polytope is the slice of the half cut of the
//! hypersimplex by `0 <= a3, b3, c3 <= 1/2`; lower degrees add one
//! exceptional functional `<= 0` per extra blown-up triple point. The
//! degree-4 incidence comes in a nodal and a non-nodal variant, and the
//! degree-3 triple-point pattern is the one that makes exactly the three
//! curves `A1, B1, C1` rigid; both are data here and can be overridden
//! by editing the form tables.

use std::collections::HashMap;

use exactpoly::format::LinExpr;
use exactpoly::polytope::Constraint;
use exactpoly::{PolyError, QPolytope, Scalar, Q};

pub const BURNIAT_VARS: [&str; 9] = ["a0", "a1", "a2", "b0", "b1", "b2", "c0", "c1", "c2"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    Nodal,
    NonNodal,
}

/// One of the ambients `bur6, bur5, bur4-nodal, bur4-nonnodal, bur3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BurniatAmbient {
    degree: u8,
    variant: Option<Variant>,
}

fn expr(terms: &[(&str, i64)], constant: i64) -> LinExpr<Q> {
    let mut e = LinExpr::constant_only(Q::from_int(constant));
    for (name, c) in terms {
        e.add_scaled(&LinExpr::var(name), &Q::from_int(*c));
    }
    e
}

impl BurniatAmbient {
    pub fn new(degree: u8, variant: Option<Variant>) -> Result<Self, PolyError> {
        match (degree, variant) {
            (3 | 5 | 6, None) => Ok(BurniatAmbient { degree, variant }),
            (4, Some(_)) => Ok(BurniatAmbient { degree, variant }),
            (4, None) => Err(PolyError::input(
                "degree 4 needs a variant (nodal or non-nodal)".to_string(),
            )),
            (3 | 5 | 6, Some(_)) => Err(PolyError::input(format!(
                "degree {degree} takes no variant"
            ))),
            _ => Err(PolyError::input(format!(
                "degree must be 3..=6, got {degree}"
            ))),
        }
    }

    pub fn from_name(name: &str) -> Result<Self, PolyError> {
        match name {
            "bur6" => Self::new(6, None),
            "bur5" => Self::new(5, None),
            "bur4-nodal" => Self::new(4, Some(Variant::Nodal)),
            "bur4-nonnodal" => Self::new(4, Some(Variant::NonNodal)),
            "bur3" => Self::new(3, None),
            other => Err(PolyError::input(format!(
                "unknown ambient `{other}` (expected bur6, bur5, bur4-nodal, bur4-nonnodal, bur3)"
            ))),
        }
    }

    pub fn name(&self) -> &'static str {
        match (self.degree, self.variant) {
            (6, _) => "bur6",
            (5, _) => "bur5",
            (4, Some(Variant::Nodal)) => "bur4-nodal",
            (4, Some(Variant::NonNodal)) => "bur4-nonnodal",
            _ => "bur3",
        }
    }

    pub fn degree(&self) -> u8 {
        self.degree
    }

    pub fn variant(&self) -> Option<Variant> {
        self.variant
    }

    pub fn vars() -> Vec<String> {
        BURNIAT_VARS.iter().map(|s| s.to_string()).collect()
    }

    /// The exceptional functionals `e*` of this ambient, each constrained
    /// to be `<= 0`, as (name, affine form) pairs.
    pub fn exceptional_forms(&self) -> Vec<(String, LinExpr<Q>)> {
        let e = |terms: &[(&str, i64)]| expr(terms, -1);
        match (self.degree, self.variant) {
            (6, _) => vec![],
            (5, _) => vec![("e".into(), e(&[("a1", 1), ("b1", 1), ("c1", 1)]))],
            (4, Some(Variant::Nodal)) => vec![
                ("e1".into(), e(&[("a1", 1), ("b1", 1), ("c1", 1)])),
                ("e2".into(), e(&[("a1", 1), ("b2", 1), ("c2", 1)])),
            ],
            (4, _) => vec![
                ("e1".into(), e(&[("a1", 1), ("b1", 1), ("c1", 1)])),
                ("e2".into(), e(&[("a2", 1), ("b2", 1), ("c2", 1)])),
            ],
            _ => vec![
                ("e1".into(), e(&[("a1", 1), ("b1", 1), ("c2", 1)])),
                ("e2".into(), e(&[("a1", 1), ("b2", 1), ("c1", 1)])),
                ("e3".into(), e(&[("a2", 1), ("b1", 1), ("c1", 1)])),
            ],
        }
    }

    /// Symbol table for constraint parsing in this ambient: the derived
    /// multiplicities `a3, b3, c3` and the exceptional functionals.
    pub fn substitutions(&self) -> HashMap<String, LinExpr<Q>> {
        let mut map = HashMap::new();
        map.insert(
            "a3".to_string(),
            expr(&[("c0", 1), ("c1", 1), ("c2", 1), ("b0", 1)], -1),
        );
        map.insert(
            "b3".to_string(),
            expr(&[("a0", 1), ("a1", 1), ("a2", 1), ("c0", 1)], -1),
        );
        map.insert(
            "c3".to_string(),
            expr(&[("b0", 1), ("b1", 1), ("b2", 1), ("a0", 1)], -1),
        );
        for (name, form) in self.exceptional_forms() {
            map.insert(name, form);
        }
        map
    }

    /// The ambient polytope.
    pub fn polytope(&self) -> QPolytope {
        let vars = Self::vars();
        let subs = self.substitutions();
        let mut p = QPolytope::whole_space(vars.clone()).expect("valid vars");
        let push = |p: &mut QPolytope, line: &str| {
            let c = exactpoly::format::parse_constraint_line::<Q>(line, &vars, &subs)
                .expect("ambient constraint");
            p.push(c).expect("aligned constraint");
        };
        push(&mut p, "a0 a1 a2 b0 b1 b2 c0 c1 c2 = 3");
        for v in BURNIAT_VARS {
            push(&mut p, &format!("0 <= {v}"));
            push(&mut p, &format!("{v} <= 1/2"));
        }
        for d in ["a3", "b3", "c3"] {
            push(&mut p, &format!("0 <= {d}"));
            push(&mut p, &format!("{d} <= 1/2"));
        }
        for (name, _) in self.exceptional_forms() {
            push(&mut p, &format!("{name} <= 0"));
        }
        p
    }

    /// All five ambients, degree-descending.
    pub fn all() -> Vec<BurniatAmbient> {
        vec![
            Self::new(6, None).unwrap(),
            Self::new(5, None).unwrap(),
            Self::new(4, Some(Variant::Nodal)).unwrap(),
            Self::new(4, Some(Variant::NonNodal)).unwrap(),
            Self::new(3, None).unwrap(),
        ]
    }
}

/// An affine self-map of the Burniat coordinate space, given by the
/// image expression of each variable.
pub struct CoordMap {
    pub images: Vec<LinExpr<Q>>,
}

impl CoordMap {
    fn from_pairs(pairs: &[(&str, LinExpr<Q>)]) -> CoordMap {
        let images = BURNIAT_VARS
            .iter()
            .map(|v| {
                pairs
                    .iter()
                    .find(|(name, _)| name == v)
                    .map(|(_, e)| e.clone())
                    .unwrap_or_else(|| LinExpr::var(v))
            })
            .collect();
        CoordMap { images }
    }

    /// The pullback `{x : M(x) in P}`; equals `P` iff `M` maps `P` onto
    /// itself (affine invertible maps).
    pub fn pullback(&self, p: &QPolytope) -> Result<QPolytope, PolyError> {
        let vars = BurniatAmbient::vars();
        let mut out = QPolytope::whole_space(vars.clone())?;
        for c in p.equalities().iter().chain(p.inequalities()) {
            let mut composed = LinExpr::constant_only(Q::from_int(0));
            for (i, coeff) in c.coeffs.iter().enumerate() {
                composed.add_scaled(&self.images[i], coeff);
            }
            let mut coeffs = vec![Q::from_int(0); vars.len()];
            for (name, v) in &composed.terms {
                let idx = vars.iter().position(|w| w == name).expect("burniat var");
                coeffs[idx] = coeffs[idx].clone() + v;
            }
            let rhs = c.rhs.clone() - composed.constant;
            out.push(Constraint::new(coeffs, rhs, c.relation)?)?;
        }
        Ok(out)
    }
}

/// Cyclic relabeling `a -> b -> c -> a` (same indices).
pub fn cyclic_map() -> CoordMap {
    let pairs: Vec<(&str, LinExpr<Q>)> = vec![
        ("b0", LinExpr::var("a0")),
        ("b1", LinExpr::var("a1")),
        ("b2", LinExpr::var("a2")),
        ("c0", LinExpr::var("b0")),
        ("c1", LinExpr::var("b1")),
        ("c2", LinExpr::var("b2")),
        ("a0", LinExpr::var("c0")),
        ("a1", LinExpr::var("c1")),
        ("a2", LinExpr::var("c2")),
    ];
    CoordMap::from_pairs(&pairs)
}

/// The quadratic-transformation relabeling that trades each triangle
/// side for the opposite exceptional multiplicity: `a0 <-> a3` and
/// cyclic analogues, which on the free coordinates is an affine map.
pub fn cremona_map() -> CoordMap {
    let pairs: Vec<(&str, LinExpr<Q>)> = vec![
        (
            "a0",
            expr(&[("c0", 1), ("c1", 1), ("c2", 1), ("b0", 1)], -1),
        ),
        (
            "b0",
            expr(&[("a0", 1), ("a1", 1), ("a2", 1), ("c0", 1)], -1),
        ),
        (
            "c0",
            expr(&[("b0", 1), ("b1", 1), ("b2", 1), ("a0", 1)], -1),
        ),
    ];
    CoordMap::from_pairs(&pairs)
}

/// The relabeling `c1 <-> c2` (all other coordinates fixed). Applied to
/// the degree-3 ambient it aligns its triple points with the degree-4
/// nodal pattern.
pub fn c_swap_map() -> CoordMap {
    let pairs: Vec<(&str, LinExpr<Q>)> = vec![
        ("c1", LinExpr::var("c2")),
        ("c2", LinExpr::var("c1")),
    ];
    CoordMap::from_pairs(&pairs)
}

/// The involution swapping the two marked triple points of a degree-4
/// ambient.
pub fn degree4_swap(variant: Variant) -> CoordMap {
    let mut pairs: Vec<(&str, LinExpr<Q>)> = vec![
        ("b1", LinExpr::var("b2")),
        ("b2", LinExpr::var("b1")),
        ("c1", LinExpr::var("c2")),
        ("c2", LinExpr::var("c1")),
    ];
    if variant == Variant::NonNodal {
        pairs.push(("a1", LinExpr::var("a2")));
        pairs.push(("a2", LinExpr::var("a1")));
    }
    CoordMap::from_pairs(&pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use exactpoly::num_traits::Zero;

    #[test]
    fn degree_six_constraint_count() {
        let p = BurniatAmbient::new(6, None).unwrap().polytope();
        assert_eq!(p.equalities().len(), 1);
        assert_eq!(p.inequalities().len(), 24);
        let third = vec![Q::fraction(1, 3); 9];
        assert!(p.satisfied_by(&third));
        assert_eq!(p.affine_dim(), 8);
    }

    #[test]
    fn lower_degrees_nest() {
        let bur6 = BurniatAmbient::from_name("bur6").unwrap().polytope();
        let bur5 = BurniatAmbient::from_name("bur5").unwrap().polytope();
        let nodal = BurniatAmbient::from_name("bur4-nodal").unwrap().polytope();
        let nonnodal = BurniatAmbient::from_name("bur4-nonnodal").unwrap().polytope();
        let bur3 = BurniatAmbient::from_name("bur3").unwrap().polytope();
        assert!(bur5.contains_in(&bur6).unwrap().holds());
        assert!(nodal.contains_in(&bur5).unwrap().holds());
        assert!(nonnodal.contains_in(&bur5).unwrap().holds());
        // The degree-3 triple points are labeled so that A1, B1, C1 are
        // the rigid curves; with those labels the polytope embeds in the
        // nodal degree-4 chain only after swapping c1 and c2.
        let swapped = c_swap_map().pullback(&bur3).unwrap();
        assert!(swapped.contains_in(&nodal).unwrap().holds());
        assert!(swapped.contains_in(&bur5).unwrap().holds());
        // Literal containment fails in both variants: a1 = b1 = c1 = 3/8
        // extends to a point of bur3.
        assert!(!bur3.contains_in(&nodal).unwrap().holds());
        assert!(!bur3.contains_in(&nonnodal).unwrap().holds());
    }

    #[test]
    fn every_ambient_is_full_dimensional() {
        for amb in BurniatAmbient::all() {
            let p = amb.polytope();
            assert_eq!(p.affine_dim(), 8, "{} degenerated", amb.name());
            let w = p.relint_point().expect("nonempty");
            for c in p.inequalities() {
                assert!(c.eval(&w) < c.rhs, "{}: boundary witness", amb.name());
            }
        }
    }

    #[test]
    fn variant_rules() {
        assert!(BurniatAmbient::new(4, None).is_err());
        assert!(BurniatAmbient::new(5, Some(Variant::Nodal)).is_err());
        assert!(BurniatAmbient::from_name("bur7").is_err());
    }

    #[test]
    fn interior_point_of_bur5_avoids_the_e_wall() {
        let p = BurniatAmbient::from_name("bur5").unwrap().polytope();
        let w = p.relint_point().unwrap();
        let e = w[1].clone() + &w[4] + &w[7] - Q::from_int(1);
        assert!(e < Q::zero(), "e-functional must be strictly negative");
    }

    #[test]
    fn symmetries_preserve_the_polytopes() {
        let bur5 = BurniatAmbient::from_name("bur5").unwrap().polytope();
        let bur6 = BurniatAmbient::from_name("bur6").unwrap().polytope();
        for (name, map) in [("cyclic", cyclic_map()), ("cremona", cremona_map())] {
            for (pname, p) in [("bur5", &bur5), ("bur6", &bur6)] {
                let pb = map.pullback(p).unwrap();
                assert!(
                    p.same_point_set(&pb).unwrap(),
                    "{name} does not preserve {pname}"
                );
            }
        }
        for variant in [Variant::Nodal, Variant::NonNodal] {
            let amb = BurniatAmbient::new(4, Some(variant)).unwrap();
            let p = amb.polytope();
            let pb = degree4_swap(variant).pullback(&p).unwrap();
            assert!(
                p.same_point_set(&pb).unwrap(),
                "swap does not preserve {}",
                amb.name()
            );
        }
    }
}
