//! Log-canonicity and stability of weighted arrangements.
//!
//! A weighted arrangement is lc iff at every flat of codimension `k`
//! the weights of the lines through it sum to at most `k` (equality is
//! still lc; strict inequality everywhere is klt). Stability adds
//! `sum b_i > r`. The polytope-side test for lc-ness at a single point
//! intersects the matroid polytope with the face of the weight cut
//! pinned at that point; the two routes agree, which the suites check
//! exhaustively over the arrangement corpus.

use exactpoly::num_traits::{One, Zero};
use exactpoly::{PolyError, QPolytope, Scalar, Q};

use crate::arrangement::ArrangementSpec;
use crate::hypersimplex::{b_cut, face_at_point, hypersimplex_named};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LcVerdict {
    Lc,
    Violation {
        lines: Vec<usize>,
        sum: Q,
        codim: usize,
    },
}

impl LcVerdict {
    pub fn is_lc(&self) -> bool {
        matches!(self, LcVerdict::Lc)
    }
}

/// The flat-by-flat lc test for the weight-like vector `x`.
pub fn is_lc(a: &ArrangementSpec, x: &[Q]) -> Result<LcVerdict, PolyError> {
    if x.len() != a.n() {
        return Err(PolyError::input(format!(
            "weight vector has {} entries for {} lines",
            x.len(),
            a.n()
        )));
    }
    for (i, xi) in x.iter().enumerate() {
        if xi > &Q::one() {
            return Ok(LcVerdict::Violation {
                lines: vec![i],
                sum: xi.clone(),
                codim: 1,
            });
        }
    }
    for flat in a.flats() {
        let sum: Q = flat.lines.iter().fold(Q::zero(), |acc, &i| acc + &x[i]);
        if sum > Q::from_int(flat.rank as i64) {
            return Ok(LcVerdict::Violation {
                lines: flat.lines,
                sum,
                codim: flat.rank,
            });
        }
    }
    Ok(LcVerdict::Lc)
}

/// The lc test restricted to a single point: only flats through the
/// point contribute (`r = 3`: the coincidence classes inside `I(p)` and
/// `I(p)` itself).
pub fn is_lc_at_point(
    a: &ArrangementSpec,
    x: &[Q],
    point_lines: &[usize],
) -> Result<LcVerdict, PolyError> {
    if x.len() != a.n() {
        return Err(PolyError::input(format!(
            "weight vector has {} entries for {} lines",
            x.len(),
            a.n()
        )));
    }
    for &i in point_lines {
        if x[i] > Q::one() {
            return Ok(LcVerdict::Violation {
                lines: vec![i],
                sum: x[i].clone(),
                codim: 1,
            });
        }
    }
    // Rank-1 sub-flats: coincidence classes within the bundle.
    let mut remaining: Vec<usize> = point_lines.to_vec();
    while let Some(&seed) = remaining.first() {
        let class: Vec<usize> = point_lines
            .iter()
            .copied()
            .filter(|&j| a.rank(&[seed, j]) == 1 || j == seed)
            .collect();
        if class.len() >= 2 {
            let sum: Q = class.iter().fold(Q::zero(), |acc, &i| acc + &x[i]);
            if sum > Q::one() {
                return Ok(LcVerdict::Violation {
                    lines: class,
                    sum,
                    codim: 1,
                });
            }
        }
        remaining.retain(|j| !class.contains(j));
    }
    let sum: Q = point_lines.iter().fold(Q::zero(), |acc, &i| acc + &x[i]);
    if sum > Q::from_int(2) {
        return Ok(LcVerdict::Violation {
            lines: point_lines.to_vec(),
            sum,
            codim: 2,
        });
    }
    Ok(LcVerdict::Lc)
}

/// Stable iff lc at the declared weight and `sum b_i > r`.
pub fn is_stable(a: &ArrangementSpec) -> Result<bool, PolyError> {
    let lc = is_lc(a, a.weight().entries())?;
    Ok(lc.is_lc() && a.weight().sum() > Q::from_int(a.r() as i64))
}

/// The polytope-side lc-at-a-point criterion: nonemptiness of
/// `BP ∩ (face of the weight cut pinned on the point's lines)`.
///
/// Requires the arrangement to be of general type (`sum b_i > r`) and
/// `BP ∩ Δ_b` nonempty; both hypotheses are checked.
pub fn lc_at_point_via_polytope(
    a: &ArrangementSpec,
    bp: &QPolytope,
    point_lines: &[usize],
) -> Result<bool, PolyError> {
    if a.weight().sum() <= Q::from_int(a.r() as i64) {
        return Err(PolyError::input(
            "theorem hypothesis violated: weight sum must exceed r".to_string(),
        ));
    }
    let delta = hypersimplex_named(a.r(), a.names().to_vec())?;
    let cut = b_cut(&delta, a.weight())?;
    if bp.intersect(&cut)?.is_empty() {
        return Err(PolyError::input(
            "theorem hypothesis violated: BP does not meet the weight cut".to_string(),
        ));
    }
    let face = face_at_point(&cut, point_lines, a.weight())?;
    Ok(!bp.intersect(&face)?.is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::form_from_expr;
    use crate::hypersimplex::Weight;

    fn lines(names: &[&str], exprs: &[&str]) -> ArrangementSpec {
        let forms = exprs
            .iter()
            .map(|e| form_from_expr(e, &["x", "y", "z"]).unwrap())
            .collect();
        ArrangementSpec::realized(
            names.iter().map(|s| s.to_string()).collect(),
            forms,
            Weight::half(names.len()),
            3,
        )
        .unwrap()
    }

    /// Nine lines in general position: x+ky+k^2z for k = 1..9 stays free
    /// of triple points (Vandermonde).
    fn general_nine() -> ArrangementSpec {
        let names: Vec<String> = (1..=9).map(|k| format!("l{k}")).collect();
        let forms: Vec<Vec<Q>> = (1..=9i64)
            .map(|k| {
                vec![
                    Q::from_int(1),
                    Q::from_int(k),
                    Q::from_int(k * k),
                ]
            })
            .collect();
        ArrangementSpec::realized(names, forms, Weight::half(9), 3).unwrap()
    }

    #[test]
    fn general_position_is_stable() {
        let a = general_nine();
        assert!(is_lc(&a, a.weight().entries()).unwrap().is_lc());
        assert!(is_stable(&a).unwrap());
    }

    #[test]
    fn six_general_lines_fail_the_degree_condition() {
        let names: Vec<String> = (1..=6).map(|k| format!("l{k}")).collect();
        let forms: Vec<Vec<Q>> = (1..=6i64)
            .map(|k| vec![Q::from_int(1), Q::from_int(k), Q::from_int(k * k)])
            .collect();
        let a = ArrangementSpec::realized(names, forms, Weight::half(6), 3).unwrap();
        assert!(is_lc(&a, a.weight().entries()).unwrap().is_lc());
        assert!(!is_stable(&a).unwrap());
    }

    #[test]
    fn five_concurrent_halves_violate() {
        // Five lines through (0:0:1) plus four generic ones.
        let mut exprs: Vec<String> = (1..=5).map(|k| format!("x - {k} y")).collect();
        exprs.push("z".to_string());
        exprs.push("x + y + z".to_string());
        exprs.push("x + 2 y + 7 z".to_string());
        exprs.push("x + 3 y + 11 z".to_string());
        let names: Vec<&str> = vec!["m1", "m2", "m3", "m4", "m5", "g1", "g2", "g3", "g4"];
        let refs: Vec<&str> = exprs.iter().map(String::as_str).collect();
        let a = lines(&names, &refs);
        match is_lc(&a, a.weight().entries()).unwrap() {
            LcVerdict::Violation { lines, sum, codim } => {
                assert_eq!(lines.len(), 5);
                assert_eq!(sum, Q::fraction(5, 2));
                assert_eq!(codim, 2);
            }
            LcVerdict::Lc => panic!("five concurrent half-lines must violate"),
        }
        assert!(!is_stable(&a).unwrap());
    }

    #[test]
    fn triple_point_at_half_weights_is_lc() {
        // Triangle plus a concurrent triple: sum 3/2 <= 2 at the triple point.
        let a = lines(
            &["a0", "b0", "c0", "a1", "b1", "c1", "g1"],
            &[
                "x",
                "y",
                "z",
                "x - z",
                "x - y",
                "y - z",
                "x + 5 y + 31 z",
            ],
        );
        // a1, b1, c1 meet at (1:1:1).
        assert_eq!(a.rank(&[3, 4, 5]), 2);
        assert!(is_lc(&a, a.weight().entries()).unwrap().is_lc());
    }

    #[test]
    fn polytope_route_matches_direct_route() {
        let a = lines(
            &["a0", "b0", "c0", "a1", "b1", "c1", "g1"],
            &[
                "x",
                "y",
                "z",
                "x - z",
                "x - y",
                "y - z",
                "x + 5 y + 31 z",
            ],
        );
        let bp = crate::matroid::matroid_polytope(&a).unwrap();
        for point in a.multiple_points().unwrap() {
            let direct = is_lc_at_point(&a, a.weight().entries(), &point)
                .unwrap()
                .is_lc();
            let via = lc_at_point_via_polytope(&a, &bp, &point).unwrap();
            assert_eq!(direct, via, "disagreement at point {point:?}");
        }
    }

    #[test]
    fn empty_incidence_is_lc_when_bp_meets_cut() {
        let a = general_nine();
        let bp = crate::matroid::matroid_polytope(&a).unwrap();
        assert!(lc_at_point_via_polytope(&a, &bp, &[]).unwrap());
    }

    #[test]
    fn seven_fold_point_fails_both_routes() {
        let mut exprs: Vec<String> = (1..=7).map(|k| format!("x - {k} y")).collect();
        exprs.push("z".to_string());
        exprs.push("x + y + z".to_string());
        let names: Vec<&str> = vec!["m1", "m2", "m3", "m4", "m5", "m6", "m7", "g1", "g2"];
        let refs: Vec<&str> = exprs.iter().map(String::as_str).collect();
        let a = lines(&names, &refs);
        let bp = crate::matroid::matroid_polytope(&a).unwrap();
        let point: Vec<usize> = (0..7).collect();
        assert!(!is_lc_at_point(&a, a.weight().entries(), &point)
            .unwrap()
            .is_lc());
        assert!(!lc_at_point_via_polytope(&a, &bp, &point).unwrap());
    }
}
