//! Matroid base polytopes of arrangements.
//!
//! `BP = {x in D(r,n) : sum_{i in I} x_i <= codim of the I-intersection}`
//! with one constraint per closed flat whose rank binds. Constraints
//! implied by the rest are pruned by LP so the emitted system stays
//! readable.

use exactpoly::lp::LpOutcome;
use exactpoly::num_traits::Zero;
use exactpoly::polytope::{Constraint, Relation};
use exactpoly::{PolyError, QPolytope, Scalar, Q};

use crate::arrangement::ArrangementSpec;
use crate::hypersimplex::hypersimplex_named;

pub fn matroid_polytope(a: &ArrangementSpec) -> Result<QPolytope, PolyError> {
    let delta = hypersimplex_named(a.r(), a.names().to_vec())?;
    let n = a.n();
    let mut candidates: Vec<Constraint<Q>> = Vec::new();
    for flat in a.flats() {
        let mut coeffs = vec![Q::from_int(0); n];
        for &i in &flat.lines {
            coeffs[i] = Q::from_int(1);
        }
        candidates.push(Constraint::new(
            coeffs,
            Q::from_int(flat.rank as i64),
            Relation::Le,
        )?);
    }
    // Prune constraints already implied by the hypersimplex and the rest,
    // testing the weakest (largest flat) candidates first so the short
    // readable constraints survive.
    let mut order: Vec<usize> = (0..candidates.len()).collect();
    order.sort_by_key(|&i| {
        let c = &candidates[i];
        let support = c.coeffs.iter().filter(|v| !v.is_zero()).count();
        (std::cmp::Reverse(c.rhs.clone()), std::cmp::Reverse(support))
    });
    let mut keep = vec![true; candidates.len()];
    for &i in &order {
        let mut sys = delta.clone();
        for (j, c) in candidates.iter().enumerate() {
            if j != i && keep[j] {
                sys.push(c.clone())?;
            }
        }
        if let LpOutcome::Optimal { value, .. } = sys.maximize(candidates[i].coeffs.clone()) {
            if value <= candidates[i].rhs {
                keep[i] = false;
            }
        }
    }
    let mut bp = delta;
    for (c, k) in candidates.into_iter().zip(keep) {
        if k {
            bp.push(c)?;
        }
    }
    Ok(bp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::form_from_expr;
    use crate::hypersimplex::{hypersimplex, Weight};
    use exactpoly::num_traits::One;

    #[test]
    fn general_position_gives_the_whole_hypersimplex() {
        let names: Vec<String> = (1..=5).map(|k| format!("l{k}")).collect();
        let forms: Vec<Vec<Q>> = (1..=5i64)
            .map(|k| vec![Q::one(), Q::from_int(k), Q::from_int(k * k)])
            .collect();
        let a = ArrangementSpec::realized(names, forms, Weight::half(5), 3).unwrap();
        let bp = matroid_polytope(&a).unwrap();
        let delta = hypersimplex(3, 5).unwrap();
        // Same point set as D(3,5) even though variable names differ only
        // by construction path.
        assert_eq!(bp.inequalities().len(), delta.inequalities().len());
        assert_eq!(bp.affine_dim(), 4);
    }

    #[test]
    fn concurrent_triple_cuts_one_constraint() {
        // Four lines, three concurrent: D(3,4) with x1 + x2 + x3 <= 2.
        let exprs = ["x", "x - z", "x - 2 z", "y"];
        let forms: Vec<Vec<Q>> = exprs
            .iter()
            .map(|e| form_from_expr(e, &["x", "y", "z"]).unwrap())
            .collect();
        let names: Vec<String> = (1..=4).map(|k| format!("l{k}")).collect();
        let a = ArrangementSpec::realized(names, forms, Weight::half(4), 3).unwrap();
        let bp = matroid_polytope(&a).unwrap();
        // 8 box constraints + the flat constraint.
        assert_eq!(bp.inequalities().len(), 9);
        let flat_row = bp
            .inequalities()
            .iter()
            .find(|c| c.coeffs.iter().filter(|v| v.is_one()).count() == 3)
            .expect("flat constraint present");
        assert_eq!(flat_row.rhs, Q::from_int(2));
    }

    #[test]
    fn coincident_pair_gives_rank_one_constraint() {
        let c = ArrangementSpec::combinatorial(
            (1..=4).map(|k| format!("l{k}")).collect(),
            vec![vec![0, 1]],
            vec![],
            Weight::half(4),
        )
        .unwrap();
        let bp = matroid_polytope(&c).unwrap();
        let has_pair = bp.inequalities().iter().any(|cst| {
            cst.rhs == Q::one()
                && cst.coeffs.iter().filter(|v| v.is_one()).count() == 2
        });
        assert!(has_pair, "x1 + x2 <= 1 expected");
    }
}
