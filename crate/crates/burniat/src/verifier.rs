//! Tiling verification: relevance, exact volume accounting, and
//! witness extraction.
//!
//! A tiling is valid iff the piece volumes (inside the ambient) add up
//! to the ambient volume and every pairwise overlap has measure zero.
//! Coverage is certified by exact volume arithmetic rather than chamber
//! enumeration; chambers survive only as a low-dimensional cross-check
//! oracle in the test suites. On failure the verifier produces a
//! rational point: in an uncovered region (gap) or in the interior of a
//! two-piece overlap.

use std::collections::{BTreeSet, HashMap};
use std::sync::{Mutex, OnceLock};

use exactpoly::polytope::Constraint;
use exactpoly::{normalized_volume, Feasibility, PolyError, QPolytope, Scalar, Q};
use rayon::prelude::*;

use crate::tiling::TilingSpec;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoverOutcome {
    Valid,
    Gap { witness: Vec<Q> },
    Overlap { i: usize, j: usize, witness: Vec<Q> },
}

#[derive(Clone, Debug)]
pub struct TilingReport {
    pub tiling: String,
    pub ambient: String,
    /// Piece name and a relative-interior witness when the piece is
    /// relevant.
    pub relevance: Vec<(String, Option<Vec<Q>>)>,
    pub piece_volumes: Vec<(String, Q)>,
    pub total: Q,
    pub ambient_volume: Q,
    pub outcome: CoverOutcome,
}

impl TilingReport {
    pub fn is_valid(&self) -> bool {
        self.outcome == CoverOutcome::Valid
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("tiling {} ambient={}\n", self.tiling, self.ambient);
        for (name, witness) in &self.relevance {
            match witness {
                Some(w) => out.push_str(&format!(
                    "piece {name} relevant witness={}\n",
                    point_text(w)
                )),
                None => out.push_str(&format!("piece {name} irrelevant\n")),
            }
        }
        for (name, vol) in &self.piece_volumes {
            out.push_str(&format!("piece {name} volume {vol}\n"));
        }
        out.push_str(&format!("TOTAL {}\n", self.total));
        out.push_str(&format!("AMBIENT {}\n", self.ambient_volume));
        match &self.outcome {
            CoverOutcome::Valid => out.push_str("VALID\n"),
            CoverOutcome::Gap { witness } => {
                out.push_str(&format!("GAP {}\n", point_text(witness)))
            }
            CoverOutcome::Overlap { i, j, witness } => out.push_str(&format!(
                "OVERLAP {} {} {}\n",
                i,
                j,
                point_text(witness)
            )),
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let verdict = match &self.outcome {
            CoverOutcome::Valid => serde_json::json!({ "kind": "VALID" }),
            CoverOutcome::Gap { witness } => serde_json::json!({
                "kind": "GAP",
                "witness": point_json(witness),
            }),
            CoverOutcome::Overlap { i, j, witness } => serde_json::json!({
                "kind": "OVERLAP",
                "pieces": [i, j],
                "witness": point_json(witness),
            }),
        };
        serde_json::json!({
            "tiling": self.tiling,
            "ambient": self.ambient,
            "relevance": self
                .relevance
                .iter()
                .map(|(name, w)| {
                    serde_json::json!({
                        "piece": name,
                        "relevant": w.is_some(),
                        "witness": w.as_ref().map(|w| point_json(w)),
                    })
                })
                .collect::<Vec<_>>(),
            "volumes": self
                .piece_volumes
                .iter()
                .map(|(name, v)| serde_json::json!({ "piece": name, "volume": v.to_string() }))
                .collect::<Vec<_>>(),
            "total": self.total.to_string(),
            "ambient_volume": self.ambient_volume.to_string(),
            "verdict": verdict,
        })
    }
}

pub fn point_text(p: &[Q]) -> String {
    let coords: Vec<String> = p.iter().map(Q::to_string).collect();
    format!("({})", coords.join(","))
}

fn point_json(p: &[Q]) -> Vec<String> {
    p.iter().map(Q::to_string).collect()
}

/// Relevance of each piece: a witness in `piece ∩ relint(ambient)` or an
/// exact infeasibility verdict.
pub fn check_piece_relevance(
    t: &TilingSpec,
) -> Result<Vec<(String, Option<Vec<Q>>)>, PolyError> {
    (0..t.pieces.len())
        .map(|idx| {
            Ok((
                t.pieces[idx].name.clone(),
                t.piece_meets_ambient_interior(idx)?,
            ))
        })
        .collect()
}

/// A point with every rank-adding inequality strict, i.e. a witness that
/// the polytope is full-dimensional inside its equality hull. Treats
/// inequalities parallel to the hull (zero rank contribution) as
/// hull-wide facts rather than strictness targets.
fn full_dim_witness(p: &QPolytope) -> Result<Option<Vec<Q>>, PolyError> {
    let eq_rows: Vec<Vec<Q>> = p.equalities().iter().map(|c| c.coeffs.clone()).collect();
    let base_rank = exactpoly::linalg::rank(&eq_rows);
    let strict: Vec<usize> = p
        .inequalities()
        .iter()
        .enumerate()
        .filter(|(_, c)| {
            let mut rows = eq_rows.clone();
            rows.push(c.coeffs.clone());
            exactpoly::linalg::rank(&rows) > base_rank
        })
        .map(|(i, _)| i)
        .collect();
    Ok(match p.feasible_point_strict(&strict)? {
        Feasibility::Witness(w) => Some(w),
        Feasibility::Infeasible => None,
    })
}

static VOLUME_CACHE: OnceLock<Mutex<HashMap<String, Q>>> = OnceLock::new();

/// Volume with a global cache keyed by the canonical constraint system;
/// tilings share pieces and ambients, so this saves real work.
fn cached_volume(p: &QPolytope) -> Result<Q, PolyError> {
    let mut key_parts: BTreeSet<String> = BTreeSet::new();
    for c in p.equalities().iter().chain(p.inequalities()) {
        key_parts.insert(exactpoly::format::serialize_constraint(c, p.vars()));
    }
    let key = format!("{}|{}", p.vars().join(" "), key_parts.into_iter().collect::<Vec<_>>().join(";"));
    let cache = VOLUME_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&key) {
        return Ok(hit.clone());
    }
    let vol = normalized_volume(p)?;
    cache.lock().unwrap().insert(key, vol.clone());
    Ok(vol)
}

/// The full verification pipeline for one tiling: relevance, pairwise
/// interior disjointness, exact volume ledger, and on failure a rational
/// witness (which re-validates against the raw systems).
pub fn verify_tiling(t: &TilingSpec) -> Result<TilingReport, PolyError> {
    let ambient_poly = t.ambient.polytope();
    let relevance = check_piece_relevance(t)?;

    // Pairwise overlaps first: they are cheap LP decisions.
    let mut outcome = None;
    'outer: for i in 0..t.pieces.len() {
        for j in i + 1..t.pieces.len() {
            let mut sys = t.piece_in_ambient(i)?;
            for c in &t.pieces[j].ineqs {
                sys.push(c.clone())?;
            }
            if let Some(witness) = full_dim_witness(&sys)? {
                debug_assert!(sys.satisfied_by(&witness));
                outcome = Some(CoverOutcome::Overlap { i, j, witness });
                break 'outer;
            }
        }
    }

    let ambient_volume = cached_volume(&ambient_poly)?;
    let piece_volumes: Vec<(String, Q)> = (0..t.pieces.len())
        .into_par_iter()
        .map(|idx| {
            let sys = t.piece_in_ambient(idx)?;
            Ok((t.pieces[idx].name.clone(), cached_volume(&sys)?))
        })
        .collect::<Result<_, PolyError>>()?;
    let total: Q = piece_volumes
        .iter()
        .fold(Q::from_int(0), |acc, (_, v)| acc + v);

    let outcome = match outcome {
        Some(o) => o,
        None if total == ambient_volume => CoverOutcome::Valid,
        None => {
            if total > ambient_volume {
                // Interior-disjoint pieces cannot overshoot the ambient.
                return Err(PolyError::input(
                    "internal: volume total exceeds ambient with measure-zero overlaps"
                        .to_string(),
                ));
            }
            let witness = find_gap_witness(t, &ambient_poly)?.ok_or_else(|| {
                PolyError::input(
                    "internal: volume deficit but no gap witness found".to_string(),
                )
            })?;
            debug_assert!(ambient_poly.satisfied_by(&witness));
            CoverOutcome::Gap { witness }
        }
    };

    Ok(TilingReport {
        tiling: t.name.clone(),
        ambient: t.ambient.name().to_string(),
        relevance,
        piece_volumes,
        total,
        ambient_volume,
        outcome,
    })
}

/// Refines the ambient along piece facets until a full-dimensional cell
/// disjoint from every piece turns up. Only called when the volume
/// ledger already proves such a cell exists.
fn find_gap_witness(
    t: &TilingSpec,
    ambient_poly: &QPolytope,
) -> Result<Option<Vec<Q>>, PolyError> {
    struct PieceState {
        undecided: Vec<Constraint<Q>>,
        excluded: bool,
    }
    // Inside the ambient a piece is just its extra inequalities: the
    // hypersimplex part holds on the whole ambient.
    let mut states: Vec<PieceState> = t
        .pieces
        .iter()
        .map(|p| PieceState {
            undecided: p.ineqs.clone(),
            excluded: false,
        })
        .collect();

    fn dfs(
        cell: &QPolytope,
        states: &mut Vec<PieceState>,
        budget: &mut usize,
    ) -> Result<Option<Vec<Q>>, PolyError> {
        if *budget == 0 {
            return Err(PolyError::input(
                "gap witness search exceeded its budget".to_string(),
            ));
        }
        *budget -= 1;
        if states.iter().all(|s| s.excluded) {
            return full_dim_witness(cell);
        }
        if states
            .iter()
            .any(|s| !s.excluded && s.undecided.is_empty())
        {
            return Ok(None); // cell covered by a piece
        }
        let (pidx, constraint) = states
            .iter()
            .enumerate()
            .find_map(|(i, s)| {
                (!s.excluded && !s.undecided.is_empty())
                    .then(|| (i, s.undecided[0].clone()))
            })
            .expect("some piece undecided");
        let _ = pidx;

        // Which pieces carry this same constraint?
        let canon = constraint.canonical();
        let carrying: Vec<usize> = states
            .iter()
            .enumerate()
            .filter(|(_, s)| {
                !s.excluded && s.undecided.iter().any(|c| c.canonical() == canon)
            })
            .map(|(i, _)| i)
            .collect();

        // Branch 1: inside the halfspace. The carrying pieces get the
        // constraint marked as decided.
        {
            let mut inside = cell.clone();
            inside.push(constraint.clone())?;
            if full_dim_witness(&inside)?.is_some() {
                for &i in &carrying {
                    states[i].undecided.retain(|c| c.canonical() != canon);
                }
                let hit = dfs(&inside, states, budget)?;
                for &i in &carrying {
                    states[i].undecided.push(constraint.clone());
                }
                if hit.is_some() {
                    return Ok(hit);
                }
            }
        }
        // Branch 2: strictly outside; the carrying pieces are excluded.
        {
            let flipped = Constraint::new(
                constraint.coeffs.iter().map(|c| -c.clone()).collect(),
                -constraint.rhs.clone(),
                constraint.relation,
            )
            .expect("nonzero constraint");
            let mut outside = cell.clone();
            outside.push(flipped)?;
            if full_dim_witness(&outside)?.is_some() {
                for &i in &carrying {
                    states[i].excluded = true;
                }
                let hit = dfs(&outside, states, budget)?;
                for &i in &carrying {
                    states[i].excluded = false;
                }
                if hit.is_some() {
                    return Ok(hit);
                }
            }
        }
        Ok(None)
    }

    let mut budget = 200_000usize;
    dfs(ambient_poly, &mut states, &mut budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tiling::parse_tilings;

    #[test]
    fn single_covering_piece_is_valid() {
        // a1+a2+b1+b2+c1 <= 2 holds on all of bur5, so one piece tiles it.
        let ts =
            parse_tilings("tiling whole ambient=bur5\npiece P: a1 a2 b1 b2 c1 <= 2\n").unwrap();
        let report = verify_tiling(&ts[0]).unwrap();
        assert!(report.is_valid(), "report:\n{}", report.to_text());
        assert_eq!(report.total, report.ambient_volume);
    }

    #[test]
    fn split_along_a_hyperplane_is_valid() {
        let ts = parse_tilings(
            "tiling split ambient=bur6\npiece L: a0 <= 1/4\npiece R: a0 >= 1/4\n",
        )
        .unwrap();
        let report = verify_tiling(&ts[0]).unwrap();
        assert!(report.is_valid(), "report:\n{}", report.to_text());
    }

    #[test]
    fn overlap_is_detected_with_witness() {
        let ts = parse_tilings(
            "tiling bad ambient=bur6\npiece L: a0 <= 1/3\npiece R: a0 >= 1/4\n",
        )
        .unwrap();
        let report = verify_tiling(&ts[0]).unwrap();
        match &report.outcome {
            CoverOutcome::Overlap { witness, .. } => {
                let l = ts[0].piece_in_ambient(0).unwrap();
                let r = ts[0].piece_in_ambient(1).unwrap();
                assert!(l.satisfied_by(witness) && r.satisfied_by(witness));
            }
            other => panic!("expected overlap, got {other:?}"),
        }
    }

    #[test]
    fn gap_is_detected_with_witness() {
        let ts = parse_tilings(
            "tiling hole ambient=bur6\npiece L: a0 <= 1/4\npiece R: a0 >= 1/3\n",
        )
        .unwrap();
        let report = verify_tiling(&ts[0]).unwrap();
        match &report.outcome {
            CoverOutcome::Gap { witness } => {
                let amb = ts[0].ambient.polytope();
                assert!(amb.satisfied_by(witness));
                for idx in 0..2 {
                    let piece = ts[0].piece_in_ambient(idx).unwrap();
                    assert!(!piece.satisfied_by(witness));
                }
            }
            other => panic!("expected gap, got {other:?}"),
        }
    }

    #[test]
    fn permuting_pieces_keeps_the_verdict() {
        let text = "tiling s ambient=bur6\npiece A: a0 <= 1/4\npiece B: a0 >= 1/4\n";
        let swapped = "tiling s ambient=bur6\npiece B: a0 >= 1/4\npiece A: a0 <= 1/4\n";
        let r1 = verify_tiling(&parse_tilings(text).unwrap()[0]).unwrap();
        let r2 = verify_tiling(&parse_tilings(swapped).unwrap()[0]).unwrap();
        assert_eq!(r1.outcome, r2.outcome);
        assert_eq!(r1.total, r2.total);
    }
}
