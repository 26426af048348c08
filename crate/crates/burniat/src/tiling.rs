//! Named tilings: lists of matroid base polytopes against a Burniat
//! ambient, their text format, and restriction to a smaller ambient.
//!
//! The tiling format, one tiling per `tiling` header:
//!
//! ```text
//! tiling t1 ambient=bur5 source="row 1"
//! piece M1: a0 a2 b2 <= 1, b2 b3 c2 <= 1
//! piece M2: a1 c0 c2 <= 1, a1 a3 b1 <= 1
//! ```
//!
//! Juxtaposed variables abbreviate sums exactly as in the tables
//! (`a0 a2 b2 <= 1` is `a0 + a2 + b2 <= 1`), and the derived symbols
//! `a3, b3, c3, e, e1, e2, e3` expand to their affine forms in the
//! declared ambient. Every piece is the hypersimplex `D(3,9)` cut by
//! its listed inequalities; the ambient polytope is separate.

use exactpoly::polytope::Constraint;
use exactpoly::{Feasibility, PolyError, QPolytope, Q};

use crate::ambient::BurniatAmbient;
use crate::hypersimplex::hypersimplex_named;

#[derive(Clone, Debug)]
pub struct Piece {
    pub name: String,
    pub ineqs: Vec<Constraint<Q>>,
}

#[derive(Clone, Debug)]
pub struct TilingSpec {
    pub name: String,
    pub ambient: BurniatAmbient,
    pub pieces: Vec<Piece>,
    pub source: Option<String>,
}

impl TilingSpec {
    /// The piece as a polytope: `D(3,9)` cut by the piece inequalities.
    pub fn piece_polytope(&self, idx: usize) -> Result<QPolytope, PolyError> {
        let piece = self
            .pieces
            .get(idx)
            .ok_or_else(|| PolyError::input(format!("piece index {idx} out of range")))?;
        let mut p = hypersimplex_named(3, BurniatAmbient::vars())?;
        for c in &piece.ineqs {
            p.push(c.clone())?;
        }
        Ok(p)
    }

    /// The piece intersected with the ambient polytope. The ambient's own
    /// inequalities come first, so their indices can be used as a strict
    /// set for relative-interior queries.
    pub fn piece_in_ambient(&self, idx: usize) -> Result<QPolytope, PolyError> {
        let piece = self
            .pieces
            .get(idx)
            .ok_or_else(|| PolyError::input(format!("piece index {idx} out of range")))?;
        let mut p = self.ambient.polytope();
        for c in &piece.ineqs {
            p.push(c.clone())?;
        }
        Ok(p)
    }

    /// Does the piece meet the relative interior of the ambient?
    /// The ambients are full-dimensional with no implicit equalities, so
    /// the relative interior is where every ambient inequality is strict.
    pub fn piece_meets_ambient_interior(&self, idx: usize) -> Result<Option<Vec<Q>>, PolyError> {
        let ambient_ineqs = self.ambient.polytope().inequalities().len();
        let sys = self.piece_in_ambient(idx)?;
        let strict: Vec<usize> = (0..ambient_ineqs).collect();
        Ok(match sys.feasible_point_strict(&strict)? {
            Feasibility::Witness(w) => Some(w),
            Feasibility::Infeasible => None,
        })
    }
}

/// Restriction outcome for one piece.
#[derive(Clone, Debug)]
pub enum PieceFate {
    /// Kept, with a point of the piece in the target's relative interior.
    Kept { witness: Vec<Q> },
    /// Dropped: the strict-feasibility LP for
    /// `piece and relint(target)` is infeasible.
    Dropped,
}

#[derive(Clone, Debug)]
pub struct RestrictReport {
    pub fates: Vec<(String, PieceFate)>,
}

impl RestrictReport {
    pub fn dropped(&self) -> Vec<&str> {
        self.fates
            .iter()
            .filter_map(|(n, f)| matches!(f, PieceFate::Dropped).then_some(n.as_str()))
            .collect()
    }
}

/// Restricts a tiling to a smaller (or variant-sibling) ambient: pieces
/// whose interiors miss the target's relative interior are dropped.
pub fn restrict_tiling(
    t: &TilingSpec,
    target: BurniatAmbient,
) -> Result<(TilingSpec, RestrictReport), PolyError> {
    let from = t.ambient.degree();
    let to = target.degree();
    if to != from && to + 1 != from {
        return Err(PolyError::input(format!(
            "can only restrict by one degree or across variants: {} -> {}",
            t.ambient.name(),
            target.name()
        )));
    }
    let restricted = TilingSpec {
        name: t.name.clone(),
        ambient: target,
        pieces: t.pieces.clone(),
        source: t.source.clone(),
    };
    let mut fates = Vec::new();
    let mut kept = Vec::new();
    for (idx, piece) in restricted.pieces.iter().enumerate() {
        match restricted.piece_meets_ambient_interior(idx)? {
            Some(witness) => {
                fates.push((piece.name.clone(), PieceFate::Kept { witness }));
                kept.push(piece.clone());
            }
            None => fates.push((piece.name.clone(), PieceFate::Dropped)),
        }
    }
    Ok((
        TilingSpec {
            name: restricted.name,
            ambient: target,
            pieces: kept,
            source: restricted.source,
        },
        RestrictReport { fates },
    ))
}

pub fn parse_tilings(text: &str) -> Result<Vec<TilingSpec>, PolyError> {
    let mut out: Vec<TilingSpec> = Vec::new();
    let vars = BurniatAmbient::vars();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("tiling ") {
            let mut name = None;
            let mut ambient = None;
            let mut source = None;
            let mut rest = rest.trim();
            while !rest.is_empty() {
                if let Some(after) = rest.strip_prefix("ambient=") {
                    let end = after.find(char::is_whitespace).unwrap_or(after.len());
                    ambient = Some(
                        BurniatAmbient::from_name(&after[..end])
                            .map_err(|e| PolyError::parse(lineno + 1, e.to_string()))?,
                    );
                    rest = after[end..].trim_start();
                } else if let Some(after) = rest.strip_prefix("source=\"") {
                    let end = after.find('"').ok_or_else(|| {
                        PolyError::parse(lineno + 1, "unterminated source string")
                    })?;
                    source = Some(after[..end].to_string());
                    rest = after[end + 1..].trim_start();
                } else {
                    let end = rest.find(char::is_whitespace).unwrap_or(rest.len());
                    if name.is_some() {
                        return Err(PolyError::parse(
                            lineno + 1,
                            format!("unexpected token `{}`", &rest[..end]),
                        ));
                    }
                    name = Some(rest[..end].to_string());
                    rest = rest[end..].trim_start();
                }
            }
            let name =
                name.ok_or_else(|| PolyError::parse(lineno + 1, "tiling needs a name"))?;
            let ambient = ambient.ok_or_else(|| {
                PolyError::parse(lineno + 1, "tiling needs ambient=<bur6|bur5|...>")
            })?;
            out.push(TilingSpec {
                name,
                ambient,
                pieces: Vec::new(),
                source,
            });
            continue;
        }
        if let Some(rest) = line.strip_prefix("piece ") {
            let Some(current) = out.last_mut() else {
                return Err(PolyError::parse(lineno + 1, "piece before tiling header"));
            };
            let (pname, body) = rest.split_once(':').ok_or_else(|| {
                PolyError::parse(lineno + 1, "piece syntax: piece <name>: ineq, ineq")
            })?;
            let subs = current.ambient.substitutions();
            let mut ineqs = Vec::new();
            for chunk in body.split(',') {
                let chunk = chunk.trim();
                if chunk.is_empty() {
                    continue;
                }
                let c = exactpoly::format::parse_constraint_line::<Q>(chunk, &vars, &subs)
                    .map_err(|e| PolyError::parse(lineno + 1, e))?;
                ineqs.push(c);
            }
            if ineqs.is_empty() {
                return Err(PolyError::parse(lineno + 1, "piece has no inequalities"));
            }
            current.pieces.push(Piece {
                name: pname.trim().to_string(),
                ineqs,
            });
            continue;
        }
        return Err(PolyError::parse(
            lineno + 1,
            format!("expected `tiling` or `piece`, found `{line}`"),
        ));
    }
    Ok(out)
}

pub fn serialize_tilings(tilings: &[TilingSpec]) -> String {
    let vars = BurniatAmbient::vars();
    let mut out = String::new();
    for t in tilings {
        out.push_str(&format!("tiling {} ambient={}", t.name, t.ambient.name()));
        if let Some(src) = &t.source {
            out.push_str(&format!(" source=\"{src}\""));
        }
        out.push('\n');
        for piece in &t.pieces {
            let body: Vec<String> = piece
                .ineqs
                .iter()
                .map(|c| exactpoly::format::serialize_constraint(c, &vars))
                .collect();
            out.push_str(&format!("piece {}: {}\n", piece.name, body.join(", ")));
        }
    }
    out
}

pub fn load_table(path: &std::path::Path) -> Result<Vec<TilingSpec>, PolyError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| PolyError::input(format!("cannot read {}: {e}", path.display())))?;
    parse_tilings(&text)
}
