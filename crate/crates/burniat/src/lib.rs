//! Matroid tilings of Burniat polytopes.
//!
//! Constructors for hypersimplices, weight cuts and matroid base
//! polytopes; log-canonicity and stability of weighted line
//! arrangements; the Burniat ambients `bur6 ... bur3`; and the exact
//! verifier that certifies a list of matroid polytopes as a tiling of
//! its ambient by volume accounting, with rational witness points on
//! failure.

pub mod ambient;
pub mod arrangement;
pub mod hypersimplex;
pub mod lc;
pub mod matroid;
pub mod tiling;
pub mod verifier;

pub use ambient::{BurniatAmbient, Variant, BURNIAT_VARS};
pub use arrangement::{ArrangementSpec, Flat, Geometry};
pub use hypersimplex::{b_cut, face_at_point, hypersimplex, hypersimplex_named, Weight};
pub use lc::{is_lc, is_lc_at_point, is_stable, lc_at_point_via_polytope, LcVerdict};
pub use matroid::matroid_polytope;
pub use tiling::{load_table, parse_tilings, restrict_tiling, serialize_tilings, Piece, PieceFate, RestrictReport, TilingSpec};
pub use verifier::{check_piece_relevance, verify_tiling, CoverOutcome, TilingReport};
