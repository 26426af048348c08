//! Exact rational polyhedral kernel.
//!
//! Constraint systems over named variables, LP feasibility and
//! optimization by exact simplex, vertex enumeration by incremental
//! halfspace insertion, affine dimension, and lattice-normalized
//! volumes by pulling triangulation. Every verdict is an exact decision
//! over arbitrary-precision rationals; nothing in this crate rounds.
//!
//! The algorithms are generic over the [`Scalar`] field. [`Q`] is the
//! arbitrary-precision instantiation used throughout the workspace.

pub mod dd;
pub mod error;
pub mod format;
pub mod linalg;
pub mod lp;
pub mod polytope;
pub mod scalar;
pub mod volume;

pub use num_traits;

pub use dd::enumerate_vertices;
pub use error::PolyError;
pub use polytope::{Constraint, Containment, Feasibility, HPolytope, Relation};
pub use scalar::Scalar;
pub use volume::{normalized_volume, normalized_volume_with_order, PullOrder};

/// The workspace scalar: arbitrary-precision rationals.
pub type Q = num_rational::BigRational;

/// Shorthands for the concrete instantiation.
pub type QPolytope = HPolytope<Q>;
pub type QConstraint = Constraint<Q>;
