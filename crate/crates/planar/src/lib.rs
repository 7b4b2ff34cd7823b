//! Compact plane sets and normed algebras of differentiable functions.
//!
//! The crate materializes a gallery of compact plane sets (dented squares,
//! sector-deleted discs, Cantor-square combs, crossed squares, fattened
//! zig-zag arcs, ...), computes geodesic distance and regularity constants
//! inside them, verifies derivative/path-integral identities along
//! rectifiable polyline paths, and produces certified lower bounds for the
//! completeness functional of the differentiable-function algebra on a set.

pub mod diverge;
pub mod geodesic;
pub mod geom;
pub mod pathint;
pub mod planeset;
pub mod qx;
pub mod suites;

pub use geom::{Point, PolyPath};
pub use planeset::PlaneSet;
