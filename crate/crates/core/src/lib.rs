//! Exact polyhedral computations for prismatoids of large width.
//!
//! The crate builds prismatoids from explicit coordinates and parametric
//! constructions, enumerates their facets with exact rational arithmetic,
//! computes dual graphs and base-to-base distances (widths), analyses pairs
//! of geodesic maps on the 3-sphere, iterates the one-point-suspension
//! construction that turns a wide 5-prismatoid into a high-dimensional
//! polytope violating the Hirsch bound, and studies the twisted-product
//! family of 4-polytopes whose vertices lie on the Clifford torus.

pub mod bitset;
pub mod error;
pub mod exact;
pub mod gallery;
pub mod geodesic;
pub mod graph;
pub mod hull;
pub mod io;
pub mod lp;
pub mod oracle;
pub mod prismatoid;
pub mod refinement;
pub mod render;
pub mod tower;
pub mod twisted;

pub use error::{Error, Result};
