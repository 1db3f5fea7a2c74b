//! Support-function geometric tomography.
//!
//! A convex body is represented by its support function `h(u) = max{x·u : x
//! in K}`. On top of that single primitive the crate builds planar sections
//! and projections, a planar symmetry detector, starline (iterated
//! reflection) machinery, and certification pipelines that decide whether a
//! body is a sphere or a body of revolution from the symmetries of its
//! sections and shadows.
//!
//! Everything is deterministic: direction grids are fixed lattices
//! (optionally conjugated by one seeded rotation), 1-D solves are
//! golden-section/bisection with pinned tolerances, and reports serialize
//! with stable field order.

pub mod bodies;
pub mod cli;
pub mod config;
pub mod error;
pub mod geom;
pub mod linalg;
pub mod report;
pub mod sampling;
pub mod slice;
pub mod solvers;
pub mod starline;
pub mod symmetry2d;
pub mod tomography;

pub use error::{Error, Result};
