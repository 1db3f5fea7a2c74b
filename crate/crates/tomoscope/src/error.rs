//! Crate-wide error type.
//!
//! Geometry routines fail for a small set of reasons: a malformed input
//! description, a query that leaves the feasible region (plane missing the
//! body, base point outside it), or a solve whose bracket degenerates. Each
//! gets its own variant so callers and the CLI can map them onto exit codes
//! without string matching.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Body or configuration description was syntactically valid but
    /// geometrically meaningless (non-positive radius, non-orthonormal
    /// orientation, non-concave profile, ...).
    #[error("invalid body or input specification: {0}")]
    InvalidSpec(String),

    /// A vector that must be normalizable was (numerically) zero.
    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    /// Cutting plane passes outside the body, or grazes it more shallowly
    /// than the configured width floor.
    #[error("plane misses the body or grazes it (support margin {margin:.3e})")]
    EmptySection { margin: f64 },

    /// A 1-D solve could not keep its bracket under control.
    #[error("ill-conditioned solve: {0}")]
    IllConditioned(String),

    /// Test point is not interior to the body.
    #[error("base point lies outside the body (margin {margin:.3e})")]
    PointOutsideBody { margin: f64 },

    /// Candidate axis line does not pass through the body's interior.
    #[error("axis line does not meet the interior of the body")]
    DegenerateAxis,

    /// Width maximization found several essentially different diameters, so
    /// pipelines that assume a unique one cannot proceed.
    #[error("diameter is not unique ({count} surviving segments)")]
    NonUniqueDiameter { count: usize },

    /// Pipeline input violates the geometric preconditions of the decision
    /// procedure (details in the message).
    #[error("invalid configuration: {0}")]
    ConfigurationInvalid(String),

    /// A profile needed symmetry lines that the detector did not find.
    #[error("required symmetry lines are missing: {0}")]
    MissingLines(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
