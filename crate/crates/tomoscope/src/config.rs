//! The tolerance ladder and sampling budgets, in one place.
//!
//! Every certification records the residual it measured, so callers can
//! always tighten after the fact; these are the defaults the library and the
//! CLI agree on. Two regimes matter: analytic bodies (balls, ellipsoids,
//! smooth revolution bodies) resolve residuals down to `TOL_ANALYTIC`, while
//! sampled or non-smooth bodies (disc hulls, sampled sections) are only
//! trustworthy to `TOL_SAMPLED` because boundary recovery is mesh-limited.

use serde::{Deserialize, Serialize};

/// Residual ceiling for certifications on analytic (smooth) bodies.
pub const TOL_ANALYTIC: f64 = 1e-6;
/// Residual ceiling for sampled or non-smooth bodies (hulls of discs).
pub const TOL_SAMPLED: f64 = 5e-3;
/// Angle-recurrence closure tolerance for starline orbits.
pub const CLOSURE_TOL: f64 = 1e-9;
/// Rational-approximation tolerance for starline classification.
pub const RATIONAL_TOL: f64 = 1e-12;
/// Largest denominator tried when classifying an angle as rational·π.
pub const MAX_DENOMINATOR: u64 = 10_000;
/// Sections thinner than this fraction of the circumradius are rejected:
/// boundary recovery degrades hopelessly near tangency.
pub const WIDTH_MIN_FACTOR: f64 = 1e-4;
/// Boundary samples per planar body: fast / certification grade.
pub const SECTION_SAMPLES_FAST: usize = 360;
pub const SECTION_SAMPLES_CERT: usize = 720;
/// Boundary samples for non-smooth bodies, where kinks need extra mesh.
pub const SECTION_SAMPLES_HULL: usize = 512;
/// Angles scanned when hunting symmetry lines of a planar body.
pub const SYMMETRY_SCAN_ANGLES: usize = 720;
/// Planes sampled by the point-test pipelines unless overridden.
pub const DEFAULT_PLANES: usize = 36;
/// Directions in the diameter-search grid.
pub const DIAMETER_GRID: usize = 10_000;

/// Numeric defaults shared by the CLI subcommands; loadable from a JSON
/// config file via `--config` and overridable per flag.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    /// Certification tolerance (residual ceiling for a Pass).
    pub tol: f64,
    /// Boundary samples per planar section/projection.
    pub samples: usize,
    /// Number of planes/directions surveyed by point tests.
    pub planes: usize,
    /// Angles scanned per symmetry search.
    pub scan_angles: usize,
    /// Seed for the sampling-lattice rotation (0 = unrotated lattice).
    pub seed: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            tol: TOL_ANALYTIC,
            samples: SECTION_SAMPLES_CERT,
            planes: DEFAULT_PLANES,
            scan_angles: SYMMETRY_SCAN_ANGLES,
            seed: 0,
        }
    }
}
