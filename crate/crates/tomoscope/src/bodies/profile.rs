//! Concave radius profiles for bodies of revolution.
//!
//! A profile assigns a nonnegative radius to each height `t` in
//! `[t_min, t_max]`. The solid of revolution of a profile is convex exactly
//! when the radius function is concave, so concavity is validated on a
//! 1000-point grid at construction time. A denser grid (4096 cells) of
//! cached values drives the support-function maximization: because the
//! objective `ρ·t + r(t)` is concave, the cached slopes bracket its
//! maximizer, and a golden-section polish against the exact closure finishes
//! the job.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::solvers::golden_max;

/// Grid resolution used to cache the profile for support queries.
const SUPPORT_GRID: usize = 4096;
/// Grid resolution for the concavity validation at construction.
const CONCAVITY_GRID: usize = 1000;

#[derive(Clone)]
pub struct ProfileCurve {
    pub t_min: f64,
    pub t_max: f64,
    radius: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    /// Cached radii at `t_min + i·(t_max-t_min)/SUPPORT_GRID`.
    grid: Vec<f64>,
    /// Forward-difference slopes per grid cell; non-increasing by concavity.
    slopes: Vec<f64>,
    /// Largest cached radius (cheap circumradius ingredient).
    r_max: f64,
}

impl std::fmt::Debug for ProfileCurve {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ProfileCurve")
            .field("t_min", &self.t_min)
            .field("t_max", &self.t_max)
            .field("r_max", &self.r_max)
            .finish()
    }
}

impl ProfileCurve {
    /// Wrap a radius closure on `[t_min, t_max]`, validating sign and
    /// concavity on a 1000-point grid.
    pub fn new(
        radius: impl Fn(f64) -> f64 + Send + Sync + 'static,
        t_min: f64,
        t_max: f64,
    ) -> Result<Self> {
        if !(t_max > t_min) || !t_min.is_finite() || !t_max.is_finite() {
            return Err(Error::InvalidSpec(format!(
                "profile needs a proper height range, got [{t_min}, {t_max}]"
            )));
        }
        let radius: Arc<dyn Fn(f64) -> f64 + Send + Sync> = Arc::new(radius);
        let span = t_max - t_min;
        let at = |i: usize, n: usize| t_min + span * i as f64 / n as f64;

        // Sign and finiteness on the validation grid.
        let mut scale: f64 = 0.0;
        let mut vals = Vec::with_capacity(CONCAVITY_GRID + 1);
        for i in 0..=CONCAVITY_GRID {
            let r = radius(at(i, CONCAVITY_GRID));
            if !r.is_finite() || r < -1e-12 {
                return Err(Error::InvalidSpec(format!(
                    "profile radius must be finite and nonnegative, got {r} at t={}",
                    at(i, CONCAVITY_GRID)
                )));
            }
            scale = scale.max(r);
            vals.push(r.max(0.0));
        }
        if scale <= 0.0 {
            return Err(Error::InvalidSpec("profile radius is identically zero".into()));
        }
        // Concavity via second differences: r_{i-1} - 2 r_i + r_{i+1} ≤ tol.
        let tol = 1e-9 * scale.max(1.0);
        for i in 1..CONCAVITY_GRID {
            let second = vals[i - 1] - 2.0 * vals[i] + vals[i + 1];
            if second > tol {
                return Err(Error::InvalidSpec(format!(
                    "profile is not concave near t={} (second difference {second:.3e})",
                    at(i, CONCAVITY_GRID)
                )));
            }
        }

        // Support grid cache.
        let mut grid = Vec::with_capacity(SUPPORT_GRID + 1);
        let mut r_max: f64 = 0.0;
        for i in 0..=SUPPORT_GRID {
            let r = radius(at(i, SUPPORT_GRID)).max(0.0);
            r_max = r_max.max(r);
            grid.push(r);
        }
        let dt = span / SUPPORT_GRID as f64;
        let slopes = grid.windows(2).map(|w| (w[1] - w[0]) / dt).collect();

        Ok(ProfileCurve { t_min, t_max, radius, grid, slopes, r_max })
    }

    /// Semi-ellipse profile: radius `a·sqrt(1 - (t/b)²)` on `[-b, b]`.
    /// Revolving it about an axis gives a spheroid with equatorial radius
    /// `a` and polar half-height `b`.
    pub fn ellipse(a: f64, b: f64) -> Result<Self> {
        if !(a > 0.0) || !(b > 0.0) {
            return Err(Error::InvalidSpec(format!(
                "ellipse profile needs positive semi-axes, got a={a}, b={b}"
            )));
        }
        Self::new(move |t| a * (1.0 - (t / b) * (t / b)).max(0.0).sqrt(), -b, b)
    }

    /// Piecewise-linear profile through `(heights[i], radii[i])`. Heights
    /// must be strictly increasing; concavity of the polyline is validated.
    pub fn table(heights: Vec<f64>, radii: Vec<f64>) -> Result<Self> {
        if heights.len() != radii.len() || heights.len() < 2 {
            return Err(Error::InvalidSpec(
                "table profile needs matching heights/radii with at least two rows".into(),
            ));
        }
        for w in heights.windows(2) {
            if !(w[1] > w[0]) {
                return Err(Error::InvalidSpec(
                    "table profile heights must be strictly increasing".into(),
                ));
            }
        }
        let (t_min, t_max) = (heights[0], *heights.last().unwrap());
        let h = heights.clone();
        let r = radii.clone();
        Self::new(
            move |t| {
                let i = h.partition_point(|&x| x < t).clamp(1, h.len() - 1);
                let w = (t - h[i - 1]) / (h[i] - h[i - 1]);
                r[i - 1] + w.clamp(0.0, 1.0) * (r[i] - r[i - 1])
            },
            t_min,
            t_max,
        )
    }

    /// Radius at height `t` (clamped into the domain).
    pub fn radius_at(&self, t: f64) -> f64 {
        (self.radius)(t.clamp(self.t_min, self.t_max)).max(0.0)
    }

    pub fn r_max(&self) -> f64 {
        self.r_max
    }

    /// One-sided end slopes of the cached grid, used to extend the profile
    /// concavely when a solve needs values just outside the domain.
    pub fn end_slopes(&self) -> (f64, f64) {
        (self.slopes[0], *self.slopes.last().unwrap())
    }

    /// Concave extension: linear continuation beyond the ends with the
    /// one-sided end slopes. Inside the domain it is the exact closure.
    pub fn radius_extended(&self, t: f64) -> f64 {
        if t < self.t_min {
            self.grid[0] + self.end_slopes().0 * (t - self.t_min)
        } else if t > self.t_max {
            self.grid[self.grid.len() - 1] + self.end_slopes().1 * (t - self.t_max)
        } else {
            self.radius_at(t)
        }
    }

    /// Maximize the concave objective `g(t) = ρ·t + r(t)` over the domain.
    ///
    /// The cached slope table brackets the maximizer (slopes are
    /// non-increasing, so `g` switches from rising to falling in one cell
    /// neighborhood); a golden-section polish against the exact closure
    /// refines it. Returns `(t*, g(t*))`.
    pub fn axial_max(&self, rho: f64) -> (f64, f64) {
        let n = self.slopes.len();
        let dt = (self.t_max - self.t_min) / SUPPORT_GRID as f64;
        // First cell whose slope has dropped to -rho or below.
        let cell = self.slopes.partition_point(|&s| s + rho > 0.0);
        let (lo_i, hi_i) = (cell.saturating_sub(1), (cell + 1).min(n));
        let lo = self.t_min + dt * lo_i as f64;
        let hi = self.t_min + dt * hi_i as f64;
        let g = |t: f64| rho * t + self.radius_at(t);
        let x_tol = 1e-11 * (self.t_max - self.t_min).max(1.0);
        golden_max(g, lo, hi, x_tol)
    }
}
