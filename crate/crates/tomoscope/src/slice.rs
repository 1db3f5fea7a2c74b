//! Planar sections and shadow outlines of convex bodies.
//!
//! Cutting a convex body with a plane, or projecting it along a direction,
//! produces a two-dimensional convex figure. Both are computed in support
//! form. For a section by the plane `{x · n = c}` the in-plane support about
//! the anchor `q` (the foot of the perpendicular from the origin) is the
//! partial infimal convolution
//!
//! ```text
//! h_section(v) = inf_t [ h_K(v - t n) + t c ]  -  q · v ,
//! ```
//!
//! a convex one-dimensional minimization solved by golden section over an
//! analytic bracket. A shadow needs no solve at all: for `v ⊥ u` the support
//! of the projection along `u` is `h_K(v)` itself.
//!
//! [`PlanarBody`] packages the result: the exact support closure (kept for
//! downstream refinement that must evaluate between grid angles), a uniform
//! sample grid, and boundary points recovered from the support envelope
//! `x(θ) = h(θ) u(θ) + h'(θ) u⊥(θ)`.
//!
//! The same machinery one dimension up turns a hyperplane section or a
//! projection of a four-dimensional body into a full [`ConvexBody<3>`].

use std::f64::consts::TAU;
use std::sync::Arc;

use crate::bodies::ConvexBody;
use crate::config::WIDTH_MIN_FACTOR;
use crate::error::{Error, Result};
use crate::geom::{hyperplane_frame, plane_frame, Frame2, Plane, UnitVec, TINY};
use crate::linalg::{axpy, dot, norm, scale};
use crate::sampling::orthonormal_complement4;
use crate::solvers::golden_min;

/// Smallest accepted angular resolution for a planar figure.
pub const MIN_ANGLE_SAMPLES: usize = 16;

/// A convex planar figure, carried in the 2-D coordinates of a [`Frame2`].
///
/// The figure is defined by its support function about the frame origin
/// (which need not lie inside the figure, so samples may be negative). It
/// stores the exact closure alongside `m` uniformly spaced samples
/// `h(2πj/m)` and the boundary polygon recovered from the envelope.
#[derive(Clone)]
pub struct PlanarBody {
    /// Plane coordinates: `origin` is the support anchor.
    pub frame: Frame2,
    m: usize,
    support_fn: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    samples: Vec<f64>,
    boundary: Vec<[f64; 2]>,
}

impl std::fmt::Debug for PlanarBody {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PlanarBody")
            .field("frame", &self.frame)
            .field("m", &self.m)
            .field("scale", &self.scale())
            .finish()
    }
}

impl PlanarBody {
    /// Build and validate a planar figure from its support function.
    ///
    /// `support` must be the support function of some convex set about the
    /// frame origin, evaluated at an angle in radians (periodic). `m` is the
    /// sample count; it must be even (so every sampled direction has its
    /// antipode on the grid) and at least [`MIN_ANGLE_SAMPLES`].
    pub fn from_support(
        frame: Frame2,
        support: impl Fn(f64) -> f64 + Send + Sync + 'static,
        m: usize,
    ) -> Result<Self> {
        if m < MIN_ANGLE_SAMPLES || m % 2 != 0 {
            return Err(Error::InvalidSpec(format!(
                "angular resolution must be an even count of at least {MIN_ANGLE_SAMPLES}, got {m}"
            )));
        }
        let step = TAU / m as f64;
        let samples: Vec<f64> = (0..m).map(|j| support(j as f64 * step)).collect();
        if samples.iter().any(|h| !h.is_finite()) {
            return Err(Error::DegenerateInput(
                "planar support sample is not finite".into(),
            ));
        }
        let scale = samples
            .iter()
            .fold(0.0_f64, |a, &b| a.max(b.abs()))
            .max(1e-300);

        // Convexity check. Since u(θ-δ) + u(θ+δ) = 2cos(δ) u(θ), every
        // support function satisfies h(θ-δ) + h(θ+δ) ≥ 2cos(δ) h(θ) exactly
        // (sublinearity plus homogeneity) — kinked or smooth — so the slack
        // only has to absorb floating-point noise in the samples.
        let cos_step = step.cos();
        for j in 0..m {
            let residual =
                samples[(j + m - 1) % m] + samples[(j + 1) % m] - 2.0 * cos_step * samples[j];
            if residual < -1e-9 * scale {
                return Err(Error::IllConditioned(format!(
                    "planar support fails convexity at sample {j} (residual {residual:.3e})"
                )));
            }
        }

        // The figure must have positive width in every sampled direction.
        for j in 0..m / 2 {
            let w = samples[j] + samples[j + m / 2];
            if w <= 0.0 {
                return Err(Error::EmptySection { margin: w });
            }
        }

        // Boundary from the support envelope, with centered differences for
        // h'. Each point satisfies x·u(θ_j) = h_j by construction, i.e. it
        // lies on the supporting line; at a kink of h the difference
        // quotient lands inside the contact edge rather than at a vertex.
        let mut boundary = Vec::with_capacity(m);
        let mut d2_max = 0.0_f64;
        for j in 0..m {
            let prev = samples[(j + m - 1) % m];
            let next = samples[(j + 1) % m];
            let h = samples[j];
            let hp = (next - prev) / (2.0 * step);
            let theta = j as f64 * step;
            let (c, s) = (theta.cos(), theta.sin());
            boundary.push([h * c - hp * s, h * s + hp * c]);
            d2_max = d2_max.max((prev + next - 2.0 * h).abs());
        }

        // Consistency of the polygon with the sampled support. Outward
        // excess can only come from a derivative jump (bounded by
        // d2_max / step) sliding a point along its supporting line; the
        // inward gap is the usual inscribed-chord defect O(step²·curvature),
        // with the discrete second difference standing in for curvature.
        let outward_tol = 1e-7 * scale + 0.75 * d2_max / step;
        let inward_tol = 1e-7 * scale + 0.5 * (step * step * scale + d2_max);
        let stride = (m / 64).max(1);
        for j in (0..m).step_by(stride) {
            let theta = j as f64 * step;
            let (c, s) = (theta.cos(), theta.sin());
            let poly = boundary
                .iter()
                .map(|p| p[0] * c + p[1] * s)
                .fold(f64::NEG_INFINITY, f64::max);
            if poly - samples[j] > outward_tol || samples[j] - poly > inward_tol {
                return Err(Error::IllConditioned(format!(
                    "planar boundary disagrees with its support at sample {j} \
                     (support {:.6e}, polygon {:.6e})",
                    samples[j], poly
                )));
            }
        }

        Ok(PlanarBody {
            frame,
            m,
            support_fn: Arc::new(support),
            samples,
            boundary,
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Grid angle of sample `j`, i.e. `2πj/m`.
    pub fn angle(&self, j: usize) -> f64 {
        j as f64 * TAU / self.m as f64
    }

    /// Exact support value at an arbitrary angle (not interpolated).
    pub fn support(&self, theta: f64) -> f64 {
        (self.support_fn)(theta)
    }

    /// Cached support samples at the grid angles.
    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    /// Boundary points in frame coordinates, counterclockwise.
    pub fn boundary(&self) -> &[[f64; 2]] {
        &self.boundary
    }

    /// Boundary points mapped back to world coordinates.
    pub fn boundary_world(&self) -> Vec<[f64; 3]> {
        self.boundary.iter().map(|p| self.frame.to_world(p)).collect()
    }

    /// Width of the figure along the direction at angle `theta`.
    pub fn width(&self, theta: f64) -> f64 {
        self.support(theta) + self.support(theta + std::f64::consts::PI)
    }

    /// Largest absolute support sample; the natural scale for tolerances.
    pub fn scale(&self) -> f64 {
        self.samples.iter().fold(0.0_f64, |a, &b| a.max(b.abs()))
    }

    /// Steiner point of the figure in frame coordinates, from the discrete
    /// moment `s = (2/m) Σ h_j u_j` (exact for uniform grids up to the
    /// sample quadrature of higher harmonics).
    pub fn steiner(&self) -> [f64; 2] {
        let mut s = [0.0, 0.0];
        for (j, h) in self.samples.iter().enumerate() {
            let theta = self.angle(j);
            s[0] += h * theta.cos();
            s[1] += h * theta.sin();
        }
        let f = 2.0 / self.m as f64;
        [s[0] * f, s[1] * f]
    }

    /// Steiner point in world coordinates.
    pub fn steiner_world(&self) -> [f64; 3] {
        self.frame.to_world(&self.steiner())
    }
}

/// Bracket for the section minimization `inf_t h_K(v - t n) + t c`.
///
/// With `margin = min(h(n) - c, h(-n) + c)` the objective grows at slope at
/// least `margin` once `|t|` exceeds the body scale, so the minimizer lies
/// inside `±4(2R + |c|)/margin` (sublinearity gives
/// `g(±T) ≥ T·margin - R > g(0)` for `T > 2R/margin`).
fn section_bracket(circumradius: f64, offset: f64, margin: f64) -> Result<f64> {
    let t = 4.0 * (2.0 * circumradius + offset.abs() + 1e-9) / margin;
    if !t.is_finite() || t > 1e7 {
        return Err(Error::IllConditioned(format!(
            "section solve bracket is too wide (|t| <= {t:.3e}); the plane grazes the body"
        )));
    }
    Ok(t)
}

/// Check that the plane cuts the body deeply enough to section it, and
/// return the support margin `min(h(n) - c, h(-n) + c)`.
fn section_margin<const N: usize>(
    support_pos: f64,
    support_neg: f64,
    offset: f64,
    circumradius: f64,
) -> Result<f64> {
    let margin = (support_pos - offset).min(support_neg + offset);
    if margin < WIDTH_MIN_FACTOR * circumradius {
        return Err(Error::EmptySection { margin });
    }
    Ok(margin)
}

/// Intersect a convex body with a plane.
///
/// Returns the section as a [`PlanarBody`] with `m` support samples,
/// anchored at the foot of the perpendicular from the origin to the plane.
/// Fails with [`Error::EmptySection`] when the plane misses the body or
/// grazes it more shallowly than a `1e-4` fraction of the circumradius.
pub fn section(k: &ConvexBody<3>, plane: &Plane<3>, m: usize) -> Result<PlanarBody> {
    let n = *plane.normal.as_array();
    let c = plane.offset;
    let margin = section_margin::<3>(
        k.support(&n),
        k.support(&scale(&n, -1.0)),
        c,
        k.circumradius(),
    )?;
    let t_span = section_bracket(k.circumradius(), c, margin)?;
    let x_tol = 1e-10 * (1.0 + k.circumradius());
    let frame = plane_frame(plane);
    let q = frame.origin;
    let body = k.clone();
    PlanarBody::from_support(
        frame,
        move |theta| {
            let v = frame.direction(theta);
            let (_, val) = golden_min(
                |t| body.support(&axpy(&v, -t, &n)) + t * c,
                -t_span,
                t_span,
                x_tol,
            );
            val - dot(&q, &v)
        },
        m,
    )
}

/// Orthogonal projection (shadow outline) of a convex body along `dir`.
///
/// The shadow lives in the plane through the origin perpendicular to `dir`,
/// and its support needs no solve: `h_shadow(v) = h_K(v)` for `v ⊥ dir`.
pub fn project(k: &ConvexBody<3>, dir: &UnitVec<3>, m: usize) -> Result<PlanarBody> {
    let plane = Plane {
        normal: *dir,
        offset: 0.0,
    };
    let frame = plane_frame(&plane);
    let body = k.clone();
    PlanarBody::from_support(
        frame,
        move |theta| body.support(&frame.direction(theta)),
        m,
    )
}

/// Intersect a four-dimensional convex body with a hyperplane, producing a
/// full three-dimensional [`ConvexBody`] in the hyperplane's frame.
///
/// The support closure is the same infimal convolution as [`section`], one
/// dimension up; the returned body is anchored at the foot of the
/// perpendicular from the origin (so a centered section is centered in
/// frame coordinates).
pub fn hypersection(k4: &ConvexBody<4>, plane: &Plane<4>) -> Result<ConvexBody<3>> {
    let n = *plane.normal.as_array();
    let c = plane.offset;
    let margin = section_margin::<4>(
        k4.support(&n),
        k4.support(&scale(&n, -1.0)),
        c,
        k4.circumradius(),
    )?;
    let t_span = section_bracket(k4.circumradius(), c, margin)?;
    let x_tol = 1e-10 * (1.0 + k4.circumradius());
    let frame = hyperplane_frame(plane);
    let q = frame.origin;
    let body = k4.clone();
    ConvexBody::from_support_closure(move |v: &[f64; 3]| {
        let len = norm(v);
        if len <= TINY {
            return 0.0;
        }
        let unit = scale(v, 1.0 / len);
        let w = frame.dir_to_world(&unit);
        let (_, val) = golden_min(
            |t| body.support(&axpy(&w, -t, &n)) + t * c,
            -t_span,
            t_span,
            x_tol,
        );
        len * (val - dot(&q, &w))
    })
}

/// Orthogonal projection of a four-dimensional convex body along `dir`,
/// returned as a three-dimensional body in an orthonormal basis of the
/// complement `dir⊥`.
pub fn project4(k4: &ConvexBody<4>, dir: &UnitVec<4>) -> Result<ConvexBody<3>> {
    let basis = orthonormal_complement4(dir.as_array());
    let body = k4.clone();
    ConvexBody::from_support_closure(move |v: &[f64; 3]| {
        let mut w = [0.0; 4];
        for (coef, b) in v.iter().zip(basis.iter()) {
            for i in 0..4 {
                w[i] += coef * b[i];
            }
        }
        body.support(&w)
    })
}
