//! Convex bodies in R³/R⁴ represented by their support functions.
//!
//! A body is anything that can answer `h_K(u) = sup {x·u : x ∈ K}` for an
//! arbitrary nonzero direction. That single query drives everything else
//! here: supporting (boundary) points, widths, diameters, interior margins,
//! and chord exits. Analytic shapes answer in closed form; anything else
//! (sections of higher-dimensional bodies, perturbed test fixtures) wraps a
//! closure and falls back to numeric recovery, which trades a few digits of
//! accuracy for total generality.
//!
//! Accuracy regimes: closed-form shapes are exact to rounding; the
//! revolution solid resolves its 1-D support maximization to ~1e-12 of the
//! body scale; numeric boundary points from bare closures carry a central
//! difference error around 1e-7 of scale (they are projected back onto the
//! supporting plane, so `x·u = h(u)` holds to rounding regardless).

pub mod profile;
pub mod spec;

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::config::DIAMETER_GRID;
use crate::error::{Error, Result};
use crate::geom::{Line, UnitVec, TINY};
use crate::linalg::{
    add, axpy, dist, dot, lex_less, mat_apply, mat_apply_t, norm, norm_sq, normalized,
    orthonormality_defect, reject, scale, sub,
};
use crate::sampling::sphere_lattice;
use crate::solvers::{bisect_root, sphere_compass_max, sphere_compass_min};
use profile::ProfileCurve;

/// Central-difference step for numeric support gradients (boundary points
/// of closure-backed bodies). The gradient of a degree-1 homogeneous
/// function is scale-free, so an absolute step is appropriate.
const GRAD_STEP: f64 = 5e-4;
/// Directions used when estimating circumradius/center of closure bodies.
const ESTIMATE_LATTICE: usize = 2048;
/// Two refined diameter directions closer than this (chordal, up to sign)
/// are the same diameter found twice.
const DEDUP_DIR: f64 = 1e-4;
/// Most candidates refined / segments reported by the diameter search; tie
/// continua (spheres) would otherwise return thousands of representatives.
const DIAMETER_CANDIDATE_CAP: usize = 512;
const DIAMETER_REPORT_CAP: usize = 16;

/// The shape contract: a positively homogeneous support evaluation, plus
/// optional closed forms for supporting points and chord exits.
///
/// `support` must accept any nonzero vector (the section machinery feeds it
/// raw plane-offset combinations, not unit vectors). `boundary_point` and
/// `ray_exit` return `None` when no closed form exists; [`ConvexBody`] then
/// falls back to numeric recovery from the support function alone.
pub trait SupportMap<const N: usize>: Send + Sync {
    fn support(&self, u: &[f64; N]) -> f64;

    /// Supporting point for unit `u`, if the shape knows it analytically.
    fn boundary_point(&self, u: &[f64; N]) -> Option<[f64; N]> {
        let _ = u;
        None
    }

    /// Exit parameter `t ≥ 0` of the ray `x + t·u` (unit `u`, `x` interior),
    /// if the shape can solve it directly.
    fn ray_exit(&self, x: &[f64; N], u: &[f64; N]) -> Option<f64> {
        let _ = (x, u);
        None
    }
}

/// Which constructor produced a body; reports carry this tag.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BodyKind {
    Ball,
    Ellipsoid,
    Revolution,
    DiscHull,
    Translate,
    Composite,
}

impl fmt::Display for BodyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            BodyKind::Ball => "ball",
            BodyKind::Ellipsoid => "ellipsoid",
            BodyKind::Revolution => "revolution",
            BodyKind::DiscHull => "disc_hull",
            BodyKind::Translate => "translate",
            BodyKind::Composite => "composite",
        };
        f.write_str(s)
    }
}

// ---------------------------------------------------------------------------
// Concrete shapes
// ---------------------------------------------------------------------------

struct Ball<const N: usize> {
    center: [f64; N],
    radius: f64,
}

impl<const N: usize> SupportMap<N> for Ball<N> {
    fn support(&self, u: &[f64; N]) -> f64 {
        dot(&self.center, u) + self.radius * norm(u)
    }

    fn boundary_point(&self, u: &[f64; N]) -> Option<[f64; N]> {
        Some(axpy(&self.center, self.radius, u))
    }

    fn ray_exit(&self, x: &[f64; N], u: &[f64; N]) -> Option<f64> {
        let y = sub(x, &self.center);
        let b = dot(&y, u);
        let c0 = norm_sq(&y) - self.radius * self.radius;
        Some(-b + (b * b - c0).max(0.0).sqrt())
    }
}

/// Ellipsoid with center `c`, semi-axes `radii` along the rows of the
/// orthogonal frame `rot` (world = rot · local): `h(u) = c·u + ‖A·rotᵀu‖`.
struct Ellipsoid<const N: usize> {
    center: [f64; N],
    radii: [f64; N],
    rot: [[f64; N]; N],
}

impl<const N: usize> Ellipsoid<N> {
    fn local(&self, u: &[f64; N]) -> [f64; N] {
        mat_apply_t(&self.rot, u)
    }
}

impl<const N: usize> SupportMap<N> for Ellipsoid<N> {
    fn support(&self, u: &[f64; N]) -> f64 {
        let w = self.local(u);
        let mut s = 0.0;
        for i in 0..N {
            let t = self.radii[i] * w[i];
            s += t * t;
        }
        dot(&self.center, u) + s.sqrt()
    }

    fn boundary_point(&self, u: &[f64; N]) -> Option<[f64; N]> {
        // Gradient of h: x = c + R A² Rᵀ u / ‖A Rᵀ u‖.
        let w = self.local(u);
        let mut aw_norm = 0.0;
        let mut a2w = [0.0; N];
        for i in 0..N {
            let t = self.radii[i] * w[i];
            aw_norm += t * t;
            a2w[i] = self.radii[i] * t;
        }
        let aw_norm = aw_norm.sqrt();
        Some(axpy(&self.center, 1.0 / aw_norm, &mat_apply(&self.rot, &a2w)))
    }

    fn ray_exit(&self, x: &[f64; N], u: &[f64; N]) -> Option<f64> {
        // In stretched local coordinates the body is the unit ball.
        let mut y = self.local(&sub(x, &self.center));
        let mut w = self.local(u);
        for i in 0..N {
            y[i] /= self.radii[i];
            w[i] /= self.radii[i];
        }
        let a = norm_sq(&w);
        let b = dot(&y, &w);
        let c0 = norm_sq(&y) - 1.0;
        Some((-b + (b * b - a * c0).max(0.0).sqrt()) / a)
    }
}

/// Solid of revolution: profile radius around the axis `base + t·dir`.
struct Revolution {
    base: [f64; 3],
    axis: [f64; 3],
    profile: ProfileCurve,
    /// Upper bound on the body diameter; brackets chord-exit bisection.
    diam_bound: f64,
}

impl Revolution {
    /// Split a direction into its axial component and radial part.
    fn split(&self, u: &[f64; 3]) -> (f64, [f64; 3], f64) {
        let alpha = dot(&self.axis, u);
        let perp = reject(u, &self.axis);
        let rho = norm(&perp);
        (alpha, perp, rho)
    }
}

impl SupportMap<3> for Revolution {
    fn support(&self, u: &[f64; 3]) -> f64 {
        let (alpha, _, rho) = self.split(u);
        let base_term = dot(&self.base, u);
        if rho <= 1e-12 * norm(u) {
            // Axis-parallel query: the radius term cannot contribute.
            return base_term
                + (alpha * self.profile.t_min).max(alpha * self.profile.t_max);
        }
        base_term + rho * self.profile.axial_max(alpha / rho).1
    }

    fn boundary_point(&self, u: &[f64; 3]) -> Option<[f64; 3]> {
        let (alpha, perp, rho) = self.split(u);
        if rho > 1e-12 * norm(u) {
            let (t, _) = self.profile.axial_max(alpha / rho);
            let r = self.profile.radius_at(t);
            let on_axis = axpy(&self.base, t, &self.axis);
            return Some(axpy(&on_axis, r / rho, &perp));
        }
        // Axis-parallel direction: the support set is an end disc. Return
        // its lexicographically smallest point (the disc center when the
        // end is a single point).
        let t = if alpha >= 0.0 { self.profile.t_max } else { self.profile.t_min };
        let r = self.profile.radius_at(t);
        let center = axpy(&self.base, t, &self.axis);
        if r <= 1e-9 * self.profile.r_max() {
            return Some(center);
        }
        Some(axpy(&center, r, &lex_min_unit_perp(&self.axis)))
    }

    fn ray_exit(&self, x: &[f64; 3], u: &[f64; 3]) -> Option<f64> {
        // Membership along the ray reduces to F(t) ≥ 0 with F concave:
        // radial slack and the two axial end slacks are each concave in t.
        let s0 = dot(&sub(x, &self.base), &self.axis);
        let su = dot(u, &self.axis);
        let q0 = reject(&sub(x, &self.base), &self.axis);
        let qu = reject(u, &self.axis);
        let f = |t: f64| {
            let s = s0 + t * su;
            let radial = norm(&axpy(&q0, t, &qu));
            (self.profile.radius_extended(s) - radial)
                .min(s - self.profile.t_min)
                .min(self.profile.t_max - s)
        };
        if f(0.0) < 0.0 {
            return Some(0.0);
        }
        let hi = self.diam_bound;
        Some(bisect_root(f, 0.0, hi, 1e-12 * hi.max(1.0)))
    }
}

/// The lexicographically smallest unit vector orthogonal to the unit `a`
/// (up to a 1e-6 conditioning threshold on the seeding axis).
fn lex_min_unit_perp(a: &[f64; 3]) -> [f64; 3] {
    for i in 0..3 {
        let mut e = [0.0; 3];
        e[i] = 1.0;
        if let Some(p) = normalized(&reject(&e, a), 1e-6) {
            return scale(&p, -1.0);
        }
    }
    unreachable!("a unit vector cannot be parallel to every basis vector");
}

/// Convex hull of two concentric perpendicular discs: radius `r1` in the
/// plane z = 0, radius `r2` in the plane y = 0, both centered at the origin.
/// The support function is the max of the two disc supports; on the tie set
/// the hull has edges, and supporting points break ties lexicographically.
struct TwoDiscHull {
    r1: f64,
    r2: f64,
}

impl SupportMap<3> for TwoDiscHull {
    fn support(&self, u: &[f64; 3]) -> f64 {
        let h1 = self.r1 * u[0].hypot(u[1]);
        let h2 = self.r2 * u[0].hypot(u[2]);
        h1.max(h2)
    }

    fn boundary_point(&self, u: &[f64; 3]) -> Option<[f64; 3]> {
        let s1 = u[0].hypot(u[1]);
        let s2 = u[0].hypot(u[2]);
        let (h1, h2) = (self.r1 * s1, self.r2 * s2);
        let tie = 1e-12 * self.r1.max(self.r2) * norm(u);
        let p1 = || [self.r1 * u[0] / s1, self.r1 * u[1] / s1, 0.0];
        let p2 = || [self.r2 * u[0] / s2, 0.0, self.r2 * u[2] / s2];
        if h1 > h2 + tie {
            Some(p1())
        } else if h2 > h1 + tie {
            Some(p2())
        } else {
            // Tie: the support set is the edge [p1, p2]; a segment attains
            // its lexicographic minimum at an endpoint.
            let (a, b) = (p1(), p2());
            Some(if lex_less(&b, &a, 1e-12) { b } else { a })
        }
    }
}

/// A body shifted by a fixed offset.
struct Translate<const N: usize> {
    inner: Arc<dyn SupportMap<N>>,
    offset: [f64; N],
}

impl<const N: usize> SupportMap<N> for Translate<N> {
    fn support(&self, u: &[f64; N]) -> f64 {
        self.inner.support(u) + dot(&self.offset, u)
    }

    fn boundary_point(&self, u: &[f64; N]) -> Option<[f64; N]> {
        self.inner.boundary_point(u).map(|x| add(&x, &self.offset))
    }

    fn ray_exit(&self, x: &[f64; N], u: &[f64; N]) -> Option<f64> {
        self.inner.ray_exit(&sub(x, &self.offset), u)
    }
}

/// A body defined by a bare support closure; everything is recovered
/// numerically.
struct SupportClosure<const N: usize> {
    f: Arc<dyn Fn(&[f64; N]) -> f64 + Send + Sync>,
}

impl<const N: usize> SupportMap<N> for SupportClosure<N> {
    fn support(&self, u: &[f64; N]) -> f64 {
        (self.f)(u)
    }
}

// ---------------------------------------------------------------------------
// The public wrapper
// ---------------------------------------------------------------------------

/// A longest chord (or any chord) with its endpoints in lexicographic order.
#[derive(Clone, Debug, Serialize)]
#[serde(bound(serialize = "[f64; N]: Serialize"))]
pub struct Segment<const N: usize> {
    pub a: [f64; N],
    pub b: [f64; N],
    pub length: f64,
}

/// Outcome of the diameter search: the widest chords found, the maximal
/// width, and whether the maximum is attained by essentially different
/// segments (tie continua are truncated to a few representatives).
#[derive(Clone, Debug, Serialize)]
#[serde(bound(serialize = "[f64; N]: Serialize"))]
pub struct DiameterSearch<const N: usize> {
    pub segments: Vec<Segment<N>>,
    pub max_width: f64,
    pub non_unique: bool,
}

/// A convex body with cached coarse geometry (circumradius, an interior
/// point, an inradius estimate) and numeric fallbacks for every query the
/// shape does not answer analytically.
#[derive(Clone)]
pub struct ConvexBody<const N: usize> {
    kind: BodyKind,
    shape: Arc<dyn SupportMap<N>>,
    circumradius: f64,
    inradius_hint: f64,
    center_hint: [f64; N],
}

impl<const N: usize> fmt::Debug for ConvexBody<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ConvexBody")
            .field("kind", &self.kind)
            .field("circumradius", &self.circumradius)
            .field("center_hint", &&self.center_hint[..])
            .finish()
    }
}

fn ensure_finite<const N: usize>(label: &str, v: &[f64; N]) -> Result<()> {
    if v.iter().all(|x| x.is_finite()) {
        Ok(())
    } else {
        Err(Error::InvalidSpec(format!("{label} must be finite, got {v:?}")))
    }
}

fn ensure_positive(label: &str, x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidSpec(format!("{label} must be positive, got {x}")))
    }
}

impl<const N: usize> ConvexBody<N> {
    pub fn kind(&self) -> BodyKind {
        self.kind
    }

    /// Upper bound on `max {‖x‖ : x ∈ K}`; every pipeline scales brackets
    /// and tolerances by this.
    pub fn circumradius(&self) -> f64 {
        self.circumradius
    }

    /// A point in the interior of the body.
    pub fn center_hint(&self) -> [f64; N] {
        self.center_hint
    }

    /// Estimated radius of a ball around [`Self::center_hint`] inside the
    /// body. A sampled estimate for non-analytic shapes — use it for
    /// conditioning decisions, not as a certified bound.
    pub fn inradius_hint(&self) -> f64 {
        self.inradius_hint
    }

    /// Support value `h_K(u)` for any nonzero `u` (positively homogeneous).
    pub fn support(&self, u: &[f64; N]) -> f64 {
        self.shape.support(u)
    }

    pub fn support_unit(&self, u: &UnitVec<N>) -> f64 {
        self.shape.support(u.as_array())
    }

    /// Width of the body along `u`: `h(u) + h(−u)` for unit `u`.
    pub fn width_along(&self, u: &[f64; N]) -> f64 {
        self.support(u) + self.support(&scale(u, -1.0))
    }

    /// The supporting point in direction `dir` (normalized internally).
    /// Closed-form for analytic shapes; otherwise the numeric gradient of
    /// the support function, projected onto the supporting plane so that
    /// `x·u = h(u)` holds to rounding.
    pub fn boundary_point(&self, dir: &[f64; N]) -> [f64; N] {
        let u = normalized(dir, TINY).expect("boundary_point needs a nonzero direction");
        if let Some(x) = self.shape.boundary_point(&u) {
            return x;
        }
        let mut x = [0.0; N];
        for i in 0..N {
            let mut up = u;
            let mut dn = u;
            up[i] += GRAD_STEP;
            dn[i] -= GRAD_STEP;
            x[i] = (self.support(&up) - self.support(&dn)) / (2.0 * GRAD_STEP);
        }
        let h = self.support(&u);
        axpy(&x, h - dot(&x, &u), &u)
    }

    /// Exit parameter `t ≥ 0` of the ray `x + t·u`; `x` must be interior
    /// and `dir` nonzero. Closed-form shapes solve exactly; the generic
    /// fallback minimizes the supporting-halfspace exit
    /// `(h(w) − x·w)/(u·w)` over the hemisphere `u·w > 0`, which is exact
    /// in the limit and resolved here by a lattice scan plus compass
    /// refinement (roughly 1e-8·scale on smooth bodies).
    pub fn ray_exit(&self, x: &[f64; N], dir: &[f64; N]) -> f64 {
        let u = normalized(dir, TINY).expect("ray_exit needs a nonzero direction");
        if let Some(t) = self.shape.ray_exit(x, &u) {
            return t.max(0.0);
        }
        let ratio = |w: &[f64; N]| {
            let d = dot(&u, w);
            if d <= 1e-6 {
                f64::INFINITY
            } else {
                (self.support(w) - dot(x, w)) / d
            }
        };
        let mut best = (u, ratio(&u));
        for w in sphere_lattice::<N>(1024) {
            let r = ratio(&w);
            if r < best.1 {
                best = (w, r);
            }
        }
        let (_, t) = sphere_compass_min(ratio, &best.0, 0.2, 1e-6);
        t.max(0.0)
    }

    /// Worst-case slack `min_u (h(u) − p·u)` over a deterministic lattice of
    /// `n_dirs` directions: positive when `p` is interior, and then roughly
    /// the distance from `p` to the boundary. A sampled minimum, so it can
    /// only overestimate the true margin.
    pub fn interior_margin(&self, p: &[f64; N], n_dirs: usize) -> f64 {
        sphere_lattice::<N>(n_dirs)
            .iter()
            .map(|u| self.support(u) - dot(p, u))
            .fold(f64::INFINITY, f64::min)
    }

    /// The same body shifted by `offset`.
    pub fn translated(&self, offset: [f64; N]) -> ConvexBody<N> {
        ConvexBody {
            kind: BodyKind::Translate,
            shape: Arc::new(Translate { inner: Arc::clone(&self.shape), offset }),
            circumradius: self.circumradius + norm(&offset),
            inradius_hint: self.inradius_hint,
            center_hint: add(&self.center_hint, &offset),
        }
    }

    /// Sampled convexity audit: positive homogeneity and sublinearity on
    /// seeded random pairs, and positive width on a direction lattice.
    /// Violations beyond `1e-9` of the body scale are reported as errors.
    pub fn validate_convexity(&self, pairs: usize, seed: u64) -> Result<()> {
        let scale_tol = 1e-9 * self.circumradius.max(1.0);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rand_vec = |rng: &mut ChaCha8Rng| loop {
            let mut v = [0.0; N];
            for c in v.iter_mut() {
                *c = rng.random_range(-1.0..1.0);
            }
            if norm(&v) > 0.3 {
                return v;
            }
        };
        for _ in 0..pairs {
            let u = rand_vec(&mut rng);
            let v = rand_vec(&mut rng);
            let slack = self.support(&u) + self.support(&v) - self.support(&add(&u, &v));
            if slack < -scale_tol {
                return Err(Error::InvalidSpec(format!(
                    "support function is not sublinear: violation {:.3e} at u={u:?}, v={v:?}",
                    -slack
                )));
            }
            let s = rng.random_range(0.1..4.0);
            let homo = (self.support(&scale(&u, s)) - s * self.support(&u)).abs();
            if homo > scale_tol * s.max(1.0) {
                return Err(Error::InvalidSpec(format!(
                    "support function is not positively homogeneous: error {homo:.3e}"
                )));
            }
        }
        for u in sphere_lattice::<N>(512) {
            if self.width_along(&u) <= 0.0 {
                return Err(Error::DegenerateInput(format!(
                    "body has no interior: width ≤ 0 along {u:?}"
                )));
            }
        }
        Ok(())
    }

    /// Longest chords. Maximizes the width `w(u) = h(u) + h(−u)` on a
    /// deterministic grid of [`DIAMETER_GRID`] directions, compass-refines
    /// every grid candidate within the grid's resolution slack of the
    /// maximum, keeps refined directions within `tol` of the best width,
    /// and deduplicates directions that converged together. `non_unique`
    /// is set when essentially different segments (endpoint separation
    /// beyond `10·tol`) tie for the maximum.
    pub fn diameters(&self, tol: f64) -> DiameterSearch<N> {
        let w = |u: &[f64; N]| self.width_along(u);
        let grid = sphere_lattice::<N>(DIAMETER_GRID);
        let widths: Vec<f64> = grid.iter().map(w).collect();
        let w_gmax = widths.iter().fold(f64::NEG_INFINITY, |a, &b| a.max(b));
        // A smooth maximum can sit between grid points; the loss is
        // quadratic in the angular spacing.
        let spacing = match N {
            3 => (4.0 * std::f64::consts::PI / DIAMETER_GRID as f64).sqrt(),
            _ => (2.0 * std::f64::consts::PI.powi(2) / DIAMETER_GRID as f64).cbrt(),
        };
        let slack = w_gmax * spacing * spacing + 10.0 * tol;

        let mut order: Vec<usize> = (0..grid.len()).collect();
        order.sort_by(|&i, &j| {
            widths[j].total_cmp(&widths[i]).then_with(|| {
                if lex_less(&grid[i], &grid[j], 0.0) {
                    std::cmp::Ordering::Less
                } else {
                    std::cmp::Ordering::Greater
                }
            })
        });
        let candidates: Vec<usize> = order
            .into_iter()
            .filter(|&i| widths[i] >= w_gmax - slack)
            .take(DIAMETER_CANDIDATE_CAP)
            .collect();

        let mut refined: Vec<([f64; N], f64)> = candidates
            .iter()
            .map(|&i| sphere_compass_max(w, &grid[i], spacing, 1e-7))
            .map(|(u, wu)| {
                // Canonical sign: keep the lex-smaller of u and −u.
                let nu = scale(&u, -1.0);
                (if lex_less(&nu, &u, 0.0) { nu } else { u }, wu)
            })
            .collect();
        let w_max = refined.iter().fold(f64::NEG_INFINITY, |a, (_, b)| a.max(*b));
        refined.retain(|(_, wu)| *wu >= w_max - tol);
        refined.sort_by(|(ua, wa), (ub, wb)| {
            wb.total_cmp(wa).then_with(|| {
                if lex_less(ua, ub, 0.0) {
                    std::cmp::Ordering::Less
                } else {
                    std::cmp::Ordering::Greater
                }
            })
        });

        let mut dirs: Vec<([f64; N], f64)> = Vec::new();
        for (u, wu) in refined {
            let dup = dirs.iter().any(|(v, _)| {
                dist(&u, v).min(dist(&scale(&u, -1.0), v)) <= DEDUP_DIR
            });
            if !dup {
                dirs.push((u, wu));
                if dirs.len() >= DIAMETER_REPORT_CAP {
                    break;
                }
            }
        }

        let segments: Vec<Segment<N>> = dirs
            .iter()
            .map(|(u, _)| {
                let mut a = self.boundary_point(u);
                let mut b = self.boundary_point(&scale(u, -1.0));
                if lex_less(&b, &a, 0.0) {
                    std::mem::swap(&mut a, &mut b);
                }
                Segment { a, b, length: dist(&a, &b) }
            })
            .collect();

        let sep = |s: &Segment<N>, t: &Segment<N>| {
            let direct = dist(&s.a, &t.a).max(dist(&s.b, &t.b));
            let swapped = dist(&s.a, &t.b).max(dist(&s.b, &t.a));
            direct.min(swapped)
        };
        let mut non_unique = false;
        for i in 0..segments.len() {
            for j in (i + 1)..segments.len() {
                if sep(&segments[i], &segments[j]) > 10.0 * tol {
                    non_unique = true;
                }
            }
        }

        DiameterSearch { segments, max_width: w_max, non_unique }
    }

    /// Wrap a bare support closure (e.g. the support of a hyperplane
    /// section). Estimates circumradius, an interior center (Steiner-type
    /// average), and the inradius from a lattice of samples, then audits
    /// convexity on seeded random pairs.
    pub fn from_support_closure(
        f: impl Fn(&[f64; N]) -> f64 + Send + Sync + 'static,
    ) -> Result<Self> {
        let shape = SupportClosure { f: Arc::new(f) };
        let lattice = sphere_lattice::<N>(ESTIMATE_LATTICE);

        // max_u h(u) over the sphere equals max_x ‖x‖; inflate the sampled
        // maximum to cover lattice gaps.
        let mut h_max = f64::NEG_INFINITY;
        let mut center = [0.0; N];
        for u in &lattice {
            let h = shape.support(u);
            if !h.is_finite() {
                return Err(Error::InvalidSpec("support closure returned a non-finite value".into()));
            }
            h_max = h_max.max(h);
            for i in 0..N {
                center[i] += h * u[i];
            }
        }
        let circumradius = (h_max * 1.3).max(1e-9) + 1e-9;
        // Steiner-point estimate: n · (spherical mean of h(u)·u).
        let center = scale(&center, N as f64 / lattice.len() as f64);

        let mut inradius = f64::INFINITY;
        for u in &lattice {
            inradius = inradius.min(shape.support(u) - dot(&center, u));
        }
        if inradius <= 0.0 {
            return Err(Error::DegenerateInput(format!(
                "support closure describes a body with empty interior (margin {inradius:.3e})"
            )));
        }

        let body = ConvexBody {
            kind: BodyKind::Composite,
            shape: Arc::new(shape),
            circumradius,
            inradius_hint: inradius,
            center_hint: center,
        };
        body.validate_convexity(512, 0x5eed)?;
        Ok(body)
    }

    /// Ball of the given radius — valid in any supported dimension.
    pub fn ball(radius: f64, center: [f64; N]) -> Result<Self> {
        ensure_positive("ball radius", radius)?;
        ensure_finite("ball center", &center)?;
        Ok(ConvexBody {
            kind: BodyKind::Ball,
            shape: Arc::new(Ball { center, radius }),
            circumradius: norm(&center) + radius,
            inradius_hint: radius,
            center_hint: center,
        })
    }

    /// Ellipsoid with semi-axes `radii` along the rows of the orthogonal
    /// matrix `rot` (world = rot · local), centered at `center`.
    pub fn ellipsoid(radii: [f64; N], center: [f64; N], rot: [[f64; N]; N]) -> Result<Self> {
        for r in radii {
            ensure_positive("ellipsoid semi-axis", r)?;
        }
        ensure_finite("ellipsoid center", &center)?;
        let defect = orthonormality_defect(&rot);
        if defect > 1e-9 {
            return Err(Error::InvalidSpec(format!(
                "ellipsoid orientation is not orthogonal (defect {defect:.3e})"
            )));
        }
        let r_max = radii.iter().fold(0.0_f64, |a, &b| a.max(b));
        let r_min = radii.iter().fold(f64::INFINITY, |a, &b| a.min(b));
        Ok(ConvexBody {
            kind: BodyKind::Ellipsoid,
            shape: Arc::new(Ellipsoid { center, radii, rot }),
            circumradius: norm(&center) + r_max,
            inradius_hint: r_min,
            center_hint: center,
        })
    }

    /// Axis-aligned ellipsoid.
    pub fn ellipsoid_axis_aligned(radii: [f64; N], center: [f64; N]) -> Result<Self> {
        let mut rot = [[0.0; N]; N];
        for (i, row) in rot.iter_mut().enumerate() {
            row[i] = 1.0;
        }
        Self::ellipsoid(radii, center, rot)
    }
}

impl ConvexBody<3> {
    /// Solid of revolution of a concave radius profile about an axis line:
    /// heights are measured along `axis.dir` from `axis.point`.
    pub fn revolution(profile: ProfileCurve, axis: Line<3>) -> Result<Self> {
        let a = *axis.dir.as_array();
        let base = axis.point;
        ensure_finite("revolution axis anchor", &base)?;
        let span = profile.t_max - profile.t_min;
        let diam_bound = span + 2.0 * profile.r_max() + 1.0;

        // Interior point: under the peak radius, pulled off the ends.
        let (t_peak, r_peak) = profile.axial_max(0.0);
        debug_assert!(r_peak > 0.0);
        let t_c = t_peak.clamp(profile.t_min + 0.05 * span, profile.t_max - 0.05 * span);
        let center_hint = axpy(&base, t_c, &a);

        let end = |t: f64| norm(&axpy(&base, t, &a));
        let circumradius = end(profile.t_min).max(end(profile.t_max)) + profile.r_max();

        let shape = Revolution { base, axis: a, profile, diam_bound };
        let inradius_hint = sphere_lattice::<3>(512)
            .iter()
            .map(|u| shape.support(u) - dot(&center_hint, u))
            .fold(f64::INFINITY, f64::min)
            .max(0.0);

        Ok(ConvexBody {
            kind: BodyKind::Revolution,
            shape: Arc::new(shape),
            circumradius,
            inradius_hint,
            center_hint,
        })
    }

    /// Convex hull of two concentric perpendicular discs: radius `r1` in
    /// the plane z = 0 and radius `r2` in the plane y = 0, centered at the
    /// origin. Not strictly convex — its boundary contains edges and the
    /// two discs themselves; treat residuals at sampled-body grade.
    pub fn two_disc_hull(r1: f64, r2: f64) -> Result<Self> {
        ensure_positive("disc radius r1", r1)?;
        ensure_positive("disc radius r2", r2)?;
        Ok(ConvexBody {
            kind: BodyKind::DiscHull,
            shape: Arc::new(TwoDiscHull { r1, r2 }),
            circumradius: r1.max(r2),
            // Largest ball inside the hull: r1·r2/√(r1²+r2²), attained in
            // the plane x = 0 where both disc supports are active.
            inradius_hint: r1 * r2 / r1.hypot(r2),
            center_hint: [0.0; 3],
        })
    }
}
