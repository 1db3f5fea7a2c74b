//! Symmetry hypotheses on sections and projections, and the certificates
//! they earn.
//!
//! Every instrument here follows the same scheme: sample a family of planar
//! figures cut or cast from a convex body, measure each figure against a
//! constrained symmetry (a mirror line through a pin, a mirror line in a
//! fixed direction, a point reflection), and report the worst sup-norm
//! residual together with the plane that attained it. The `theorem*_decide`
//! pipelines chain those checks: they validate a configuration, test the
//! sectional hypothesis plane by plane, and — only if every plane passes —
//! certify the advertised global conclusion (body of revolution or ball) by
//! an independent measurement, so a bug in the hypothesis scan cannot smuggle
//! in a certificate.
//!
//! All residuals are Hausdorff distances between support samples (for convex
//! sets the support sup-norm equals the Hausdorff distance), so tolerances
//! are lengths in body units throughout.

use std::f64::consts::{FRAC_PI_2, PI};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bodies::ConvexBody;
use crate::config::{DEFAULT_PLANES, SECTION_SAMPLES_CERT, TOL_ANALYTIC};
use crate::error::{Error, Result};
use crate::geom::{
    line_angle_distance, reflect_dir_about_dir, reflect_point_about_line, wrap_line_angle,
    Frame2, Line, Plane, UnitVec,
};
use crate::linalg::{add, axpy, cross, dist, dot, norm, normalized, reject, scale, sub, sym3_eigen};
use crate::sampling::{
    fibonacci_sphere, fibonacci_sphere_perp4, hopf_sphere4, inset_linspace,
    orthonormal_complement4, orthonormal_pair, ring_perpendicular,
};
use crate::slice::{self, PlanarBody};
use crate::solvers::golden_min;
use crate::symmetry2d::{
    asymmetry_about_line, asymmetry_about_point, find_symmetry_line_through_point,
    find_symmetry_line_with_direction, Line2,
};

/// Angle window granted to direction-constrained mirror searches when a
/// section plane is parallel to the reference line: the mirror must be
/// parallel to the line, but the sampled frame may be misaligned by a hair.
pub const PARALLEL_ANGLE_TOL: f64 = 1e-4;

/// Two pinned lines within this angle of the base line through both pins are
/// treated as coincident with it; their crossing is then taken at the base
/// point instead of an ill-conditioned 2×2 solve.
pub const CASE_ONE_ANGLE_TOL: f64 = 1e-4;

/// Pins farther than this many body scales from the base point are treated
/// as at infinity: the pinned search degrades gracefully into the
/// direction-constrained search instead of anchoring at a numerically
/// useless point.
pub const PIN_DISTANCE_CAP: f64 = 1e4;

/// Boundary samples used by the ball certificate.
pub const SPHERE_SAMPLES: usize = 10_000;

/// Coarse scan steps per great circle when hunting bisected chords.
const LOCUS_SCAN: usize = 180;

/// Bisection window for chord-gap and sign-change roots, in parameter units.
const ROOT_TOL: f64 = 1e-10;

/// Directions for interior-margin checks.
const MARGIN_DIRS: usize = 512;

/// Boundary samples for nested ball certificates (sections of sections,
/// where every support value is itself an optimization solve).
const NESTED_SPHERE_SAMPLES: usize = 2_000;

// ---------------------------------------------------------------------------
// Report types
// ---------------------------------------------------------------------------

/// Outcome of a certificate: the measured residual either met the tolerance
/// or it did not. There is no "maybe".
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertVerdict {
    Pass,
    Fail,
}

/// Where a failed check was observed: the stage name, the offending residual,
/// and whichever locators apply (a section plane, a projection direction, a
/// pin point). Present exactly when something failed.
#[derive(Debug, Clone, Serialize)]
pub struct Witness {
    pub stage: String,
    pub residual: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub plane: Option<Plane<3>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub plane4: Option<Plane<4>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub direction: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub point: Option<Vec<f64>>,
}

impl Witness {
    fn new(stage: &str, residual: f64) -> Self {
        Witness {
            stage: stage.to_owned(),
            residual,
            plane: None,
            plane4: None,
            direction: None,
            point: None,
        }
    }

    fn with_plane(mut self, plane: Plane<3>) -> Self {
        self.plane = Some(plane);
        self
    }

    fn with_plane4(mut self, plane: Plane<4>) -> Self {
        self.plane4 = Some(plane);
        self
    }

    fn with_direction<const N: usize>(mut self, dir: [f64; N]) -> Self {
        self.direction = Some(dir.to_vec());
        self
    }

    fn with_point<const N: usize>(mut self, point: [f64; N]) -> Self {
        self.point = Some(point.to_vec());
        self
    }
}

/// A pass/fail measurement: the worst residual over all probes, a witness
/// for the worst probe when it failed, and how many probes were scored.
#[derive(Debug, Clone, Serialize)]
pub struct Certification {
    pub verdict: CertVerdict,
    pub residual: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    pub samples_used: usize,
}

impl Certification {
    pub fn passed(&self) -> bool {
        self.verdict == CertVerdict::Pass
    }

    /// Build the verdict from the worst observation; the witness is kept
    /// only on failure.
    fn from_worst(residual: f64, witness: Witness, tol: f64, samples_used: usize) -> Self {
        let pass = residual <= tol;
        Certification {
            verdict: if pass { CertVerdict::Pass } else { CertVerdict::Fail },
            residual,
            witness: if pass { None } else { Some(witness) },
            samples_used,
        }
    }
}

/// One plane of a constrained symmetry survey.
#[derive(Debug, Clone, Serialize)]
pub struct PlaneSymmetryRecord {
    pub plane: Plane<3>,
    /// Crossing of the in-plane base line with the reference line, when the
    /// two actually cross within [`PIN_DISTANCE_CAP`]; the search was pinned
    /// there. `None` means the direction-constrained search ran instead.
    pub q_pin: Option<[f64; 3]>,
    /// Best constrained mirror line, in the section's own plane coordinates.
    pub found: Option<Line2>,
    /// Residual of `found` (sup-norm against the reflected figure).
    pub residual: f64,
    /// The plane missed the body; nothing was measured.
    pub skipped: bool,
    /// The partner plane's `found` line carried into this plane by the
    /// point-reflection about the candidate axis, when both exist.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mirror_line: Option<Line2>,
    /// This section's asymmetry about `mirror_line`. Kept separate from
    /// `residual`: the pinned line is the hypothesis under test, the carried
    /// line is a diagnostic of reflection symmetry across planes.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mirror_residual: Option<f64>,
}

impl PlaneSymmetryRecord {
    fn skipped(plane: Plane<3>) -> Self {
        PlaneSymmetryRecord {
            plane,
            q_pin: None,
            found: None,
            residual: 0.0,
            skipped: true,
            mirror_line: None,
            mirror_residual: None,
        }
    }
}

/// Distance/aperture profile of the two constrained lines over a pencil of
/// planes through one in-plane base line.
///
/// For each tilt `phi` the record plane is cut, the mirror line pinned at
/// `q_theta` is found, the same is done in the reflected partner plane at
/// pin `reflect(m_theta)`, and the partner line is carried back. `z` is the
/// crossing of the two lines, `f` its distance to the base line, and `g` the
/// aperture angle at `z` between the rays toward the two pins. `case_one`
/// marks planes where both lines collapse onto the base line itself (there
/// `z` is reported at the base point, `f = 0`, `g = π`).
#[derive(Debug, Clone, Serialize)]
pub struct FGProfile {
    pub theta: f64,
    pub phi_grid: Vec<f64>,
    pub f: Vec<f64>,
    pub g: Vec<f64>,
    pub z: Vec<[f64; 3]>,
    pub case_one: Vec<bool>,
    pub q_theta: [f64; 3],
    pub m_theta: [f64; 3],
}

impl FGProfile {
    /// Fraction of planes whose lines collapsed onto the base line.
    pub fn case_one_fraction(&self) -> f64 {
        if self.case_one.is_empty() {
            return 0.0;
        }
        self.case_one.iter().filter(|&&c| c).count() as f64 / self.case_one.len() as f64
    }
}

/// All endpoints of chords bisected by the anchor, with the plane fitted
/// through them.
#[derive(Debug, Clone, Serialize)]
pub struct MidpointLocus {
    pub anchor: [f64; 3],
    pub points: Vec<[f64; 3]>,
    /// Least-squares plane through the points (always reported; read it
    /// together with `planarity_residual`).
    pub best_plane: Option<Plane<3>>,
    /// Worst distance of a point from `best_plane`.
    pub planarity_residual: f64,
    /// The anchor bisects essentially every chord through it (it is a center
    /// of symmetry); `points` then sample the whole boundary and the fitted
    /// plane is meaningless.
    pub spans_boundary: bool,
}

/// Least-squares disc through a planar figure's support samples and the
/// worst deviation from it. The center solves the normal equations exactly
/// (it is the Steiner point), the radius is the mean support about it.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct DiscFit {
    pub center: [f64; 2],
    pub radius: f64,
    pub residual: f64,
}

/// Sampling effort for the decision pipelines.
///
/// `nested_*` budgets apply to certificates running inside per-section
/// loops of four-dimensional pipelines, where every support evaluation of a
/// derived body is itself an optimization solve and full budgets would
/// multiply into minutes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Budget {
    pub planes: usize,
    pub samples: usize,
    pub theta_steps: usize,
    pub phi_steps: usize,
    pub nested_planes: usize,
    pub nested_samples: usize,
    pub tol: f64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            planes: DEFAULT_PLANES,
            samples: SECTION_SAMPLES_CERT,
            theta_steps: 36,
            phi_steps: 36,
            nested_planes: 8,
            nested_samples: 192,
            tol: TOL_ANALYTIC,
        }
    }
}

/// Outcome of a decision pipeline: the certified conclusion with its
/// certificate, or the stage and place where the hypothesis broke.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Verdict {
    RevolutionCertified {
        axis_point: Vec<f64>,
        axis_dir: Vec<f64>,
        certification: Certification,
    },
    SphereCertified {
        center: Vec<f64>,
        radius: f64,
        certification: Certification,
    },
    HypothesisFailed {
        witness: Witness,
    },
}

impl Verdict {
    pub fn passed(&self) -> bool {
        !matches!(self, Verdict::HypothesisFailed { .. })
    }
}

/// What the four-dimensional pipeline samples: hyperplane sections through a
/// base point, or projections along directions orthogonal to the diameter.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum Theorem45Mode {
    Sections { base: [f64; 4] },
    Projections,
}

// ---------------------------------------------------------------------------
// Small helpers
// ---------------------------------------------------------------------------

fn body_eps<const N: usize>(k: &ConvexBody<N>) -> f64 {
    1e-9 * (1.0 + k.circumradius())
}

/// Require `p` strictly inside the body (sampled margin over many
/// directions).
fn ensure_interior<const N: usize>(k: &ConvexBody<N>, p: &[f64; N]) -> Result<()> {
    let margin = k.interior_margin(p, MARGIN_DIRS);
    if margin <= body_eps(k) {
        return Err(Error::PointOutsideBody { margin });
    }
    Ok(())
}

/// Undirected angle of a world direction inside a plane frame.
fn frame_angle(frame: &Frame2, dir_world: &[f64; 3]) -> f64 {
    wrap_line_angle(dot(dir_world, &frame.e2).atan2(dot(dir_world, &frame.e1)))
}

/// Crossing of two plane lines; `None` when nearly parallel.
fn intersect_lines2(a: &Line2, b: &Line2) -> Option<[f64; 2]> {
    let da = a.direction();
    let db = b.direction();
    let det = da[0] * db[1] - da[1] * db[0];
    if det.abs() < 1e-9 {
        return None;
    }
    let r = [b.through[0] - a.through[0], b.through[1] - a.through[1]];
    let t = (r[0] * db[1] - r[1] * db[0]) / det;
    Some([a.through[0] + t * da[0], a.through[1] + t * da[1]])
}

/// Worst violation of `h(u) = h(-u) + 2c·u` over sampled directions: the
/// sup-norm distance between the body and its point reflection about its
/// own center hint.
pub fn central_asymmetry(k: &ConvexBody<3>, n_dirs: usize) -> f64 {
    let o = k.center_hint();
    fibonacci_sphere(n_dirs)
        .iter()
        .map(|u| (k.support(u) - k.support(&scale(u, -1.0)) - 2.0 * dot(&o, u)).abs())
        .fold(0.0_f64, f64::max)
}

// ---------------------------------------------------------------------------
// Disc fit
// ---------------------------------------------------------------------------

/// Fit a disc to the figure's support samples.
///
/// A disc of radius `r` centered at `c` has support `r + c·u`; least squares
/// over the sample grid gives `c` as the Steiner point (the `u_j` average
/// out) and `r` as the mean support. The residual is the worst sample
/// deviation, so it is zero exactly for discs.
pub fn disc_fit(sec: &PlanarBody) -> DiscFit {
    let center = sec.steiner();
    let radius = sec.samples().iter().sum::<f64>() / sec.m() as f64;
    let mut residual = 0.0_f64;
    for j in 0..sec.m() {
        let th = sec.angle(j);
        let predicted = radius + center[0] * th.cos() + center[1] * th.sin();
        residual = residual.max((sec.samples()[j] - predicted).abs());
    }
    DiscFit {
        center,
        radius,
        residual,
    }
}

/// Is the figure a disc, to within `tol` in the support sup-norm?
pub fn is_disc(sec: &PlanarBody, tol: f64) -> bool {
    disc_fit(sec).residual <= tol
}

// ---------------------------------------------------------------------------
// Axis chord
// ---------------------------------------------------------------------------

/// Parameter interval that a line spends inside the body.
///
/// The sampled interior margin along the line is concave in the parameter
/// (a minimum of affine functions), so golden section finds its maximizer;
/// if even the best point is not interior the line misses the body and the
/// axis is degenerate. Exit parameters are then resolved by ray casting both
/// ways from the interior point.
fn axis_chord<const N: usize>(k: &ConvexBody<N>, axis: &Line<N>) -> Result<(f64, f64)> {
    let reach = k.circumradius() + dist(&axis.point, &k.center_hint()) + 1.0;
    let depth = |t: f64| -k.interior_margin(&axis.at(t), MARGIN_DIRS);
    let (t0, neg_margin) = golden_min(depth, -reach, reach, 1e-9 * reach);
    if -neg_margin <= body_eps(k) {
        return Err(Error::DegenerateAxis);
    }
    let x0 = axis.at(t0);
    let d = *axis.dir.as_array();
    let t_hi = t0 + k.ray_exit(&x0, &d);
    let t_lo = t0 - k.ray_exit(&x0, &scale(&d, -1.0));
    Ok((t_lo, t_hi))
}

// ---------------------------------------------------------------------------
// Axis and ball certificates
// ---------------------------------------------------------------------------

/// Is the line an axis of symmetry (the half-turn about it maps the body to
/// itself)?
///
/// The half-turn restricted to any plane perpendicular to the axis is the
/// point reflection about the plane's axis crossing, so each cross-section
/// is scored by half its point-reflection asymmetry about that pin — which,
/// for a centrally symmetric section, is exactly how far its true center
/// sits off the axis.
pub fn is_axis_of_symmetry(
    k: &ConvexBody<3>,
    axis: &Line<3>,
    n_planes: usize,
    m_samples: usize,
    tol: f64,
) -> Result<Certification> {
    let (t_lo, t_hi) = axis_chord(k, axis)?;
    let ts = inset_linspace(t_lo, t_hi, 0.02 * (t_hi - t_lo), n_planes);
    let scored: Vec<(f64, Plane<3>, [f64; 3])> = ts
        .par_iter()
        .map(|&t| -> Result<(f64, Plane<3>, [f64; 3])> {
            let pin_world = axis.at(t);
            let plane = Plane::through(&pin_world, *axis.dir.as_array())?;
            let sec = slice::section(k, &plane, m_samples)?;
            let pin = sec.frame.to_local(&pin_world);
            Ok((
                asymmetry_about_point(&sec, pin) / 2.0,
                plane,
                pin_world,
            ))
        })
        .collect::<Result<_>>()?;
    let worst = scored
        .iter()
        .max_by(|a, b| a.0.total_cmp(&b.0))
        .expect("inset_linspace returns at least one plane");
    let witness = Witness::new("half-turn-sections", worst.0)
        .with_plane(worst.1.clone())
        .with_point(worst.2);
    Ok(Certification::from_worst(
        worst.0,
        witness,
        tol,
        scored.len(),
    ))
}

/// Certify that the body is a solid of revolution about `axis`: every
/// cross-section perpendicular to the axis must be a disc centered on it.
/// Each plane scores the disc-fit residual plus the distance from the fitted
/// center to the axis crossing.
pub fn certify_body_of_revolution(
    k: &ConvexBody<3>,
    axis: &Line<3>,
    n_planes: usize,
    m_samples: usize,
    tol: f64,
) -> Result<Certification> {
    let (t_lo, t_hi) = axis_chord(k, axis)?;
    let ts = inset_linspace(t_lo, t_hi, 0.02 * (t_hi - t_lo), n_planes);
    let scored: Vec<(f64, Plane<3>, [f64; 3])> = ts
        .par_iter()
        .map(|&t| -> Result<(f64, Plane<3>, [f64; 3])> {
            let pin_world = axis.at(t);
            let plane = Plane::through(&pin_world, *axis.dir.as_array())?;
            let sec = slice::section(k, &plane, m_samples)?;
            let fit = disc_fit(&sec);
            let pin = sec.frame.to_local(&pin_world);
            let off = ((fit.center[0] - pin[0]).powi(2) + (fit.center[1] - pin[1]).powi(2)).sqrt();
            Ok((fit.residual + off, plane, pin_world))
        })
        .collect::<Result<_>>()?;
    let worst = scored
        .iter()
        .max_by(|a, b| a.0.total_cmp(&b.0))
        .expect("inset_linspace returns at least one plane");
    let witness = Witness::new("disc-sections", worst.0)
        .with_plane(worst.1.clone())
        .with_point(worst.2);
    Ok(Certification::from_worst(
        worst.0,
        witness,
        tol,
        scored.len(),
    ))
}

/// Ball fit of sampled boundary points: center, common radius, worst radial
/// deviation, and the direction/point attaining it.
struct RadialFit {
    center: [f64; 3],
    radius: f64,
    residual: f64,
    worst_dir: [f64; 3],
    worst_point: [f64; 3],
    samples: usize,
}

fn radial_fit(k: &ConvexBody<3>, n_samples: usize) -> RadialFit {
    let dirs = fibonacci_sphere(n_samples);
    let pts: Vec<[f64; 3]> = dirs.iter().map(|u| k.boundary_point(u)).collect();
    let inv = 1.0 / pts.len() as f64;
    let mut center = [0.0_f64; 3];
    for x in &pts {
        center = axpy(&center, inv, x);
    }
    // Point-lattice centroids carry an O(1/n) directional bias, enough to
    // fail an exact ball at tight tolerances; descend on the spread itself.
    let spread = |c: &[f64; 3]| -> (f64, f64, usize) {
        let mean = pts.iter().map(|x| dist(x, c)).sum::<f64>() * inv;
        let mut worst = 0.0_f64;
        let mut at = 0;
        for (i, x) in pts.iter().enumerate() {
            let dev = (dist(x, c) - mean).abs();
            if dev > worst {
                worst = dev;
                at = i;
            }
        }
        (worst, mean, at)
    };
    let (mut best, mut radius, mut worst_at) = spread(&center);
    let mut step = 0.25 * (1.0 + k.circumradius());
    let floor = 1e-11 * (1.0 + k.circumradius());
    while step > floor {
        let mut improved = false;
        for axis in 0..3 {
            for sign in [-1.0, 1.0] {
                let mut cand = center;
                cand[axis] += sign * step;
                let (s, mean, at) = spread(&cand);
                if s < best {
                    best = s;
                    radius = mean;
                    worst_at = at;
                    center = cand;
                    improved = true;
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    RadialFit {
        center,
        radius,
        residual: best,
        worst_dir: dirs[worst_at],
        worst_point: pts[worst_at],
        samples: pts.len(),
    }
}

/// Certify that the body is a ball: all sampled boundary points must sit at
/// one common distance from a common center (the center is fitted, so the
/// certificate is translation independent).
pub fn certify_sphere(k: &ConvexBody<3>, tol: f64) -> Certification {
    certify_sphere_sampled(k, SPHERE_SAMPLES, tol).0
}

fn certify_sphere_sampled(
    k: &ConvexBody<3>,
    n_samples: usize,
    tol: f64,
) -> (Certification, [f64; 3], f64) {
    let fit = radial_fit(k, n_samples);
    let witness = Witness::new("radial-spread", fit.residual)
        .with_direction(fit.worst_dir)
        .with_point(fit.worst_point);
    (
        Certification::from_worst(fit.residual, witness, tol, fit.samples),
        fit.center,
        fit.radius,
    )
}

// ---------------------------------------------------------------------------
// Point classification: free and pinned mirror lines on plane pencils
// ---------------------------------------------------------------------------

/// Does every plane section through `p` have some mirror line?
///
/// Any mirror line of a convex figure passes through its Steiner point (the
/// Steiner point is equivariant under isometries), so the best line through
/// the Steiner point measures the figure's distance from having a mirror at
/// all. The worst plane through `p` decides.
pub fn larman_point_test(
    k: &ConvexBody<3>,
    p: [f64; 3],
    n_planes: usize,
    m_samples: usize,
    tol: f64,
) -> Result<Certification> {
    ensure_interior(k, &p)?;
    let normals = fibonacci_sphere(n_planes);
    let scored: Vec<(f64, Plane<3>)> = normals
        .par_iter()
        .map(|nrm| -> Result<(f64, Plane<3>)> {
            let plane = Plane::through(&p, *nrm)?;
            let sec = slice::section(k, &plane, m_samples)?;
            let pinned = find_symmetry_line_through_point(&sec, sec.steiner(), tol);
            Ok((pinned.residual, plane))
        })
        .collect::<Result<_>>()?;
    let worst = scored
        .iter()
        .max_by(|a, b| a.0.total_cmp(&b.0))
        .expect("at least one plane is sampled");
    let witness = Witness::new("section-mirror", worst.0)
        .with_plane(worst.1.clone())
        .with_point(p);
    Ok(Certification::from_worst(
        worst.0,
        witness,
        tol,
        scored.len(),
    ))
}

/// Does every plane section through `p` have a mirror line passing through
/// `p` itself? The worst plane decides.
pub fn revolution_point_test(
    k: &ConvexBody<3>,
    p: [f64; 3],
    n_planes: usize,
    m_samples: usize,
    tol: f64,
) -> Result<Certification> {
    ensure_interior(k, &p)?;
    let normals = fibonacci_sphere(n_planes);
    let scored: Vec<(f64, Plane<3>)> = normals
        .par_iter()
        .map(|nrm| -> Result<(f64, Plane<3>)> {
            let plane = Plane::through(&p, *nrm)?;
            let sec = slice::section(k, &plane, m_samples)?;
            let pinned = find_symmetry_line_through_point(&sec, sec.frame.to_local(&p), tol);
            Ok((pinned.residual, plane))
        })
        .collect::<Result<_>>()?;
    let worst = scored
        .iter()
        .max_by(|a, b| a.0.total_cmp(&b.0))
        .expect("at least one plane is sampled");
    let witness = Witness::new("pinned-section-mirror", worst.0)
        .with_plane(worst.1.clone())
        .with_point(p);
    Ok(Certification::from_worst(
        worst.0,
        witness,
        tol,
        scored.len(),
    ))
}

// ---------------------------------------------------------------------------
// Constrained symmetry survey
// ---------------------------------------------------------------------------

/// Geometry shared by every plane of a survey: the base point `p`, the base
/// plane through `p` and the reference line, and the pencil coordinates.
///
/// In-plane base lines are `L(θ) = p + t(cos θ·a1 + sin θ·a2)` and section
/// planes are the base plane tilted about `L(θ)` by `φ ∈ (0, π)`, with
/// normal `cos φ·a3 − sin φ·n2(θ)`. Together they reach every plane through
/// `p` that is not the base plane itself. When the body's center lies in the
/// base plane away from `p`, the line from `p` through the center is kept as
/// the candidate mirror axis: reflecting section planes about it pairs the
/// pencil with itself.
struct SurveyFrame {
    base: [f64; 3],
    a1: [f64; 3],
    a2: [f64; 3],
    a3: [f64; 3],
    line: Line<3>,
    /// Candidate mirror axis through the base point and the body center.
    mirror_axis: Option<Line<3>>,
    /// Image of the reference line under the half-turn about `mirror_axis`.
    mirror_line: Option<Line<3>>,
    size: f64,
}

impl SurveyFrame {
    fn new(k: &ConvexBody<3>, p: [f64; 3], l: &Line<3>) -> Result<SurveyFrame> {
        let size = 1.0 + k.circumradius();
        let foot = l.closest_point(&p);
        let perp = sub(&p, &foot);
        if norm(&perp) <= 1e-9 * size {
            return Err(Error::ConfigurationInvalid(
                "survey base point lies on the reference line".into(),
            ));
        }
        let a3 = normalized(&cross(l.dir.as_array(), &perp), 1e-300)
            .expect("cross of unit direction with a nonzero perpendicular");

        let o = k.center_hint();
        let po = sub(&o, &p);
        let mirror_axis = if norm(&po) > 1e-9 * size && dot(&po, &a3).abs() <= 1e-6 * size {
            normalized(&reject(&po, &a3), 1e-12).map(|d| Line::new(p, d))
        } else {
            None
        };
        let mirror_axis = match mirror_axis {
            Some(axis) => Some(axis?),
            None => None,
        };

        let a1 = match &mirror_axis {
            Some(axis) => *axis.dir.as_array(),
            None => *l.dir.as_array(),
        };
        let a2 = cross(&a3, &a1);
        let mirror_line = match &mirror_axis {
            Some(axis) => Some(Line::new(
                reflect_point_about_line(&l.point, axis),
                reflect_dir_about_dir(l.dir.as_array(), &axis.dir),
            )?),
            None => None,
        };
        Ok(SurveyFrame {
            base: p,
            a1,
            a2,
            a3,
            line: l.clone(),
            mirror_axis,
            mirror_line,
            size,
        })
    }

    /// Direction of the in-plane base line `L(θ)`.
    fn direction(&self, theta: f64) -> [f64; 3] {
        axpy(&scale(&self.a1, theta.cos()), theta.sin(), &self.a2)
    }

    /// In-plane normal of `L(θ)` within the base plane.
    fn conormal(&self, theta: f64) -> [f64; 3] {
        axpy(&scale(&self.a1, -theta.sin()), theta.cos(), &self.a2)
    }

    /// Section plane: the base plane tilted about `L(θ)` by `φ`.
    fn plane(&self, theta: f64, phi: f64) -> Result<Plane<3>> {
        let normal = axpy(&scale(&self.a3, phi.cos()), -phi.sin(), &self.conormal(theta));
        Plane::through(&self.base, normal)
    }

    /// In-plane normal of `L(θ)` within the tilted section plane: the
    /// direction along which signed distances from `L(θ)` are measured.
    fn tilted_conormal(&self, theta: f64, phi: f64) -> [f64; 3] {
        axpy(&scale(&self.conormal(theta), phi.cos()), phi.sin(), &self.a3)
    }

    /// Crossing of `L(θ)` with a coplanar target line, unless they are
    /// parallel or the crossing is uselessly far away.
    fn pin_on(&self, theta: f64, target: &Line<3>) -> Option<[f64; 3]> {
        let d1 = [theta.cos(), theta.sin()];
        let rel = sub(&target.point, &self.base);
        let t0 = [dot(&rel, &self.a1), dot(&rel, &self.a2)];
        let dt = [
            dot(target.dir.as_array(), &self.a1),
            dot(target.dir.as_array(), &self.a2),
        ];
        let det = d1[0] * dt[1] - d1[1] * dt[0];
        if det.abs() <= 1e-9 {
            return None;
        }
        let t = (t0[0] * dt[1] - t0[1] * dt[0]) / det;
        if t.abs() > PIN_DISTANCE_CAP * self.size {
            return None;
        }
        Some(axpy(&self.base, t, &self.direction(theta)))
    }

    fn q_pin(&self, theta: f64) -> Option<[f64; 3]> {
        self.pin_on(theta, &self.line)
    }

    fn m_pin(&self, theta: f64) -> Option<[f64; 3]> {
        self.mirror_line
            .as_ref()
            .and_then(|m| self.pin_on(theta, m))
    }
}

/// Default survey grids: `n_theta` base-line angles filling `(-π/2, π/2]`
/// and `n_phi` tilts inset into `(0, π)` by half a step. Both grids are
/// closed under the pairing `(θ, φ) ↦ (−θ, ·)` used for mirror partners.
pub fn survey_grids(n_theta: usize, n_phi: usize) -> (Vec<f64>, Vec<f64>) {
    let nt = n_theta.max(1);
    let np = n_phi.max(1);
    let theta = (0..nt)
        .map(|i| -FRAC_PI_2 + PI * (i + 1) as f64 / nt as f64)
        .collect();
    let phi = inset_linspace(0.0, PI, FRAC_PI_2 / np as f64, np);
    (theta, phi)
}

fn eval_survey_plane(
    k: &ConvexBody<3>,
    frame: &SurveyFrame,
    theta: f64,
    phi: f64,
    m_samples: usize,
    tol: f64,
) -> Result<(PlaneSymmetryRecord, Option<PlanarBody>)> {
    let plane = frame.plane(theta, phi)?;
    let sec = match slice::section(k, &plane, m_samples) {
        Ok(sec) => sec,
        Err(Error::EmptySection { .. }) => {
            return Ok((PlaneSymmetryRecord::skipped(plane), None))
        }
        Err(e) => return Err(e),
    };
    let (q_pin, pinned) = match frame.q_pin(theta) {
        Some(q) => (
            Some(q),
            find_symmetry_line_through_point(&sec, sec.frame.to_local(&q), tol),
        ),
        None => {
            let angle = frame_angle(&sec.frame, &frame.direction(theta));
            (
                None,
                find_symmetry_line_with_direction(&sec, angle, PARALLEL_ANGLE_TOL, tol),
            )
        }
    };
    let record = PlaneSymmetryRecord {
        plane,
        q_pin,
        found: Some(pinned.line),
        residual: pinned.residual,
        skipped: false,
        mirror_line: None,
        mirror_residual: None,
    };
    Ok((record, Some(sec)))
}

/// Survey every plane of the `(θ, φ)` pencil through `p` for a mirror line
/// meeting the reference line `l`.
///
/// Planes crossing `l` are searched for the best mirror through the
/// crossing; planes parallel to `l` (or whose crossing is beyond
/// [`PIN_DISTANCE_CAP`]) are searched for the best mirror parallel to it.
/// When a candidate mirror axis exists (body center in the base plane away
/// from `p`), each record additionally carries the partner plane's found
/// line mapped through the half-turn about that axis, scored on this plane's
/// own section — a cross-plane consistency diagnostic that never touches the
/// pinned residual.
pub fn constrained_symmetry_survey(
    k: &ConvexBody<3>,
    p: [f64; 3],
    l: &Line<3>,
    theta_grid: &[f64],
    phi_grid: &[f64],
    m_samples: usize,
    tol: f64,
) -> Result<Vec<PlaneSymmetryRecord>> {
    ensure_interior(k, &p)?;
    let frame = SurveyFrame::new(k, p, l)?;
    let nodes: Vec<(f64, f64)> = theta_grid
        .iter()
        .flat_map(|&th| phi_grid.iter().map(move |&ph| (th, ph)))
        .collect();
    let mut evals: Vec<(PlaneSymmetryRecord, Option<PlanarBody>)> = nodes
        .par_iter()
        .map(|&(th, ph)| eval_survey_plane(k, &frame, th, ph, m_samples, tol))
        .collect::<Result<_>>()?;

    if let Some(axis) = &frame.mirror_axis {
        // Pair each plane with the grid plane closest to its reflection;
        // matching reflected normals numerically sidesteps any bookkeeping
        // about how the grid indexes map under the half-turn.
        let normals: Vec<[f64; 3]> = evals
            .iter()
            .map(|(r, _)| *r.plane.normal.as_array())
            .collect();
        let partners: Vec<Option<usize>> = normals
            .par_iter()
            .map(|nrm| {
                let reflected = reflect_dir_about_dir(nrm, &axis.dir);
                let (best, align) = normals
                    .iter()
                    .enumerate()
                    .map(|(j, other)| (j, dot(&reflected, other).abs()))
                    .max_by(|a, b| a.1.total_cmp(&b.1))
                    .expect("survey grids are non-empty");
                (align >= 1.0 - 1e-9).then_some(best)
            })
            .collect();
        let mirrors: Vec<Option<(Line2, f64)>> = (0..evals.len())
            .into_par_iter()
            .map(|i| {
                let j = partners[i]?;
                let sec = evals[i].1.as_ref()?;
                let partner_sec = evals[j].1.as_ref()?;
                let partner_line = evals[j].0.found?;
                let through =
                    reflect_point_about_line(&partner_sec.frame.to_world(&partner_line.through), axis);
                let dir = reflect_dir_about_dir(
                    &partner_sec.frame.direction(partner_line.angle),
                    &axis.dir,
                );
                let line = Line2::new(frame_angle(&sec.frame, &dir), sec.frame.to_local(&through));
                Some((line, asymmetry_about_line(sec, &line)))
            })
            .collect();
        for (eval, mirror) in evals.iter_mut().zip(mirrors) {
            if let Some((line, residual)) = mirror {
                eval.0.mirror_line = Some(line);
                eval.0.mirror_residual = Some(residual);
            }
        }
    }

    Ok(evals.into_iter().map(|(r, _)| r).collect())
}

// ---------------------------------------------------------------------------
// Line-crossing profile over one tilt pencil
// ---------------------------------------------------------------------------

/// Everything `fg` evaluations share for one `θ`: the survey frame, the
/// mirror axis (mandatory here), the two pins, and the base line.
struct PencilContext {
    frame: SurveyFrame,
    axis: Line<3>,
    theta: f64,
    q: [f64; 3],
    m: [f64; 3],
    base_line: Line<3>,
}

impl PencilContext {
    fn new(k: &ConvexBody<3>, p: [f64; 3], l: &Line<3>, theta: f64) -> Result<PencilContext> {
        let frame = SurveyFrame::new(k, p, l)?;
        let axis = frame.mirror_axis.clone().ok_or_else(|| {
            Error::MissingLines(
                "the crossing profile needs a candidate mirror axis: the body center must lie \
                 in the base plane, away from the base point"
                    .into(),
            )
        })?;
        let q = frame.q_pin(theta).ok_or_else(|| {
            Error::MissingLines(format!(
                "the base line at theta = {theta} is parallel to the reference line; the \
                 crossing pin does not exist"
            ))
        })?;
        let m = frame.m_pin(theta).ok_or_else(|| {
            Error::MissingLines(format!(
                "the base line at theta = {theta} is parallel to the reflected reference \
                 line; the mirrored pin does not exist"
            ))
        })?;
        let base_line = Line::new(p, frame.direction(theta))?;
        Ok(PencilContext {
            frame,
            axis,
            theta,
            q,
            m,
            base_line,
        })
    }
}

struct PencilEntry {
    f: f64,
    g: f64,
    z: [f64; 3],
    case_one: bool,
    signed: f64,
}

fn eval_pencil_plane(
    k: &ConvexBody<3>,
    ctx: &PencilContext,
    phi: f64,
    m_samples: usize,
    tol: f64,
) -> Result<PencilEntry> {
    let plane = ctx.frame.plane(ctx.theta, phi)?;
    let sec = slice::section(k, &plane, m_samples)?;
    let pinned = find_symmetry_line_through_point(&sec, sec.frame.to_local(&ctx.q), tol);

    // The partner plane is reflected directly (no grid involved), its pinned
    // line found, and that line carried back into this plane.
    let partner_plane = Plane::through(
        &ctx.frame.base,
        reflect_dir_about_dir(plane.normal.as_array(), &ctx.axis.dir),
    )?;
    let partner_sec = slice::section(k, &partner_plane, m_samples)?;
    let partner_pin = reflect_point_about_line(&ctx.m, &ctx.axis);
    let partner =
        find_symmetry_line_through_point(&partner_sec, partner_sec.frame.to_local(&partner_pin), tol);
    let through = reflect_point_about_line(
        &partner_sec.frame.to_world(&partner.line.through),
        &ctx.axis,
    );
    let dir = reflect_dir_about_dir(
        &partner_sec.frame.direction(partner.line.angle),
        &ctx.axis.dir,
    );
    let mirrored = Line2::new(frame_angle(&sec.frame, &dir), sec.frame.to_local(&through));

    // Both lines pass through points of the base line by construction, so if
    // both align with it in angle they *are* the base line; crossing them
    // would divide noise by noise.
    let base_angle = frame_angle(&sec.frame, &ctx.frame.direction(ctx.theta));
    let case_one = line_angle_distance(pinned.line.angle, base_angle) <= CASE_ONE_ANGLE_TOL
        && line_angle_distance(mirrored.angle, base_angle) <= CASE_ONE_ANGLE_TOL;
    let z = if case_one {
        ctx.frame.base
    } else {
        match intersect_lines2(&pinned.line, &mirrored) {
            Some(z2) => sec.frame.to_world(&z2),
            // Parallel but distinct lines: fall back to the pin midpoint.
            None => scale(&add(&ctx.q, &ctx.m), 0.5),
        }
    };
    let f = ctx.base_line.distance_to(&z);
    let signed = dot(&sub(&z, &ctx.frame.base), &ctx.frame.tilted_conormal(ctx.theta, phi));
    let g = if case_one {
        PI
    } else {
        let v1 = sub(&ctx.q, &z);
        let v2 = sub(&ctx.m, &z);
        let (n1, n2) = (norm(&v1), norm(&v2));
        if n1 <= 1e-12 * ctx.frame.size || n2 <= 1e-12 * ctx.frame.size {
            // The crossing landed on a pin; the aperture is undefined there.
            FRAC_PI_2
        } else {
            (dot(&v1, &v2) / (n1 * n2)).clamp(-1.0, 1.0).acos().max(f64::EPSILON)
        }
    };
    Ok(PencilEntry {
        f,
        g,
        z,
        case_one,
        signed,
    })
}

/// Profile the two constrained lines over the tilt pencil of `L(θ)`.
///
/// See [`FGProfile`] for the meaning of the columns. Fails with
/// `MissingLines` when the configuration admits no mirror axis or no pins at
/// this `θ`.
pub fn fg_profile(
    k: &ConvexBody<3>,
    p: [f64; 3],
    l: &Line<3>,
    theta: f64,
    phi_grid: &[f64],
    m_samples: usize,
    tol: f64,
) -> Result<FGProfile> {
    ensure_interior(k, &p)?;
    let ctx = PencilContext::new(k, p, l, theta)?;
    let entries: Vec<PencilEntry> = phi_grid
        .par_iter()
        .map(|&phi| eval_pencil_plane(k, &ctx, phi, m_samples, tol))
        .collect::<Result<_>>()?;
    Ok(FGProfile {
        theta,
        phi_grid: phi_grid.to_vec(),
        f: entries.iter().map(|e| e.f).collect(),
        g: entries.iter().map(|e| e.g).collect(),
        z: entries.iter().map(|e| e.z).collect(),
        case_one: entries.iter().map(|e| e.case_one).collect(),
        q_theta: ctx.q,
        m_theta: ctx.m,
    })
}

/// Locate a tilt `φ` where the crossing of the two constrained lines lands
/// on the base line itself (`f = 0`).
///
/// The crossing's signed offset from the base line changes sign across such
/// a tilt; the grid is scanned for a sign change and the root bisected.
/// Returns `None` when no sign change shows up on the grid.
pub fn locate_f_zero(
    k: &ConvexBody<3>,
    p: [f64; 3],
    l: &Line<3>,
    theta: f64,
    phi_grid: &[f64],
    m_samples: usize,
    tol: f64,
) -> Result<Option<f64>> {
    ensure_interior(k, &p)?;
    let ctx = PencilContext::new(k, p, l, theta)?;
    let signed_at = |phi: f64| -> Result<f64> {
        Ok(eval_pencil_plane(k, &ctx, phi, m_samples, tol)?.signed)
    };
    let values: Vec<f64> = phi_grid
        .par_iter()
        .map(|&phi| signed_at(phi))
        .collect::<Result<_>>()?;
    for (i, pair) in values.windows(2).enumerate() {
        if pair[0] == 0.0 {
            return Ok(Some(phi_grid[i]));
        }
        if pair[0].signum() == pair[1].signum() {
            continue;
        }
        let (mut lo, mut hi, mut f_lo) = (phi_grid[i], phi_grid[i + 1], pair[0]);
        while hi - lo > ROOT_TOL {
            let mid = 0.5 * (lo + hi);
            let f_mid = signed_at(mid)?;
            if f_mid == 0.0 {
                return Ok(Some(mid));
            }
            if f_mid.signum() == f_lo.signum() {
                lo = mid;
                f_lo = f_mid;
            } else {
                hi = mid;
            }
        }
        return Ok(Some(0.5 * (lo + hi)));
    }
    if let Some(&last) = values.last() {
        if last == 0.0 {
            return Ok(Some(*phi_grid.last().expect("grid is non-empty")));
        }
    }
    Ok(None)
}

// ---------------------------------------------------------------------------
// Midpoint locus and shadow boundary
// ---------------------------------------------------------------------------

/// Endpoints of every chord through `x` that `x` bisects, collected by
/// scanning great circles of directions, with the least-squares plane
/// through them.
///
/// For each sampled circle the chord-length imbalance
/// `gap(s) = exit(x, u(s)) − exit(x, −u(s))` is scanned over half a turn
/// (it is odd under `s ↦ s + π`, so half a turn sees every sign change) and
/// each bracketed root is bisected; both endpoints of each balanced chord
/// are collected and deduplicated. If essentially every direction is
/// balanced, `x` is a center of symmetry: the locus is the whole boundary
/// and is reported with `spans_boundary` set instead of a meaningless fit.
pub fn midpoint_locus(k: &ConvexBody<3>, x: [f64; 3], n_dirs: usize) -> Result<MidpointLocus> {
    ensure_interior(k, &x)?;
    let size = 1.0 + k.circumradius();
    let normals = fibonacci_sphere(n_dirs.max(1));
    let step = PI / LOCUS_SCAN as f64;

    struct CircleScan {
        endpoints: Vec<[f64; 3]>,
        balanced_everywhere: bool,
    }

    let circles: Vec<CircleScan> = normals
        .par_iter()
        .map(|w| {
            let (e1, e2) = orthonormal_pair(w);
            let dir = |s: f64| axpy(&scale(&e1, s.cos()), s.sin(), &e2);
            let gap = |s: f64| {
                let u = dir(s);
                k.ray_exit(&x, &u) - k.ray_exit(&x, &scale(&u, -1.0))
            };
            let values: Vec<f64> = (0..LOCUS_SCAN).map(|i| gap(step * i as f64)).collect();
            let balanced = values.iter().filter(|v| v.abs() <= 1e-9 * size).count();
            if balanced * 10 >= LOCUS_SCAN * 9 {
                // Chords through x are balanced in essentially every sampled
                // direction: keep their endpoints as boundary samples.
                let endpoints = (0..LOCUS_SCAN)
                    .step_by(8)
                    .flat_map(|i| {
                        let u = dir(step * i as f64);
                        [
                            axpy(&x, k.ray_exit(&x, &u), &u),
                            axpy(&x, -k.ray_exit(&x, &scale(&u, -1.0)), &u),
                        ]
                    })
                    .collect();
                return CircleScan {
                    endpoints,
                    balanced_everywhere: true,
                };
            }
            let mut roots: Vec<f64> = Vec::new();
            for i in 0..LOCUS_SCAN {
                let (s_lo, v_lo) = (step * i as f64, values[i]);
                // The scan wraps onto its own negation: gap(π) = -gap(0).
                let (s_hi, v_hi) = if i + 1 < LOCUS_SCAN {
                    (step * (i + 1) as f64, values[i + 1])
                } else {
                    (PI, -values[0])
                };
                if v_lo == 0.0 {
                    roots.push(s_lo);
                    continue;
                }
                if v_lo.signum() != v_hi.signum() && v_hi != 0.0 {
                    let (mut lo, mut hi, mut f_lo) = (s_lo, s_hi, v_lo);
                    while hi - lo > ROOT_TOL {
                        let mid = 0.5 * (lo + hi);
                        let f_mid = gap(mid);
                        if f_mid == 0.0 {
                            lo = mid;
                            break;
                        }
                        if f_mid.signum() == f_lo.signum() {
                            lo = mid;
                            f_lo = f_mid;
                        } else {
                            hi = mid;
                        }
                    }
                    roots.push(0.5 * (lo + hi));
                }
            }
            let endpoints = roots
                .iter()
                .flat_map(|&s| {
                    let u = dir(s);
                    [
                        axpy(&x, k.ray_exit(&x, &u), &u),
                        axpy(&x, -k.ray_exit(&x, &scale(&u, -1.0)), &u),
                    ]
                })
                .collect();
            CircleScan {
                endpoints,
                balanced_everywhere: false,
            }
        })
        .collect();

    let spanning = circles.iter().filter(|c| c.balanced_everywhere).count();
    let spans_boundary = spanning * 10 >= circles.len() * 9;
    let mut points: Vec<[f64; 3]> = Vec::new();
    for c in &circles {
        for &pt in &c.endpoints {
            if !points.iter().any(|q| dist(q, &pt) <= 1e-6 * size) {
                points.push(pt);
            }
        }
    }

    let (best_plane, planarity_residual) = fit_plane(&points);
    Ok(MidpointLocus {
        anchor: x,
        points,
        best_plane,
        planarity_residual,
        spans_boundary,
    })
}

/// Least-squares plane through a point cloud (smallest-eigenvalue direction
/// of the scatter matrix) and the worst point distance from it.
fn fit_plane(points: &[[f64; 3]]) -> (Option<Plane<3>>, f64) {
    if points.len() < 3 {
        return (None, 0.0);
    }
    let inv = 1.0 / points.len() as f64;
    let mut centroid = [0.0_f64; 3];
    for p in points {
        centroid = axpy(&centroid, inv, p);
    }
    let mut scatter = [[0.0_f64; 3]; 3];
    for p in points {
        let d = sub(p, &centroid);
        for (r, row) in scatter.iter_mut().enumerate() {
            for (c, entry) in row.iter_mut().enumerate() {
                *entry += d[r] * d[c];
            }
        }
    }
    let (_, vectors) = sym3_eigen(&scatter);
    let plane = match Plane::through(&centroid, vectors[0]) {
        Ok(p) => p,
        Err(_) => return (None, 0.0),
    };
    let residual = points
        .iter()
        .map(|p| plane.signed_distance(p).abs())
        .fold(0.0_f64, f64::max);
    (Some(plane), residual)
}

/// Points where the supporting lines parallel to `dir` touch the boundary:
/// for each direction `v ⊥ dir` the supporting plane with normal `v`
/// contains a supporting line parallel to `dir`, and its touching point is
/// on the shadow's rim.
pub fn shadow_boundary(k: &ConvexBody<3>, dir: &UnitVec<3>, m_samples: usize) -> Vec<[f64; 3]> {
    ring_perpendicular(dir.as_array(), m_samples)
        .iter()
        .map(|v| k.boundary_point(v))
        .collect()
}

// ---------------------------------------------------------------------------
// Decision pipelines
// ---------------------------------------------------------------------------

fn require_central_symmetry(k: &ConvexBody<3>) -> Result<[f64; 3]> {
    let o = k.center_hint();
    let asym = central_asymmetry(k, 256);
    if asym > 1e-6 * (1.0 + k.circumradius()) {
        return Err(Error::ConfigurationInvalid(format!(
            "the body is not centrally symmetric about its center (sampled asymmetry {asym:.3e})"
        )));
    }
    Ok(o)
}

fn worst_record(records: &[PlaneSymmetryRecord]) -> Option<&PlaneSymmetryRecord> {
    records
        .iter()
        .filter(|r| !r.skipped)
        .max_by(|a, b| a.residual.total_cmp(&b.residual))
}

/// Decide the pencil-of-sections hypothesis at a base point against a
/// reference line, then certify what it implies.
///
/// Configuration: centrally symmetric body with center `o`, reference line
/// `l` missing both `o` and the base point `p`, and `p` in the plane spanned
/// by `o` and `l`. Every plane through `p` must show a mirror line meeting
/// `l` (parallel planes: a mirror parallel to `l`). On success the implied
/// global shape is certified independently: a ball when `p ≠ o` (with the
/// extra requirement that the segment `op` is not perpendicular to `l`), a
/// body of revolution about the axis through `o` perpendicular to the base
/// plane when `p = o`.
pub fn theorem1_decide(
    k: &ConvexBody<3>,
    p: [f64; 3],
    l: &Line<3>,
    budget: &Budget,
) -> Result<Verdict> {
    let o = require_central_symmetry(k)?;
    let eps = body_eps(k);
    if l.distance_to(&o) <= eps {
        return Err(Error::ConfigurationInvalid(
            "the reference line passes through the body center".into(),
        ));
    }
    if l.distance_to(&p) <= eps {
        return Err(Error::ConfigurationInvalid(
            "the base point lies on the reference line".into(),
        ));
    }
    // Base plane spanned by the center and the reference line.
    let foot = l.closest_point(&o);
    let base_normal = normalized(&cross(l.dir.as_array(), &sub(&o, &foot)), 1e-300)
        .expect("center is off the line");
    if dot(&sub(&p, &o), &base_normal).abs() > 1e-6 * (1.0 + k.circumradius()) {
        return Err(Error::ConfigurationInvalid(
            "the base point must lie in the plane spanned by the center and the reference line"
                .into(),
        ));
    }
    let po = sub(&o, &p);
    let centered = norm(&po) <= eps;
    if !centered {
        let po_unit = normalized(&po, 1e-300).expect("p and o are distinct");
        if dot(&po_unit, l.dir.as_array()).abs() <= 1e-9 {
            return Err(Error::ConfigurationInvalid(
                "the segment from the base point to the center is perpendicular to the \
                 reference line"
                    .into(),
            ));
        }
    }
    ensure_interior(k, &p)?;

    let (theta_grid, phi_grid) = survey_grids(budget.theta_steps, budget.phi_steps);
    let records =
        constrained_symmetry_survey(k, p, l, &theta_grid, &phi_grid, budget.samples, budget.tol)?;
    if let Some(worst) = worst_record(&records) {
        if worst.residual > budget.tol {
            let witness = Witness::new("section-symmetry-survey", worst.residual)
                .with_plane(worst.plane.clone())
                .with_point(p);
            return Ok(Verdict::HypothesisFailed { witness });
        }
    }

    if centered {
        let axis = Line::new(o, base_normal)?;
        let certification =
            certify_body_of_revolution(k, &axis, budget.planes, budget.samples, budget.tol)?;
        if certification.passed() {
            Ok(Verdict::RevolutionCertified {
                axis_point: o.to_vec(),
                axis_dir: base_normal.to_vec(),
                certification,
            })
        } else {
            Ok(Verdict::HypothesisFailed {
                witness: certification.witness.expect("failed certificates carry a witness"),
            })
        }
    } else {
        let (certification, center, radius) = certify_sphere_sampled(k, SPHERE_SAMPLES, budget.tol);
        if certification.passed() {
            Ok(Verdict::SphereCertified {
                center: center.to_vec(),
                radius,
                certification,
            })
        } else {
            Ok(Verdict::HypothesisFailed {
                witness: certification.witness.expect("failed certificates carry a witness"),
            })
        }
    }
}

/// Decide whether `p` is a revolution point and certify what follows.
///
/// Configuration: centrally symmetric body with center `o ≠ p`. If every
/// plane section through `p` has a mirror through `p`, the body is certified
/// as a solid of revolution about the line through `o` and `p`. With a
/// `second` revolution point `q` (with `o` off the line through `p` and `q`)
/// the two axes can only coexist in a ball, which is certified instead.
pub fn theorem2_decide(
    k: &ConvexBody<3>,
    p: [f64; 3],
    second: Option<[f64; 3]>,
    budget: &Budget,
) -> Result<Verdict> {
    let o = require_central_symmetry(k)?;
    let eps = body_eps(k);
    if dist(&p, &o) <= eps {
        return Err(Error::ConfigurationInvalid(
            "the base point coincides with the body center; pick an off-center point".into(),
        ));
    }
    ensure_interior(k, &p)?;
    let first = revolution_point_test(k, p, budget.planes, budget.samples, budget.tol)?;
    if !first.passed() {
        return Ok(Verdict::HypothesisFailed {
            witness: first.witness.expect("failed certificates carry a witness"),
        });
    }
    match second {
        None => {
            let axis = Line::new(o, sub(&p, &o))?;
            let certification =
                certify_body_of_revolution(k, &axis, budget.planes, budget.samples, budget.tol)?;
            if certification.passed() {
                Ok(Verdict::RevolutionCertified {
                    axis_point: o.to_vec(),
                    axis_dir: axis.dir.as_array().to_vec(),
                    certification,
                })
            } else {
                Ok(Verdict::HypothesisFailed {
                    witness: certification
                        .witness
                        .expect("failed certificates carry a witness"),
                })
            }
        }
        Some(q) => {
            if dist(&q, &o) <= eps || dist(&q, &p) <= eps {
                return Err(Error::ConfigurationInvalid(
                    "the second point must differ from both the center and the first point"
                        .into(),
                ));
            }
            let through = Line::new(p, sub(&q, &p))?;
            if through.distance_to(&o) <= eps {
                return Err(Error::ConfigurationInvalid(
                    "the center lies on the line through the two points; their axes would \
                     coincide"
                        .into(),
                ));
            }
            ensure_interior(k, &q)?;
            let second_cert =
                revolution_point_test(k, q, budget.planes, budget.samples, budget.tol)?;
            if !second_cert.passed() {
                return Ok(Verdict::HypothesisFailed {
                    witness: second_cert
                        .witness
                        .expect("failed certificates carry a witness"),
                });
            }
            let (certification, center, radius) =
                certify_sphere_sampled(k, SPHERE_SAMPLES, budget.tol);
            if certification.passed() {
                Ok(Verdict::SphereCertified {
                    center: center.to_vec(),
                    radius,
                    certification,
                })
            } else {
                Ok(Verdict::HypothesisFailed {
                    witness: certification
                        .witness
                        .expect("failed certificates carry a witness"),
                })
            }
        }
    }
}

/// Decide the projection hypothesis against a reference line and certify
/// the revolution axis it implies.
///
/// Every sampled projection must show a mirror line meeting `l` — the mirror
/// is pinned at the unique point where `l` crosses the projection plane, or
/// constrained parallel to `l` when the plane is parallel to it. A full pass
/// is followed by certifying the body as a solid of revolution about `l`.
pub fn theorem3_decide(k: &ConvexBody<3>, l: &Line<3>, budget: &Budget) -> Result<Verdict> {
    let size = 1.0 + k.circumradius();
    let dirs = fibonacci_sphere(budget.planes);
    let scored: Vec<(f64, [f64; 3])> = dirs
        .par_iter()
        .map(|u| -> Result<(f64, [f64; 3])> {
            let proj = slice::project(k, &UnitVec::new(*u)?, budget.samples)?;
            let along = dot(u, l.dir.as_array());
            let pin = if along.abs() <= 1e-9 {
                None
            } else {
                let t = -dot(&l.point, u) / along;
                let crossing = l.at(t);
                (norm(&crossing) <= PIN_DISTANCE_CAP * size).then_some(crossing)
            };
            let pinned = match pin {
                Some(crossing) => find_symmetry_line_through_point(
                    &proj,
                    proj.frame.to_local(&crossing),
                    budget.tol,
                ),
                None => {
                    let angle = frame_angle(&proj.frame, l.dir.as_array());
                    find_symmetry_line_with_direction(&proj, angle, PARALLEL_ANGLE_TOL, budget.tol)
                }
            };
            Ok((pinned.residual, *u))
        })
        .collect::<Result<_>>()?;
    let worst = scored
        .iter()
        .max_by(|a, b| a.0.total_cmp(&b.0))
        .expect("at least one direction is sampled");
    if worst.0 > budget.tol {
        let witness = Witness::new("projection-symmetry", worst.0).with_direction(worst.1);
        return Ok(Verdict::HypothesisFailed { witness });
    }
    let certification =
        certify_body_of_revolution(k, l, budget.planes, budget.samples, budget.tol)?;
    if certification.passed() {
        Ok(Verdict::RevolutionCertified {
            axis_point: l.point.to_vec(),
            axis_dir: l.dir.as_array().to_vec(),
            certification,
        })
    } else {
        Ok(Verdict::HypothesisFailed {
            witness: certification
                .witness
                .expect("failed certificates carry a witness"),
        })
    }
}

/// Certify a three-dimensional body as a solid of revolution about whatever
/// axis it admits: about its unique diameter when one exists, or as a ball
/// when the diameter search ties (a ball revolves about every axis). When
/// the diameter-axis certificate fails, the ball certificate still gets its
/// try — near-round bodies can tie or resolve the diameter either way on
/// sampling noise, and either certificate is legitimate on its own.
fn certify_revolution_auto(
    k: &ConvexBody<3>,
    n_planes: usize,
    m_samples: usize,
    tol: f64,
) -> Result<(Certification, Option<Line<3>>)> {
    let eps = body_eps(k);
    let diameters = k.diameters(eps);
    let axis = if !diameters.non_unique && diameters.segments.len() == 1 {
        let seg = &diameters.segments[0];
        Some(Line::new(
            scale(&add(&seg.a, &seg.b), 0.5),
            sub(&seg.b, &seg.a),
        )?)
    } else {
        None
    };
    if let Some(axis) = &axis {
        let cert = certify_body_of_revolution(k, axis, n_planes, m_samples, tol)?;
        if cert.passed() {
            return Ok((cert, Some(axis.clone())));
        }
        let (ball, _, _) = certify_sphere_sampled(k, NESTED_SPHERE_SAMPLES, tol);
        if ball.passed() {
            return Ok((ball, None));
        }
        return Ok((cert, Some(axis.clone())));
    }
    let (ball, _, _) = certify_sphere_sampled(k, NESTED_SPHERE_SAMPLES, tol);
    Ok((ball, None))
}

/// Certify a four-dimensional body as a solid of revolution about `axis`:
/// every cross-hyperplane perpendicular to the axis must cut it in a round
/// ball centered on the axis. Each hyperplane scores the spread of boundary
/// distances from the axis crossing.
fn certify_revolution4(
    k4: &ConvexBody<4>,
    axis: &Line<4>,
    n_planes: usize,
    tol: f64,
) -> Result<Certification> {
    let (t_lo, t_hi) = axis_chord(k4, axis)?;
    let ts = inset_linspace(t_lo, t_hi, 0.02 * (t_hi - t_lo), n_planes);
    let scored: Vec<(f64, Plane<4>)> = ts
        .par_iter()
        .map(|&t| -> Result<(f64, Plane<4>)> {
            let pin_world = axis.at(t);
            let plane = Plane::through(&pin_world, *axis.dir.as_array())?;
            let sec = slice::hypersection(k4, &plane)?;
            let pin = crate::geom::hyperplane_frame(&plane).to_local(&pin_world);
            let radii: Vec<f64> = fibonacci_sphere(MARGIN_DIRS)
                .iter()
                .map(|u| dist(&sec.boundary_point(u), &pin))
                .collect();
            let mean = radii.iter().sum::<f64>() / radii.len() as f64;
            let spread = radii
                .iter()
                .map(|r| (r - mean).abs())
                .fold(0.0_f64, f64::max);
            Ok((spread, plane))
        })
        .collect::<Result<_>>()?;
    let worst = scored
        .iter()
        .max_by(|a, b| a.0.total_cmp(&b.0))
        .expect("inset_linspace returns at least one plane");
    let witness = Witness::new("axis-normal-ball-sections", worst.0).with_plane4(worst.1.clone());
    Ok(Certification::from_worst(
        worst.0,
        witness,
        tol,
        scored.len(),
    ))
}

/// Decide the unique-diameter hypothesis in four dimensions and certify the
/// revolution axis it implies.
///
/// The body must have a unique diameter `D` (otherwise `NonUniqueDiameter`).
/// In `Sections` mode every sampled hyperplane through the base point (which
/// must avoid `D`) is cut and certified as a three-dimensional solid of
/// revolution; in `Projections` mode the body is projected along directions
/// perpendicular to `D` and each shadow is certified as a solid of
/// revolution about the projected diameter line. A full pass certifies the
/// body itself about `D`: hyperplanes perpendicular to the diameter must cut
/// round balls centered on it.
pub fn theorem45_decide(
    k4: &ConvexBody<4>,
    mode: Theorem45Mode,
    budget: &Budget,
) -> Result<Verdict> {
    let eps = body_eps(k4);
    let diameters = k4.diameters(eps);
    if diameters.non_unique || diameters.segments.len() != 1 {
        return Err(Error::NonUniqueDiameter {
            count: diameters.segments.len().max(2),
        });
    }
    let seg = &diameters.segments[0];
    let mid = scale(&add(&seg.a, &seg.b), 0.5);
    let axis = Line::new(mid, sub(&seg.b, &seg.a))?;

    match mode {
        Theorem45Mode::Sections { base } => {
            ensure_interior(k4, &base)?;
            if axis.distance_to(&base) <= eps {
                return Err(Error::ConfigurationInvalid(
                    "the section base point lies on the diameter".into(),
                ));
            }
            let normals = hopf_sphere4(budget.planes);
            let scored: Vec<(f64, bool, Plane<4>)> = normals
                .par_iter()
                .map(|nu| -> Result<(f64, bool, Plane<4>)> {
                    let plane = Plane::through(&base, *nu)?;
                    let sec = slice::hypersection(k4, &plane)?;
                    let (cert, _) = certify_revolution_auto(
                        &sec,
                        budget.nested_planes,
                        budget.nested_samples,
                        budget.tol,
                    )?;
                    Ok((cert.residual, cert.passed(), plane))
                })
                .collect::<Result<_>>()?;
            let worst = scored
                .iter()
                .max_by(|a, b| a.0.total_cmp(&b.0))
                .expect("at least one hyperplane is sampled");
            if !worst.1 {
                let witness = Witness::new("hyperplane-section-revolution", worst.0)
                    .with_plane4(worst.2.clone())
                    .with_point(base);
                return Ok(Verdict::HypothesisFailed { witness });
            }
        }
        Theorem45Mode::Projections => {
            let dirs = fibonacci_sphere_perp4(axis.dir.as_array(), budget.planes);
            let scored: Vec<(f64, bool, [f64; 4])> = dirs
                .par_iter()
                .map(|u| -> Result<(f64, bool, [f64; 4])> {
                    let shadow = slice::project4(k4, &UnitVec::new(*u)?)?;
                    let basis = orthonormal_complement4(u);
                    let axis_dir3 = [
                        dot(axis.dir.as_array(), &basis[0]),
                        dot(axis.dir.as_array(), &basis[1]),
                        dot(axis.dir.as_array(), &basis[2]),
                    ];
                    let axis_point3 = [
                        dot(&axis.point, &basis[0]),
                        dot(&axis.point, &basis[1]),
                        dot(&axis.point, &basis[2]),
                    ];
                    let cert = certify_body_of_revolution(
                        &shadow,
                        &Line::new(axis_point3, axis_dir3)?,
                        budget.nested_planes,
                        budget.nested_samples,
                        budget.tol,
                    )?;
                    Ok((cert.residual, cert.passed(), *u))
                })
                .collect::<Result<_>>()?;
            let worst = scored
                .iter()
                .max_by(|a, b| a.0.total_cmp(&b.0))
                .expect("at least one direction is sampled");
            if !worst.1 {
                let witness =
                    Witness::new("projection-revolution", worst.0).with_direction(worst.2);
                return Ok(Verdict::HypothesisFailed { witness });
            }
        }
    }

    let certification = certify_revolution4(k4, &axis, budget.planes, budget.tol)?;
    if certification.passed() {
        Ok(Verdict::RevolutionCertified {
            axis_point: axis.point.to_vec(),
            axis_dir: axis.dir.as_array().to_vec(),
            certification,
        })
    } else {
        Ok(Verdict::HypothesisFailed {
            witness: certification
                .witness
                .expect("failed certificates carry a witness"),
        })
    }
}

/// Decide the axis-pinned pencil hypothesis and certify the revolution axis.
///
/// Configuration: centrally symmetric body whose center lies on the
/// reference line `l`, which must already be an axis of symmetry (half-turn
/// invariance — checked first, and reported as the failing stage if it does
/// not hold). If additionally every plane through the off-line base point
/// `p` shows a mirror line through the plane's crossing with `l`, the body
/// is certified as a solid of revolution about `l`.
pub fn theorem7_decide(
    k: &ConvexBody<3>,
    p: [f64; 3],
    l: &Line<3>,
    budget: &Budget,
) -> Result<Verdict> {
    let o = require_central_symmetry(k)?;
    let eps = body_eps(k);
    if l.distance_to(&o) > eps {
        return Err(Error::ConfigurationInvalid(
            "the reference line must pass through the body center".into(),
        ));
    }
    if l.distance_to(&p) <= eps {
        return Err(Error::ConfigurationInvalid(
            "the base point lies on the reference line".into(),
        ));
    }
    ensure_interior(k, &p)?;
    let half_turn = is_axis_of_symmetry(k, l, budget.planes, budget.samples, budget.tol)?;
    if !half_turn.passed() {
        return Ok(Verdict::HypothesisFailed {
            witness: half_turn
                .witness
                .expect("failed certificates carry a witness"),
        });
    }
    let (theta_grid, phi_grid) = survey_grids(budget.theta_steps, budget.phi_steps);
    let records =
        constrained_symmetry_survey(k, p, l, &theta_grid, &phi_grid, budget.samples, budget.tol)?;
    if let Some(worst) = worst_record(&records) {
        if worst.residual > budget.tol {
            let witness = Witness::new("section-symmetry-survey", worst.residual)
                .with_plane(worst.plane.clone())
                .with_point(p);
            return Ok(Verdict::HypothesisFailed { witness });
        }
    }
    let certification =
        certify_body_of_revolution(k, l, budget.planes, budget.samples, budget.tol)?;
    if certification.passed() {
        Ok(Verdict::RevolutionCertified {
            axis_point: l.point.to_vec(),
            axis_dir: l.dir.as_array().to_vec(),
            certification,
        })
    } else {
        Ok(Verdict::HypothesisFailed {
            witness: certification
                .witness
                .expect("failed certificates carry a witness"),
        })
    }
}

// ---------------------------------------------------------------------------
