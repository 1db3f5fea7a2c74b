//! Reflection-symmetry detection for planar convex figures.
//!
//! The measuring stick is the reflect-and-compare residual: reflect the
//! figure about a candidate line (or point) and take the Hausdorff distance
//! to the original. For convex figures the Hausdorff distance between the
//! boundaries equals the Hausdorff distance between the bodies, which in
//! turn is the sup-norm of the support difference, so the residual is
//! computed exactly from support values:
//!
//! ```text
//! asym(ℓ) = sup_θ | h(θ) - h(2α - θ) - c · (u(θ) - u(2α - θ)) |
//! ```
//!
//! for the line through `c` at angle `α` (the anchor term vanishes when the
//! support is taken about a point on the line). Two structural facts drive
//! the search:
//!
//! * every symmetry line passes through the Steiner point, so the line scan
//!   is one-dimensional (angle only), anchored there;
//! * scanning angles `α_i = πi/m` on a grid of `m` uniform samples makes
//!   the reflected angle `2α_i - θ_j = θ_{(i-j) mod m}` land back on the
//!   grid, so the whole scan runs on cached samples with no support
//!   evaluations at all.
//!
//! Scan minima are then polished by golden section on the exact closure and
//! re-scored on the full grid.

use serde::{Deserialize, Serialize};

use crate::geom::wrap_line_angle;
use crate::slice::PlanarBody;
use crate::solvers::golden_min;

/// Angular tolerance to which detected line angles are refined.
pub const ANGLE_REFINE_TOL: f64 = 1e-10;

/// Number of support samples used while refining a candidate angle (the
/// full grid is used for the final residual).
const REFINE_SUBSAMPLE: usize = 64;

/// Cap on how many scan minima are polished; bodies with more distinct
/// symmetry lines than this are circles for every practical tolerance.
const MAX_REFINED_CANDIDATES: usize = 96;

/// Number of scanned angles that must fall below tolerance before the
/// figure is declared a circle.
const IS_CIRCLE_COUNT: usize = 64;

/// Residuals at or below this fraction of the figure scale are treated as
/// exact zeros (no refinement needed; the grid angle is already a symmetry
/// angle to floating-point accuracy).
const FP_FLOOR: f64 = 1e-12;

/// An unoriented line in the plane: angle in `[0, π)` plus a point on it.
#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
pub struct Line2 {
    pub angle: f64,
    pub through: [f64; 2],
}

impl Line2 {
    pub fn new(angle: f64, through: [f64; 2]) -> Self {
        Line2 {
            angle: wrap_line_angle(angle),
            through,
        }
    }

    pub fn direction(&self) -> [f64; 2] {
        [self.angle.cos(), self.angle.sin()]
    }

    /// Angle of the mirror image of the direction at `theta`.
    pub fn reflect_angle(&self, theta: f64) -> f64 {
        2.0 * self.angle - theta
    }

    /// Mirror image of a point about the line.
    pub fn reflect_point(&self, p: &[f64; 2]) -> [f64; 2] {
        let d = self.direction();
        let v = [p[0] - self.through[0], p[1] - self.through[1]];
        let along = 2.0 * (v[0] * d[0] + v[1] * d[1]);
        [
            self.through[0] + along * d[0] - v[0],
            self.through[1] + along * d[1] - v[1],
        ]
    }
}

/// Everything the line detector found for one planar figure.
#[derive(Debug, Clone, Serialize)]
pub struct SymmetryReport {
    /// Accepted symmetry lines with their residuals, sorted by angle.
    pub lines: Vec<(Line2, f64)>,
    /// Center of point symmetry with its residual, when one was accepted
    /// (always present for circles).
    pub center: Option<([f64; 2], f64)>,
    /// At least [`IS_CIRCLE_COUNT`] scanned angles fell below tolerance;
    /// the line list is suppressed in favor of the center.
    pub is_circle: bool,
    /// The accepted line angles are equally spaced, as the reflection group
    /// of a convex figure requires.
    pub starline_consistent: bool,
}

/// Result of the pinned-line search: the best line through the pin, its
/// residual, and whether it met the caller's tolerance.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct PinnedSymmetry {
    pub line: Line2,
    pub residual: f64,
    pub accepted: bool,
}

/// Result of the center search: the best center, its residual, and whether
/// it met the caller's tolerance.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct CenterSearch {
    pub center: [f64; 2],
    pub residual: f64,
    pub accepted: bool,
}

fn unit2(theta: f64) -> [f64; 2] {
    [theta.cos(), theta.sin()]
}

/// Support samples re-anchored to a chosen point, with the grid-aligned
/// reflection scan and the exact off-grid residuals built on top.
struct Anchored<'a> {
    p: &'a PlanarBody,
    anchor: [f64; 2],
    shifted: Vec<f64>,
    scale: f64,
}

impl<'a> Anchored<'a> {
    fn new(p: &'a PlanarBody, anchor: [f64; 2]) -> Self {
        let shifted: Vec<f64> = (0..p.m())
            .map(|j| {
                let u = unit2(p.angle(j));
                p.samples()[j] - anchor[0] * u[0] - anchor[1] * u[1]
            })
            .collect();
        let scale = shifted.iter().fold(0.0_f64, |a, &b| a.max(b.abs()));
        Anchored {
            p,
            anchor,
            shifted,
            scale,
        }
    }

    /// Support about the anchor at an arbitrary angle (exact closure).
    fn at(&self, theta: f64) -> f64 {
        let u = unit2(theta);
        self.p.support(theta) - self.anchor[0] * u[0] - self.anchor[1] * u[1]
    }

    /// Reflection residuals at the grid-aligned scan angles `α_i = πi/m`.
    /// The reflected sample `2α_i - θ_j` is the grid angle `θ_{(i-j) mod m}`,
    /// so each residual is a pass over cached values.
    fn scan(&self) -> Vec<f64> {
        let m = self.shifted.len();
        (0..m)
            .map(|i| {
                let mut worst = 0.0_f64;
                for j in 0..m {
                    let k = (i + m - j) % m;
                    worst = worst.max((self.shifted[j] - self.shifted[k]).abs());
                }
                worst
            })
            .collect()
    }

    /// Reflection residual at an arbitrary angle over a subsampled grid
    /// (used inside refinement loops).
    fn residual_sub(&self, alpha: f64) -> f64 {
        let m = self.shifted.len();
        let stride = (m / REFINE_SUBSAMPLE).max(1);
        let mut worst = 0.0_f64;
        for j in (0..m).step_by(stride) {
            let refl = 2.0 * alpha - self.p.angle(j);
            worst = worst.max((self.shifted[j] - self.at(refl)).abs());
        }
        worst
    }

    /// Reflection residual at an arbitrary angle over the full grid.
    fn residual_full(&self, alpha: f64) -> f64 {
        let m = self.shifted.len();
        let mut worst = 0.0_f64;
        for j in 0..m {
            let refl = 2.0 * alpha - self.p.angle(j);
            worst = worst.max((self.shifted[j] - self.at(refl)).abs());
        }
        worst
    }

    /// Polish one scan minimum. Returns the refined angle and its full-grid
    /// residual. Scan values already at floating-point floor are kept as-is:
    /// the grid angle is a symmetry angle and refinement would only wander.
    fn refine(&self, i: usize, scan_value: f64) -> (f64, f64) {
        let m = self.shifted.len();
        let alpha_i = std::f64::consts::PI * i as f64 / m as f64;
        if scan_value <= FP_FLOOR * self.scale {
            return (alpha_i, scan_value);
        }
        let half = std::f64::consts::PI / m as f64;
        let (alpha, _) = golden_min(
            |a| self.residual_sub(a),
            alpha_i - half,
            alpha_i + half,
            ANGLE_REFINE_TOL,
        );
        (alpha, self.residual_full(alpha))
    }
}

/// Hausdorff distance between the figure and its reflection about `line`.
///
/// Zero exactly when the line is a symmetry line; the value does not depend
/// on which point of the line is stored in `through`.
pub fn asymmetry_about_line(p: &PlanarBody, line: &Line2) -> f64 {
    let anchored = Anchored::new(p, line.through);
    anchored.residual_full(line.angle)
}

/// Hausdorff distance between the figure and its point reflection about `c`.
///
/// For a centrally symmetric figure with center `z` this equals `2|z - c|`
/// (the support of the reflection about `c` is `h(-u) + 2c·u`), so half the
/// value reads as "how far the true center sits from `c`". Sampling over the
/// angle grid can undershoot that by up to `|z - c| (π/m)²` — the worst
/// direction may fall between grid angles.
pub fn asymmetry_about_point(p: &PlanarBody, c: [f64; 2]) -> f64 {
    center_residual(p, &c)
}

/// Hausdorff distance between the figure and its point reflection about `c`,
/// from cached samples only (the antipodal angle is on the grid).
fn center_residual(p: &PlanarBody, c: &[f64; 2]) -> f64 {
    let m = p.m();
    let half = m / 2;
    let mut worst = 0.0_f64;
    for j in 0..m {
        let u = unit2(p.angle(j));
        let d = p.samples()[j] - p.samples()[(j + half) % m] - 2.0 * (c[0] * u[0] + c[1] * u[1]);
        worst = worst.max(d.abs());
    }
    worst
}

/// Find the center of point symmetry, if any.
///
/// The Steiner point is the least-squares solution of the overdetermined
/// system `2c·u_j = h_j - h_{j+m/2}` (and the exact center for a centrally
/// symmetric figure); compass descent then polishes it against the
/// Chebyshev residual down to a 1e-10 step floor.
pub fn find_symmetry_center(p: &PlanarBody, tol: f64) -> CenterSearch {
    let mut c = p.steiner();
    let mut best = center_residual(p, &c);
    let mut step = (p.scale() * 0.25).max(1e-9);
    let dirs: [[f64; 2]; 8] = [
        [1.0, 0.0],
        [-1.0, 0.0],
        [0.0, 1.0],
        [0.0, -1.0],
        [std::f64::consts::FRAC_1_SQRT_2, std::f64::consts::FRAC_1_SQRT_2],
        [std::f64::consts::FRAC_1_SQRT_2, -std::f64::consts::FRAC_1_SQRT_2],
        [-std::f64::consts::FRAC_1_SQRT_2, std::f64::consts::FRAC_1_SQRT_2],
        [-std::f64::consts::FRAC_1_SQRT_2, -std::f64::consts::FRAC_1_SQRT_2],
    ];
    let mut moves = 0;
    while step > 1e-10 && moves < 10_000 {
        let mut improved = false;
        for d in &dirs {
            let cand = [c[0] + step * d[0], c[1] + step * d[1]];
            let r = center_residual(p, &cand);
            if r < best {
                best = r;
                c = cand;
                improved = true;
                moves += 1;
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    CenterSearch {
        center: c,
        residual: best,
        accepted: best <= tol,
    }
}

/// Detect all symmetry lines of the figure.
///
/// Scans one candidate angle per sample pair (`α_i = πi/m`, so `m` angles
/// over `[0, π)`) through the Steiner point, polishes every local minimum
/// of the scan by golden section to [`ANGLE_REFINE_TOL`], and keeps lines
/// whose full-grid residual is at most `tol`. When at least
/// [`IS_CIRCLE_COUNT`] scanned angles are already below `tol` the figure is
/// reported as a circle instead of a long line list.
pub fn find_symmetry_lines(p: &PlanarBody, tol: f64) -> SymmetryReport {
    let steiner = p.steiner();
    let anchored = Anchored::new(p, steiner);
    let scan = anchored.scan();
    let m = scan.len();

    let below = scan.iter().filter(|&&r| r <= tol).count();
    if below >= IS_CIRCLE_COUNT {
        let center = find_symmetry_center(p, tol);
        return SymmetryReport {
            lines: Vec::new(),
            center: Some((center.center, center.residual)),
            is_circle: true,
            starline_consistent: true,
        };
    }

    // Cyclic local minima of the scan, refined best-first.
    let mut minima: Vec<usize> = (0..m)
        .filter(|&i| {
            let prev = scan[(i + m - 1) % m];
            let next = scan[(i + 1) % m];
            scan[i] <= prev && scan[i] <= next && (scan[i] < prev || scan[i] < next)
        })
        .collect();
    minima.sort_by(|&a, &b| scan[a].total_cmp(&scan[b]).then(a.cmp(&b)));
    minima.truncate(MAX_REFINED_CANDIDATES);

    let mut lines: Vec<(Line2, f64)> = Vec::new();
    for &i in &minima {
        let (alpha, residual) = anchored.refine(i, scan[i]);
        if residual > tol {
            continue;
        }
        let line = Line2::new(alpha, steiner);
        // Merge refinement duplicates from adjacent scan cells.
        if let Some(existing) = lines
            .iter_mut()
            .find(|(l, _)| crate::geom::line_angle_distance(l.angle, line.angle) < 1e-6)
        {
            if residual < existing.1 {
                *existing = (line, residual);
            }
            continue;
        }
        lines.push((line, residual));
    }
    lines.sort_by(|a, b| a.0.angle.total_cmp(&b.0.angle));

    let starline_consistent = equally_spaced(&lines);
    let center = find_symmetry_center(p, tol);
    SymmetryReport {
        lines,
        center: if center.accepted {
            Some((center.center, center.residual))
        } else {
            None
        },
        is_circle: false,
        starline_consistent,
    }
}

/// The reflection group of a convex figure forces its symmetry lines to be
/// equally spaced; verify each gap against π/k with the slack two refined
/// angles can accumulate.
fn equally_spaced(lines: &[(Line2, f64)]) -> bool {
    let k = lines.len();
    if k <= 1 {
        return true;
    }
    let expected = std::f64::consts::PI / k as f64;
    let slack = 2.0 * ANGLE_REFINE_TOL + 1e-12;
    for i in 0..k {
        let a = lines[i].0.angle;
        let b = lines[(i + 1) % k].0.angle;
        let gap = if i + 1 == k {
            std::f64::consts::PI - a + b
        } else {
            b - a
        };
        if (gap - expected).abs() > slack {
            return false;
        }
    }
    true
}

/// Find the best symmetry line constrained to pass through `q` (frame
/// coordinates). Always reports the best candidate and its residual;
/// `accepted` says whether it met `tol`.
pub fn find_symmetry_line_through_point(p: &PlanarBody, q: [f64; 2], tol: f64) -> PinnedSymmetry {
    let anchored = Anchored::new(p, q);
    let scan = anchored.scan();
    let best_i = (0..scan.len())
        .min_by(|&a, &b| scan[a].total_cmp(&scan[b]).then(a.cmp(&b)))
        .expect("planar bodies have at least one sample");
    let (alpha, residual) = anchored.refine(best_i, scan[best_i]);
    PinnedSymmetry {
        line: Line2::new(alpha, q),
        residual,
        accepted: residual <= tol,
    }
}

/// Find the best symmetry line constrained to a fixed direction.
///
/// For a line at angle `a` with signed offset `s` from the origin the
/// reflection residual is
///
/// ```text
/// F(s) = max_j | h(θ_j) - h(2a - θ_j) - 2 s sin(θ_j - a) |
/// ```
///
/// a maximum of affine functions of `s`, hence convex; golden section over
/// `|s| ≤ max_j |d_j| / max_j |sin(θ_j - a)|` (the offset of any minimizer
/// is bounded by the zero of the steepest affine piece) solves it exactly.
/// The direction itself is then allowed to tilt by up to `angle_tol`, a
/// short bracketed polish for callers whose frame is only approximately
/// aligned; pass `0.0` to pin the angle outright.
pub fn find_symmetry_line_with_direction(
    p: &PlanarBody,
    angle: f64,
    angle_tol: f64,
    tol: f64,
) -> PinnedSymmetry {
    let m = p.m();
    let stride = (m / REFINE_SUBSAMPLE).max(1);
    // Best offset at a fixed direction, over every `step`-th sample.
    let solve = |a: f64, step: usize| -> (f64, f64) {
        let mut d = Vec::with_capacity(m / step + 1);
        let mut sines = Vec::with_capacity(m / step + 1);
        for j in (0..m).step_by(step) {
            d.push(p.samples()[j] - p.support(2.0 * a - p.angle(j)));
            sines.push((p.angle(j) - a).sin());
        }
        let worst = |s: f64| {
            d.iter()
                .zip(&sines)
                .map(|(dj, sj)| (dj - 2.0 * s * sj).abs())
                .fold(0.0_f64, f64::max)
        };
        let reach = d.iter().fold(0.0_f64, |acc, x| acc.max(x.abs()));
        // Over any half-grid of directions some |sin(θ_j - a)| ≥ cos(π/m),
        // so minimizers satisfy 2|s| cos(π/m) ≤ 2 reach; pad a little.
        let bound = 1.1 * reach + FP_FLOOR * (1.0 + p.scale());
        golden_min(worst, -bound, bound, ANGLE_REFINE_TOL * (1.0 + p.scale()))
    };

    let mut best_angle = angle;
    if angle_tol > 0.0 {
        let sub = |a: f64| solve(a, stride).1;
        let probes = [-1.0_f64, -0.5, 0.0, 0.5, 1.0];
        let (center, center_val) = probes
            .iter()
            .map(|k| {
                let a = angle + k * angle_tol;
                (a, sub(a))
            })
            .min_by(|x, y| x.1.total_cmp(&y.1))
            .expect("probe list is non-empty");
        let lo = (center - 0.5 * angle_tol).max(angle - angle_tol);
        let hi = (center + 0.5 * angle_tol).min(angle + angle_tol);
        let (polished, polished_val) = golden_min(sub, lo, hi, (angle_tol * 1e-4).max(1e-12));
        best_angle = if polished_val < center_val {
            polished
        } else {
            center
        };
    }

    let (offset, residual) = solve(best_angle, 1);
    let normal = [-best_angle.sin(), best_angle.cos()];
    PinnedSymmetry {
        line: Line2::new(best_angle, [offset * normal[0], offset * normal[1]]),
        residual,
        accepted: residual <= tol,
    }
}
