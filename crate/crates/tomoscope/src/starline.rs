//! Starlines: orbits of undirected line angles under iterated reflection.
//!
//! Reflecting the line at angle `a` about the line at angle `b` yields the
//! line at angle `2b - a (mod π)`, so the orbit generated by two seed lines
//! through a common point is the arithmetic progression
//! `a₁ + k·(a₂ - a₁) (mod π)`. The orbit closes into finitely many lines
//! exactly when the seed gap is a rational multiple of π; otherwise it fills
//! the angle circle densely. Both behaviours are detected here: closure by
//! direct iteration, rationality by a bounded-denominator continued-fraction
//! search.

use serde::{Deserialize, Serialize};

use crate::geom::wrap_line_angle;

const PI: f64 = std::f64::consts::PI;

/// Orbit of line angles produced by [`starline_generate`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StarlineState {
    /// First seed angle, wrapped to `[0, π)`.
    pub base_angle: f64,
    /// Distinct orbit angles, sorted ascending in `[0, π)`.
    pub angles: Vec<f64>,
    /// Whether iteration revisited an existing angle within the closure
    /// tolerance before the iteration cap.
    pub closed: bool,
    /// Number of distinct lines when the orbit closed.
    pub period: Option<usize>,
    /// Largest circular gap between consecutive orbit angles (the wrap-around
    /// gap between the last angle and `first + π` counts).
    pub max_gap: f64,
}

/// Rationality verdict for a seed gap, from [`classify_starline_angle`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StarlineClass {
    /// Gap is (within tolerance) `p·π/q` in lowest terms; the orbit closes
    /// with `q` lines.
    Finite(u64),
    /// No rational multiple of π with denominator under the cap fits; the
    /// orbit is dense in the angle circle.
    Dense,
}

/// Circular distance between two angles of undirected lines (period π).
fn gap_mod_pi(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(PI);
    d.min(PI - d)
}

/// Generate the reflection orbit of the two seed angles.
///
/// Iterates `a_k = 2·a_{k-1} - a_{k-2} (mod π)` until either a new angle
/// lands within `closure_tol` of one already seen (orbit closed) or
/// `max_iter` angles have been produced. Angles are kept sorted; `max_gap`
/// describes how densely the orbit covers the angle circle.
pub fn starline_generate(
    theta1: f64,
    theta2: f64,
    max_iter: usize,
    closure_tol: f64,
) -> StarlineState {
    let base = wrap_line_angle(theta1);
    let mut angles: Vec<f64> = vec![base];
    let mut closed = false;

    // The recurrence reduces to stepping by the constant gap delta, but we
    // run it as stated so the state reflects the actual reflection orbit.
    let mut prev = theta1;
    let mut cur = theta2;
    for _ in 1..max_iter.max(1) {
        let wrapped = wrap_line_angle(cur);
        // Membership test against the sorted list (binary search + neighbor
        // check keeps this O(log n) per step).
        let idx = angles.partial_point(wrapped);
        let near = |i: Option<usize>| -> bool {
            i.map(|i| gap_mod_pi(angles[i], wrapped) <= closure_tol).unwrap_or(false)
        };
        let lo = idx.checked_sub(1);
        let hi = if idx < angles.len() { Some(idx) } else { None };
        // Wrap-around neighbors for the circular metric.
        let first = Some(0).filter(|_| !angles.is_empty());
        let last = angles.len().checked_sub(1);
        if near(lo) || near(hi) || near(first) || near(last) {
            closed = true;
            break;
        }
        angles.insert(idx, wrapped);
        let next = 2.0 * cur - prev;
        prev = cur;
        cur = next;
    }

    let period = closed.then_some(angles.len());
    let max_gap = max_circular_gap(&angles);
    StarlineState { base_angle: base, angles, closed, period, max_gap }
}

/// Largest gap between consecutive angles on the circle of period π.
fn max_circular_gap(sorted: &[f64]) -> f64 {
    match sorted.len() {
        0 => PI,
        1 => PI,
        _ => {
            let mut worst = sorted[0] + PI - sorted[sorted.len() - 1];
            for w in sorted.windows(2) {
                worst = worst.max(w[1] - w[0]);
            }
            worst
        }
    }
}

trait PartialPoint {
    fn partial_point(&self, x: f64) -> usize;
}

impl PartialPoint for Vec<f64> {
    /// Index of the first element ≥ x (insertion point in a sorted vec).
    fn partial_point(&self, x: f64) -> usize {
        self.partition_point(|&a| a < x)
    }
}

/// Decide whether `delta` is a rational multiple of π.
///
/// Searches `p/q` with `q ≤ max_denominator` minimizing `|delta/π - p/q|`
/// (continued-fraction convergents plus the clamped semiconvergent) and
/// returns `Finite(q)` when the winner satisfies
/// `|delta - p·π/q| ≤ rational_tol`, else `Dense`.
pub fn classify_starline_angle(
    delta: f64,
    max_denominator: u64,
    rational_tol: f64,
) -> StarlineClass {
    let x = wrap_line_angle(delta) / PI; // in [0, 1)
    let (p, q) = best_rational(x, max_denominator);
    let err = (delta - (p as f64) * PI / (q as f64)).abs();
    // Compare in angle units; the orbit step is what must match.
    let err = gap_mod_pi(err, 0.0);
    if err <= rational_tol {
        StarlineClass::Finite(q)
    } else {
        StarlineClass::Dense
    }
}

/// Best rational approximation `p/q` to `x ∈ [0, 1]` with `q ≤ qmax`,
/// via continued fractions with a clamped final term.
pub fn best_rational(x: f64, qmax: u64) -> (u64, u64) {
    debug_assert!((0.0..=1.0).contains(&x));
    debug_assert!(qmax >= 1);
    // Convergents p_k/q_k with p_{-1}=1,q_{-1}=0, p_0=a_0, q_0=1.
    let (mut p_prev, mut q_prev): (u64, u64) = (1, 0);
    let (mut p_cur, mut q_cur): (u64, u64) = (x.floor() as u64, 1);
    let mut frac = x - x.floor();
    let mut best = (p_cur, q_cur);
    let mut best_err = (x - p_cur as f64).abs();
    for _ in 0..64 {
        if frac.abs() < 1e-18 {
            break;
        }
        let a = (1.0 / frac).floor();
        frac = 1.0 / frac - a;
        let a = a as u64;
        // Next convergent would be p = a*p_cur + p_prev, q likewise; clamp
        // the term if the denominator overshoots the cap (semiconvergent).
        let a_max = if q_cur == 0 { a } else { (qmax.saturating_sub(q_prev)) / q_cur };
        let a_used = a.min(a_max);
        if a_used == 0 {
            break;
        }
        let p_next = a_used * p_cur + p_prev;
        let q_next = a_used * q_cur + q_prev;
        let err = (x - p_next as f64 / q_next as f64).abs();
        if err < best_err {
            best = (p_next, q_next);
            best_err = err;
        }
        if a_used < a {
            break; // denominator cap reached
        }
        p_prev = p_cur;
        q_prev = q_cur;
        p_cur = p_next;
        q_cur = q_next;
    }
    // Reduce (gcd) — semiconvergent clamping can only produce reduced
    // fractions, but the q=1 seed path may not.
    let g = gcd(best.0.max(1), best.1);
    (best.0 / g, best.1 / g)
}

fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orbit_of_third_pi_closes_with_three_lines() {
        let s = starline_generate(0.0, PI / 3.0, 500, 1e-9);
        assert!(s.closed);
        assert_eq!(s.period, Some(3));
        assert_eq!(s.angles.len(), 3);
        for (a, expect) in s.angles.iter().zip([0.0, PI / 3.0, 2.0 * PI / 3.0]) {
            assert!((a - expect).abs() < 1e-12);
        }
        assert!((s.max_gap - PI / 3.0).abs() < 1e-12);
    }

    #[test]
    fn perpendicular_seeds_close_with_two_lines() {
        let s = starline_generate(0.0, PI / 2.0, 500, 1e-9);
        assert_eq!(s.period, Some(2));
        assert!((s.max_gap - PI / 2.0).abs() < 1e-12);
    }

    #[test]
    fn equal_seeds_close_immediately() {
        let s = starline_generate(0.7, 0.7, 500, 1e-9);
        assert!(s.closed);
        assert_eq!(s.period, Some(1));
    }

    #[test]
    fn classify_fifth_pi_is_finite_five() {
        assert_eq!(
            classify_starline_angle(PI / 5.0, 10_000, 1e-12),
            StarlineClass::Finite(5)
        );
        assert_eq!(
            classify_starline_angle(3.0 * PI / 7.0, 10_000, 1e-12),
            StarlineClass::Finite(7)
        );
    }

    #[test]
    fn classify_golden_multiple_is_dense() {
        let golden = 0.5 * (5.0_f64.sqrt() - 1.0);
        assert_eq!(
            classify_starline_angle(golden * PI, 10_000, 1e-12),
            StarlineClass::Dense
        );
    }

    #[test]
    fn best_rational_matches_brute_force() {
        // Independent brute-force oracle over all denominators.
        let brute = |x: f64, qmax: u64| -> f64 {
            let mut best = f64::INFINITY;
            for q in 1..=qmax {
                let p = (x * q as f64).round();
                best = best.min((x - p / q as f64).abs());
            }
            best
        };
        for &x in &[0.0, 1.0, 0.5, 0.618033988749895, 0.123456, 1.0 / 3.0, 0.9999] {
            for &qmax in &[1u64, 7, 50, 997] {
                let (p, q) = best_rational(x, qmax);
                assert!(q <= qmax, "q {} over cap {}", q, qmax);
                let err = (x - p as f64 / q as f64).abs();
                let opt = brute(x, qmax);
                assert!(
                    err <= opt + 1e-15,
                    "x={x} qmax={qmax}: got {p}/{q} err {err:.3e}, brute {opt:.3e}"
                );
            }
        }
    }
}
