//! Small deterministic 1-D solvers shared by the geometry engines.
//!
//! Everything here operates on plain closures and fixed tolerances so the
//! numerical behaviour of the library is reproducible run to run. The two
//! workhorses are golden-section minimization (for convex/unimodal profiles
//! such as the sectioning objective) and bisection (for sign changes located
//! by a scan).

/// Golden ratio and the complementary section constant `2 - phi`.
pub const PHI: f64 = 1.618_033_988_749_895;
const RESP: f64 = 2.0 - PHI; // ≈ 0.381966, the golden section step

/// Minimize a unimodal function on `[a, b]` by golden-section search.
///
/// Returns `(x_min, f_min)`. The interval is shrunk until its width falls
/// below `x_tol` (absolute). For convex `f` the result is the global minimum
/// of the interval up to that width.
pub fn golden_min(f: impl Fn(f64) -> f64, a: f64, b: f64, x_tol: f64) -> (f64, f64) {
    debug_assert!(b >= a);
    let (mut lo, mut hi) = (a, b);
    let mut x1 = lo + RESP * (hi - lo);
    let mut x2 = hi - RESP * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > x_tol {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = lo + RESP * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = hi - RESP * (hi - lo);
            f2 = f(x2);
        }
    }
    let xm = 0.5 * (lo + hi);
    let fm = f(xm);
    if f1 <= f2 && f1 <= fm {
        (x1, f1)
    } else if f2 < f1 && f2 <= fm {
        (x2, f2)
    } else {
        (xm, fm)
    }
}

/// Maximize a unimodal function on `[a, b]`; see [`golden_min`].
pub fn golden_max(f: impl Fn(f64) -> f64, a: f64, b: f64, x_tol: f64) -> (f64, f64) {
    let (x, fneg) = golden_min(|t| -f(t), a, b, x_tol);
    (x, -fneg)
}

/// Minimize a convex function over the whole real line.
///
/// Starts from `[-b0, b0]` and doubles the bracket while the minimum sits on
/// an endpoint, which for convex `f` certifies that the true minimizer is
/// still outside. Gives up (returning `None`) once the bracket exceeds
/// `b0 * growth_cap`, which callers surface as an ill-conditioned solve.
pub fn golden_min_unbounded(
    f: impl Fn(f64) -> f64,
    b0: f64,
    growth_cap: f64,
    x_tol: f64,
) -> Option<(f64, f64)> {
    let mut half = b0.max(x_tol);
    loop {
        let (lo, hi) = (-half, half);
        // Edge test: for convex f the minimizer lies at or beyond an endpoint
        // exactly when f still decreases moving outward across it.
        let d = (hi - lo) * 1e-6;
        let escapes_left = f(lo) < f(lo + d);
        let escapes_right = f(hi) < f(hi - d);
        if escapes_left || escapes_right {
            half *= 2.0;
            if half > b0 * growth_cap {
                return None;
            }
            continue;
        }
        return Some(golden_min(f, lo, hi, x_tol));
    }
}

/// Bisection for a root of `f` on `[a, b]`, where `f(a)` and `f(b)` have
/// opposite signs. Refines until the interval is below `x_tol` and returns
/// the midpoint.
pub fn bisect_root(f: impl Fn(f64) -> f64, a: f64, b: f64, x_tol: f64) -> f64 {
    let (mut lo, mut hi) = (a, b);
    let mut flo = f(lo);
    let fhi = f(hi);
    debug_assert!(
        flo == 0.0 || fhi == 0.0 || (flo < 0.0) != (fhi < 0.0),
        "bisect_root needs a sign change"
    );
    if flo == 0.0 {
        return lo;
    }
    if fhi == 0.0 {
        return hi;
    }
    while hi - lo > x_tol {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm < 0.0) == (flo < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Pattern (compass) search maximizing `f` over the unit sphere, starting
/// at `u0` with step `step0` and halving the step on stalls until it drops
/// below `step_floor`. Deterministic; suited to refining a coarse grid
/// maximum. Returns the final direction and value.
pub fn sphere_compass_max<const N: usize>(
    f: impl Fn(&[f64; N]) -> f64,
    u0: &[f64; N],
    step0: f64,
    step_floor: f64,
) -> ([f64; N], f64) {
    let mut u = crate::linalg::normalized(u0, 1e-300).expect("compass start must be nonzero");
    let mut fu = f(&u);
    let mut step = step0;
    // Hard cap so a trickle of sub-eps improvements cannot spin forever.
    let mut moves = 0usize;
    while step > step_floor && moves < 4000 {
        let basis = crate::linalg::tangent_basis(&u);
        let mut best: Option<([f64; N], f64)> = None;
        for b in &basis {
            for s in [step, -step] {
                if let Some(v) = crate::linalg::normalized(&crate::linalg::axpy(&u, s, b), 1e-12)
                {
                    let fv = f(&v);
                    if fv > best.map_or(fu, |(_, fb)| fb) {
                        best = Some((v, fv));
                    }
                }
            }
        }
        match best {
            Some((v, fv)) => {
                u = v;
                fu = fv;
                moves += 1;
            }
            None => step *= 0.5,
        }
    }
    (u, fu)
}

/// Compass search minimizing `f` over the unit sphere; see
/// [`sphere_compass_max`].
pub fn sphere_compass_min<const N: usize>(
    f: impl Fn(&[f64; N]) -> f64,
    u0: &[f64; N],
    step0: f64,
    step_floor: f64,
) -> ([f64; N], f64) {
    let (u, neg) = sphere_compass_max(|v| -f(v), u0, step0, step_floor);
    (u, -neg)
}
