//! Deterministic direction grids on spheres.
//!
//! All pipelines sample directions from fixed lattices so that a given
//! configuration always probes the same geometry. A seed, when supplied,
//! conjugates the lattice by one random rotation — re-running with a
//! different seed re-randomizes the probe set without giving up
//! reproducibility for a fixed seed.

use crate::linalg::{cross, dot, norm, normalized, scale};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Golden-angle spiral on the unit 2-sphere: `n` well-spread unit vectors.
pub fn fibonacci_sphere(n: usize) -> Vec<[f64; 3]> {
    let golden = std::f64::consts::PI * (3.0 - 5.0_f64.sqrt());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        // Stratify z in (-1, 1) with half-cell offsets so no sample sits on a pole.
        let z = 1.0 - (2.0 * i as f64 + 1.0) / n as f64;
        let r = (1.0 - z * z).max(0.0).sqrt();
        let phi = golden * i as f64;
        out.push([r * phi.cos(), r * phi.sin(), z]);
    }
    out
}

/// `n` unit directions evenly spaced in the plane orthogonal to `axis`
/// (which must be unit), covering half a turn — directions are taken up to
/// sign by every consumer.
pub fn ring_perpendicular(axis: &[f64; 3], n: usize) -> Vec<[f64; 3]> {
    let (e1, e2) = orthonormal_pair(axis);
    (0..n)
        .map(|i| {
            let t = std::f64::consts::PI * i as f64 / n as f64;
            let (c, s) = (t.cos(), t.sin());
            [
                c * e1[0] + s * e2[0],
                c * e1[1] + s * e2[1],
                c * e1[2] + s * e2[2],
            ]
        })
        .collect()
}

/// Deterministic orthonormal completion of a unit vector in 3-D: returns
/// `(e1, e2)` with `{e1, e2, axis}` right-handed. Chooses the seed axis by
/// smallest component to stay well-conditioned.
pub fn orthonormal_pair(axis: &[f64; 3]) -> ([f64; 3], [f64; 3]) {
    let a = axis.map(f64::abs);
    let seed = if a[0] <= a[1] && a[0] <= a[2] {
        [1.0, 0.0, 0.0]
    } else if a[1] <= a[2] {
        [0.0, 1.0, 0.0]
    } else {
        [0.0, 0.0, 1.0]
    };
    let e1 = normalized(&cross(&seed, axis), 1e-300).expect("axis is unit");
    let e2 = cross(axis, &e1);
    (e1, e2)
}

/// Uniform-measure grid on the unit 3-sphere via Hopf-style coordinates.
///
/// `u = (cos η cos ψ₁, cos η sin ψ₁, sin η cos ψ₂, sin η sin ψ₂)` covers S³
/// uniformly when `sin² η` is stratified and the two phases are gridded; the
/// three resolutions are chosen so the total is at least `n`.
pub fn hopf_sphere4(n: usize) -> Vec<[f64; 4]> {
    // n ≈ n_eta * n_psi^2 with n_psi ≈ 2 n_eta keeps cells roughly square.
    let n_eta = ((n as f64 / 4.0).powf(1.0 / 3.0)).ceil().max(1.0) as usize;
    let n_psi = ((n as f64 / n_eta as f64).sqrt()).ceil().max(1.0) as usize;
    let mut out = Vec::with_capacity(n_eta * n_psi * n_psi);
    for i in 0..n_eta {
        // sin^2(eta) uniform in (0,1), half-cell offset.
        let s2 = (i as f64 + 0.5) / n_eta as f64;
        let eta = s2.sqrt().asin();
        let (ce, se) = (eta.cos(), eta.sin());
        for j in 0..n_psi {
            let p1 = 2.0 * std::f64::consts::PI * (j as f64 + 0.5) / n_psi as f64;
            for k in 0..n_psi {
                let p2 = 2.0 * std::f64::consts::PI * (k as f64 + 0.5) / n_psi as f64;
                out.push([ce * p1.cos(), ce * p1.sin(), se * p2.cos(), se * p2.sin()]);
            }
        }
    }
    out
}

/// Dimension-dispatching lattice: the Fibonacci sphere for `N = 3`, the
/// Hopf grid for `N = 4`. Lets dimension-generic code (diameter search,
/// convexity validation) pick the right deterministic grid.
pub fn sphere_lattice<const N: usize>(n: usize) -> Vec<[f64; N]> {
    let embed = |v: &[f64]| {
        let mut out = [0.0; N];
        out.copy_from_slice(v);
        out
    };
    match N {
        3 => fibonacci_sphere(n).iter().map(|v| embed(v)).collect(),
        4 => hopf_sphere4(n).iter().map(|v| embed(v)).collect(),
        _ => panic!("sphere_lattice is only defined for dimensions 3 and 4"),
    }
}

/// Fibonacci sphere embedded in the 3-space orthogonal to the unit vector
/// `axis` in R⁴. Used to sweep projection directions orthogonal to a
/// diameter.
pub fn fibonacci_sphere_perp4(axis: &[f64; 4], n: usize) -> Vec<[f64; 4]> {
    let basis = orthonormal_complement4(axis);
    fibonacci_sphere(n)
        .into_iter()
        .map(|v| {
            let mut acc = [0.0; 4];
            for (c, b) in v.iter().zip(basis.iter()) {
                for i in 0..4 {
                    acc[i] += c * b[i];
                }
            }
            acc
        })
        .collect()
}

/// Deterministic orthonormal basis of the hyperplane orthogonal to a unit
/// vector in R⁴ (Gram–Schmidt over the standard basis, smallest-component
/// seed order).
pub fn orthonormal_complement4(axis: &[f64; 4]) -> [[f64; 4]; 3] {
    let mut basis: Vec<[f64; 4]> = Vec::with_capacity(3);
    // Try standard basis vectors in order of increasing alignment with axis.
    let mut order = [0usize, 1, 2, 3];
    order.sort_by(|&i, &j| axis[i].abs().partial_cmp(&axis[j].abs()).unwrap());
    for &i in &order {
        if basis.len() == 3 {
            break;
        }
        let mut v = [0.0; 4];
        v[i] = 1.0;
        // Remove components along axis and the basis so far.
        let mut w = v;
        let d = dot(&w, axis);
        for t in 0..4 {
            w[t] -= d * axis[t];
        }
        for b in &basis {
            let d = dot(&w, b);
            for t in 0..4 {
                w[t] -= d * b[t];
            }
        }
        if let Some(u) = normalized(&w, 1e-9) {
            basis.push(u);
        }
    }
    [basis[0], basis[1], basis[2]]
}

/// Random rotation of R³ drawn from a seeded ChaCha stream. Seed 0 is the
/// identity so unseeded runs use the raw lattices.
pub fn seeded_rotation3(seed: u64) -> [[f64; 3]; 3] {
    if seed == 0 {
        return [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // Uniform axis + angle is not Haar, but conjugating a lattice only needs
    // a well-spread rotation, and this stays reproducible and cheap.
    let axis = loop {
        let v = [
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
        ];
        if norm(&v) > 1e-3 && norm(&v) < 1.0 {
            break scale(&v, 1.0 / norm(&v));
        }
    };
    let angle = rng.random_range(0.0..std::f64::consts::TAU);
    rotation3_about(&axis, angle)
}

/// Rotation matrix about a unit axis by `angle` (Rodrigues).
pub fn rotation3_about(axis: &[f64; 3], angle: f64) -> [[f64; 3]; 3] {
    let (c, s) = (angle.cos(), angle.sin());
    let t = 1.0 - c;
    let [x, y, z] = *axis;
    [
        [t * x * x + c, t * x * y - s * z, t * x * z + s * y],
        [t * x * y + s * z, t * y * y + c, t * y * z - s * x],
        [t * x * z - s * y, t * y * z + s * x, t * z * z + c],
    ]
}

/// Random rotation of R⁴ as a pair of seeded plane rotations composed with a
/// seeded 3-D block; identity for seed 0.
pub fn seeded_rotation4(seed: u64) -> [[f64; 4]; 4] {
    let mut m = [[0.0; 4]; 4];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    if seed == 0 {
        return m;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x746f_6d6f_3464);
    // Compose rotations in the six coordinate planes with random angles.
    for (a, b) in [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)] {
        let th = rng.random_range(0.0..std::f64::consts::TAU);
        let (c, s) = (th.cos(), th.sin());
        for row in m.iter_mut() {
            let (ra, rb) = (row[a], row[b]);
            row[a] = c * ra - s * rb;
            row[b] = s * ra + c * rb;
        }
    }
    m
}

pub fn rotate3(m: &[[f64; 3]; 3], v: &[f64; 3]) -> [f64; 3] {
    crate::linalg::mat3_apply(m, v)
}

pub fn rotate4(m: &[[f64; 4]; 4], v: &[f64; 4]) -> [f64; 4] {
    [dot(&m[0], v), dot(&m[1], v), dot(&m[2], v), dot(&m[3], v)]
}

/// `n` evenly spaced values across `[lo, hi]` with a symmetric inset of
/// `margin` at both ends. Degenerates gracefully for `n = 1` (midpoint).
pub fn inset_linspace(lo: f64, hi: f64, margin: f64, n: usize) -> Vec<f64> {
    let a = lo + margin;
    let b = hi - margin;
    if n <= 1 || b <= a {
        return vec![0.5 * (lo + hi)];
    }
    (0..n)
        .map(|i| a + (b - a) * i as f64 / (n - 1) as f64)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::dot;

    #[test]
    fn fibonacci_sphere_is_unit_and_spread() {
        let pts = fibonacci_sphere(1000);
        assert_eq!(pts.len(), 1000);
        for p in &pts {
            assert!((norm(p) - 1.0).abs() < 1e-12);
        }
        // Mean should be near zero for a balanced set.
        let mut mean = [0.0; 3];
        for p in &pts {
            for i in 0..3 {
                mean[i] += p[i] / 1000.0;
            }
        }
        assert!(norm(&mean) < 1e-2);
    }

    #[test]
    fn ring_is_perpendicular() {
        let axis = normalized(&[1.0, 2.0, -0.5], 1e-12).unwrap();
        for v in ring_perpendicular(&axis, 64) {
            assert!((norm(&v) - 1.0).abs() < 1e-12);
            assert!(dot(&v, &axis).abs() < 1e-12);
        }
    }

    #[test]
    fn hopf_grid_is_unit() {
        let pts = hopf_sphere4(500);
        assert!(pts.len() >= 500);
        for p in &pts {
            assert!((dot(p, p) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn complement4_is_orthonormal() {
        let axis = [0.5, -0.5, 0.5, 0.5];
        let b = orthonormal_complement4(&axis);
        for i in 0..3 {
            assert!(dot(&b[i], &axis).abs() < 1e-12);
            for j in 0..3 {
                let target = if i == j { 1.0 } else { 0.0 };
                assert!((dot(&b[i], &b[j]) - target).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn seeded_rotation_is_orthogonal_and_reproducible() {
        let r1 = seeded_rotation3(42);
        let r2 = seeded_rotation3(42);
        assert_eq!(r1, r2);
        assert!(crate::linalg::mat3_rotation_defect(&r1) < 1e-12);
        let r4 = seeded_rotation4(7);
        for i in 0..4 {
            for j in 0..4 {
                let target = if i == j { 1.0 } else { 0.0 };
                let mut s = 0.0;
                for k in 0..4 {
                    s += r4[k][i] * r4[k][j];
                }
                assert!((s - target).abs() < 1e-12);
            }
        }
    }
}
