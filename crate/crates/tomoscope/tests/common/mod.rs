//! Shared helpers for the integration suites: an independent planar-section
//! oracle built from halfplane intersection of closed-form ellipsoid support
//! values, plus small vector and Hausdorff utilities.
//!
//! Nothing here calls the section engine under test; agreement between the
//! two paths is what the suites assert.

#![allow(dead_code)]

use rand::Rng;

pub fn dot3(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn norm3(a: &[f64; 3]) -> f64 {
    dot3(a, a).sqrt()
}

pub fn cross3(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub fn sub3(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub fn unit3(a: &[f64; 3]) -> [f64; 3] {
    let n = norm3(a);
    [a[0] / n, a[1] / n, a[2] / n]
}

/// A centered ellipsoid x^T D x ≤ 1 stored by its quadratic-form matrix,
/// with every query answered in closed form (no support-function machinery).
pub struct QuadricOracle {
    /// D = R diag(1/r_i^2) R^T.
    pub d: [[f64; 3]; 3],
    /// D^{-1} = R diag(r_i^2) R^T.
    pub d_inv: [[f64; 3]; 3],
}

fn mat_vec(m: &[[f64; 3]; 3], v: &[f64; 3]) -> [f64; 3] {
    [dot3(&m[0], v), dot3(&m[1], v), dot3(&m[2], v)]
}

impl QuadricOracle {
    /// Build from semi-axis lengths and a rotation whose columns are the
    /// world directions of the semi-axes (the body→world map).
    pub fn new(radii: [f64; 3], rot: [[f64; 3]; 3]) -> Self {
        let mut d = [[0.0; 3]; 3];
        let mut d_inv = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                for (k, r) in radii.iter().enumerate() {
                    d[i][j] += rot[i][k] * rot[j][k] / (r * r);
                    d_inv[i][j] += rot[i][k] * rot[j][k] * r * r;
                }
            }
        }
        QuadricOracle { d, d_inv }
    }

    /// Support function h(u) = sqrt(u^T D^{-1} u), exact for any u.
    pub fn support(&self, u: &[f64; 3]) -> f64 {
        dot3(u, &mat_vec(&self.d_inv, u)).sqrt()
    }

    /// Section by the plane {x·n = s} (n unit), described as a closed-form
    /// planar ellipse, or None when the plane misses the interior.
    ///
    /// The section center is the conjugate point c = s·D^{-1}n/(n^T D^{-1}n);
    /// writing x = c + α e1 + β e2 with (e1, e2) any orthonormal basis of n⊥
    /// makes the cross terms with c vanish, leaving the 2×2 form
    /// [α β] M [α β]^T ≤ ρ² with M_ij = e_i·D e_j and ρ² = 1 − c^T D c.
    pub fn section(&self, n: &[f64; 3], s: f64) -> Option<SectionOracle> {
        let h = self.support(n);
        if s.abs() >= h * (1.0 - 1e-12) {
            return None;
        }
        let dn = mat_vec(&self.d_inv, n);
        let c = {
            let t = s / dot3(n, &dn);
            [dn[0] * t, dn[1] * t, dn[2] * t]
        };
        let rho2 = 1.0 - dot3(&c, &mat_vec(&self.d, &c));
        let seed = if n[0].abs() < 0.9 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
        let e1 = unit3(&{
            let p = dot3(&seed, n);
            sub3(&seed, &[n[0] * p, n[1] * p, n[2] * p])
        });
        let e2 = cross3(n, &e1);
        let m = [
            [dot3(&e1, &mat_vec(&self.d, &e1)), dot3(&e1, &mat_vec(&self.d, &e2))],
            [dot3(&e2, &mat_vec(&self.d, &e1)), dot3(&e2, &mat_vec(&self.d, &e2))],
        ];
        Some(SectionOracle {
            origin: [n[0] * s, n[1] * s, n[2] * s],
            center: c,
            e1,
            e2,
            m,
            rho: rho2.max(0.0).sqrt(),
        })
    }
}

/// Closed-form planar section: an ellipse in an explicit frame.
pub struct SectionOracle {
    /// Foot of the perpendicular from the world origin onto the plane.
    pub origin: [f64; 3],
    /// World-space ellipse center.
    pub center: [f64; 3],
    pub e1: [f64; 3],
    pub e2: [f64; 3],
    /// 2×2 quadratic form of the section about its center.
    pub m: [[f64; 2]; 2],
    /// Level of the form on the section boundary.
    pub rho: f64,
}

impl SectionOracle {
    /// Support of the section (as a planar body about `origin`) in the
    /// in-plane direction v = v1·e1 + v2·e2: linear offset of the center
    /// plus the closed-form ellipse support ρ·sqrt(v^T M^{-1} v).
    pub fn support2(&self, v: [f64; 2]) -> f64 {
        let det = self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0];
        let q = (self.m[1][1] * v[0] * v[0] - 2.0 * self.m[0][1] * v[0] * v[1]
            + self.m[0][0] * v[1] * v[1])
            / det;
        let off = sub3(&self.center, &self.origin);
        let lin = [dot3(&off, &self.e1), dot3(&off, &self.e2)];
        lin[0] * v[0] + lin[1] * v[1] + q.max(0.0).sqrt() * self.rho
    }

    /// The halfplane-intersection polytope of `m` supporting halfplanes
    /// {w·v_i ≤ h(v_i)} at equally spaced angles, as world-space vertices.
    ///
    /// For a smooth strictly convex section every constraint is active, so
    /// the polytope's vertices are the crossings of consecutive constraint
    /// lines; each crossing is solved as a 2×2 system.
    pub fn halfplane_polytope(&self, m: usize) -> Vec<[f64; 3]> {
        let mut verts = Vec::with_capacity(m);
        for i in 0..m {
            let a0 = 2.0 * std::f64::consts::PI * i as f64 / m as f64;
            let a1 = 2.0 * std::f64::consts::PI * (i + 1) as f64 / m as f64;
            let (v0, v1) = ([a0.cos(), a0.sin()], [a1.cos(), a1.sin()]);
            let (h0, h1) = (self.support2(v0), self.support2(v1));
            let det = v0[0] * v1[1] - v0[1] * v1[0];
            assert!(det.abs() > 1e-12, "consecutive support lines parallel");
            let w = [(h0 * v1[1] - h1 * v0[1]) / det, (v0[0] * h1 - v1[0] * h0) / det];
            verts.push([
                self.origin[0] + w[0] * self.e1[0] + w[1] * self.e2[0],
                self.origin[1] + w[0] * self.e1[1] + w[1] * self.e2[1],
                self.origin[2] + w[0] * self.e1[2] + w[1] * self.e2[2],
            ]);
        }
        verts
    }
}

/// Hausdorff distance between the convex hulls of two coplanar point sets,
/// computed as the sup over in-plane directions of the support-value gap
/// (the support sup-norm equals the Hausdorff distance for convex sets).
pub fn hull_hausdorff_in_plane(a: &[[f64; 3]], b: &[[f64; 3]], n: &[f64; 3], dirs: usize) -> f64 {
    let seed = if n[0].abs() < 0.9 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
    let e1 = unit3(&{
        let p = dot3(&seed, n);
        sub3(&seed, &[n[0] * p, n[1] * p, n[2] * p])
    });
    let e2 = cross3(n, &e1);
    let mut worst: f64 = 0.0;
    for j in 0..dirs {
        let t = 2.0 * std::f64::consts::PI * j as f64 / dirs as f64;
        let w = [
            t.cos() * e1[0] + t.sin() * e2[0],
            t.cos() * e1[1] + t.sin() * e2[1],
            t.cos() * e1[2] + t.sin() * e2[2],
        ];
        let ha = a.iter().map(|p| dot3(p, &w)).fold(f64::NEG_INFINITY, f64::max);
        let hb = b.iter().map(|p| dot3(p, &w)).fold(f64::NEG_INFINITY, f64::max);
        worst = worst.max((ha - hb).abs());
    }
    worst
}

/// Draw a random rotation matrix (rows orthonormal, det +1) by Gram–Schmidt
/// on Gaussian-ish columns from the provided generator.
pub fn random_rotation<R: Rng>(rng: &mut R) -> [[f64; 3]; 3] {
    loop {
        let mut v: Vec<[f64; 3]> = (0..2)
            .map(|_| [rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)])
            .collect();
        if norm3(&v[0]) < 1e-3 {
            continue;
        }
        v[0] = unit3(&v[0]);
        let p = dot3(&v[1], &v[0]);
        let r1 = sub3(&v[1], &[v[0][0] * p, v[0][1] * p, v[0][2] * p]);
        if norm3(&r1) < 1e-3 {
            continue;
        }
        let r1 = unit3(&r1);
        let r2 = cross3(&v[0], &r1);
        return [v[0], r1, r2];
    }
}
