//! Primitive geometric types: unit vectors, lines, planes, and the
//! deterministic frames every sampled computation hangs off.
//!
//! Determinism is a hard requirement here — two runs over the same inputs
//! must emit byte-identical reports — so frame construction never consults
//! randomness or platform-varying order. A plane's in-plane basis is a pure
//! function of its normal and offset.

use crate::error::{Error, Result};
use crate::linalg::{axpy, cross, dot, norm, normalized, reject, sub};
use serde::{Deserialize, Serialize};

/// Shorter-than-this vectors are considered degenerate and refuse to
/// normalize.
pub const TINY: f64 = 1e-12;

/// A unit vector in `N` dimensions. Constructors normalize; the invariant
/// `|‖u‖ - 1| ≤ 1e-12` holds for every value that escapes this module.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitVec<const N: usize>([f64; N]);

impl<const N: usize> UnitVec<N> {
    pub fn new(v: [f64; N]) -> Result<Self> {
        normalized(&v, TINY)
            .map(UnitVec)
            .ok_or_else(|| Error::DegenerateInput("cannot normalize a (near-)zero vector".into()))
    }

    /// Wrap a vector that is already unit to working precision.
    /// Debug-asserts the invariant instead of renormalizing.
    pub fn from_unit(v: [f64; N]) -> Self {
        debug_assert!((norm(&v) - 1.0).abs() <= 1e-9, "from_unit got a non-unit vector");
        UnitVec(v)
    }

    pub fn as_array(&self) -> &[f64; N] {
        &self.0
    }

    pub fn into_array(self) -> [f64; N] {
        self.0
    }

    pub fn flipped(self) -> Self {
        UnitVec(self.0.map(|x| -x))
    }
}

// serde's fixed-size array impls stop at length 32 and are not const-generic,
// so the impls here (and the bounds on Line/Plane below) spell the
// requirement out; every concrete dimension the crate uses satisfies it.
impl<const N: usize> Serialize for UnitVec<N>
where
    [f64; N]: Serialize,
{
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de, const N: usize> Deserialize<'de> for UnitVec<N>
where
    [f64; N]: Deserialize<'de>,
{
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = <[f64; N]>::deserialize(d)?;
        UnitVec::new(v).map_err(serde::de::Error::custom)
    }
}

/// An undirected affine line: any anchor on the line plus a unit direction.
/// Two values describe the same line when their directions agree up to sign
/// and the anchors differ by a multiple of the direction.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(bound(
    serialize = "[f64; N]: Serialize",
    deserialize = "[f64; N]: Deserialize<'de>"
))]
pub struct Line<const N: usize> {
    pub point: [f64; N],
    pub dir: UnitVec<N>,
}

impl<const N: usize> Line<N> {
    pub fn new(point: [f64; N], dir_raw: [f64; N]) -> Result<Self> {
        Ok(Line { point, dir: UnitVec::new(dir_raw)? })
    }

    /// Point at parameter `t` measured from the anchor.
    pub fn at(&self, t: f64) -> [f64; N] {
        axpy(&self.point, t, self.dir.as_array())
    }

    /// Parameter of the orthogonal projection of `x` onto the line.
    pub fn project_param(&self, x: &[f64; N]) -> f64 {
        dot(&sub(x, &self.point), self.dir.as_array())
    }

    pub fn closest_point(&self, x: &[f64; N]) -> [f64; N] {
        self.at(self.project_param(x))
    }

    pub fn distance_to(&self, x: &[f64; N]) -> f64 {
        crate::linalg::dist(x, &self.closest_point(x))
    }

    /// Same undirected line, up to `tol` in direction alignment and anchor
    /// off-line distance.
    pub fn approx_eq(&self, other: &Line<N>, tol: f64) -> bool {
        let align = dot(self.dir.as_array(), other.dir.as_array()).abs();
        align >= 1.0 - tol && self.distance_to(&other.point) <= tol
    }

    /// Acute angle between the two lines' directions, in `[0, π/2]`.
    pub fn angle_between(&self, other: &Line<N>) -> f64 {
        dot(self.dir.as_array(), other.dir.as_array())
            .abs()
            .clamp(0.0, 1.0)
            .acos()
    }
}

/// An affine hyperplane `{ x : x · normal = offset }` with unit normal.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(bound(
    serialize = "[f64; N]: Serialize",
    deserialize = "[f64; N]: Deserialize<'de>"
))]
pub struct Plane<const N: usize> {
    pub normal: UnitVec<N>,
    pub offset: f64,
}

impl<const N: usize> Plane<N> {
    pub fn new(normal_raw: [f64; N], offset: f64) -> Result<Self> {
        let n = norm(&normal_raw);
        let normal = UnitVec::new(normal_raw)?;
        // Keep the same geometric plane when the caller hands a non-unit
        // normal with a matching offset.
        Ok(Plane { normal, offset: offset / n })
    }

    /// Plane through `point` with the given normal.
    pub fn through(point: &[f64; N], normal_raw: [f64; N]) -> Result<Self> {
        let normal = UnitVec::new(normal_raw)?;
        Ok(Plane { normal, offset: dot(point, normal.as_array()) })
    }

    pub fn signed_distance(&self, x: &[f64; N]) -> f64 {
        dot(x, self.normal.as_array()) - self.offset
    }

    /// Foot of the perpendicular from the global origin; the canonical
    /// in-plane origin used by frames.
    pub fn foot(&self) -> [f64; N] {
        crate::linalg::scale(self.normal.as_array(), self.offset)
    }
}

/// Orthonormal 2-frame spanning a plane in R³, right-handed with the plane
/// normal (`e1 × e2 = normal`).
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Frame2 {
    pub origin: [f64; 3],
    pub e1: [f64; 3],
    pub e2: [f64; 3],
}

impl Frame2 {
    pub fn to_local(&self, x: &[f64; 3]) -> [f64; 2] {
        let d = sub(x, &self.origin);
        [dot(&d, &self.e1), dot(&d, &self.e2)]
    }

    pub fn to_world(&self, y: &[f64; 2]) -> [f64; 3] {
        axpy(&axpy(&self.origin, y[0], &self.e1), y[1], &self.e2)
    }

    /// In-plane unit direction at angle `theta` from `e1`.
    pub fn direction(&self, theta: f64) -> [f64; 3] {
        let (c, s) = (theta.cos(), theta.sin());
        [
            c * self.e1[0] + s * self.e2[0],
            c * self.e1[1] + s * self.e2[1],
            c * self.e1[2] + s * self.e2[2],
        ]
    }

    pub fn normal(&self) -> [f64; 3] {
        cross(&self.e1, &self.e2)
    }
}

/// Orthonormal 3-frame spanning a hyperplane in R⁴.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Frame3 {
    pub origin: [f64; 4],
    pub basis: [[f64; 4]; 3],
}

impl Frame3 {
    pub fn to_local(&self, x: &[f64; 4]) -> [f64; 3] {
        let d = sub(x, &self.origin);
        [dot(&d, &self.basis[0]), dot(&d, &self.basis[1]), dot(&d, &self.basis[2])]
    }

    pub fn to_world(&self, y: &[f64; 3]) -> [f64; 4] {
        let mut out = self.origin;
        for (c, b) in y.iter().zip(self.basis.iter()) {
            for i in 0..4 {
                out[i] += c * b[i];
            }
        }
        out
    }

    /// Map a direction (no origin shift) from frame coordinates to R⁴.
    pub fn dir_to_world(&self, y: &[f64; 3]) -> [f64; 4] {
        let mut out = [0.0; 4];
        for (c, b) in y.iter().zip(self.basis.iter()) {
            for i in 0..4 {
                out[i] += c * b[i];
            }
        }
        out
    }
}

/// Reflect a point about a line (in 3-D this is the rotation by π about the
/// line): `x ↦ p + 2((x-p)·d)d - (x-p)`.
pub fn reflect_point_about_line<const N: usize>(x: &[f64; N], line: &Line<N>) -> [f64; N] {
    let d = line.dir.as_array();
    let v = sub(x, &line.point);
    let along = 2.0 * dot(&v, d);
    let mut out = [0.0; N];
    for i in 0..N {
        out[i] = line.point[i] + along * d[i] - v[i];
    }
    out
}

/// Reflect a direction vector across a line direction (no anchor involved).
pub fn reflect_dir_about_dir<const N: usize>(v: &[f64; N], d: &UnitVec<N>) -> [f64; N] {
    let da = d.as_array();
    let along = 2.0 * dot(v, da);
    let mut out = [0.0; N];
    for i in 0..N {
        out[i] = along * da[i] - v[i];
    }
    out
}

/// Smallest-index standard basis vector whose projection onto the plane has
/// norm above this floor is used to seed the in-plane basis.
const FRAME_SEED_FLOOR: f64 = 1e-6;

/// Deterministic orthonormal frame of a plane in R³.
///
/// Origin is the foot of the perpendicular from the global origin
/// (`offset · normal`). `e1` is the normalized in-plane projection of the
/// first standard basis vector whose projection is longer than `1e-6`; `e2`
/// completes a right-handed frame (`e1 × e2 = normal`). The construction is
/// a pure function of the plane, bitwise reproducible across runs.
pub fn plane_frame(plane: &Plane<3>) -> Frame2 {
    let n = plane.normal.as_array();
    let mut e1 = None;
    for i in 0..3 {
        let mut seed = [0.0; 3];
        seed[i] = 1.0;
        let proj = reject(&seed, n);
        if norm(&proj) > FRAME_SEED_FLOOR {
            e1 = normalized(&proj, TINY);
            break;
        }
    }
    // A unit normal cannot be near-parallel to all three basis vectors.
    let e1 = e1.expect("some basis vector projects onto the plane");
    let e2 = cross(n, &e1);
    Frame2 { origin: plane.foot(), e1, e2 }
}

/// Deterministic orthonormal 3-frame of a hyperplane in R⁴: Gram–Schmidt
/// over the standard basis in index order, skipping seeds whose in-plane
/// component falls below `1e-6`.
pub fn hyperplane_frame(plane: &Plane<4>) -> Frame3 {
    let n = plane.normal.as_array();
    let mut basis: Vec<[f64; 4]> = Vec::with_capacity(3);
    for i in 0..4 {
        if basis.len() == 3 {
            break;
        }
        let mut seed = [0.0; 4];
        seed[i] = 1.0;
        let mut w = reject(&seed, n);
        for b in &basis {
            w = axpy(&w, -dot(&w, b), b);
        }
        if norm(&w) > FRAME_SEED_FLOOR {
            basis.push(normalized(&w, TINY).expect("above floor"));
        }
    }
    assert_eq!(basis.len(), 3, "hyperplane frame construction failed");
    Frame3 { origin: plane.foot(), basis: [basis[0], basis[1], basis[2]] }
}

/// Normalize an angle to the undirected-line range `[0, π)`.
pub fn wrap_line_angle(a: f64) -> f64 {
    let pi = std::f64::consts::PI;
    let mut t = a % pi;
    if t < 0.0 {
        t += pi;
    }
    // -1e-18 % π can round to π itself; fold that back.
    if t >= pi {
        t -= pi;
    }
    t
}

/// Circular distance between two undirected-line angles, in `[0, π/2]`.
pub fn line_angle_distance(a: f64, b: f64) -> f64 {
    let pi = std::f64::consts::PI;
    let d = (wrap_line_angle(a) - wrap_line_angle(b)).abs();
    d.min(pi - d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::dist;

    #[test]
    fn reflect_about_z_axis() {
        let axis = Line::new([0.0, 0.0, 0.0], [0.0, 0.0, 1.0]).unwrap();
        let r = reflect_point_about_line(&[1.0, 2.0, 0.0], &axis);
        assert!(dist(&r, &[-1.0, -2.0, 0.0]) < 1e-15);
    }

    #[test]
    fn reflect_about_offset_line() {
        let line = Line::new([1.0, 0.0, 0.0], [0.0, 1.0, 0.0]).unwrap();
        let r = reflect_point_about_line(&[2.0, 3.0, 4.0], &line);
        assert!(dist(&r, &[0.0, 3.0, -4.0]) < 1e-15);
    }

    #[test]
    fn frame_of_horizontal_plane() {
        let f = plane_frame(&Plane::new([0.0, 0.0, 1.0], 0.0).unwrap());
        assert_eq!(f.origin, [0.0, 0.0, 0.0]);
        assert_eq!(f.e1, [1.0, 0.0, 0.0]);
        assert_eq!(f.e2, [0.0, 1.0, 0.0]);
    }

    #[test]
    fn frame_skips_parallel_seed() {
        // {x = 2}: e1 must skip the x-axis seed.
        let f = plane_frame(&Plane::new([1.0, 0.0, 0.0], 2.0).unwrap());
        assert!(dist(&f.origin, &[2.0, 0.0, 0.0]) < 1e-15);
        assert!(dist(&f.e1, &[0.0, 1.0, 0.0]) < 1e-15);
        assert!(dist(&f.e2, &[0.0, 0.0, 1.0]) < 1e-15);
    }

    #[test]
    fn frame_of_diagonal_plane() {
        let s3 = 3.0_f64.sqrt();
        let f = plane_frame(&Plane::new([1.0 / s3; 3], 0.0).unwrap());
        let s6 = 6.0_f64.sqrt();
        let expect = [2.0 / s6, -1.0 / s6, -1.0 / s6];
        assert!(dist(&f.e1, &expect) < 1e-12);
        // Right-handed with the normal.
        let n = f.normal();
        assert!(dist(&n, &[1.0 / s3; 3]) < 1e-12);
    }

    #[test]
    fn line_equality_is_anchor_and_sign_blind() {
        let a = Line::new([0.0, 0.0, 0.0], [0.0, 0.0, 1.0]).unwrap();
        let b = Line::new([0.0, 0.0, 5.0], [0.0, 0.0, -1.0]).unwrap();
        assert!(a.approx_eq(&b, 1e-12));
        let c = Line::new([0.1, 0.0, 0.0], [0.0, 0.0, 1.0]).unwrap();
        assert!(!a.approx_eq(&c, 1e-3));
    }

    #[test]
    fn hyperplane_frame_is_orthonormal() {
        let p = Plane::new([0.3, -0.2, 0.8, 0.1], 0.7).unwrap();
        let f = hyperplane_frame(&p);
        for i in 0..3 {
            assert!(dot(&f.basis[i], p.normal.as_array()).abs() < 1e-12);
            for j in 0..3 {
                let t = if i == j { 1.0 } else { 0.0 };
                assert!((dot(&f.basis[i], &f.basis[j]) - t).abs() < 1e-12);
            }
        }
        // Round trip.
        let x = [0.2, 0.4, -0.1, 0.9];
        let on_plane = axpy(&x, -p.signed_distance(&x), p.normal.as_array());
        let back = f.to_world(&f.to_local(&on_plane));
        assert!(dist(&back, &on_plane) < 1e-12);
    }

    #[test]
    fn angle_wrapping() {
        let pi = std::f64::consts::PI;
        assert!((wrap_line_angle(pi + 0.25) - 0.25).abs() < 1e-15);
        assert!((wrap_line_angle(-0.25) - (pi - 0.25)).abs() < 1e-15);
        assert!(line_angle_distance(0.05, pi - 0.05) - 0.1 < 1e-15);
    }
}
