//! JSON body specifications.
//!
//! A body file is a single JSON object with a `"kind"` discriminator and
//! kind-specific fields; unknown fields are rejected so typos fail loudly
//! instead of silently running the wrong geometry. The accepted shapes:
//!
//! ```json
//! {"kind": "ball", "radius": 1.0, "center": [0, 0, 0]}
//! {"kind": "ellipsoid", "radii": [2, 1, 1], "center": [0, 0, 0],
//!  "orientation": {"axis": [0, 0, 1], "angle": 0.5}}
//! {"kind": "revolution",
//!  "profile": {"type": "ellipse", "a": 1.0, "b": 2.0},
//!  "axis": {"point": [0, 0, 0], "dir": [0, 0, 1]}}
//! {"kind": "revolution",
//!  "profile": {"type": "table", "heights": [-1, 0, 1], "radii": [0, 1, 0]}}
//! {"kind": "two_disc_hull", "r1": 1.0, "r2": 1.0}
//! {"kind": "ellipsoid4", "radii": [2, 1, 1, 1], "center": [0, 0, 0, 0]}
//! ```
//!
//! `center`, `orientation`, and `axis` are optional (origin, identity, and
//! the z-axis through the origin). The discriminators are dispatched by
//! hand because serde's internally-tagged enums cannot combine with
//! `deny_unknown_fields`.

use serde::Deserialize;
use serde_json::Value;

use super::profile::ProfileCurve;
use super::ConvexBody;
use crate::error::{Error, Result};
use crate::geom::Line;
use crate::linalg::{norm, scale};
use crate::sampling::rotation3_about;

/// A parsed body of either supported dimension.
#[derive(Debug, Clone)]
pub enum AnyBody {
    Three(ConvexBody<3>),
    Four(ConvexBody<4>),
}

impl AnyBody {
    pub fn dim(&self) -> usize {
        match self {
            AnyBody::Three(_) => 3,
            AnyBody::Four(_) => 4,
        }
    }

    pub fn expect_three(self) -> Result<ConvexBody<3>> {
        match self {
            AnyBody::Three(k) => Ok(k),
            AnyBody::Four(_) => Err(Error::InvalidSpec(
                "this operation needs a 3-dimensional body, got a 4-dimensional one".into(),
            )),
        }
    }

    pub fn expect_four(self) -> Result<ConvexBody<4>> {
        match self {
            AnyBody::Four(k) => Ok(k),
            AnyBody::Three(_) => Err(Error::InvalidSpec(
                "this operation needs a 4-dimensional body, got a 3-dimensional one".into(),
            )),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BallSpec {
    radius: f64,
    #[serde(default)]
    center: Option<[f64; 3]>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct OrientationSpec {
    axis: [f64; 3],
    angle: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EllipsoidSpec {
    radii: [f64; 3],
    #[serde(default)]
    center: Option<[f64; 3]>,
    #[serde(default)]
    orientation: Option<OrientationSpec>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AxisSpec {
    point: [f64; 3],
    dir: [f64; 3],
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RevolutionSpec {
    profile: Value,
    #[serde(default)]
    axis: Option<AxisSpec>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TwoDiscHullSpec {
    r1: f64,
    r2: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Ellipsoid4Spec {
    radii: [f64; 4],
    #[serde(default)]
    center: Option<[f64; 4]>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EllipseProfileSpec {
    a: f64,
    b: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TableProfileSpec {
    heights: Vec<f64>,
    radii: Vec<f64>,
}

/// Pop a string discriminator out of a JSON object, leaving the remaining
/// fields for the kind-specific struct (which then denies unknowns).
fn take_tag(value: Value, tag: &str, context: &str) -> Result<(String, Value)> {
    let mut obj = match value {
        Value::Object(map) => map,
        other => {
            return Err(Error::InvalidSpec(format!(
                "{context} must be a JSON object, got {other}"
            )))
        }
    };
    match obj.remove(tag) {
        Some(Value::String(s)) => Ok((s, Value::Object(obj))),
        Some(other) => Err(Error::InvalidSpec(format!(
            "{context} field \"{tag}\" must be a string, got {other}"
        ))),
        None => Err(Error::InvalidSpec(format!(
            "{context} is missing the \"{tag}\" field"
        ))),
    }
}

fn profile_from_value(value: Value) -> Result<ProfileCurve> {
    let (ty, rest) = take_tag(value, "type", "profile")?;
    match ty.as_str() {
        "ellipse" => {
            let p: EllipseProfileSpec = serde_json::from_value(rest)?;
            ProfileCurve::ellipse(p.a, p.b)
        }
        "table" => {
            let p: TableProfileSpec = serde_json::from_value(rest)?;
            ProfileCurve::table(p.heights, p.radii)
        }
        other => Err(Error::InvalidSpec(format!(
            "unknown profile type \"{other}\" (expected \"ellipse\" or \"table\")"
        ))),
    }
}

/// Build a body from an already-parsed JSON value.
pub fn body_from_value(value: Value) -> Result<AnyBody> {
    let (kind, rest) = take_tag(value, "kind", "body spec")?;
    match kind.as_str() {
        "ball" => {
            let s: BallSpec = serde_json::from_value(rest)?;
            Ok(AnyBody::Three(ConvexBody::<3>::ball(
                s.radius,
                s.center.unwrap_or([0.0; 3]),
            )?))
        }
        "ellipsoid" => {
            let s: EllipsoidSpec = serde_json::from_value(rest)?;
            let center = s.center.unwrap_or([0.0; 3]);
            let body = match s.orientation {
                None => ConvexBody::<3>::ellipsoid_axis_aligned(s.radii, center)?,
                Some(o) => {
                    let n = norm(&o.axis);
                    if n < 1e-12 {
                        return Err(Error::InvalidSpec(
                            "orientation axis must be nonzero".into(),
                        ));
                    }
                    let rot = rotation3_about(&scale(&o.axis, 1.0 / n), o.angle);
                    ConvexBody::<3>::ellipsoid(s.radii, center, rot)?
                }
            };
            Ok(AnyBody::Three(body))
        }
        "revolution" => {
            let s: RevolutionSpec = serde_json::from_value(rest)?;
            let profile = profile_from_value(s.profile)?;
            let axis = match s.axis {
                None => Line::new([0.0; 3], [0.0, 0.0, 1.0])?,
                Some(a) => Line::new(a.point, a.dir)?,
            };
            Ok(AnyBody::Three(ConvexBody::revolution(profile, axis)?))
        }
        "two_disc_hull" => {
            let s: TwoDiscHullSpec = serde_json::from_value(rest)?;
            Ok(AnyBody::Three(ConvexBody::<3>::two_disc_hull(s.r1, s.r2)?))
        }
        "ellipsoid4" => {
            let s: Ellipsoid4Spec = serde_json::from_value(rest)?;
            Ok(AnyBody::Four(ConvexBody::<4>::ellipsoid_axis_aligned(
                s.radii,
                s.center.unwrap_or([0.0; 4]),
            )?))
        }
        other => Err(Error::InvalidSpec(format!(
            "unknown body kind \"{other}\" (expected ball, ellipsoid, revolution, \
             two_disc_hull, or ellipsoid4)"
        ))),
    }
}

/// Parse a body from JSON text.
pub fn parse_body_spec(text: &str) -> Result<AnyBody> {
    body_from_value(serde_json::from_str(text)?)
}
