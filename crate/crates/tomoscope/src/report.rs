//! Run reports and figure emitters for the batch front end.
//!
//! Every invocation produces exactly one [`RunReport`], serialized as JSON
//! with a field order fixed by the struct declaration. Reports are built for
//! diffing: given the same arguments (and `--no-timestamp`), two runs emit
//! byte-identical documents, so golden files and CI comparisons work without
//! canonicalization. Figures are deliberately plain — a CSV table with fixed
//! columns and a standalone SVG polygon — because downstream consumers are
//! plotting scripts, not GUIs.
//!
//! All files go through [`write_atomic`]: content lands in a sibling
//! temporary file first and is renamed into place, so a crashed or killed
//! run never leaves a half-written artifact behind.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::slice::PlanarBody;
use crate::tomography::{FGProfile, MidpointLocus};

/// Outcome document of one CLI invocation.
///
/// `outcome` embeds the operation's own serialized result (certification,
/// verdict, symmetry report, …); failed certifications and verdicts carry
/// their witness inside it. `wall_ms` and `started_unix_ms` are omitted
/// entirely under `--no-timestamp` so that reports become byte-stable.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    /// Subcommand that produced this report.
    pub command: String,
    /// Echo of the resolved inputs: body file, geometry, numeric settings.
    pub inputs: Value,
    /// Machine-readable result of the operation.
    pub outcome: Value,
    /// Residual ceiling the run certified against.
    pub tolerance: f64,
    /// Process exit code implied by the outcome (0 pass, 2 fail).
    pub exit_code: i32,
    /// Wall-clock duration in milliseconds; absent under `--no-timestamp`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<u64>,
    /// Unix start time in milliseconds; absent under `--no-timestamp`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub started_unix_ms: Option<u64>,
    /// Paths of figure/table files written alongside this report.
    pub artifacts: Vec<String>,
}

impl RunReport {
    /// The report as pretty-printed JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report types serialize");
        s.push('\n');
        s
    }
}

/// Write `content` to `path` atomically: a sibling temporary file is written
/// and fsync'd, then renamed over the target.
pub fn write_atomic(path: &Path, content: &str) -> Result<()> {
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty());
    if let Some(dir) = dir {
        fs::create_dir_all(dir).map_err(Error::Io)?;
    }
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(format!(".tmp-{}", std::process::id()));
    let tmp = std::path::PathBuf::from(tmp);
    fs::write(&tmp, content).map_err(Error::Io)?;
    fs::rename(&tmp, path).map_err(Error::Io)?;
    Ok(())
}

// ---------------------------------------------------------------------------
// CSV tables
// ---------------------------------------------------------------------------

// All CSV emitters format floats with Rust's shortest-roundtrip `Display`,
// which is deterministic and loses nothing on re-parse.

/// Planar figure table, one row per boundary sample: `theta,h,x,y` with the
/// grid angle, the support value there, and the boundary point in frame
/// coordinates.
pub fn planar_csv(p: &PlanarBody) -> String {
    let mut s = String::from("theta,h,x,y\n");
    for (j, pt) in p.boundary().iter().enumerate() {
        let _ = writeln!(s, "{},{},{},{}", p.angle(j), p.samples()[j], pt[0], pt[1]);
    }
    s
}

/// Crossing-profile table, one row per tilt: `phi,f,g,z_x,z_y,z_z,case_one`.
pub fn fg_csv(prof: &FGProfile) -> String {
    let mut s = String::from("phi,f,g,z_x,z_y,z_z,case_one\n");
    for (i, &phi) in prof.phi_grid.iter().enumerate() {
        let z = prof.z[i];
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{}",
            phi, prof.f[i], prof.g[i], z[0], z[1], z[2], prof.case_one[i]
        );
    }
    s
}

/// Table of 3D points, one `x,y,z` row each.
pub fn points3_csv(points: &[[f64; 3]]) -> String {
    let mut s = String::from("x,y,z\n");
    for p in points {
        let _ = writeln!(s, "{},{},{}", p[0], p[1], p[2]);
    }
    s
}

/// Midpoint-locus table: the collected chord endpoints as `x,y,z` rows.
pub fn locus_csv(locus: &MidpointLocus) -> String {
    points3_csv(&locus.points)
}

// ---------------------------------------------------------------------------
// SVG figures
// ---------------------------------------------------------------------------

/// Standalone SVG drawing of a planar figure's boundary polygon.
///
/// The viewBox is the figure's bounding box padded by 5%, with the y-axis
/// flipped so the drawing matches mathematical orientation. Coordinates are
/// written with fixed precision, keeping the output byte-stable.
pub fn planar_svg(p: &PlanarBody) -> String {
    polygon_svg(p.boundary())
}

/// SVG polygon through the given 2D points (closed).
pub fn polygon_svg(points: &[[f64; 2]]) -> String {
    let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
    for pt in points {
        for i in 0..2 {
            lo[i] = lo[i].min(pt[i]);
            hi[i] = hi[i].max(pt[i]);
        }
    }
    if points.is_empty() {
        (lo, hi) = ([-1.0; 2], [1.0; 2]);
    }
    let span = (hi[0] - lo[0]).max(hi[1] - lo[1]).max(1e-9);
    let pad = 0.05 * span;
    let (x0, y0) = (lo[0] - pad, lo[1] - pad);
    let (w, h) = (hi[0] - lo[0] + 2.0 * pad, hi[1] - lo[1] + 2.0 * pad);
    let mut pts = String::new();
    for pt in points {
        // Flip y so "up" in the figure is up on screen.
        let _ = write!(pts, "{:.6},{:.6} ", pt[0], y0 + h - (pt[1] - y0));
    }
    format!(
        concat!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" ",
            "viewBox=\"{:.6} {:.6} {:.6} {:.6}\">\n",
            "  <polygon points=\"{}\" fill=\"none\" stroke=\"black\" ",
            "stroke-width=\"{:.6}\"/>\n",
            "</svg>\n"
        ),
        x0,
        y0,
        w,
        h,
        pts.trim_end(),
        0.005 * span
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bodies::ConvexBody;
    use crate::geom::Plane;
    use crate::slice;

    fn disc_section() -> PlanarBody {
        let k = ConvexBody::<3>::ball(1.0, [0.0; 3]).unwrap();
        let plane = Plane::through(&[0.0, 0.0, 0.6], [0.0, 0.0, 1.0]).unwrap();
        slice::section(&k, &plane, 90).unwrap()
    }

    #[test]
    fn planar_tables_have_fixed_columns_and_full_rows() {
        let sec = disc_section();
        let csv = planar_csv(&sec);
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("theta,h,x,y"));
        assert_eq!(lines.count(), 90);
        // Every value round-trips through parse.
        for line in csv.lines().skip(1) {
            let vals: Vec<f64> = line.split(',').map(|v| v.parse().unwrap()).collect();
            assert_eq!(vals.len(), 4);
        }
    }

    #[test]
    fn svg_figures_are_self_contained_polygons() {
        let svg = planar_svg(&disc_section());
        assert!(svg.starts_with("<svg xmlns"));
        assert!(svg.contains("<polygon points="));
        assert!(svg.trim_end().ends_with("</svg>"));
        // Deterministic: same input, same bytes.
        assert_eq!(svg, planar_svg(&disc_section()));
    }

    #[test]
    fn atomic_writes_land_complete_and_replace() {
        let dir = std::env::temp_dir().join(format!("tomoscope-report-{}", std::process::id()));
        let path = dir.join("out/fig.csv");
        write_atomic(&path, "a,b\n1,2\n").unwrap();
        assert_eq!(fs::read_to_string(&path).unwrap(), "a,b\n1,2\n");
        write_atomic(&path, "a,b\n3,4\n").unwrap();
        assert_eq!(fs::read_to_string(&path).unwrap(), "a,b\n3,4\n");
        // No stray temporaries left behind.
        let leftovers: Vec<_> = fs::read_dir(path.parent().unwrap())
            .unwrap()
            .filter(|e| {
                e.as_ref()
                    .unwrap()
                    .file_name()
                    .to_string_lossy()
                    .contains(".tmp-")
            })
            .collect();
        assert!(leftovers.is_empty());
        fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn reports_serialize_with_stable_fields() {
        let report = RunReport {
            command: "section".into(),
            inputs: serde_json::json!({"body": "ball.json"}),
            outcome: serde_json::json!({"ok": true}),
            tolerance: 1e-6,
            exit_code: 0,
            wall_ms: None,
            started_unix_ms: None,
            artifacts: vec!["section.csv".into()],
        };
        let text = report.to_json();
        assert!(text.ends_with('\n'));
        // Omitted timing keys must not appear at all.
        assert!(!text.contains("wall_ms"));
        assert!(!text.contains("started_unix_ms"));
        let fields: Vec<&str> = ["command", "inputs", "outcome", "tolerance", "exit_code"]
            .into_iter()
            .filter(|f| text.contains(&format!("\"{f}\"")))
            .collect();
        assert_eq!(fields.len(), 5);
        assert_eq!(text, report.to_json());
    }
}
