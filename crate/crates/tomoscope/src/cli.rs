//! Batch command-line front end.
//!
//! Every invocation runs one library operation and emits one JSON
//! [`RunReport`](crate::report::RunReport) on standard output; figures and
//! tables requested with `--svg`/`--csv` land in the `--out` directory
//! (written atomically). There is no interactive mode.
//!
//! Exit codes: `0` — operation succeeded (queries) or the certification
//! passed; `2` — a certification or decision pipeline ran to completion and
//! failed (the report carries the witness); `1` — usage or input error,
//! with a single-line diagnostic on the error stream.
//!
//! # Body specification files
//!
//! `--body` names a JSON document with a `kind` field selecting the shape;
//! unknown fields are rejected. The kinds and their fields:
//!
//! ```json
//! {"kind": "ball", "radius": 1.0, "center": [0, 0, 0]}
//! {"kind": "ellipsoid", "radii": [1, 2, 3], "center": [0, 0, 0],
//!  "orientation": [[1,0,0],[0,1,0],[0,0,1]]}
//! {"kind": "revolution", "profile": {"shape": "ellipse", "a": 1, "b": 2},
//!  "axis": {"point": [0, 0, 0], "dir": [0, 0, 1]}}
//! {"kind": "two_disc_hull", "r1": 1.0, "r2": 1.0}
//! {"kind": "ellipsoid4", "radii": [2, 1, 1, 1], "center": [0, 0, 0, 0]}
//! ```
//!
//! `center` and `orientation` are optional (origin / axis-aligned);
//! `orientation` is the body-to-world rotation — semi-axis `k` points along
//! its `k`-th column — and must be orthogonal. The `ellipsoid4` kind is
//! accepted only by `theorem45`; all other subcommands need a
//! three-dimensional body.
//!
//! # Geometry flags
//!
//! Planes, points, lines and directions are comma-separated numbers:
//! `--plane "nx,ny,nz,offset"` (normal is normalized), `--point "x,y,z"`
//! (four components for `theorem45 --mode sections`), `--dir "x,y,z"`,
//! `--line "px,py,pz,dx,dy,dz"`.
//!
//! # Determinism
//!
//! All sampling grids are fixed and reductions deterministic, so the same
//! argument vector produces byte-identical reports when `--no-timestamp`
//! suppresses the two timing fields. `TOMOSCOPE_THREADS` caps the worker
//! pool without affecting any result.

use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::bodies::profile::ProfileCurve;
use crate::bodies::ConvexBody;
use crate::config::{Config, CLOSURE_TOL, MAX_DENOMINATOR, RATIONAL_TOL};
use crate::error::{Error, Result};
use crate::geom::{Line, Plane, UnitVec};
use crate::report::{self, RunReport};
use crate::slice;
use crate::starline::{classify_starline_angle, starline_generate};
use crate::symmetry2d::find_symmetry_lines;
use crate::tomography::{
    certify_body_of_revolution, certify_sphere, disc_fit, larman_point_test, midpoint_locus,
    revolution_point_test, shadow_boundary, theorem1_decide, theorem2_decide, theorem3_decide,
    theorem45_decide, Budget, Theorem45Mode, Verdict,
};

const EXIT_PASS: i32 = 0;
const EXIT_USAGE: i32 = 1;
const EXIT_FAIL: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "tomoscope",
    version,
    about = "Sections, shadows, symmetry detection and revolution certificates \
             for support-function convex bodies"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Cut the body with a plane and tabulate the planar section.
    Section(PlaneCmd),
    /// Project the body along a direction and tabulate the shadow outline.
    Project(DirCmd),
    /// Find the mirror lines and any symmetry center of a planar section.
    Symmetry(PlaneCmd),
    /// Generate and classify the reflection orbit of two seed lines.
    Starline(StarlineCmd),
    /// Collect the chords bisected by a point and fit a plane through them.
    MidpointLocus(PointCmd),
    /// Tabulate the rim where supporting lines along a direction touch.
    Shadow(DirCmd),
    /// Test whether every section through a point has some mirror line.
    Larman(PointCmd),
    /// Test whether every section through a point has a mirror through it.
    RevolutionPoint(PointCmd),
    /// Certify the body as a ball or as a solid of revolution about an axis.
    Certify(CertifyCmd),
    /// Decide the constrained section-symmetry hypothesis for a base point
    /// and reference line, and certify the ball or axis it implies.
    Theorem1(PointLineCmd),
    /// Decide the revolution-point hypothesis (optionally for two points)
    /// and certify the axis or ball it implies.
    Theorem2(Theorem2Cmd),
    /// Decide the projection-symmetry hypothesis against a line and certify
    /// the revolution axis it implies.
    Theorem3(LineCmd),
    /// Decide the unique-diameter hypothesis in four dimensions through
    /// hyperplane sections or projections.
    Theorem45(Theorem45Cmd),
}

#[derive(Debug, Args)]
struct CommonOpts {
    /// JSON body specification file.
    #[arg(long, value_name = "FILE")]
    body: Option<PathBuf>,
    /// Residual ceiling for a Pass (defaults from --config).
    #[arg(long)]
    tol: Option<f64>,
    /// Boundary samples per planar section or projection.
    #[arg(long)]
    samples: Option<usize>,
    /// Planes or directions surveyed by point tests and pipelines.
    #[arg(long)]
    planes: Option<usize>,
    /// Directory figures, tables and reports are written into.
    #[arg(long, value_name = "DIR", default_value = ".")]
    out: PathBuf,
    /// JSON file of numeric defaults; explicit flags win.
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Sampling seed echoed into the report.
    #[arg(long)]
    seed: Option<u64>,
    /// Also write the report itself into the output directory.
    #[arg(long)]
    json: bool,
    /// Write an SVG figure when the operation draws one.
    #[arg(long)]
    svg: bool,
    /// Write a CSV table when the operation tabulates one.
    #[arg(long)]
    csv: bool,
    /// Omit the timing fields so the report is byte-stable.
    #[arg(long)]
    no_timestamp: bool,
}

#[derive(Debug, Args)]
struct PlaneCmd {
    #[command(flatten)]
    common: CommonOpts,
    /// Cutting plane "nx,ny,nz,offset"; the normal is normalized.
    #[arg(long)]
    plane: String,
}

#[derive(Debug, Args)]
struct DirCmd {
    #[command(flatten)]
    common: CommonOpts,
    /// Direction "x,y,z" (normalized).
    #[arg(long)]
    dir: String,
}

#[derive(Debug, Args)]
struct PointCmd {
    #[command(flatten)]
    common: CommonOpts,
    /// Base point "x,y,z".
    #[arg(long)]
    point: String,
}

#[derive(Debug, Args)]
struct StarlineCmd {
    #[command(flatten)]
    common: CommonOpts,
    /// Seed line angles "theta1,theta2" in radians.
    #[arg(long)]
    angles: String,
    /// Iteration cap for the reflection orbit.
    #[arg(long, default_value_t = 500)]
    max_iter: usize,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CertifyMode {
    /// Radial-spread ball certificate about the best-fitting center.
    Sphere,
    /// Disc-section certificate about the axis given with --line.
    Revolution,
}

#[derive(Debug, Args)]
struct CertifyCmd {
    #[command(flatten)]
    common: CommonOpts,
    /// Which certificate to run.
    #[arg(long, value_enum)]
    mode: CertifyMode,
    /// Axis line "px,py,pz,dx,dy,dz" (revolution mode only).
    #[arg(long)]
    line: Option<String>,
}

#[derive(Debug, Args)]
struct PointLineCmd {
    #[command(flatten)]
    common: CommonOpts,
    /// Base point "x,y,z".
    #[arg(long)]
    point: String,
    /// Reference line "px,py,pz,dx,dy,dz".
    #[arg(long)]
    line: String,
}

#[derive(Debug, Args)]
struct Theorem2Cmd {
    #[command(flatten)]
    common: CommonOpts,
    /// First revolution-point candidate "x,y,z".
    #[arg(long)]
    point: String,
    /// Optional second candidate "x,y,z"; upgrades the claim to a ball.
    #[arg(long)]
    second: Option<String>,
}

#[derive(Debug, Args)]
struct LineCmd {
    #[command(flatten)]
    common: CommonOpts,
    /// Reference line "px,py,pz,dx,dy,dz".
    #[arg(long)]
    line: String,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum HyperMode {
    /// Cut hyperplane sections through the base point.
    Sections,
    /// Project along directions perpendicular to the diameter.
    Projections,
}

#[derive(Debug, Args)]
struct Theorem45Cmd {
    #[command(flatten)]
    common: CommonOpts,
    /// Section or projection route.
    #[arg(long, value_enum)]
    mode: HyperMode,
    /// Base point "x,y,z,w" (sections mode only).
    #[arg(long)]
    point: Option<String>,
}

// ---------------------------------------------------------------------------
// Entry point
// ---------------------------------------------------------------------------

/// Parse `argv`, run the named subcommand, print its JSON report to standard
/// output, and return the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    init_thread_pool();
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return EXIT_PASS;
            }
            let text = e.to_string();
            let first = text.lines().find(|l| !l.trim().is_empty()).unwrap_or("invalid usage");
            eprintln!("{first}");
            return EXIT_USAGE;
        }
    };
    match execute(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            EXIT_USAGE
        }
    }
}

/// Cap the worker pool when `TOMOSCOPE_THREADS` is set. Thread count never
/// changes results — grids are fixed and reductions deterministic — only
/// how fast they arrive.
fn init_thread_pool() {
    if let Ok(v) = std::env::var("TOMOSCOPE_THREADS") {
        if let Ok(n) = v.trim().parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build_global();
        }
    }
}

/// Everything one subcommand hands back to the report driver.
struct OpResult {
    inputs: Value,
    outcome: Value,
    exit_code: i32,
    /// File name → content, already filtered by the --svg/--csv flags.
    artifacts: Vec<(String, String)>,
}

fn execute(cli: Cli) -> Result<i32> {
    let started_ms = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_millis() as u64)
        .unwrap_or(0);
    let clock = Instant::now();

    let (name, common) = command_common(&cli.command);
    let settings = load_settings(common)?;
    let op = dispatch(&cli.command, &settings)?;

    let mut artifact_paths = Vec::new();
    for (file, content) in &op.artifacts {
        let path = common.out.join(file);
        report::write_atomic(&path, content)?;
        artifact_paths.push(path.display().to_string());
    }

    let mut rep = RunReport {
        command: name.to_owned(),
        inputs: op.inputs,
        outcome: op.outcome,
        tolerance: settings.tol,
        exit_code: op.exit_code,
        wall_ms: None,
        started_unix_ms: None,
        artifacts: artifact_paths,
    };
    if common.json {
        let path = common.out.join(format!("{name}.json"));
        report::write_atomic(&path, &rep.to_json())?;
        rep.artifacts.push(path.display().to_string());
    }
    if !common.no_timestamp {
        rep.started_unix_ms = Some(started_ms);
        rep.wall_ms = Some(clock.elapsed().as_millis() as u64);
    }
    print!("{}", rep.to_json());
    Ok(op.exit_code)
}

fn command_common(cmd: &Command) -> (&'static str, &CommonOpts) {
    match cmd {
        Command::Section(c) => ("section", &c.common),
        Command::Project(c) => ("project", &c.common),
        Command::Symmetry(c) => ("symmetry", &c.common),
        Command::Starline(c) => ("starline", &c.common),
        Command::MidpointLocus(c) => ("midpoint-locus", &c.common),
        Command::Shadow(c) => ("shadow", &c.common),
        Command::Larman(c) => ("larman", &c.common),
        Command::RevolutionPoint(c) => ("revolution-point", &c.common),
        Command::Certify(c) => ("certify", &c.common),
        Command::Theorem1(c) => ("theorem1", &c.common),
        Command::Theorem2(c) => ("theorem2", &c.common),
        Command::Theorem3(c) => ("theorem3", &c.common),
        Command::Theorem45(c) => ("theorem45", &c.common),
    }
}

fn dispatch(cmd: &Command, s: &Settings) -> Result<OpResult> {
    match cmd {
        Command::Section(c) => cmd_section(c, s, "section"),
        Command::Symmetry(c) => cmd_symmetry(c, s),
        Command::Project(c) => cmd_project(c, s),
        Command::Starline(c) => cmd_starline(c, s),
        Command::MidpointLocus(c) => cmd_midpoint_locus(c, s),
        Command::Shadow(c) => cmd_shadow(c, s),
        Command::Larman(c) => cmd_point_test(c, s, false),
        Command::RevolutionPoint(c) => cmd_point_test(c, s, true),
        Command::Certify(c) => cmd_certify(c, s),
        Command::Theorem1(c) => cmd_theorem1(c, s),
        Command::Theorem2(c) => cmd_theorem2(c, s),
        Command::Theorem3(c) => cmd_theorem3(c, s),
        Command::Theorem45(c) => cmd_theorem45(c, s),
    }
}

// ---------------------------------------------------------------------------
// Settings and input parsing
// ---------------------------------------------------------------------------

/// Numeric settings after merging the config file and explicit flags.
struct Settings {
    tol: f64,
    samples: usize,
    planes: usize,
    seed: u64,
}

fn load_settings(common: &CommonOpts) -> Result<Settings> {
    let base = match &common.config {
        Some(path) => serde_json::from_str::<Config>(&fs::read_to_string(path)?)?,
        None => Config::default(),
    };
    Ok(Settings {
        tol: common.tol.unwrap_or(base.tol),
        samples: common.samples.unwrap_or(base.samples),
        planes: common.planes.unwrap_or(base.planes),
        seed: common.seed.unwrap_or(base.seed),
    })
}

fn budget(s: &Settings) -> Budget {
    Budget {
        planes: s.planes,
        samples: s.samples,
        tol: s.tol,
        ..Budget::default()
    }
}

fn parse_numbers(text: &str, what: &str) -> Result<Vec<f64>> {
    text.split(',')
        .map(|part| {
            part.trim()
                .parse::<f64>()
                .map_err(|_| Error::InvalidSpec(format!("{what}: cannot parse '{part}' as a number")))
        })
        .collect()
}

fn parse_fixed<const K: usize>(text: &str, what: &str) -> Result<[f64; K]> {
    let nums = parse_numbers(text, what)?;
    nums.try_into().map_err(|v: Vec<f64>| {
        Error::InvalidSpec(format!("{what}: expected {K} comma-separated numbers, got {}", v.len()))
    })
}

fn parse_plane(text: &str) -> Result<Plane<3>> {
    let v: [f64; 4] = parse_fixed(text, "--plane")?;
    Ok(Plane {
        normal: UnitVec::new([v[0], v[1], v[2]])?,
        offset: v[3],
    })
}

fn parse_line(text: &str) -> Result<Line<3>> {
    let v: [f64; 6] = parse_fixed(text, "--line")?;
    Line::new([v[0], v[1], v[2]], [v[3], v[4], v[5]])
}

fn parse_dir(text: &str) -> Result<UnitVec<3>> {
    let v: [f64; 3] = parse_fixed(text, "--dir")?;
    UnitVec::new(v)
}

// ---------------------------------------------------------------------------
// Body specification files
// ---------------------------------------------------------------------------

/// A parsed body of either supported dimension.
enum AnyBody {
    Three(ConvexBody<3>),
    Four(ConvexBody<4>),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct BallSpec {
    radius: f64,
    #[serde(default)]
    center: [f64; 3],
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct EllipsoidSpec {
    radii: [f64; 3],
    #[serde(default)]
    center: [f64; 3],
    #[serde(default)]
    orientation: Option<[[f64; 3]; 3]>,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "shape", rename_all = "snake_case")]
enum ProfileSpec {
    /// `radius(t) = a·sqrt(1 - (t/b)²)` on `[-b, b]`.
    Ellipse { a: f64, b: f64 },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct LineSpec {
    point: [f64; 3],
    dir: [f64; 3],
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RevolutionSpec {
    profile: ProfileSpec,
    axis: LineSpec,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct TwoDiscSpec {
    r1: f64,
    r2: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Ellipsoid4Spec {
    radii: [f64; 4],
    #[serde(default)]
    center: [f64; 4],
}

fn load_body(common: &CommonOpts) -> Result<AnyBody> {
    let path = common
        .body
        .as_ref()
        .ok_or_else(|| Error::InvalidSpec("this subcommand needs --body FILE".into()))?;
    let text = fs::read_to_string(path)?;
    let mut doc: Value = serde_json::from_str(&text)?;
    let kind = doc
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::InvalidSpec("body spec needs a string \"kind\" field".into()))?
        .to_owned();
    doc.as_object_mut()
        .expect("kind lookup succeeded, so the document is an object")
        .remove("kind");
    match kind.as_str() {
        "ball" => {
            let spec: BallSpec = serde_json::from_value(doc)?;
            Ok(AnyBody::Three(ConvexBody::<3>::ball(spec.radius, spec.center)?))
        }
        "ellipsoid" => {
            let spec: EllipsoidSpec = serde_json::from_value(doc)?;
            let body = match spec.orientation {
                Some(rot) => ConvexBody::<3>::ellipsoid(spec.radii, spec.center, rot)?,
                None => ConvexBody::<3>::ellipsoid_axis_aligned(spec.radii, spec.center)?,
            };
            Ok(AnyBody::Three(body))
        }
        "revolution" => {
            let spec: RevolutionSpec = serde_json::from_value(doc)?;
            let ProfileSpec::Ellipse { a, b } = spec.profile;
            let axis = Line::new(spec.axis.point, spec.axis.dir)?;
            Ok(AnyBody::Three(ConvexBody::<3>::revolution(
                ProfileCurve::ellipse(a, b)?,
                axis,
            )?))
        }
        "two_disc_hull" => {
            let spec: TwoDiscSpec = serde_json::from_value(doc)?;
            Ok(AnyBody::Three(ConvexBody::<3>::two_disc_hull(spec.r1, spec.r2)?))
        }
        "ellipsoid4" => {
            let spec: Ellipsoid4Spec = serde_json::from_value(doc)?;
            Ok(AnyBody::Four(ConvexBody::<4>::ellipsoid_axis_aligned(
                spec.radii,
                spec.center,
            )?))
        }
        other => Err(Error::InvalidSpec(format!(
            "unknown body kind '{other}' (expected ball, ellipsoid, revolution, \
             two_disc_hull or ellipsoid4)"
        ))),
    }
}

fn body3(common: &CommonOpts) -> Result<ConvexBody<3>> {
    match load_body(common)? {
        AnyBody::Three(k) => Ok(k),
        AnyBody::Four(_) => Err(Error::InvalidSpec(
            "this subcommand needs a three-dimensional body".into(),
        )),
    }
}

fn body4(common: &CommonOpts) -> Result<ConvexBody<4>> {
    match load_body(common)? {
        AnyBody::Four(k) => Ok(k),
        AnyBody::Three(_) => Err(Error::InvalidSpec(
            "theorem45 needs a four-dimensional body (kind ellipsoid4)".into(),
        )),
    }
}

/// Input echo with the resolved numeric settings plus per-command geometry,
/// in a key-sorted object so reports are byte-stable.
fn echo_inputs(common: &CommonOpts, s: &Settings, extra: &[(&str, Value)]) -> Value {
    let mut map = Map::new();
    if let Some(body) = &common.body {
        map.insert("body".into(), json!(body.display().to_string()));
    }
    map.insert("planes".into(), json!(s.planes));
    map.insert("samples".into(), json!(s.samples));
    map.insert("seed".into(), json!(s.seed));
    map.insert("tol".into(), json!(s.tol));
    for (key, value) in extra {
        map.insert((*key).into(), value.clone());
    }
    Value::Object(map)
}

fn pass_or_fail(passed: bool) -> i32 {
    if passed {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

fn verdict_exit(verdict: &Verdict) -> i32 {
    pass_or_fail(verdict.passed())
}

// ---------------------------------------------------------------------------
// Subcommand bodies
// ---------------------------------------------------------------------------

fn cmd_section(cmd: &PlaneCmd, s: &Settings, name: &str) -> Result<OpResult> {
    let k = body3(&cmd.common)?;
    let plane = parse_plane(&cmd.plane)?;
    let sec = slice::section(&k, &plane, s.samples)?;
    let fit = disc_fit(&sec);
    let outcome = json!({
        "boundary_samples": sec.m(),
        "scale": sec.scale(),
        "steiner": sec.steiner_world(),
        "disc_fit": serde_json::to_value(fit)?,
    });
    let mut artifacts = Vec::new();
    if cmd.common.csv {
        artifacts.push((format!("{name}.csv"), report::planar_csv(&sec)));
    }
    if cmd.common.svg {
        artifacts.push((format!("{name}.svg"), report::planar_svg(&sec)));
    }
    Ok(OpResult {
        inputs: echo_inputs(&cmd.common, s, &[("plane", plane_echo(&plane))]),
        outcome,
        exit_code: EXIT_PASS,
        artifacts,
    })
}

fn cmd_symmetry(cmd: &PlaneCmd, s: &Settings) -> Result<OpResult> {
    let k = body3(&cmd.common)?;
    let plane = parse_plane(&cmd.plane)?;
    let sec = slice::section(&k, &plane, s.samples)?;
    let found = find_symmetry_lines(&sec, s.tol);
    let outcome = serde_json::to_value(&found)?;
    let mut artifacts = Vec::new();
    if cmd.common.csv {
        artifacts.push(("symmetry.csv".to_owned(), report::planar_csv(&sec)));
    }
    if cmd.common.svg {
        artifacts.push(("symmetry.svg".to_owned(), report::planar_svg(&sec)));
    }
    Ok(OpResult {
        inputs: echo_inputs(&cmd.common, s, &[("plane", plane_echo(&plane))]),
        outcome,
        exit_code: EXIT_PASS,
        artifacts,
    })
}

fn cmd_project(cmd: &DirCmd, s: &Settings) -> Result<OpResult> {
    let k = body3(&cmd.common)?;
    let dir = parse_dir(&cmd.dir)?;
    let proj = slice::project(&k, &dir, s.samples)?;
    let outcome = json!({
        "boundary_samples": proj.m(),
        "scale": proj.scale(),
        "steiner": proj.steiner_world(),
    });
    let mut artifacts = Vec::new();
    if cmd.common.csv {
        artifacts.push(("project.csv".to_owned(), report::planar_csv(&proj)));
    }
    if cmd.common.svg {
        artifacts.push(("project.svg".to_owned(), report::planar_svg(&proj)));
    }
    Ok(OpResult {
        inputs: echo_inputs(&cmd.common, s, &[("dir", json!(dir.as_array()))]),
        outcome,
        exit_code: EXIT_PASS,
        artifacts,
    })
}

fn cmd_starline(cmd: &StarlineCmd, s: &Settings) -> Result<OpResult> {
    let seeds: [f64; 2] = parse_fixed(&cmd.angles, "--angles")?;
    let state = starline_generate(seeds[0], seeds[1], cmd.max_iter, CLOSURE_TOL);
    let class = classify_starline_angle(seeds[1] - seeds[0], MAX_DENOMINATOR, RATIONAL_TOL);
    let outcome = json!({
        "class": serde_json::to_value(class)?,
        "state": serde_json::to_value(&state)?,
    });
    let mut artifacts = Vec::new();
    if cmd.common.csv {
        let mut table = String::from("angle\n");
        for a in &state.angles {
            table.push_str(&format!("{a}\n"));
        }
        artifacts.push(("starline.csv".to_owned(), table));
    }
    Ok(OpResult {
        inputs: echo_inputs(
            &cmd.common,
            s,
            &[("angles", json!(seeds)), ("max_iter", json!(cmd.max_iter))],
        ),
        outcome,
        exit_code: EXIT_PASS,
        artifacts,
    })
}

fn cmd_midpoint_locus(cmd: &PointCmd, s: &Settings) -> Result<OpResult> {
    let k = body3(&cmd.common)?;
    let point: [f64; 3] = parse_fixed(&cmd.point, "--point")?;
    let locus = midpoint_locus(&k, point, s.planes)?;
    let mut artifacts = Vec::new();
    if cmd.common.csv {
        artifacts.push(("midpoint-locus.csv".to_owned(), report::locus_csv(&locus)));
    }
    Ok(OpResult {
        inputs: echo_inputs(&cmd.common, s, &[("point", json!(point))]),
        outcome: serde_json::to_value(&locus)?,
        exit_code: EXIT_PASS,
        artifacts,
    })
}

fn cmd_shadow(cmd: &DirCmd, s: &Settings) -> Result<OpResult> {
    let k = body3(&cmd.common)?;
    let dir = parse_dir(&cmd.dir)?;
    let rim = shadow_boundary(&k, &dir, s.samples);
    let outcome = json!({ "rim_points": rim.len() });
    let mut artifacts = Vec::new();
    if cmd.common.csv {
        artifacts.push(("shadow.csv".to_owned(), report::points3_csv(&rim)));
    }
    if cmd.common.svg {
        let proj = slice::project(&k, &dir, s.samples)?;
        artifacts.push(("shadow.svg".to_owned(), report::planar_svg(&proj)));
    }
    Ok(OpResult {
        inputs: echo_inputs(&cmd.common, s, &[("dir", json!(dir.as_array()))]),
        outcome,
        exit_code: EXIT_PASS,
        artifacts,
    })
}

fn cmd_point_test(cmd: &PointCmd, s: &Settings, pinned: bool) -> Result<OpResult> {
    let k = body3(&cmd.common)?;
    let point: [f64; 3] = parse_fixed(&cmd.point, "--point")?;
    let cert = if pinned {
        revolution_point_test(&k, point, s.planes, s.samples, s.tol)?
    } else {
        larman_point_test(&k, point, s.planes, s.samples, s.tol)?
    };
    Ok(OpResult {
        inputs: echo_inputs(&cmd.common, s, &[("point", json!(point))]),
        exit_code: pass_or_fail(cert.passed()),
        outcome: serde_json::to_value(&cert)?,
        artifacts: Vec::new(),
    })
}

fn cmd_certify(cmd: &CertifyCmd, s: &Settings) -> Result<OpResult> {
    let k = body3(&cmd.common)?;
    let (cert, extra) = match cmd.mode {
        CertifyMode::Sphere => (certify_sphere(&k, s.tol), ("mode", json!("sphere"))),
        CertifyMode::Revolution => {
            let line = cmd.line.as_ref().ok_or_else(|| {
                Error::InvalidSpec("certify --mode revolution needs --line for the axis".into())
            })?;
            let axis = parse_line(line)?;
            (
                certify_body_of_revolution(&k, &axis, s.planes, s.samples, s.tol)?,
                ("mode", json!("revolution")),
            )
        }
    };
    let mut extras = vec![extra];
    if let Some(line) = &cmd.line {
        extras.push(("line", json!(parse_line(line)?)));
    }
    Ok(OpResult {
        inputs: echo_inputs(&cmd.common, s, &extras),
        exit_code: pass_or_fail(cert.passed()),
        outcome: serde_json::to_value(&cert)?,
        artifacts: Vec::new(),
    })
}

fn cmd_theorem1(cmd: &PointLineCmd, s: &Settings) -> Result<OpResult> {
    let k = body3(&cmd.common)?;
    let point: [f64; 3] = parse_fixed(&cmd.point, "--point")?;
    let line = parse_line(&cmd.line)?;
    let verdict = theorem1_decide(&k, point, &line, &budget(s))?;
    Ok(OpResult {
        inputs: echo_inputs(
            &cmd.common,
            s,
            &[("line", json!(line)), ("point", json!(point))],
        ),
        exit_code: verdict_exit(&verdict),
        outcome: serde_json::to_value(&verdict)?,
        artifacts: Vec::new(),
    })
}

fn cmd_theorem2(cmd: &Theorem2Cmd, s: &Settings) -> Result<OpResult> {
    let k = body3(&cmd.common)?;
    let point: [f64; 3] = parse_fixed(&cmd.point, "--point")?;
    let second = match &cmd.second {
        Some(text) => Some(parse_fixed::<3>(text, "--second")?),
        None => None,
    };
    let verdict = theorem2_decide(&k, point, second, &budget(s))?;
    let mut extras = vec![("point", json!(point))];
    if let Some(q) = second {
        extras.push(("second", json!(q)));
    }
    Ok(OpResult {
        inputs: echo_inputs(&cmd.common, s, &extras),
        exit_code: verdict_exit(&verdict),
        outcome: serde_json::to_value(&verdict)?,
        artifacts: Vec::new(),
    })
}

fn cmd_theorem3(cmd: &LineCmd, s: &Settings) -> Result<OpResult> {
    let k = body3(&cmd.common)?;
    let line = parse_line(&cmd.line)?;
    let verdict = theorem3_decide(&k, &line, &budget(s))?;
    Ok(OpResult {
        inputs: echo_inputs(&cmd.common, s, &[("line", json!(line))]),
        exit_code: verdict_exit(&verdict),
        outcome: serde_json::to_value(&verdict)?,
        artifacts: Vec::new(),
    })
}

fn cmd_theorem45(cmd: &Theorem45Cmd, s: &Settings) -> Result<OpResult> {
    let k4 = body4(&cmd.common)?;
    let (mode, extras) = match cmd.mode {
        HyperMode::Sections => {
            let text = cmd.point.as_ref().ok_or_else(|| {
                Error::InvalidSpec("theorem45 --mode sections needs --point \"x,y,z,w\"".into())
            })?;
            let base: [f64; 4] = parse_fixed(text, "--point")?;
            (
                Theorem45Mode::Sections { base },
                vec![("mode", json!("sections")), ("point", json!(base))],
            )
        }
        HyperMode::Projections => {
            if cmd.point.is_some() {
                return Err(Error::InvalidSpec(
                    "theorem45 --mode projections takes no --point".into(),
                ));
            }
            (Theorem45Mode::Projections, vec![("mode", json!("projections"))])
        }
    };
    let verdict = theorem45_decide(&k4, mode, &budget(s))?;
    Ok(OpResult {
        inputs: echo_inputs(&cmd.common, s, &extras),
        exit_code: verdict_exit(&verdict),
        outcome: serde_json::to_value(&verdict)?,
        artifacts: Vec::new(),
    })
}

fn plane_echo(plane: &Plane<3>) -> Value {
    let n = plane.normal.as_array();
    json!([n[0], n[1], n[2], plane.offset])
}
