//! Command-line front end for the shape-space geometry library.
//!
//! Exit codes: 0 success, 1 usage or malformed input, 2 domain failure
//! (collision at a requested point, all-collision scan, truncated
//! trajectory), 3 verification failure.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use jmshape::dynamics::{
    integrate_jm_geodesic, integrate_newton, trace_hausdorff, virial_residuals,
    IntegrationOutcome, JmTrajectory, NewtonTrajectory, PhaseState, ShapeTrace,
};
use jmshape::nbody::{ComEmbedding, Configuration};
use jmshape::scan::{self, format_float, PlaneKind, ScanConfig};
use jmshape::shape::{CollinearChart, ReducedPoint, TangentPair};
use jmshape::verify;
use jmshape::GeometryError;

#[derive(Parser)]
#[command(
    name = "jmshape",
    version,
    about = "Shape-space curvature of the planar N-body problem with inverse-square pair potential"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Scan sectional curvature over a band of collinear angles
    Scan(ScanArgs),
    /// Evaluate one curvature breakdown at a chart angle or an explicit point
    CurvatureAt(CurvatureAtArgs),
    /// Run the self-verification suites
    Verify(VerifyArgs),
    /// Integrate zero-energy trajectories and compare shape traces
    Geodesic(GeodesicArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum PlaneArg {
    Normal,
    Tangent,
}

impl From<PlaneArg> for PlaneKind {
    fn from(p: PlaneArg) -> PlaneKind {
        match p {
            PlaneArg::Normal => PlaneKind::Normal,
            PlaneArg::Tangent => PlaneKind::Tangent,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Args)]
struct ScanArgs {
    /// Number of bodies (3 or 4)
    #[arg(long, default_value_t = 4)]
    n: usize,
    /// Chart angle theta (three-body scans ignore it)
    #[arg(long, default_value_t = std::f64::consts::FRAC_PI_2, allow_negative_numbers = true)]
    theta: f64,
    #[arg(long, allow_negative_numbers = true)]
    phi_min: f64,
    #[arg(long, allow_negative_numbers = true)]
    phi_max: f64,
    /// Grid size, endpoints included
    #[arg(long)]
    samples: usize,
    #[arg(long, value_enum, default_value_t = PlaneArg::Normal)]
    plane: PlaneArg,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
    /// Output path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CurvatureAtArgs {
    /// Chart angles "phi,theta" (four bodies)
    #[arg(long, conflicts_with = "point", allow_hyphen_values = true)]
    chart: Option<String>,
    /// Reduced coordinates "re1,im1,re2,im2,..." (2(n-1) reals)
    #[arg(long, allow_hyphen_values = true)]
    point: Option<String>,
    /// Plane through a chart point
    #[arg(long, value_enum, conflicts_with_all = ["v1", "v2"])]
    plane: Option<PlaneArg>,
    /// First spanning vector of an explicit plane (comma-separated reals)
    #[arg(long, requires = "v2", allow_hyphen_values = true)]
    v1: Option<String>,
    /// Second spanning vector (orthonormalized against the first)
    #[arg(long, requires = "v1", allow_hyphen_values = true)]
    v2: Option<String>,
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
}

#[derive(Args)]
struct VerifyArgs {
    /// derivatives, curvature, appendix, pants, dynamics, or all
    #[arg(long, default_value = "all")]
    suite: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Newton,
    Jm,
    Both,
}

#[derive(Args)]
struct GeodesicArgs {
    /// JSON file with masses, positions, velocities
    #[arg(long)]
    init: PathBuf,
    #[arg(long, default_value_t = 1.0)]
    t_end: f64,
    #[arg(long, default_value_t = 1e-4)]
    dt: f64,
    #[arg(long, value_enum, default_value_t = ModeArg::Both)]
    mode: ModeArg,
    /// Output CSV path; 'both' writes <out>.newton.csv and <out>.jm.csv
    #[arg(long)]
    out: PathBuf,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.cmd {
        Command::Scan(a) => cmd_scan(a),
        Command::CurvatureAt(a) => cmd_curvature_at(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Geodesic(a) => cmd_geodesic(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

/// Usage problems exit 1, geometric failures at valid requests exit 2.
fn exit_code_for(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<GeometryError>() {
        Some(GeometryError::Collision { .. }) => 2,
        Some(GeometryError::IllConditioned(_)) => 2,
        Some(GeometryError::ZeroPoint) => 1,
        Some(GeometryError::Frame(_)) => 1,
        Some(GeometryError::InvalidInput(_)) => 1,
        None => 1,
    }
}

fn write_output(path: Option<&Path>, body: &str) -> anyhow::Result<()> {
    match path {
        Some(p) => {
            fs::write(p, body).with_context(|| format!("writing {}", p.display()))?;
        }
        None => print!("{body}"),
    }
    Ok(())
}

fn cmd_scan(a: ScanArgs) -> anyhow::Result<u8> {
    let cfg = ScanConfig {
        n: a.n,
        theta: a.theta,
        phi_min: a.phi_min,
        phi_max: a.phi_max,
        samples: a.samples,
        plane: a.plane.into(),
    };
    let records = scan::run_scan(&cfg)?;
    let body = match a.format {
        FormatArg::Csv => scan::to_csv(&records),
        FormatArg::Json => scan::to_json(&records),
    };
    write_output(a.out.as_deref(), &body)?;
    if records.iter().any(|r| r.is_ok()) {
        Ok(0)
    } else {
        eprintln!("error: every sample in the requested band is a collision");
        Ok(2)
    }
}

fn parse_floats(what: &str, s: &str) -> anyhow::Result<Vec<f64>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .with_context(|| format!("{what}: '{t}' is not a number"))
        })
        .collect()
}

fn parse_vector(what: &str, s: &str, dim: usize) -> anyhow::Result<nalgebra::DVector<f64>> {
    let v = parse_floats(what, s)?;
    if v.len() != dim {
        anyhow::bail!("{what}: expected {dim} comma-separated reals, got {}", v.len());
    }
    Ok(nalgebra::DVector::from_vec(v))
}

fn cmd_curvature_at(a: CurvatureAtArgs) -> anyhow::Result<u8> {
    let (pair, kind, phi, theta) = match (&a.chart, &a.point) {
        (Some(chart), None) => {
            let angles = parse_floats("--chart", chart)?;
            if angles.len() != 2 {
                anyhow::bail!("--chart: expected 'phi,theta'");
            }
            let (phi, theta) = (angles[0], angles[1]);
            let chart = CollinearChart::new(phi, theta);
            match (&a.plane, &a.v1, &a.v2) {
                (Some(PlaneArg::Normal), None, None) => {
                    (chart.normal_plane()?, PlaneKind::Normal, Some(phi), Some(theta))
                }
                (Some(PlaneArg::Tangent), None, None) => {
                    (chart.tangent_plane()?, PlaneKind::Tangent, Some(phi), Some(theta))
                }
                (None, Some(v1), Some(v2)) => {
                    let base = chart.point()?;
                    let dim = base.coords().len();
                    let w1 = parse_vector("--v1", v1, dim)?;
                    let w2 = parse_vector("--v2", v2, dim)?;
                    (TangentPair::new(base, w1, w2)?, PlaneKind::Custom, Some(phi), Some(theta))
                }
                _ => anyhow::bail!("--chart needs either --plane or both --v1 and --v2"),
            }
        }
        (None, Some(point)) => {
            let coords = parse_floats("--point", point)?;
            if coords.len() < 4 || coords.len() % 2 != 0 {
                anyhow::bail!("--point: expected an even number (>= 4) of reals");
            }
            let base = ReducedPoint::new(nalgebra::DVector::from_vec(coords))?;
            let dim = base.coords().len();
            match (&a.v1, &a.v2) {
                (Some(v1), Some(v2)) => {
                    let w1 = parse_vector("--v1", v1, dim)?;
                    let w2 = parse_vector("--v2", v2, dim)?;
                    (TangentPair::new(base, w1, w2)?, PlaneKind::Custom, None, None)
                }
                _ => anyhow::bail!("--point needs both --v1 and --v2 (chart planes need --chart)"),
            }
        }
        _ => anyhow::bail!("exactly one of --chart or --point is required"),
    };

    let record = scan::record_for_pair(&pair, kind, phi, theta)?;
    let body = match a.format {
        FormatArg::Csv => scan::to_csv(std::slice::from_ref(&record)),
        FormatArg::Json => scan::to_json(std::slice::from_ref(&record)),
    };
    print!("{body}");
    Ok(0)
}

fn cmd_verify(a: VerifyArgs) -> anyhow::Result<u8> {
    let reports = verify::run_suite(&a.suite)?;
    let mut all = true;
    for r in &reports {
        print!("{}", r.render());
        all &= r.passed();
    }
    if all {
        println!("verification passed");
        Ok(0)
    } else {
        println!("verification FAILED");
        Ok(3)
    }
}

#[derive(Deserialize)]
struct InitFile {
    masses: Vec<f64>,
    positions: Vec<[f64; 2]>,
    velocities: Vec<[f64; 2]>,
}

fn interleave(pairs: &[[f64; 2]]) -> nalgebra::DVector<f64> {
    nalgebra::DVector::from_iterator(2 * pairs.len(), pairs.iter().flat_map(|p| [p[0], p[1]]))
}

fn load_initial_state(path: &Path) -> anyhow::Result<PhaseState> {
    let text =
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let init: InitFile =
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    if init.masses.len() != init.positions.len() || init.masses.len() != init.velocities.len() {
        anyhow::bail!("masses, positions, and velocities must have equal length");
    }
    if init.masses.len() < 2 {
        anyhow::bail!("at least two bodies required");
    }
    let config = Configuration::new(init.masses, interleave(&init.positions))?;
    Ok(PhaseState::new(config, interleave(&init.velocities))?)
}

fn sibling(path: &Path, tag: &str) -> PathBuf {
    path.with_extension(format!("{tag}.csv"))
}

fn csv_row(out: &mut String, status: &str, fields: &[Option<f64>]) {
    out.push_str(status);
    for f in fields {
        out.push(',');
        if let Some(x) = f {
            out.push_str(&format_float(*x));
        }
    }
    out.push('\n');
}

fn newton_csv(traj: &NewtonTrajectory) -> anyhow::Result<String> {
    let n = traj.n_bodies();
    let monitors = traj.monitors()?;
    let residuals = virial_residuals(&monitors, traj.dt);
    let mut out = String::from("status,t,h,j,i,i_dot,virial_residual");
    for k in 1..=n {
        out.push_str(&format!(",x{k},y{k}"));
    }
    for k in 1..=n {
        out.push_str(&format!(",vx{k},vy{k}"));
    }
    out.push('\n');

    for (i, (t, m)) in traj.times.iter().zip(&monitors).enumerate() {
        let mut fields = vec![
            Some(*t),
            Some(m.energy),
            Some(m.angular_momentum),
            Some(m.inertia),
            Some(m.inertia_rate),
            residuals[i],
        ];
        let state = &traj.states[i];
        fields.extend(state.iter().map(|x| Some(*x)));
        csv_row(&mut out, "ok", &fields);
    }
    if let IntegrationOutcome::Truncated { time, .. } = &traj.outcome {
        let mut fields = vec![Some(*time)];
        fields.resize(6 + 4 * n, None);
        csv_row(&mut out, "truncated", &fields);
    }
    Ok(out)
}

fn jm_csv(traj: &JmTrajectory) -> anyhow::Result<String> {
    let m = 2 * (traj.n_bodies - 1);
    let monitors = traj.monitors()?;
    let mut out = String::from("status,t,jm_speed,u_l,horizontality");
    for k in 1..=m / 2 {
        out.push_str(&format!(",p{k}_re,p{k}_im"));
    }
    for k in 1..=m / 2 {
        out.push_str(&format!(",v{k}_re,v{k}_im"));
    }
    out.push('\n');

    for (i, (t, mon)) in traj.times.iter().zip(&monitors).enumerate() {
        let mut fields = vec![Some(*t), Some(mon.jm_speed), Some(mon.u_l), Some(mon.horizontality)];
        fields.extend(traj.states[i].iter().map(|x| Some(*x)));
        csv_row(&mut out, "ok", &fields);
    }
    if let IntegrationOutcome::Truncated { time, .. } = &traj.outcome {
        let mut fields = vec![Some(*time)];
        fields.resize(4 + 2 * m, None);
        csv_row(&mut out, "truncated", &fields);
    }
    Ok(out)
}

fn report_outcome(label: &str, path: &Path, outcome: &IntegrationOutcome) {
    match outcome {
        IntegrationOutcome::Completed => {
            eprintln!("{label}: completed, wrote {}", path.display());
        }
        IntegrationOutcome::Truncated { time, error } => {
            eprintln!("{label}: truncated at t = {time} ({error}), wrote {}", path.display());
        }
    }
}

fn cmd_geodesic(a: GeodesicArgs) -> anyhow::Result<u8> {
    let state = load_initial_state(&a.init)?;
    let emb = ComEmbedding::new(state.config().n_bodies())?;

    let run_newton = || -> anyhow::Result<NewtonTrajectory> {
        Ok(integrate_newton(&state, a.t_end, a.dt)?)
    };
    let run_jm = || -> anyhow::Result<JmTrajectory> {
        let p0 = ReducedPoint::new(emb.reduce(state.config().positions()))?;
        let v0 = emb.reduce(state.velocities());
        Ok(integrate_jm_geodesic(&p0, &v0, a.t_end, a.dt)?)
    };

    let mut completed = true;
    match a.mode {
        ModeArg::Newton => {
            let traj = run_newton()?;
            write_output(Some(&a.out), &newton_csv(&traj)?)?;
            report_outcome("newton", &a.out, &traj.outcome);
            completed &= traj.outcome.is_completed();
        }
        ModeArg::Jm => {
            let traj = run_jm()?;
            write_output(Some(&a.out), &jm_csv(&traj)?)?;
            report_outcome("jm", &a.out, &traj.outcome);
            completed &= traj.outcome.is_completed();
        }
        ModeArg::Both => {
            let newton = run_newton()?;
            let jm = run_jm()?;
            let newton_path = sibling(&a.out, "newton");
            let jm_path = sibling(&a.out, "jm");
            write_output(Some(&newton_path), &newton_csv(&newton)?)?;
            write_output(Some(&jm_path), &jm_csv(&jm)?)?;
            report_outcome("newton", &newton_path, &newton.outcome);
            report_outcome("jm", &jm_path, &jm.outcome);
            completed &= newton.outcome.is_completed() && jm.outcome.is_completed();

            let hausdorff = trace_hausdorff(
                &ShapeTrace::from_newton(&newton)?,
                &ShapeTrace::from_jm(&jm)?,
                1024,
            )?;
            println!("hausdorff {}", format_float(hausdorff));
        }
    }
    Ok(if completed { 0 } else { 2 })
}
