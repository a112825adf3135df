//! End-to-end tests of the binary: argument handling, exit codes, and the
//! stability of serialized output across invocations.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use jmshape::dynamics::{collinear_zero_energy_data, matched_initial_data};
use jmshape::shape::CollinearChart;

const PI_8: &str = "0.39269908169872414";
const PI_4: &str = "0.7853981633974483";
const PI_2: &str = "1.5707963267948966";

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jmshape"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn tmp_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name)
}

/// Column value from a two-line CSV (header + one record).
fn csv_field(csv: &str, column: &str) -> String {
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    let idx = header.iter().position(|h| *h == column).unwrap();
    row[idx].to_string()
}

/// Scalar value for a key in the flat JSON records the binary emits.
fn json_number(json: &str, key: &str) -> f64 {
    let pat = format!("\"{key}\": ");
    let start = json.find(&pat).unwrap() + pat.len();
    let rest = &json[start..];
    let end = rest.find([',', '}']).unwrap();
    rest[..end].parse().unwrap()
}

#[test]
fn scan_single_sample_reports_the_anchor_values() {
    let out = run(&[
        "scan", "--n", "4", "--theta", PI_2, "--phi-min", PI_8, "--phi-max", PI_8, "--samples",
        "1",
    ]);
    assert!(out.status.success());
    let csv = stdout(&out);
    assert_eq!(csv.lines().count(), 2);
    assert_eq!(csv_field(&csv, "status"), "ok");
    let k: f64 = csv_field(&csv, "k").parse().unwrap();
    let lhs: f64 = csv_field(&csv, "lhs").parse().unwrap();
    let rhs: f64 = csv_field(&csv, "rhs").parse().unwrap();
    assert!((k - 0.368).abs() < 1e-10);
    assert!((lhs - 976.0).abs() < 1e-7);
    assert!((rhs - 3920.0).abs() < 1e-7);
}

#[test]
fn scan_of_only_collisions_exits_2_but_still_writes_records() {
    let out = run(&[
        "scan", "--phi-min", PI_4, "--phi-max", PI_4, "--samples", "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(csv_field(&stdout(&out), "status"), "collision");
}

#[test]
fn scan_output_is_byte_identical_across_runs_and_formats_share_numbers() {
    let args = [
        "scan", "--phi-min", "0.05", "--phi-max", "0.7", "--samples", "9",
    ];
    let csv_args: Vec<&str> = args.to_vec();
    let a = run(&csv_args);
    let b = run(&csv_args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);

    let mut json_args = args.to_vec();
    json_args.extend(["--format", "json"]);
    let j = run(&json_args);
    assert!(j.status.success());
    let json = stdout(&j);
    let k = csv_field(&stdout(&a), "k");
    assert!(json.contains(&format!("\"k\": {k}")));
}

#[test]
fn scan_writes_to_a_file_when_asked() {
    let path = tmp_path("scan_out.csv");
    let out = run(&[
        "scan", "--phi-min", "0.1", "--phi-max", "0.2", "--samples", "3", "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).is_empty());
    let body = fs::read_to_string(&path).unwrap();
    assert_eq!(body.lines().count(), 4);
}

#[test]
fn scan_usage_errors_exit_1() {
    // missing required arguments
    let out = run(&["scan", "--phi-min", "0.1"]);
    assert_eq!(out.status.code(), Some(1));
    // unsupported body count
    let out = run(&[
        "scan", "--n", "5", "--phi-min", "0.1", "--phi-max", "0.2", "--samples", "2",
    ]);
    assert_eq!(out.status.code(), Some(1));
    // inverted band
    let out = run(&[
        "scan", "--phi-min", "0.3", "--phi-max", "0.1", "--samples", "2",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn curvature_at_chart_prints_one_breakdown() {
    let out = run(&[
        "curvature-at", "--chart", &format!("{PI_8},{PI_2}"), "--plane", "normal",
    ]);
    assert!(out.status.success());
    let json = stdout(&out);
    assert!(json.contains("\"plane\": \"normal\""));
    assert!((json_number(&json, "k") - 0.368).abs() < 1e-10);
    assert!((json_number(&json, "lhs") - 976.0).abs() < 1e-7);
    assert!((json_number(&json, "rhs") - 3920.0).abs() < 1e-7);
}

#[test]
fn curvature_at_explicit_plane_matches_the_chart_plane() {
    let chart = CollinearChart::new(0.39269908169872414, 1.5707963267948966);
    let pair = chart.normal_plane().unwrap();
    let join = |v: &nalgebra::DVector<f64>| {
        v.iter().map(|x| format!("{x:.17}")).collect::<Vec<_>>().join(",")
    };
    let point = join(chart.point().unwrap().coords());
    let out = run(&[
        "curvature-at",
        "--point",
        &point,
        "--v1",
        &join(pair.v1()),
        "--v2",
        &join(pair.v2()),
        "--format",
        "csv",
    ]);
    assert!(out.status.success());
    let csv = stdout(&out);
    assert_eq!(csv_field(&csv, "plane"), "custom");
    let k: f64 = csv_field(&csv, "k").parse().unwrap();
    assert!((k - 0.368).abs() < 1e-9);
    // explicit planes carry no inequality sides
    assert_eq!(csv_field(&csv, "lhs"), "");
    // point mode has no chart angles
    assert_eq!(csv_field(&csv, "phi"), "");
}

#[test]
fn curvature_at_collision_exits_2_and_names_the_pair() {
    let out = run(&[
        "curvature-at", "--chart", &format!("{PI_4},{PI_2}"), "--plane", "normal",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("bodies"));
}

#[test]
fn curvature_at_malformed_input_exits_1() {
    // unparseable number
    let out = run(&["curvature-at", "--chart", "0.3,oops", "--plane", "normal"]);
    assert_eq!(out.status.code(), Some(1));
    // point without spanning vectors
    let out = run(&["curvature-at", "--point", "1,0,0,0,0,0"]);
    assert_eq!(out.status.code(), Some(1));
    // chart and point together (clap conflict)
    let out = run(&[
        "curvature-at", "--chart", "0.3,1.5", "--point", "1,0,0,0,0,0", "--plane", "normal",
    ]);
    assert_eq!(out.status.code(), Some(1));
    // non-horizontal explicit vectors are rejected, not projected
    let out = run(&[
        "curvature-at", "--point", "1,0,0,0,0,0", "--v1", "1,0,0,0,0,0", "--v2",
        "0,0,1,0,0,0",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn verify_suite_reports_checks_and_passes() {
    let out = run(&["verify", "--suite", "pants"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("suite pants\n"));
    assert!(text.contains("[pass]"));
    assert!(text.contains("measured"));
    assert!(text.trim_end().ends_with("verification passed"));

    let out = run(&["verify", "--suite", "bogus"]);
    assert_eq!(out.status.code(), Some(1));
}

fn write_matched_init(name: &str) -> PathBuf {
    let (p0, v0) = collinear_zero_energy_data().unwrap();
    let state = matched_initial_data(&p0, &v0).unwrap();
    let n = state.config().n_bodies();
    let pos = state.config().positions();
    let vel = state.velocities();
    let pairs = |v: &nalgebra::DVector<f64>| {
        (0..n).map(|k| vec![v[2 * k], v[2 * k + 1]]).collect::<Vec<_>>()
    };
    let doc = serde_json::json!({
        "masses": state.config().masses(),
        "positions": pairs(pos),
        "velocities": pairs(vel),
    });
    let path = tmp_path(name);
    fs::write(&path, serde_json::to_string_pretty(&doc).unwrap()).unwrap();
    path
}

#[test]
fn geodesic_both_mode_writes_two_csvs_and_prints_the_hausdorff_distance() {
    let init = write_matched_init("matched_init.json");
    let out_path = tmp_path("run.csv");
    let out = run(&[
        "geodesic", "--init", init.to_str().unwrap(), "--t-end", "0.05", "--dt", "1e-4",
        "--mode", "both", "--out", out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));

    let newton = fs::read_to_string(tmp_path("run.newton.csv")).unwrap();
    let jm = fs::read_to_string(tmp_path("run.jm.csv")).unwrap();
    assert_eq!(newton.lines().count(), 502);
    assert_eq!(jm.lines().count(), 502);
    assert!(newton.starts_with("status,t,h,j,i,i_dot,virial_residual,x1,y1"));
    assert!(jm.starts_with("status,t,jm_speed,u_l,horizontality,p1_re,p1_im"));

    let text = stdout(&out);
    let hausdorff: f64 = text
        .lines()
        .find_map(|l| l.strip_prefix("hausdorff "))
        .unwrap()
        .parse()
        .unwrap();
    assert!(hausdorff < 1e-4, "hausdorff {hausdorff}");
}

#[test]
fn geodesic_newton_mode_keeps_monitors_flat() {
    let init = write_matched_init("matched_init_newton.json");
    let out_path = tmp_path("newton_only.csv");
    let out = run(&[
        "geodesic", "--init", init.to_str().unwrap(), "--t-end", "0.02", "--dt", "1e-4",
        "--mode", "newton", "--out", out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let csv = fs::read_to_string(&out_path).unwrap();
    let header: Vec<&str> = csv.lines().next().unwrap().split(',').collect();
    let h_col = header.iter().position(|h| *h == "h").unwrap();
    for line in csv.lines().skip(1) {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields[0], "ok");
        let h: f64 = fields[h_col].parse().unwrap();
        assert!(h.abs() < 1e-10);
    }
}

#[test]
fn geodesic_close_encounter_truncates_with_exit_2() {
    let doc = serde_json::json!({
        "masses": [1.0, 1.0, 1.0, 1.0],
        "positions": [[-0.05, 0.0], [0.05, 0.0], [0.0, 1.5], [0.0, -1.5]],
        "velocities": [[0.0, 0.0], [0.0, 0.0], [0.0, 0.0], [0.0, 0.0]],
    });
    let init = tmp_path("infall_init.json");
    fs::write(&init, serde_json::to_string(&doc).unwrap()).unwrap();
    let out_path = tmp_path("infall.csv");
    let out = run(&[
        "geodesic", "--init", init.to_str().unwrap(), "--t-end", "0.1", "--dt", "1e-5",
        "--mode", "newton", "--out", out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    let csv = fs::read_to_string(&out_path).unwrap();
    assert!(csv.lines().count() > 2, "partial trajectory retained");
    assert!(csv.lines().last().unwrap().starts_with("truncated,"));
    assert!(stderr(&out).contains("truncated"));
}

#[test]
fn geodesic_malformed_init_exits_1() {
    let path = tmp_path("broken_init.json");
    fs::write(&path, "{\"masses\": [1.0], \"positions\": oops").unwrap();
    let out = run(&[
        "geodesic", "--init", path.to_str().unwrap(), "--out",
        tmp_path("never.csv").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));

    let out = run(&[
        "geodesic", "--init", tmp_path("missing_init.json").to_str().unwrap(), "--out",
        tmp_path("never.csv").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
}
