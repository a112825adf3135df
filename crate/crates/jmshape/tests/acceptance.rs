//! Acceptance gate: one test per release criterion, each printing a single
//! pass/fail line. Criteria with stated runtime budgets assert them.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};
use std::time::{Duration, Instant};

use jmshape::scan::{run_scan, to_csv, to_json, PlaneKind, ScanConfig};
use jmshape::verify::{
    anchor_checks, bracket_checks, collinear_structure_checks, conformal_block_checks,
    dynamics_checks, gradient_norm_identity_check, halving_checks, oracle_agreement_checks,
    pants_checks, run_suite, CheckResult,
};

fn report(criterion: usize, name: &str, pass: bool) {
    println!("acceptance {criterion} {name}: {}", if pass { "PASS" } else { "FAIL" });
}

fn assert_all(criterion: usize, checks: &[CheckResult]) {
    for c in checks {
        assert!(
            c.passed,
            "criterion {criterion}: {} measured {:e} against bound {:e}",
            c.name, c.measured, c.bound
        );
    }
}

fn band_sweep() -> ScanConfig {
    ScanConfig {
        n: 4,
        theta: FRAC_PI_2,
        phi_min: 0.01,
        phi_max: FRAC_PI_4 - 0.01,
        samples: 512,
        plane: PlaneKind::Normal,
    }
}

#[test]
fn criterion_1_positive_curvature_across_the_collinear_band() {
    let start = Instant::now();
    let records = run_scan(&band_sweep()).unwrap();
    let elapsed = start.elapsed();

    let mut pass = records.len() == 512;
    for r in &records {
        pass = pass
            && r.is_ok()
            && r.k.unwrap() > 0.0
            && r.lhs.unwrap() < r.rhs.unwrap()
            && r.lhs.unwrap() > 0.0;
    }
    let timely = elapsed < Duration::from_secs(1);
    report(1, "normal-plane curvature positive across the collinear band", pass && timely);
    assert!(pass, "a sweep sample violated positivity or the inequality");
    assert!(timely, "sweep took {elapsed:?}, budget 1s");
}

#[test]
fn criterion_2_frozen_anchor_values() {
    let checks = anchor_checks().unwrap();
    let pass = checks.iter().all(|c| c.passed && c.bound == 1e-10);
    report(2, "pi/8 chart anchors at 1e-10 relative", pass);
    assert!(checks.iter().all(|c| c.bound == 1e-10));
    assert_all(2, &checks);
}

#[test]
fn criterion_3_closed_forms_match_the_difference_oracle() {
    let start = Instant::now();
    let oracle = oracle_agreement_checks(32, 37).unwrap();
    let halving = halving_checks().unwrap();
    let elapsed = start.elapsed();

    let pass = oracle.iter().all(|c| c.passed && c.bound == 1e-3)
        && halving.iter().all(|c| c.passed && c.bound == 3.0);
    let timely = elapsed < Duration::from_secs(30);
    report(3, "curvature matches finite differences with second-order decay", pass && timely);
    assert!(oracle.iter().all(|c| c.bound == 1e-3));
    assert!(halving.iter().all(|c| c.bound == 3.0));
    assert_all(3, &oracle);
    assert_all(3, &halving);
    assert!(timely, "oracle comparison took {elapsed:?}, budget 30s");
}

#[test]
fn criterion_4_three_body_quotient_never_curves_positively() {
    let start = Instant::now();
    let checks = pants_checks(500, 71).unwrap();
    let elapsed = start.elapsed();

    let timely = elapsed < Duration::from_secs(5);
    let pass = checks.iter().all(|c| c.passed);
    report(4, "three-body curvature nonpositive, flat only at equilateral", pass && timely);
    assert_eq!(checks[0].bound, 1e-9);
    assert_eq!(checks[1].bound, 1e-6);
    assert_all(4, &checks);
    assert!(timely, "quotient sampling took {elapsed:?}, budget 5s");
}

#[test]
fn criterion_5_submersion_identities() {
    let gradient = gradient_norm_identity_check(100, 53).unwrap();
    let brackets = bracket_checks(20, 59).unwrap();
    let blocks = conformal_block_checks(10, 61).unwrap();

    let pass = gradient.passed && gradient.bound == 1e-10
        && brackets.iter().all(|c| c.passed)
        && blocks.iter().all(|c| c.passed);
    report(5, "gradient, bracket, and block identities hold", pass);
    assert_eq!(gradient.bound, 1e-10);
    assert_eq!(brackets[0].bound, 1e-6);
    assert_eq!(brackets[1].bound, 1e-5);
    assert_eq!(blocks[0].bound, 1e-3);
    assert_all(5, &[gradient]);
    assert_all(5, &brackets);
    assert_all(5, &blocks);
}

#[test]
fn criterion_6_collinear_derivative_structure() {
    let checks = collinear_structure_checks(50, 23).unwrap();
    let pass = checks.iter().all(|c| c.passed);
    report(6, "collinear charts kill first partials and couple pairs by 2 rho^4", pass);
    assert_eq!(checks[0].bound, 1e-12);
    assert_eq!(checks[1].bound, 1e-12);
    assert_eq!(checks[2].bound, 1e-10);
    assert_all(6, &checks);
}

#[test]
fn criterion_7_newtonian_flow_traces_the_geodesic() {
    let start = Instant::now();
    let checks = dynamics_checks(1.0, 1e-4).unwrap();
    let elapsed = start.elapsed();

    let timely = elapsed < Duration::from_secs(30);
    let pass = checks.iter().all(|c| c.passed);
    report(7, "zero-energy run conserves monitors and retraces the geodesic", pass && timely);
    let bound_of = |name: &str| {
        checks
            .iter()
            .find(|c| c.name.contains(name))
            .unwrap_or_else(|| panic!("missing check {name}"))
            .bound
    };
    assert_eq!(bound_of("energy drift"), 1e-8);
    assert_eq!(bound_of("angular momentum drift"), 1e-8);
    assert_eq!(bound_of("inertia stays constant"), 1e-6);
    assert_eq!(bound_of("virial"), 1e-5);
    assert_eq!(bound_of("traces coincide"), 1e-4);
    assert_all(7, &checks);
    assert!(timely, "equivalence run took {elapsed:?}, budget 30s");
}

#[test]
fn criterion_8_repeated_runs_are_byte_identical() {
    let cfg = band_sweep();
    let first = run_scan(&cfg).unwrap();
    let second = run_scan(&cfg).unwrap();
    let scans_match = to_csv(&first) == to_csv(&second) && to_json(&first) == to_json(&second);

    let render_all = || {
        run_suite("all")
            .unwrap()
            .iter()
            .map(|s| s.render())
            .collect::<String>()
    };
    let report_a = render_all();
    let report_b = render_all();
    let reports_match = report_a == report_b;

    report(8, "fixed seeds reproduce byte-identical serialized output", scans_match && reports_match);
    assert!(scans_match, "scan encodings differ between runs");
    assert!(reports_match, "suite reports differ between runs");
    assert!(report_a.contains("suite dynamics"));
}
