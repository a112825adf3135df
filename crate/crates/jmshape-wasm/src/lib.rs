//! Browser bindings. Each export takes plain numbers and strings and returns
//! a JSON string, so a static page needs no generated glue beyond the module
//! loader. Failures come back as `{"error": "..."}` instead of exceptions,
//! which keeps the calling convention identical across all three operations.

use std::str::FromStr;

use jmshape::dynamics::{
    fubini_study_distance, integrate_jm_geodesic, integrate_newton, matched_initial_data,
    trace_hausdorff, ShapeTrace,
};
use jmshape::scan::{format_float, run_scan, to_json, PlaneKind, ScanConfig};
use jmshape::shape::{CollinearChart, ReducedPoint};
use wasm_bindgen::prelude::*;

fn error_json(e: &jmshape::GeometryError) -> String {
    let mut msg = String::new();
    for c in format!("{e}").chars() {
        match c {
            '"' => msg.push_str("\\\""),
            '\\' => msg.push_str("\\\\"),
            c => msg.push(c),
        }
    }
    format!("{{\"error\": \"{msg}\"}}\n")
}

/// Curvature records over an inclusive φ grid, as a JSON array. Collision
/// points along the band come back as `"status": "collision"` records, so a
/// grid that brushes a singular shape still plots everywhere else.
#[wasm_bindgen]
pub fn scan_curve(
    n: usize,
    theta: f64,
    phi_min: f64,
    phi_max: f64,
    samples: usize,
    plane: &str,
) -> String {
    let run = || -> jmshape::Result<String> {
        let plane = PlaneKind::from_str(plane)?;
        let cfg = ScanConfig { n, theta, phi_min, phi_max, samples, plane };
        Ok(to_json(&run_scan(&cfg)?))
    };
    run().unwrap_or_else(|e| error_json(&e))
}

/// Single-point record with the full term breakdown, as a one-element JSON
/// array in the scan schema.
#[wasm_bindgen]
pub fn curvature_breakdown(n: usize, phi: f64, theta: f64, plane: &str) -> String {
    scan_curve(n, theta, phi, phi, 1, plane)
}

/// Newtonian flow versus JM geodesic from matched zero-energy data on the
/// four-body collinear chart at (φ, π/2), direction v₁, scaled to keep pair
/// distances of order one. Returns the symmetric Hausdorff distance between
/// the two shape traces plus the pointwise distance profile over the common
/// arclength range, which should sit at integrator error if the flows agree.
#[wasm_bindgen]
pub fn equivalence_run(phi: f64, t_end: f64, dt: f64, profile_samples: usize) -> String {
    let run = || -> jmshape::Result<String> {
        let chart = CollinearChart::new(phi, std::f64::consts::FRAC_PI_2);
        let pair = chart.normal_plane()?;
        let p0 = ReducedPoint::new(pair.base().coords() * 20f64.sqrt())?;
        let state = matched_initial_data(&p0, pair.v1())?;

        let newton = integrate_newton(&state, t_end, dt)?;
        let jm = integrate_jm_geodesic(&p0, pair.v1(), t_end, dt)?;
        let ta = ShapeTrace::from_newton(&newton)?;
        let tb = ShapeTrace::from_jm(&jm)?;
        let hausdorff = trace_hausdorff(&ta, &tb, profile_samples.max(2))?;

        let m = profile_samples.max(2);
        let smax = ta.total_arclength().min(tb.total_arclength()) * (1.0 - 1e-9);
        let targets: Vec<f64> = (0..m).map(|i| smax * i as f64 / (m - 1) as f64).collect();
        let pa = ta.resample(&targets);
        let pb = tb.resample(&targets);
        let profile: Vec<String> = pa
            .iter()
            .zip(&pb)
            .map(|(a, b)| format_float(fubini_study_distance(a, b)))
            .collect();

        Ok(format!(
            "{{\"hausdorff\": {}, \"newton_arclength\": {}, \"jm_arclength\": {}, \
\"completed\": {}, \"arclengths\": [{}], \"profile\": [{}]}}\n",
            format_float(hausdorff),
            format_float(ta.total_arclength()),
            format_float(tb.total_arclength()),
            newton.outcome.is_completed() && jm.outcome.is_completed(),
            targets.iter().map(|&s| format_float(s)).collect::<Vec<_>>().join(", "),
            profile.join(", "),
        ))
    };
    run().unwrap_or_else(|e| error_json(&e))
}
