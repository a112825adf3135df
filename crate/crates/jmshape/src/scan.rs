//! Curvature scans over collinear shapes, with CSV and JSON encodings.
//!
//! A scan walks a closed interval of the collinear angle phi and evaluates
//! the sectional curvature of a chosen plane at every grid point. Angles
//! whose configuration has a coincident pair produce a record with collision
//! status and no numeric fields, so a sweep across a singular angle still
//! yields one record per sample. Floats are serialized with 17 significant
//! digits; repeated runs produce byte-identical output.

use std::fmt;
use std::str::FromStr;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::curvature::{
    inequality_sides, pants_curvature, sectional_curvature, CurvatureBreakdown, InequalitySides,
};
use crate::error::GeometryError;
use crate::shape::{collinear_point_three, CollinearChart, TangentPair};
use crate::tol::THETA_AXIS_TOL;
use crate::Result;

/// Which plane a record measured.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlaneKind {
    /// Orthogonal to the collinear locus.
    Normal,
    /// Tangent to the collinear locus.
    Tangent,
    /// Supplied explicitly by the caller.
    Custom,
}

impl PlaneKind {
    pub fn as_str(self) -> &'static str {
        match self {
            PlaneKind::Normal => "normal",
            PlaneKind::Tangent => "tangent",
            PlaneKind::Custom => "custom",
        }
    }
}

impl fmt::Display for PlaneKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PlaneKind {
    type Err = GeometryError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "normal" => Ok(PlaneKind::Normal),
            "tangent" => Ok(PlaneKind::Tangent),
            "custom" => Ok(PlaneKind::Custom),
            other => Err(GeometryError::invalid(format!(
                "unknown plane '{other}' (expected normal, tangent, or custom)"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RecordStatus {
    Ok,
    Collision,
}

impl RecordStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            RecordStatus::Ok => "ok",
            RecordStatus::Collision => "collision",
        }
    }
}

/// One evaluated sample. Numeric fields are absent on collision records;
/// lhs and rhs are filled only for normal-plane four-body samples on the
/// symmetric axis, where both sides of the curvature inequality are defined.
#[derive(Clone, Debug)]
pub struct ScanRecord {
    pub status: RecordStatus,
    pub phi: Option<f64>,
    pub theta: Option<f64>,
    pub plane: PlaneKind,
    pub k: Option<f64>,
    pub term_first_partials: Option<f64>,
    pub term_grad_norm: Option<f64>,
    pub term_laplacian: Option<f64>,
    pub term_oneill: Option<f64>,
    pub u_l: Option<f64>,
    pub lhs: Option<f64>,
    pub rhs: Option<f64>,
}

impl ScanRecord {
    pub fn collision(phi: Option<f64>, theta: Option<f64>, plane: PlaneKind) -> Self {
        ScanRecord {
            status: RecordStatus::Collision,
            phi,
            theta,
            plane,
            k: None,
            term_first_partials: None,
            term_grad_norm: None,
            term_laplacian: None,
            term_oneill: None,
            u_l: None,
            lhs: None,
            rhs: None,
        }
    }

    pub fn from_breakdown(
        breakdown: &CurvatureBreakdown,
        plane: PlaneKind,
        phi: Option<f64>,
        theta: Option<f64>,
        sides: Option<&InequalitySides>,
    ) -> Self {
        ScanRecord {
            status: RecordStatus::Ok,
            phi,
            theta,
            plane,
            k: Some(breakdown.k),
            term_first_partials: Some(breakdown.term_first_partials),
            term_grad_norm: Some(breakdown.term_grad_norm),
            term_laplacian: Some(breakdown.term_laplacian),
            term_oneill: Some(breakdown.term_oneill),
            u_l: Some(breakdown.u_l),
            lhs: sides.map(|s| s.lhs),
            rhs: sides.map(|s| s.rhs),
        }
    }

    pub fn is_ok(&self) -> bool {
        self.status == RecordStatus::Ok
    }
}

/// Scan request. Three-body scans walk the collinear circle and report the
/// surface curvature of the quotient; theta and plane are echoed into the
/// records but do not affect the values.
#[derive(Clone, Debug)]
pub struct ScanConfig {
    pub n: usize,
    pub theta: f64,
    pub phi_min: f64,
    pub phi_max: f64,
    pub samples: usize,
    pub plane: PlaneKind,
}

impl ScanConfig {
    fn validate(&self) -> Result<()> {
        if self.n != 3 && self.n != 4 {
            return Err(GeometryError::invalid("scan supports three or four bodies"));
        }
        if self.plane == PlaneKind::Custom {
            return Err(GeometryError::invalid("scan planes are normal or tangent"));
        }
        if self.samples == 0 {
            return Err(GeometryError::invalid("samples must be at least 1"));
        }
        if !(self.phi_min.is_finite() && self.phi_max.is_finite() && self.theta.is_finite()) {
            return Err(GeometryError::invalid("angles must be finite"));
        }
        if self.phi_min > self.phi_max {
            return Err(GeometryError::invalid("phi_min must not exceed phi_max"));
        }
        Ok(())
    }

    fn angle(&self, index: usize) -> f64 {
        if self.samples == 1 {
            self.phi_min
        } else {
            let t = index as f64 / (self.samples - 1) as f64;
            self.phi_min + t * (self.phi_max - self.phi_min)
        }
    }
}

fn record_at(cfg: &ScanConfig, phi: f64) -> Result<ScanRecord> {
    let outcome = if cfg.n == 3 {
        collinear_point_three(phi).and_then(|p| pants_curvature(&p))
    } else {
        let chart = CollinearChart::new(phi, cfg.theta);
        let pair = match cfg.plane {
            PlaneKind::Normal => chart.normal_plane(),
            PlaneKind::Tangent => chart.tangent_plane(),
            PlaneKind::Custom => unreachable!("validated before dispatch"),
        };
        pair.and_then(|p| sectional_curvature(&p))
    };
    match outcome {
        Ok(breakdown) => {
            let on_axis = (cfg.theta - std::f64::consts::FRAC_PI_2).abs() <= THETA_AXIS_TOL;
            let sides = if cfg.n == 4 && cfg.plane == PlaneKind::Normal && on_axis {
                inequality_sides(phi).ok()
            } else {
                None
            };
            Ok(ScanRecord::from_breakdown(
                &breakdown,
                cfg.plane,
                Some(phi),
                Some(cfg.theta),
                sides.as_ref(),
            ))
        }
        Err(e) if e.is_collision() => {
            Ok(ScanRecord::collision(Some(phi), Some(cfg.theta), cfg.plane))
        }
        Err(e) => Err(e),
    }
}

/// Evaluate the grid. Samples are independent, so the grid is evaluated in
/// parallel when the feature is on; records come back in grid order.
pub fn run_scan(cfg: &ScanConfig) -> Result<Vec<ScanRecord>> {
    cfg.validate()?;
    let angles: Vec<f64> = (0..cfg.samples).map(|i| cfg.angle(i)).collect();

    #[cfg(feature = "parallel")]
    let records = angles
        .par_iter()
        .map(|&phi| record_at(cfg, phi))
        .collect::<Result<Vec<_>>>()?;

    #[cfg(not(feature = "parallel"))]
    let records = angles
        .iter()
        .map(|&phi| record_at(cfg, phi))
        .collect::<Result<Vec<_>>>()?;

    Ok(records)
}

/// Record for one explicitly supplied plane.
pub fn record_for_pair(
    pair: &TangentPair,
    plane: PlaneKind,
    phi: Option<f64>,
    theta: Option<f64>,
) -> Result<ScanRecord> {
    let breakdown = sectional_curvature(pair)?;
    let n = pair.base().n_bodies();
    let on_axis = match theta {
        Some(t) => (t - std::f64::consts::FRAC_PI_2).abs() <= THETA_AXIS_TOL,
        None => false,
    };
    let sides = match (phi, plane) {
        (Some(p), PlaneKind::Normal) if n == 4 && on_axis => inequality_sides(p).ok(),
        _ => None,
    };
    Ok(ScanRecord::from_breakdown(&breakdown, plane, phi, theta, sides.as_ref()))
}

pub const CSV_HEADER: &str = "status,phi,theta,plane,k,term_first_partials,term_grad_norm,\
term_laplacian,term_oneill,u_l,lhs,rhs";

/// 17 significant digits: enough for exact f64 round-trips, few enough to be
/// stable across runs.
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

fn csv_field(x: Option<f64>) -> String {
    x.map(format_float).unwrap_or_default()
}

fn json_field(x: Option<f64>) -> String {
    x.map(format_float).unwrap_or_else(|| "null".to_string())
}

pub fn to_csv(records: &[ScanRecord]) -> String {
    let mut out = String::with_capacity(records.len() * 200 + CSV_HEADER.len() + 1);
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in records {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{}\n",
            r.status.as_str(),
            csv_field(r.phi),
            csv_field(r.theta),
            r.plane.as_str(),
            csv_field(r.k),
            csv_field(r.term_first_partials),
            csv_field(r.term_grad_norm),
            csv_field(r.term_laplacian),
            csv_field(r.term_oneill),
            csv_field(r.u_l),
            csv_field(r.lhs),
            csv_field(r.rhs),
        ));
    }
    out
}

pub fn to_json(records: &[ScanRecord]) -> String {
    let mut out = String::with_capacity(records.len() * 400 + 4);
    out.push_str("[\n");
    for (i, r) in records.iter().enumerate() {
        out.push_str(&format!(
            "  {{\"status\": \"{}\", \"phi\": {}, \"theta\": {}, \"plane\": \"{}\", \
\"k\": {}, \"term_first_partials\": {}, \"term_grad_norm\": {}, \"term_laplacian\": {}, \
\"term_oneill\": {}, \"u_l\": {}, \"lhs\": {}, \"rhs\": {}}}{}\n",
            r.status.as_str(),
            json_field(r.phi),
            json_field(r.theta),
            r.plane.as_str(),
            json_field(r.k),
            json_field(r.term_first_partials),
            json_field(r.term_grad_norm),
            json_field(r.term_laplacian),
            json_field(r.term_oneill),
            json_field(r.u_l),
            json_field(r.lhs),
            json_field(r.rhs),
            if i + 1 == records.len() { "" } else { "," },
        ));
    }
    out.push_str("]\n");
    out
}
