//! Zero-energy Newton flow of the 1/r² potential and the geodesic flow of the
//! JM metric that reparameterizes it.
//!
//! With V = −U the force is +∇U and H = T − U. At H = 0 the Lagrange–Jacobi
//! identity Ï = 4H makes the moment of inertia an exact invariant whenever
//! İ(0) = 0, and Newton trajectories trace JM geodesics up to a time change.
//! The trace comparison at the end of the module makes that statement
//! numerical: both curves are resampled at the same JM arclengths and compared
//! pointwise in the Fubini–Study distance, so the reparameterization drops out
//! and the Hausdorff distance measures only method error.

use nalgebra::DVector;

use crate::error::GeometryError;
use crate::nbody::{potential, potential_derivatives, ComEmbedding, Configuration, ReducedPotential};
use crate::realified::{herm, herm_abs, mul_i, rotate};
use crate::shape::{horizontal_project, ReducedPoint};
use crate::tol;
use crate::Result;

/// Positions and velocities of the ambient problem, realified interleaved.
#[derive(Debug, Clone)]
pub struct PhaseState {
    config: Configuration,
    velocities: DVector<f64>,
}

/// Conserved-quantity monitors of a phase state. Inertia is taken about the
/// origin; centered zero-momentum data keeps it equal to the center-of-mass
/// version.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Monitors {
    /// H = Σ m|q̇|²/2 − U.
    pub energy: f64,
    /// J = Σ m Im(q̄ q̇).
    pub angular_momentum: f64,
    /// I = Σ m |q|².
    pub inertia: f64,
    /// İ = 2 Σ m Re(q̄ q̇).
    pub inertia_rate: f64,
    /// V = −U; scale reference for the virial residual.
    pub potential_v: f64,
}

impl PhaseState {
    pub fn new(config: Configuration, velocities: DVector<f64>) -> Result<Self> {
        if velocities.len() != config.positions().len() {
            return Err(GeometryError::invalid("velocity count must match body count"));
        }
        if velocities.iter().any(|v| !v.is_finite()) {
            return Err(GeometryError::invalid("velocities must be finite"));
        }
        Ok(PhaseState { config, velocities })
    }

    pub fn config(&self) -> &Configuration {
        &self.config
    }

    pub fn velocities(&self) -> &DVector<f64> {
        &self.velocities
    }

    pub fn monitors(&self) -> Result<Monitors> {
        let u = potential(&self.config)?;
        Ok(monitors_from_parts(
            self.config.masses(),
            self.config.positions(),
            &self.velocities,
            u,
        ))
    }
}

fn monitors_from_parts(
    masses: &[f64],
    q: &DVector<f64>,
    v: &DVector<f64>,
    u: f64,
) -> Monitors {
    let mut kinetic = 0.0;
    let mut j = 0.0;
    let mut inertia = 0.0;
    let mut rate = 0.0;
    for (k, m) in masses.iter().enumerate() {
        let (x, y) = (q[2 * k], q[2 * k + 1]);
        let (vx, vy) = (v[2 * k], v[2 * k + 1]);
        kinetic += m * (vx * vx + vy * vy) / 2.0;
        j += m * (x * vy - y * vx);
        inertia += m * (x * x + y * y);
        rate += 2.0 * m * (x * vx + y * vy);
    }
    Monitors {
        energy: kinetic - u,
        angular_momentum: j,
        inertia,
        inertia_rate: rate,
        potential_v: -u,
    }
}

/// Newton field: position derivative = velocities, velocity derivative of
/// body k = (∇U)_k / m_k (the 1/r² force is attractive with force = +∇U).
pub fn newton_rhs(state: &PhaseState) -> Result<(DVector<f64>, DVector<f64>)> {
    let bundle = potential_derivatives(state.config())?;
    let mut acc = bundle.gradient;
    for (k, m) in state.config().masses().iter().enumerate() {
        acc[2 * k] /= m;
        acc[2 * k + 1] /= m;
    }
    Ok((state.velocities().clone(), acc))
}

/// Why an integration ended.
#[derive(Debug)]
pub enum IntegrationOutcome {
    Completed,
    /// Stopped early: the state came within 10× collision tolerance of a
    /// collision, or the closest pair moved more than a tenth of its
    /// separation in one step so the encounter is no longer resolved
    /// (partial trajectory retained in both cases).
    Truncated { time: f64, error: GeometryError },
}

fn encounter_guard(cfg: &Configuration, speeds: &DVector<f64>, dt: f64) -> Result<()> {
    let (i, j, dist) = cfg.min_separation();
    let v_max = (0..cfg.n_bodies())
        .map(|k| (speeds[2 * k].powi(2) + speeds[2 * k + 1].powi(2)).sqrt())
        .fold(0.0, f64::max);
    let near = (tol::TRAJECTORY_COLLISION_FACTOR * cfg.collision_tolerance())
        .max(tol::TRAJECTORY_COLLISION_FACTOR * dt * v_max);
    if !dist.is_finite() || dist < near {
        return Err(GeometryError::Collision { i, j, dist, tol: near });
    }
    Ok(())
}

impl IntegrationOutcome {
    pub fn is_completed(&self) -> bool {
        matches!(self, IntegrationOutcome::Completed)
    }
}

/// Fixed-step trajectory of the ambient Newton flow. States are flat vectors
/// [positions; velocities].
#[derive(Debug)]
pub struct NewtonTrajectory {
    pub masses: Vec<f64>,
    pub dt: f64,
    pub times: Vec<f64>,
    pub states: Vec<DVector<f64>>,
    pub outcome: IntegrationOutcome,
}

fn rk4_step<F>(f: &F, y: &DVector<f64>, dt: f64) -> Result<DVector<f64>>
where
    F: Fn(&DVector<f64>) -> Result<DVector<f64>>,
{
    let k1 = f(y)?;
    let k2 = f(&(y + &k1 * (dt / 2.0)))?;
    let k3 = f(&(y + &k2 * (dt / 2.0)))?;
    let k4 = f(&(y + &k3 * dt))?;
    Ok(y + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (dt / 6.0))
}

fn step_count(t_end: f64, dt: f64) -> Result<usize> {
    if !(t_end > 0.0 && t_end.is_finite() && dt > 0.0 && dt.is_finite()) {
        return Err(GeometryError::invalid("t_end and dt must be positive and finite"));
    }
    let steps = (t_end / dt).round();
    if steps < 1.0 || steps > 5e7 {
        return Err(GeometryError::invalid("step count out of range"));
    }
    Ok(steps as usize)
}

/// Classical fixed-step RK4 of the Newton field. A near-collision state
/// (minimum separation below 10× collision tolerance) stops the run with a
/// truncated outcome and the partial trajectory retained.
pub fn integrate_newton(initial: &PhaseState, t_end: f64, dt: f64) -> Result<NewtonTrajectory> {
    let steps = step_count(t_end, dt)?;
    let masses = initial.config().masses().to_vec();
    let two_n = initial.config().positions().len();

    let guard = |y: &DVector<f64>| -> Result<()> {
        let cfg = Configuration::new(masses.clone(), y.rows(0, two_n).into_owned())?;
        encounter_guard(&cfg, &y.rows(two_n, two_n).into_owned(), dt)
    };
    let rhs = {
        let masses = masses.clone();
        move |y: &DVector<f64>| -> Result<DVector<f64>> {
            let state = PhaseState::new(
                Configuration::new(masses.clone(), y.rows(0, two_n).into_owned())?,
                y.rows(two_n, two_n).into_owned(),
            )?;
            let (dq, dv) = newton_rhs(&state)?;
            let mut out = DVector::zeros(2 * two_n);
            out.rows_mut(0, two_n).copy_from(&dq);
            out.rows_mut(two_n, two_n).copy_from(&dv);
            Ok(out)
        }
    };

    let mut y = DVector::zeros(2 * two_n);
    y.rows_mut(0, two_n).copy_from(initial.config().positions());
    y.rows_mut(two_n, two_n).copy_from(initial.velocities());
    guard(&y)?;

    let mut times = Vec::with_capacity(steps + 1);
    let mut states = Vec::with_capacity(steps + 1);
    times.push(0.0);
    states.push(y.clone());
    let mut outcome = IntegrationOutcome::Completed;
    for k in 0..steps {
        let t_next = (k + 1) as f64 * dt;
        match rk4_step(&rhs, &y, dt).and_then(|next| {
            guard(&next)?;
            Ok(next)
        }) {
            Ok(next) => {
                y = next;
                times.push(t_next);
                states.push(y.clone());
            }
            Err(error) => {
                outcome = IntegrationOutcome::Truncated { time: t_next, error };
                break;
            }
        }
    }
    Ok(NewtonTrajectory { masses, dt, times, states, outcome })
}

impl NewtonTrajectory {
    pub fn n_bodies(&self) -> usize {
        self.masses.len()
    }

    pub fn positions(&self, k: usize) -> DVector<f64> {
        let two_n = 2 * self.n_bodies();
        self.states[k].rows(0, two_n).into_owned()
    }

    pub fn velocities(&self, k: usize) -> DVector<f64> {
        let two_n = 2 * self.n_bodies();
        self.states[k].rows(two_n, two_n).into_owned()
    }

    /// Per-step conservation monitors.
    pub fn monitors(&self) -> Result<Vec<Monitors>> {
        let two_n = 2 * self.n_bodies();
        self.states
            .iter()
            .map(|y| {
                let pos = y.rows(0, two_n).into_owned();
                let vel = y.rows(two_n, two_n).into_owned();
                let cfg = Configuration::new(self.masses.clone(), pos)?;
                let u = potential(&cfg)?;
                Ok(monitors_from_parts(&self.masses, cfg.positions(), &vel, u))
            })
            .collect()
    }
}

/// Lagrange–Jacobi residual Ï − 4H per interior sample, with Ï estimated by
/// the central second difference of the inertia series. Endpoints carry None.
pub fn virial_residuals(monitors: &[Monitors], dt: f64) -> Vec<Option<f64>> {
    let n = monitors.len();
    (0..n)
        .map(|k| {
            if k == 0 || k + 1 == n {
                return None;
            }
            let idd = (monitors[k + 1].inertia - 2.0 * monitors[k].inertia
                + monitors[k - 1].inertia)
                / (dt * dt);
            Some(idd - 4.0 * monitors[k].energy)
        })
        .collect()
}

/// Fixed-step trajectory of the JM geodesic flow in reduced coordinates.
/// States are flat vectors [point; velocity].
#[derive(Debug)]
pub struct JmTrajectory {
    pub n_bodies: usize,
    pub dt: f64,
    pub times: Vec<f64>,
    pub states: Vec<DVector<f64>>,
    pub outcome: IntegrationOutcome,
}

/// Per-step monitors of the geodesic flow.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JmMonitors {
    /// U_L|ẋ|², the squared JM speed; constant along geodesics.
    pub jm_speed: f64,
    pub u_l: f64,
    /// max(|⟨ẋ,x⟩|, |⟨ẋ,ix⟩|)/(‖ẋ‖‖x‖); horizontal data keeps it at zero.
    pub horizontality: f64,
}

/// Geodesic equation of the conformal metric e^{2u}δ with u = ½ log U_L:
/// ẍ = −2(du·ẋ)ẋ + |ẋ|²·∇u.
pub fn integrate_jm_geodesic(
    p0: &ReducedPoint,
    v0: &DVector<f64>,
    t_end: f64,
    dt: f64,
) -> Result<JmTrajectory> {
    let steps = step_count(t_end, dt)?;
    if v0.len() != p0.coords().len() {
        return Err(GeometryError::invalid("velocity dimension must match the point"));
    }
    if v0.norm() == 0.0 {
        return Err(GeometryError::invalid("geodesic velocity must be nonzero"));
    }
    let n = p0.n_bodies();
    let rp = ReducedPotential::new(n)?;
    let dim = p0.coords().len();

    let guard = |y: &DVector<f64>| -> Result<()> {
        let cfg = rp.embedding().configuration(&y.rows(0, dim).into_owned())?;
        // the embedding is isometric, so reduced velocities bound body speeds
        let vel = rp.embedding().embed(&y.rows(dim, dim).into_owned());
        encounter_guard(&cfg, &vel, dt)
    };
    let rhs = |y: &DVector<f64>| -> Result<DVector<f64>> {
        let pos = y.rows(0, dim).into_owned();
        let vel = y.rows(dim, dim).into_owned();
        let bundle = rp.bundle(&pos)?;
        let du = bundle.reduced_gradient / (2.0 * bundle.value);
        let acc = &vel * (-2.0 * du.dot(&vel)) + &du * vel.norm_squared();
        let mut out = DVector::zeros(2 * dim);
        out.rows_mut(0, dim).copy_from(&vel);
        out.rows_mut(dim, dim).copy_from(&acc);
        Ok(out)
    };

    let mut y = DVector::zeros(2 * dim);
    y.rows_mut(0, dim).copy_from(p0.coords());
    y.rows_mut(dim, dim).copy_from(v0);
    guard(&y)?;

    let mut times = Vec::with_capacity(steps + 1);
    let mut states = Vec::with_capacity(steps + 1);
    times.push(0.0);
    states.push(y.clone());
    let mut outcome = IntegrationOutcome::Completed;
    for k in 0..steps {
        let t_next = (k + 1) as f64 * dt;
        match rk4_step(&rhs, &y, dt).and_then(|next| {
            guard(&next)?;
            Ok(next)
        }) {
            Ok(next) => {
                y = next;
                times.push(t_next);
                states.push(y.clone());
            }
            Err(error) => {
                outcome = IntegrationOutcome::Truncated { time: t_next, error };
                break;
            }
        }
    }
    Ok(JmTrajectory { n_bodies: n, dt, times, states, outcome })
}

impl JmTrajectory {
    pub fn point(&self, k: usize) -> DVector<f64> {
        let dim = self.states[k].len() / 2;
        self.states[k].rows(0, dim).into_owned()
    }

    pub fn velocity(&self, k: usize) -> DVector<f64> {
        let dim = self.states[k].len() / 2;
        self.states[k].rows(dim, dim).into_owned()
    }

    pub fn monitors(&self) -> Result<Vec<JmMonitors>> {
        let rp = ReducedPotential::new(self.n_bodies)?;
        self.states
            .iter()
            .map(|y| {
                let dim = y.len() / 2;
                let pos = y.rows(0, dim).into_owned();
                let vel = y.rows(dim, dim).into_owned();
                let u_l = rp.value(&pos)?;
                let scale = vel.norm() * pos.norm();
                let horizontality = if scale == 0.0 {
                    0.0
                } else {
                    let radial = vel.dot(&pos).abs();
                    let angular = vel.dot(&mul_i(&pos)).abs();
                    radial.max(angular) / scale
                };
                Ok(JmMonitors { jm_speed: u_l * vel.norm_squared(), u_l, horizontality })
            })
            .collect()
    }
}

/// Matched zero-energy initial data: the Newton run starts at q0 = L·p0 with
/// q̇0 = √(2U(q0))·L·v0, which makes H = 0 exactly, and J = İ = 0 because v0
/// is horizontal; the geodesic starts at (p0, v0) directly.
pub fn matched_initial_data(p0: &ReducedPoint, v0: &DVector<f64>) -> Result<PhaseState> {
    let radial = v0.dot(p0.coords()).abs();
    let angular = v0.dot(&mul_i(p0.coords())).abs();
    if radial.max(angular) > tol::FRAME_TOL * p0.norm() * v0.norm() {
        return Err(GeometryError::frame("matched data needs a horizontal direction"));
    }
    let emb = ComEmbedding::new(p0.n_bodies())?;
    let cfg = emb.configuration(p0.coords())?;
    let u = potential(&cfg)?;
    let qdot = emb.embed(v0) * (2.0 * u).sqrt() / v0.norm();
    PhaseState::new(cfg, qdot)
}

/// The reference zero-energy data for the Newton/JM equivalence run: the
/// collinear chart φ=0.3, θ=π/2 with direction v₁, scaled by √20. Unit-scale
/// charts pass near a collision within t=1; the scaling (which the H=0 flow
/// commutes with) keeps the minimum pair distance near 1.87.
pub fn collinear_zero_energy_data() -> Result<(ReducedPoint, DVector<f64>)> {
    let chart = crate::shape::CollinearChart::new(0.3, std::f64::consts::FRAC_PI_2);
    let pair = chart.normal_plane()?;
    let p0 = ReducedPoint::new(pair.base().coords() * 20f64.sqrt())?;
    Ok((p0, pair.v1().clone()))
}

/// Shape trace of a trajectory: unit-norm reduced representatives with the
/// cumulative JM arclength ∫√U_L‖hor ẋ‖ dt (trapezoid rule).
#[derive(Debug, Clone)]
pub struct ShapeTrace {
    points: Vec<DVector<f64>>,
    arclengths: Vec<f64>,
}

impl ShapeTrace {
    fn build(
        n: usize,
        dt: f64,
        samples: impl Iterator<Item = (DVector<f64>, DVector<f64>)>,
    ) -> Result<ShapeTrace> {
        let rp = ReducedPotential::new(n)?;
        let mut points = Vec::new();
        let mut arclengths = Vec::new();
        let mut prev_speed = None;
        for (pos, vel) in samples {
            let u_l = rp.value(&pos)?;
            let pt = ReducedPoint::new(pos)?;
            let speed = u_l.sqrt() * horizontal_project(&pt, &vel).norm();
            let total = match (arclengths.last(), prev_speed) {
                (Some(&s), Some(p)) => s + 0.5 * (speed + p) * dt,
                _ => 0.0,
            };
            arclengths.push(total);
            prev_speed = Some(speed);
            points.push(pt.coords() / pt.norm());
        }
        if points.len() < 2 {
            return Err(GeometryError::invalid("trace needs at least two samples"));
        }
        Ok(ShapeTrace { points, arclengths })
    }

    pub fn from_newton(traj: &NewtonTrajectory) -> Result<ShapeTrace> {
        let emb = ComEmbedding::new(traj.n_bodies())?;
        ShapeTrace::build(
            traj.n_bodies(),
            traj.dt,
            (0..traj.states.len())
                .map(|k| (emb.reduce(&traj.positions(k)), emb.reduce(&traj.velocities(k)))),
        )
    }

    pub fn from_jm(traj: &JmTrajectory) -> Result<ShapeTrace> {
        ShapeTrace::build(
            traj.n_bodies,
            traj.dt,
            (0..traj.states.len()).map(|k| (traj.point(k), traj.velocity(k))),
        )
    }

    pub fn total_arclength(&self) -> f64 {
        *self.arclengths.last().unwrap()
    }

    /// Representatives at the requested arclengths: phase-align the bracketing
    /// samples (multiply the right one into the left one's ℂ*-fiber), lerp,
    /// renormalize.
    pub fn resample(&self, targets: &[f64]) -> Vec<DVector<f64>> {
        let ss = &self.arclengths;
        let mut out = Vec::with_capacity(targets.len());
        let mut k = 0;
        for &s in targets {
            while k + 2 < ss.len() && ss[k + 1] < s {
                k += 1;
            }
            let denom = ss[k + 1] - ss[k];
            let t = if denom > 0.0 { (s - ss[k]) / denom } else { 0.0 };
            let a = &self.points[k];
            let b = &self.points[k + 1];
            let (zr, zi) = herm(b, a);
            let zn = (zr * zr + zi * zi).sqrt();
            let aligned = if zn > 0.0 { rotate(b, zr / zn, zi / zn) } else { b.clone() };
            let mut c = a * (1.0 - t) + aligned * t;
            let norm = c.norm();
            if norm > 0.0 {
                c /= norm;
            }
            out.push(c);
        }
        out
    }
}

/// Fubini–Study distance between shapes given by any representatives.
pub fn fubini_study_distance(a: &DVector<f64>, b: &DVector<f64>) -> f64 {
    let c = herm_abs(a, b) / (a.norm() * b.norm());
    c.min(1.0).acos()
}

/// Symmetric Hausdorff distance between two traces, both resampled at the
/// same `samples` arclengths across the common range. Identical resampling
/// points make the result measure trajectory disagreement rather than grid
/// gaps.
pub fn trace_hausdorff(a: &ShapeTrace, b: &ShapeTrace, samples: usize) -> Result<f64> {
    if samples < 2 {
        return Err(GeometryError::invalid("need at least two resample points"));
    }
    let smax = a.total_arclength().min(b.total_arclength()) * (1.0 - 1e-9);
    if !(smax > 0.0) {
        return Err(GeometryError::invalid("traces have no common arclength range"));
    }
    let targets: Vec<f64> =
        (0..samples).map(|i| smax * i as f64 / (samples - 1) as f64).collect();
    let pa = a.resample(&targets);
    let pb = b.resample(&targets);
    let directed = |from: &[DVector<f64>], to: &[DVector<f64>]| {
        from.iter()
            .map(|x| {
                to.iter()
                    .map(|y| fubini_study_distance(x, y))
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0.0, f64::max)
    };
    Ok(directed(&pa, &pb).max(directed(&pb, &pa)))
}
