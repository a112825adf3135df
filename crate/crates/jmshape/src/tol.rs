//! Centralized numeric tolerances. Never inline these at call sites; the
//! cross-validation suites reference the same constants the implementation
//! enforces.

/// Relative collision tolerance: a pair is "in collision" when its distance
/// falls below `COLLISION_REL * (1 + |q|)`.
pub const COLLISION_REL: f64 = 1e-9;

/// Trajectories stop (tagged truncated) when a pair comes within this multiple
/// of the collision tolerance.
pub const TRAJECTORY_COLLISION_FACTOR: f64 = 10.0;

/// Orthonormality and horizontality of tangent frames, checked at
/// construction.
pub const FRAME_TOL: f64 = 1e-10;

/// Gram-Schmidt over projected basis vectors skips residuals below this norm.
pub const FRAME_SKIP_TOL: f64 = 1e-8;

/// Planes with a metric Gram determinant below this are rejected as
/// ill-conditioned by the finite-difference sectional routine.
pub const GRAM_DET_MIN: f64 = 1e-8;

/// Default relative step for finite differences of the potential
/// (first and second derivatives): eps^(1/3), scaled by (1 + |q|).
pub fn fd_potential_step(scale: f64) -> f64 {
    f64::EPSILON.cbrt() * (1.0 + scale)
}

/// Default coordinate step for finite differences of chart metrics. The
/// metric itself is evaluated in closed form, so round-off stays near
/// eps/h² ~ 1e-9 and the budget goes to truncation: worst measured error on
/// margin-0.15 samples is 1.5e-3 at h = 1e-3 and falls fourfold per halving.
pub const FD_METRIC_STEP: f64 = 5e-4;

/// A scan grid angle counts as the submersion axis θ = π/2 (enabling the
/// collinear ρ/α closed forms) within this tolerance.
pub const THETA_AXIS_TOL: f64 = 1e-12;
