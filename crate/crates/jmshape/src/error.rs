use thiserror::Error;

/// Errors surfaced by the geometry pipeline.
///
/// Collisions are reported, never clamped: every quantity here diverges on the
/// collision set and a silently regularized value would poison the curvature
/// cross-checks downstream.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    /// Two bodies are closer than the collision tolerance.
    #[error("bodies {i} and {j} are {dist:.3e} apart, below the collision tolerance {tol:.3e}")]
    Collision { i: usize, j: usize, dist: f64, tol: f64 },

    /// A reduced point must be nonzero to have a shape.
    #[error("reduced point has zero norm; the shape is undefined at the total collision")]
    ZeroPoint,

    /// Tangent data failed the horizontality/orthonormality invariants.
    #[error("invalid tangent frame: {0}")]
    Frame(String),

    /// A plane or linear system is too degenerate to work with.
    #[error("ill-conditioned input: gram determinant {0:.3e}")]
    IllConditioned(f64),

    /// Malformed dimensions, non-finite entries, unsupported body counts.
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl GeometryError {
    pub fn invalid(msg: impl Into<String>) -> Self {
        GeometryError::InvalidInput(msg.into())
    }

    pub fn frame(msg: impl Into<String>) -> Self {
        GeometryError::Frame(msg.into())
    }

    /// True for errors that indicate a domain exclusion (collision set) rather
    /// than a caller mistake.
    pub fn is_collision(&self) -> bool {
        matches!(self, GeometryError::Collision { .. })
    }
}
