//! Geometry of the planar N-body problem with the strong-force potential
//! U = Σ m_i m_j / r_ij², quotiented to shape space.
//!
//! At zero energy the flow is, up to reparameterization, the geodesic flow of
//! the Jacobi-Maupertuis metric U ds². Translations are removed by an isometric
//! embedding of ℂ^{N-1} onto the center-of-mass-zero subspace; rotations and
//! dilations (the ℂ* action) are removed by a Riemannian submersion. This crate
//! computes the sectional curvature of the quotient metric in closed form,
//! cross-validates it against finite-difference oracles that know nothing about
//! the closed form, and integrates both the Newtonian flow and the reduced
//! geodesic flow.
//!
//! Everything is realified: a complex m-vector is stored as 2m interleaved
//! (re, im) reals, and multiplication by i is an explicit linear map.

pub mod curvature;
pub mod dynamics;
pub mod error;
pub mod nbody;
pub mod oracle;
pub mod realified;
pub mod sampling;
pub mod scan;
pub mod shape;
pub mod tol;
pub mod verify;

pub use error::GeometryError;

/// Result alias used across the crate.
pub type Result<T> = std::result::Result<T, GeometryError>;
