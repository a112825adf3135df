//! Sectional curvature of the quotient Jacobi-Maupertuis metric.
//!
//! For a horizontal orthonormal pair (v₁, v₂) at p the curvature through the
//! projected plane satisfies
//!
//!   U_L³ K = (3/4)((∂₁U_L)² + (∂₂U_L)²) - |∇U/2|²
//!            - (U_L/2)(∂₁²U_L + ∂₂²U_L) + 3 (U_L²/|p|²)(v₁·iv₂)²,
//!
//! the first three terms being the conformal (Kazdan-Warner type) curvature of
//! U_L ds² in the ambient reduced space and the last the O'Neill correction of
//! the submersion, which is nonnegative and vanishes exactly when the plane is
//! i-null (v₁·iv₂ = 0).
//!
//! Along collinear four-body shapes at θ = π/2 with the normal plane the first
//! and last terms vanish and everything collapses to signed inverse mutual
//! distances ρ_jk = 1/(x_j - x_k): positivity of K becomes the inequality
//! lhs = Σ_k (Σ_{j≠k} ρ_jk³)² < (Σ ρ_jk²)(Σ α_jk ρ_jk⁴) = rhs.

use crate::error::GeometryError;
use crate::nbody::{directional_from_bundle, ReducedPotential};
use crate::realified::mul_i;
use crate::shape::{horizontal_frame, CollinearChart, ReducedPoint, TangentPair};
use crate::Result;

use std::f64::consts::FRAC_PI_2;

/// Curvature of a plane together with the four summands of U_L³ K, exposed so
/// every cross-check can see which mechanism produced the sign.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvatureBreakdown {
    pub k: f64,
    pub u_l: f64,
    /// (3/4)((∂₁U_L)² + (∂₂U_L)²); zero along collinear shapes for i(real) frames.
    pub term_first_partials: f64,
    /// -|∇U/2|²; never positive.
    pub term_grad_norm: f64,
    /// -(U_L/2)(∂₁²U_L + ∂₂²U_L).
    pub term_laplacian: f64,
    /// 3 (U_L²/|p|²)(v₁·iv₂)²; never negative.
    pub term_oneill: f64,
}

impl CurvatureBreakdown {
    /// Sum of the four terms, i.e. U_L³ K.
    pub fn u_l_cubed_k(&self) -> f64 {
        self.term_first_partials + self.term_grad_norm + self.term_laplacian + self.term_oneill
    }
}

/// Sectional curvature through the plane of `pair`.
pub fn sectional_curvature(pair: &TangentPair) -> Result<CurvatureBreakdown> {
    let p = pair.base();
    let rp = ReducedPotential::new(p.n_bodies())?;
    let bundle = rp.bundle(p.coords())?;
    let emb = rp.embedding();

    let u_l = bundle.value;
    let (d1, dd1) = directional_from_bundle(emb, &bundle, pair.v1());
    let (d2, dd2) = directional_from_bundle(emb, &bundle, pair.v2());
    let grad_half_sq = bundle.ambient_gradient.norm_squared() / 4.0;
    let twist = pair.v1().dot(&mul_i(pair.v2()));

    let term_first_partials = 0.75 * (d1 * d1 + d2 * d2);
    let term_grad_norm = -grad_half_sq;
    let term_laplacian = -(u_l / 2.0) * (dd1 + dd2);
    let term_oneill = 3.0 * u_l * u_l / p.norm().powi(2) * twist * twist;

    let breakdown = CurvatureBreakdown {
        k: (term_first_partials + term_grad_norm + term_laplacian + term_oneill)
            / (u_l * u_l * u_l),
        u_l,
        term_first_partials,
        term_grad_norm,
        term_laplacian,
        term_oneill,
    };
    Ok(breakdown)
}

/// The conformal block alone: curvature of the ambient metric U_L ds² through
/// the same plane, before the O'Neill correction.
pub fn kn_block(pair: &TangentPair) -> Result<f64> {
    let b = sectional_curvature(pair)?;
    Ok((b.term_first_partials + b.term_grad_norm + b.term_laplacian) / (b.u_l * b.u_l * b.u_l))
}

/// The unnormalized O'Neill summand 3 U_L² (v₁·iv₂)² / |p|².
pub fn oneill_term(pair: &TangentPair) -> Result<f64> {
    Ok(sectional_curvature(pair)?.term_oneill)
}

/// Signed inverse mutual distances ρ_jk = 1/(x_j - x_k) of the collinear
/// four-body chart at θ = π/2, with the frame weights
/// α_jk = (v₁ʲ - v₁ᵏ)² + (v₂ʲ - v₂ᵏ)² of the normal plane.
///
/// Pair order throughout: (1,2), (3,4), (1,3), (1,4), (2,4), (2,3).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RhoAlphaTable {
    pub phi: f64,
    pub rho: [f64; 6],
    pub alpha: [f64; 6],
}

pub const PAIR_ORDER: [(usize, usize); 6] = [(0, 1), (2, 3), (0, 2), (0, 3), (1, 3), (1, 2)];

/// Build the ρ/α table at the chart angle φ (θ = π/2). The ρ come from the
/// embedded positions, the α from the embedded normal-plane frame; the closed
/// forms (ρ₁₂ = 1/(√2 cos φ), α₁₂ = 1/ρ₃₄², α₁₃ = 1/ρ₁₄² + 1, ...) are what
/// the tests pin against this construction.
pub fn collinear_rho_alpha(phi: f64) -> Result<RhoAlphaTable> {
    let chart = CollinearChart::new(phi, FRAC_PI_2);
    let pair = chart.normal_plane()?;
    let rp = ReducedPotential::new(4)?;
    let emb = rp.embedding();

    let q = emb.embed(chart.point()?.coords());
    let lv1 = emb.embed(pair.v1());
    let lv2 = emb.embed(pair.v2());
    // collinear positions are real; i(real) frame vectors are purely imaginary
    let x = |k: usize| q[2 * k];
    let w1 = |k: usize| lv1[2 * k + 1];
    let w2 = |k: usize| lv2[2 * k + 1];

    let mut rho = [0.0; 6];
    let mut alpha = [0.0; 6];
    for (slot, &(j, k)) in PAIR_ORDER.iter().enumerate() {
        rho[slot] = 1.0 / (x(j) - x(k));
        alpha[slot] = (w1(j) - w1(k)).powi(2) + (w2(j) - w2(k)).powi(2);
    }
    Ok(RhoAlphaTable { phi, rho, alpha })
}

/// Both sides of the collinear positivity inequality, each computed two ways:
/// directly from the ρ/α table and through the trigonometric rearrangements
/// (they must agree; the tests enforce it).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InequalitySides {
    /// Σ_k (Σ_{j≠k} ρ_jk³)² = |∇U/2|² at the chart point.
    pub lhs: f64,
    /// (Σ ρ_jk²)(Σ α_jk ρ_jk⁴) = U_L Σ α_jk ρ_jk⁴.
    pub rhs: f64,
    /// 2 Σ ρ⁶ - 96/(sin² 2φ cos² 2φ).
    pub lhs_rearranged: f64,
    /// 2 Σ ρ⁶ + cot² 2φ (ρ₁₃⁶ + ρ₁₄⁶) + 8 tan² 2φ (ρ₁₂⁶ + ρ₃₄⁶)
    ///   + (ρ₁₃⁴ + ρ₁₄⁴)(4/sin² 2φ + 16/cos² 2φ).
    pub rhs_rearranged: f64,
}

pub fn inequality_sides(phi: f64) -> Result<InequalitySides> {
    let t = collinear_rho_alpha(phi)?;
    let [r12, r34, r13, r14, r24, r23] = t.rho;

    // row sums of the gradient: rows 1/2 and rows 3/4 coincide up to sign
    let row1 = r12.powi(3) + r13.powi(3) + r14.powi(3);
    let row3 = r13.powi(3) - r14.powi(3) - r34.powi(3);
    let lhs = 2.0 * (row1 * row1 + row3 * row3);

    let sum_r2: f64 = t.rho.iter().map(|r| r * r).sum();
    let sum_ar4: f64 =
        t.rho.iter().zip(t.alpha.iter()).map(|(r, a)| a * r.powi(4)).sum();
    let rhs = sum_r2 * sum_ar4;

    let sum_r6: f64 = t.rho.iter().map(|r| r.powi(6)).sum();
    let (s2, c2) = ((2.0 * phi).sin(), (2.0 * phi).cos());
    let lhs_rearranged = 2.0 * sum_r6 - 96.0 / (s2 * s2 * c2 * c2);
    let rhs_rearranged = 2.0 * sum_r6
        + (c2 / s2).powi(2) * (r13.powi(6) + r14.powi(6))
        + 8.0 * (s2 / c2).powi(2) * (r12.powi(6) + r34.powi(6))
        + (r13.powi(4) + r14.powi(4)) * (4.0 / (s2 * s2) + 16.0 / (c2 * c2));

    // r24/r23 enter lhs/rhs through the even-power sums; keep them named
    let _ = (r24, r23);
    Ok(InequalitySides { lhs, rhs, lhs_rearranged, rhs_rearranged })
}

/// Normal-plane curvature along the collinear circle via the ρ/α path:
/// first-partials and O'Neill terms vanish identically, the gradient term is
/// -lhs, the Laplacian term is rhs, so U_L³ K = rhs - lhs. Cross-validates
/// the generic formula, which reaches the same number through gradients and
/// Hessians instead of mutual distances.
pub fn collinear_normal_curvature(phi: f64) -> Result<CurvatureBreakdown> {
    let sides = inequality_sides(phi)?;
    let t = collinear_rho_alpha(phi)?;
    let u_l: f64 = t.rho.iter().map(|r| r * r).sum();
    Ok(CurvatureBreakdown {
        k: (sides.rhs - sides.lhs) / u_l.powi(3),
        u_l,
        term_first_partials: 0.0,
        term_grad_norm: -sides.lhs,
        term_laplacian: sides.rhs,
        term_oneill: 0.0,
    })
}

/// Gaussian curvature of the three-body shape sphere at p: the horizontal
/// space is exactly 2-dimensional, so the sectional curvature of its only
/// plane is the Gaussian curvature. Nonpositive everywhere, zero only at the
/// two equilateral shapes.
pub fn pants_curvature(p: &ReducedPoint) -> Result<CurvatureBreakdown> {
    if p.n_bodies() != 3 {
        return Err(GeometryError::invalid("pants curvature is defined for three bodies"));
    }
    let frame = horizontal_frame(p);
    debug_assert_eq!(frame.len(), 2);
    let pair = TangentPair::new(p.clone(), frame[0].clone(), frame[1].clone())?;
    sectional_curvature(&pair)
}
