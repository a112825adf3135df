//! Shape space plumbing: the ℂ* submersion structure on reduced configuration
//! space. The vertical space at p is the realified complex line ℂp (rotations
//! and dilations); the horizontal space is its orthogonal complement, of real
//! dimension 2n - 4.

use nalgebra::DVector;

use crate::error::GeometryError;
use crate::nbody::ComEmbedding;
use crate::realified::{self, mul_i};
use crate::tol;
use crate::Result;

/// Nonzero point of ℂ^{n-1}, realified. Represents a shape up to the ℂ*
/// action; all curvature outputs are invariant under p ↦ λ e^{iθ} p.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedPoint {
    coords: DVector<f64>,
}

impl ReducedPoint {
    pub fn new(coords: DVector<f64>) -> Result<Self> {
        if coords.len() < 4 || coords.len() % 2 != 0 {
            return Err(GeometryError::invalid(
                "reduced coordinates must have even length 2(n-1) with n >= 3",
            ));
        }
        if coords.iter().any(|x| !x.is_finite()) {
            return Err(GeometryError::invalid("reduced coordinates must be finite"));
        }
        if coords.norm() == 0.0 {
            return Err(GeometryError::ZeroPoint);
        }
        Ok(ReducedPoint { coords })
    }

    pub fn from_pairs(pairs: &[(f64, f64)]) -> Result<Self> {
        ReducedPoint::new(realified::from_pairs(pairs))
    }

    pub fn n_bodies(&self) -> usize {
        self.coords.len() / 2 + 1
    }

    pub fn coords(&self) -> &DVector<f64> {
        &self.coords
    }

    pub fn norm(&self) -> f64 {
        self.coords.norm()
    }
}

/// Orthonormal basis of the vertical plane: (p, ip)/|p|.
pub fn vertical_frame(p: &ReducedPoint) -> [DVector<f64>; 2] {
    let n = p.norm();
    [p.coords() / n, mul_i(p.coords()) / n]
}

/// Project `w` onto the horizontal space at `p` (remove the ℂp components).
pub fn horizontal_project(p: &ReducedPoint, w: &DVector<f64>) -> DVector<f64> {
    let [e, ie] = vertical_frame(p);
    let mut out = w.clone();
    out.axpy(-w.dot(&e), &e, 1.0);
    out.axpy(-w.dot(&ie), &ie, 1.0);
    out
}

/// Deterministic orthonormal basis of the horizontal space: Gram-Schmidt over
/// the horizontal projections of the realified standard basis, in index order,
/// skipping residuals with norm below `tol::FRAME_SKIP_TOL`.
pub fn horizontal_frame(p: &ReducedPoint) -> Vec<DVector<f64>> {
    let dim = p.coords().len();
    let target = dim - 2;
    let mut frame: Vec<DVector<f64>> = Vec::with_capacity(target);
    for k in 0..dim {
        if frame.len() == target {
            break;
        }
        let mut e = DVector::zeros(dim);
        e[k] = 1.0;
        let mut w = horizontal_project(p, &e);
        w = realified::project_out(&w, &frame);
        let norm = w.norm();
        if norm < tol::FRAME_SKIP_TOL {
            continue;
        }
        frame.push(w / norm);
    }
    frame
}

/// An orthonormal pair of horizontal tangent vectors at a reduced point,
/// spanning the 2-plane whose sectional curvature is being asked for.
///
/// Construction accepts any two spanning vectors of a horizontal plane and
/// orthonormalizes them (Gram-Schmidt, first vector first): the curvature
/// formula needs orthonormal inputs and sectional curvature depends only on
/// the plane. Vectors that are not horizontal are rejected rather than
/// silently projected, since projection would change the requested plane.
#[derive(Debug, Clone)]
pub struct TangentPair {
    base: ReducedPoint,
    v1: DVector<f64>,
    v2: DVector<f64>,
}

impl TangentPair {
    pub fn new(base: ReducedPoint, w1: DVector<f64>, w2: DVector<f64>) -> Result<Self> {
        let dim = base.coords().len();
        if w1.len() != dim || w2.len() != dim {
            return Err(GeometryError::invalid("tangent vectors must match the base dimension"));
        }
        let n1 = w1.norm();
        if n1 == 0.0 {
            return Err(GeometryError::frame("first spanning vector is zero"));
        }
        let v1 = w1 / n1;
        let mut v2 = w2;
        let c = v2.dot(&v1);
        v2.axpy(-c, &v1, 1.0);
        let n2 = v2.norm();
        if n2 < tol::FRAME_SKIP_TOL {
            return Err(GeometryError::frame("spanning vectors are collinear"));
        }
        v2 /= n2;
        for (label, v) in [("v1", &v1), ("v2", &v2)] {
            let [e, ie] = vertical_frame(&base);
            let (a, b) = (v.dot(&e), v.dot(&ie));
            if a.abs() > tol::FRAME_TOL || b.abs() > tol::FRAME_TOL {
                return Err(GeometryError::frame(format!(
                    "{label} is not horizontal (vertical components {a:.3e}, {b:.3e})"
                )));
            }
        }
        Ok(TangentPair { base, v1, v2 })
    }

    pub fn base(&self) -> &ReducedPoint {
        &self.base
    }

    pub fn v1(&self) -> &DVector<f64> {
        &self.v1
    }

    pub fn v2(&self) -> &DVector<f64> {
        &self.v2
    }
}

/// Collinear four-body chart: p(φ, θ) = (cos φ cos θ, cos φ sin θ, sin φ),
/// the real unit sphere inside ℂ³. Embedded positions are real, so the chart
/// sweeps collinear shapes; at θ = π/2 the bodies sit at ± cos φ/√2,
/// ± sin φ/√2 on the line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CollinearChart {
    pub phi: f64,
    pub theta: f64,
}

impl CollinearChart {
    pub fn new(phi: f64, theta: f64) -> Self {
        CollinearChart { phi, theta }
    }

    fn components(&self) -> [f64; 3] {
        [
            self.phi.cos() * self.theta.cos(),
            self.phi.cos() * self.theta.sin(),
            self.phi.sin(),
        ]
    }

    /// The chart point, collision-checked through the embedding. Collision
    /// angles (at θ = π/2: φ ∈ {0, ±π/4, π/2} mod π) are excluded here, not
    /// special-cased anywhere else.
    pub fn point(&self) -> Result<ReducedPoint> {
        let p = ReducedPoint::new(realified::from_real(&self.components()))?;
        let emb = ComEmbedding::new(4)?;
        emb.configuration(p.coords())?.ensure_collision_free()?;
        Ok(p)
    }

    /// Frame of the plane normal to the collinear locus:
    /// v₁ = i (sin φ cos θ, sin φ sin θ, -cos φ), v₂ = i (-sin θ, cos θ, 0).
    /// Both are horizontal, orthonormal, and satisfy v₁·(i v₂) = 0.
    pub fn normal_plane(&self) -> Result<TangentPair> {
        let point = self.point()?;
        let [c0, c1, _] = [self.theta.cos(), self.theta.sin(), 0.0];
        let v1 = mul_i(&realified::from_real(&[
            self.phi.sin() * c0,
            self.phi.sin() * c1,
            -self.phi.cos(),
        ]));
        let v2 = mul_i(&realified::from_real(&[-c1, c0, 0.0]));
        TangentPair::new(point, v1, v2)
    }

    /// Frame of the plane tangent to the collinear locus (the real 2-sphere
    /// directions themselves, not multiplied by i).
    pub fn tangent_plane(&self) -> Result<TangentPair> {
        let point = self.point()?;
        let u1 = realified::from_real(&[
            -self.phi.sin() * self.theta.cos(),
            -self.phi.sin() * self.theta.sin(),
            self.phi.cos(),
        ]);
        let u2 = realified::from_real(&[-self.theta.sin(), self.theta.cos(), 0.0]);
        TangentPair::new(point, u1, u2)
    }
}

/// Collinear three-body circle: p(φ) = (cos φ, sin φ) in ℂ², collision-checked.
pub fn collinear_point_three(phi: f64) -> Result<ReducedPoint> {
    let p = ReducedPoint::new(realified::from_real(&[phi.cos(), phi.sin()]))?;
    let emb = ComEmbedding::new(3)?;
    emb.configuration(p.coords())?.ensure_collision_free()?;
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_8};

    const EXACT: f64 = 1e-12;
    const FRAME_RESIDUAL: f64 = 1e-10;

    fn chart() -> CollinearChart {
        CollinearChart::new(FRAC_PI_8, FRAC_PI_2)
    }

    #[test]
    fn vertical_frame_of_axis_point() {
        let p = ReducedPoint::from_pairs(&[(2.0, 0.0), (0.0, 0.0), (0.0, 0.0)]).unwrap();
        let [e, ie] = vertical_frame(&p);
        assert_eq!(e[0], 1.0);
        assert_eq!(ie[1], 1.0);
        assert_eq!(e.norm(), 1.0);
    }

    #[test]
    fn horizontal_project_is_idempotent_and_kills_vertical() {
        let p = chart().point().unwrap();
        let w = realified::from_pairs(&[(0.3, -1.1), (0.7, 0.2), (-0.4, 0.9)]);
        let h = horizontal_project(&p, &w);
        let hh = horizontal_project(&p, &h);
        assert!((&hh - &h).norm() < EXACT);
        assert!(horizontal_project(&p, p.coords()).norm() < EXACT);
        assert!(horizontal_project(&p, &mul_i(p.coords())).norm() < EXACT);
        // recomposition: w = horizontal + vertical components
        let [e, ie] = vertical_frame(&p);
        let recomposed = &h + &e * w.dot(&e) + &ie * w.dot(&ie);
        assert!((recomposed - &w).norm() < EXACT);
    }

    #[test]
    fn horizontal_frame_is_orthonormal_and_i_closed() {
        for p in [
            chart().point().unwrap(),
            ReducedPoint::from_pairs(&[(0.3, -1.1), (0.7, 0.2), (-0.4, 0.9)]).unwrap(),
            collinear_point_three(0.4).unwrap(),
        ] {
            let frame = horizontal_frame(&p);
            assert_eq!(frame.len(), p.coords().len() - 2);
            for (a, fa) in frame.iter().enumerate() {
                for (b, fb) in frame.iter().enumerate() {
                    let want = if a == b { 1.0 } else { 0.0 };
                    assert!((fa.dot(fb) - want).abs() < FRAME_RESIDUAL);
                }
                // the horizontal space is i-invariant: i fa reprojects onto the frame
                let ifa = mul_i(fa);
                let residual = realified::project_out(&ifa, &frame);
                assert!(residual.norm() < FRAME_RESIDUAL);
            }
        }
    }

    #[test]
    fn chart_point_matches_closed_form_and_unit_norm() {
        let p = chart().point().unwrap();
        assert!((p.norm() - 1.0).abs() < EXACT);
        assert!((p.coords()[2] - FRAC_PI_8.cos()).abs() < EXACT);
        assert!((p.coords()[4] - FRAC_PI_8.sin()).abs() < EXACT);
    }

    #[test]
    fn chart_collides_at_quarter_pi() {
        let err = CollinearChart::new(FRAC_PI_4, FRAC_PI_2).point().unwrap_err();
        assert!(err.is_collision(), "{err}");
        assert!(CollinearChart::new(0.0, FRAC_PI_2).point().unwrap_err().is_collision());
    }

    #[test]
    fn normal_plane_is_horizontal_orthonormal_with_vanishing_twist() {
        let pair = chart().normal_plane().unwrap();
        assert!((pair.v1().norm() - 1.0).abs() < EXACT);
        assert!(pair.v1().dot(pair.v2()).abs() < EXACT);
        // v1 . (i v2) = 0 exactly for i(real) frames
        assert_eq!(pair.v1().dot(&mul_i(pair.v2())), 0.0);
        // embedded frame vectors are purely imaginary at theta = pi/2
        let emb = ComEmbedding::new(4).unwrap();
        let lv = emb.embed(pair.v1());
        for k in 0..4 {
            assert_eq!(lv[2 * k], 0.0);
        }
    }

    #[test]
    fn tangent_plane_maps_to_normal_plane_under_i() {
        let tangent = chart().tangent_plane().unwrap();
        let normal = chart().normal_plane().unwrap();
        assert_eq!(tangent.v1().dot(&mul_i(tangent.v2())), 0.0);
        // i * tangent span = normal span
        for v in [tangent.v1(), tangent.v2()] {
            let iv = mul_i(v);
            let in_span = normal.v1() * iv.dot(normal.v1()) + normal.v2() * iv.dot(normal.v2());
            assert!((in_span - iv).norm() < FRAME_RESIDUAL);
        }
    }

    #[test]
    fn section_frames_lie_in_the_deterministic_horizontal_frame() {
        let frame = horizontal_frame(&chart().point().unwrap());
        for pair in [chart().normal_plane().unwrap(), chart().tangent_plane().unwrap()] {
            for v in [pair.v1(), pair.v2()] {
                let residual = realified::project_out(v, &frame);
                assert!(residual.norm() < FRAME_RESIDUAL);
            }
        }
    }

    #[test]
    fn tangent_pair_orthonormalizes_scaled_and_skewed_input() {
        let chart = chart();
        let base = chart.point().unwrap();
        let pair = chart.normal_plane().unwrap();
        let w1 = pair.v1() * 7.0;
        let w2 = pair.v1() * 2.0 + pair.v2() * 5.0;
        let rebuilt = TangentPair::new(base, w1, w2).unwrap();
        assert!((rebuilt.v1() - pair.v1()).norm() < EXACT);
        assert!((rebuilt.v2() - pair.v2()).norm() < EXACT);
    }

    #[test]
    fn tangent_pair_rejects_non_horizontal_and_degenerate_input() {
        let base = chart().point().unwrap();
        let pair = chart().normal_plane().unwrap();
        let vertical_mix = pair.v1() + base.coords() * 0.1;
        assert!(matches!(
            TangentPair::new(base.clone(), vertical_mix, pair.v2().clone()),
            Err(GeometryError::Frame(_))
        ));
        assert!(matches!(
            TangentPair::new(base, pair.v1().clone(), pair.v1() * 3.0),
            Err(GeometryError::Frame(_))
        ));
    }

    #[test]
    fn three_body_circle_collides_at_body_crossings() {
        // q1 = q2 happens where the first reduced coordinate vanishes
        assert!(collinear_point_three(FRAC_PI_2).unwrap_err().is_collision());
        assert!(collinear_point_three(0.4).is_ok());
    }
}
