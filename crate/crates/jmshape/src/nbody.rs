//! Planar N-body configurations with the strong-force potential
//! U(q) = Σ_{i<j} m_i m_j / r_ij², its exact first and second derivatives,
//! and the isometric center-of-mass reduction ℂ^{N-1} → ℂ^N.

use nalgebra::{DMatrix, DVector};

use crate::error::GeometryError;
use crate::realified;
use crate::tol;
use crate::Result;

/// Planar configuration: positions realified as interleaved (x, y) pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct Configuration {
    masses: Vec<f64>,
    positions: DVector<f64>,
}

impl Configuration {
    pub fn new(masses: Vec<f64>, positions: DVector<f64>) -> Result<Self> {
        if masses.len() < 2 {
            return Err(GeometryError::invalid("need at least two bodies"));
        }
        if positions.len() != 2 * masses.len() {
            return Err(GeometryError::invalid(format!(
                "expected {} position components for {} bodies, got {}",
                2 * masses.len(),
                masses.len(),
                positions.len()
            )));
        }
        if masses.iter().any(|m| !m.is_finite() || *m <= 0.0) {
            return Err(GeometryError::invalid("masses must be finite and positive"));
        }
        if positions.iter().any(|x| !x.is_finite()) {
            return Err(GeometryError::invalid("positions must be finite"));
        }
        Ok(Configuration { masses, positions })
    }

    /// Unit masses at the given complex positions.
    pub fn unit_masses(pairs: &[(f64, f64)]) -> Result<Self> {
        Configuration::new(vec![1.0; pairs.len()], realified::from_pairs(pairs))
    }

    pub fn n_bodies(&self) -> usize {
        self.masses.len()
    }

    pub fn masses(&self) -> &[f64] {
        &self.masses
    }

    pub fn positions(&self) -> &DVector<f64> {
        &self.positions
    }

    pub fn body(&self, k: usize) -> (f64, f64) {
        (self.positions[2 * k], self.positions[2 * k + 1])
    }

    /// Distance below which a pair counts as collided: relative to the overall
    /// configuration scale so the check is meaningful at any dilation.
    pub fn collision_tolerance(&self) -> f64 {
        tol::COLLISION_REL * (1.0 + self.positions.norm())
    }

    /// Closest pair and its distance.
    pub fn min_separation(&self) -> (usize, usize, f64) {
        let n = self.n_bodies();
        let mut best = (0, 1, f64::INFINITY);
        for i in 0..n {
            for j in (i + 1)..n {
                let (xi, yi) = self.body(i);
                let (xj, yj) = self.body(j);
                let d = (xi - xj).hypot(yi - yj);
                if d < best.2 {
                    best = (i, j, d);
                }
            }
        }
        best
    }

    pub fn ensure_collision_free(&self) -> Result<()> {
        let (i, j, dist) = self.min_separation();
        let tol = self.collision_tolerance();
        if dist < tol {
            return Err(GeometryError::Collision { i, j, dist, tol });
        }
        Ok(())
    }
}

/// Value, realified gradient (length 2n), and realified Hessian (2n x 2n) of
/// the potential. The Hessian is symmetric by construction.
#[derive(Debug, Clone)]
pub struct DerivativeBundle {
    pub value: f64,
    pub gradient: DVector<f64>,
    pub hessian: DMatrix<f64>,
}

/// U(q) = Σ_{i<j} m_i m_j / r_ij².
pub fn potential(config: &Configuration) -> Result<f64> {
    config.ensure_collision_free()?;
    let n = config.n_bodies();
    let mut u = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            let (xi, yi) = config.body(i);
            let (xj, yj) = config.body(j);
            let dx = xi - xj;
            let dy = yi - yj;
            u += config.masses[i] * config.masses[j] / (dx * dx + dy * dy);
        }
    }
    Ok(u)
}

/// Exact derivatives of U. The k-th complex gradient component is
/// 2 Σ_{j≠k} m_j m_k (q_j - q_k) / r_jk⁴; at collinear (purely real)
/// configurations the gradient is purely real and the imaginary-direction
/// Hessian block is ∂²U/∂y_j∂y_k = 2 m_j m_k / (x_j - x_k)⁴ off the diagonal.
pub fn potential_derivatives(config: &Configuration) -> Result<DerivativeBundle> {
    config.ensure_collision_free()?;
    let n = config.n_bodies();
    let mut value = 0.0;
    let mut gradient = DVector::zeros(2 * n);
    let mut hessian = DMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in (i + 1)..n {
            let mm = config.masses[i] * config.masses[j];
            let (xi, yi) = config.body(i);
            let (xj, yj) = config.body(j);
            let dx = xi - xj;
            let dy = yi - yj;
            let s = dx * dx + dy * dy;
            value += mm / s;

            // d(1/s)/d dx = -2 dx / s²; body i carries +d/d dx, body j carries -d/d dx.
            let gx = -2.0 * mm * dx / (s * s);
            let gy = -2.0 * mm * dy / (s * s);
            gradient[2 * i] += gx;
            gradient[2 * i + 1] += gy;
            gradient[2 * j] -= gx;
            gradient[2 * j + 1] -= gy;

            let s3 = s * s * s;
            let hxx = mm * (-2.0 / (s * s) + 8.0 * dx * dx / s3);
            let hxy = mm * (8.0 * dx * dy / s3);
            let hyy = mm * (-2.0 / (s * s) + 8.0 * dy * dy / s3);
            let block = [(0, 0, hxx), (0, 1, hxy), (1, 0, hxy), (1, 1, hyy)];
            for &(a, b, v) in &block {
                hessian[(2 * i + a, 2 * i + b)] += v;
                hessian[(2 * j + a, 2 * j + b)] += v;
                hessian[(2 * i + a, 2 * j + b)] -= v;
                hessian[(2 * j + a, 2 * i + b)] -= v;
            }
        }
    }
    Ok(DerivativeBundle { value, gradient, hessian })
}

/// Moment of inertia about the center of mass: Σ m_k |q_k - q_cm|².
pub fn moment_of_inertia(config: &Configuration) -> f64 {
    let n = config.n_bodies();
    let total: f64 = config.masses.iter().sum();
    let mut cx = 0.0;
    let mut cy = 0.0;
    for k in 0..n {
        let (x, y) = config.body(k);
        cx += config.masses[k] * x;
        cy += config.masses[k] * y;
    }
    cx /= total;
    cy /= total;
    let mut i = 0.0;
    for k in 0..n {
        let (x, y) = config.body(k);
        i += config.masses[k] * ((x - cx).powi(2) + (y - cy).powi(2));
    }
    i
}

/// Complex-linear isometry L: ℂ^{n-1} → ℂ^n onto the center-of-mass-zero
/// subspace for unit masses. Columns are real, orthonormal, and zero-sum, so
/// the realified map preserves inner products and |L p|² equals the moment of
/// inertia of the embedded configuration.
#[derive(Debug, Clone)]
pub struct ComEmbedding {
    n: usize,
    /// Real n x (n-1) matrix acting separately on re and im parts.
    matrix: DMatrix<f64>,
}

impl ComEmbedding {
    /// For n = 4 the columns are the fixed basis
    /// (1/2, 1/2, -1/2, -1/2), (1/√2, -1/√2, 0, 0), (0, 0, 1/√2, -1/√2);
    /// other n use Gram-Schmidt over the difference seeds e_1 - e_2,
    /// e_1 + e_2 - 2 e_3, ... in fixed order. Any real orthonormal zero-sum
    /// basis yields the same geometry; the n = 4 basis is pinned because the
    /// collinear charts and ρ/α tables are expressed in it.
    pub fn new(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(GeometryError::invalid("center-of-mass reduction needs n >= 3"));
        }
        let matrix = if n == 4 {
            let r = 1.0 / 2f64.sqrt();
            DMatrix::from_row_slice(
                4,
                3,
                &[
                    0.5, r, 0.0, //
                    0.5, -r, 0.0, //
                    -0.5, 0.0, r, //
                    -0.5, 0.0, -r,
                ],
            )
        } else {
            let mut cols: Vec<DVector<f64>> = Vec::with_capacity(n - 1);
            for k in 1..n {
                let mut v = DVector::zeros(n);
                for slot in v.iter_mut().take(k) {
                    *slot = 1.0;
                }
                v[k] = -(k as f64);
                let v = realified::project_out(&v, &cols);
                cols.push(v.clone() / v.norm());
            }
            DMatrix::from_columns(&cols)
        };
        Ok(ComEmbedding { n, matrix })
    }

    pub fn n_bodies(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    /// Realified ℂ^{n-1} → ℂ^n.
    pub fn embed(&self, p: &DVector<f64>) -> DVector<f64> {
        debug_assert_eq!(p.len(), 2 * (self.n - 1));
        let mut q = DVector::zeros(2 * self.n);
        for i in 0..self.n {
            for j in 0..self.n - 1 {
                let m = self.matrix[(i, j)];
                q[2 * i] += m * p[2 * j];
                q[2 * i + 1] += m * p[2 * j + 1];
            }
        }
        q
    }

    /// Adjoint ℂ^n → ℂ^{n-1}; kills center-of-mass shifts and inverts `embed`
    /// on the zero-center subspace.
    pub fn reduce(&self, q: &DVector<f64>) -> DVector<f64> {
        debug_assert_eq!(q.len(), 2 * self.n);
        let mut p = DVector::zeros(2 * (self.n - 1));
        for j in 0..self.n - 1 {
            for i in 0..self.n {
                let m = self.matrix[(i, j)];
                p[2 * j] += m * q[2 * i];
                p[2 * j + 1] += m * q[2 * i + 1];
            }
        }
        p
    }

    /// Unit-mass configuration at L p.
    pub fn configuration(&self, p: &DVector<f64>) -> Result<Configuration> {
        Configuration::new(vec![1.0; self.n], self.embed(p))
    }
}

/// The potential pulled back through the embedding: U_L(p) = U(L p) with unit
/// masses, together with the directional calculus the curvature formula needs.
#[derive(Debug, Clone)]
pub struct ReducedPotential {
    emb: ComEmbedding,
}

/// Derivatives of U at L p, organized for curvature work. `ambient_gradient`
/// is the full realified gradient in ℂ^n; its norm equals |∇U_L| at p because
/// ∇U is tangent to the zero-center subspace.
#[derive(Debug, Clone)]
pub struct ReducedBundle {
    pub value: f64,
    pub ambient_gradient: DVector<f64>,
    pub ambient_hessian: DMatrix<f64>,
    pub reduced_gradient: DVector<f64>,
}

impl ReducedPotential {
    pub fn new(n: usize) -> Result<Self> {
        Ok(ReducedPotential { emb: ComEmbedding::new(n)? })
    }

    pub fn embedding(&self) -> &ComEmbedding {
        &self.emb
    }

    pub fn value(&self, p: &DVector<f64>) -> Result<f64> {
        potential(&self.emb.configuration(p)?)
    }

    pub fn bundle(&self, p: &DVector<f64>) -> Result<ReducedBundle> {
        let b = potential_derivatives(&self.emb.configuration(p)?)?;
        let reduced_gradient = self.emb.reduce(&b.gradient);
        Ok(ReducedBundle {
            value: b.value,
            ambient_gradient: b.gradient,
            ambient_hessian: b.hessian,
            reduced_gradient,
        })
    }

    /// First and second derivative of U_L at p along `dir` (realified).
    pub fn directional(&self, p: &DVector<f64>, dir: &DVector<f64>) -> Result<(f64, f64)> {
        let b = self.bundle(p)?;
        Ok(directional_from_bundle(&self.emb, &b, dir))
    }
}

/// Same as [`ReducedPotential::directional`], reusing an existing bundle.
pub fn directional_from_bundle(
    emb: &ComEmbedding,
    bundle: &ReducedBundle,
    dir: &DVector<f64>,
) -> (f64, f64) {
    let ldir = emb.embed(dir);
    let d1 = bundle.ambient_gradient.dot(&ldir);
    let d2 = (&bundle.ambient_hessian * &ldir).dot(&ldir);
    (d1, d2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::realified::from_pairs;

    const EXACT: f64 = 1e-12;

    fn unit_square() -> Configuration {
        Configuration::unit_masses(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]).unwrap()
    }

    #[test]
    fn unit_square_potential_is_five() {
        assert!((potential(&unit_square()).unwrap() - 5.0).abs() < EXACT);
    }

    #[test]
    fn potential_is_homogeneous_of_degree_minus_two() {
        let c = unit_square();
        let u = potential(&c).unwrap();
        for lambda in [0.5, 2.0, 10.0] {
            let scaled =
                Configuration::new(c.masses().to_vec(), c.positions() * lambda).unwrap();
            let us = potential(&scaled).unwrap();
            assert!((us - u / (lambda * lambda)).abs() / u < EXACT);
        }
    }

    #[test]
    fn potential_is_euclidean_invariant() {
        let c = Configuration::unit_masses(&[(0.1, -0.4), (1.3, 0.2), (-0.7, 0.9), (0.4, 1.8)])
            .unwrap();
        let u = potential(&c).unwrap();
        let shifted: Vec<(f64, f64)> =
            (0..4).map(|k| c.body(k)).map(|(x, y)| (x + 0.7, y - 0.3)).collect();
        let us = potential(&Configuration::unit_masses(&shifted).unwrap()).unwrap();
        assert!((us - u).abs() / u < EXACT);
        let rotated = realified::rotate(c.positions(), 0.9f64.cos(), 0.9f64.sin());
        let ur =
            potential(&Configuration::new(c.masses().to_vec(), rotated).unwrap()).unwrap();
        assert!((ur - u).abs() / u < EXACT);
    }

    #[test]
    fn gradient_satisfies_euler_identity_and_zero_sum() {
        // Degree -2 homogeneity forces grad U . q = -2 U; translation
        // invariance forces the per-body gradient sum to vanish.
        let c = Configuration::new(
            vec![1.0, 2.0, 0.5, 1.5],
            from_pairs(&[(0.1, -0.4), (1.3, 0.2), (-0.7, 0.9), (0.4, 1.8)]),
        )
        .unwrap();
        let b = potential_derivatives(&c).unwrap();
        let euler = b.gradient.dot(c.positions());
        assert!((euler + 2.0 * b.value).abs() / b.value.abs() < EXACT);
        let (mut sx, mut sy) = (0.0, 0.0);
        for k in 0..4 {
            sx += b.gradient[2 * k];
            sy += b.gradient[2 * k + 1];
        }
        let scale = b.gradient.norm();
        assert!(sx.abs() / scale < EXACT && sy.abs() / scale < EXACT);
    }

    #[test]
    fn hessian_is_exactly_symmetric() {
        let c = unit_square();
        let b = potential_derivatives(&c).unwrap();
        assert_eq!(b.hessian, b.hessian.transpose());
    }

    #[test]
    fn collinear_gradient_is_purely_real() {
        let c = Configuration::unit_masses(&[(-1.2, 0.0), (-0.3, 0.0), (0.5, 0.0), (1.4, 0.0)])
            .unwrap();
        let b = potential_derivatives(&c).unwrap();
        for k in 0..4 {
            assert_eq!(b.gradient[2 * k + 1], 0.0);
        }
    }

    #[test]
    fn collinear_hessian_imaginary_block_is_two_rho_fourth() {
        let xs = [-1.2, -0.3, 0.5, 1.4];
        let pairs: Vec<(f64, f64)> = xs.iter().map(|&x| (x, 0.0)).collect();
        let c = Configuration::unit_masses(&pairs).unwrap();
        let b = potential_derivatives(&c).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                if i == j {
                    continue;
                }
                let rho4 = (xs[i] - xs[j]).powi(-4);
                let got = b.hessian[(2 * i + 1, 2 * j + 1)];
                assert!((got - 2.0 * rho4).abs() / (2.0 * rho4) < 1e-10);
            }
        }
    }

    #[test]
    fn collision_is_reported_with_pair_indices() {
        let c = Configuration::unit_masses(&[(0.0, 0.0), (1e-12, 0.0), (1.0, 0.0), (2.0, 0.0)])
            .unwrap();
        match potential(&c) {
            Err(GeometryError::Collision { i, j, .. }) => assert_eq!((i, j), (0, 1)),
            other => panic!("expected collision, got {other:?}"),
        }
    }

    #[test]
    fn inertia_of_centered_unit_square_is_two() {
        let c = Configuration::unit_masses(&[(0.5, 0.5), (-0.5, 0.5), (-0.5, -0.5), (0.5, -0.5)])
            .unwrap();
        assert!((moment_of_inertia(&c) - 2.0).abs() < EXACT);
        // and it is translation-independent
        assert!((moment_of_inertia(&unit_square()) - 2.0).abs() < EXACT);
    }

    #[test]
    fn embedding_columns_are_orthonormal_and_zero_sum() {
        for n in 3..=8 {
            let e = ComEmbedding::new(n).unwrap();
            let m = e.matrix();
            for a in 0..n - 1 {
                for b in 0..n - 1 {
                    let want = if a == b { 1.0 } else { 0.0 };
                    assert!((m.column(a).dot(&m.column(b)) - want).abs() < EXACT);
                }
                assert!(m.column(a).sum().abs() < EXACT);
            }
        }
    }

    #[test]
    fn four_body_embedding_matches_fixed_basis() {
        let e = ComEmbedding::new(4).unwrap();
        let r = 1.0 / 2f64.sqrt();
        let want = DMatrix::from_row_slice(
            4,
            3,
            &[0.5, r, 0.0, 0.5, -r, 0.0, -0.5, 0.0, r, -0.5, 0.0, -r],
        );
        assert_eq!(e.matrix(), &want);
    }

    #[test]
    fn embedding_is_an_isometry_with_inertia_norm() {
        let e = ComEmbedding::new(5).unwrap();
        let p = from_pairs(&[(0.3, -0.2), (1.1, 0.4), (-0.6, 0.9), (0.2, 0.5)]);
        let q = e.embed(&p);
        let c = Configuration::new(vec![1.0; 5], q.clone()).unwrap();
        assert!((moment_of_inertia(&c) - p.norm_squared()).abs() < EXACT * p.norm_squared());
        let back = e.reduce(&q);
        assert!((back - &p).norm() < EXACT);
    }

    #[test]
    fn chart_point_potential_is_twenty() {
        // p = (0, cos φ, sin φ) at φ = π/8 embeds to bodies at
        // (± cos φ/√2, ± sin φ/√2) on the real axis.
        let phi = std::f64::consts::FRAC_PI_8;
        let rp = ReducedPotential::new(4).unwrap();
        let p = from_pairs(&[(0.0, 0.0), (phi.cos(), 0.0), (phi.sin(), 0.0)]);
        let u = rp.value(&p).unwrap();
        assert!((u - 20.0).abs() / 20.0 < EXACT);
    }
}
