//! Finite-difference oracles.
//!
//! Everything here reaches the same quantities as the closed forms while using
//! only potential evaluations (plus horizontal projection for the chart
//! metric), so agreement is end-to-end evidence for the calculus. The chart
//! works on an affine slice s(u) = base + Σ u_a frame_a with no
//! renormalization: the quotient metric does not care which orbit
//! representative evaluates it, and an affine slice keeps the stencils exactly
//! linear in u.
//!
//! The all-lower-index Riemann assembly below is the negative of the layout
//! most references print; the orientation is pinned by the round-sphere
//! harness (K = +1/R²), not by bookkeeping.

use nalgebra::{DMatrix, DVector};

use crate::error::GeometryError;
use crate::nbody::{potential, Configuration, ReducedPotential};
use crate::realified::{herm, mul_i};
use crate::shape::{horizontal_frame, horizontal_project, ReducedPoint, TangentPair};
use crate::tol;
use crate::Result;

/// Widest chart offset the affine slice accepts; far slices leave the
/// neighborhood where the frame stays transverse to the orbit.
const CHART_RADIUS_MAX: f64 = 0.5;

fn displaced(config: &Configuration, delta: &DVector<f64>) -> Result<Configuration> {
    Configuration::new(config.masses().to_vec(), config.positions() + delta)
}

fn ensure_fd_margin(config: &Configuration, step: f64) -> Result<()> {
    let (i, j, dist) = config.min_separation();
    let margin = 10.0 * step;
    if dist < margin {
        return Err(GeometryError::Collision { i, j, dist, tol: margin });
    }
    Ok(())
}

/// Central-difference gradient of the potential on realified coordinates.
pub fn fd_gradient(config: &Configuration) -> Result<DVector<f64>> {
    let dim = config.positions().len();
    let h = tol::fd_potential_step(config.positions().norm());
    ensure_fd_margin(config, h)?;
    let mut g = DVector::zeros(dim);
    let mut e = DVector::zeros(dim);
    for i in 0..dim {
        e[i] = h;
        g[i] = (potential(&displaced(config, &e)?)? - potential(&displaced(config, &(-&e))?)?)
            / (2.0 * h);
        e[i] = 0.0;
    }
    Ok(g)
}

/// Four-point central-difference Hessian; symmetric by construction.
pub fn fd_hessian(config: &Configuration) -> Result<DMatrix<f64>> {
    let dim = config.positions().len();
    let h = tol::fd_potential_step(config.positions().norm());
    ensure_fd_margin(config, h)?;
    let mut hess = DMatrix::zeros(dim, dim);
    let at = |delta: &DVector<f64>| -> Result<f64> { potential(&displaced(config, delta)?) };
    for i in 0..dim {
        for j in i..dim {
            let mut d = DVector::zeros(dim);
            d[i] += h;
            d[j] += h;
            let pp = at(&d)?;
            d[j] -= 2.0 * h;
            let pm = at(&d)?;
            d[i] -= 2.0 * h;
            let mm = at(&d)?;
            d[j] += 2.0 * h;
            let mp = at(&d)?;
            let v = (pp - pm - mp + mm) / (4.0 * h * h);
            hess[(i, j)] = v;
            hess[(j, i)] = v;
        }
    }
    Ok(hess)
}

/// One-dimensional chart derivatives of the reduced potential along `dir`:
/// (first, second) central differences of t ↦ U_L(p + t·dir).
pub fn fd_directional(
    rp: &ReducedPotential,
    p: &DVector<f64>,
    dir: &DVector<f64>,
) -> Result<(f64, f64)> {
    let h = tol::fd_potential_step(p.norm());
    let plus = rp.value(&(p + dir * h))?;
    let minus = rp.value(&(p - dir * h))?;
    let center = rp.value(p)?;
    Ok(((plus - minus) / (2.0 * h), (plus - 2.0 * center + minus) / (h * h)))
}

/// Quotient metric in an affine chart around a base shape:
/// g_ab(u) = U_L(s(u)) ⟨hor_{s(u)} f_a, hor_{s(u)} f_b⟩ over the horizontal
/// frame f at the base.
pub struct ChartMetricSampler {
    base: ReducedPoint,
    frame: Vec<DVector<f64>>,
    potential: ReducedPotential,
}

impl ChartMetricSampler {
    pub fn new(base: ReducedPoint) -> Result<Self> {
        let potential = ReducedPotential::new(base.n_bodies())?;
        let frame = horizontal_frame(&base);
        Ok(ChartMetricSampler { base, frame, potential })
    }

    pub fn base(&self) -> &ReducedPoint {
        &self.base
    }

    pub fn frame(&self) -> &[DVector<f64>] {
        &self.frame
    }

    /// Chart dimension 2n−4.
    pub fn dim(&self) -> usize {
        self.frame.len()
    }

    /// Chart coordinates of a horizontal vector at the base.
    pub fn plane_coordinates(&self, v: &DVector<f64>) -> DVector<f64> {
        DVector::from_iterator(self.frame.len(), self.frame.iter().map(|f| v.dot(f)))
    }

    /// The slice point s(u), unnormalized.
    pub fn slice_point(&self, u: &[f64]) -> Result<ReducedPoint> {
        if u.len() != self.frame.len() {
            return Err(GeometryError::invalid("chart coordinate count mismatch"));
        }
        let mut s = self.base.coords().clone();
        for (ua, fa) in u.iter().zip(&self.frame) {
            s.axpy(*ua, fa, 1.0);
        }
        ReducedPoint::new(s)
    }

    /// Metric components at chart coordinates u.
    pub fn metric(&self, u: &[f64]) -> Result<DMatrix<f64>> {
        let r2: f64 = u.iter().map(|x| x * x).sum();
        if r2.sqrt() > CHART_RADIUS_MAX {
            return Err(GeometryError::invalid("chart coordinates outside slice radius"));
        }
        let s = self.slice_point(u)?;
        let ul = self.potential.value(s.coords())?;
        let hs: Vec<DVector<f64>> =
            self.frame.iter().map(|f| horizontal_project(&s, f)).collect();
        let d = self.frame.len();
        let mut g = DMatrix::zeros(d, d);
        for a in 0..d {
            for b in a..d {
                let v = ul * hs[a].dot(&hs[b]);
                g[(a, b)] = v;
                g[(b, a)] = v;
            }
        }
        Ok(g)
    }
}

/// All-lower-index curvature tensor sampled at the chart center.
pub struct RiemannTensor {
    dim: usize,
    data: Vec<f64>,
}

impl RiemannTensor {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, a: usize, b: usize, c: usize, d: usize) -> f64 {
        self.data[((a * self.dim + b) * self.dim + c) * self.dim + d]
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// max |R_abcd + R_bacd| over the largest component.
    pub fn antisymmetry_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        let n = self.dim;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        worst = worst.max((self.get(a, b, c, d) + self.get(b, a, c, d)).abs());
                    }
                }
            }
        }
        worst / self.max_abs().max(f64::MIN_POSITIVE)
    }

    /// max |R_abcd − R_cdab| over the largest component.
    pub fn pair_symmetry_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        let n = self.dim;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        worst = worst.max((self.get(a, b, c, d) - self.get(c, d, a, b)).abs());
                    }
                }
            }
        }
        worst / self.max_abs().max(f64::MIN_POSITIVE)
    }
}

/// Second-order stencils for the Riemann tensor of a metric given in a chart.
/// Returns the center metric alongside the tensor.
pub fn fd_riemann<F>(metric: F, dim: usize, step: f64) -> Result<(DMatrix<f64>, RiemannTensor)>
where
    F: Fn(&[f64]) -> Result<DMatrix<f64>>,
{
    let h = step;
    let zero = vec![0.0; dim];
    let g0 = metric(&zero)?;
    let ginv = g0
        .clone()
        .try_inverse()
        .ok_or_else(|| GeometryError::IllConditioned(g0.determinant()))?;

    let mut dg: Vec<DMatrix<f64>> = Vec::with_capacity(dim);
    for a in 0..dim {
        let mut e = zero.clone();
        e[a] = h;
        let plus = metric(&e)?;
        e[a] = -h;
        let minus = metric(&e)?;
        dg.push((plus - minus) / (2.0 * h));
    }

    let mut ddg: Vec<Vec<DMatrix<f64>>> = vec![vec![DMatrix::zeros(dim, dim); dim]; dim];
    for a in 0..dim {
        let mut e = zero.clone();
        e[a] = h;
        let plus = metric(&e)?;
        e[a] = -h;
        let minus = metric(&e)?;
        ddg[a][a] = (plus + minus - 2.0 * &g0) / (h * h);
        for b in (a + 1)..dim {
            let mut u = zero.clone();
            u[a] = h;
            u[b] = h;
            let pp = metric(&u)?;
            u[b] = -h;
            let pm = metric(&u)?;
            u[a] = -h;
            let mm = metric(&u)?;
            u[b] = h;
            let mp = metric(&u)?;
            let m = (pp - pm - mp + mm) / (4.0 * h * h);
            ddg[a][b] = m.clone();
            ddg[b][a] = m;
        }
    }

    // Christoffel, first kind: Γ_{c,ab} = (∂_a g_bc + ∂_b g_ac − ∂_c g_ab)/2
    let mut gamma: Vec<DMatrix<f64>> = vec![DMatrix::zeros(dim, dim); dim];
    for c in 0..dim {
        for a in 0..dim {
            for b in 0..dim {
                gamma[c][(a, b)] =
                    0.5 * (dg[a][(b, c)] + dg[b][(a, c)] - dg[c][(a, b)]);
            }
        }
    }

    let mut data = vec![0.0; dim * dim * dim * dim];
    for a in 0..dim {
        for b in 0..dim {
            for c in 0..dim {
                for d in 0..dim {
                    let t = 0.5
                        * (ddg[a][d][(b, c)] + ddg[b][c][(a, d)]
                            - ddg[a][c][(b, d)]
                            - ddg[b][d][(a, c)]);
                    let mut q = 0.0;
                    for e in 0..dim {
                        for f in 0..dim {
                            q += ginv[(e, f)]
                                * (gamma[e][(a, d)] * gamma[f][(b, c)]
                                    - gamma[e][(a, c)] * gamma[f][(b, d)]);
                        }
                    }
                    data[((a * dim + b) * dim + c) * dim + d] = t + q;
                }
            }
        }
    }
    Ok((g0, RiemannTensor { dim, data }))
}

/// Sectional curvature K = R(X,Y,X,Y)/(g(X,X)g(Y,Y) − g(X,Y)²) from the FD
/// Riemann tensor of a chart metric.
pub fn fd_sectional_from_chart<F>(
    metric: F,
    dim: usize,
    x: &DVector<f64>,
    y: &DVector<f64>,
    step: f64,
) -> Result<f64>
where
    F: Fn(&[f64]) -> Result<DMatrix<f64>>,
{
    let (g0, r) = fd_riemann(metric, dim, step)?;
    let gram = (x.dot(&(&g0 * x))) * (y.dot(&(&g0 * y))) - (x.dot(&(&g0 * y))).powi(2);
    if gram.abs() < tol::GRAM_DET_MIN {
        return Err(GeometryError::IllConditioned(gram));
    }
    let mut num = 0.0;
    for a in 0..dim {
        for b in 0..dim {
            for c in 0..dim {
                for d in 0..dim {
                    num += r.get(a, b, c, d) * x[a] * y[b] * x[c] * y[d];
                }
            }
        }
    }
    Ok(num / gram)
}

/// FD sectional curvature of the quotient metric through the plane of `pair`.
pub fn fd_sectional(pair: &TangentPair, step: f64) -> Result<f64> {
    let sampler = ChartMetricSampler::new(pair.base().clone())?;
    let x = sampler.plane_coordinates(pair.v1());
    let y = sampler.plane_coordinates(pair.v2());
    fd_sectional_from_chart(|u| sampler.metric(u), sampler.dim(), &x, &y, step)
}

/// FD sectional curvature of the conformal ambient metric U_L·ds² on the full
/// reduced space, through the same plane; isolates the pre-O'Neill block.
pub fn fd_conformal_sectional(pair: &TangentPair, step: f64) -> Result<f64> {
    let base = pair.base();
    let dim = base.coords().len();
    let rp = ReducedPotential::new(base.n_bodies())?;
    let metric = |u: &[f64]| -> Result<DMatrix<f64>> {
        let s = base.coords() + DVector::from_column_slice(u);
        Ok(DMatrix::identity(dim, dim) * rp.value(&s)?)
    };
    fd_sectional_from_chart(metric, dim, pair.v1(), pair.v2(), step)
}

/// Graph-chart metric of the round 2-sphere of radius r at the pole; the
/// harness that pins the Riemann sign convention.
pub fn sphere_chart(r: f64) -> impl Fn(&[f64]) -> Result<DMatrix<f64>> {
    move |u: &[f64]| {
        let (x, y) = (u[0], u[1]);
        let z2 = r * r - x * x - y * y;
        if z2 <= 0.0 {
            return Err(GeometryError::invalid("chart coordinates leave the sphere"));
        }
        let zx = -x / z2.sqrt();
        let zy = -y / z2.sqrt();
        Ok(DMatrix::from_row_slice(2, 2, &[1.0 + zx * zx, zx * zy, zx * zy, 1.0 + zy * zy]))
    }
}

/// Vertical components of the FD Lie bracket of the normalized horizontal
/// extensions V_a(x) = hor_x(v_a)/√U_L(x): returns ([V₁,V₂]·E, [V₁,V₂]·iE)
/// with E the base representative. The first must vanish; the second equals
/// 2(v₁·iv₂)/U_L at unit-norm bases, closing O'Neill's correction.
pub fn fd_bracket_vertical(pair: &TangentPair) -> Result<(f64, f64)> {
    let base = pair.base();
    let rp = ReducedPotential::new(base.n_bodies())?;
    let x0 = base.coords();
    let h = tol::fd_potential_step(x0.norm());

    let field = |x: DVector<f64>, v: &DVector<f64>| -> Result<DVector<f64>> {
        let ul = rp.value(&x)?;
        let pt = ReducedPoint::new(x)?;
        Ok(horizontal_project(&pt, v) / ul.sqrt())
    };

    let v1_0 = field(x0.clone(), pair.v1())?;
    let v2_0 = field(x0.clone(), pair.v2())?;
    let dv2 = (field(x0 + &v1_0 * h, pair.v2())? - field(x0 - &v1_0 * h, pair.v2())?) / (2.0 * h);
    let dv1 = (field(x0 + &v2_0 * h, pair.v1())? - field(x0 - &v2_0 * h, pair.v1())?) / (2.0 * h);
    let bracket = dv2 - dv1;
    Ok((bracket.dot(x0), bracket.dot(&mul_i(x0))))
}

/// Fubini–Study form in homogeneous coordinates (holomorphic sectional
/// curvature 4 normalization):
/// FS(w_a, w_b) = (Re⟨w_a,w_b⟩|s|² − Re(⟨w_a,s⟩·conj⟨w_b,s⟩)) / |s|⁴.
/// The chart metric factors exactly as g_ab(u) = U_L(s)·|s|²·FS_ab(u).
pub fn fubini_study_form(s: &DVector<f64>, wa: &DVector<f64>, wb: &DVector<f64>) -> f64 {
    let h2 = s.norm_squared();
    let re_ab = wa.dot(wb);
    let (ra, ia) = herm(wa, s);
    let (rb, ib) = herm(wb, s);
    (re_ab * h2 - (ra * rb + ia * ib)) / (h2 * h2)
}
