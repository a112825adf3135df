//! Seeded random shapes, planes, and configurations.
//!
//! Verification runs are deterministic: a fixed seed fixes the entire ChaCha
//! stream, so every suite sees the same samples on every run and serialized
//! reports are byte-identical. Rejection keeps samples a fixed margin away
//! from collisions, where curvature magnitudes stay at desk scale.

use nalgebra::DVector;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::GeometryError;
use crate::nbody::{ComEmbedding, Configuration};
use crate::shape::{horizontal_frame, ReducedPoint, TangentPair};
use crate::Result;

/// Minimum embedded pair separation accepted by default.
pub const DEFAULT_MARGIN: f64 = 0.15;

const MAX_REJECTIONS: usize = 100_000;

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn normal_vector<R: Rng>(rng: &mut R, len: usize) -> DVector<f64> {
    DVector::from_iterator(len, (0..len).map(|_| rng.sample::<f64, _>(StandardNormal)))
}

/// Uniformly random unit direction.
pub fn random_direction<R: Rng>(rng: &mut R, len: usize) -> DVector<f64> {
    loop {
        let v = normal_vector(rng, len);
        let norm = v.norm();
        if norm > 1e-6 {
            return v / norm;
        }
    }
}

/// Rejection sampler over unit-norm shapes of the n-body problem.
pub struct ShapeSampler {
    emb: ComEmbedding,
    margin: f64,
}

impl ShapeSampler {
    pub fn new(n: usize) -> Result<Self> {
        Self::with_margin(n, DEFAULT_MARGIN)
    }

    pub fn with_margin(n: usize, margin: f64) -> Result<Self> {
        if !(margin > 0.0 && margin < 1.0) {
            return Err(GeometryError::invalid("margin must lie in (0, 1)"));
        }
        Ok(ShapeSampler { emb: ComEmbedding::new(n)?, margin })
    }

    pub fn n_bodies(&self) -> usize {
        self.emb.n_bodies()
    }

    /// Unit-norm reduced point whose embedded configuration keeps every pair
    /// at least `margin` apart.
    pub fn random_shape<R: Rng>(&self, rng: &mut R) -> Result<ReducedPoint> {
        let dim = 2 * (self.n_bodies() - 1);
        for _ in 0..MAX_REJECTIONS {
            let mut p = normal_vector(rng, dim);
            let norm = p.norm();
            if norm == 0.0 {
                continue;
            }
            p /= norm;
            let cfg = self.emb.configuration(&p)?;
            if cfg.min_separation().2 >= self.margin {
                return Ok(ReducedPoint::new(p)?);
            }
        }
        Err(GeometryError::invalid("shape rejection sampling stalled"))
    }

    /// Random orthonormal horizontal plane at p.
    pub fn random_plane_at<R: Rng>(&self, p: &ReducedPoint, rng: &mut R) -> Result<TangentPair> {
        let frame = horizontal_frame(p);
        for _ in 0..MAX_REJECTIONS {
            let a = normal_vector(rng, frame.len());
            let b = normal_vector(rng, frame.len());
            let combine = |c: &DVector<f64>| {
                let mut w = DVector::zeros(p.coords().len());
                for (ci, fi) in c.iter().zip(&frame) {
                    w.axpy(*ci, fi, 1.0);
                }
                w
            };
            match TangentPair::new(p.clone(), combine(&a), combine(&b)) {
                Ok(pair) => return Ok(pair),
                Err(GeometryError::Frame(_)) => continue,
                Err(e) => return Err(e),
            }
        }
        Err(GeometryError::invalid("plane rejection sampling stalled"))
    }

    /// Shape and plane drawn together.
    pub fn random_shape_and_plane<R: Rng>(
        &self,
        rng: &mut R,
    ) -> Result<(ReducedPoint, TangentPair)> {
        let p = self.random_shape(rng)?;
        let pair = self.random_plane_at(&p, rng)?;
        Ok((p, pair))
    }

    /// Collision-free ambient configuration with standard-normal coordinates
    /// (not centered, not normalized); exercises the derivative identities
    /// away from any special locus.
    pub fn random_configuration<R: Rng>(&self, rng: &mut R) -> Result<Configuration> {
        let n = self.n_bodies();
        for _ in 0..MAX_REJECTIONS {
            let q = normal_vector(rng, 2 * n);
            let cfg = Configuration::new(vec![1.0; n], q)?;
            if cfg.min_separation().2 >= self.margin {
                return Ok(cfg);
            }
        }
        Err(GeometryError::invalid("configuration rejection sampling stalled"))
    }
}
