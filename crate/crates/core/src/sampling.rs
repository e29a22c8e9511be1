//! Random search directions: uniform on the unit sphere, signed coordinate
//! directions, or standard Gaussian vectors.
//!
//! All samplers draw from a seeded [`ChaCha8Rng`] so that every run is
//! reproducible from its seed alone, independent of platform or thread
//! scheduling.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::vecmath::norm;

/// The distribution a [`DirectionSampler`] draws from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SamplerKind {
    /// Uniform on the unit sphere (normalized Gaussian vector).
    Sphere,
    /// Uniform over the `2n` signed coordinate directions `±eᵢ`.
    Discrete,
    /// Standard normal vector, not normalized.
    Gaussian,
}

impl SamplerKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            SamplerKind::Sphere => "sphere",
            SamplerKind::Discrete => "discrete",
            SamplerKind::Gaussian => "gaussian",
        }
    }
}

impl fmt::Display for SamplerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Error for unrecognized sampler names.
#[derive(Debug, thiserror::Error)]
#[error("unknown sampler `{0}` (expected sphere, discrete, or gaussian)")]
pub struct UnknownSampler(String);

impl FromStr for SamplerKind {
    type Err = UnknownSampler;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "sphere" | "uniform" => Ok(SamplerKind::Sphere),
            "discrete" | "signed" => Ok(SamplerKind::Discrete),
            "gaussian" | "normal" => Ok(SamplerKind::Gaussian),
            other => Err(UnknownSampler(other.to_string())),
        }
    }
}

/// Seeded source of random search directions of a fixed dimension.
#[derive(Debug, Clone)]
pub struct DirectionSampler {
    kind: SamplerKind,
    dim: usize,
    rng: ChaCha8Rng,
}

impl DirectionSampler {
    pub fn new(kind: SamplerKind, dim: usize, seed: u64) -> Self {
        assert!(dim > 0, "direction sampler needs a positive dimension");
        Self { kind, dim, rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn kind(&self) -> SamplerKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Draws the next direction.
    pub fn sample(&mut self) -> Vec<f64> {
        let mut u = vec![0.0; self.dim];
        self.sample_into(&mut u);
        u
    }

    /// Draws the next direction into `out` (length must equal the dimension).
    pub fn sample_into(&mut self, out: &mut [f64]) {
        assert_eq!(out.len(), self.dim);
        match self.kind {
            SamplerKind::Sphere => loop {
                for v in out.iter_mut() {
                    *v = self.rng.sample(StandardNormal);
                }
                let r = norm(out);
                // A zero-norm draw has probability zero; guard anyway so the
                // normalization can never produce non-finite components.
                if r > 1e-300 {
                    for v in out.iter_mut() {
                        *v /= r;
                    }
                    return;
                }
            },
            SamplerKind::Discrete => {
                out.fill(0.0);
                let i = self.rng.gen_range(0..self.dim);
                out[i] = if self.rng.gen::<bool>() { 1.0 } else { -1.0 };
            }
            SamplerKind::Gaussian => {
                for v in out.iter_mut() {
                    *v = self.rng.sample(StandardNormal);
                }
            }
        }
    }
}
