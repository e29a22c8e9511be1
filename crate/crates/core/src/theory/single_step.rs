//! Monte-Carlo checks of the expected one-step progress of random pursuit.
//!
//! Each check runs the *real* line-search oracle along many fresh random
//! sphere directions from a fixed point `x` and compares the empirical mean
//! of `f(x + h·u)` against a closed-form upper bound:
//!
//! * general form (free `h > 0` and comparison point `z`):
//!   `f(x) + (h/n)·⟨∇f(x), z−x⟩ + (L₁h²/(2n))·‖z−x‖² + L₁μ²/2`;
//! * descent form (`h ≤ 1/L₁`): `f(x) − (h/(2n))·‖∇f(x)‖² + L₁μ²/2`;
//! * relative-oracle form: as the general form with `n` replaced by
//!   `n′ = n/(1−μ)` and no additive `μ` term.
//!
//! A check "passes within k·σ" when the empirical mean does not exceed the
//! bound by more than `k` Monte-Carlo standard errors.

use crate::linesearch::{line_search, LineSearchConfig, LsMode};
use crate::objectives::{EvalCounter, ObjectiveSpec};
use crate::sampling::{DirectionSampler, SamplerKind};
use crate::vecmath::{dot, norm_sq};

#[derive(Debug, Clone, Copy)]
pub struct SingleStepReport {
    pub empirical_mean: f64,
    pub stderr: f64,
    pub bound: f64,
    pub trials: u64,
}

impl SingleStepReport {
    /// Signed distance from the bound in standard errors; positive means the
    /// empirical mean is below the bound.
    pub fn margin_sigmas(&self) -> f64 {
        (self.bound - self.empirical_mean) / self.stderr.max(1e-300)
    }

    /// The bound holds up to `k` standard errors of Monte-Carlo noise.
    pub fn holds_within(&self, k: f64) -> bool {
        self.margin_sigmas() >= -k
    }
}

/// Empirical mean and standard error of `f(x + h·u)` over `trials` fresh
/// sphere directions, with `h` from the line search at accuracy `mu`.
fn step_value_mean(
    spec: &ObjectiveSpec,
    x: &[f64],
    mu: f64,
    mode: LsMode,
    trials: u64,
    seed: u64,
) -> (f64, f64) {
    let cfg = LineSearchConfig { mode, ..Default::default() };
    let mut dirs = DirectionSampler::new(SamplerKind::Sphere, spec.dim, seed);
    let mut u = vec![0.0; spec.dim];
    let mut moved = vec![0.0; spec.dim];
    let mut counter = EvalCounter::new();
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    for _ in 0..trials {
        dirs.sample_into(&mut u);
        let h = line_search(spec, x, &u, mu, &cfg, &mut counter)
            .expect("line search on a benchmark objective")
            .h;
        for i in 0..spec.dim {
            moved[i] = x[i] + h * u[i];
        }
        let v = spec.eval(&moved);
        sum += v;
        sum_sq += v * v;
    }
    let t = trials as f64;
    let mean = sum / t;
    let stderr = ((sum_sq / t - mean * mean).max(0.0) / t).sqrt();
    (mean, stderr)
}

/// General one-step bound with free parameters `h > 0` and `z`.
pub fn check_single_step(
    spec: &ObjectiveSpec,
    x: &[f64],
    h: f64,
    z: &[f64],
    mu: f64,
    trials: u64,
    seed: u64,
) -> SingleStepReport {
    assert!(h > 0.0);
    let g = spec.grad(x).expect("single-step bounds need a gradient oracle");
    let n = spec.dim as f64;
    let diff: Vec<f64> = z.iter().zip(x).map(|(zi, xi)| zi - xi).collect();
    let bound = spec.eval(x)
        + (h / n) * dot(&g, &diff)
        + (spec.l1 * h * h / (2.0 * n)) * norm_sq(&diff)
        + spec.l1 * mu * mu / 2.0;
    let (empirical_mean, stderr) = step_value_mean(spec, x, mu, LsMode::Absolute, trials, seed);
    SingleStepReport { empirical_mean, stderr, bound, trials }
}

/// Descent form of the one-step bound, valid for `0 < h ≤ 1/L₁`.
pub fn check_single_step_descent(
    spec: &ObjectiveSpec,
    x: &[f64],
    h: f64,
    mu: f64,
    trials: u64,
    seed: u64,
) -> SingleStepReport {
    assert!(h > 0.0 && h <= 1.0 / spec.l1, "descent form needs 0 < h <= 1/L1");
    let g = spec.grad(x).expect("single-step bounds need a gradient oracle");
    let n = spec.dim as f64;
    let bound = spec.eval(x) - (h / (2.0 * n)) * norm_sq(&g) + spec.l1 * mu * mu / 2.0;
    let (empirical_mean, stderr) = step_value_mean(spec, x, mu, LsMode::Absolute, trials, seed);
    SingleStepReport { empirical_mean, stderr, bound, trials }
}

/// Relative-oracle variant: the general bound with the effective dimension
/// `n′ = n/(1−μ)` and no additive error term.
pub fn check_single_step_relative(
    spec: &ObjectiveSpec,
    x: &[f64],
    h: f64,
    z: &[f64],
    mu: f64,
    trials: u64,
    seed: u64,
) -> SingleStepReport {
    assert!(h > 0.0);
    assert!(mu > 0.0 && mu < 1.0);
    let g = spec.grad(x).expect("single-step bounds need a gradient oracle");
    let n_eff = spec.dim as f64 / (1.0 - mu);
    let diff: Vec<f64> = z.iter().zip(x).map(|(zi, xi)| zi - xi).collect();
    let bound = spec.eval(x)
        + (h / n_eff) * dot(&g, &diff)
        + (spec.l1 * h * h / (2.0 * n_eff)) * norm_sq(&diff);
    let (empirical_mean, stderr) = step_value_mean(spec, x, mu, LsMode::Relative, trials, seed);
    SingleStepReport { empirical_mean, stderr, bound, trials }
}

/// Convenience for the common instantiation `z = x*`, `h = 1/L₁`.
pub fn check_single_step_at_optimum_target(
    spec: &ObjectiveSpec,
    x: &[f64],
    mu: f64,
    trials: u64,
    seed: u64,
) -> SingleStepReport {
    check_single_step(spec, x, 1.0 / spec.l1, &spec.x_star.clone(), mu, trials, seed)
}
