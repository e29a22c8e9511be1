//! Moment identities of random projections `⟨x,u⟩u`.
//!
//! For a fixed vector `x` and random direction `u`:
//!
//! * sphere or signed-axis `u`: `E[⟨x,u⟩u] = x/n`, `E[‖⟨x,u⟩u‖²] = ‖x‖²/n`;
//! * standard Gaussian `u`: `E[⟨x,u⟩u] = x`, `E[‖⟨x,u⟩u‖²] = (n+2)‖x‖²`.
//!
//! The signed-axis case is additionally checkable by exact enumeration over
//! its `2n` atoms. The scalar helper verifies the first four moments of a
//! single normal coordinate.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::sampling::{DirectionSampler, SamplerKind};
use crate::vecmath::{dot, norm_sq};

/// Monte-Carlo estimates of the projection moments against their targets.
#[derive(Debug, Clone)]
pub struct MomentReport {
    pub sampler: SamplerKind,
    pub trials: u64,
    /// Estimated `E[⟨x,u⟩u]` with per-coordinate standard errors.
    pub mean: Vec<f64>,
    pub mean_stderr: Vec<f64>,
    pub target_mean: Vec<f64>,
    /// Estimated `E[‖⟨x,u⟩u‖²]` with its standard error.
    pub second_moment: f64,
    pub second_stderr: f64,
    pub target_second: f64,
}

impl MomentReport {
    /// Largest coordinate deviation of the mean, in standard errors.
    pub fn mean_sigmas(&self) -> f64 {
        self.mean
            .iter()
            .zip(&self.target_mean)
            .zip(&self.mean_stderr)
            .map(|((est, tgt), se)| (est - tgt).abs() / se.max(1e-300))
            .fold(0.0, f64::max)
    }

    /// Deviation of the second moment, in standard errors.
    pub fn second_sigmas(&self) -> f64 {
        (self.second_moment - self.target_second).abs() / self.second_stderr.max(1e-300)
    }

    /// Both moments within `k` standard errors of their targets.
    pub fn within(&self, k: f64) -> bool {
        self.mean_sigmas() <= k && self.second_sigmas() <= k
    }
}

/// Estimates `E[⟨x,u⟩u]` and `E[‖⟨x,u⟩u‖²]` by Monte-Carlo and pairs them
/// with the closed-form targets for the sampler. Requires `x ≠ 0` and at
/// least 10⁴ trials.
pub fn check_moments(sampler: SamplerKind, x: &[f64], trials: u64, seed: u64) -> MomentReport {
    assert!(trials >= 10_000, "moment checks need at least 1e4 trials");
    assert!(norm_sq(x) > 0.0, "moment identities are stated for x != 0");
    let n = x.len();
    let nf = n as f64;
    let mut dirs = DirectionSampler::new(sampler, n, seed);
    let mut u = vec![0.0; n];
    let mut sum = vec![0.0; n];
    let mut sum_sq = vec![0.0; n];
    let mut s2_sum = 0.0;
    let mut s2_sum_sq = 0.0;
    for _ in 0..trials {
        dirs.sample_into(&mut u);
        let s = dot(x, &u);
        for i in 0..n {
            let v = s * u[i];
            sum[i] += v;
            sum_sq[i] += v * v;
        }
        let s2 = s * s * norm_sq(&u);
        s2_sum += s2;
        s2_sum_sq += s2 * s2;
    }
    let t = trials as f64;
    let mean: Vec<f64> = sum.iter().map(|v| v / t).collect();
    let mean_stderr: Vec<f64> = sum_sq
        .iter()
        .zip(&mean)
        .map(|(sq, m)| ((sq / t - m * m).max(0.0) / t).sqrt())
        .collect();
    let second_moment = s2_sum / t;
    let second_stderr =
        ((s2_sum_sq / t - second_moment * second_moment).max(0.0) / t).sqrt();
    let (target_mean, target_second) = match sampler {
        SamplerKind::Sphere | SamplerKind::Discrete => {
            (x.iter().map(|v| v / nf).collect(), norm_sq(x) / nf)
        }
        SamplerKind::Gaussian => (x.to_vec(), (nf + 2.0) * norm_sq(x)),
    };
    MomentReport {
        sampler,
        trials,
        mean,
        mean_stderr,
        target_mean,
        second_moment,
        second_stderr,
        target_second,
    }
}

/// Exact projection moments for signed-axis directions, by literal
/// enumeration of all `2n` equally likely atoms `±eᵢ`.
pub fn signed_unit_exact(x: &[f64]) -> (Vec<f64>, f64) {
    let n = x.len();
    let weight = 1.0 / (2.0 * n as f64);
    let mut mean = vec![0.0; n];
    let mut second = 0.0;
    for i in 0..n {
        for sign in [1.0, -1.0] {
            // u = sign·eᵢ, so ⟨x,u⟩ = sign·xᵢ and ⟨x,u⟩u has one nonzero
            // coordinate sign²·xᵢ = xᵢ.
            let s = sign * x[i];
            mean[i] += weight * s * sign;
            second += weight * s * s;
        }
    }
    (mean, second)
}

/// First four sample moments of a standard normal scalar, with standard
/// errors (targets: 0, 1, 0, 3).
#[derive(Debug, Clone, Copy)]
pub struct ScalarMoments {
    pub moments: [f64; 4],
    pub stderr: [f64; 4],
    pub trials: u64,
}

impl ScalarMoments {
    pub const TARGETS: [f64; 4] = [0.0, 1.0, 0.0, 3.0];

    pub fn max_sigmas(&self) -> f64 {
        self.moments
            .iter()
            .zip(Self::TARGETS)
            .zip(self.stderr)
            .map(|((m, t), se)| (m - t).abs() / se.max(1e-300))
            .fold(0.0, f64::max)
    }
}

pub fn scalar_normal_moments(trials: u64, seed: u64) -> ScalarMoments {
    assert!(trials >= 10_000);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sums = [0.0f64; 4];
    let mut sums_sq = [0.0f64; 4];
    for _ in 0..trials {
        let z: f64 = rng.sample(StandardNormal);
        let mut p = 1.0;
        for k in 0..4 {
            p *= z;
            sums[k] += p;
            sums_sq[k] += p * p;
        }
    }
    let t = trials as f64;
    let mut moments = [0.0; 4];
    let mut stderr = [0.0; 4];
    for k in 0..4 {
        moments[k] = sums[k] / t;
        stderr[k] = ((sums_sq[k] / t - moments[k] * moments[k]).max(0.0) / t).sqrt();
    }
    ScalarMoments { moments, stderr, trials }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signed_axis_enumeration_matches_hand_values() {
        let (mean, second) = signed_unit_exact(&[3.0, 4.0]);
        assert!((mean[0] - 1.5).abs() < 1e-12);
        assert!((mean[1] - 2.0).abs() < 1e-12);
        assert!((second - 12.5).abs() < 1e-12);
    }

    #[test]
    fn signed_axis_enumeration_matches_the_formulas_in_any_dimension() {
        let x = [0.5, -2.0, 1.0, 7.0, -0.25];
        let n = x.len() as f64;
        let (mean, second) = signed_unit_exact(&x);
        for (mi, xi) in mean.iter().zip(&x) {
            assert!((mi - xi / n).abs() < 1e-12);
        }
        assert!((second - norm_sq(&x) / n).abs() < 1e-12);
    }

    #[test]
    fn sphere_monte_carlo_agrees_with_the_projection_identities() {
        let x = [1.0, -2.0, 0.5, 3.0, -1.0, 0.25, 2.0, -0.5, 1.5, 0.75];
        let report = check_moments(SamplerKind::Sphere, &x, 100_000, 11);
        assert!(report.within(4.0), "mean {}σ second {}σ", report.mean_sigmas(), report.second_sigmas());
    }

    #[test]
    fn gaussian_second_moment_reproduces_the_n_plus_2_factor() {
        let x = [1.0, 0.0, 0.0, 0.0, 0.0];
        let report = check_moments(SamplerKind::Gaussian, &x, 200_000, 13);
        assert!((report.target_second - 7.0).abs() < 1e-12);
        assert!(report.within(4.0), "second {} ({}σ)", report.second_moment, report.second_sigmas());
    }

    #[test]
    fn discrete_monte_carlo_matches_its_exact_enumeration() {
        let x = [2.0, -1.0, 0.5, 4.0];
        let report = check_moments(SamplerKind::Discrete, &x, 100_000, 17);
        let (exact_mean, exact_second) = signed_unit_exact(&x);
        assert_eq!(report.target_mean, exact_mean);
        assert!((report.target_second - exact_second).abs() < 1e-12);
        assert!(report.within(4.0));
    }

    #[test]
    fn estimates_scale_bilinearly_under_common_draws() {
        let x = [1.0, -0.5, 2.0];
        let a = check_moments(SamplerKind::Sphere, &x, 20_000, 23);
        let scaled: Vec<f64> = x.iter().map(|v| 3.0 * v).collect();
        let b = check_moments(SamplerKind::Sphere, &scaled, 20_000, 23);
        for (ai, bi) in a.mean.iter().zip(&b.mean) {
            assert!((3.0 * ai - bi).abs() < 1e-12);
        }
        assert!((9.0 * a.second_moment - b.second_moment).abs() < 1e-9 * b.second_moment.abs());
    }

    #[test]
    fn scalar_normal_moments_hit_their_targets() {
        let m = scalar_normal_moments(200_000, 29);
        assert!(m.max_sigmas() <= 4.0, "worst deviation {}σ", m.max_sigmas());
    }
}
