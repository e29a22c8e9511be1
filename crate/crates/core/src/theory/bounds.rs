//! Closed-form convergence-rate bounds for random pursuit, and the
//! strong-convexity sandwich inequality.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::objectives::ObjectiveSpec;
use crate::vecmath::{dist_sq, norm_sq};

use super::TheoryError;

/// Which expected-gap bound to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RateBound {
    /// Strongly convex objectives:
    /// `gap₀·(1 − m/(L₁n))^N + L₁²nμ²/(2m)`.
    StronglyConvex,
    /// Objectives that are strongly convex only near the optimum; the linear
    /// factor weakens to `(1 − m/(4L₁n))^N` and the additive term to
    /// `2L₁²nμ²/m`.
    LocallyStronglyConvex,
    /// Merely convex objectives with a bounded level set of radius `R`:
    /// `Q/(N+1) + N·L₁μ²/2` with `Q = max(2nL₁R², gap₀)`.
    ConvexBoundedLevelSet,
}

/// Evaluates the selected bound on `E[f(x_N)] − f*` for a run of `n_iters`
/// iterations starting `f0_gap` above the optimum.
///
/// `n_iters` is real-valued so that analytic minimizers over `N` can be
/// evaluated exactly.
pub fn rate_bound(
    kind: RateBound,
    spec: &ObjectiveSpec,
    f0_gap: f64,
    n_iters: f64,
    mu: f64,
) -> Result<f64, TheoryError> {
    let n = spec.dim as f64;
    let l1 = spec.l1;
    match kind {
        RateBound::StronglyConvex | RateBound::LocallyStronglyConvex => {
            if !(spec.m > 0.0) {
                return Err(TheoryError::Inapplicable(format!(
                    "strong-convexity rate bound needs m > 0, but `{}` has m = {}",
                    spec.name, spec.m
                )));
            }
            let (decay, additive) = match kind {
                RateBound::StronglyConvex => (
                    1.0 - spec.m / (l1 * n),
                    l1 * l1 * n * mu * mu / (2.0 * spec.m),
                ),
                _ => (
                    1.0 - spec.m / (4.0 * l1 * n),
                    2.0 * l1 * l1 * n * mu * mu / spec.m,
                ),
            };
            Ok(f0_gap * decay.powf(n_iters) + additive)
        }
        RateBound::ConvexBoundedLevelSet => {
            if !spec.convex {
                return Err(TheoryError::Inapplicable(format!(
                    "convex rate bound does not apply to non-convex `{}`",
                    spec.name
                )));
            }
            let q = convex_q(spec, f0_gap);
            Ok(q / (n_iters + 1.0) + n_iters * l1 * mu * mu / 2.0)
        }
    }
}

/// The constant `Q = max(2nL₁R², gap₀)` of the convex bound.
pub fn convex_q(spec: &ObjectiveSpec, f0_gap: f64) -> f64 {
    (2.0 * spec.dim as f64 * spec.l1 * spec.r2).max(f0_gap)
}

/// Iteration count minimizing the convex bound for a given oracle accuracy:
/// `N* = √(2Q/(L₁μ²))`; the bound value there is at most `μ·√(2QL₁)`.
pub fn optimal_iterations(q: f64, l1: f64, mu: f64) -> f64 {
    (2.0 * q / (l1 * mu * mu)).sqrt()
}

/// Worst-case violation of the strong-convexity sandwich
/// `m/2·‖x−x*‖² ≤ f(x)−f* ≤ ‖∇f(x)‖²/(2m)` over random points.
#[derive(Debug, Clone, Copy)]
pub struct SandwichReport {
    /// Largest relative amount by which the lower bound exceeded the gap.
    pub worst_lower: f64,
    /// Largest relative amount by which the gap exceeded the upper bound.
    pub worst_upper: f64,
    pub points: u64,
}

impl SandwichReport {
    pub fn holds(&self, tol: f64) -> bool {
        self.worst_lower <= tol && self.worst_upper <= tol
    }
}

/// Samples Gaussian points around the optimum and evaluates both sides of
/// the sandwich inequality. Violations are reported relative to the local
/// value scale, so the tolerance is a relative one.
pub fn check_sandwich(
    spec: &ObjectiveSpec,
    points: u64,
    seed: u64,
) -> Result<SandwichReport, TheoryError> {
    if !(spec.m > 0.0 && spec.strongly_convex) {
        return Err(TheoryError::Inapplicable(format!(
            "sandwich inequality needs strong convexity, but `{}` has m = {}",
            spec.name, spec.m
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut x = vec![0.0; spec.dim];
    let mut worst_lower = 0.0f64;
    let mut worst_upper = 0.0f64;
    for _ in 0..points {
        for (xi, ci) in x.iter_mut().zip(&spec.x_star) {
            let z: f64 = rng.sample(StandardNormal);
            *xi = ci + 4.0 * z;
        }
        let gap = spec.eval(&x) - spec.f_star;
        let lower = 0.5 * spec.m * dist_sq(&x, &spec.x_star);
        let upper = norm_sq(&spec.grad(&x).expect("benchmark gradient")) / (2.0 * spec.m);
        let scale = gap.abs().max(lower.abs()).max(1.0);
        worst_lower = worst_lower.max((lower - gap) / scale);
        worst_upper = worst_upper.max((gap - upper) / scale);
    }
    Ok(SandwichReport { worst_lower, worst_upper, points })
}
