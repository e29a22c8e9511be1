//! (1+1) evolution strategy with multiplicative step-size adaptation.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::objectives::{EvalCounter, ObjectiveSpec};

use super::{init_x0, RunTrace, Sigma0, Solver, SolverConfig, SolverError, TraceRecorder};

/// Step-size multipliers `(c_success, c_failure)` for a target success
/// probability `p`: the step grows by `c_s = e^{1/3}` on success and shrinks
/// by `c_f = c_s · e^{−p/(1−p)}` on failure, so rarer target successes imply
/// more aggressive shrinking.
pub fn step_factors(p: f64) -> (f64, f64) {
    let c_s = (1.0 / 3.0f64).exp();
    (c_s, c_s * (-p / (1.0 - p)).exp())
}

/// Elitist random search: propose `x + σ·u` with Gaussian `u`, accept iff the
/// objective does not increase, and grow/shrink `σ` on success/failure.
///
/// One charged evaluation per iteration (the incumbent's value is reused), so
/// iteration and evaluation counts coincide. Acceptance compares values only,
/// making the trajectory invariant under strictly monotone transformations.
pub struct EvolutionStrategy;

impl Solver for EvolutionStrategy {
    fn name(&self) -> &'static str {
        "es"
    }

    fn description(&self) -> &'static str {
        "(1+1) evolution strategy with multiplicative step-size adaptation"
    }

    fn run(&self, spec: &ObjectiveSpec, cfg: &SolverConfig) -> Result<RunTrace, SolverError> {
        if !(cfg.p_target > 0.0 && cfg.p_target < 0.5) {
            return Err(SolverError::BadConfig(format!(
                "target success probability must lie in (0, 0.5), got {}",
                cfg.p_target
            )));
        }
        let mut x = init_x0(spec, cfg)?;
        let sigma0 = match cfg.sigma0 {
            Sigma0::Fixed(s) if s > 0.0 && s.is_finite() => s,
            Sigma0::Fixed(s) => {
                return Err(SolverError::BadConfig(format!("sigma0 must be positive, got {s}")))
            }
            // Calibration draws are derived from the run seed so that the
            // whole run — calibration included — replays from the config.
            Sigma0::Auto => calibrate_sigma0(spec, &x, cfg.p_target, 2000, cfg.seed)?,
        };
        let (c_s, c_f) = step_factors(cfg.p_target);
        let mut sigma = sigma0;
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let mut y = vec![0.0; spec.dim];
        let mut counter = EvalCounter::new();
        let mut fx = spec.eval(&x);
        let mut rec = TraceRecorder::new(spec, cfg, &x, fx)?;
        if !rec.done() {
            for k in 0..cfg.max_iters {
                for (yi, xi) in y.iter_mut().zip(&x) {
                    let z: f64 = rng.sample(StandardNormal);
                    *yi = xi + sigma * z;
                }
                let fy = spec.eval_counted(&y, &mut counter);
                if fy.is_nan() {
                    return Err(SolverError::NonFinite { iter: k });
                }
                if fy <= fx {
                    x.copy_from_slice(&y);
                    fx = fy;
                    sigma *= c_s;
                } else {
                    sigma *= c_f;
                }
                if rec.record(&x, fx, counter.count()) {
                    break;
                }
            }
        }
        Ok(rec.finish(x, Some(sigma0)))
    }
}

/// Finds a step size whose empirical improvement probability at `x0` matches
/// `p` within ±0.02, by bisection over σ.
///
/// Each probability estimate reuses the same `trials` Gaussian perturbations
/// (common random numbers, reseeded from `seed`), which makes the empirical
/// success curve exactly non-increasing in σ on quasiconvex objectives, so
/// the bisection is well behaved. Calibration evaluations are treated as
/// offline preprocessing and are not charged to any budget.
///
/// Fails when no step size attains the target probability — for instance
/// when `x0` is already optimal, so that no perturbation can improve.
pub fn calibrate_sigma0(
    spec: &ObjectiveSpec,
    x0: &[f64],
    p: f64,
    trials: u64,
    seed: u64,
) -> Result<f64, SolverError> {
    if trials < 1000 {
        return Err(SolverError::BadConfig(format!(
            "sigma0 calibration needs at least 1000 trials, got {trials}"
        )));
    }
    if !(p > 0.0 && p < 0.5) {
        return Err(SolverError::BadConfig(format!(
            "target success probability must lie in (0, 0.5), got {p}"
        )));
    }
    let f0 = spec.eval(x0);
    let mut y = vec![0.0; spec.dim];
    let mut success_rate = |sigma: f64| -> f64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut hits = 0u64;
        for _ in 0..trials {
            for (yi, xi) in y.iter_mut().zip(x0) {
                let z: f64 = rng.sample(StandardNormal);
                *yi = xi + sigma * z;
            }
            if spec.eval(&y) <= f0 {
                hits += 1;
            }
        }
        hits as f64 / trials as f64
    };

    // Anchor below: shrink until improvements are frequent enough.
    let mut lo = 1.0;
    let mut steps = 0;
    while success_rate(lo) < p {
        lo /= 2.0;
        steps += 1;
        if steps > 60 {
            return Err(SolverError::Calibration(format!(
                "no step size reaches success probability {p} at the start point \
                 (is it already optimal?)"
            )));
        }
    }
    // Anchor above: grow until improvements become too rare.
    let mut hi = 2.0 * lo;
    steps = 0;
    while success_rate(hi) >= p {
        hi *= 2.0;
        steps += 1;
        if steps > 60 {
            return Err(SolverError::Calibration(format!(
                "success probability never drops below {p}; objective appears flat"
            )));
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let rate = success_rate(mid);
        if (rate - p).abs() <= 0.02 {
            return Ok(mid);
        }
        if rate > p {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-12 * hi {
            break;
        }
    }
    Err(SolverError::Calibration(format!(
        "bisection could not pin a step size with success probability {p} ± 0.02"
    )))
}
