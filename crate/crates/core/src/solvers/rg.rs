//! Random gradient method: fixed-step scheme driven by finite-difference
//! directional derivatives along random directions.

use crate::objectives::{EvalCounter, ObjectiveSpec};
use crate::sampling::DirectionSampler;
use crate::vecmath::axpy;

use super::{init_x0, RunTrace, Solver, SolverConfig, SolverError, TraceRecorder};

/// `x ← x − λ·((f(x+μu) − f(x))/μ)·u` with the fixed step `λ = 1/(4(n+4)L₁)`.
///
/// Exactly two charged evaluations per iteration. Unlike the line-search
/// schemes this uses objective value *differences*, so it is not invariant
/// under monotone transformations and has no per-step descent guarantee.
pub struct RandomGradient;

impl Solver for RandomGradient {
    fn name(&self) -> &'static str {
        "rg"
    }

    fn description(&self) -> &'static str {
        "random gradient: fixed-step finite-difference scheme along random directions"
    }

    fn run(&self, spec: &ObjectiveSpec, cfg: &SolverConfig) -> Result<RunTrace, SolverError> {
        if !(cfg.mu > 0.0 && cfg.mu.is_finite()) {
            return Err(SolverError::BadConfig(format!(
                "rg needs a positive finite-difference step mu, got {}",
                cfg.mu
            )));
        }
        let n = spec.dim as f64;
        let step = 1.0 / (4.0 * (n + 4.0) * spec.l1);
        let mu = cfg.mu;
        let mut x = init_x0(spec, cfg)?;
        let mut probe = vec![0.0; spec.dim];
        let mut u = vec![0.0; spec.dim];
        let mut dirs = DirectionSampler::new(cfg.rg_sampler, spec.dim, cfg.seed);
        let mut counter = EvalCounter::new();
        let f0 = spec.eval(&x);
        let mut rec = TraceRecorder::new(spec, cfg, &x, f0)?;
        if !rec.done() {
            for k in 0..cfg.max_iters {
                dirs.sample_into(&mut u);
                let fx = spec.eval_counted(&x, &mut counter);
                for i in 0..spec.dim {
                    probe[i] = x[i] + mu * u[i];
                }
                let fx_mu = spec.eval_counted(&probe, &mut counter);
                let quotient = (fx_mu - fx) / mu;
                axpy(-step * quotient, &u, &mut x);
                let f = spec.eval(&x);
                if f.is_nan() {
                    return Err(SolverError::NonFinite { iter: k });
                }
                if rec.record(&x, f, counter.count()) {
                    break;
                }
            }
        }
        Ok(rec.finish(x, None))
    }
}
