//! Random pursuit: repeated approximate line minimization along random
//! directions.

use crate::linesearch::line_search;
use crate::objectives::{EvalCounter, ObjectiveSpec};
use crate::sampling::DirectionSampler;
use crate::vecmath::axpy;

use super::{init_x0, RunTrace, Solver, SolverConfig, SolverError, TraceRecorder};

/// Derivative-free scheme `x ← x + h·u` where `u` is a random direction and
/// `h` approximately minimizes the objective along it.
///
/// Uses only objective-value comparisons, so its trajectory is invariant
/// under strictly monotone transformations of the objective. All charged
/// evaluations come from the line search.
pub struct RandomPursuit;

impl Solver for RandomPursuit {
    fn name(&self) -> &'static str {
        "rp"
    }

    fn description(&self) -> &'static str {
        "random pursuit: approximate line search along uniformly random directions"
    }

    fn run(&self, spec: &ObjectiveSpec, cfg: &SolverConfig) -> Result<RunTrace, SolverError> {
        let mut x = init_x0(spec, cfg)?;
        let mut counter = EvalCounter::new();
        let mut dirs = DirectionSampler::new(cfg.sampler, spec.dim, cfg.seed);
        let mut u = vec![0.0; spec.dim];
        let f0 = spec.eval(&x);
        let mut rec = TraceRecorder::new(spec, cfg, &x, f0)?;
        if !rec.done() {
            for k in 0..cfg.max_iters {
                dirs.sample_into(&mut u);
                let ls = line_search(spec, &x, &u, cfg.mu, &cfg.ls, &mut counter)
                    .map_err(|source| SolverError::LineSearch { iter: k, source })?;
                axpy(ls.h, &u, &mut x);
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
