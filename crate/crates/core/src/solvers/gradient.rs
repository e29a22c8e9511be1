//! Deterministic gradient baselines: fixed-step descent and steepest descent
//! with the line-search oracle.

use crate::linesearch::line_search;
use crate::objectives::{EvalCounter, ObjectiveSpec};
use crate::vecmath::{axpy, norm};

use super::{init_x0, RunTrace, Solver, SolverConfig, SolverError, TraceRecorder};

fn require_grad(solver: &'static str, spec: &ObjectiveSpec) -> Result<(), SolverError> {
    if spec.has_grad() {
        Ok(())
    } else {
        Err(SolverError::NeedsGradient { solver, objective: spec.name.clone() })
    }
}

/// Classical gradient method `x ← x − (1/L₁)∇f(x)`.
///
/// Uses only the gradient oracle, so its charged function-evaluation count is
/// zero. Iteration counts are reported absolutely (not per dimension).
pub struct GradientMethod;

impl Solver for GradientMethod {
    fn name(&self) -> &'static str {
        "gm"
    }

    fn description(&self) -> &'static str {
        "gradient method with fixed step 1/L1"
    }

    fn needs_gradient(&self) -> bool {
        true
    }

    fn iterations_scale_with_dim(&self) -> bool {
        false
    }

    fn run(&self, spec: &ObjectiveSpec, cfg: &SolverConfig) -> Result<RunTrace, SolverError> {
        require_grad("gm", spec)?;
        let mut x = init_x0(spec, cfg)?;
        let f0 = spec.eval(&x);
        let mut rec = TraceRecorder::new(spec, cfg, &x, f0)?;
        if !rec.done() {
            for k in 0..cfg.max_iters {
                let g = spec.grad(&x).expect("gradient availability checked above");
                axpy(-1.0 / spec.l1, &g, &mut x);
                let f = spec.eval(&x);
                if f.is_nan() {
                    return Err(SolverError::NonFinite { iter: k });
                }
                if rec.record(&x, f, 0) {
                    break;
                }
            }
        }
        Ok(rec.finish(x, None))
    }
}

/// Steepest descent with the step length chosen by the line-search oracle
/// along the normalized negative gradient.
///
/// Stops early at a zero gradient (already stationary). Charged evaluations
/// are exactly those of the line searches; iteration counts are reported
/// absolutely.
pub struct GradientLineSearch;

impl Solver for GradientLineSearch {
    fn name(&self) -> &'static str {
        "gm-ls"
    }

    fn description(&self) -> &'static str {
        "gradient method with line-search step along the normalized negative gradient"
    }

    fn needs_gradient(&self) -> bool {
        true
    }

    fn iterations_scale_with_dim(&self) -> bool {
        false
    }

    fn run(&self, spec: &ObjectiveSpec, cfg: &SolverConfig) -> Result<RunTrace, SolverError> {
        require_grad("gm-ls", spec)?;
        let mut x = init_x0(spec, cfg)?;
        let mut counter = EvalCounter::new();
        let mut d = vec![0.0; spec.dim];
        let f0 = spec.eval(&x);
        let mut rec = TraceRecorder::new(spec, cfg, &x, f0)?;
        if !rec.done() {
            for k in 0..cfg.max_iters {
                let g = spec.grad(&x).expect("gradient availability checked above");
                let gn = norm(&g);
                if gn <= 1e-300 {
                    break; // stationary point: the search direction is undefined
                }
                for (di, gi) in d.iter_mut().zip(&g) {
                    *di = -gi / gn;
                }
                let ls = line_search(spec, &x, &d, cfg.mu, &cfg.ls, &mut counter)
                    .map_err(|source| SolverError::LineSearch { iter: k, source })?;
                axpy(ls.h, &d, &mut x);
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
