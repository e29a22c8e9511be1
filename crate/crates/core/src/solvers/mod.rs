//! Optimization algorithms behind a common [`Solver`] trait.
//!
//! Every algorithm is a stateless strategy object registered by name in
//! [`builtin_solvers`]; a run is fully described by an [`ObjectiveSpec`] and a
//! [`SolverConfig`] and produces a [`RunTrace`]. Identical inputs produce
//! bitwise-identical traces: all randomness comes from the config seed.
//!
//! Included algorithms:
//!
//! | name    | scheme                                            | oracle    |
//! |---------|---------------------------------------------------|-----------|
//! | `rp`    | random pursuit (line search along random rays)    | values    |
//! | `arp`   | accelerated random pursuit (two-sequence momentum)| values    |
//! | `rg`    | random gradient (finite-difference step)          | values    |
//! | `fg`    | accelerated random gradient                       | values    |
//! | `es`    | (1+1) evolution strategy, adaptive step           | values    |
//! | `gm`    | gradient method, fixed step 1/L₁                  | gradients |
//! | `gm-ls` | gradient method with line search                  | both      |

mod accelerated;
mod es;
mod gradient;
mod rg;
mod rp;

pub use accelerated::{AcceleratedRandomPursuit, FastRandomGradient};
pub use es::{calibrate_sigma0, step_factors, EvolutionStrategy};
pub use gradient::{GradientLineSearch, GradientMethod};
pub use rg::RandomGradient;
pub use rp::RandomPursuit;

use std::fmt;
use std::str::FromStr;

use crate::linesearch::{LineSearchConfig, LineSearchError};
use crate::objectives::ObjectiveSpec;
use crate::sampling::SamplerKind;

/// Initial step size policy for the evolution strategy.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Sigma0 {
    /// Calibrate so the empirical improvement probability at the start point
    /// matches the target success probability.
    Auto,
    Fixed(f64),
}

#[derive(Debug, thiserror::Error)]
#[error("invalid sigma0 `{0}` (expected `auto` or a positive number)")]
pub struct BadSigma0(String);

impl FromStr for Sigma0 {
    type Err = BadSigma0;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "auto" {
            return Ok(Sigma0::Auto);
        }
        match s.parse::<f64>() {
            Ok(v) if v > 0.0 && v.is_finite() => Ok(Sigma0::Fixed(v)),
            _ => Err(BadSigma0(s.to_string())),
        }
    }
}

impl fmt::Display for Sigma0 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sigma0::Auto => f.write_str("auto"),
            Sigma0::Fixed(v) => write!(f, "{v}"),
        }
    }
}

/// Everything a solver run depends on besides the objective itself.
#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolverConfig {
    /// Start point; `None` means the origin.
    pub x0: Option<Vec<f64>>,
    /// Hard iteration cap; runs that neither converge nor fail end here.
    pub max_iters: u64,
    pub seed: u64,
    /// Direction distribution for `rp`/`arp`.
    pub sampler: SamplerKind,
    /// Direction distribution for the finite-difference schemes `rg`/`fg`.
    pub rg_sampler: SamplerKind,
    /// Line-search accuracy (for `rp`/`arp`/`gm-ls`) and finite-difference
    /// step (for `rg`/`fg`).
    pub mu: f64,
    pub ls: LineSearchConfig,
    /// Evolution-strategy initial step size.
    pub sigma0: Sigma0,
    /// Evolution-strategy target success probability.
    pub p_target: f64,
    /// Stop once `f(x) − f*` falls to this value (requires a finite known
    /// `f_star`); `None` always runs `max_iters` iterations.
    pub target_gap: Option<f64>,
    /// Keep every iterate in the trace, not just objective values.
    pub store_iterates: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            x0: None,
            max_iters: 100_000,
            seed: 0,
            sampler: SamplerKind::Sphere,
            rg_sampler: SamplerKind::Sphere,
            mu: 1e-5,
            ls: LineSearchConfig::default(),
            sigma0: Sigma0::Auto,
            p_target: 0.27,
            target_gap: None,
            store_iterates: false,
        }
    }
}

/// Record of one solver run.
///
/// `values[k]` is the objective at iterate `k` (so `values[0]` is the start
/// value) measured by uncharged monitoring evaluations; `fes[k]` is the
/// cumulative number of charged oracle evaluations after `k` iterations, with
/// `fes[0] = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct RunTrace {
    pub values: Vec<f64>,
    pub fes: Vec<u64>,
    pub iterates: Option<Vec<Vec<f64>>>,
    pub final_x: Vec<f64>,
    /// The evolution strategy records its (possibly calibrated) initial step.
    pub sigma0: Option<f64>,
}

impl RunTrace {
    /// Number of iterations performed.
    pub fn iterations(&self) -> u64 {
        (self.values.len() - 1) as u64
    }

    /// Total charged function evaluations.
    pub fn total_fes(&self) -> u64 {
        *self.fes.last().unwrap()
    }

    pub fn final_value(&self) -> f64 {
        *self.values.last().unwrap()
    }

    /// Earliest iteration whose value is at or below `threshold`, if any.
    pub fn first_hit(&self, threshold: f64) -> Option<usize> {
        self.values.iter().position(|v| *v <= threshold)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum SolverError {
    #[error("unknown solver `{0}`")]
    UnknownSolver(String),
    #[error("solver `{solver}` needs a gradient, but objective `{objective}` does not provide one")]
    NeedsGradient { solver: &'static str, objective: String },
    #[error("solver `{solver}` needs a strong-convexity modulus m > 0, but objective `{objective}` has m = {m}")]
    NeedsPositiveModulus { solver: &'static str, objective: String, m: f64 },
    #[error("line search failed at iteration {iter}: {source}")]
    LineSearch {
        iter: u64,
        #[source]
        source: LineSearchError,
    },
    #[error("objective value became non-finite at iteration {iter}")]
    NonFinite { iter: u64 },
    #[error("step-size calibration failed: {0}")]
    Calibration(String),
    #[error("invalid solver configuration: {0}")]
    BadConfig(String),
}

/// A runnable optimization algorithm.
pub trait Solver: Send + Sync {
    /// Registry name, as accepted on the command line.
    fn name(&self) -> &'static str;

    fn description(&self) -> &'static str;

    /// Whether the algorithm calls the gradient oracle.
    fn needs_gradient(&self) -> bool {
        false
    }

    /// Whether the algorithm requires a strong-convexity modulus `m > 0`.
    fn needs_positive_modulus(&self) -> bool {
        false
    }

    /// Whether reported iteration counts are conventionally divided by the
    /// dimension (true for the randomized schemes, false for the
    /// deterministic gradient methods).
    fn iterations_scale_with_dim(&self) -> bool {
        true
    }

    fn run(&self, spec: &ObjectiveSpec, cfg: &SolverConfig) -> Result<RunTrace, SolverError>;
}

/// All built-in algorithms, in canonical order.
pub fn builtin_solvers() -> Vec<Box<dyn Solver>> {
    vec![
        Box::new(RandomPursuit),
        Box::new(AcceleratedRandomPursuit),
        Box::new(RandomGradient),
        Box::new(FastRandomGradient),
        Box::new(EvolutionStrategy),
        Box::new(GradientMethod),
        Box::new(GradientLineSearch),
    ]
}

/// Looks up a built-in algorithm by its registry name.
pub fn solver_by_name(name: &str) -> Result<Box<dyn Solver>, SolverError> {
    builtin_solvers()
        .into_iter()
        .find(|s| s.name() == name)
        .ok_or_else(|| SolverError::UnknownSolver(name.to_string()))
}

/// Resolves the configured start point, defaulting to the origin.
pub(crate) fn init_x0(spec: &ObjectiveSpec, cfg: &SolverConfig) -> Result<Vec<f64>, SolverError> {
    match &cfg.x0 {
        None => Ok(vec![0.0; spec.dim]),
        Some(x0) => {
            if x0.len() != spec.dim {
                return Err(SolverError::BadConfig(format!(
                    "x0 has dimension {} but objective `{}` has dimension {}",
                    x0.len(),
                    spec.name,
                    spec.dim
                )));
            }
            Ok(x0.clone())
        }
    }
}

/// Shared trace bookkeeping: value/FES recording, optional iterate storage,
/// and target-gap stopping.
pub(crate) struct TraceRecorder {
    values: Vec<f64>,
    fes: Vec<u64>,
    iterates: Option<Vec<Vec<f64>>>,
    /// Absolute objective value at which to stop, if any.
    stop_at: Option<f64>,
    done: bool,
}

impl TraceRecorder {
    pub(crate) fn new(
        spec: &ObjectiveSpec,
        cfg: &SolverConfig,
        x0: &[f64],
        f0: f64,
    ) -> Result<Self, SolverError> {
        let stop_at = match cfg.target_gap {
            None => None,
            Some(gap) => {
                if !spec.f_star.is_finite() {
                    return Err(SolverError::BadConfig(format!(
                        "target_gap stopping needs a known optimum, but `{}` has f_star = {}",
                        spec.name, spec.f_star
                    )));
                }
                if !(gap >= 0.0) {
                    return Err(SolverError::BadConfig(format!(
                        "target_gap must be nonnegative, got {gap}"
                    )));
                }
                Some(spec.f_star + gap)
            }
        };
        let mut rec = Self {
            values: Vec::new(),
            fes: Vec::new(),
            iterates: cfg.store_iterates.then(Vec::new),
            stop_at,
            done: false,
        };
        rec.push(x0, f0, 0);
        Ok(rec)
    }

    fn push(&mut self, x: &[f64], f: f64, fes: u64) {
        self.values.push(f);
        self.fes.push(fes);
        if let Some(iterates) = &mut self.iterates {
            iterates.push(x.to_vec());
        }
        if let Some(stop) = self.stop_at {
            if f <= stop {
                self.done = true;
            }
        }
    }

    /// Records one iterate; returns `true` when the target gap is reached.
    pub(crate) fn record(&mut self, x: &[f64], f: f64, fes: u64) -> bool {
        self.push(x, f, fes);
        self.done
    }

    /// Whether the start point already satisfied the target.
    pub(crate) fn done(&self) -> bool {
        self.done
    }

    pub(crate) fn finish(self, final_x: Vec<f64>, sigma0: Option<f64>) -> RunTrace {
        RunTrace {
            values: self.values,
            fes: self.fes,
            iterates: self.iterates,
            final_x,
            sigma0,
        }
    }
}
