//! Benchmark harness: repeated seeded runs, accuracy-ladder statistics, and
//! result export.
//!
//! The protocol: every run starts at the origin, repetition `r` uses seed
//! `base_seed + r`, and a run on objective `f` stops once
//! `f(x) − f* ≤ acc·S` for the tightest requested relative accuracy `acc`
//! (where `S` is the objective's scale) or at the iteration cap. For each
//! ladder entry the first-crossing iteration (ITS) and charged evaluations
//! (FES) are recorded; repetitions that never reach an entry are excluded
//! from that entry's statistics and counted in a warning instead.
//!
//! Iteration counts of the randomized schemes are reported divided by the
//! dimension; the deterministic gradient methods report absolute counts.
//! Evaluation counts are always divided by the dimension.

mod experiment;
mod export;
mod sweep;

pub use experiment::{run_experiment, AggregateRow, AlgoResult, ExperimentResult, RunSummary};
pub use export::{csv_string, markdown_table, plot_data_csv, write_file};
pub use sweep::{dim_scan, dim_scan_csv, mu_sweep, mu_sweep_csv, DimScanRow, MuSweepRow};

use crate::objectives::{BenchmarkName, ObjectiveError, ObjectiveSpec};
use crate::solvers::{SolverConfig, SolverError};

/// Terminal relative accuracy of the default ladder.
pub const DEFAULT_TARGET_ACCURACY: f64 = 1.91e-6;

/// Iteration cap per dimension for the randomized schemes.
pub const RANDOMIZED_CAP_PER_DIM: u64 = 10_000;

/// Iteration cap for the deterministic gradient schemes.
pub const GRADIENT_CAP: u64 = 1_000_000;

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error("invalid experiment configuration: {0}")]
    BadConfig(String),
    #[error(transparent)]
    Objective(#[from] ObjectiveError),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

/// Builds the default accuracy ladder: successive halvings of 0.5 down to
/// (but not past) `target`, with `target` itself as the final entry.
///
/// For the default target this yields 19 entries `2⁻¹, …, 2⁻¹⁸, 1.91e-6`
/// (the last halving 2⁻¹⁹ ≈ 1.9073e-6 is replaced by the slightly looser
/// conventional terminal value).
pub fn default_ladder(target: f64) -> Vec<f64> {
    assert!(target > 0.0 && target < 0.5);
    let mut ladder = Vec::new();
    let mut acc = 0.5;
    while acc > target {
        ladder.push(acc);
        acc /= 2.0;
    }
    if acc == target {
        ladder.push(acc);
    } else {
        ladder.push(target);
    }
    ladder
}

/// Full description of one benchmark experiment.
#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub function: BenchmarkName,
    pub dim: usize,
    /// Curvature overrides; `None` uses the conventional per-function values.
    pub l1: Option<f64>,
    pub m: Option<f64>,
    /// Registry names of the algorithms to run.
    pub algorithms: Vec<String>,
    pub repetitions: u64,
    /// Strictly decreasing relative accuracies; empty means the default
    /// ladder ending at [`DEFAULT_TARGET_ACCURACY`].
    pub accuracy_ladder: Vec<f64>,
    pub base_seed: u64,
    /// Template for per-run solver settings. The seed, iteration cap, and
    /// stopping target are overridden per repetition.
    pub solver: SolverConfig,
    /// Iteration-cap overrides (defaults: 10⁴·dim randomized, 10⁶ gradient).
    pub cap_randomized: Option<u64>,
    pub cap_gradient: Option<u64>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            function: BenchmarkName::Sphere,
            dim: 64,
            l1: None,
            m: None,
            algorithms: vec![
                "rp".into(),
                "arp".into(),
                "rg".into(),
                "fg".into(),
                "es".into(),
                "gm".into(),
                "gm-ls".into(),
            ],
            repetitions: 25,
            accuracy_ladder: Vec::new(),
            base_seed: 0,
            solver: SolverConfig::default(),
            cap_randomized: None,
            cap_gradient: None,
        }
    }
}

impl ExperimentConfig {
    /// The ladder actually used: the configured one, or the default.
    pub fn ladder(&self) -> Vec<f64> {
        if self.accuracy_ladder.is_empty() {
            default_ladder(DEFAULT_TARGET_ACCURACY)
        } else {
            self.accuracy_ladder.clone()
        }
    }

    /// Builds the objective this experiment runs on.
    pub fn objective(&self) -> Result<ObjectiveSpec, HarnessError> {
        let spec = match (self.l1, self.m) {
            (None, None) => crate::objectives::protocol_benchmark(self.function, self.dim)?,
            _ => {
                let proto = crate::objectives::protocol_benchmark(self.function, self.dim)?;
                crate::objectives::make_benchmark(
                    self.function,
                    self.dim,
                    self.l1.unwrap_or(proto.l1),
                    self.m.unwrap_or(proto.m),
                )?
            }
        };
        Ok(spec)
    }

    pub(crate) fn validate(&self) -> Result<(), HarnessError> {
        if self.repetitions < 1 {
            return Err(HarnessError::BadConfig("repetitions must be at least 1".into()));
        }
        if self.algorithms.is_empty() {
            return Err(HarnessError::BadConfig("no algorithms selected".into()));
        }
        let ladder = self.ladder();
        for pair in ladder.windows(2) {
            if pair[1] >= pair[0] {
                return Err(HarnessError::BadConfig(format!(
                    "accuracy ladder must be strictly decreasing, got {} then {}",
                    pair[0], pair[1]
                )));
            }
        }
        if ladder.iter().any(|a| !(*a > 0.0 && *a <= 1.0)) {
            return Err(HarnessError::BadConfig(
                "accuracy ladder entries must lie in (0, 1]".into(),
            ));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_ladder_has_nineteen_entries_ending_at_the_conventional_target() {
        let ladder = default_ladder(DEFAULT_TARGET_ACCURACY);
        assert_eq!(ladder.len(), 19);
        assert_eq!(ladder[0], 0.5);
        assert_eq!(ladder[17], 2f64.powi(-18));
        assert_eq!(ladder[18], 1.91e-6);
        for pair in ladder.windows(2) {
            assert!(pair[1] < pair[0]);
        }
    }

    #[test]
    fn exact_power_of_two_targets_terminate_the_ladder_exactly() {
        let ladder = default_ladder(2f64.powi(-10));
        assert_eq!(ladder.len(), 10);
        assert_eq!(*ladder.last().unwrap(), 2f64.powi(-10));
    }

    #[test]
    fn config_validation_catches_bad_ladders_and_empty_selections() {
        let ok = ExperimentConfig::default();
        assert!(ok.validate().is_ok());
        let bad = ExperimentConfig {
            accuracy_ladder: vec![0.5, 0.5],
            ..ExperimentConfig::default()
        };
        assert!(bad.validate().is_err());
        let empty = ExperimentConfig { algorithms: vec![], ..ExperimentConfig::default() };
        assert!(empty.validate().is_err());
        let zero = ExperimentConfig { repetitions: 0, ..ExperimentConfig::default() };
        assert!(zero.validate().is_err());
    }

    #[test]
    fn curvature_overrides_flow_into_the_objective() {
        let cfg = ExperimentConfig {
            function: BenchmarkName::Ellipsoid,
            dim: 8,
            l1: Some(100.0),
            ..ExperimentConfig::default()
        };
        let spec = cfg.objective().unwrap();
        assert_eq!(spec.l1, 100.0);
        // Non-protocol curvature falls back to the generic scale rule.
        assert_eq!(spec.scale, 0.5 * 100.0 * 8.0);
    }

    #[test]
    fn config_round_trips_through_toml() {
        let cfg = ExperimentConfig {
            function: BenchmarkName::NesterovStrong,
            dim: 16,
            repetitions: 5,
            base_seed: 42,
            ..ExperimentConfig::default()
        };
        let text = toml::to_string(&cfg).unwrap();
        let back: ExperimentConfig = toml::from_str(&text).unwrap();
        assert_eq!(back.dim, 16);
        assert_eq!(back.repetitions, 5);
        assert_eq!(back.base_seed, 42);
        assert_eq!(back.function, BenchmarkName::NesterovStrong);
    }
}
