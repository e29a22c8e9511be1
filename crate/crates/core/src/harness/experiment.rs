//! Repeated seeded runs and accuracy-ladder aggregation.

use rayon::prelude::*;

use super::{ExperimentConfig, HarnessError, GRADIENT_CAP, RANDOMIZED_CAP_PER_DIM};
use crate::objectives::ObjectiveSpec;
use crate::solvers::{solver_by_name, Solver, SolverError};

/// Upper bound on stored plot points per run; longer traces are decimated.
const MAX_PLOT_POINTS: u64 = 2000;

/// Relative-gap floor applied before taking log10 for plot data, so runs
/// that hit the optimum exactly stay finite.
const PLOT_GAP_FLOOR: f64 = 1e-16;

/// First-crossing record of a single repetition.
#[derive(Debug, Clone)]
pub struct RunSummary {
    pub seed: u64,
    /// Per ladder entry: `Some((iterations, evaluations))` at the first
    /// iteration whose value closed the gap to `acc·S`, or `None` if the
    /// run ended first.
    pub hits: Vec<Option<(u64, u64)>>,
    /// Whether the final (tightest) ladder entry was reached.
    pub converged: bool,
    /// Decimated `log10((f(x_k) − f*)/S)` samples for plot export.
    pub plot_log10: Vec<f64>,
}

/// All repetitions of one algorithm, plus its averaged convergence curve.
#[derive(Debug, Clone)]
pub struct AlgoResult {
    pub algorithm: String,
    /// Whether reported iteration statistics are divided by the dimension.
    pub its_per_dim: bool,
    pub cap: u64,
    pub reps: Vec<RunSummary>,
    /// Iteration indices of the plot samples (shared by all repetitions).
    pub plot_iterations: Vec<u64>,
    /// Mean over repetitions of the decimated log10 relative gap.
    pub plot_mean_log10: Vec<f64>,
}

/// One statistics row: an (algorithm, accuracy) cell of the results table.
#[derive(Debug, Clone, PartialEq)]
pub struct AggregateRow {
    pub function: String,
    pub n: usize,
    pub algorithm: String,
    pub accuracy: f64,
    pub min_its: f64,
    pub mean_its: f64,
    pub max_its: f64,
    pub min_fes: f64,
    pub mean_fes: f64,
    pub max_fes: f64,
    pub successes: u64,
    pub repetitions: u64,
}

#[derive(Debug, Clone)]
pub struct ExperimentResult {
    pub function: String,
    pub dim: usize,
    pub ladder: Vec<f64>,
    pub rows: Vec<AggregateRow>,
    pub algos: Vec<AlgoResult>,
    /// Skipped algorithm/objective pairings and unconverged-run exclusions.
    pub warnings: Vec<String>,
}

fn stats(values: &[f64]) -> (f64, f64, f64) {
    if values.is_empty() {
        return (f64::NAN, f64::NAN, f64::NAN);
    }
    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    let mut sum = 0.0;
    for &v in values {
        min = min.min(v);
        max = max.max(v);
        sum += v;
    }
    (min, sum / values.len() as f64, max)
}

/// Checks whether `solver` can run on `spec` at all; returns a warning
/// message when the pairing has to be skipped.
fn pairing_obstacle(solver: &dyn Solver, spec: &ObjectiveSpec) -> Option<String> {
    if solver.needs_gradient() && !spec.has_grad() {
        return Some(format!(
            "skipping {}: objective {} exposes no gradient",
            solver.name(),
            spec.name
        ));
    }
    if solver.needs_positive_modulus() && spec.m <= 0.0 {
        return Some(format!(
            "skipping {}: objective {} has no positive strong-convexity modulus",
            solver.name(),
            spec.name
        ));
    }
    None
}

fn run_one_algorithm(
    solver: &dyn Solver,
    spec: &ObjectiveSpec,
    config: &ExperimentConfig,
    ladder: &[f64],
) -> Result<AlgoResult, HarnessError> {
    let cap = if solver.iterations_scale_with_dim() {
        config
            .cap_randomized
            .unwrap_or(RANDOMIZED_CAP_PER_DIM * config.dim as u64)
    } else {
        config.cap_gradient.unwrap_or(GRADIENT_CAP)
    };
    let stride = (cap / MAX_PLOT_POINTS).max(1);
    let plot_iterations: Vec<u64> = (1..=cap / stride).map(|k| k * stride).collect();

    let thresholds: Vec<f64> = ladder.iter().map(|acc| spec.f_star + acc * spec.scale).collect();
    let final_gap = ladder.last().unwrap() * spec.scale;

    let summaries: Vec<Result<RunSummary, SolverError>> = (0..config.repetitions)
        .into_par_iter()
        .map(|rep| {
            let mut cfg = config.solver.clone();
            cfg.seed = config.base_seed + rep;
            cfg.max_iters = cap;
            cfg.target_gap = Some(final_gap);
            cfg.store_iterates = false;
            let trace = solver.run(spec, &cfg)?;
            let hits = thresholds
                .iter()
                .map(|&thr| {
                    trace
                        .first_hit(thr)
                        .map(|k| (k as u64, trace.fes[k]))
                })
                .collect::<Vec<_>>();
            let converged = hits.last().copied().flatten().is_some();
            let last = *trace.values.last().unwrap();
            let plot_log10 = plot_iterations
                .iter()
                .map(|&k| {
                    let v = trace.values.get(k as usize).copied().unwrap_or(last);
                    let rel = ((v - spec.f_star) / spec.scale).max(PLOT_GAP_FLOOR);
                    rel.log10()
                })
                .collect();
            Ok(RunSummary { seed: cfg.seed, hits, converged, plot_log10 })
        })
        .collect();

    let mut reps = Vec::with_capacity(summaries.len());
    for s in summaries {
        reps.push(s?);
    }

    let n_plot = plot_iterations.len();
    let mut plot_mean_log10 = vec![0.0; n_plot];
    for summary in &reps {
        for (acc, v) in plot_mean_log10.iter_mut().zip(&summary.plot_log10) {
            *acc += v;
        }
    }
    for v in &mut plot_mean_log10 {
        *v /= reps.len() as f64;
    }

    Ok(AlgoResult {
        algorithm: solver.name().to_string(),
        its_per_dim: solver.iterations_scale_with_dim(),
        cap,
        reps,
        plot_iterations,
        plot_mean_log10,
    })
}

fn aggregate(
    algo: &AlgoResult,
    config: &ExperimentConfig,
    ladder: &[f64],
    warnings: &mut Vec<String>,
) -> Vec<AggregateRow> {
    let dim = config.dim as f64;
    let mut rows = Vec::with_capacity(ladder.len());
    for (idx, &accuracy) in ladder.iter().enumerate() {
        let mut its_values = Vec::new();
        let mut fes_values = Vec::new();
        for rep in &algo.reps {
            if let Some((its, fes)) = rep.hits[idx] {
                let its = if algo.its_per_dim { its as f64 / dim } else { its as f64 };
                its_values.push(its);
                fes_values.push(fes as f64 / dim);
            }
        }
        let successes = its_values.len() as u64;
        if successes < config.repetitions {
            warnings.push(format!(
                "{}: {}/{} repetitions did not reach accuracy {:e} within {} iterations; excluded",
                algo.algorithm,
                config.repetitions - successes,
                config.repetitions,
                accuracy,
                algo.cap
            ));
        }
        let (min_its, mean_its, max_its) = stats(&its_values);
        let (min_fes, mean_fes, max_fes) = stats(&fes_values);
        rows.push(AggregateRow {
            function: config.function.as_str().to_string(),
            n: config.dim,
            algorithm: algo.algorithm.clone(),
            accuracy,
            min_its,
            mean_its,
            max_its,
            min_fes,
            mean_fes,
            max_fes,
            successes,
            repetitions: config.repetitions,
        });
    }
    rows
}

/// Runs every configured algorithm for the configured number of seeded
/// repetitions and aggregates first-crossing statistics per ladder entry.
///
/// Repetition `r` uses seed `base_seed + r`. Algorithm/objective pairings
/// that cannot run (missing gradient or strong-convexity modulus) are
/// skipped with a warning rather than failing the whole experiment.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentResult, HarnessError> {
    config.validate()?;
    let spec = config.objective()?;
    let ladder = config.ladder();

    let mut rows = Vec::new();
    let mut algos = Vec::new();
    let mut warnings = Vec::new();
    for name in &config.algorithms {
        let solver = solver_by_name(name)?;
        if let Some(warning) = pairing_obstacle(solver.as_ref(), &spec) {
            warnings.push(warning);
            continue;
        }
        let algo = run_one_algorithm(solver.as_ref(), &spec, config, &ladder)?;
        rows.extend(aggregate(&algo, config, &ladder, &mut warnings));
        algos.push(algo);
    }

    Ok(ExperimentResult {
        function: config.function.as_str().to_string(),
        dim: config.dim,
        ladder,
        rows,
        algos,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::objectives::BenchmarkName;

    fn quick_config(
        function: BenchmarkName,
        dim: usize,
        algorithms: &[&str],
        repetitions: u64,
    ) -> ExperimentConfig {
        ExperimentConfig {
            function,
            dim,
            algorithms: algorithms.iter().map(|s| s.to_string()).collect(),
            repetitions,
            ..ExperimentConfig::default()
        }
    }

    #[test]
    fn gradient_method_solves_the_sphere_in_one_absolute_iteration() {
        let cfg = quick_config(BenchmarkName::Sphere, 16, &["gm"], 25);
        let result = run_experiment(&cfg).unwrap();
        assert_eq!(result.rows.len(), 19);
        for row in &result.rows {
            assert_eq!(row.successes, 25);
            // A single exact gradient step; counts are absolute, not per-dim.
            assert_eq!(row.max_its, 1.0);
            assert_eq!(row.max_fes, 0.0);
        }
        assert!(result.warnings.is_empty());
    }

    #[test]
    fn random_pursuit_sphere_iterations_match_the_expected_per_dim_count() {
        let cfg = quick_config(BenchmarkName::Sphere, 16, &["rp"], 25);
        let result = run_experiment(&cfg).unwrap();
        let terminal = result.rows.last().unwrap();
        assert_eq!(terminal.successes, 25);
        // Expected ITS/n ≈ ln(1/acc_final) / (n·ln(n/(n−1))).
        let n = 16.0f64;
        let predicted = -(1.91e-6f64).ln() / (n * (n / (n - 1.0)).ln());
        assert!(
            (terminal.mean_its - predicted).abs() < 0.2 * predicted,
            "mean ITS/n {} vs predicted {}",
            terminal.mean_its,
            predicted
        );
        // Evaluations are charged per line search, so FES/n well above ITS/n.
        assert!(terminal.mean_fes > 5.0 * terminal.mean_its);
    }

    #[test]
    fn first_crossings_are_monotone_down_the_ladder() {
        let cfg = quick_config(BenchmarkName::Sphere, 8, &["rp"], 5);
        let result = run_experiment(&cfg).unwrap();
        for rep in &result.algos[0].reps {
            let hits: Vec<(u64, u64)> = rep.hits.iter().copied().flatten().collect();
            assert_eq!(hits.len(), 19, "all rungs reached on the sphere");
            for pair in hits.windows(2) {
                assert!(pair[1].0 >= pair[0].0, "iterations decrease down the ladder");
                assert!(pair[1].1 >= pair[0].1, "evaluations decrease down the ladder");
            }
        }
    }

    #[test]
    fn capped_runs_are_excluded_and_reported() {
        let cfg = ExperimentConfig {
            cap_randomized: Some(5),
            ..quick_config(BenchmarkName::Ellipsoid, 8, &["es"], 3)
        };
        let result = run_experiment(&cfg).unwrap();
        let terminal = result.rows.last().unwrap();
        assert_eq!(terminal.successes, 0);
        assert!(terminal.mean_its.is_nan());
        assert!(result.warnings.iter().any(|w| w.contains("did not reach")));
    }

    #[test]
    fn unrunnable_pairings_are_skipped_with_a_warning() {
        let cfg = quick_config(BenchmarkName::Funnel, 8, &["rp", "arp"], 2);
        let result = run_experiment(&cfg).unwrap();
        assert!(result.algos.iter().all(|a| a.algorithm != "arp"));
        assert!(result.rows.iter().all(|r| r.algorithm != "arp"));
        assert_eq!(result.rows.len(), 19);
        assert!(result
            .warnings
            .iter()
            .any(|w| w.contains("arp") && w.contains("modulus")));
    }

    #[test]
    fn unknown_algorithm_names_are_hard_errors() {
        let cfg = quick_config(BenchmarkName::Sphere, 4, &["bogus"], 1);
        assert!(matches!(
            run_experiment(&cfg),
            Err(HarnessError::Solver(SolverError::UnknownSolver(_)))
        ));
    }

    #[test]
    fn plot_series_follow_the_iteration_cap() {
        let cfg = ExperimentConfig {
            cap_randomized: Some(100),
            ..quick_config(BenchmarkName::Sphere, 4, &["rp"], 2)
        };
        let result = run_experiment(&cfg).unwrap();
        let algo = &result.algos[0];
        assert_eq!(algo.plot_iterations.len(), 100);
        assert_eq!(algo.plot_iterations[0], 1);
        assert_eq!(*algo.plot_iterations.last().unwrap(), 100);
        assert_eq!(algo.plot_mean_log10.len(), 100);
        // The mean curve decreases overall on the sphere.
        assert!(algo.plot_mean_log10.last().unwrap() < &algo.plot_mean_log10[0]);
    }

    #[test]
    fn changing_the_base_seed_changes_randomized_statistics() {
        let a = run_experiment(&quick_config(BenchmarkName::Sphere, 8, &["rp"], 5)).unwrap();
        let b = run_experiment(&ExperimentConfig {
            base_seed: 1000,
            ..quick_config(BenchmarkName::Sphere, 8, &["rp"], 5)
        })
        .unwrap();
        assert_ne!(a.rows.last().unwrap().mean_fes, b.rows.last().unwrap().mean_fes);
    }

    #[test]
    fn repeated_runs_are_bitwise_identical() {
        let cfg = quick_config(BenchmarkName::Sphere, 8, &["rp", "es"], 3);
        let a = run_experiment(&cfg).unwrap();
        let b = run_experiment(&cfg).unwrap();
        assert_eq!(a.rows, b.rows);
        for (x, y) in a.algos.iter().zip(&b.algos) {
            assert_eq!(x.plot_mean_log10, y.plot_mean_log10);
        }
    }
}
