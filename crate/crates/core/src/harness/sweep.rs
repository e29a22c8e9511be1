//! Parameter sweeps built on top of the experiment runner: line-search
//! tolerance (μ) sweeps and dimension scans for random pursuit.

use std::fmt::Write as _;

use super::{run_experiment, ExperimentConfig, HarnessError, DEFAULT_TARGET_ACCURACY};
use crate::objectives::BenchmarkName;

#[derive(Debug, Clone, PartialEq)]
pub struct MuSweepRow {
    pub mu: f64,
    /// Mean iterations per dimension to the terminal accuracy.
    pub mean_its: f64,
    /// Mean evaluations per dimension to the terminal accuracy.
    pub mean_fes: f64,
    pub successes: u64,
    pub repetitions: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DimScanRow {
    pub dim: usize,
    pub mean_its: f64,
    pub mean_fes: f64,
    pub successes: u64,
    pub repetitions: u64,
}

fn terminal_config(
    function: BenchmarkName,
    dim: usize,
    repetitions: u64,
    base_seed: u64,
) -> ExperimentConfig {
    ExperimentConfig {
        function,
        dim,
        algorithms: vec!["rp".into()],
        repetitions,
        accuracy_ladder: vec![DEFAULT_TARGET_ACCURACY],
        base_seed,
        ..ExperimentConfig::default()
    }
}

/// Runs random pursuit to the terminal accuracy for each line-search
/// tolerance in `mus` and reports per-dimension iteration and evaluation
/// means. Demonstrates the scheme's insensitivity to the tolerance: ITS
/// barely moves while FES grows slowly as μ shrinks.
pub fn mu_sweep(
    function: BenchmarkName,
    dim: usize,
    mus: &[f64],
    repetitions: u64,
    base_seed: u64,
) -> Result<Vec<MuSweepRow>, HarnessError> {
    if mus.is_empty() {
        return Err(HarnessError::BadConfig("empty μ list".into()));
    }
    if mus.iter().any(|&mu| !(mu > 0.0) || !mu.is_finite()) {
        return Err(HarnessError::BadConfig(
            "μ values must be positive and finite".into(),
        ));
    }
    let mut rows = Vec::with_capacity(mus.len());
    for &mu in mus {
        let mut cfg = terminal_config(function, dim, repetitions, base_seed);
        cfg.solver.mu = mu;
        let result = run_experiment(&cfg)?;
        let row = &result.rows[0];
        rows.push(MuSweepRow {
            mu,
            mean_its: row.mean_its,
            mean_fes: row.mean_fes,
            successes: row.successes,
            repetitions,
        });
    }
    Ok(rows)
}

/// Runs random pursuit to the terminal accuracy for each dimension in
/// `dims`, reporting per-dimension means. On scale-free objectives the
/// per-dimension iteration count is nearly flat across dimensions.
pub fn dim_scan(
    function: BenchmarkName,
    dims: &[usize],
    repetitions: u64,
    base_seed: u64,
) -> Result<Vec<DimScanRow>, HarnessError> {
    if dims.is_empty() {
        return Err(HarnessError::BadConfig("empty dimension list".into()));
    }
    let mut rows = Vec::with_capacity(dims.len());
    for &dim in dims {
        let cfg = terminal_config(function, dim, repetitions, base_seed);
        let result = run_experiment(&cfg)?;
        let row = &result.rows[0];
        rows.push(DimScanRow {
            dim,
            mean_its: row.mean_its,
            mean_fes: row.mean_fes,
            successes: row.successes,
            repetitions,
        });
    }
    Ok(rows)
}

pub fn mu_sweep_csv(rows: &[MuSweepRow]) -> String {
    let mut out = String::from("mu,mean_its,mean_fes,successes,repetitions\n");
    for r in rows {
        writeln!(
            out,
            "{:e},{},{},{},{}",
            r.mu, r.mean_its, r.mean_fes, r.successes, r.repetitions
        )
        .expect("writing to a String cannot fail");
    }
    out
}

pub fn dim_scan_csv(rows: &[DimScanRow]) -> String {
    let mut out = String::from("n,mean_its,mean_fes,successes,repetitions\n");
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{}",
            r.dim, r.mean_its, r.mean_fes, r.successes, r.repetitions
        )
        .expect("writing to a String cannot fail");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tolerance_sweep_moves_evaluations_but_not_iterations() {
        let rows =
            mu_sweep(BenchmarkName::Sphere, 8, &[1e-3, 1e-7], 3, 7).unwrap();
        assert_eq!(rows.len(), 2);
        for r in &rows {
            assert_eq!(r.successes, 3);
        }
        let spread = (rows[0].mean_its - rows[1].mean_its).abs() / rows[0].mean_its;
        assert!(spread < 0.2, "ITS spread {} too large", spread);
        assert!(
            rows[1].mean_fes > rows[0].mean_fes,
            "tighter tolerance must cost more evaluations"
        );
    }

    #[test]
    fn bad_mu_lists_are_rejected() {
        assert!(mu_sweep(BenchmarkName::Sphere, 4, &[], 2, 0).is_err());
        assert!(mu_sweep(BenchmarkName::Sphere, 4, &[0.0], 2, 0).is_err());
        assert!(mu_sweep(BenchmarkName::Sphere, 4, &[-1e-3], 2, 0).is_err());
    }

    #[test]
    fn per_dim_iterations_are_stable_across_dimensions() {
        let rows = dim_scan(BenchmarkName::Sphere, &[4, 8], 3, 11).unwrap();
        assert_eq!(rows.len(), 2);
        let rel = (rows[0].mean_its - rows[1].mean_its).abs() / rows[1].mean_its;
        assert!(rel < 0.3, "ITS/n spread {} across dimensions", rel);
    }

    #[test]
    fn sweep_tables_render_with_headers() {
        let rows = vec![MuSweepRow {
            mu: 1e-5,
            mean_its: 13.0,
            mean_fes: 400.0,
            successes: 25,
            repetitions: 25,
        }];
        let csv = mu_sweep_csv(&rows);
        assert!(csv.starts_with("mu,"));
        assert!(csv.contains("1e-5,13,400,25,25"));
        let dims = vec![DimScanRow {
            dim: 64,
            mean_its: 13.0,
            mean_fes: 400.0,
            successes: 25,
            repetitions: 25,
        }];
        assert!(dim_scan_csv(&dims).contains("64,13,400,25,25"));
    }
}
