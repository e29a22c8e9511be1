//! Result serialization: CSV and markdown tables, plot-ready series.

use std::fmt::Write as _;
use std::path::Path;

use super::{AggregateRow, ExperimentResult, HarnessError};

/// Column order of the statistics CSV.
pub const CSV_HEADER: &str =
    "function,n,algorithm,accuracy,min_its,mean_its,max_its,min_fes,mean_fes,max_fes,successes,repetitions";

/// Renders aggregate rows as CSV. Numbers use Rust's shortest round-trip
/// float formatting, so identical results serialize to identical bytes.
pub fn csv_string(rows: &[AggregateRow]) -> String {
    let mut out = String::with_capacity(64 * (rows.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for row in rows {
        writeln!(
            out,
            "{},{},{},{:e},{},{},{},{},{},{},{},{}",
            row.function,
            row.n,
            row.algorithm,
            row.accuracy,
            row.min_its,
            row.mean_its,
            row.max_its,
            row.min_fes,
            row.mean_fes,
            row.max_fes,
            row.successes,
            row.repetitions
        )
        .expect("writing to a String cannot fail");
    }
    out
}

/// Renders aggregate rows as a GitHub-flavored markdown table.
pub fn markdown_table(rows: &[AggregateRow]) -> String {
    let mut out = String::new();
    out.push_str(
        "| function | n | algorithm | accuracy | min its | mean its | max its | min fes | mean fes | max fes | ok |\n",
    );
    out.push_str("|---|---|---|---|---|---|---|---|---|---|---|\n");
    for row in rows {
        writeln!(
            out,
            "| {} | {} | {} | {:.3e} | {:.2} | {:.2} | {:.2} | {:.2} | {:.2} | {:.2} | {}/{} |",
            row.function,
            row.n,
            row.algorithm,
            row.accuracy,
            row.min_its,
            row.mean_its,
            row.max_its,
            row.min_fes,
            row.mean_fes,
            row.max_fes,
            row.successes,
            row.repetitions
        )
        .expect("writing to a String cannot fail");
    }
    out
}

/// Renders the averaged convergence curves as long-format CSV with one row
/// per (algorithm, sampled iteration) pair.
pub fn plot_data_csv(result: &ExperimentResult) -> String {
    let mut out = String::from("algorithm,iteration,mean_log10_relative_gap\n");
    for algo in &result.algos {
        for (k, v) in algo.plot_iterations.iter().zip(&algo.plot_mean_log10) {
            writeln!(out, "{},{},{}", algo.algorithm, k, v)
                .expect("writing to a String cannot fail");
        }
    }
    out
}

/// Writes rendered output to disk.
pub fn write_file(path: &Path, content: &str) -> Result<(), HarnessError> {
    std::fs::write(path, content)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::{run_experiment, ExperimentConfig};
    use crate::objectives::BenchmarkName;

    fn sample_row() -> AggregateRow {
        AggregateRow {
            function: "sphere".into(),
            n: 64,
            algorithm: "rp".into(),
            accuracy: 0.5,
            min_its: 0.5,
            mean_its: 0.625,
            max_its: 0.75,
            min_fes: 10.0,
            mean_fes: 12.5,
            max_fes: 15.0,
            successes: 25,
            repetitions: 25,
        }
    }

    #[test]
    fn csv_has_twelve_columns_and_one_line_per_row() {
        let rows = vec![sample_row(), sample_row()];
        let csv = csv_string(&rows);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(lines[0], CSV_HEADER);
        for line in &lines {
            assert_eq!(line.split(',').count(), 12);
        }
        assert_eq!(lines[1], "sphere,64,rp,5e-1,0.5,0.625,0.75,10,12.5,15,25,25");
    }

    #[test]
    fn empty_statistics_render_as_nan() {
        let row = AggregateRow {
            min_its: f64::NAN,
            mean_its: f64::NAN,
            max_its: f64::NAN,
            min_fes: f64::NAN,
            mean_fes: f64::NAN,
            max_fes: f64::NAN,
            successes: 0,
            ..sample_row()
        };
        let csv = csv_string(&[row]);
        assert!(csv.lines().nth(1).unwrap().contains("NaN,NaN,NaN"));
    }

    #[test]
    fn full_pipeline_is_byte_deterministic() {
        let cfg = ExperimentConfig {
            function: BenchmarkName::Sphere,
            dim: 4,
            algorithms: vec!["rp".into()],
            repetitions: 3,
            ..ExperimentConfig::default()
        };
        let a = csv_string(&run_experiment(&cfg).unwrap().rows);
        let b = csv_string(&run_experiment(&cfg).unwrap().rows);
        assert_eq!(a, b);
    }

    #[test]
    fn markdown_table_lists_every_row() {
        let rows = vec![sample_row(); 4];
        let md = markdown_table(&rows);
        assert_eq!(md.lines().count(), 6);
        assert!(md.contains("| sphere | 64 | rp |"));
    }

    #[test]
    fn plot_csv_has_one_line_per_sampled_iteration() {
        let cfg = ExperimentConfig {
            function: BenchmarkName::Sphere,
            dim: 4,
            algorithms: vec!["rp".into(), "es".into()],
            repetitions: 2,
            cap_randomized: Some(50),
            ..ExperimentConfig::default()
        };
        let result = run_experiment(&cfg).unwrap();
        let csv = plot_data_csv(&result);
        let expected: usize = result.algos.iter().map(|a| a.plot_iterations.len()).sum();
        assert_eq!(csv.lines().count(), expected + 1);
        assert!(csv.starts_with("algorithm,iteration,mean_log10_relative_gap\n"));
    }

    #[test]
    fn write_file_round_trips() {
        let path = std::env::temp_dir().join("rp-harness-export-test.csv");
        write_file(&path, "a,b\n1,2\n").unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), "a,b\n1,2\n");
        std::fs::remove_file(&path).unwrap();
    }
}
