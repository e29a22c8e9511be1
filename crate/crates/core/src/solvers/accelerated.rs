//! Accelerated two-sequence schemes: momentum on top of random pursuit
//! (`arp`) and on top of finite-difference random gradients (`fg`).
//!
//! Both maintain a pair of sequences `x` (iterates) and `v` (estimate
//! centers). Each iteration mixes them into `y = (1−δ)x + δv`, takes a
//! scalar displacement `s` along a random direction `u` from `y`, and updates
//!
//! ```text
//! x⁺ = y + s·u,
//! v⁺ = (1−λ)v + λy + (s/(βn))·u.
//! ```
//!
//! The coefficients come from the recursion `θ⁻¹β² = (1−β)γ + βm` with
//! `γ₀ = m`; both schemes therefore require a strong-convexity modulus
//! `m > 0`. `arp` obtains `s` from the line search (`θ⁻¹ = L₁n²`); `fg`
//! uses the scaled finite-difference quotient
//! `s = −(1/(4(n+4)L₁))·(f(y+μu) − f(y))/μ` with `θ⁻¹ = 4(n+4)L₁n`.

use crate::linesearch::line_search;
use crate::objectives::{EvalCounter, ObjectiveSpec};
use crate::sampling::DirectionSampler;

use super::{init_x0, RunTrace, Solver, SolverConfig, SolverError, TraceRecorder};

#[derive(Debug, Clone, Copy)]
struct AccelCoefficients {
    beta: f64,
    gamma_next: f64,
    lambda: f64,
    delta: f64,
}

/// Solves `θ⁻¹β² + (γ−m)β − γ = 0` for its unique positive root and derives
/// the dependent coefficients. Uses the division-free root form, which is
/// stable for `γ ≈ m` (where the linear coefficient vanishes).
fn accel_coefficients(theta_inv: f64, gamma: f64, m: f64) -> AccelCoefficients {
    debug_assert!(theta_inv > 0.0 && gamma > 0.0 && m >= 0.0);
    let q = gamma - m;
    let beta = 2.0 * gamma / (q + (q * q + 4.0 * theta_inv * gamma).sqrt());
    let gamma_next = theta_inv * beta * beta;
    AccelCoefficients {
        beta,
        gamma_next,
        lambda: m * beta / gamma_next,
        delta: beta * gamma / (gamma + beta * m),
    }
}

/// Runs the shared two-sequence loop. `displacement` produces the scalar step
/// `s` for the current mixing point `y` and direction `u`, charging whatever
/// oracle calls it makes to the counter.
fn run_accelerated<F>(
    solver: &'static str,
    spec: &ObjectiveSpec,
    cfg: &SolverConfig,
    theta_inv: f64,
    dirs: &mut DirectionSampler,
    mut displacement: F,
) -> Result<RunTrace, SolverError>
where
    F: FnMut(&[f64], &[f64], &mut EvalCounter, u64) -> Result<f64, SolverError>,
{
    if !(spec.m > 0.0) {
        return Err(SolverError::NeedsPositiveModulus {
            solver,
            objective: spec.name.clone(),
            m: spec.m,
        });
    }
    let n = spec.dim as f64;
    let mut x = init_x0(spec, cfg)?;
    let mut v = x.clone();
    let mut y = vec![0.0; spec.dim];
    let mut u = vec![0.0; spec.dim];
    let mut gamma = spec.m;
    let mut counter = EvalCounter::new();
    let f0 = spec.eval(&x);
    let mut rec = TraceRecorder::new(spec, cfg, &x, f0)?;
    if !rec.done() {
        for k in 0..cfg.max_iters {
            let co = accel_coefficients(theta_inv, gamma, spec.m);
            for i in 0..spec.dim {
                y[i] = (1.0 - co.delta) * x[i] + co.delta * v[i];
            }
            dirs.sample_into(&mut u);
            let s = displacement(&y, &u, &mut counter, k)?;
            let v_step = s / (co.beta * n);
            for i in 0..spec.dim {
                x[i] = y[i] + s * u[i];
                v[i] = (1.0 - co.lambda) * v[i] + co.lambda * y[i] + v_step * u[i];
            }
            gamma = co.gamma_next;
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

/// Accelerated random pursuit: the two-sequence momentum scheme with the
/// line-search oracle providing the step along each random direction.
pub struct AcceleratedRandomPursuit;

impl Solver for AcceleratedRandomPursuit {
    fn name(&self) -> &'static str {
        "arp"
    }

    fn description(&self) -> &'static str {
        "accelerated random pursuit: two-sequence momentum over line searches on random directions"
    }

    fn needs_positive_modulus(&self) -> bool {
        true
    }

    fn run(&self, spec: &ObjectiveSpec, cfg: &SolverConfig) -> Result<RunTrace, SolverError> {
        let n = spec.dim as f64;
        let theta_inv = spec.l1 * n * n;
        let mut dirs = DirectionSampler::new(cfg.sampler, spec.dim, cfg.seed);
        run_accelerated("arp", spec, cfg, theta_inv, &mut dirs, |y, u, counter, iter| {
            line_search(spec, y, u, cfg.mu, &cfg.ls, counter)
                .map(|r| r.h)
                .map_err(|source| SolverError::LineSearch { iter, source })
        })
    }
}

/// Accelerated random gradient method: the same momentum skeleton driven by
/// finite-difference directional derivatives (two charged evaluations per
/// iteration).
pub struct FastRandomGradient;

impl Solver for FastRandomGradient {
    fn name(&self) -> &'static str {
        "fg"
    }

    fn description(&self) -> &'static str {
        "accelerated random gradient: momentum over finite-difference directional derivatives"
    }

    fn needs_positive_modulus(&self) -> bool {
        true
    }

    fn run(&self, spec: &ObjectiveSpec, cfg: &SolverConfig) -> Result<RunTrace, SolverError> {
        if !(cfg.mu > 0.0 && cfg.mu.is_finite()) {
            return Err(SolverError::BadConfig(format!(
                "fg needs a positive finite-difference step mu, got {}",
                cfg.mu
            )));
        }
        let n = spec.dim as f64;
        let theta_inv = 4.0 * (n + 4.0) * spec.l1 * n;
        let step_scale = 1.0 / (4.0 * (n + 4.0) * spec.l1);
        let mu = cfg.mu;
        let mut dirs = DirectionSampler::new(cfg.rg_sampler, spec.dim, cfg.seed);
        let mut probe = vec![0.0; spec.dim];
        run_accelerated("fg", spec, cfg, theta_inv, &mut dirs, move |y, u, counter, _| {
            let fy = spec.eval_counted(y, counter);
            for i in 0..y.len() {
                probe[i] = y[i] + mu * u[i];
            }
            let fy_mu = spec.eval_counted(&probe, counter);
            Ok(-step_scale * (fy_mu - fy) / mu)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::objectives::{protocol_benchmark, BenchmarkName};
    use proptest::prelude::*;

    #[test]
    fn unit_parameters_give_the_hand_solved_coefficients() {
        // θ⁻¹ = γ = m = 1 collapses the quadratic to β² = 1.
        let co = accel_coefficients(1.0, 1.0, 1.0);
        assert_eq!(co.beta, 1.0);
        assert_eq!(co.gamma_next, 1.0);
        assert_eq!(co.lambda, 1.0);
        assert_eq!(co.delta, 0.5);
    }

    #[test]
    fn gamma_is_a_fixed_point_when_started_at_the_modulus() {
        // With γ = m the recursion keeps γ constant: θ⁻¹β² = (1−β)m + βm = m.
        for (theta_inv, m) in [(64.0, 1.0), (1000.0, 0.25), (7.0, 3.0)] {
            let co = accel_coefficients(theta_inv, m, m);
            assert!((co.gamma_next - m).abs() <= 1e-12 * m);
        }
    }

    proptest! {
        #[test]
        fn coefficient_identity_holds(
            theta_inv in 1e-1f64..1e6,
            gamma in 1e-6f64..1e3,
            frac in 0.0f64..1.0,
        ) {
            let m = frac * gamma;
            let co = accel_coefficients(theta_inv, gamma, m);
            prop_assert!(co.beta > 0.0);
            // θ⁻¹β² = (1−β)γ + βm, the defining identity.
            let lhs = theta_inv * co.beta * co.beta;
            let rhs = (1.0 - co.beta) * gamma + co.beta * m;
            let scale = lhs.abs().max(gamma);
            prop_assert!((lhs - rhs).abs() <= 1e-10 * scale, "lhs {lhs} rhs {rhs}");
            prop_assert_eq!(co.gamma_next, lhs);
        }
    }

    #[test]
    fn arp_converges_on_the_sphere() {
        let spec = protocol_benchmark(BenchmarkName::Sphere, 8).unwrap();
        let cfg = SolverConfig {
            seed: 1,
            max_iters: 10_000,
            target_gap: Some(1e-6 * spec.scale),
            ..Default::default()
        };
        let trace = AcceleratedRandomPursuit.run(&spec, &cfg).unwrap();
        assert!(trace.final_value() - spec.f_star <= 1e-6 * spec.scale);
        assert!(trace.iterations() < 10_000);
    }

    #[test]
    fn fg_converges_on_the_sphere() {
        let spec = protocol_benchmark(BenchmarkName::Sphere, 4).unwrap();
        let cfg = SolverConfig {
            seed: 2,
            max_iters: 20_000,
            mu: 1e-6,
            target_gap: Some(1e-5 * spec.scale),
            ..Default::default()
        };
        let trace = FastRandomGradient.run(&spec, &cfg).unwrap();
        assert!(trace.final_value() - spec.f_star <= 1e-5 * spec.scale);
    }

    #[test]
    fn fg_charges_exactly_two_evaluations_per_iteration() {
        let spec = protocol_benchmark(BenchmarkName::Ellipsoid, 6).unwrap();
        let cfg = SolverConfig { seed: 3, max_iters: 137, ..Default::default() };
        let trace = FastRandomGradient.run(&spec, &cfg).unwrap();
        assert_eq!(trace.iterations(), 137);
        for (k, fes) in trace.fes.iter().enumerate() {
            assert_eq!(*fes, 2 * k as u64);
        }
    }

    #[test]
    fn schemes_demand_a_positive_modulus() {
        let funnel = protocol_benchmark(BenchmarkName::Funnel, 8).unwrap();
        let cfg = SolverConfig::default();
        for solver in [&AcceleratedRandomPursuit as &dyn Solver, &FastRandomGradient] {
            let err = solver.run(&funnel, &cfg).unwrap_err();
            assert!(matches!(err, SolverError::NeedsPositiveModulus { m, .. } if m == 0.0));
        }
    }

    #[test]
    fn fg_rejects_a_zero_difference_step() {
        let spec = protocol_benchmark(BenchmarkName::Sphere, 4).unwrap();
        let cfg = SolverConfig { mu: 0.0, ..Default::default() };
        assert!(matches!(FastRandomGradient.run(&spec, &cfg), Err(SolverError::BadConfig(_))));
    }

    #[test]
    fn arp_runs_are_deterministic_per_seed() {
        let spec = protocol_benchmark(BenchmarkName::NesterovStrong, 10).unwrap();
        let cfg = SolverConfig { seed: 11, max_iters: 50, ..Default::default() };
        let a = AcceleratedRandomPursuit.run(&spec, &cfg).unwrap();
        let b = AcceleratedRandomPursuit.run(&spec, &cfg).unwrap();
        assert_eq!(a, b);
    }
}
