//! Derivative-free convex optimization by random pursuit.
//!
//! The core scheme draws a uniformly random direction each iteration and
//! moves to an approximate minimizer of the objective along that line, found
//! by a comparison-based golden-section search. Because it only ever
//! compares function values, it is invariant under strictly monotone
//! transformations of the objective and needs no gradient, no Lipschitz
//! constants, and no step-size schedule.
//!
//! The crate bundles, behind one [`solvers::Solver`] trait:
//!
//! * `rp` — random pursuit with an approximate line search,
//! * `arp` — an accelerated two-sequence variant,
//! * `rg` / `fg` — random-direction finite-difference gradient schemes
//!   (simple and accelerated),
//! * `es` — a (1+1) evolution strategy with offline step-size calibration,
//! * `gm` / `gm-ls` — deterministic gradient baselines (fixed step and
//!   exact line search).
//!
//! Supporting modules: standard quadratic/smooth [`objectives`] with known
//! optima and curvature, direction [`sampling`] on the sphere, over signed
//! coordinates, or Gaussian, the [`linesearch`] primitive itself, a
//! [`theory`] module that numerically verifies the convergence guarantees
//! the schemes are designed around, and a benchmark [`harness`] that runs
//! seeded repetitions and exports accuracy-ladder statistics.
//!
//! ```
//! use random_pursuit::objectives::{protocol_benchmark, BenchmarkName};
//! use random_pursuit::solvers::{solver_by_name, SolverConfig};
//!
//! let spec = protocol_benchmark(BenchmarkName::Sphere, 16).unwrap();
//! let solver = solver_by_name("rp").unwrap();
//! let cfg = SolverConfig { max_iters: 400, seed: 7, ..SolverConfig::default() };
//! let trace = solver.run(&spec, &cfg).unwrap();
//! assert!(trace.final_value() < 1e-2);
//! ```

pub mod harness;
pub mod linesearch;
pub mod objectives;
pub mod sampling;
pub mod solvers;
pub mod theory;
pub mod vecmath;
