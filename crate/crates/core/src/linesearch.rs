//! Approximate one-dimensional line search along a ray, using only order
//! comparisons of objective values.
//!
//! [`line_search`] approximately minimizes `φ(t) = f(x + t·u)`. Because it
//! never uses the *magnitude* of objective values — only comparisons — its
//! trajectory is invariant under strictly monotone transformations of `f`.
//!
//! Two accuracy modes are supported:
//!
//! * **Absolute** — the returned step satisfies `|h − h*| ≤ μ` whenever `φ`
//!   is unimodal with minimizer `h*` in the searched range. The bracket is
//!   always shrunk at least to width [`LineSearchConfig::shrink_cap`] even
//!   when `μ` is larger, so a coarse `μ` does not stall iterative methods
//!   whose per-step lengths decay below `μ`.
//! * **Relative** — the returned step satisfies `(1−μ)·h* ≤ h ≤ h*`
//!   (sign-aware): it never overshoots the exact minimizer and undershoots
//!   by at most the relative factor `μ`. Steps smaller than `1e-12` are
//!   rounded to exactly zero.
//!
//! Every objective evaluation performed here is charged to the supplied
//! [`EvalCounter`].

use std::str::FromStr;

use crate::objectives::{EvalCounter, ObjectiveSpec};

/// Golden ratio conjugate `(√5 − 1)/2`, the section-shrink factor.
const GOLDEN: f64 = 0.618_033_988_749_894_9;

/// Accuracy semantics for [`line_search`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LsMode {
    /// `|h − h*| ≤ μ`.
    Absolute,
    /// `(1−μ)·h* ≤ h ≤ h*` (never overshoots).
    Relative,
}

#[derive(Debug, thiserror::Error)]
#[error("unknown line-search mode `{0}` (expected absolute or relative)")]
pub struct UnknownLsMode(String);

impl FromStr for LsMode {
    type Err = UnknownLsMode;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "absolute" | "abs" => Ok(LsMode::Absolute),
            "relative" | "rel" => Ok(LsMode::Relative),
            other => Err(UnknownLsMode(other.to_string())),
        }
    }
}

/// Tuning knobs for [`line_search`].
#[derive(Debug, Clone, Copy, serde::Serialize, serde::Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LineSearchConfig {
    pub mode: LsMode,
    /// First trial step magnitude for the doubling bracket phase.
    pub initial_step: f64,
    /// Maximum number of bracket doublings before the ray is declared
    /// unbounded below. 64 doublings cover step magnitudes up to ~1.8e19.
    pub max_expansions: u32,
    /// Upper bound on the final bracket width in absolute mode: the bracket
    /// is shrunk to `min(μ, shrink_cap)`. Ignored in relative mode.
    pub shrink_cap: f64,
}

impl Default for LineSearchConfig {
    fn default() -> Self {
        Self {
            mode: LsMode::Absolute,
            initial_step: 1.0,
            max_expansions: 64,
            shrink_cap: 1e-5,
        }
    }
}

/// Outcome of a successful [`line_search`].
#[derive(Debug, Clone, Copy)]
pub struct LineSearchResult {
    /// The chosen step along `u`.
    pub h: f64,
    /// Objective evaluations charged during this search.
    pub fes_used: u64,
    /// Final uncertainty interval around the minimizer (widened, in relative
    /// mode, so that it always contains `h`).
    pub bracket: (f64, f64),
}

#[derive(Debug, thiserror::Error)]
pub enum LineSearchError {
    #[error("objective appears unbounded below along the search ray ({expansions} bracket doublings without leaving descent)")]
    Unbounded { expansions: u32 },
    #[error("objective evaluated to NaN at step {t}")]
    NonFinite { t: f64 },
    #[error("invalid line-search configuration: {0}")]
    BadConfig(&'static str),
}

/// Charged evaluation of `φ(t) = f(x + t·u)` with a reusable point buffer.
struct Probe<'a> {
    spec: &'a ObjectiveSpec,
    x: &'a [f64],
    u: &'a [f64],
    point: Vec<f64>,
    counter: &'a mut EvalCounter,
}

impl Probe<'_> {
    fn at(&mut self, t: f64) -> Result<f64, LineSearchError> {
        for ((p, xi), ui) in self.point.iter_mut().zip(self.x).zip(self.u) {
            *p = xi + t * ui;
        }
        let v = self.spec.eval_counted(&self.point, self.counter);
        if v.is_nan() {
            Err(LineSearchError::NonFinite { t })
        } else {
            Ok(v)
        }
    }
}

/// Width below which further shrinking is numerically meaningless.
fn machine_floor(a: f64, b: f64) -> f64 {
    4.0 * f64::EPSILON * (a.abs() + b.abs()) + 1e-300
}

/// Doubling bracket phase: returns an interval known to contain a local
/// minimizer of `φ` (the global one when `φ` is unimodal).
fn bracket(probe: &mut Probe<'_>, cfg: &LineSearchConfig) -> Result<(f64, f64), LineSearchError> {
    let s = cfg.initial_step;
    let f0 = probe.at(0.0)?;
    let fp = probe.at(s)?;
    let fm = probe.at(-s)?;
    // Expand only on strict improvement; with no improvement at ±s the
    // minimizer already lies in [−s, s]. Ties between the two sides resolve
    // toward the positive direction.
    let (dir, mut f_cur) = if fp < f0 && fp <= fm {
        (1.0, fp)
    } else if fm < f0 {
        (-1.0, fm)
    } else {
        return Ok((-s, s));
    };
    let mut prev = 0.0;
    let mut cur = dir * s;
    for _ in 0..cfg.max_expansions {
        let next = 2.0 * cur;
        let f_next = probe.at(next)?;
        if f_next < f_cur {
            prev = cur;
            cur = next;
            f_cur = f_next;
        } else {
            // φ decreased up to `cur` and rose (or flattened) at `next`, so
            // the minimizer lies between the last two retained points.
            return Ok(if dir > 0.0 { (prev, next) } else { (next, prev) });
        }
    }
    Err(LineSearchError::Unbounded { expansions: cfg.max_expansions })
}

/// Golden-section shrink of `[a, b]` down to the requested width (or to the
/// machine floor, whichever is larger).
fn golden_shrink(
    probe: &mut Probe<'_>,
    mut a: f64,
    mut b: f64,
    requested: f64,
) -> Result<(f64, f64), LineSearchError> {
    if b - a <= requested.max(machine_floor(a, b)) {
        return Ok((a, b));
    }
    let mut x1 = b - GOLDEN * (b - a);
    let mut x2 = a + GOLDEN * (b - a);
    let mut f1 = probe.at(x1)?;
    let mut f2 = probe.at(x2)?;
    while b - a > requested.max(machine_floor(a, b)) {
        if f1 < f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - GOLDEN * (b - a);
            f1 = probe.at(x1)?;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + GOLDEN * (b - a);
            f2 = probe.at(x2)?;
        }
    }
    Ok((a, b))
}

/// Approximately minimizes `t ↦ f(x + t·u)` and returns the chosen step.
///
/// `mu` is the accuracy parameter interpreted according to `cfg.mode` (see
/// the module docs for the exact guarantees). All evaluations are charged to
/// `counter`. With `mu = 0` in absolute mode the bracket is shrunk to machine
/// precision.
pub fn line_search(
    spec: &ObjectiveSpec,
    x: &[f64],
    u: &[f64],
    mu: f64,
    cfg: &LineSearchConfig,
    counter: &mut EvalCounter,
) -> Result<LineSearchResult, LineSearchError> {
    assert_eq!(x.len(), spec.dim);
    assert_eq!(u.len(), spec.dim);
    if !(cfg.initial_step.is_finite() && cfg.initial_step > 0.0) {
        return Err(LineSearchError::BadConfig("initial_step must be positive and finite"));
    }
    if cfg.max_expansions == 0 {
        return Err(LineSearchError::BadConfig("max_expansions must be at least 1"));
    }
    if !(cfg.shrink_cap > 0.0) {
        return Err(LineSearchError::BadConfig("shrink_cap must be positive"));
    }
    match cfg.mode {
        LsMode::Absolute => {
            if !(mu.is_finite() && mu >= 0.0) {
                return Err(LineSearchError::BadConfig("absolute mode needs finite mu >= 0"));
            }
        }
        LsMode::Relative => {
            if !(mu > 0.0 && mu < 1.0) {
                return Err(LineSearchError::BadConfig("relative mode needs 0 < mu < 1"));
            }
        }
    }

    let start = counter.count();
    let mut probe = Probe { spec, x, u, point: vec![0.0; x.len()], counter };
    let (a0, b0) = bracket(&mut probe, cfg)?;

    match cfg.mode {
        LsMode::Absolute => {
            let requested = if mu > 0.0 { mu.min(cfg.shrink_cap) } else { 0.0 };
            let (a, b) = golden_shrink(&mut probe, a0, b0, requested)?;
            let h = 0.5 * (a + b);
            Ok(LineSearchResult { h, fes_used: probe.counter.count() - start, bracket: (a, b) })
        }
        LsMode::Relative => {
            let (mut a, mut b) = (a0, b0);
            // Tighten until the width certifies a relative error of μ/4 in
            // the midpoint; then backing the step off by (1 − μ/2) guarantees
            // it lands in [(1−μ)h*, h*].
            loop {
                let mid = 0.5 * (a + b);
                let target = 0.25 * mu * mid.abs();
                if b - a <= target.max(machine_floor(a, b)) {
                    break;
                }
                (a, b) = golden_shrink(&mut probe, a, b, target.max(machine_floor(a, b)))?;
            }
            let mid = 0.5 * (a + b);
            let h = if mid.abs() < 1e-12 { 0.0 } else { (1.0 - 0.5 * mu) * mid };
            Ok(LineSearchResult {
                h,
                fes_used: probe.counter.count() - start,
                bracket: (a.min(h), b.max(h)),
            })
        }
    }
}
