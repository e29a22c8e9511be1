//! Brute-force verification of the scalar recurrence bound
//! `fₜ ≤ Q(θ)/t + (t−1)·D` for sequences obeying
//! `fₜ₊₁ = (1 − θ/t)·fₜ + C·θ²/t² + D`, with
//! `Q(θ) = max(θ²C/(θ−1), f₁)`.
//!
//! The iteration is taken literally: the raw recurrence value is the
//! envelope being checked, with no clamping at zero even when `1 − θ/t`
//! is negative. The checker reports every index where the claimed bound
//! fails, rather than assuming the claim.

use super::TheoryError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RecurrenceParams {
    /// Decay strength; must exceed 1.
    pub theta: f64,
    /// Positive forcing coefficient.
    pub c: f64,
    /// Nonnegative per-step additive term.
    pub d: f64,
    /// Initial value `f₁ ≥ 0`.
    pub f1: f64,
}

impl RecurrenceParams {
    fn validate(&self) -> Result<(), TheoryError> {
        if !(self.theta > 1.0) {
            return Err(TheoryError::BadParams(format!("theta must exceed 1, got {}", self.theta)));
        }
        if !(self.c > 0.0) {
            return Err(TheoryError::BadParams(format!("C must be positive, got {}", self.c)));
        }
        if !(self.d >= 0.0) {
            return Err(TheoryError::BadParams(format!("D must be nonnegative, got {}", self.d)));
        }
        if !(self.f1 >= 0.0) {
            return Err(TheoryError::BadParams(format!("f1 must be nonnegative, got {}", self.f1)));
        }
        Ok(())
    }
}

/// The constant `Q(θ) = max(θ²C/(θ−1), f₁)`.
pub fn q_constant(p: &RecurrenceParams) -> f64 {
    (p.theta * p.theta * p.c / (p.theta - 1.0)).max(p.f1)
}

/// The claimed envelope `Q(θ)/t + (t−1)·D`.
pub fn recurrence_bound(p: &RecurrenceParams, t: u64) -> f64 {
    q_constant(p) / t as f64 + (t - 1) as f64 * p.d
}

/// One index where the iterated sequence exceeded the claimed envelope.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RecurrenceViolation {
    pub t: u64,
    pub value: f64,
    pub bound: f64,
}

#[derive(Debug, Clone)]
pub struct RecurrenceReport {
    pub t_max: u64,
    pub violations: Vec<RecurrenceViolation>,
    /// Largest relative excess over the bound (0 when none).
    pub worst_excess: f64,
}

impl RecurrenceReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Iterates the recurrence from `f₁` through `t_max` and records every index
/// where the value exceeds the claimed bound beyond floating-point slack
/// (1e-10 relative — some parameter choices attain the bound exactly).
pub fn check_recurrence(p: &RecurrenceParams, t_max: u64) -> Result<RecurrenceReport, TheoryError> {
    p.validate()?;
    if t_max < 1 {
        return Err(TheoryError::BadParams("t_max must be at least 1".to_string()));
    }
    let mut violations = Vec::new();
    let mut worst_excess = 0.0f64;
    let mut f_t = p.f1;
    for t in 1..=t_max {
        let bound = recurrence_bound(p, t);
        let slack = 1e-10 * bound.abs().max(f_t.abs()).max(1e-300);
        if f_t > bound + slack {
            violations.push(RecurrenceViolation { t, value: f_t, bound });
            worst_excess = worst_excess.max((f_t - bound) / bound.abs().max(1e-300));
        }
        let tf = t as f64;
        f_t = (1.0 - p.theta / tf) * f_t + p.c * p.theta * p.theta / (tf * tf) + p.d;
    }
    Ok(RecurrenceReport { t_max, violations, worst_excess })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hand_iterated_first_steps_match() {
        // θ=2, C=1, D=0, f₁=4: f₂ = (1−2)·4 + 4 = 0, and Q = max(4, 4) = 4.
        let p = RecurrenceParams { theta: 2.0, c: 1.0, d: 0.0, f1: 4.0 };
        assert_eq!(q_constant(&p), 4.0);
        assert_eq!(recurrence_bound(&p, 2), 2.0);
        let report = check_recurrence(&p, 100).unwrap();
        assert!(report.holds(), "{:?}", report.violations);
    }

    #[test]
    fn theta_two_with_half_q_attains_the_bound_exactly() {
        // f₁ = Q/2 makes f₂ = (1−2)·2C + 4C = 2C = Q/2, equality at t=2.
        for c in [0.1, 1.0, 10.0] {
            let q0 = 4.0 * c;
            let p = RecurrenceParams { theta: 2.0, c, d: 0.0, f1: q0 / 2.0 };
            let report = check_recurrence(&p, 10_000).unwrap();
            assert!(report.holds(), "C={c}: {:?}", &report.violations[..1]);
        }
    }

    #[test]
    fn moderate_decay_strengths_hold_across_the_grid() {
        for theta in [1.5, 2.0] {
            for c in [0.1, 1.0, 10.0] {
                for d in [0.0, 1e-6] {
                    let q0 = theta * theta * c / (theta - 1.0);
                    for f1 in [q0, q0 / 2.0, 2.0 * q0] {
                        let p = RecurrenceParams { theta, c, d, f1 };
                        let report = check_recurrence(&p, 10_000).unwrap();
                        assert!(report.holds(), "θ={theta} C={c} D={d} f1={f1}");
                    }
                }
            }
        }
    }

    #[test]
    fn strong_decay_overshoots_the_claim_at_small_t() {
        // θ=4: the induction behind the bound needs t ≥ θ, and the early
        // indices genuinely violate it. From f₁ = Q = 16C/3:
        // f₂ = (1−4)·16C/3 + 16C = 0, f₃ = (1−2)·0 + 4C = 4C,
        // while the claim at t=3 is Q/3 = 16C/9 < 4C.
        let c = 1.0;
        let p = RecurrenceParams { theta: 4.0, c, d: 0.0, f1: 16.0 * c / 3.0 };
        let report = check_recurrence(&p, 10_000).unwrap();
        assert!(!report.holds());
        let at3 = report.violations.iter().find(|v| v.t == 3).expect("violation at t=3");
        assert!((at3.value - 4.0).abs() < 1e-12);
        assert!((at3.bound - 16.0 / 9.0).abs() < 1e-12);
    }

    #[test]
    fn additive_term_contributes_exactly_linear_slack() {
        let base = RecurrenceParams { theta: 1.5, c: 2.0, d: 0.0, f1: 1.0 };
        let with_d = RecurrenceParams { d: 1e-6, ..base };
        for t in [1u64, 2, 10, 1000] {
            let diff = recurrence_bound(&with_d, t) - recurrence_bound(&base, t);
            let expected = (t - 1) as f64 * 1e-6;
            // The subtraction cancels at the scale of Q/t, so allow rounding
            // at that scale rather than at the (much smaller) difference's.
            assert!((diff - expected).abs() < 1e-15 + 1e-9 * expected);
        }
    }

    #[test]
    fn invalid_parameters_are_rejected() {
        let ok = RecurrenceParams { theta: 2.0, c: 1.0, d: 0.0, f1: 1.0 };
        assert!(check_recurrence(&RecurrenceParams { theta: 1.0, ..ok }, 10).is_err());
        assert!(check_recurrence(&RecurrenceParams { c: 0.0, ..ok }, 10).is_err());
        assert!(check_recurrence(&RecurrenceParams { d: -1.0, ..ok }, 10).is_err());
        assert!(check_recurrence(&RecurrenceParams { f1: -1.0, ..ok }, 10).is_err());
        assert!(check_recurrence(&ok, 0).is_err());
    }
}
