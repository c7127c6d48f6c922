//! Closed-form asymptotic quantities: entropy, `π(q)`, and the limiting
//! RGHW metrics.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Slack used when comparing rates that were entered as decimals.
pub const RATE_EPS: f64 = 1e-12;

fn in_unit(name: &str, x: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::DomainError(format!("{name} = {x} is outside [0, 1]")));
    }
    Ok(())
}

/// `H_q(x) = -x log_q x - (1-x) log_q (1-x)` with `0 log 0 = 0`.
///
/// This is the binary-shape entropy in base `q` (maximum `log_q 2`), not the
/// q-ary entropy with the `x log_q (q-1)` term.
pub fn qary_entropy(x: f64, q: f64) -> Result<f64> {
    in_unit("x", x)?;
    if q < 2.0 {
        return Err(Error::DomainError(format!("q = {q} must be >= 2")));
    }
    Ok(entropy_unchecked(x, q))
}

pub(crate) fn entropy_unchecked(x: f64, q: f64) -> f64 {
    let ln_q = q.ln();
    let term = |y: f64| if y <= 0.0 { 0.0 } else { -y * y.ln() / ln_q };
    term(x) + term(1.0 - x)
}

/// `π(q) = ∏_{i>=1} (1 - q^{-i})`, truncated after `⌈log_q(2/eps)⌉ + 2` factors.
pub fn pi_q(q: f64, eps: f64) -> Result<f64> {
    if q < 2.0 {
        return Err(Error::DomainError(format!("q = {q} must be >= 2")));
    }
    if !(eps > 0.0 && eps <= 0.25) {
        return Err(Error::DomainError(format!("eps = {eps} must lie in (0, 1/4]")));
    }
    let terms = ((2.0 / eps).ln() / q.ln()).ceil() as i32 + 2;
    Ok((1..=terms).map(|i| 1.0 - q.powi(-i)).product())
}

/// Highest rate of the larger code at relative RGHW `δ` for fixed `t`: `1 - δ`.
pub fn alpha_value(delta: f64) -> Result<f64> {
    in_unit("delta", delta)?;
    Ok(1.0 - delta)
}

/// Sufficient condition `R1 + δ < 1 + τ` for the existence of pairs with
/// `dim C1 = ⌊nR1⌋`, `dim C2 = ⌈nR2⌉` and `M_{⌈nτ⌉} >= ⌊nδ⌋` at large `n`.
pub fn thm3_certifies(r1: f64, r2: f64, tau: f64, delta: f64) -> Result<bool> {
    check_thm3(r1, r2, tau, delta)?;
    Ok(r1 + delta < 1.0 + tau)
}

pub(crate) fn check_thm3(r1: f64, r2: f64, tau: f64, delta: f64) -> Result<()> {
    let violated = |clause: &str| Err(Error::PreconditionViolated(clause.to_string()));
    if !(0.0..=1.0).contains(&r1) {
        return violated("0 <= R1 <= 1");
    }
    if !(0.0..=1.0).contains(&delta) {
        return violated("0 <= delta <= 1");
    }
    if tau <= 0.0 || tau.is_nan() {
        return violated("0 < tau");
    }
    if tau > r1.min(delta) + RATE_EPS {
        return violated("tau <= min{R1, delta}");
    }
    if r2 < 0.0 {
        return violated("0 <= R2");
    }
    if r2 > r1 - tau + RATE_EPS {
        return violated("R2 <= R1 - tau");
    }
    Ok(())
}

/// A value clamped into `[0, 1]`, remembering whether clamping happened.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Clamped {
    pub value: f64,
    pub raw: f64,
    pub clamped: bool,
}

/// `δ_q(τ, R1, R2) = 1 + τ - R1`, valid when `τ > 0` or `τ = R1 - R2`.
pub fn corollary1_value(tau: f64, r1: f64, r2: f64) -> Result<Clamped> {
    for (name, x) in [("tau", tau), ("R1", r1), ("R2", r2)] {
        in_unit(name, x)?;
    }
    if r2 > r1 + RATE_EPS {
        return Err(Error::PreconditionViolated("R2 <= R1".into()));
    }
    let degenerate = (tau - (r1 - r2)).abs() <= RATE_EPS;
    if tau <= 0.0 && !degenerate {
        return Err(Error::PreconditionViolated("tau > 0 or tau = R1 - R2 (tau = 0 with R1 > R2 is unresolved)".into()));
    }
    let raw = 1.0 + tau - r1;
    let value = raw.clamp(0.0, 1.0);
    Ok(Clamped { value, raw, clamped: value != raw })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entropy_examples() {
        assert_eq!(qary_entropy(0.0, 2.0).unwrap(), 0.0);
        assert_eq!(qary_entropy(1.0, 5.0).unwrap(), 0.0);
        assert!((qary_entropy(0.5, 2.0).unwrap() - 1.0).abs() < 1e-15);
        assert!((qary_entropy(0.5, 4.0).unwrap() - 0.5).abs() < 1e-15);
        assert!(matches!(qary_entropy(1.5, 2.0), Err(Error::DomainError(_))));
        assert!(matches!(qary_entropy(-0.1, 2.0), Err(Error::DomainError(_))));
    }

    #[test]
    fn entropy_symmetric_with_peak_at_half() {
        for q in [2.0, 3.0, 4.0, 16.0] {
            let peak = 2f64.ln() / f64::ln(q);
            for i in 0..=100 {
                let x = i as f64 / 100.0;
                let h = qary_entropy(x, q).unwrap();
                assert!((h - qary_entropy(1.0 - x, q).unwrap()).abs() < 1e-14);
                assert!(h <= peak + 1e-15);
            }
        }
    }

    #[test]
    fn pi_examples() {
        let p2 = pi_q(2.0, 1e-9).unwrap();
        assert!(p2 > 0.28 && p2 < 0.29, "{p2}");
        let p3 = pi_q(3.0, 1e-9).unwrap();
        let p4 = pi_q(4.0, 1e-9).unwrap();
        assert!(p2 < p3 && p3 < p4);
        assert!((1.0 - pi_q(1024.0, 1e-9).unwrap()).abs() < 2f64.powi(-9));
        assert!(pi_q(1.0, 1e-3).is_err());
        assert!(pi_q(2.0, 0.5).is_err());
        assert!(pi_q(2.0, 0.0).is_err());
    }

    #[test]
    fn pi_truncation_error_within_eps() {
        for q in [2.0, 3.0, 4.0, 7.0] {
            let reference: f64 = (1..=200).map(|i| 1.0 - f64::powi(q, -i)).product();
            for eps in [1e-3, 1e-6, 1e-9] {
                let approx = pi_q(q, eps).unwrap();
                assert!(((approx - reference) / reference).abs() <= eps, "q={q} eps={eps}");
            }
        }
    }

    #[test]
    fn alpha_examples() {
        assert_eq!(alpha_value(0.0).unwrap(), 1.0);
        assert_eq!(alpha_value(1.0).unwrap(), 0.0);
        assert!((alpha_value(0.3).unwrap() - 0.7).abs() < 1e-15);
        assert!(alpha_value(1.2).is_err());
    }

    #[test]
    fn thm3_examples() {
        assert!(thm3_certifies(0.6, 0.3, 0.1, 0.45).unwrap());
        assert!(!thm3_certifies(0.6, 0.3, 0.1, 0.55).unwrap());
        let err = thm3_certifies(0.6, 0.3, 0.0, 0.45).unwrap_err();
        assert_eq!(err, Error::PreconditionViolated("0 < tau".into()));
        assert!(matches!(thm3_certifies(0.6, 0.55, 0.1, 0.45), Err(Error::PreconditionViolated(c)) if c.contains("R2")));
        assert!(matches!(thm3_certifies(0.6, 0.3, 0.5, 0.45), Err(Error::PreconditionViolated(c)) if c.contains("min")));
    }

    #[test]
    fn corollary1_examples() {
        for r2 in [0.0, 0.2, 0.5] {
            let v = corollary1_value(0.1, 0.6, r2).unwrap();
            assert!((v.value - 0.5).abs() < 1e-12 && !v.clamped);
        }
        let v = corollary1_value(0.0, 0.4, 0.4).unwrap();
        assert!((v.value - 0.6).abs() < 1e-12);
        assert!(matches!(corollary1_value(0.0, 0.5, 0.2), Err(Error::PreconditionViolated(_))));
        let v = corollary1_value(0.3, 0.2, 0.0).unwrap();
        assert_eq!(v.value, 1.0);
        assert!(v.clamped);
    }
}
