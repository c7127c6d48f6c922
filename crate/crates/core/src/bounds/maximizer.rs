//! Grid audit of where the rate-normalised counting exponent peaks.
//!
//! With `α = a/n` and `β = b/n` the exponent of a single summand of the
//! certificate, after dividing by `n²`, is
//!
//! ```text
//! α(δ-α) + (R2-α)(1-R2) + β(δ-α-β) + (R1-R2-β)(1-R1)
//! ```
//!
//! The joint audit maximises it over `β ∈ [τ, R1-R2]`, `0 <= α <= min(δ-β, R1-β, R2)`;
//! the restricted audit fixes `β = τ`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MaximizerAudit {
    pub argmax_b_over_n: f64,
    pub argmax_alpha: f64,
}

#[derive(Clone, Copy, Debug)]
struct Rates {
    r1: f64,
    r2: f64,
    delta: f64,
}

impl Rates {
    fn objective(&self, alpha: f64, beta: f64) -> f64 {
        let Rates { r1, r2, delta } = *self;
        alpha * (delta - alpha) + (r2 - alpha) * (1.0 - r2) + beta * (delta - alpha - beta) + (r1 - r2 - beta) * (1.0 - r1)
    }

    fn alpha_max(&self, beta: f64) -> f64 {
        (self.delta - beta).min(self.r1 - beta).min(self.r2)
    }
}

/// Points `lo, lo + step, …` not exceeding `hi` (with a small slack).
fn grid(lo: f64, hi: f64, step: f64) -> impl Iterator<Item = f64> {
    let count = if hi < lo - 1e-12 { 0 } else { ((hi - lo).max(0.0) / step + 1e-9).floor() as usize + 1 };
    (0..count).map(move |i| lo + i as f64 * step)
}

fn check(r1: f64, r2: f64, tau: f64, delta: f64, step: f64) -> Result<Rates> {
    let violated = |c: &str| Err(Error::PreconditionViolated(c.to_string()));
    for (name, x) in [("R1", r1), ("R2", r2), ("tau", tau), ("delta", delta)] {
        if !(0.0..=1.0).contains(&x) {
            return violated(&format!("0 <= {name} <= 1"));
        }
    }
    if tau > delta + 1e-12 {
        return violated("tau <= delta");
    }
    if tau > r1 - r2 + 1e-12 {
        return violated("tau <= R1 - R2");
    }
    if !(step > 0.0 && step <= 0.5) {
        return violated("0 < grid_step <= 0.5");
    }
    Ok(Rates { r1, r2, delta })
}

/// Grid argmax of the joint objective (for `β`) and of the `β = τ` slice (for `α`).
///
/// Ties keep the first grid point visited, scanning `β` then `α` upwards.
pub fn proof_maximizer_audit(r1: f64, r2: f64, tau: f64, delta: f64, step: f64) -> Result<MaximizerAudit> {
    let rates = check(r1, r2, tau, delta, step)?;

    let mut best_joint: Option<(f64, f64)> = None;
    for beta in grid(tau, r1 - r2, step) {
        for alpha in grid(0.0, rates.alpha_max(beta), step) {
            let v = rates.objective(alpha, beta);
            if best_joint.is_none_or(|(bv, _)| v > bv) {
                best_joint = Some((v, beta));
            }
        }
    }

    let mut best_slice: Option<(f64, f64)> = None;
    for alpha in grid(0.0, rates.alpha_max(tau), step) {
        let v = rates.objective(alpha, tau);
        if best_slice.is_none_or(|(bv, _)| v > bv) {
            best_slice = Some((v, alpha));
        }
    }

    let empty = || Error::PreconditionViolated("feasible (alpha, b/n) region is empty".into());
    Ok(MaximizerAudit {
        argmax_b_over_n: best_joint.ok_or_else(empty)?.1,
        argmax_alpha: best_slice.ok_or_else(empty)?.1,
    })
}
