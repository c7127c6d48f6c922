//! Lower-bound curves on `δ⁰_q(t, R1, R2)` and the comparison table between them.
//!
//! Both solvers scan `δ` on a grid of step `1e-4`, take the last feasible grid
//! point and bisect towards the next grid point to `1e-9`.

use serde::{Deserialize, Serialize};

use super::asymptotic::entropy_unchecked;
use crate::error::{Error, Result};

pub const SCAN_STEP: f64 = 1e-4;
pub const BISECT_TOL: f64 = 1e-9;

fn check_inputs(t: u32, r1: f64, q: f64) -> Result<()> {
    if t == 0 {
        return Err(Error::DomainError("t must be >= 1".into()));
    }
    if !(0.0..=1.0).contains(&r1) {
        return Err(Error::DomainError(format!("R1 = {r1} is outside [0, 1]")));
    }
    if q < 2.0 {
        return Err(Error::DomainError(format!("q = {q} must be >= 2")));
    }
    Ok(())
}

/// Largest feasible point of `feasible` on `[0, hi]`, or 0 if none is positive.
fn last_feasible(hi: f64, feasible: impl Fn(f64) -> bool) -> f64 {
    let steps = (hi / SCAN_STEP).round() as usize;
    let grid = |i: usize| if i == steps { hi } else { i as f64 * SCAN_STEP };
    let Some(last) = (0..=steps).rev().find(|&i| feasible(grid(i))) else {
        return 0.0;
    };
    if last == steps {
        return hi;
    }
    let (mut lo, mut up) = (grid(last), grid(last + 1));
    while up - lo > BISECT_TOL {
        let mid = 0.5 * (lo + up);
        if feasible(mid) {
            lo = mid;
        } else {
            up = mid;
        }
    }
    lo
}

/// Supremum of `δ` with `δ < 1 - H_q(δ)/t - R1`.
pub fn eq102_bound(t: u32, r1: f64, q: f64) -> Result<f64> {
    check_inputs(t, r1, q)?;
    let t = t as f64;
    Ok(last_feasible(1.0, |d| d < 1.0 - entropy_unchecked(d, q) / t - r1))
}

/// Right-hand side `1 - δ + (δ/t) log_q(δ/(1-q^{-t})) + ((1-δ)/t) log_q(1-δ)`.
pub fn eq103_rate(delta: f64, t: u32, q: f64) -> f64 {
    let tf = t as f64;
    let ln_q = q.ln();
    let mut v = 1.0 - delta;
    if delta > 0.0 {
        v += delta / tf * (delta / (1.0 - q.powi(-(t as i32)))).ln() / ln_q;
    }
    if delta < 1.0 {
        v += (1.0 - delta) / tf * (1.0 - delta).ln() / ln_q;
    }
    v
}

/// Largest `δ ∈ [0, 1 - q^{-t}]` with `R1 <= eq103_rate(δ)`.
///
/// The rate is convex in `δ` with its minimum 0 at `1 - q^{-t}`; the search
/// stays on the decreasing branch.
pub fn eq103_bound(t: u32, r1: f64, q: f64) -> Result<f64> {
    check_inputs(t, r1, q)?;
    let hi = 1.0 - q.powi(-(t as i32));
    Ok(last_feasible(hi, |d| r1 <= eq103_rate(d, t, q)))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Fig1Row {
    #[serde(rename = "R1")]
    pub r1: f64,
    pub eq102: f64,
    pub eq103: f64,
}

/// Grid `0, step, 2 step, …` ending exactly at 1.
pub fn rate_grid(step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0 && step <= 0.5) {
        return Err(Error::DomainError(format!("step = {step} must lie in (0, 0.5]")));
    }
    let count = (1.0 / step + 1e-9).floor() as usize;
    let mut grid: Vec<f64> = (0..=count).map(|i| (i as f64 * step).min(1.0)).collect();
    if 1.0 - grid[count] > 1e-9 {
        grid.push(1.0);
    } else {
        grid[count] = 1.0;
    }
    Ok(grid)
}

/// Rows `(R1, eq102, eq103)` for `R1` on [`rate_grid`].
pub fn fig1_table(q: f64, t: u32, step: f64) -> Result<Vec<Fig1Row>> {
    check_inputs(t, 0.0, q)?;
    use rayon::prelude::*;
    rate_grid(step)?
        .into_par_iter()
        .map(|r1| Ok(Fig1Row { r1, eq102: eq102_bound(t, r1, q)?, eq103: eq103_bound(t, r1, q)? }))
        .collect()
}

/// Header `R1,eq102,eq103`, nine decimals, `\n` line endings.
pub fn fig1_csv(rows: &[Fig1Row]) -> String {
    let mut out = String::from("R1,eq102,eq103\n");
    for r in rows {
        out.push_str(&format!("{:.9},{:.9},{:.9}\n", r.r1, r.eq102, r.eq103));
    }
    out
}
