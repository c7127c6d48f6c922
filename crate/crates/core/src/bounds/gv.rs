//! Exact evaluation of the Gilbert–Varshamov-type existence certificate for
//! nested pairs with a prescribed relative generalized Hamming weight.
//!
//! The certificate compares
//!
//! ```text
//! C(n,d) Σ_{b=t+1}^{k1-k2} Σ_{a=0}^{min(d-b, k1-b, k2)} N1(d,a) N2(n-a, d-a, k2-a) N3(n-k2, d-a, k1-k2, b)
//! ```
//!
//! against `N1(n, k2) N1(n-k2, k1-k2)`. A strict `<` guarantees a pair with
//! `dim C1 = k1`, `dim C2 = k2` and `M_t(C1, C2) >= d`, provided
//! `1 <= t <= k1 - k2 - 1`.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::counting::{binom_exact, n1, n2, BigCount};
use crate::error::{Error, Result};
use crate::field::prime_power;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GvParams {
    pub q: u64,
    pub n: usize,
    pub k1: usize,
    pub k2: usize,
    pub t: usize,
    pub d: usize,
}

impl GvParams {
    pub fn validate(&self) -> Result<()> {
        validate_dims(self.q, self.n, self.k1, self.k2, self.t)?;
        if self.d < self.t || self.d > self.n {
            return Err(Error::InvalidParams(format!("need t <= d <= n, got t={}, d={}, n={}", self.t, self.d, self.n)));
        }
        Ok(())
    }
}

fn validate_dims(q: u64, n: usize, k1: usize, k2: usize, t: usize) -> Result<()> {
    if prime_power(q).is_none() {
        return Err(Error::InvalidParams(format!("q = {q} is not a prime power")));
    }
    if !(k2 < k1 && k1 <= n) {
        return Err(Error::InvalidParams(format!("need 0 <= k2 < k1 <= n, got n={n}, k1={k1}, k2={k2}")));
    }
    if t < 1 || t + 1 > k1 - k2 {
        return Err(Error::InvalidParams(format!("need 1 <= t <= k1 - k2 - 1, got t={t}, k1 - k2 = {}", k1 - k2)));
    }
    Ok(())
}

/// Both sides of the certificate, exact.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    #[serde(with = "decimal")]
    pub lhs: BigCount,
    #[serde(with = "decimal")]
    pub rhs: BigCount,
    pub certified: bool,
}

impl BoundReport {
    /// `log2(lhs / rhs)`, for display only; `-inf` when `lhs = 0`.
    pub fn log2_ratio(&self) -> f64 {
        if self.lhs.is_zero() {
            return f64::NEG_INFINITY;
        }
        log2_big(&self.lhs) - log2_big(&self.rhs)
    }
}

fn log2_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    let shift = bits.saturating_sub(64);
    let top = (x >> shift).iter_u64_digits().next().unwrap_or(0) as f64;
    top.log2() + shift as f64
}

mod decimal {
    use num_bigint::BigUint;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_str_radix(10))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let s = String::deserialize(d)?;
        BigUint::parse_bytes(s.as_bytes(), 10).ok_or_else(|| D::Error::custom(format!("not a decimal integer: {s}")))
    }
}

/// Memoised `N1` for one field order.
struct N1Cache {
    q: u64,
    table: HashMap<(i64, i64), BigUint>,
}

impl N1Cache {
    fn get(&mut self, w: i64, u: i64) -> BigUint {
        let q = self.q;
        self.table.entry((w, u)).or_insert_with(|| n1(w, u, q)).clone()
    }
}

/// Right-hand side `N1(n, k2) N1(n - k2, k1 - k2)`.
pub fn gv_rhs(q: u64, n: usize, k1: usize, k2: usize) -> BigCount {
    let (n, k1, k2) = (n as i64, k1 as i64, k2 as i64);
    n1(n, k2, q) * n1(n - k2, k1 - k2, q)
}

pub fn gv_certify(p: &GvParams) -> Result<BoundReport> {
    p.validate()?;
    let rhs = gv_rhs(p.q, p.n, p.k1, p.k2);
    let lhs = gv_lhs(p, &mut N1Cache { q: p.q, table: HashMap::new() })?;
    let certified = lhs < rhs;
    Ok(BoundReport { lhs, rhs, certified })
}

fn gv_lhs(p: &GvParams, cache: &mut N1Cache) -> Result<BigUint> {
    let q = p.q;
    let (n, k1, k2, t, d) = (p.n as i64, p.k1 as i64, p.k2 as i64, p.t as i64, p.d as i64);
    let mut sum = BigUint::zero();
    for b in t + 1..=k1 - k2 {
        let upper = (d - b).min(k1 - b).min(k2);
        for a in 0..=upper {
            let f1 = cache.get(d, a);
            if f1.is_zero() {
                continue;
            }
            let f2 = n2(n - a, d - a, k2 - a, q)?;
            if f2.is_zero() {
                continue;
            }
            // N3(n - k2, d - a, k1 - k2, b) = N1(d - a, b) N2(n - k2 - b, d - a - b, k1 - k2 - b)
            let f3a = cache.get(d - a, b);
            if f3a.is_zero() {
                continue;
            }
            let f3b = n2(n - k2 - b, d - a - b, k1 - k2 - b, q)?;
            sum += f1 * f2 * f3a * f3b;
        }
    }
    Ok(binom_exact(n, d)? * sum)
}

/// Certificate verdicts for every `d` in `t..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaxDReport {
    pub max_d: Option<usize>,
    /// `certified[i]` is the verdict at `d = t + i`.
    pub certified: Vec<bool>,
    pub reports: Vec<BoundReport>,
}

/// Evaluates every `d` in `t..=n`; no monotonicity in `d` is assumed.
pub fn gv_max_d(q: u64, n: usize, k1: usize, k2: usize, t: usize) -> Result<MaxDReport> {
    validate_dims(q, n, k1, k2, t)?;
    let reports: Vec<BoundReport> = (t..=n)
        .into_par_iter()
        .map(|d| gv_certify(&GvParams { q, n, k1, k2, t, d }))
        .collect::<Result<_>>()?;
    let certified: Vec<bool> = reports.iter().map(|r| r.certified).collect();
    let max_d = certified.iter().rposition(|&c| c).map(|i| t + i);
    Ok(MaxDReport { max_d, certified, reports })
}
