//! Exact subspace counts (Gaussian binomials and relatives).

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type BigCount = BigUint;

fn qpow(q: u64, e: i64) -> BigUint {
    BigUint::from(q).pow(e as u32)
}

fn exact_div(num: BigUint, den: BigUint, what: impl FnOnce() -> String) -> Result<BigUint> {
    let (quo, rem) = num.div_rem(&den);
    if !rem.is_zero() {
        return Err(Error::NonIntegralQuotient(what()));
    }
    Ok(quo)
}

/// `N_1(w, u) = ∏_{i<u} (q^w - q^i) / (q^u - q^i)`: the number of
/// `u`-dimensional subspaces of `F_q^w`. Zero when `u < 0` or `u > w`.
pub fn n1(w: i64, u: i64, q: u64) -> BigCount {
    if u < 0 || u > w {
        return BigUint::zero();
    }
    let (mut num, mut den) = (BigUint::one(), BigUint::one());
    let (qw, qu) = (qpow(q, w), qpow(q, u));
    for i in 0..u {
        let qi = qpow(q, i);
        num *= &qw - &qi;
        den *= &qu - &qi;
    }
    exact_div(num, den, || format!("N1({w},{u}) over q={q}")).expect("Gaussian binomials are integral")
}

/// `N_2(w, u, v) = ∏_{i<v} (q^w - q^{u+i}) / (q^v - q^i)`: the number of
/// `v`-dimensional subspaces of `F_q^w` meeting a fixed `u`-dimensional one
/// trivially. Zero when `u + v > w` or any argument is negative.
pub fn n2(w: i64, u: i64, v: i64, q: u64) -> Result<BigCount> {
    if w < 0 || u < 0 || v < 0 || u + v > w {
        return Ok(BigUint::zero());
    }
    let (mut num, mut den) = (BigUint::one(), BigUint::one());
    let (qw, qv) = (qpow(q, w), qpow(q, v));
    for i in 0..v {
        num *= &qw - qpow(q, u + i);
        den *= &qv - qpow(q, i);
    }
    exact_div(num, den, || format!("N2({w},{u},{v}) over q={q}"))
}

/// `N_3(w, u, v, a) = N_1(u, a) · N_2(w - a, u - a, v - a)`.
pub fn n3(w: i64, u: i64, v: i64, a: i64, q: u64) -> Result<BigCount> {
    let first = n1(u, a, q);
    if first.is_zero() {
        return Ok(first);
    }
    Ok(first * n2(w - a, u - a, v - a, q)?)
}

/// `n choose m`.
pub fn binom_exact(n: i64, m: i64) -> Result<BigCount> {
    if n < 0 || m < 0 || m > n {
        return Err(Error::DomainError(format!("binomial C({n}, {m}) needs 0 <= m <= n")));
    }
    let m = m.min(n - m);
    let mut acc = BigUint::one();
    for i in 0..m {
        acc *= BigUint::from((n - i) as u64);
        acc /= BigUint::from((i + 1) as u64);
    }
    Ok(acc)
}
