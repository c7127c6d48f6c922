//! How much a coalition of shares reveals about the secret.
//!
//! [`leakage_dim`] is the rank formula; [`leakage_mi`] computes the mutual
//! information from the exact joint distribution and serves as its oracle.

use std::collections::{BTreeMap, HashMap};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::scheme::RampScheme;
use crate::code::{binom_u128, Combinations, CoordSet};
use crate::error::{Error, Result};
use crate::field::Felt;
use crate::Budget;

/// `[k1 - dim(C1 ∩ V_{A^c})] - [k2 - dim(C2 ∩ V_{A^c})]`, i.e.
/// `rank(G1|_A) - rank(G2|_A)`, in field symbols.
pub fn leakage_dim(scheme: &RampScheme, coalition: &CoordSet) -> usize {
    let pair = scheme.pair();
    let cols = coalition.members();
    pair.larger().rank_on(cols) - pair.smaller().rank_on(cols)
}

/// Natural log of a positive integer, kept symbolic as `Σ e_p ln p`.
type LogForm = BTreeMap<u64, BigRational>;

fn add_log(acc: &mut LogForm, mut x: u64, weight: &BigRational) {
    let mut p = 2u64;
    while p * p <= x {
        while x % p == 0 {
            *acc.entry(p).or_insert_with(BigRational::zero) += weight;
            x /= p;
        }
        p += 1;
    }
    if x > 1 {
        *acc.entry(x).or_insert_with(BigRational::zero) += weight;
    }
}

/// `I(secret; shares_A) / ln q`, exact.
///
/// Enumerates all `q^k1` pairs `(s, r)` uniformly and evaluates
/// `Σ P(s,y) log(P(s,y) / (P(s) P(y)))`. The result is returned only when it
/// is a rational multiple of `ln q`.
pub fn leakage_mi(scheme: &RampScheme, coalition: &CoordSet, budget: &Budget) -> Result<BigRational> {
    let f = scheme.field();
    let q = f.q() as u64;
    let (l, k2) = (scheme.secret_len(), scheme.pair().k2());
    let k1 = l + k2;
    let total = q.checked_pow(k1 as u32).filter(|&t| t <= budget.enumeration).ok_or(Error::BudgetExceeded {
        what: "secret/randomness pairs for mutual information",
        needed: (q as u128).saturating_pow(k1 as u32),
        budget: budget.enumeration as u128,
    })?;
    let restricted = scheme.encoder().select_columns(coalition.members());
    let per_secret = q.pow(k2 as u32);
    let secrets = q.pow(l as u32);

    // joint[s][y] and marginal[y]; s enumerates the low digits of the coefficient index
    let mut joint: Vec<HashMap<Vec<Felt>, u64>> = vec![HashMap::new(); secrets as usize];
    let mut marginal: HashMap<Vec<Felt>, u64> = HashMap::new();
    let mut coeffs = vec![Felt::ZERO; k1];
    for idx in 0..total {
        let mut x = idx;
        for c in coeffs.iter_mut() {
            *c = Felt((x % q) as u32);
            x /= q;
        }
        let y = restricted.left_mul_vec(&coeffs)?;
        *marginal.entry(y.clone()).or_default() += 1;
        *joint[(idx % secrets) as usize].entry(y).or_default() += 1;
    }

    let mut form = LogForm::new();
    let n_big = BigInt::from(total);
    for row in &joint {
        for (y, &c_sy) in row {
            let weight = BigRational::new(BigInt::from(c_sy), n_big.clone());
            // log(c_sy · N / (c_s · c_y))
            add_log(&mut form, c_sy, &weight);
            add_log(&mut form, total, &weight);
            add_log(&mut form, per_secret, &-weight.clone());
            add_log(&mut form, marginal[y], &-weight);
        }
    }
    form.retain(|_, v| !v.is_zero());
    let p = f.p() as u64;
    if let Some((&prime, _)) = form.iter().find(|(&prime, _)| prime != p) {
        return Err(Error::IrrationalLeakage(format!("ln {prime} appears alongside ln {p}")));
    }
    let coef = form.remove(&p).unwrap_or_else(BigRational::zero);
    Ok(coef / BigRational::from_integer(BigInt::from(f.m())))
}

fn check_t(scheme: &RampScheme, t: usize) -> Result<()> {
    let max = scheme.secret_len();
    if t == 0 || t > max {
        return Err(Error::InvalidT { t, max });
    }
    Ok(())
}

fn check_coalitions(n: usize, sizes: impl Iterator<Item = usize>, budget: &Budget) -> Result<()> {
    let needed = sizes.map(|s| binom_u128(n, s)).fold(0u128, |a, b| a.saturating_add(b));
    if needed > budget.coalitions as u128 {
        return Err(Error::BudgetExceeded { what: "coalitions to scan", needed, budget: budget.coalitions as u128 });
    }
    Ok(())
}

/// Smallest coalition size learning at least `t` symbols of the secret.
pub fn adversary_threshold(scheme: &RampScheme, t: usize, budget: &Budget) -> Result<usize> {
    check_t(scheme, t)?;
    let n = scheme.n();
    // leakage never exceeds |A|
    check_coalitions(n, t..=n, budget)?;
    for size in t..=n {
        if Combinations::new(n, size).any(|m| leakage_dim(scheme, &CoordSet::new(n, m).expect("valid subset")) >= t) {
            return Ok(size);
        }
    }
    unreachable!("the full coalition learns the whole secret")
}

/// Worst-case leakage by coalition size, `m = 0..=n`.
pub fn leakage_profile(scheme: &RampScheme, budget: &Budget) -> Result<Vec<usize>> {
    let n = scheme.n();
    check_coalitions(n, 0..=n, budget)?;
    Ok((0..=n)
        .into_par_iter()
        .map(|size| {
            Combinations::new(n, size)
                .map(|m| leakage_dim(scheme, &CoordSet::new(n, m).expect("valid subset")))
                .max()
                .unwrap_or(0)
        })
        .collect())
}

/// `leakage_mi` as an integer when it is one.
pub fn as_integer(x: &BigRational) -> Option<BigUint> {
    if x.denom().is_one() {
        x.numer().to_biguint()
    } else {
        None
    }
}
