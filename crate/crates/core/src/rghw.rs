//! Relative generalized Hamming weights
//!
//! `M_t(C1, C2) = min { |I| : dim(C1 ∩ V_I) - dim(C2 ∩ V_I) >= t }`.
//!
//! Three exact engines live here:
//!
//! * [`rghw`] / [`rghw_profile`]: scan coordinate sets by ascending size,
//!   lexicographically within a size, and stop at the first witness. The
//!   number of sets is checked against the budget before scanning.
//! * [`rghw_search`]: branch and bound on the complement `J = I^c`. The map
//!   `J ↦ rank(G1|_J) - rank(G2|_J)` is monotone, so coordinates that are
//!   infeasible for some `J` stay infeasible for every superset. Handles
//!   structured pairs at lengths where the scan is out of budget.
//! * [`rghw_profile_by_codewords`]: enumerates all codewords, counts them
//!   per support and takes subset sums. Fast for small `q^k1`.

use crate::code::{binom_u128, Combinations, CoordSet};
use crate::error::{Error, Result};
use crate::field::{Felt, FieldSpec};
use crate::linalg::MatrixFq;
use crate::pair::NestedPair;
use crate::Budget;

fn check_t(pair: &NestedPair, t: usize) -> Result<()> {
    let max = pair.k1() - pair.k2();
    if t == 0 || t > max {
        return Err(Error::InvalidT { t, max });
    }
    Ok(())
}

/// Number of coordinate sets the ascending scan may visit when starting at size `from`.
pub fn scan_size(n: usize, from: usize) -> u128 {
    (from..=n).map(|s| binom_u128(n, s)).fold(0u128, |a, b| a.saturating_add(b))
}

fn check_scan_budget(n: usize, from: usize, budget: &Budget) -> Result<()> {
    let needed = scan_size(n, from);
    if needed > budget.subsets as u128 {
        return Err(Error::BudgetExceeded { what: "coordinate subsets for RGHW scan", needed, budget: budget.subsets as u128 });
    }
    Ok(())
}

/// Dimension difference `dim(C1 ∩ V_I) - dim(C2 ∩ V_I)` for the set whose complement is `outside`.
#[inline]
fn dim_gap(pair: &NestedPair, outside: &[usize]) -> usize {
    let (c1, c2) = (pair.larger(), pair.smaller());
    (c1.k() - c1.rank_on(outside)) - (c2.k() - c2.rank_on(outside))
}

fn complement_of(n: usize, members: &[usize], out: &mut Vec<usize>) {
    out.clear();
    let mut it = members.iter().peekable();
    for i in 0..n {
        if it.peek() == Some(&&i) {
            it.next();
        } else {
            out.push(i);
        }
    }
}

fn assert_singleton(pair: &NestedPair, t: usize, m: usize) {
    assert!(
        m + pair.k1() <= pair.n() + t,
        "Singleton bound violated: M_{t} = {m}, k1 = {}, n = {}",
        pair.k1(),
        pair.n()
    );
}

/// `M_t(C1, C2)` by ascending scan.
pub fn rghw(pair: &NestedPair, t: usize, budget: &Budget) -> Result<usize> {
    check_t(pair, t)?;
    let n = pair.n();
    check_scan_budget(n, t, budget)?;
    let mut outside = Vec::with_capacity(n);
    // the gap never exceeds |I|, so sizes below t cannot qualify
    for size in t..=n {
        for members in Combinations::new(n, size) {
            complement_of(n, &members, &mut outside);
            if dim_gap(pair, &outside) >= t {
                assert_singleton(pair, t, size);
                return Ok(size);
            }
        }
    }
    unreachable!("I = all coordinates attains gap k1 - k2 >= t")
}

/// `(M_1, ..., M_{k1-k2})` in one ascending scan.
pub fn rghw_profile(pair: &NestedPair, budget: &Budget) -> Result<Vec<usize>> {
    let n = pair.n();
    let l = pair.k1() - pair.k2();
    if l == 0 {
        return Ok(Vec::new());
    }
    check_scan_budget(n, 1, budget)?;
    let mut profile = vec![usize::MAX; l];
    let mut found = 0;
    let mut outside = Vec::with_capacity(n);
    'sizes: for size in 1..=n {
        for members in Combinations::new(n, size) {
            complement_of(n, &members, &mut outside);
            let gap = dim_gap(pair, &outside);
            while found < gap {
                profile[found] = size;
                found += 1;
            }
            if found == l {
                break 'sizes;
            }
        }
    }
    for (i, &m) in profile.iter().enumerate() {
        assert_singleton(pair, i + 1, m);
    }
    Ok(profile)
}

/// `M_t` by branch and bound over complements; `node_budget` caps the search tree.
pub fn rghw_search(pair: &NestedPair, t: usize, node_budget: u64) -> Result<usize> {
    check_t(pair, t)?;
    let n = pair.n();
    let slack = pair.k1() - pair.k2() - t;
    let mut state = Search { pair, slack, best: 0, nodes: 0, node_budget, current: Vec::new() };
    let candidates: Vec<usize> = (0..n).collect();
    let candidates = state.feasible_extensions(&candidates);
    state.dfs(candidates)?;
    let m = n - state.best;
    assert_singleton(pair, t, m);
    Ok(m)
}

struct Search<'a> {
    pair: &'a NestedPair,
    slack: usize,
    best: usize,
    nodes: u64,
    node_budget: u64,
    current: Vec<usize>,
}

impl Search<'_> {
    fn penalty(&self, cols: &[usize]) -> usize {
        self.pair.larger().rank_on(cols) - self.pair.smaller().rank_on(cols)
    }

    /// Candidates `c` with `current + c` still feasible, in increasing order.
    fn feasible_extensions(&self, cands: &[usize]) -> Vec<usize> {
        let mut cols = self.current.clone();
        cands
            .iter()
            .copied()
            .filter(|&c| {
                cols.push(c);
                let ok = self.penalty(&cols) <= self.slack;
                cols.pop();
                ok
            })
            .collect()
    }

    fn dfs(&mut self, candidates: Vec<usize>) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.node_budget {
            return Err(Error::BudgetExceeded {
                what: "branch-and-bound nodes for RGHW search",
                needed: self.nodes as u128,
                budget: self.node_budget as u128,
            });
        }
        self.best = self.best.max(self.current.len());
        for i in 0..candidates.len() {
            if self.current.len() + candidates.len() - i <= self.best {
                return Ok(());
            }
            let c = candidates[i];
            self.current.push(c);
            let next = self.feasible_extensions(&candidates[i + 1..]);
            if self.current.len() + next.len() > self.best {
                self.dfs(next)?;
            } else {
                self.best = self.best.max(self.current.len());
            }
            self.current.pop();
        }
        Ok(())
    }
}

/// `M_t` by scan when the budget allows it, otherwise by branch and bound.
pub fn rghw_auto(pair: &NestedPair, t: usize, budget: &Budget) -> Result<usize> {
    match rghw(pair, t, budget) {
        Err(Error::BudgetExceeded { .. }) => rghw_search(pair, t, budget.search_nodes),
        other => other,
    }
}

/// Largest `q^k1` accepted by [`rghw_profile_by_codewords`].
pub const CODEWORD_ENUMERATION_LIMIT: u64 = 1 << 20;

/// Profile from explicit codeword enumeration.
///
/// `basis` has `k1` independent rows whose first `k2` rows span the smaller
/// code. Requires `n <= 24` and `q^k1 <= 2^20`.
pub fn rghw_profile_by_codewords(field: &FieldSpec, basis: &MatrixFq, k2: usize) -> Result<Vec<usize>> {
    let (k1, n) = (basis.rows(), basis.cols());
    if k2 > k1 {
        return Err(Error::InvalidDims(format!("k2 = {k2} exceeds the basis size {k1}")));
    }
    if n > 24 {
        return Err(Error::BudgetExceeded { what: "support table length", needed: n as u128, budget: 24 });
    }
    let q = field.q() as u64;
    let count = q.checked_pow(k1 as u32).unwrap_or(u64::MAX);
    if count > CODEWORD_ENUMERATION_LIMIT {
        return Err(Error::BudgetExceeded {
            what: "codewords to enumerate",
            needed: count as u128,
            budget: CODEWORD_ENUMERATION_LIMIT as u128,
        });
    }
    let mut c1 = vec![0u32; 1 << n];
    let mut c2 = vec![0u32; 1 << n];
    let mut coeffs = vec![Felt::ZERO; k1];
    let mut word = vec![Felt::ZERO; n];
    for idx in 0..count {
        let mut x = idx;
        for c in coeffs.iter_mut() {
            *c = Felt((x % q) as u32);
            x /= q;
        }
        word.fill(Felt::ZERO);
        for (r, &a) in coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (w, &g) in word.iter_mut().zip(basis.row(r)) {
                *w = field.add(*w, field.mul(a, g));
            }
        }
        let support = word.iter().enumerate().fold(0usize, |m, (i, w)| if w.is_zero() { m } else { m | 1 << i });
        c1[support] += 1;
        if coeffs[k2..].iter().all(|c| c.is_zero()) {
            c2[support] += 1;
        }
    }
    subset_sums(&mut c1, n);
    subset_sums(&mut c2, n);
    let l = k1 - k2;
    let mut profile = vec![usize::MAX; l];
    for mask in 0..1usize << n {
        let gap = log_q(c1[mask] as u64, q) - log_q(c2[mask] as u64, q);
        let size = mask.count_ones() as usize;
        for m in profile.iter_mut().take(gap) {
            *m = (*m).min(size);
        }
    }
    Ok(profile)
}

/// Pair convenience wrapper around [`rghw_profile_by_codewords`].
pub fn pair_profile_by_codewords(pair: &NestedPair) -> Result<Vec<usize>> {
    let basis = pair.smaller().generator().vstack(&pair.complement_basis())?;
    rghw_profile_by_codewords(pair.field(), &basis, pair.k2())
}

fn subset_sums(table: &mut [u32], n: usize) {
    for bit in 0..n {
        for mask in 0..table.len() {
            if mask >> bit & 1 == 1 {
                table[mask] += table[mask ^ (1 << bit)];
            }
        }
    }
}

fn log_q(mut x: u64, q: u64) -> usize {
    let mut e = 0;
    while x > 1 {
        debug_assert!(x % q == 0, "subspace sizes are powers of q");
        x /= q;
        e += 1;
    }
    e
}

/// Scan variant returning the lexicographically first witness set as well.
pub fn rghw_witness(pair: &NestedPair, t: usize, budget: &Budget) -> Result<CoordSet> {
    check_t(pair, t)?;
    let n = pair.n();
    check_scan_budget(n, t, budget)?;
    let mut outside = Vec::with_capacity(n);
    for size in t..=n {
        for members in Combinations::new(n, size) {
            complement_of(n, &members, &mut outside);
            if dim_gap(pair, &outside) >= t {
                return CoordSet::new(n, members);
            }
        }
    }
    unreachable!("I = all coordinates attains gap k1 - k2 >= t")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::LinearCode;
    use crate::pair::{lemma3_construct, sample_nested_pair};

    /// Direct evaluation over every subset, no ordering or pruning.
    fn naive_profile(pair: &NestedPair) -> Vec<usize> {
        let n = pair.n();
        let l = pair.k1() - pair.k2();
        let mut best = vec![usize::MAX; l];
        for mask in 0u64..1 << n {
            let i = CoordSet::from_mask(n, mask);
            let gap = pair.larger().shortened_dim(&i).unwrap() - pair.smaller().shortened_dim(&i).unwrap();
            for t in 1..=gap {
                best[t - 1] = best[t - 1].min(i.len());
            }
        }
        best
    }

    fn hamming74() -> NestedPair {
        let f = FieldSpec::new(2).unwrap();
        let g = MatrixFq::from_indices(
            &f,
            7,
            &[vec![1, 0, 0, 0, 0, 1, 1], vec![0, 1, 0, 0, 1, 0, 1], vec![0, 0, 1, 0, 1, 1, 0], vec![0, 0, 0, 1, 1, 1, 1]],
        )
        .unwrap();
        NestedPair::new(LinearCode::new(&f, 7, &g).unwrap(), LinearCode::zero(&f, 7)).unwrap()
    }

    #[test]
    fn full_over_zero_is_t() {
        for q in [2, 3, 4] {
            let f = FieldSpec::new(q).unwrap();
            let p = NestedPair::new(LinearCode::full(&f, 4), LinearCode::zero(&f, 4)).unwrap();
            assert_eq!(rghw_profile(&p, &Budget::default()).unwrap(), vec![1, 2, 3, 4]);
            for t in 1..=4 {
                assert_eq!(rghw(&p, t, &Budget::default()).unwrap(), t);
            }
        }
    }

    #[test]
    fn repetition_code_needs_everything() {
        let f = FieldSpec::new(2).unwrap();
        for n in 1..8 {
            let g = MatrixFq::from_indices(&f, n, &[vec![1; n]]).unwrap();
            let p = NestedPair::new(LinearCode::new(&f, n, &g).unwrap(), LinearCode::zero(&f, n)).unwrap();
            assert_eq!(rghw(&p, 1, &Budget::default()).unwrap(), n);
        }
    }

    #[test]
    fn hamming_profile_matches_naive_oracle() {
        let p = hamming74();
        let oracle = naive_profile(&p);
        // generalized Hamming weights of the [7,4,3] code
        assert_eq!(oracle, vec![3, 5, 6, 7]);
        assert_eq!(rghw_profile(&p, &Budget::default()).unwrap(), oracle);
        for t in 1..=4 {
            assert_eq!(rghw(&p, t, &Budget::default()).unwrap(), oracle[t - 1]);
            assert_eq!(rghw_search(&p, t, 1 << 20).unwrap(), oracle[t - 1]);
        }
        assert_eq!(pair_profile_by_codewords(&p).unwrap(), oracle);
    }

    #[test]
    fn lemma3_profile_tail() {
        let f = FieldSpec::new(2).unwrap();
        let p = lemma3_construct(&f, 6, 4, 2).unwrap();
        let prof = rghw_profile(&p, &Budget::default()).unwrap();
        assert_eq!(*prof.last().unwrap(), 4);
    }

    #[test]
    fn random_pair_matches_oracle() {
        let f = FieldSpec::new(2).unwrap();
        let p = sample_nested_pair(&f, 8, 4, 1, 0).unwrap();
        assert_eq!(rghw_profile(&p, &Budget::default()).unwrap(), naive_profile(&p));
    }

    #[test]
    fn engines_agree_on_random_pairs() {
        let mut seed = 0;
        for q in [2u32, 3, 4] {
            let f = FieldSpec::new(q).unwrap();
            for n in 2..=7 {
                for k1 in 1..=n.min(4) {
                    for k2 in 0..k1 {
                        seed += 1;
                        let p = sample_nested_pair(&f, n, k1, k2, seed).unwrap();
                        let oracle = naive_profile(&p);
                        let budget = Budget::default();
                        assert_eq!(rghw_profile(&p, &budget).unwrap(), oracle);
                        assert_eq!(pair_profile_by_codewords(&p).unwrap(), oracle);
                        for t in 1..=k1 - k2 {
                            assert_eq!(rghw(&p, t, &budget).unwrap(), oracle[t - 1]);
                            assert_eq!(rghw_search(&p, t, 1 << 20).unwrap(), oracle[t - 1], "q={q} n={n} k1={k1} k2={k2} t={t}");
                            let w = rghw_witness(&p, t, &budget).unwrap();
                            assert_eq!(w.len(), oracle[t - 1]);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn invalid_t_and_budget() {
        let p = hamming74();
        assert_eq!(rghw(&p, 0, &Budget::default()), Err(Error::InvalidT { t: 0, max: 4 }));
        assert_eq!(rghw(&p, 5, &Budget::default()), Err(Error::InvalidT { t: 5, max: 4 }));
        let tiny = Budget { subsets: 10, ..Budget::default() };
        assert!(matches!(rghw(&p, 1, &tiny), Err(Error::BudgetExceeded { .. })));
        assert!(matches!(rghw_profile(&p, &tiny), Err(Error::BudgetExceeded { .. })));
        assert_eq!(rghw_auto(&p, 1, &tiny).unwrap(), 3);
        assert!(matches!(rghw_search(&p, 2, 1), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn search_handles_long_lemma3_pairs() {
        let f = FieldSpec::new(2).unwrap();
        let p = lemma3_construct(&f, 40, 34, 32).unwrap();
        assert_eq!(rghw_search(&p, 2, 1 << 16).unwrap(), 8);
        assert!(matches!(rghw(&p, 2, &Budget::default()), Err(Error::BudgetExceeded { .. })));
    }
}
