use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rghw_core::bounds::{eq102_bound, eq103_bound, n1};
use rghw_core::pair::sample_full_rank;
use rghw_core::rghw::{pair_profile_by_codewords, rghw_profile, rghw_search};
use rghw_core::sss::{leakage_dim, leakage_mi, RampScheme};
use rghw_core::{sample_nested_pair, Budget, CoordSet, Felt, FieldSpec, MatrixFq};

fn pair_params() -> impl Strategy<Value = (u32, usize, usize, usize, u64)> {
    (prop::sample::select(vec![2u32, 3, 4]), 2usize..=7, any::<u64>()).prop_flat_map(|(q, n, seed)| {
        (1..=n).prop_flat_map(move |k1| (0..k1).prop_map(move |k2| (q, n, k1, k2, seed)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn singleton_and_strict_increase((q, n, k1, k2, seed) in pair_params()) {
        let f = FieldSpec::new(q).unwrap();
        let pair = sample_nested_pair(&f, n, k1, k2, seed).unwrap();
        let profile = rghw_profile(&pair, &Budget::default()).unwrap();
        prop_assert_eq!(profile.len(), k1 - k2);
        for (i, &m) in profile.iter().enumerate() {
            prop_assert!(m + k1 <= n + i + 1);
        }
        prop_assert!(profile.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn engines_agree((q, n, k1, k2, seed) in pair_params()) {
        let f = FieldSpec::new(q).unwrap();
        let pair = sample_nested_pair(&f, n, k1, k2, seed).unwrap();
        let scan = rghw_profile(&pair, &Budget::default()).unwrap();
        prop_assert_eq!(&scan, &pair_profile_by_codewords(&pair).unwrap());
        for t in 1..=k1 - k2 {
            prop_assert_eq!(scan[t - 1], rghw_search(&pair, t, 1 << 20).unwrap());
        }
    }

    #[test]
    fn leakage_monotone_under_inclusion((q, n, k1, k2, seed) in pair_params(), a in any::<u64>(), b in any::<u64>()) {
        prop_assume!(k1 > k2);
        let f = FieldSpec::new(q).unwrap();
        let scheme = RampScheme::from_pair(sample_nested_pair(&f, n, k1, k2, seed).unwrap()).unwrap();
        let small = CoordSet::from_mask(n, a & b & ((1 << n) - 1));
        let large = CoordSet::from_mask(n, a & ((1 << n) - 1));
        prop_assert!(leakage_dim(&scheme, &small) <= leakage_dim(&scheme, &large));
        prop_assert!(leakage_dim(&scheme, &large) <= k1 - k2);
    }

    #[test]
    fn gaussian_binomial_symmetry(q in prop::sample::select(vec![2u64, 3, 4, 5, 7, 8, 9]), w in 0i64..=25, u in 0i64..=25) {
        prop_assume!(u <= w);
        prop_assert_eq!(n1(w, u, q), n1(w, w - u, q));
    }
}

/// `W' = A W + B G2` with `A` invertible: another valid secret embedding.
fn random_complement(scheme: &RampScheme, rng: &mut ChaCha8Rng) -> MatrixFq {
    let f = scheme.field();
    let l = scheme.secret_len();
    let k2 = scheme.pair().k2();
    let a = sample_full_rank(f, l, l, 0, rng).unwrap();
    let mut b = MatrixFq::zeros(f, l, k2);
    for r in 0..l {
        for c in 0..k2 {
            b.set(r, c, Felt(rng.gen_range(0..f.q())));
        }
    }
    let mixed = a.mul(scheme.complement()).unwrap();
    if k2 == 0 {
        return mixed;
    }
    let shift = b.mul(scheme.pair().smaller().generator()).unwrap();
    let rows = (0..l)
        .map(|r| mixed.row(r).iter().zip(shift.row(r)).map(|(&x, &y)| f.add(x, y)).collect())
        .collect();
    MatrixFq::from_rows(f, scheme.n(), rows).unwrap()
}

#[test]
fn leakage_invariant_under_complement_choice() {
    let budget = Budget::default();
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for (q, n, k1, k2, seed) in [(2u32, 6, 4, 2, 1u64), (3, 5, 3, 1, 2), (4, 4, 3, 1, 3), (2, 7, 4, 1, 4)] {
        let f = FieldSpec::new(q).unwrap();
        let pair = sample_nested_pair(&f, n, k1, k2, seed).unwrap();
        let canonical = RampScheme::from_pair(pair.clone()).unwrap();
        let w = random_complement(&canonical, &mut rng);
        assert_ne!(&w, canonical.complement(), "draw a different embedding");
        let other = RampScheme::with_complement(pair, w).unwrap();
        for mask in 0u64..1 << n {
            let a = CoordSet::from_mask(n, mask);
            let expected = BigRational::from_integer(BigInt::from(leakage_dim(&canonical, &a)));
            assert_eq!(leakage_mi(&canonical, &a, &budget).unwrap(), expected);
            assert_eq!(leakage_mi(&other, &a, &budget).unwrap(), expected);
        }
    }
}

#[test]
fn curves_nonincreasing_in_rate_and_nondecreasing_in_t() {
    for q in [2.0, 4.0] {
        for t in [1u32, 2, 4, 8] {
            let mut prev = (f64::INFINITY, f64::INFINITY);
            for i in 0..=50 {
                let r1 = i as f64 / 50.0;
                let cur = (eq102_bound(t, r1, q).unwrap(), eq103_bound(t, r1, q).unwrap());
                assert!(cur.0 <= prev.0 && cur.1 <= prev.1, "q={q} t={t} r1={r1}");
                let next = (eq102_bound(t + 1, r1, q).unwrap(), eq103_bound(t + 1, r1, q).unwrap());
                assert!(next.0 >= cur.0 - 1e-9 && next.1 >= cur.1 - 1e-9, "q={q} t={t} r1={r1}");
                prev = cur;
            }
        }
    }
}

#[test]
fn n1_counts_match_product_of_powers_for_zero_and_full() {
    for q in [2u64, 3, 4] {
        for w in 0..=10 {
            assert_eq!(n1(w, 0, q), BigUint::from(1u32));
            assert_eq!(n1(w, w, q), BigUint::from(1u32));
        }
    }
}
