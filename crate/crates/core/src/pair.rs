//! Nested code pairs `C2 ⊆ C1`, their constructions and file format.

use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::field::{Felt, FieldJson, FieldSpec};
use crate::linalg::MatrixFq;

/// A nested pair of linear codes `smaller ⊆ larger` of common length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NestedPair {
    larger: LinearCode,
    smaller: LinearCode,
}

impl NestedPair {
    pub fn new(larger: LinearCode, smaller: LinearCode) -> Result<Self> {
        if larger.field() != smaller.field() {
            return Err(Error::FieldMismatch);
        }
        if larger.n() != smaller.n() {
            return Err(Error::LengthMismatch { expected: larger.n(), found: smaller.n() });
        }
        if !smaller.is_subcode_of(&larger) {
            return Err(Error::NotNested);
        }
        Ok(NestedPair { larger, smaller })
    }

    pub fn larger(&self) -> &LinearCode {
        &self.larger
    }

    pub fn smaller(&self) -> &LinearCode {
        &self.smaller
    }

    pub fn field(&self) -> &FieldSpec {
        self.larger.field()
    }

    pub fn n(&self) -> usize {
        self.larger.n()
    }

    pub fn k1(&self) -> usize {
        self.larger.k()
    }

    pub fn k2(&self) -> usize {
        self.smaller.k()
    }

    /// Rows of the canonical larger generator whose leading column is not a
    /// leading column of the smaller code. Together with the smaller code's
    /// generator they form a basis of the larger code.
    pub fn complement_basis(&self) -> MatrixFq {
        let small = self.smaller.pivots();
        let rows: Vec<usize> = self
            .larger
            .pivots()
            .iter()
            .enumerate()
            .filter(|(_, c)| !small.contains(c))
            .map(|(r, _)| r)
            .collect();
        self.larger.generator().select_rows(&rows)
    }

    /// `(C2^⊥, C1^⊥)`, nested the other way round.
    pub fn dual_pair(&self) -> NestedPair {
        NestedPair { larger: self.smaller.dual(), smaller: self.larger.dual() }
    }
}

/// Pair with `C2 = V_{0..k2}` and `C1 = C2 + D`, where `D` is spanned by
/// `[I | 1]` placed on coordinates `k2..n`. For `t = k1 - k2` it attains
/// `M_t = n - k2`.
pub fn lemma3_construct(field: &FieldSpec, n: usize, k1: usize, k2: usize) -> Result<NestedPair> {
    if !(k2 < k1 && k1 <= n) {
        return Err(Error::InvalidDims(format!("need 0 <= k2 < k1 <= n, got n={n}, k1={k1}, k2={k2}")));
    }
    let l = k1 - k2;
    let mut g1 = MatrixFq::zeros(field, k1, n);
    for i in 0..k2 {
        g1.set(i, i, Felt::ONE);
    }
    for r in 0..l {
        g1.set(k2 + r, k2 + r, Felt::ONE);
        for c in k1..n {
            g1.set(k2 + r, c, Felt::ONE);
        }
    }
    let c1 = LinearCode::new(field, n, &g1)?;
    let c2 = LinearCode::new(field, n, &g1.select_rows(&(0..k2).collect::<Vec<_>>()))?;
    NestedPair::new(c1, c2)
}

/// Parameters realised by [`theorem2_construct`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Theorem2Witness {
    pub pair: NestedPair,
    pub t: usize,
    /// `⌊nδ⌋`, the RGHW the pair attains at level `t`.
    pub d: usize,
}

/// `d = ⌊nδ⌋`, `k1 = n + t - d`, `k2 = n - d`, built via [`lemma3_construct`].
pub fn theorem2_construct(field: &FieldSpec, n: usize, t: usize, delta: Rational64) -> Result<Theorem2Witness> {
    if delta < Rational64::from_integer(0) || delta > Rational64::from_integer(1) {
        return Err(Error::DomainError(format!("delta = {delta} is outside [0, 1]")));
    }
    let d = (delta * Rational64::from_integer(n as i64)).floor().to_integer() as usize;
    let k1 = n + t - d;
    let k2 = n - d;
    if t == 0 || k1 > n {
        return Err(Error::InvalidDims(format!("k1 = n + t - floor(n delta) = {k1} with n = {n}, t = {t}")));
    }
    Ok(Theorem2Witness { pair: lemma3_construct(field, n, k1, k2)?, t, d })
}

/// Seeded random pair: a uniformly random full-rank `k1 × n` matrix (by
/// rejection) generates `C1`, its first `k2` rows generate `C2`.
pub fn sample_nested_pair(field: &FieldSpec, n: usize, k1: usize, k2: usize, seed: u64) -> Result<NestedPair> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_nested_pair_with(field, n, k1, k2, &mut rng)
}

pub fn sample_nested_pair_with<R: Rng>(field: &FieldSpec, n: usize, k1: usize, k2: usize, rng: &mut R) -> Result<NestedPair> {
    let basis = sample_full_rank(field, n, k1, k2, rng)?;
    let c1 = LinearCode::new(field, n, &basis)?;
    let c2 = LinearCode::new(field, n, &basis.select_rows(&(0..k2).collect::<Vec<_>>()))?;
    Ok(NestedPair { larger: c1, smaller: c2 })
}

/// The raw full-rank sample whose first `k2` rows span the smaller code.
pub fn sample_full_rank<R: Rng>(field: &FieldSpec, n: usize, k1: usize, k2: usize, rng: &mut R) -> Result<MatrixFq> {
    if !(k2 <= k1 && k1 <= n) {
        return Err(Error::InvalidDims(format!("need 0 <= k2 <= k1 <= n, got n={n}, k1={k1}, k2={k2}")));
    }
    let q = field.q();
    loop {
        let mut m = MatrixFq::zeros(field, k1, n);
        for r in 0..k1 {
            for c in 0..n {
                m.set(r, c, Felt(rng.gen_range(0..q)));
            }
        }
        if m.rank() == k1 {
            return Ok(m);
        }
    }
}

/// JSON file holding a nested pair; elements are canonical indices in `[0, q)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairFile {
    pub field: FieldJson,
    pub n: usize,
    #[serde(rename = "G1")]
    pub g1: Vec<Vec<u32>>,
    #[serde(rename = "G2")]
    pub g2: Vec<Vec<u32>>,
}

impl PairFile {
    pub fn from_pair(pair: &NestedPair) -> Self {
        PairFile {
            field: pair.field().to_json(),
            n: pair.n(),
            g1: pair.larger().generator().to_indices(),
            g2: pair.smaller().generator().to_indices(),
        }
    }

    pub fn to_pair(&self) -> Result<NestedPair> {
        let field = FieldSpec::from_json(&self.field)?;
        let g1 = MatrixFq::from_indices(&field, self.n, &self.g1)?;
        let g2 = MatrixFq::from_indices(&field, self.n, &self.g2)?;
        NestedPair::new(LinearCode::new(&field, self.n, &g1)?, LinearCode::new(&field, self.n, &g2)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lemma3_shape() {
        let f = FieldSpec::new(2).unwrap();
        let p = lemma3_construct(&f, 6, 4, 2).unwrap();
        assert_eq!((p.k1(), p.k2()), (4, 2));
        assert_eq!(p.smaller().generator().to_indices(), vec![vec![1, 0, 0, 0, 0, 0], vec![0, 1, 0, 0, 0, 0]]);
        let w = p.complement_basis();
        assert_eq!(w.to_indices(), vec![vec![0, 0, 1, 0, 1, 1], vec![0, 0, 0, 1, 1, 1]]);
        assert!(matches!(lemma3_construct(&f, 4, 2, 2), Err(Error::InvalidDims(_))));
        assert!(matches!(lemma3_construct(&f, 4, 5, 2), Err(Error::InvalidDims(_))));
    }

    #[test]
    fn lemma3_zero_inner_code() {
        let f = FieldSpec::new(3).unwrap();
        let p = lemma3_construct(&f, 6, 3, 0).unwrap();
        assert_eq!(p.k2(), 0);
        assert_eq!(p.k1(), 3);
    }

    #[test]
    fn theorem2_dims() {
        let f = FieldSpec::new(2).unwrap();
        let w = theorem2_construct(&f, 10, 2, Rational64::new(1, 2)).unwrap();
        assert_eq!((w.pair.k1(), w.pair.k2(), w.d), (7, 5, 5));
        assert!(matches!(theorem2_construct(&f, 10, 1, Rational64::from_integer(0)), Err(Error::InvalidDims(_))));
        let f3 = FieldSpec::new(3).unwrap();
        let w = theorem2_construct(&f3, 9, 3, Rational64::new(1, 3)).unwrap();
        assert_eq!((w.pair.k1(), w.pair.k2(), w.d), (9, 6, 3));
    }

    #[test]
    fn sampling_is_deterministic_and_nested() {
        let f = FieldSpec::new(2).unwrap();
        let a = sample_nested_pair(&f, 6, 3, 1, 7).unwrap();
        let b = sample_nested_pair(&f, 6, 3, 1, 7).unwrap();
        assert_eq!(a, b);
        assert_eq!((a.k1(), a.k2()), (3, 1));
        assert!(a.smaller().is_subcode_of(a.larger()));
        let eq = sample_nested_pair(&f, 5, 2, 2, 3).unwrap();
        assert_eq!(eq.larger(), eq.smaller());
        assert!(matches!(sample_nested_pair(&f, 3, 4, 1, 0), Err(Error::InvalidDims(_))));
    }

    #[test]
    fn dual_pair_examples() {
        let f = FieldSpec::new(2).unwrap();
        let p = NestedPair::new(LinearCode::full(&f, 4), LinearCode::zero(&f, 4)).unwrap();
        assert_eq!(p.dual_pair(), p);
        let s = sample_nested_pair(&f, 5, 3, 1, 1).unwrap();
        let d = s.dual_pair();
        assert_eq!((d.k1(), d.k2()), (4, 2));
        assert!(d.smaller().is_subcode_of(d.larger()));
        assert_eq!(d.dual_pair(), s);
    }

    #[test]
    fn complement_basis_spans_with_smaller() {
        for seed in 0..40 {
            let f = FieldSpec::new(if seed % 2 == 0 { 3 } else { 4 }).unwrap();
            let p = sample_nested_pair(&f, 7, 4, 2, seed).unwrap();
            let w = p.complement_basis();
            assert_eq!(w.rows(), 2);
            let stacked = w.vstack(p.smaller().generator()).unwrap();
            assert_eq!(stacked.rank(), 4);
            assert_eq!(LinearCode::new(&f, 7, &stacked).unwrap(), *p.larger());
        }
    }

    #[test]
    fn pair_file_round_trip_and_rejects_non_nested() {
        let f = FieldSpec::new(4).unwrap();
        let p = sample_nested_pair(&f, 5, 3, 1, 9).unwrap();
        let json = serde_json::to_string(&PairFile::from_pair(&p)).unwrap();
        let back: PairFile = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_pair().unwrap(), p);

        let bad = PairFile {
            field: FieldSpec::new(2).unwrap().to_json(),
            n: 3,
            g1: vec![vec![1, 1, 0]],
            g2: vec![vec![1, 0, 0]],
        };
        assert_eq!(bad.to_pair(), Err(Error::NotNested));
    }
}
