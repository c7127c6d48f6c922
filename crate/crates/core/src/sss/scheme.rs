//! Linear ramp scheme: shares are `x = s·W + r·G2` for a secret `s ∈ F_q^l`
//! and uniform randomness `r ∈ F_q^{k2}`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::code::CoordSet;
use crate::error::{Error, Result};
use crate::field::{Felt, FieldSpec};
use crate::linalg::MatrixFq;
use crate::pair::NestedPair;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RampScheme {
    pair: NestedPair,
    complement: MatrixFq,
}

/// Outcome of [`RampScheme::reconstruct`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reconstruction {
    Secret(Vec<Felt>),
    Ambiguous,
    Inconsistent,
}

impl RampScheme {
    /// Scheme with the pair's canonical complement basis.
    pub fn from_pair(pair: NestedPair) -> Result<Self> {
        let complement = pair.complement_basis();
        Self::with_complement(pair, complement)
    }

    /// Scheme with an explicit secret embedding `W`. Its rows must lie in
    /// `C1` and, stacked on `G2`, span `C1`.
    pub fn with_complement(pair: NestedPair, complement: MatrixFq) -> Result<Self> {
        if pair.k1() == pair.k2() {
            return Err(Error::DegeneratePair);
        }
        let l = pair.k1() - pair.k2();
        if complement.rows() != l {
            return Err(Error::InvalidDims(format!("complement has {} rows, expected {l}", complement.rows())));
        }
        if complement.cols() != pair.n() {
            return Err(Error::WidthMismatch { expected: pair.n(), found: complement.cols() });
        }
        for row in complement.row_vecs() {
            if !pair.larger().contains(&row)? {
                return Err(Error::InvalidDims("complement row lies outside the larger code".into()));
            }
        }
        if complement.vstack(pair.smaller().generator())?.rank() != pair.k1() {
            return Err(Error::InvalidDims("complement and smaller code do not span the larger code".into()));
        }
        Ok(RampScheme { pair, complement })
    }

    pub fn pair(&self) -> &NestedPair {
        &self.pair
    }

    pub fn complement(&self) -> &MatrixFq {
        &self.complement
    }

    pub fn field(&self) -> &FieldSpec {
        self.pair.field()
    }

    pub fn n(&self) -> usize {
        self.pair.n()
    }

    /// Secret length in field symbols, `k1 - k2`.
    pub fn secret_len(&self) -> usize {
        self.complement.rows()
    }

    /// `[W; G2]`: row `i < l` carries secret symbol `i`, the rest carry randomness.
    pub(crate) fn encoder(&self) -> MatrixFq {
        self.complement.vstack(self.pair.smaller().generator()).expect("same width")
    }

    /// `s·W + r·G2` for explicit randomness.
    pub fn encode(&self, secret: &[Felt], randomness: &[Felt]) -> Result<Vec<Felt>> {
        let l = self.secret_len();
        if secret.len() != l {
            return Err(Error::LengthMismatch { expected: l, found: secret.len() });
        }
        let k2 = self.pair.k2();
        if randomness.len() != k2 {
            return Err(Error::LengthMismatch { expected: k2, found: randomness.len() });
        }
        let f = self.field();
        if let Some(bad) = secret.iter().chain(randomness).find(|e| e.index() >= f.q()) {
            return Err(Error::ElementOutOfRange { index: bad.index() as u64, q: f.q() as u64 });
        }
        let coeffs: Vec<Felt> = secret.iter().chain(randomness).copied().collect();
        self.encoder().left_mul_vec(&coeffs)
    }

    /// Shares for `secret` with randomness drawn from a ChaCha8 stream seeded by `seed`.
    pub fn deal(&self, secret: &[Felt], seed: u64) -> Result<Vec<Felt>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = self.field().q();
        let randomness: Vec<Felt> = (0..self.pair.k2()).map(|_| Felt(rng.gen_range(0..q))).collect();
        self.encode(secret, &randomness)
    }

    /// Recovers the secret from the shares indexed by `coords`, when they pin it down.
    pub fn reconstruct(&self, coords: &CoordSet, values: &[Felt]) -> Result<Reconstruction> {
        if coords.n() != self.n() {
            return Err(Error::LengthMismatch { expected: self.n(), found: coords.n() });
        }
        if values.len() != coords.len() {
            return Err(Error::LengthMismatch { expected: coords.len(), found: values.len() });
        }
        // unknowns (s, r); equations: columns of the encoder restricted to `coords`
        let system = self.encoder().select_columns(coords.members()).transpose();
        let Some(sol) = system.solve_affine(values)? else {
            return Ok(Reconstruction::Inconsistent);
        };
        let l = self.secret_len();
        let kernel = system.kernel_basis();
        if (0..kernel.rows()).any(|r| kernel.row(r)[..l].iter().any(|e| !e.is_zero())) {
            return Ok(Reconstruction::Ambiguous);
        }
        Ok(Reconstruction::Secret(sol.solution[..l].to_vec()))
    }
}

pub fn scheme_from_pair(pair: NestedPair) -> Result<RampScheme> {
    RampScheme::from_pair(pair)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::LinearCode;
    use crate::pair::{lemma3_construct, sample_nested_pair};

    fn full_zero(q: u32, n: usize) -> RampScheme {
        let f = FieldSpec::new(q).unwrap();
        let pair = NestedPair::new(LinearCode::full(&f, n), LinearCode::zero(&f, n)).unwrap();
        RampScheme::from_pair(pair).unwrap()
    }

    #[test]
    fn full_over_zero_uses_identity() {
        let s = full_zero(2, 2);
        assert_eq!(s.secret_len(), 2);
        assert_eq!(s.complement(), &MatrixFq::identity(s.field(), 2));
    }

    #[test]
    fn lemma3_complement() {
        let f = FieldSpec::new(2).unwrap();
        let s = RampScheme::from_pair(lemma3_construct(&f, 4, 2, 1).unwrap()).unwrap();
        assert_eq!(s.secret_len(), 1);
        let w = s.complement().row(0);
        assert!(w[0].is_zero() && w[1..].iter().any(|e| !e.is_zero()));
        assert_eq!(s.encoder().rank(), 2);
    }

    #[test]
    fn degenerate_pair_rejected() {
        let f = FieldSpec::new(3).unwrap();
        let c = LinearCode::full(&f, 3);
        let pair = NestedPair::new(c.clone(), c).unwrap();
        assert_eq!(RampScheme::from_pair(pair), Err(Error::DegeneratePair));
    }

    #[test]
    fn deal_without_randomness_is_linear_image() {
        let s = full_zero(3, 3);
        let secret = vec![Felt(2), Felt(0), Felt(1)];
        assert_eq!(s.deal(&secret, 99).unwrap(), secret);
        assert_eq!(s.deal(&[Felt(0); 3], 5).unwrap(), vec![Felt(0); 3]);
        assert!(matches!(s.deal(&[Felt(1)], 0), Err(Error::LengthMismatch { .. })));
    }

    #[test]
    fn deal_is_seeded() {
        let f = FieldSpec::new(4).unwrap();
        let s = RampScheme::from_pair(sample_nested_pair(&f, 6, 4, 2, 3).unwrap()).unwrap();
        let secret = vec![Felt(3), Felt(1)];
        assert_eq!(s.deal(&secret, 11).unwrap(), s.deal(&secret, 11).unwrap());
        let x = s.deal(&secret, 11).unwrap();
        assert!(s.pair().larger().contains(&x).unwrap());
    }

    #[test]
    fn full_reconstruction_recovers_every_secret() {
        for (q, seed) in [(2u32, 1u64), (3, 2), (4, 3)] {
            let f = FieldSpec::new(q).unwrap();
            let s = RampScheme::from_pair(sample_nested_pair(&f, 6, 4, 1, seed).unwrap()).unwrap();
            let l = s.secret_len();
            let all = CoordSet::full(6);
            for idx in 0..(q as u64).pow(l as u32) {
                let mut x = idx;
                let secret: Vec<Felt> = (0..l)
                    .map(|_| {
                        let d = Felt((x % q as u64) as u32);
                        x /= q as u64;
                        d
                    })
                    .collect();
                let shares = s.deal(&secret, idx).unwrap();
                assert_eq!(s.reconstruct(&all, &shares).unwrap(), Reconstruction::Secret(secret));
            }
        }
    }

    #[test]
    fn empty_coalition_is_ambiguous() {
        let s = full_zero(2, 3);
        assert_eq!(s.reconstruct(&CoordSet::empty(3), &[]).unwrap(), Reconstruction::Ambiguous);
        assert!(matches!(s.reconstruct(&CoordSet::full(3), &[Felt(1)]), Err(Error::LengthMismatch { .. })));
    }

    #[test]
    fn tampered_shares_are_inconsistent() {
        let f = FieldSpec::new(2).unwrap();
        let s = RampScheme::from_pair(lemma3_construct(&f, 5, 3, 1).unwrap()).unwrap();
        let mut x = s.deal(&[Felt(1), Felt(0)], 7).unwrap();
        x[3] = f.add(x[3], Felt::ONE);
        assert!(!s.pair().larger().contains(&x).unwrap());
        assert_eq!(s.reconstruct(&CoordSet::full(5), &x).unwrap(), Reconstruction::Inconsistent);
    }

    #[test]
    fn with_complement_checks_span() {
        let f = FieldSpec::new(2).unwrap();
        let pair = lemma3_construct(&f, 5, 3, 1).unwrap();
        let g2 = pair.smaller().generator().clone();
        let bad = g2.vstack(&g2).unwrap();
        assert!(RampScheme::with_complement(pair, bad).is_err());
    }
}
