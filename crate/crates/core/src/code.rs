//! Linear codes in canonical (RREF) form and coordinate subsets.

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Felt};
use crate::linalg::{rank_in_place, MatrixFq};

/// A sorted set of coordinates in `[0, n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoordSet {
    n: usize,
    members: Vec<usize>,
}

impl CoordSet {
    /// Sorts and deduplicates; rejects members `>= n`.
    pub fn new(n: usize, mut members: Vec<usize>) -> Result<Self> {
        if let Some(&bad) = members.iter().find(|&&i| i >= n) {
            return Err(Error::InvalidDims(format!("coordinate {bad} out of range for n = {n}")));
        }
        members.sort_unstable();
        members.dedup();
        Ok(CoordSet { n, members })
    }

    pub fn empty(n: usize) -> Self {
        CoordSet { n, members: Vec::new() }
    }

    pub fn full(n: usize) -> Self {
        CoordSet { n, members: (0..n).collect() }
    }

    pub fn range(n: usize, r: std::ops::Range<usize>) -> Result<Self> {
        Self::new(n, r.collect())
    }

    pub fn from_mask(n: usize, mask: u64) -> Self {
        CoordSet { n, members: (0..n).filter(|&i| mask >> i & 1 == 1).collect() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.binary_search(&i).is_ok()
    }

    pub fn complement(&self) -> Self {
        CoordSet { n: self.n, members: (0..self.n).filter(|&i| !self.contains(i)).collect() }
    }

    pub fn is_subset(&self, other: &CoordSet) -> bool {
        self.members.iter().all(|&i| other.contains(i))
    }
}

/// Lexicographic k-subsets of `0..n`.
pub struct Combinations {
    n: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Combinations {
    pub fn new(n: usize, k: usize) -> Self {
        Combinations { n, idx: (0..k).collect(), done: k > n }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.idx.clone();
        let k = self.idx.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

/// Exact binomial coefficient in `u128`, saturating.
pub(crate) fn binom_u128(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// A linear code given by its canonical RREF generator matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCode {
    generator: MatrixFq,
    pivots: Vec<usize>,
}

impl LinearCode {
    /// Builds the code spanned by the rows of `generators`.
    pub fn new(field: &FieldSpec, n: usize, generators: &MatrixFq) -> Result<Self> {
        if generators.field() != field {
            return Err(Error::FieldMismatch);
        }
        if generators.cols() != n {
            return Err(Error::WidthMismatch { expected: n, found: generators.cols() });
        }
        let (r, pivots) = generators.rref();
        let keep: Vec<usize> = (0..pivots.len()).collect();
        Ok(LinearCode { generator: r.select_rows(&keep), pivots })
    }

    pub fn zero(field: &FieldSpec, n: usize) -> Self {
        LinearCode { generator: MatrixFq::zeros(field, 0, n), pivots: Vec::new() }
    }

    pub fn full(field: &FieldSpec, n: usize) -> Self {
        LinearCode { generator: MatrixFq::identity(field, n), pivots: (0..n).collect() }
    }

    /// `V_I`: all vectors supported inside `coords`.
    pub fn coordinate_space(field: &FieldSpec, coords: &CoordSet) -> Self {
        let mut g = MatrixFq::zeros(field, coords.len(), coords.n());
        for (r, &c) in coords.members().iter().enumerate() {
            g.set(r, c, Felt::ONE);
        }
        LinearCode { generator: g, pivots: coords.members().to_vec() }
    }

    pub fn field(&self) -> &FieldSpec {
        self.generator.field()
    }

    pub fn n(&self) -> usize {
        self.generator.cols()
    }

    pub fn k(&self) -> usize {
        self.generator.rows()
    }

    pub fn generator(&self) -> &MatrixFq {
        &self.generator
    }

    /// Leading columns of the canonical generator.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn dual(&self) -> LinearCode {
        let h = self.generator.kernel_basis();
        LinearCode::new(self.field(), self.n(), &h).expect("kernel basis has matching shape")
    }

    pub fn contains(&self, v: &[Felt]) -> Result<bool> {
        if v.len() != self.n() {
            return Err(Error::LengthMismatch { expected: self.n(), found: v.len() });
        }
        self.generator.row_space_contains(v)
    }

    /// Whether `self` ⊆ `other`.
    pub fn is_subcode_of(&self, other: &LinearCode) -> bool {
        if self.field() != other.field() || self.n() != other.n() {
            return false;
        }
        if self.k() > other.k() {
            return false;
        }
        other.generator.vstack(&self.generator).map(|s| s.rank() == other.k()).unwrap_or(false)
    }

    /// `dim(C ∩ V_I) = k - rank(G restricted to the columns outside I)`.
    pub fn shortened_dim(&self, coords: &CoordSet) -> Result<usize> {
        if coords.n() != self.n() {
            return Err(Error::LengthMismatch { expected: self.n(), found: coords.n() });
        }
        let outside = coords.complement();
        Ok(self.k() - self.rank_on(outside.members()))
    }

    /// Rank of the generator restricted to `cols`.
    pub(crate) fn rank_on(&self, cols: &[usize]) -> usize {
        let k = self.k();
        if k == 0 || cols.is_empty() {
            return 0;
        }
        let mut buf = Vec::with_capacity(k * cols.len());
        for r in 0..k {
            let row = self.generator.row(r);
            buf.extend(cols.iter().map(|&c| row[c]));
        }
        rank_in_place(self.field(), &mut buf, k, cols.len())
    }

    /// Encodes a message of length `k`.
    pub fn encode(&self, msg: &[Felt]) -> Result<Vec<Felt>> {
        self.generator.left_mul_vec(msg)
    }
}
