//! Relative generalized Hamming weights of nested linear codes over finite
//! fields, the counting bounds around them, and the ramp secret-sharing
//! schemes they describe.

pub mod bounds;
pub mod code;
pub mod error;
pub mod field;
pub mod gv_audit;
pub mod linalg;
pub mod pair;
pub mod rghw;
pub mod sss;

pub use code::{Combinations, CoordSet, LinearCode};
pub use error::{Error, Result};
pub use field::{ArithOp, Elem, Felt, FieldJson, FieldSpec};
pub use linalg::{AffineSolution, MatrixFq};
pub use pair::{lemma3_construct, sample_nested_pair, theorem2_construct, NestedPair, PairFile, Theorem2Witness};

/// Work limits for the exhaustive searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Coordinate sets visited by the RGHW scan.
    pub subsets: u64,
    /// Coalitions visited by the secret-sharing scans.
    pub coalitions: u64,
    /// `(secret, randomness)` pairs enumerated for mutual information.
    pub enumeration: u64,
    /// Nodes expanded by the branch-and-bound RGHW search.
    pub search_nodes: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { subsets: 1 << 24, coalitions: 1 << 20, enumeration: 1 << 16, search_nodes: 1 << 26 }
    }
}

impl Budget {
    /// The same limit for every search.
    pub fn uniform(limit: u64) -> Self {
        Budget { subsets: limit, coalitions: limit, enumeration: limit, search_nodes: limit }
    }
}
