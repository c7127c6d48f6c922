use serde::{Deserialize, Serialize};

use super::leakage::{adversary_threshold, leakage_profile};
use super::scheme::RampScheme;
use crate::error::Result;
use crate::rghw::rghw_profile;
use crate::Budget;

/// Side-by-side comparison of the coalition thresholds of a scheme with the
/// RGHW profile of its dual pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub q: u32,
    pub n: usize,
    pub k1: usize,
    pub k2: usize,
    pub secret_len: usize,
    /// `adversary_threshold(t)` for `t = 1..=secret_len`.
    pub adversary_thresholds: Vec<usize>,
    /// `M_t` of the dual pair for the same `t`.
    pub dual_rghw: Vec<usize>,
    pub matches: bool,
    pub leakage_profile: Vec<usize>,
}

pub fn audit_scheme(scheme: &RampScheme, budget: &Budget) -> Result<AuditReport> {
    let pair = scheme.pair();
    let l = scheme.secret_len();
    let adversary_thresholds = (1..=l).map(|t| adversary_threshold(scheme, t, budget)).collect::<Result<Vec<_>>>()?;
    let dual_rghw = rghw_profile(&pair.dual_pair(), budget)?;
    Ok(AuditReport {
        q: scheme.field().q(),
        n: pair.n(),
        k1: pair.k1(),
        k2: pair.k2(),
        secret_len: l,
        matches: adversary_thresholds == dual_rghw,
        adversary_thresholds,
        dual_rghw,
        leakage_profile: leakage_profile(scheme, budget)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::pair::lemma3_construct;

    #[test]
    fn lemma3_scheme_audit() {
        let f = FieldSpec::new(2).unwrap();
        let s = RampScheme::from_pair(lemma3_construct(&f, 5, 3, 1).unwrap()).unwrap();
        let r = audit_scheme(&s, &Budget::default()).unwrap();
        assert!(r.matches);
        assert_eq!(r.secret_len, 2);
        assert_eq!(r.leakage_profile.len(), 6);
        let json = serde_json::to_string(&r).unwrap();
        assert!(json.contains("\"matches\":true"));
        assert_eq!(serde_json::from_str::<AuditReport>(&json).unwrap(), r);
    }
}
