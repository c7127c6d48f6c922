//! Ramp secret sharing over a nested code pair.

mod audit;
mod leakage;
mod scheme;

pub use audit::{audit_scheme, AuditReport};
pub use leakage::{adversary_threshold, as_integer, leakage_dim, leakage_mi, leakage_profile};
pub use scheme::{scheme_from_pair, RampScheme, Reconstruction};
