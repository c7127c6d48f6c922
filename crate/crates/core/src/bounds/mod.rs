//! Exact counting bounds, asymptotic evaluators and bound curves.

pub mod asymptotic;
pub mod counting;
pub mod curves;
pub mod gv;
pub mod maximizer;

pub use asymptotic::{alpha_value, corollary1_value, pi_q, qary_entropy, thm3_certifies, Clamped};
pub use counting::{binom_exact, n1, n2, n3, BigCount};
pub use curves::{eq102_bound, eq103_bound, eq103_rate, fig1_csv, fig1_table, Fig1Row};
pub use gv::{gv_certify, gv_max_d, gv_rhs, BoundReport, GvParams, MaxDReport};
pub use maximizer::{proof_maximizer_audit, MaximizerAudit};
