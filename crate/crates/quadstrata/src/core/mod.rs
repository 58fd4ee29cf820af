// SPDX-License-Identifier: MIT OR Apache-2.0
//! Exact arithmetic, stratum signatures, residue configurations and the
//! finite-area applications.

pub mod apps;
pub mod arith;
pub mod config;
pub mod signature;

pub use apps::{max_disjoint_cylinders, stratum_nonempty_holomorphic};
pub use arith::{format_q, parse_q, q, qi, GaussianRational, Q};
pub use config::{ComponentSelector, RootedResidueConfig};
pub use signature::{validate_signature, StratumSignature, ValidatedSignature};

use thiserror::Error;

/// Errors raised by signature validation and the core applications.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CoreError {
    #[error("degree mismatch: orders sum to {total}, expected 4g-4 = {expected}")]
    DegreeMismatch { total: i64, expected: i64 },
    #[error("illegal order: {0}")]
    IllegalOrder(String),
    #[error("the stratum is empty")]
    EmptyStratum,
    #[error("the signature has poles of order <= -2")]
    NotHolomorphic,
    #[error("configuration has {found} {what}, expected {expected}")]
    ConfigLength {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("double poles always have a non-zero residue")]
    ZeroDoublePoleResidue,
}
