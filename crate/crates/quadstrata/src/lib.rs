// SPDX-License-Identifier: MIT OR Apache-2.0
//! Residue realizability for strata of primitive meromorphic quadratic
//! differentials.
//!
//! The crate is organised in five layers:
//!
//! * [`core`] — exact Gaussian-rational arithmetic, stratum signatures,
//!   rooted residue configurations and the two standalone applications
//!   (emptiness of finite-area strata, maximal number of disjoint cylinders).
//! * [`surface`] — the flat-surface kernel: basic domains, polar parts,
//!   gluings, and an exact verifier recomputing every local invariant.
//! * [`oracle`] — the realizability decision procedure.
//! * [`constructors`] — executable gluing recipes producing witnesses.
//! * [`search`] — exhaustive enumeration of horizontal normal forms for
//!   genus-zero strata with two odd zeros and only double poles.
//!
//! Every quantity is exact. Floating point appears only in drawings,
//! approximate angle display and the order in which the polygon recipe
//! tries its candidates; it never decides a result.

pub mod constructors;
pub mod core;
pub mod oracle;
pub mod search;
pub mod surface;

pub use crate::core::{
    ComponentSelector, CoreError, GaussianRational, RootedResidueConfig, StratumSignature,
    ValidatedSignature,
};
