// SPDX-License-Identifier: MIT OR Apache-2.0
//! Executable gluing recipes. Every constructor returns a [`Witness`]: a
//! glued surface together with the invariants it claims, already checked
//! against the verifier.
//!
//! Pole labels are positional: `b1, b2, …` for the even poles of order
//! `≤ −4` (in signature order), `c1, c2, …` for the odd poles and
//! `d1, d2, …` for the double poles.

pub mod catalog;
pub mod cc;
pub mod cylinder_chain;
pub mod genus0_odd;
pub mod genus1;

pub use catalog::{catalog, CatalogCase};
pub use cc::{construct_cc, construct_cc_auto, CcPlan};
pub use cylinder_chain::{
    build_chain_surface, construct_chain_auto, construct_cylinder_chain, find_chain_plan,
    solve_lengths, ChainLengths, ChainPlan,
};
pub use genus0_odd::construct_genus0_odd_pole;
pub use genus1::construct_genus1_single_zero;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::core::signature::int_string;
use crate::core::{
    validate_signature, ComponentSelector, CoreError, RootedResidueConfig, StratumSignature,
};
use crate::surface::{
    loop_index, verify, FlatSurface, LocalInvariants, LoopStep, PoleInvariant, SurfaceError,
};

/// Errors raised by the constructors.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("signature outside the recipe's scope: {0}")]
    BadSignature(String),
    #[error("invalid plan: {0}")]
    InvalidPlan(String),
    #[error("the polygon is degenerate or self-intersecting")]
    DegeneratePolygon,
    #[error("the closing vector vanishes")]
    ClosureFailure,
    #[error("the length system has no positive solution")]
    InfeasibleLengths,
    #[error("the plan produces cone angles {found:?}, expected {expected:?}")]
    AngleMismatch { expected: Vec<i64>, found: Vec<i64> },
    #[error("the configuration is not realizable: {0}")]
    ObstructedConfiguration(String),
    #[error("no recipe covers this case: {0}")]
    UnsupportedCase(String),
    #[error("the surface does not match its claim: {0}")]
    ClaimMismatch(String),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error(transparent)]
    Oracle(#[from] crate::oracle::OracleError),
}

/// The recipe that produced a witness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Recipe {
    /// Polygon with a doubled edge and half-infinite cylinders.
    Cc,
    /// Half-infinite cylinders glued along a graph with one odd cycle.
    CylinderChain,
    /// Polar parts feeding a collector odd polar part.
    Genus0OddPole,
    /// Genus-one single-zero recipes.
    Genus1SingleZero,
}

/// Label of the `j`-th (0-based) even pole.
pub fn even_label(j: usize) -> String {
    format!("b{}", j + 1)
}

/// Label of the `j`-th (0-based) odd pole.
pub fn odd_label(j: usize) -> String {
    format!("c{}", j + 1)
}

/// Label of the `j`-th (0-based) double pole.
pub fn double_label(j: usize) -> String {
    format!("d{}", j + 1)
}

/// Invariants a constructor commits to before verification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim {
    #[serde(with = "int_string")]
    pub genus: i64,
    /// Non-zero zero orders, decreasing.
    #[serde(with = "int_string::vec")]
    pub zero_orders: Vec<i64>,
    /// Pole orders, increasing.
    #[serde(with = "int_string::vec")]
    pub pole_orders: Vec<i64>,
    /// Poles sorted by label.
    pub poles: Vec<PoleInvariant>,
    pub connected: bool,
    pub primitive: bool,
}

impl Claim {
    /// The invariants prescribed by a signature and a residue configuration.
    pub fn for_signature(sig: &StratumSignature, config: &RootedResidueConfig) -> Self {
        let mut zero_orders: Vec<i64> = sig
            .zero_orders
            .iter()
            .copied()
            .filter(|a| *a != 0)
            .collect();
        zero_orders.sort_unstable_by(|a, b| b.cmp(a));
        let mut poles = Vec::new();
        for (j, b) in sig.even_pole_orders.iter().enumerate() {
            poles.push(PoleInvariant {
                label: even_label(j),
                order: -b,
                residue: Some(config.even_pole_roots[j].square()),
            });
        }
        for (j, c) in sig.odd_pole_orders.iter().enumerate() {
            poles.push(PoleInvariant {
                label: odd_label(j),
                order: -c,
                residue: None,
            });
        }
        for (j, r) in config.double_pole_roots.iter().enumerate() {
            poles.push(PoleInvariant {
                label: double_label(j),
                order: -2,
                residue: Some(r.square()),
            });
        }
        poles.sort_by(|a, b| a.label.cmp(&b.label));
        Self {
            genus: sig.genus,
            zero_orders,
            pole_orders: sig.pole_orders_sorted(),
            poles,
            connected: true,
            primitive: true,
        }
    }

    /// The same projection of verified invariants.
    pub fn of(inv: &LocalInvariants) -> Self {
        let mut poles = inv.poles.clone();
        poles.sort_by(|a, b| a.label.cmp(&b.label));
        Self {
            genus: inv.genus,
            zero_orders: inv.zero_orders.clone(),
            pole_orders: inv.pole_orders.clone(),
            poles,
            connected: inv.connected,
            primitive: inv.primitive,
        }
    }
}

/// Loops certifying the rotation number of a genus-one witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RotationCertificate {
    #[serde(with = "int_string")]
    pub rho: i64,
    pub alpha: Vec<LoopStep>,
    pub beta: Vec<LoopStep>,
    #[serde(with = "int_string")]
    pub alpha_index: i64,
    #[serde(with = "int_string")]
    pub beta_index: i64,
}

/// A constructed surface with its claim.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub recipe: Recipe,
    pub signature: StratumSignature,
    pub config: RootedResidueConfig,
    pub claim: Claim,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rotation: Option<RotationCertificate>,
    pub surface: FlatSurface,
}

/// `gcd` of all non-zero singularity orders of a signature.
pub fn orders_gcd(sig: &StratumSignature) -> i64 {
    sig.orders().iter().fold(0i64, |acc, x| acc.gcd(x))
}

impl Witness {
    /// Assembles a witness and checks it against the verifier.
    pub(crate) fn checked(
        recipe: Recipe,
        sig: &StratumSignature,
        config: &RootedResidueConfig,
        surface: FlatSurface,
        rotation: Option<RotationCertificate>,
    ) -> Result<Self, ConstructError> {
        let w = Self {
            recipe,
            signature: sig.clone(),
            config: config.clone(),
            claim: Claim::for_signature(sig, config),
            rotation,
            surface,
        };
        w.verify()?;
        Ok(w)
    }

    /// Re-runs the verifier and compares with the claim; for genus-one
    /// witnesses the certificate loops are re-indexed and the rotation
    /// number recomputed.
    pub fn verify(&self) -> Result<LocalInvariants, ConstructError> {
        let inv = verify(&self.surface)?;
        let found = Claim::of(&inv);
        if found != self.claim {
            return Err(ConstructError::ClaimMismatch(format!(
                "claimed {:?}, found {:?}",
                self.claim, found
            )));
        }
        if let Some(cert) = &self.rotation {
            let ia = loop_index(&self.surface, &cert.alpha)?;
            let ib = loop_index(&self.surface, &cert.beta)?;
            let rho = [ia, ib]
                .iter()
                .fold(orders_gcd(&self.signature), |acc, x| acc.gcd(x));
            if (ia, ib, rho) != (cert.alpha_index, cert.beta_index, cert.rho) {
                return Err(ConstructError::ClaimMismatch(format!(
                    "rotation certificate: claimed ({}, {}, rho {}), found ({ia}, {ib}, rho {rho})",
                    cert.alpha_index, cert.beta_index, cert.rho
                )));
            }
        }
        Ok(inv)
    }
}

/// True if the signature has a single non-zero zero order.
pub(crate) fn single_zero(sig: &StratumSignature) -> Option<i64> {
    let z: Vec<i64> = sig
        .zero_orders
        .iter()
        .copied()
        .filter(|a| *a != 0)
        .collect();
    (z.len() == 1).then(|| z[0])
}

/// Checks the signature and the configuration lengths.
pub(crate) fn precheck(
    sig: &StratumSignature,
    config: &RootedResidueConfig,
) -> Result<(), ConstructError> {
    validate_signature(sig)?;
    config.check_against(sig)?;
    Ok(())
}

/// Builds a witness with the first applicable recipe. Precedence: the
/// polygon recipe, then cylinder chains, then the remaining recipes; the
/// recipe used is recorded in the witness.
pub fn construct(
    sig: &StratumSignature,
    config: &RootedResidueConfig,
    component: ComponentSelector,
) -> Result<Witness, ConstructError> {
    precheck(sig, config)?;
    if sig.genus == 1 {
        return construct_genus1_single_zero(sig, config, component);
    }
    if component != ComponentSelector::WholeStratum {
        return Err(ConstructError::BadSignature(
            "component selectors only apply in genus one".into(),
        ));
    }
    if sig.genus != 0 {
        return Err(ConstructError::UnsupportedCase(format!(
            "no recipe for genus {}",
            sig.genus
        )));
    }
    if sig.r() >= 1 && single_zero(sig).is_some() {
        return construct_genus0_odd_pole(sig, config);
    }
    let two_odd = sig.zero_orders.len() == 2 && sig.odd_zero_count() == 2;
    if sig.p() == 0 && sig.r() == 0 && two_odd {
        let cc = construct_cc_auto(sig, config);
        if cc.is_ok() {
            return cc;
        }
        return match construct_chain_auto(sig, config) {
            Ok(w) => Ok(w),
            Err(ConstructError::UnsupportedCase(_)) => cc,
            Err(e) => Err(e),
        };
    }
    Err(ConstructError::UnsupportedCase(format!(
        "no recipe for {sig}"
    )))
}
