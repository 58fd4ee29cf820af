// SPDX-License-Identifier: MIT OR Apache-2.0
//! Residue configurations given through chosen square roots, and component
//! selectors.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::arith::GaussianRational;
use super::signature::StratumSignature;
use super::CoreError;

/// Residues of the even poles and double poles of a stratum, given through
/// square roots: the residue of a pole with root `r` is `r²`.
///
/// Even-pole roots may vanish; double-pole roots never do.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub struct RootedResidueConfig {
    pub even_pole_roots: Vec<GaussianRational>,
    pub double_pole_roots: Vec<GaussianRational>,
}

impl RootedResidueConfig {
    pub fn new(even: Vec<GaussianRational>, double: Vec<GaussianRational>) -> Self {
        Self {
            even_pole_roots: even,
            double_pole_roots: double,
        }
    }

    /// Integer roots for double poles only.
    pub fn doubles(roots: &[i64]) -> Self {
        Self::new(
            vec![],
            roots.iter().map(|r| GaussianRational::from(*r)).collect(),
        )
    }

    /// Checks that the lengths match the signature and that double-pole
    /// roots are non-zero.
    pub fn check_against(&self, sig: &StratumSignature) -> Result<(), CoreError> {
        if self.even_pole_roots.len() != sig.p() {
            return Err(CoreError::ConfigLength {
                what: "even pole roots",
                expected: sig.p(),
                found: self.even_pole_roots.len(),
            });
        }
        if self.double_pole_roots.len() != sig.s() {
            return Err(CoreError::ConfigLength {
                what: "double pole roots",
                expected: sig.s(),
                found: self.double_pole_roots.len(),
            });
        }
        if self.double_pole_roots.iter().any(|r| r.is_zero()) {
            return Err(CoreError::ZeroDoublePoleResidue);
        }
        Ok(())
    }

    /// Residues `r²` of the even poles.
    pub fn even_residues(&self) -> Vec<GaussianRational> {
        self.even_pole_roots.iter().map(|r| r.square()).collect()
    }

    /// Residues `r²` of the double poles.
    pub fn double_residues(&self) -> Vec<GaussianRational> {
        self.double_pole_roots.iter().map(|r| r.square()).collect()
    }

    /// All residues: even poles first, then double poles.
    pub fn residues(&self) -> Vec<GaussianRational> {
        let mut v = self.even_residues();
        v.extend(self.double_residues());
        v
    }

    /// True if every residue vanishes (the origin of the residual space).
    pub fn is_origin(&self) -> bool {
        self.even_pole_roots.iter().all(|r| r.is_zero()) && self.double_pole_roots.is_empty()
    }

    /// Multiplies every root by `λ` (residues are multiplied by `λ²`).
    pub fn scaled(&self, lambda: &GaussianRational) -> Self {
        Self::new(
            self.even_pole_roots.iter().map(|r| r * lambda).collect(),
            self.double_pole_roots.iter().map(|r| r * lambda).collect(),
        )
    }

    /// Divides every root by the first non-zero root (even poles first), so
    /// that the first non-zero root becomes `1`. The configuration is
    /// returned unchanged if all roots vanish. This is a helper for the
    /// `C*`-scaling ambiguity; the decision procedure never relies on it.
    pub fn normalize_by_first_nonzero(&self) -> Self {
        let first = self
            .even_pole_roots
            .iter()
            .chain(self.double_pole_roots.iter())
            .find(|r| !r.is_zero())
            .cloned();
        match first {
            Some(f) => self.scaled(&f.inv()),
            None => self.clone(),
        }
    }
}

/// Which part of a stratum a question is about.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum ComponentSelector {
    /// The whole stratum (union of its connected components).
    #[default]
    WholeStratum,
    /// The genus-one component with the given rotation number.
    RotationNumber(i64),
}

impl Serialize for ComponentSelector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            ComponentSelector::WholeStratum => s.serialize_str("whole_stratum"),
            ComponentSelector::RotationNumber(rho) => {
                let mut m = serde_json::Map::new();
                m.insert(
                    "rotation_number".into(),
                    serde_json::Value::String(rho.to_string()),
                );
                m.serialize(s)
            }
        }
    }
}

impl<'de> Deserialize<'de> for ComponentSelector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        match &v {
            serde_json::Value::String(s) if s == "whole_stratum" => Ok(Self::WholeStratum),
            serde_json::Value::String(s) => s.parse().map_err(D::Error::custom),
            serde_json::Value::Object(m) => {
                let rho = m
                    .get("rotation_number")
                    .ok_or_else(|| D::Error::custom("expected rotation_number"))?;
                let rho = super::signature::int_string::parse_int(rho).map_err(D::Error::custom)?;
                Ok(Self::RotationNumber(rho))
            }
            serde_json::Value::Null => Ok(Self::WholeStratum),
            other => Err(D::Error::custom(format!(
                "invalid component selector {other}"
            ))),
        }
    }
}

impl std::str::FromStr for ComponentSelector {
    type Err = String;

    /// Accepts `"whole"`, `"whole_stratum"`, `"rho=3"` or a bare integer.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t == "whole" || t == "whole_stratum" || t.is_empty() {
            return Ok(Self::WholeStratum);
        }
        let num = t
            .strip_prefix("rho=")
            .or_else(|| t.strip_prefix("rotation_number="))
            .unwrap_or(t);
        num.parse::<i64>()
            .map(Self::RotationNumber)
            .map_err(|_| format!("invalid component selector {s:?}"))
    }
}
