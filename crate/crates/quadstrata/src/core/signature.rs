// SPDX-License-Identifier: MIT OR Apache-2.0
//! Stratum signatures: genus plus the multiset of singularity orders.

use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::CoreError;

/// Serde adapters writing integers as decimal strings (all JSON numbers of
/// the public formats are strings) and accepting either strings or JSON
/// integers on input.
pub mod int_string {
    use super::*;

    pub fn parse_int(v: &serde_json::Value) -> Result<i64, String> {
        match v {
            serde_json::Value::String(s) => s
                .trim()
                .parse::<i64>()
                .map_err(|_| format!("invalid integer string {s:?}")),
            serde_json::Value::Number(n) => n
                .as_i64()
                .ok_or_else(|| format!("expected an integer, found {n}")),
            other => Err(format!("expected an integer, found {other}")),
        }
    }

    pub fn serialize<S: Serializer>(x: &i64, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<i64, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        parse_int(&v).map_err(D::Error::custom)
    }

    /// The same adapter for lists of integers.
    pub mod vec {
        use super::*;

        pub fn serialize<S: Serializer>(xs: &[i64], s: S) -> Result<S::Ok, S::Error> {
            let v: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
            v.serialize(s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<i64>, D::Error> {
            let v = Vec::<serde_json::Value>::deserialize(d)?;
            v.iter()
                .map(|x| parse_int(x).map_err(D::Error::custom))
                .collect()
        }
    }
}

/// Serde adapters for indices (`usize`), written as decimal strings.
pub mod usize_string {
    use super::*;

    fn parse(v: &serde_json::Value) -> Result<usize, String> {
        let x = int_string::parse_int(v)?;
        usize::try_from(x).map_err(|_| format!("expected a non-negative index, found {x}"))
    }

    pub fn serialize<S: Serializer>(x: &usize, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<usize, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        parse(&v).map_err(D::Error::custom)
    }

    /// The same adapter for lists of indices.
    pub mod vec {
        use super::*;

        pub fn serialize<S: Serializer>(xs: &[usize], s: S) -> Result<S::Ok, S::Error> {
            let v: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
            v.serialize(s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<usize>, D::Error> {
            let v = Vec::<serde_json::Value>::deserialize(d)?;
            v.iter()
                .map(|x| parse(x).map_err(D::Error::custom))
                .collect()
        }
    }
}

/// Genus plus the multiset of singularity orders of a stratum.
///
/// Zeros (orders `≥ −1`, simple poles included) are stored with their sign;
/// even poles of order `−b` (`b ≥ 4`) and odd poles of order `−c` (`c ≥ 3`)
/// are stored through the positive numbers `b` and `c`; double poles are
/// only counted.
///
/// Zeros are kept in canonical order (odd orders first, each block
/// descending). Pole lists keep the caller's order because residue roots are
/// attached to even poles positionally; [`StratumSignature::canonical`]
/// returns the fully sorted form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StratumSignature {
    #[serde(with = "int_string")]
    pub genus: i64,
    #[serde(rename = "zeros", with = "int_string::vec")]
    pub zero_orders: Vec<i64>,
    #[serde(rename = "even_poles", with = "int_string::vec")]
    pub even_pole_orders: Vec<i64>,
    #[serde(rename = "odd_poles", with = "int_string::vec")]
    pub odd_pole_orders: Vec<i64>,
    #[serde(rename = "double_poles", with = "int_string")]
    pub double_pole_count: i64,
}

/// Sorts zero orders canonically: odd orders first, then even orders, each
/// block in descending order.
pub fn canonical_zero_order(zeros: &mut [i64]) {
    zeros.sort_by(|a, b| {
        let ka = (a.rem_euclid(2) == 0) as u8;
        let kb = (b.rem_euclid(2) == 0) as u8;
        ka.cmp(&kb).then(b.cmp(a))
    });
}

impl StratumSignature {
    /// Builds a signature; zeros are put in canonical order, pole lists are
    /// kept as given.
    pub fn new(
        genus: i64,
        zeros: &[i64],
        even_poles: &[i64],
        odd_poles: &[i64],
        double_poles: i64,
    ) -> Self {
        let mut z = zeros.to_vec();
        canonical_zero_order(&mut z);
        Self {
            genus,
            zero_orders: z,
            even_pole_orders: even_poles.to_vec(),
            odd_pole_orders: odd_poles.to_vec(),
            double_pole_count: double_poles,
        }
    }

    /// Builds a signature from the flat list `μ` of signed orders: entries
    /// `≥ −1` are zeros, `−2` double poles, even entries `≤ −4` even poles,
    /// odd entries `≤ −3` odd poles. Even poles keep their relative order.
    pub fn from_orders(genus: i64, mu: &[i64]) -> Self {
        let mut zeros = Vec::new();
        let mut even = Vec::new();
        let mut odd = Vec::new();
        let mut s = 0;
        for &m in mu {
            if m >= -1 {
                zeros.push(m);
            } else if m == -2 {
                s += 1;
            } else if m % 2 == 0 {
                even.push(-m);
            } else {
                odd.push(-m);
            }
        }
        Self::new(genus, &zeros, &even, &odd, s)
    }

    /// Fully canonical form: zeros as in [`canonical_zero_order`], pole
    /// lists in descending order.
    pub fn canonical(&self) -> Self {
        let mut c = self.clone();
        canonical_zero_order(&mut c.zero_orders);
        c.even_pole_orders.sort_by(|a, b| b.cmp(a));
        c.odd_pole_orders.sort_by(|a, b| b.cmp(a));
        c
    }

    /// All singularity orders with their signs, zeros first.
    pub fn orders(&self) -> Vec<i64> {
        let mut v = self.zero_orders.clone();
        v.extend(self.even_pole_orders.iter().map(|b| -b));
        v.extend(self.odd_pole_orders.iter().map(|c| -c));
        v.extend(std::iter::repeat_n(
            -2,
            self.double_pole_count.max(0) as usize,
        ));
        v
    }

    /// Pole orders (negative numbers): even poles, odd poles, double poles.
    pub fn pole_orders(&self) -> Vec<i64> {
        let mut v: Vec<i64> = self.even_pole_orders.iter().map(|b| -b).collect();
        v.extend(self.odd_pole_orders.iter().map(|c| -c));
        v.extend(std::iter::repeat_n(
            -2,
            self.double_pole_count.max(0) as usize,
        ));
        v
    }

    /// Number `p` of even poles of order `≤ −4`.
    pub fn p(&self) -> usize {
        self.even_pole_orders.len()
    }

    /// Number `r` of odd poles.
    pub fn r(&self) -> usize {
        self.odd_pole_orders.len()
    }

    /// Number `s` of double poles.
    pub fn s(&self) -> usize {
        self.double_pole_count.max(0) as usize
    }

    /// Number `n` of zeros (simple poles included).
    pub fn n(&self) -> usize {
        self.zero_orders.len()
    }

    /// Number of odd zeros (simple poles included).
    pub fn odd_zero_count(&self) -> usize {
        self.zero_orders
            .iter()
            .filter(|a| a.rem_euclid(2) == 1)
            .count()
    }

    /// Number of even zeros.
    pub fn even_zero_count(&self) -> usize {
        self.n() - self.odd_zero_count()
    }

    /// Odd zero orders in canonical (descending) order.
    pub fn odd_zeros(&self) -> Vec<i64> {
        let mut v: Vec<i64> = self
            .zero_orders
            .iter()
            .copied()
            .filter(|a| a.rem_euclid(2) == 1)
            .collect();
        v.sort_by(|a, b| b.cmp(a));
        v
    }

    /// Sum of the even zero orders.
    pub fn even_zero_sum(&self) -> i64 {
        self.zero_orders
            .iter()
            .filter(|a| a.rem_euclid(2) == 0)
            .sum()
    }

    /// True if there is no pole of order `≤ −2`.
    pub fn is_holomorphic(&self) -> bool {
        self.p() == 0 && self.r() == 0 && self.s() == 0
    }

    /// Sorted signed zero orders, ignoring marked points (order 0).
    pub fn nonzero_zero_orders_sorted(&self) -> Vec<i64> {
        let mut v: Vec<i64> = self
            .zero_orders
            .iter()
            .copied()
            .filter(|a| *a != 0)
            .collect();
        v.sort();
        v
    }

    /// Sorted signed pole orders.
    pub fn pole_orders_sorted(&self) -> Vec<i64> {
        let mut v = self.pole_orders();
        v.sort();
        v
    }
}

impl fmt::Display for StratumSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: Vec<String>| v.join(",");
        let zeros = join(self.zero_orders.iter().map(|a| a.to_string()).collect());
        let mut poles: Vec<String> = self
            .even_pole_orders
            .iter()
            .map(|b| format!("-{b}"))
            .collect();
        poles.extend(self.odd_pole_orders.iter().map(|c| format!("-{c}")));
        let mut out = format!("g={} ({zeros}", self.genus);
        if !poles.is_empty() {
            out.push(';');
            out.push_str(&poles.join(","));
        }
        if self.s() > 0 {
            out.push_str(&format!(";(-2^{})", self.s()));
        }
        out.push(')');
        f.write_str(&out)
    }
}

/// A signature that passed [`validate_signature`], annotated with derived
/// quantities.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidatedSignature {
    pub signature: StratumSignature,
    /// Number of odd zeros.
    #[serde(with = "int_string")]
    pub odd_zero_count: i64,
    /// Number of even zeros.
    #[serde(with = "int_string")]
    pub even_zero_count: i64,
    /// True iff genus is 0 and every order is even: every differential of
    /// the stratum is then a global square and the primitive stratum is
    /// empty.
    pub forces_square: bool,
}

/// Checks the degree condition and the admissibility of every order.
pub fn validate_signature(sig: &StratumSignature) -> Result<ValidatedSignature, CoreError> {
    if sig.genus < 0 {
        return Err(CoreError::IllegalOrder(format!(
            "negative genus {}",
            sig.genus
        )));
    }
    if sig.double_pole_count < 0 {
        return Err(CoreError::IllegalOrder(format!(
            "negative double pole count {}",
            sig.double_pole_count
        )));
    }
    if let Some(a) = sig.zero_orders.iter().find(|a| **a < -1) {
        return Err(CoreError::IllegalOrder(format!("zero order {a} < -1")));
    }
    if let Some(b) = sig.even_pole_orders.iter().find(|b| **b < 4 || *b % 2 != 0) {
        return Err(CoreError::IllegalOrder(format!(
            "even pole order -{b} must be even and <= -4"
        )));
    }
    if let Some(c) = sig.odd_pole_orders.iter().find(|c| **c < 3 || *c % 2 == 0) {
        return Err(CoreError::IllegalOrder(format!(
            "odd pole order -{c} must be odd and <= -3"
        )));
    }
    let total: i64 = sig.orders().iter().sum();
    let expected = 4 * sig.genus - 4;
    if total != expected {
        return Err(CoreError::DegreeMismatch { total, expected });
    }
    let odd = sig.odd_zero_count() as i64 + sig.r() as i64;
    if odd % 2 != 0 {
        // Implied by the degree condition; kept as a defensive check.
        return Err(CoreError::IllegalOrder(
            "odd number of odd singularities".into(),
        ));
    }
    let mut canon = sig.clone();
    canonical_zero_order(&mut canon.zero_orders);
    let forces_square = sig.genus == 0 && sig.orders().iter().all(|m| m % 2 == 0);
    Ok(ValidatedSignature {
        odd_zero_count: canon.odd_zero_count() as i64,
        even_zero_count: canon.even_zero_count() as i64,
        signature: canon,
        forces_square,
    })
}
