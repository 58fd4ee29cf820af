// SPDX-License-Identifier: MIT OR Apache-2.0
//! Standalone applications on finite-area (holomorphic) strata.

use super::signature::{validate_signature, StratumSignature};
use super::CoreError;

/// Whether the primitive stratum of a signature without poles of order
/// `≤ −2` is non-empty.
///
/// The empty strata are exactly `g = 1` with `μ = ∅` or `μ = (−1, 1)` and
/// `g = 2` with `μ = (4)` or `μ = (1, 3)`.
pub fn stratum_nonempty_holomorphic(sig: &StratumSignature) -> Result<bool, CoreError> {
    if !sig.is_holomorphic() {
        return Err(CoreError::NotHolomorphic);
    }
    let v = validate_signature(sig)?;
    let mut mu: Vec<i64> = v
        .signature
        .zero_orders
        .iter()
        .copied()
        .filter(|a| *a != 0)
        .collect();
    mu.sort();
    let empty = matches!(
        (v.signature.genus, mu.as_slice()),
        (1, []) | (1, [-1, 1]) | (2, [4]) | (2, [1, 3])
    );
    Ok(!empty)
}

/// Maximal number of pairwise disjoint cylinders of a differential in a
/// non-empty finite-area stratum: `g + 𝔭 + 𝔦/2 − 1`, where `𝔭` counts even
/// zeros and `𝔦` odd zeros (simple poles included).
pub fn max_disjoint_cylinders(sig: &StratumSignature) -> Result<i64, CoreError> {
    if !stratum_nonempty_holomorphic(sig)? {
        return Err(CoreError::EmptyStratum);
    }
    let i = sig.odd_zero_count() as i64;
    let p = sig.even_zero_count() as i64;
    Ok(sig.genus + p + i / 2 - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hol(g: i64, mu: &[i64]) -> StratumSignature {
        StratumSignature::new(g, mu, &[], &[], 0)
    }

    #[test]
    fn exceptional_empty_strata() {
        assert!(!stratum_nonempty_holomorphic(&hol(2, &[4])).unwrap());
        assert!(!stratum_nonempty_holomorphic(&hol(2, &[1, 3])).unwrap());
        assert!(!stratum_nonempty_holomorphic(&hol(1, &[-1, 1])).unwrap());
        assert!(!stratum_nonempty_holomorphic(&hol(1, &[])).unwrap());
        assert!(stratum_nonempty_holomorphic(&hol(3, &[8])).unwrap());
        assert!(stratum_nonempty_holomorphic(&hol(0, &[-1, -1, -1, -1])).unwrap());
    }

    #[test]
    fn cylinder_bound() {
        assert_eq!(max_disjoint_cylinders(&hol(2, &[1, 1, 2])).unwrap(), 3);
        // Orders (2, 2) do not sum to 0, so they are no genus-1 signature.
        assert!(matches!(
            max_disjoint_cylinders(&hol(1, &[2, 2])),
            Err(CoreError::DegreeMismatch { .. })
        ));
        assert_eq!(max_disjoint_cylinders(&hol(1, &[2, -1, -1])).unwrap(), 2);
        assert_eq!(max_disjoint_cylinders(&hol(3, &[8])).unwrap(), 3);
        assert_eq!(
            max_disjoint_cylinders(&hol(2, &[4])),
            Err(CoreError::EmptyStratum)
        );
    }
}
