// SPDX-License-Identifier: MIT OR Apache-2.0
//! A catalog of worked cases, each built by [`construct`](super::construct)
//! and checked by the verifier. Used by the tests and by the command line
//! tool to list example witnesses.

use serde::{Deserialize, Serialize};

use super::Recipe;
use crate::core::{ComponentSelector, GaussianRational, RootedResidueConfig, StratumSignature};

/// One catalog entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogCase {
    pub name: String,
    pub signature: StratumSignature,
    pub config: RootedResidueConfig,
    pub component: ComponentSelector,
    /// Recipe expected to produce the witness.
    pub recipe: Recipe,
}

fn g(s: &str) -> GaussianRational {
    s.parse().expect("catalog literal")
}

fn gs(xs: &[&str]) -> Vec<GaussianRational> {
    xs.iter().map(|x| g(x)).collect()
}

fn case(
    name: &str,
    sig: StratumSignature,
    even: &[&str],
    double: &[&str],
    component: ComponentSelector,
    recipe: Recipe,
) -> CatalogCase {
    CatalogCase {
        name: name.into(),
        signature: sig,
        config: RootedResidueConfig::new(gs(even), gs(double)),
        component,
        recipe,
    }
}

/// The catalog.
pub fn catalog() -> Vec<CatalogCase> {
    use ComponentSelector::{RotationNumber as Rho, WholeStratum as All};
    use Recipe::*;
    let s = StratumSignature::new;
    vec![
        // Genus zero, single zero, odd poles.
        case(
            "g0-odd-two-odd-poles-origin",
            s(0, &[6], &[4], &[3, 3], 0),
            &["0"],
            &[],
            All,
            Genus0OddPole,
        ),
        case(
            "g0-odd-two-odd-poles-nonzero",
            s(0, &[6], &[4], &[3, 3], 0),
            &["2"],
            &[],
            All,
            Genus0OddPole,
        ),
        case(
            "g0-odd-only-odd-poles",
            s(0, &[2], &[], &[3, 3], 0),
            &[],
            &[],
            All,
            Genus0OddPole,
        ),
        case(
            "g0-odd-one-even-pole",
            s(0, &[3], &[4], &[3], 0),
            &["1"],
            &[],
            All,
            Genus0OddPole,
        ),
        case(
            "g0-odd-even-and-double",
            s(0, &[5], &[4], &[3], 1),
            &["1+i"],
            &["-2"],
            All,
            Genus0OddPole,
        ),
        case(
            "g0-odd-doubles",
            s(0, &[4], &[], &[3, 3], 1),
            &[],
            &["i"],
            All,
            Genus0OddPole,
        ),
        case(
            "g0-odd-two-zero-residues",
            s(0, &[10], &[4, 4], &[3, 3], 0),
            &["0", "0"],
            &[],
            All,
            Genus0OddPole,
        ),
        case(
            "g0-odd-mixed-residues",
            s(0, &[10], &[4, 4], &[3, 3], 0),
            &["1+i", "0"],
            &[],
            All,
            Genus0OddPole,
        ),
        case(
            "g0-odd-three-odd-poles",
            s(0, &[5], &[], &[3, 3, 3], 0),
            &[],
            &[],
            All,
            Genus0OddPole,
        ),
        case(
            "g0-odd-higher-odd-pole",
            s(0, &[9], &[], &[3, 5, 3], 1),
            &[],
            &["i"],
            All,
            Genus0OddPole,
        ),
        case(
            "g0-odd-order-six",
            s(0, &[8], &[6], &[3, 3], 0),
            &["1-i"],
            &[],
            All,
            Genus0OddPole,
        ),
        case(
            "g0-odd-order-five",
            s(0, &[3], &[], &[5], 1),
            &[],
            &["3"],
            All,
            Genus0OddPole,
        ),
        case(
            "g0-odd-seven-and-three",
            s(0, &[6], &[], &[7, 3], 0),
            &[],
            &[],
            All,
            Genus0OddPole,
        ),
        // Genus zero, polygon recipe.
        case(
            "cc-figure",
            s(0, &[1, 3], &[], &[], 4),
            &[],
            &["1", "5/2i", "-5/2-i", "-1/2-3/2i"],
            All,
            Cc,
        ),
        case(
            "cc-three-generic",
            s(0, &[1, 1], &[], &[], 3),
            &[],
            &["1", "i", "1+2i"],
            All,
            Cc,
        ),
        case(
            "cc-four-generic",
            s(0, &[1, 3], &[], &[], 4),
            &[],
            &["1", "2i", "1+i", "3"],
            All,
            Cc,
        ),
        case(
            "cc-five-generic",
            s(0, &[3, 3], &[], &[], 5),
            &[],
            &["1", "i", "2+i", "1-3i", "2"],
            All,
            Cc,
        ),
        case(
            "cc-simple-pole",
            s(0, &[-1, 1], &[], &[], 2),
            &[],
            &["1", "i"],
            All,
            Cc,
        ),
        // Genus zero, cylinder chains.
        case(
            "chain-three-1-2-4",
            s(0, &[1, 1], &[], &[], 3),
            &[],
            &["1", "2", "4"],
            All,
            CylinderChain,
        ),
        case(
            "chain-three-2-3-4",
            s(0, &[1, 1], &[], &[], 3),
            &[],
            &["2", "3", "4"],
            All,
            CylinderChain,
        ),
        case(
            "chain-five",
            s(0, &[3, 3], &[], &[], 5),
            &[],
            &["1", "2", "3", "5", "5"],
            All,
            CylinderChain,
        ),
        case(
            "chain-simple-pole",
            s(0, &[-1, 1], &[], &[], 2),
            &[],
            &["1", "2"],
            All,
            CylinderChain,
        ),
        case(
            "chain-four",
            s(0, &[1, 3], &[], &[], 4),
            &[],
            &["1", "1", "1", "2"],
            All,
            CylinderChain,
        ),
        case(
            "chain-loop",
            s(0, &[-1, -1], &[], &[], 1),
            &[],
            &["1"],
            All,
            CylinderChain,
        ),
        case(
            "chain-scaled",
            s(0, &[1, 1], &[], &[], 3),
            &[],
            &["i", "2i", "4i"],
            All,
            CylinderChain,
        ),
        // Genus one.
        case(
            "g1-order-four",
            s(1, &[4], &[4], &[], 0),
            &["2"],
            &[],
            All,
            Genus1SingleZero,
        ),
        case(
            "g1-order-six-origin-rho3",
            s(1, &[6], &[6], &[], 0),
            &["0"],
            &[],
            Rho(3),
            Genus1SingleZero,
        ),
        case(
            "g1-order-six-nonzero",
            s(1, &[6], &[6], &[], 0),
            &["1"],
            &[],
            All,
            Genus1SingleZero,
        ),
        case(
            "g1-order-eight-origin",
            s(1, &[8], &[8], &[], 0),
            &["0"],
            &[],
            All,
            Genus1SingleZero,
        ),
        case(
            "g1-order-ten-rho5",
            s(1, &[10], &[10], &[], 0),
            &["0"],
            &[],
            Rho(5),
            Genus1SingleZero,
        ),
        case(
            "g1-order-ten-rho1",
            s(1, &[10], &[10], &[], 0),
            &["0"],
            &[],
            Rho(1),
            Genus1SingleZero,
        ),
        case(
            "g1-two-poles",
            s(1, &[6], &[4], &[], 1),
            &["1"],
            &["i"],
            All,
            Genus1SingleZero,
        ),
        case(
            "g1-two-fours",
            s(1, &[8], &[4, 4], &[], 0),
            &["1", "0"],
            &[],
            All,
            Genus1SingleZero,
        ),
        case(
            "g1-two-fours-generic",
            s(1, &[8], &[4, 4], &[], 0),
            &["1", "2i"],
            &[],
            All,
            Genus1SingleZero,
        ),
        case(
            "g1-twelve-rho1",
            s(1, &[12], &[6, 6], &[], 0),
            &["0", "0"],
            &[],
            Rho(1),
            Genus1SingleZero,
        ),
    ]
}
