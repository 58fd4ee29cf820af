// SPDX-License-Identifier: MIT OR Apache-2.0
//! Properties of the decision procedure: invariance under scaling and
//! under permutations within a pole class, and the closed-form
//! triangularity test against sign enumeration.

use proptest::prelude::*;

use quadstrata::core::{q, GaussianRational};
use quadstrata::oracle::{decide, is_triangular, is_triangular_rooted};
use quadstrata::{ComponentSelector, RootedResidueConfig, StratumSignature};

fn g(s: &str) -> GaussianRational {
    s.parse().unwrap()
}

fn gs(xs: &[&str]) -> Vec<GaussianRational> {
    xs.iter().map(|x| g(x)).collect()
}

/// Small Gaussian rationals.
fn gaussian() -> impl Strategy<Value = GaussianRational> {
    (-4i64..=4, -4i64..=4, 1i64..=3).prop_map(|(a, b, d)| GaussianRational::new(q(a, d), q(b, d)))
}

fn nonzero_gaussian() -> impl Strategy<Value = GaussianRational> {
    gaussian().prop_filter("non-zero", |z| !z.is_zero())
}

/// Configurations on the boundary of the obstruction families, together
/// with generic ones.
fn fixtures() -> Vec<(StratumSignature, RootedResidueConfig, ComponentSelector)> {
    use ComponentSelector::{RotationNumber as Rho, WholeStratum as All};
    let f = |genus: i64, mu: &[i64], even: &[&str], double: &[&str], c| {
        (
            StratumSignature::from_orders(genus, mu),
            RootedResidueConfig::new(gs(even), gs(double)),
            c,
        )
    };
    vec![
        f(1, &[4, -4], &["0"], &[], All),
        f(1, &[4, -4], &["1"], &[], All),
        f(1, &[8, -2, -2, -2, -2], &[], &["1", "1", "1", "1"], All),
        f(1, &[8, -2, -2, -2, -2], &[], &["1", "1", "1", "2"], All),
        f(1, &[6, -6], &["0"], &[], Rho(1)),
        f(1, &[6, -6], &["0"], &[], Rho(3)),
        f(0, &[1, 1, -2, -2, -2], &[], &["1", "1", "2"], All),
        f(0, &[1, 1, -2, -2, -2], &[], &["1", "2", "4"], All),
        f(0, &[1, 1, -2, -2, -2], &[], &["1", "i", "1+2i"], All),
        f(0, &[1, 3, -2, -2, -2, -2], &[], &["1", "1", "2", "2"], All),
        f(0, &[-1, 3, -2, -2, -2], &[], &["1", "1", "1"], All),
        f(
            0,
            &[1, 5, -2, -2, -2, -2, -2],
            &[],
            &["1", "1", "1", "1", "2"],
            All,
        ),
        f(0, &[3, 3, -4, -2, -2, -2], &["1"], &["1", "1", "1"], All),
        f(0, &[3, 3, -4, -4, -2], &["1", "0"], &["1"], All),
        f(0, &[3, 3, -4, -6], &["1", "1"], &[], All),
        f(0, &[3, 3, -4, -6], &["1", "2"], &[], All),
        f(0, &[3, -3, -4], &["1"], &[], All),
        f(0, &[6, -3, -3, -4], &["2"], &[], All),
        f(0, &[5, -3, -4, -2], &["1+i"], &["-2"], All),
        f(2, &[6, 2, -4], &["0"], &[], All),
    ]
}

fn same_answer(
    a: &Result<quadstrata::oracle::Verdict, quadstrata::oracle::OracleError>,
    b: &Result<quadstrata::oracle::Verdict, quadstrata::oracle::OracleError>,
) -> bool {
    match (a, b) {
        (Ok(x), Ok(y)) => {
            x.status == y.status && x.obstruction == y.obstruction && x.citation == y.citation
        }
        (Err(x), Err(y)) => std::mem::discriminant(x) == std::mem::discriminant(y),
        _ => false,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn decide_is_scaling_invariant(i in 0usize..20, lambda in nonzero_gaussian()) {
        let (sig, config, c) = fixtures().swap_remove(i);
        let base = decide(&sig, &config, c);
        let scaled = decide(&sig, &config.scaled(&lambda), c);
        prop_assert!(same_answer(&base, &scaled), "{sig}: {base:?} vs {scaled:?}");
    }

    #[test]
    fn decide_is_invariant_under_double_pole_permutations(
        i in 0usize..20,
        perm in Just((0..8usize).collect::<Vec<_>>()).prop_shuffle(),
    ) {
        let (sig, config, c) = fixtures().swap_remove(i);
        let order: Vec<usize> = perm.into_iter().filter(|k| *k < config.double_pole_roots.len()).collect();
        let permuted = RootedResidueConfig::new(
            config.even_pole_roots.clone(),
            order.iter().map(|k| config.double_pole_roots[*k].clone()).collect(),
        );
        let a = decide(&sig, &config, c);
        let b = decide(&sig, &permuted, c);
        prop_assert!(same_answer(&a, &b), "{sig}: {a:?} vs {b:?}");
    }

    #[test]
    fn decide_is_invariant_under_even_pole_permutations(
        i in 0usize..20,
        perm in Just((0..8usize).collect::<Vec<_>>()).prop_shuffle(),
    ) {
        let (sig, config, c) = fixtures().swap_remove(i);
        let p = sig.even_pole_orders.len();
        let order: Vec<usize> = perm.into_iter().filter(|k| *k < p).collect();
        let mut permuted_sig = sig.clone();
        permuted_sig.even_pole_orders = order.iter().map(|k| sig.even_pole_orders[*k]).collect();
        let permuted = RootedResidueConfig::new(
            order.iter().map(|k| config.even_pole_roots[*k].clone()).collect(),
            config.double_pole_roots.clone(),
        );
        let a = decide(&sig, &config, c);
        let b = decide(&permuted_sig, &permuted, c);
        prop_assert!(same_answer(&a, &b), "{sig}: {a:?} vs {b:?}");
    }

    #[test]
    fn random_configurations_are_scaling_invariant(
        roots in proptest::collection::vec(nonzero_gaussian(), 3),
        lambda in nonzero_gaussian(),
    ) {
        let sig = StratumSignature::from_orders(0, &[1, 1, -2, -2, -2]);
        let config = RootedResidueConfig::new(vec![], roots);
        let a = decide(&sig, &config, ComponentSelector::WholeStratum);
        let b = decide(&sig, &config.scaled(&lambda), ComponentSelector::WholeStratum);
        prop_assert!(same_answer(&a, &b), "{a:?} vs {b:?}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn closed_form_triangularity_matches_sign_enumeration(
        x1 in gaussian(),
        x2 in gaussian(),
        x3 in gaussian(),
        mode in 0u8..4,
    ) {
        // Half of the triples are triangular by construction.
        let x3 = match mode {
            0 => -(&x1 + &x2),
            1 => &x1 - &x2,
            _ => x3,
        };
        let closed = is_triangular(&x1.square(), &x2.square(), &x3.square());
        prop_assert_eq!(closed, is_triangular_rooted(&x1, &x2, &x3));
        if mode < 2 {
            prop_assert!(closed);
        }
    }
}
