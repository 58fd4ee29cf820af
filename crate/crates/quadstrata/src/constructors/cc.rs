// SPDX-License-Identifier: MIT OR Apache-2.0
//! The polygon recipe for `Q₀(a₁, a₂; (−2)^s)` with odd `a₁, a₂`.
//!
//! The roots (with chosen signs `ε_i`) are split into two chains `E₁` and
//! `E₂`. The polygon has edges `v, E₁…, v, E₂…` with
//! `v = −(Σ ε_i r_i)/2` so that it closes; its two `v` edges are glued by a
//! half turn and a half-infinite cylinder of circumference `ε_i r_i` is
//! glued to each root edge. With `|E₁| = l₁` and `|E₂| = l₂ + 1`, where
//! `a_i = 2 l_i − 1`, the vertices of the two chains become zeros of orders
//! `a₁` and `a₂` exactly when the polygon is embedded, the `E₁` chain turns
//! by `0` and the `E₂` chain by `2π`; the verifier decides.

use serde::{Deserialize, Serialize};

use super::{double_label, precheck, ConstructError, Recipe, Witness};
use crate::core::{GaussianRational, RootedResidueConfig, StratumSignature};
use crate::surface::angle::rat_to_f64;
use crate::surface::{make_polar_part_order2, EdgeRef, Piece, SurfaceBuilder, Twist};

/// Split and signs of the roots.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CcPlan {
    /// Root indices of the first chain, in polygon order.
    pub e1: Vec<usize>,
    /// Root indices of the second chain, in polygon order.
    pub e2: Vec<usize>,
    /// Sign of every root (`true` for `+`).
    pub signs: Vec<bool>,
}

fn signed(r: &GaussianRational, plus: bool) -> GaussianRational {
    if plus {
        r.clone()
    } else {
        -r.clone()
    }
}

/// The two odd zero orders of a supported signature.
fn odd_pair(sig: &StratumSignature) -> Result<(i64, i64), ConstructError> {
    let z = &sig.zero_orders;
    if sig.genus != 0 || sig.p() != 0 || sig.r() != 0 || z.len() != 2 || sig.odd_zero_count() != 2 {
        return Err(ConstructError::BadSignature(
            "needs genus zero, two odd zeros and only double poles".into(),
        ));
    }
    Ok((z[0].min(z[1]), z[0].max(z[1])))
}

/// Builds the polygon surface for an explicit plan.
pub fn construct_cc(
    sig: &StratumSignature,
    roots: &[GaussianRational],
    plan: &CcPlan,
) -> Result<Witness, ConstructError> {
    let config = RootedResidueConfig::new(vec![], roots.to_vec());
    precheck(sig, &config)?;
    let (a1, a2) = odd_pair(sig)?;
    let s = roots.len();
    let mut seen = vec![false; s];
    for &i in plan.e1.iter().chain(plan.e2.iter()) {
        if i >= s || seen[i] {
            return Err(ConstructError::InvalidPlan(
                "the chains must partition the roots".into(),
            ));
        }
        seen[i] = true;
    }
    if seen.iter().any(|x| !x) || plan.signs.len() != s {
        return Err(ConstructError::InvalidPlan(
            "the chains must partition the roots".into(),
        ));
    }
    let size = |a: i64| (a + 1) / 2;
    let fits =
        |x: i64, y: i64| plan.e1.len() as i64 == size(x) && plan.e2.len() as i64 == size(y) + 1;
    if !fits(a1, a2) && !fits(a2, a1) {
        return Err(ConstructError::InvalidPlan(format!(
            "chain sizes ({}, {}) do not match zero orders ({a1}, {a2})",
            plan.e1.len(),
            plan.e2.len()
        )));
    }
    let edge = |i: usize| signed(&roots[i], plan.signs[i]);
    let total: GaussianRational = (0..s).map(edge).sum();
    let v = total.scale(&crate::core::q(-1, 2));
    if v.is_zero() {
        return Err(ConstructError::ClosureFailure);
    }
    let mut vectors = vec![v.clone()];
    vectors.extend(plan.e1.iter().map(|&i| edge(i)));
    vectors.push(v);
    vectors.extend(plan.e2.iter().map(|&i| edge(i)));
    let polygon = Piece::polygon(vectors);
    if polygon.check(0).is_err() {
        return Err(ConstructError::DegeneratePolygon);
    }
    let mut b = SurfaceBuilder::new();
    let poly = b.add_piece(polygon);
    let second_v = plan.e1.len() + 1;
    b.glue(
        EdgeRef::new(poly, 0),
        EdgeRef::new(poly, second_v),
        Twist::HalfTurn,
    )?;
    let positions = plan.e1.iter().enumerate().map(|(k, &i)| (k + 1, i)).chain(
        plan.e2
            .iter()
            .enumerate()
            .map(|(k, &i)| (second_v + 1 + k, i)),
    );
    for (pos, i) in positions {
        let part = make_polar_part_order2(&[-edge(i)])?;
        let placed = b.add_polar_part(part, double_label(i))?;
        b.glue(EdgeRef::new(poly, pos), placed.upper[0], Twist::Translation)?;
    }
    let surface = b.finish()?;
    Witness::checked(Recipe::Cc, sig, &config, surface, None)
}

/// Angle of `z` measured counter-clockwise from `from`, in `(−π, π]`.
fn relative_angle(z: &GaussianRational, from: &GaussianRational) -> f64 {
    let (x, y) = (rat_to_f64(z.re()), rat_to_f64(z.im()));
    let (fx, fy) = (rat_to_f64(from.re()), rat_to_f64(from.im()));
    let a = y.atan2(x) - fy.atan2(fx);
    let two_pi = 2.0 * std::f64::consts::PI;
    let mut a = a.rem_euclid(two_pi);
    if a > std::f64::consts::PI {
        a -= two_pi;
    }
    a
}

/// All `k`-subsets of `0..n` in lexicographic order.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Searches splits, signs and chain orders for an embedded polygon whose
/// surface verifies. Chains are ordered by their angle relative to `v`: the
/// first chain by decreasing angle in `(−π, π]` (it must turn back to
/// `v`), the second by increasing angle in `(0, 2π]` (it turns once).
pub fn construct_cc_auto(
    sig: &StratumSignature,
    config: &RootedResidueConfig,
) -> Result<Witness, ConstructError> {
    precheck(sig, config)?;
    let (a1, a2) = odd_pair(sig)?;
    let roots = &config.double_pole_roots;
    let s = roots.len();
    let mut orientations = vec![(a1, a2)];
    if a1 != a2 {
        orientations.push((a2, a1));
    }
    let mut last_err = ConstructError::DegeneratePolygon;
    for (x, y) in orientations {
        let n1 = ((x + 1) / 2) as usize;
        let n2 = ((y + 1) / 2 + 1) as usize;
        if n1 + n2 != s {
            continue;
        }
        for e1 in subsets(s, n1) {
            let e2: Vec<usize> = (0..s).filter(|i| !e1.contains(i)).collect();
            for mask in 0..(1u64 << s.saturating_sub(1)) {
                let signs: Vec<bool> = (0..s)
                    .map(|i| i == 0 || mask & (1 << (i - 1)) == 0)
                    .collect();
                let total: GaussianRational = (0..s).map(|i| signed(&roots[i], signs[i])).sum();
                if total.is_zero() {
                    last_err = ConstructError::ClosureFailure;
                    continue;
                }
                let v = -total;
                let ang = |i: &usize| relative_angle(&signed(&roots[*i], signs[*i]), &v);
                let pos_ang = |i: &usize| {
                    let a = ang(i);
                    if a <= 0.0 {
                        a + 2.0 * std::f64::consts::PI
                    } else {
                        a
                    }
                };
                let mut c1 = e1.clone();
                c1.sort_by(|p, q| ang(q).total_cmp(&ang(p)));
                let mut c2 = e2.clone();
                c2.sort_by(|p, q| pos_ang(p).total_cmp(&pos_ang(q)));
                let mut c1_rev = c1.clone();
                c1_rev.reverse();
                for first in [c1, c1_rev] {
                    let plan = CcPlan {
                        e1: first,
                        e2: c2.clone(),
                        signs: signs.clone(),
                    };
                    match construct_cc(sig, roots, &plan) {
                        Ok(w) => return Ok(w),
                        Err(e) => last_err = e,
                    }
                }
            }
        }
    }
    Err(last_err)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    #[test]
    fn figure_data_verifies() {
        let sig = StratumSignature::new(0, &[1, 3], &[], &[], 4);
        let roots = vec![g("1"), g("5/2i"), g("-5/2-i"), g("-1/2-3/2i")];
        let plan = CcPlan {
            e1: vec![0],
            e2: vec![1, 2, 3],
            signs: vec![true; 4],
        };
        let w = construct_cc(&sig, &roots, &plan).unwrap();
        assert_eq!(w.surface.pieces[0].walk()[0].vector(), &g("1"));
    }

    #[test]
    fn triangular_roots_never_give_a_polygon() {
        let sig = StratumSignature::new(0, &[1, 1], &[], &[], 3);
        let cfg = RootedResidueConfig::doubles(&[1, 1, 2]);
        assert!(construct_cc_auto(&sig, &cfg).is_err());
    }

    #[test]
    fn generic_roots_are_found() {
        let sig = StratumSignature::new(0, &[1, 1], &[], &[], 3);
        let cfg = RootedResidueConfig::new(vec![], vec![g("1"), g("i"), g("1+2i")]);
        construct_cc_auto(&sig, &cfg).unwrap();
    }
}
