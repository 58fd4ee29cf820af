// SPDX-License-Identifier: MIT OR Apache-2.0
//! Exhaustive search over horizontal normal forms of genus-zero surfaces
//! with two odd zeros and only double poles.
//!
//! When every saddle connection is horizontal, such a surface is a union of
//! half-infinite cylinders (one per double pole, of circumference `r_i`)
//! glued along an incidence graph with as many edges as vertices: one odd
//! cycle with trees attached. The search enumerates every labelled graph
//! of that kind and every side assignment of the trees (which decides the
//! zero at each corner), solves the length system exactly, keeps the
//! solutions with positive lengths and assembles and verifies one surface
//! per class.
//!
//! Non-existence reported by an empty search relies on the fact that every
//! orbit closure of the stratum contains a surface with only horizontal
//! saddle connections; the search does not prove that fact itself.

use std::collections::BTreeMap;

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::constructors::cylinder_chain::{
    assign_parents, for_each_cycle, side_assignments, tree_edges_for, zero_pair,
};
use crate::constructors::{
    construct_cylinder_chain, solve_lengths, ChainLengths, ChainPlan, ConstructError, Witness,
};
use crate::core::signature::{int_string, usize_string};
use crate::core::{qi, StratumSignature, Q};

/// Default largest number of double poles.
pub const DEFAULT_BUDGET: usize = 7;

/// Errors raised by the search.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("{s} double poles exceed the search budget of {budget}")]
    BudgetExceeded { s: usize, budget: usize },
    #[error("property violated: {0}")]
    PropertyViolated(String),
    #[error(transparent)]
    Construct(#[from] ConstructError),
}

/// One normal form: graph, corner assignment (the sides) and exact
/// lengths.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalForm {
    /// Canonical key: equal keys give isomorphic labelled-by-root surfaces.
    pub key: String,
    pub plan: ChainPlan,
    pub lengths: ChainLengths,
}

/// A verified witness of the search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchWitness {
    pub normal_form: NormalForm,
    pub witness: Witness,
}

/// Canonical string of the subtree hanging at `u`.
fn subtree_key(u: usize, ch: &[Vec<usize>], roots: &[i64]) -> String {
    let mut kids: Vec<String> = ch[u].iter().map(|&w| subtree_key(w, ch, roots)).collect();
    kids.sort();
    format!("{}({})", roots[u], kids.join(","))
}

/// Canonical key of a plan up to relabelling vertices with equal roots,
/// rotating the cycle and reversing it (which exchanges the sides).
pub fn canonical_key(plan: &ChainPlan, roots: &[i64]) -> String {
    let ch = plan.children();
    let tokens: Vec<(String, String, String)> = plan
        .cycle
        .iter()
        .map(|&v| {
            let mut a: Vec<String> = Vec::new();
            let mut b: Vec<String> = Vec::new();
            for &u in &ch[v] {
                let k = subtree_key(u, &ch, roots);
                if plan.side_a[u] {
                    a.push(k);
                } else {
                    b.push(k);
                }
            }
            a.sort();
            b.sort();
            (roots[v].to_string(), a.join(","), b.join(","))
        })
        .collect();
    let c = tokens.len();
    let mut best: Option<String> = None;
    for start in 0..c {
        for reverse in [false, true] {
            let key: Vec<String> = (0..c)
                .map(|k| {
                    let (r, a, b) = if reverse {
                        let (r, a, b) = &tokens[(start + c - k) % c];
                        (r, b, a)
                    } else {
                        let (r, a, b) = &tokens[(start + k) % c];
                        (r, a, b)
                    };
                    format!("{r}[{a}|{b}]")
                })
                .collect();
            let key = key.join(";");
            if best.as_ref().is_none_or(|b| key < *b) {
                best = Some(key);
            }
        }
    }
    best.unwrap_or_default()
}

/// All normal forms of `(a₁, a₂; (−2)^s)` with positive integer roots,
/// one per canonical class, sorted by key.
pub fn enumerate_normal_forms(
    sig: &StratumSignature,
    roots: &[i64],
    budget: usize,
) -> Result<Vec<NormalForm>, SearchError> {
    let (a1, a2) = zero_pair(sig)?;
    let n = sig.s();
    if n > budget {
        return Err(SearchError::BudgetExceeded { s: n, budget });
    }
    if roots.len() != n || roots.iter().any(|r| *r <= 0) {
        return Err(ConstructError::InvalidPlan(
            "one positive integer root per double pole".into(),
        )
        .into());
    }
    let q_roots: Vec<Q> = roots.iter().map(|r| qi(*r)).collect();
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    for c in (1..=n).step_by(2) {
        for_each_cycle(n, c, &mut |cyc| {
            cycles.push(cyc.to_vec());
            false
        });
    }
    let per_cycle: Vec<Vec<NormalForm>> = cycles
        .par_iter()
        .map(|cycle| {
            let c = cycle.len();
            let mut side_sizes: Vec<usize> = [a1, a2]
                .iter()
                .filter_map(|a| tree_edges_for(*a, c))
                .collect();
            side_sizes.dedup();
            let mut out = Vec::new();
            if tree_edges_for(a1, c).is_none() || tree_edges_for(a2, c).is_none() {
                return out;
            }
            let mut on_cycle = vec![false; n];
            for &v in cycle {
                on_cycle[v] = true;
            }
            let rest: Vec<usize> = (0..n).filter(|v| !on_cycle[*v]).collect();
            let mut parent = vec![None; n];
            assign_parents(&rest, 0, &on_cycle, &mut parent, &mut |par| {
                let probe = ChainPlan {
                    cycle: cycle.clone(),
                    parent: par.to_vec(),
                    side_a: vec![false; n],
                };
                let Ok(lengths) = solve_lengths(&probe, &q_roots) else {
                    return false;
                };
                for &ta in &side_sizes {
                    for side in side_assignments(cycle, par, ta) {
                        let plan = ChainPlan {
                            side_a: side,
                            ..probe.clone()
                        };
                        let (fa, fb) = plan.face_degrees();
                        let mut found = [fa - 2, fb - 2];
                        found.sort_unstable();
                        if found != [a1, a2] {
                            continue;
                        }
                        out.push(NormalForm {
                            key: canonical_key(&plan, roots),
                            plan,
                            lengths: lengths.clone(),
                        });
                    }
                }
                false
            });
            out
        })
        .collect();
    let mut unique: BTreeMap<String, NormalForm> = BTreeMap::new();
    for nf in per_cycle.into_iter().flatten() {
        unique.entry(nf.key.clone()).or_insert(nf);
    }
    Ok(unique.into_values().collect())
}

/// All verified witnesses, in the order of [`enumerate_normal_forms`].
pub fn search_witnesses(
    sig: &StratumSignature,
    roots: &[i64],
    budget: usize,
) -> Result<Vec<SearchWitness>, SearchError> {
    let forms = enumerate_normal_forms(sig, roots, budget)?;
    forms
        .into_par_iter()
        .map(|nf| {
            let witness = construct_cylinder_chain(sig, roots, &nf.plan)?;
            Ok(SearchWitness {
                normal_form: nf,
                witness,
            })
        })
        .collect()
}

/// Result of the half-integrality check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HalfIntegerReport {
    /// Parity of the sum of the coprime roots.
    pub sum_is_even: bool,
    pub passed: bool,
}

fn is_integer(x: &Q) -> bool {
    x.is_integer()
}

fn is_half_odd(x: &Q) -> bool {
    !x.is_integer() && (x * Q::from_integer(2.into())).is_integer()
}

/// With roots divided by their `gcd`: an even sum forces integer lengths
/// everywhere; an odd sum forces half-odd cycle lengths and integer tree
/// lengths. Errors with `PropertyViolated` otherwise.
pub fn check_half_integer_lengths(
    roots: &[i64],
    lengths: &ChainLengths,
) -> Result<HalfIntegerReport, SearchError> {
    let g = roots.iter().fold(0i64, |acc, r| acc.gcd(r));
    if g == 0 {
        return Ok(HalfIntegerReport {
            sum_is_even: true,
            passed: true,
        });
    }
    let scale = Q::new(1.into(), g.into());
    let sum: i64 = roots.iter().map(|r| r / g).sum();
    let even = sum % 2 == 0;
    let cycle_ok = lengths.cycle.iter().all(|l| {
        let l = l * &scale;
        if even {
            is_integer(&l)
        } else {
            is_half_odd(&l)
        }
    });
    let tree_ok = lengths
        .tree
        .iter()
        .flatten()
        .all(|l| is_integer(&(l * &scale)));
    if !(cycle_ok && tree_ok) {
        return Err(SearchError::PropertyViolated(format!(
            "lengths {lengths:?} for roots {roots:?} break half-integrality"
        )));
    }
    Ok(HalfIntegerReport {
        sum_is_even: even,
        passed: true,
    })
}

/// Lower bound on the coprime root sum when a witness exists: at least
/// the larger zero order plus two for odd sums, the sum of both orders plus
/// four for even sums.
pub fn check_sum_bound(sig: &StratumSignature, roots: &[i64]) -> Result<(), SearchError> {
    let (a1, a2) = zero_pair(sig)?;
    let g = roots.iter().fold(0i64, |acc, r| acc.gcd(r)).max(1);
    let sum: i64 = roots.iter().map(|r| r / g).sum();
    let bound = if sum % 2 == 1 { a2 + 2 } else { a1 + a2 + 4 };
    if sum < bound {
        return Err(SearchError::PropertyViolated(format!(
            "witness with coprime root sum {sum} below the bound {bound}"
        )));
    }
    Ok(())
}

/// Tally of one property check.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckTally {
    #[serde(with = "usize_string")]
    pub checked: usize,
    #[serde(with = "usize_string")]
    pub violations: usize,
}

/// Property checks run on every witness.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyChecks {
    pub half_integer_lengths: CheckTally,
    pub root_sum_bound: CheckTally,
}

/// Report of a search run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    #[serde(with = "usize_string")]
    pub witness_count: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_witness: Option<SearchWitness>,
    pub property_checks: PropertyChecks,
    #[serde(with = "int_string")]
    pub double_poles: i64,
}

/// Runs the search and the property checks.
pub fn run_search(
    sig: &StratumSignature,
    roots: &[i64],
    budget: usize,
) -> Result<SearchReport, SearchError> {
    let witnesses = search_witnesses(sig, roots, budget)?;
    let mut checks = PropertyChecks::default();
    for w in &witnesses {
        checks.half_integer_lengths.checked += 1;
        if check_half_integer_lengths(roots, &w.normal_form.lengths).is_err() {
            checks.half_integer_lengths.violations += 1;
        }
        checks.root_sum_bound.checked += 1;
        if check_sum_bound(sig, roots).is_err() {
            checks.root_sum_bound.violations += 1;
        }
    }
    Ok(SearchReport {
        witness_count: witnesses.len(),
        first_witness: witnesses.into_iter().next(),
        property_checks: checks,
        double_poles: sig.s() as i64,
    })
}
