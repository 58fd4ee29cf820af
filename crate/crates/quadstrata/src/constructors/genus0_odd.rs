// SPDX-License-Identifier: MIT OR Apache-2.0
//! Genus-zero strata with a single zero and at least one odd pole.
//!
//! One odd polar part (the collector) carries on its lower boundary one
//! segment per other pole contributing to the zero; every other pole
//! provides a polar part with a single upper segment glued to it.
//!
//! * All residues zero (needs two odd poles): the collector of order `−c₁`
//!   carries `1^{r−1}`; the second odd pole feeds it through a chain of
//!   trivial even parts `(1; 1)`, the remaining odd poles feed it directly.
//! * Otherwise the collector carries `1^{r−1}` and the chosen roots of the
//!   non-zero residues, all in the right half plane and sorted by
//!   decreasing argument; the poles with zero residue are trivial parts
//!   inserted in front of one feeder.

use std::cmp::Ordering;

use num_traits::Signed;

use super::{
    double_label, even_label, odd_label, precheck, single_zero, ConstructError, Recipe, Witness,
};
use crate::core::{GaussianRational, RootedResidueConfig, StratumSignature};
use crate::oracle::{classify, Status};
use crate::surface::{
    make_polar_part_even, make_polar_part_odd, make_polar_part_order2, EdgeRef, PolarPart, Side,
    SurfaceBuilder,
};

/// Source of one collector segment.
#[derive(Clone, Copy, Debug)]
enum Feeder {
    Odd(usize),
    Even(usize),
    Double(usize),
}

/// Decreasing argument for vectors of the right half plane.
fn by_decreasing_argument(a: &GaussianRational, b: &GaussianRational) -> Ordering {
    let c = b.cross(a);
    if c.is_positive() {
        Ordering::Less
    } else if c.is_negative() {
        Ordering::Greater
    } else {
        Ordering::Equal
    }
}

/// Inserts trivial even parts `(x; x)` between `feeder` and its target and
/// returns the new free edge playing the role of `feeder`.
fn insert_trivial_parts(
    b: &mut SurfaceBuilder,
    mut feeder: EdgeRef,
    x: &GaussianRational,
    zero_poles: &[(usize, i64)],
) -> Result<EdgeRef, ConstructError> {
    for &(j, order) in zero_poles {
        let part =
            make_polar_part_even(order, 1, std::slice::from_ref(x), std::slice::from_ref(x))?;
        let placed = b.add_polar_part(part, even_label(j))?;
        b.glue_auto(feeder, placed.lower[0])?;
        feeder = placed.upper[0];
    }
    Ok(feeder)
}

/// Builds the genus-zero single-zero surface with odd poles.
pub fn construct_genus0_odd_pole(
    sig: &StratumSignature,
    config: &RootedResidueConfig,
) -> Result<Witness, ConstructError> {
    precheck(sig, config)?;
    if sig.genus != 0 || sig.r() == 0 || single_zero(sig).is_none() {
        return Err(ConstructError::BadSignature(
            "needs genus zero, a single zero and an odd pole".into(),
        ));
    }
    if config.is_origin() && sig.r() < 2 {
        return Err(ConstructError::BadSignature(
            "zero residues need at least two odd poles".into(),
        ));
    }
    let verdict = classify(sig, config, Default::default())?;
    if verdict.status == Status::NotRealizable {
        return Err(ConstructError::ObstructedConfiguration(verdict.citation));
    }
    let one = GaussianRational::one();
    let r = sig.r();
    let zero_poles: Vec<(usize, i64)> = sig
        .even_pole_orders
        .iter()
        .enumerate()
        .filter(|(j, _)| config.even_pole_roots[*j].is_zero())
        .map(|(j, b)| (j, *b))
        .collect();

    // Segments of the collector and their sources.
    let mut segs: Vec<(GaussianRational, Feeder)> =
        (1..r).map(|j| (one.clone(), Feeder::Odd(j))).collect();
    if !config.is_origin() {
        for (j, root) in config.even_pole_roots.iter().enumerate() {
            if !root.is_zero() {
                segs.push((root.right_half_plane_rep(), Feeder::Even(j)));
            }
        }
        for (j, root) in config.double_pole_roots.iter().enumerate() {
            segs.push((root.right_half_plane_rep(), Feeder::Double(j)));
        }
        segs.sort_by(|a, b| by_decreasing_argument(&a.0, &b.0));
    }
    let vectors: Vec<GaussianRational> = segs.iter().map(|(v, _)| v.clone()).collect();

    let mut b = SurfaceBuilder::new();
    let collector = b.add_polar_part(
        make_polar_part_odd(sig.odd_pole_orders[0], Side::Lower, &vectors)?,
        odd_label(0),
    )?;
    let mut trivial_pending = zero_poles.as_slice();
    for (k, (v, source)) in segs.iter().enumerate() {
        let part: PolarPart = match *source {
            Feeder::Odd(j) => {
                make_polar_part_odd(sig.odd_pole_orders[j], Side::Upper, std::slice::from_ref(v))?
            }
            Feeder::Even(j) => {
                make_polar_part_even(sig.even_pole_orders[j], 1, std::slice::from_ref(v), &[])?
            }
            Feeder::Double(_) => make_polar_part_order2(std::slice::from_ref(v))?,
        };
        let label = match *source {
            Feeder::Odd(j) => odd_label(j),
            Feeder::Even(j) => even_label(j),
            Feeder::Double(j) => double_label(j),
        };
        let placed = b.add_polar_part(part, label)?;
        let mut feeder = placed.upper[0];
        // In the zero-residue case the chain sits in front of the second
        // odd pole; otherwise in front of the first feeder.
        if k == 0 {
            feeder = insert_trivial_parts(&mut b, feeder, v, trivial_pending)?;
            trivial_pending = &[];
        }
        b.glue_auto(feeder, collector.lower[k])?;
    }
    if !trivial_pending.is_empty() {
        return Err(ConstructError::BadSignature("no pole to attach to".into()));
    }
    let surface = b.finish()?;
    Witness::checked(Recipe::Genus0OddPole, sig, config, surface, None)
}
