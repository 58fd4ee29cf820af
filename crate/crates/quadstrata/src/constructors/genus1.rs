// SPDX-License-Identifier: MIT OR Apache-2.0
//! Genus-one strata with a single zero and poles of even order.
//!
//! Two families of handle constructions are searched until one realises the
//! requested rotation number, which is computed from a loop basis found on
//! the glued surface and returned as a certificate.
//!
//! * Non-zero residue at a pole `P` of order `−b ≤ −4`: the polar part of
//!   `P` of type `τ` carries `(v, v, x₁, …; v, v)` with
//!   `4v + Σx = ±r_P`; the two upper `v` are glued by half turns to the
//!   two lower `v` with their order exchanged, which creates the handle.
//!   Every other pole with a non-zero residue contributes a polar part or
//!   cylinder glued to an `x`; poles with zero residue are trivial parts
//!   `(v; v)` inserted into the `v` gluings.
//! * All residues zero: a pole of order `−b ≤ −6` is made of two
//!   right-open domains `(1; 1)` and `b/2 − 3` empty right-open domains
//!   split between the two ray chains; the segments `1` and `−1` of the two
//!   domains are glued by half turns. Other poles are trivial parts
//!   inserted into these gluings.
//!
//! Rotated variants (a common frame on every piece) are tried so that the
//! broken lines stay embedded.

use num_integer::Integer;

use super::{
    double_label, even_label, orders_gcd, precheck, single_zero, ConstructError, Recipe,
    RotationCertificate, Witness,
};
use crate::core::{ComponentSelector, GaussianRational, RootedResidueConfig, StratumSignature};
use crate::oracle::{classify, Status};
use crate::surface::{
    find_loop_basis, make_polar_part_even, make_polar_part_order2, EdgeRef, FlatSurface, Piece,
    PolarPart, SurfaceBuilder, SurfaceError, Twist,
};

/// Upper bound on the number of candidate surfaces per family.
const CANDIDATE_LIMIT: usize = 4000;

/// Mixed-radix enumeration of `∏ 0..radix[i]`.
fn product(radix: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![vec![0; radix.len()]];
    if radix.contains(&0) {
        return vec![];
    }
    loop {
        let mut cur = out.last().unwrap().clone();
        let mut i = 0;
        loop {
            if i == radix.len() {
                return out;
            }
            cur[i] += 1;
            if cur[i] < radix[i] {
                break;
            }
            cur[i] = 0;
            i += 1;
        }
        out.push(cur);
        if out.len() >= CANDIDATE_LIMIT {
            return out;
        }
    }
}

fn g(re: i64, im: i64) -> GaussianRational {
    GaussianRational::int(re, im)
}

/// Frames tried for the non-zero residue family.
fn frames() -> Vec<GaussianRational> {
    vec![
        g(1, 0),
        g(0, 1),
        g(1, 1),
        g(1, -1),
        g(2, 1),
        g(1, 2),
        g(-1, 2),
        g(2, -1),
    ]
}

/// Inserts trivial parts `(x; x)` (types given) between `start` and `end`.
fn chain_trivial(
    b: &mut SurfaceBuilder,
    start: EdgeRef,
    end: EdgeRef,
    parts: &[(usize, i64, i64)],
    x: &GaussianRational,
    frame: &GaussianRational,
) -> Result<(), SurfaceError> {
    let mut prev = start;
    for &(j, order, tau) in parts {
        let part =
            make_polar_part_even(order, tau, std::slice::from_ref(x), std::slice::from_ref(x))?
                .with_frame(frame);
        let placed = b.add_polar_part(part, even_label(j))?;
        b.glue_auto(prev, placed.lower[0])?;
        prev = placed.upper[0];
    }
    b.glue_auto(prev, end)?;
    Ok(())
}

/// Parameters of one non-zero-residue candidate.
struct HandleA<'a> {
    main: usize,
    sign: bool,
    lambda: &'a GaussianRational,
    tau_main: i64,
    /// Types of the other even poles, in signature order (main skipped).
    taus: &'a [i64],
    x_first: bool,
    split: usize,
}

fn build_family_a(
    sig: &StratumSignature,
    config: &RootedResidueConfig,
    p: &HandleA<'_>,
) -> Result<FlatSurface, SurfaceError> {
    let lambda = p.lambda;
    let frame = lambda.inv();
    let rep = |r: &GaussianRational| (lambda * r).right_half_plane_rep();
    // Attachments: (vector, polar part, label).
    let mut attach: Vec<(GaussianRational, PolarPart, String)> = Vec::new();
    let mut zero_parts: Vec<(usize, i64, i64)> = Vec::new();
    let mut t = 0usize;
    for (j, order) in sig.even_pole_orders.iter().enumerate() {
        if j == p.main {
            continue;
        }
        let tau = p.taus[t];
        t += 1;
        let root = &config.even_pole_roots[j];
        if root.is_zero() {
            zero_parts.push((j, *order, tau));
        } else {
            let y = rep(root);
            let part = make_polar_part_even(*order, tau, std::slice::from_ref(&y), &[])?;
            attach.push((y, part, even_label(j)));
        }
    }
    for (j, root) in config.double_pole_roots.iter().enumerate() {
        let y = rep(root);
        attach.push((y.clone(), make_polar_part_order2(&[y])?, double_label(j)));
    }
    attach.sort_by(|a, b| {
        let c = b.0.cross(&a.0);
        c.cmp(&num_traits::Zero::zero()).reverse()
    });
    let xs: Vec<GaussianRational> = attach.iter().map(|(y, _, _)| y.clone()).collect();
    let sum_x: GaussianRational = xs.iter().cloned().sum();
    let r_main = lambda * &config.even_pole_roots[p.main];
    let target = if p.sign { r_main } else { -r_main };
    let v = (&target - &sum_x).scale(&crate::core::q(1, 4));
    if v.is_zero() {
        return Err(SurfaceError::Malformed("vanishing handle vector".into()));
    }
    let mut upper = Vec::new();
    if p.x_first {
        upper.extend(xs.iter().cloned());
        upper.extend([v.clone(), v.clone()]);
    } else {
        upper.extend([v.clone(), v.clone()]);
        upper.extend(xs.iter().cloned());
    }
    let (v0, v1, x0) = if p.x_first {
        (xs.len(), xs.len() + 1, 0)
    } else {
        (0, 1, 2)
    };
    let main_order = sig.even_pole_orders[p.main];
    let main = make_polar_part_even(main_order, p.tau_main, &upper, &[-v.clone(), -v.clone()])?
        .with_frame(&frame);
    let mut b = SurfaceBuilder::new();
    let placed = b.add_polar_part(main, even_label(p.main))?;
    let (first, second) = zero_parts.split_at(p.split.min(zero_parts.len()));
    chain_trivial(&mut b, placed.upper[v0], placed.lower[1], first, &v, &frame)?;
    chain_trivial(
        &mut b,
        placed.upper[v1],
        placed.lower[0],
        second,
        &v,
        &frame,
    )?;
    for (k, (_, part, label)) in attach.into_iter().enumerate() {
        let part = part.with_frame(&frame);
        let pp = b.add_polar_part(part, label)?;
        b.glue(placed.upper[x0 + k], pp.upper[0], Twist::HalfTurn)?;
    }
    b.finish()
}

/// Parameters of one zero-residue candidate.
struct HandleB<'a> {
    main: usize,
    k1: usize,
    /// Types of the other even poles (main skipped).
    taus: &'a [i64],
    /// Chain of each other even pole: `false` for the `−1` gluing.
    in_upper: &'a [bool],
}

fn build_family_b(sig: &StratumSignature, p: &HandleB<'_>) -> Result<FlatSurface, SurfaceError> {
    let one = GaussianRational::one();
    let main_order = sig.even_pole_orders[p.main];
    let k_total = (main_order / 2 - 3) as usize;
    let k2 = k_total - p.k1;
    let mut b = SurfaceBuilder::new();
    let a = b.add_piece(Piece::open_right(vec![one.clone()], vec![one.clone()]));
    let bb = b.add_piece(Piece::open_right(vec![one.clone()], vec![one.clone()]));
    let mut pieces = vec![a, bb];
    for (from, to, k) in [(a, bb, p.k1), (bb, a, k2)] {
        let mut prev = EdgeRef::new(from, 3);
        for _ in 0..k {
            let d = b.add_piece(Piece::open_right(vec![], vec![]));
            pieces.push(d);
            b.glue(prev, EdgeRef::new(d, 0), Twist::Translation)?;
            prev = EdgeRef::new(d, 1);
        }
        b.glue(prev, EdgeRef::new(to, 0), Twist::Translation)?;
    }
    b.mark_pole(even_label(p.main), -main_order, pieces);
    let mut upper_chain = Vec::new();
    let mut lower_chain = Vec::new();
    let mut t = 0usize;
    for (j, order) in sig.even_pole_orders.iter().enumerate() {
        if j == p.main {
            continue;
        }
        let entry = (j, *order, p.taus[t]);
        if p.in_upper[t] {
            upper_chain.push(entry);
        } else {
            lower_chain.push(entry);
        }
        t += 1;
    }
    chain_trivial(
        &mut b,
        EdgeRef::new(a, 2),
        EdgeRef::new(bb, 2),
        &upper_chain,
        &one,
        &one,
    )?;
    chain_trivial(
        &mut b,
        EdgeRef::new(a, 1),
        EdgeRef::new(bb, 1),
        &lower_chain,
        &one,
        &-one.clone(),
    )?;
    b.finish()
}

/// Checks a candidate and computes its rotation number.
fn certify(
    sig: &StratumSignature,
    config: &RootedResidueConfig,
    surface: FlatSurface,
) -> Option<Witness> {
    let w = Witness::checked(Recipe::Genus1SingleZero, sig, config, surface, None).ok()?;
    let basis = find_loop_basis(&w.surface).ok()??;
    let rho = [basis.alpha_index, basis.beta_index]
        .iter()
        .fold(orders_gcd(sig), |acc, x| acc.gcd(x));
    Some(Witness {
        rotation: Some(RotationCertificate {
            rho,
            alpha: basis.alpha,
            beta: basis.beta,
            alpha_index: basis.alpha_index,
            beta_index: basis.beta_index,
        }),
        ..w
    })
}

/// Builds a genus-one single-zero witness in the requested component.
pub fn construct_genus1_single_zero(
    sig: &StratumSignature,
    config: &RootedResidueConfig,
    component: ComponentSelector,
) -> Result<Witness, ConstructError> {
    precheck(sig, config)?;
    if sig.genus != 1 || single_zero(sig).is_none() {
        return Err(ConstructError::BadSignature(
            "needs genus one and a single zero".into(),
        ));
    }
    if sig.r() != 0 {
        return Err(ConstructError::UnsupportedCase(
            "odd poles in genus one".into(),
        ));
    }
    let verdict = classify(sig, config, component)?;
    if verdict.status == Status::NotRealizable {
        return Err(ConstructError::ObstructedConfiguration(verdict.citation));
    }
    let target = match component {
        ComponentSelector::WholeStratum => None,
        ComponentSelector::RotationNumber(rho) => Some(rho),
    };
    let accept = |w: &Witness| match target {
        None => true,
        Some(rho) => w.rotation.as_ref().map(|c| c.rho) == Some(rho),
    };
    let p = sig.p();
    let type_radix = |main: usize| -> Vec<usize> {
        sig.even_pole_orders
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != main)
            .map(|(_, b)| (b / 2 - 1) as usize)
            .collect()
    };
    let mut tried = 0usize;
    if config.is_origin() {
        for main in (0..p).filter(|&j| sig.even_pole_orders[j] >= 6) {
            let k_total = (sig.even_pole_orders[main] / 2 - 3) as usize;
            let mut radix = type_radix(main);
            let others = radix.len();
            radix.extend(std::iter::repeat_n(2, others));
            for choice in product(&radix) {
                let taus: Vec<i64> = choice[..others].iter().map(|t| *t as i64 + 1).collect();
                let in_upper: Vec<bool> = choice[others..].iter().map(|c| *c == 0).collect();
                for k1 in 0..=k_total {
                    tried += 1;
                    let params = HandleB {
                        main,
                        k1,
                        taus: &taus,
                        in_upper: &in_upper,
                    };
                    if let Ok(s) = build_family_b(sig, &params) {
                        if let Some(w) = certify(sig, config, s) {
                            if accept(&w) {
                                return Ok(w);
                            }
                        }
                    }
                    if tried > CANDIDATE_LIMIT {
                        break;
                    }
                }
            }
        }
    } else {
        let mains: Vec<usize> = (0..p)
            .filter(|&j| !config.even_pole_roots[j].is_zero())
            .collect();
        let lambdas = frames();
        for &main in &mains {
            let radix = type_radix(main);
            let zero_count = (0..p)
                .filter(|&j| j != main && config.even_pole_roots[j].is_zero())
                .count();
            let b_main = sig.even_pole_orders[main];
            for choice in product(&radix) {
                let taus: Vec<i64> = choice.iter().map(|t| *t as i64 + 1).collect();
                for tau_main in 1..b_main / 2 {
                    for split in 0..=zero_count {
                        for x_first in [false, true] {
                            for sign in [true, false] {
                                for lambda in &lambdas {
                                    tried += 1;
                                    let params = HandleA {
                                        main,
                                        sign,
                                        lambda,
                                        tau_main,
                                        taus: &taus,
                                        x_first,
                                        split,
                                    };
                                    let Ok(s) = build_family_a(sig, config, &params) else {
                                        continue;
                                    };
                                    if let Some(w) = certify(sig, config, s) {
                                        if accept(&w) {
                                            return Ok(w);
                                        }
                                        // Other frames give the same
                                        // surface up to rotation.
                                        break;
                                    }
                                }
                                if tried > CANDIDATE_LIMIT {
                                    break;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Err(ConstructError::UnsupportedCase(match target {
        Some(rho) => format!("no handle construction reached rotation number {rho}"),
        None => "no handle construction applies".into(),
    }))
}
