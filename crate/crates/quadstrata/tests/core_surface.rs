// SPDX-License-Identifier: MIT OR Apache-2.0
//! Public-API tests for signatures, the standalone applications and the
//! flat-surface kernel.

use quadstrata::core::{
    max_disjoint_cylinders, stratum_nonempty_holomorphic, validate_signature, CoreError,
    GaussianRational,
};
use quadstrata::surface::{
    make_polar_part_even, make_polar_part_odd, make_polar_part_order2, verify, EdgeRef,
    FlatSurface, Piece, Side, SurfaceBuilder, SurfaceError, Twist,
};
use quadstrata::{RootedResidueConfig, StratumSignature};

fn g(s: &str) -> GaussianRational {
    s.parse().unwrap()
}

fn gs(xs: &[&str]) -> Vec<GaussianRational> {
    xs.iter().map(|x| g(x)).collect()
}

fn sig(genus: i64, mu: &[i64]) -> StratumSignature {
    StratumSignature::from_orders(genus, mu)
}

fn unit_square() -> Piece {
    Piece::polygon(gs(&["1", "i", "-1", "-i"]))
}

#[test]
fn signature_validation() {
    let v = validate_signature(&sig(0, &[1, 3, -4, -2, -2])).unwrap();
    assert!(!v.forces_square);
    assert!(
        validate_signature(&sig(0, &[2, 2, -4, -4]))
            .unwrap()
            .forces_square
    );
    assert!(matches!(
        validate_signature(&sig(1, &[1])),
        Err(CoreError::DegreeMismatch {
            total: 1,
            expected: 0
        })
    ));
}

#[test]
fn signature_json_uses_strings() {
    let s = sig(0, &[1, 3, -4, -2, -2]);
    let json = serde_json::to_value(&s).unwrap();
    assert!(json["genus"].is_string());
    let back: StratumSignature = serde_json::from_value(json).unwrap();
    assert_eq!(back, s);
}

#[test]
fn gaussian_parse_and_format_round_trip() {
    for text in ["0", "1", "-i", "3/2", "1+2i", "-1/3-5/7i", "2i"] {
        let z = g(text);
        assert_eq!(g(&z.to_string()), z, "{text}");
    }
    assert_eq!(g("1+i").square(), g("2i"));
    let json = serde_json::to_value(g("1/2-3i")).unwrap();
    assert_eq!(json, serde_json::json!({"re": "1/2", "im": "-3"}));
}

#[test]
fn configuration_shape_is_checked() {
    let s = sig(0, &[1, 1, -2, -2, -2]);
    let short = RootedResidueConfig::doubles(&[1, 2]);
    assert!(matches!(
        short.check_against(&s),
        Err(CoreError::ConfigLength {
            expected: 3,
            found: 2,
            ..
        })
    ));
    let zero = RootedResidueConfig::doubles(&[1, 0, 2]);
    assert_eq!(
        zero.check_against(&s),
        Err(CoreError::ZeroDoublePoleResidue)
    );
}

#[test]
fn holomorphic_emptiness() {
    assert!(!stratum_nonempty_holomorphic(&sig(2, &[4])).unwrap());
    assert!(!stratum_nonempty_holomorphic(&sig(1, &[-1, 1])).unwrap());
    assert!(stratum_nonempty_holomorphic(&sig(3, &[8])).unwrap());
    assert_eq!(
        stratum_nonempty_holomorphic(&sig(0, &[2, -2, -2, -2])),
        Err(CoreError::NotHolomorphic)
    );
}

#[test]
fn cylinder_bound() {
    assert_eq!(max_disjoint_cylinders(&sig(2, &[1, 1, 2])).unwrap(), 3);
    assert_eq!(max_disjoint_cylinders(&sig(1, &[2, -1, -1])).unwrap(), 2);
    assert!(matches!(
        max_disjoint_cylinders(&sig(1, &[2, 2])),
        Err(CoreError::DegreeMismatch { .. })
    ));
    assert_eq!(max_disjoint_cylinders(&sig(3, &[8])).unwrap(), 3);
}

#[test]
fn gluing_convention() {
    let two = |w: &str| {
        let mut b = SurfaceBuilder::new();
        b.add_piece(unit_square());
        let w = g(w);
        b.add_piece(Piece::polygon(vec![
            w.clone(),
            &g("i") * &w,
            -w.clone(),
            &g("-i") * &w,
        ]));
        b
    };
    let (e0, e1) = (EdgeRef::new(0, 0), EdgeRef::new(1, 0));
    assert!(two("-1").glue(e0, e1, Twist::Translation).is_ok());
    let mut b = two("1");
    assert!(matches!(
        b.glue(e0, e1, Twist::Translation),
        Err(SurfaceError::VectorMismatch { .. })
    ));
    assert!(b.glue(e0, e1, Twist::HalfTurn).is_ok());
    assert!(matches!(
        b.glue(e0, e1, Twist::HalfTurn),
        Err(SurfaceError::AlreadyGlued(_))
    ));
}

#[test]
fn square_torus_is_a_global_square() {
    let mut b = SurfaceBuilder::new();
    b.add_piece(unit_square());
    b.glue(EdgeRef::new(0, 0), EdgeRef::new(0, 2), Twist::Translation)
        .unwrap();
    b.glue(EdgeRef::new(0, 1), EdgeRef::new(0, 3), Twist::Translation)
        .unwrap();
    let inv = verify(&b.finish().unwrap()).unwrap();
    assert_eq!(inv.genus, 1);
    assert!(inv.zero_orders.is_empty());
    assert!(inv.pole_orders.is_empty());
    assert!(inv.connected);
    assert!(!inv.primitive);
}

/// A 2 x 1 rectangle whose sides are folded at their midpoints.
fn pillowcase() -> FlatSurface {
    let mut b = SurfaceBuilder::new();
    b.add_piece(Piece::polygon(gs(&[
        "1", "1", "1/2i", "1/2i", "-1", "-1", "-1/2i", "-1/2i",
    ])));
    for k in [0, 2, 4, 6] {
        b.glue(EdgeRef::new(0, k), EdgeRef::new(0, k + 1), Twist::HalfTurn)
            .unwrap();
    }
    b.finish().unwrap()
}

#[test]
fn pillowcase_has_four_simple_poles() {
    let inv = verify(&pillowcase()).unwrap();
    assert_eq!(inv.genus, 0);
    // Finite cone points of angle pi are reported with the zero orders.
    assert_eq!(inv.zero_orders, vec![-1, -1, -1, -1]);
    assert!(inv.pole_orders.is_empty());
    assert!(inv.primitive);
}

#[test]
fn unglued_edges_are_rejected() {
    let mut b = SurfaceBuilder::new();
    b.add_piece(unit_square());
    b.glue(EdgeRef::new(0, 0), EdgeRef::new(0, 2), Twist::Translation)
        .unwrap();
    assert!(matches!(b.finish(), Err(SurfaceError::FreeEdge(_))));
}

#[test]
fn polar_part_residues() {
    let p = make_polar_part_even(6, 1, &gs(&["1", "1"]), &[]).unwrap();
    assert_eq!(p.residue(), Some(g("4")));
    let p = make_polar_part_even(4, 1, &gs(&["1+i"]), &gs(&["1+i"])).unwrap();
    assert_eq!(p.residue(), Some(g("0")));
    let p = make_polar_part_even(4, 1, &gs(&["1"]), &gs(&["3"])).unwrap();
    assert_eq!(p.residue(), Some(g("4")));
    assert_eq!(
        make_polar_part_order2(&gs(&["1", "i"])).unwrap().residue(),
        Some(g("2i"))
    );
    assert!(make_polar_part_order2(&[]).is_err());
}

#[test]
fn odd_polar_parts() {
    // One half-plane carrying the vectors plus (c - 3)/2 empty domains.
    assert_eq!(
        make_polar_part_odd(3, Side::Upper, &gs(&["1"]))
            .unwrap()
            .pieces
            .len(),
        1
    );
    let p = make_polar_part_odd(5, Side::Lower, &gs(&["1", "1"])).unwrap();
    assert_eq!((p.order, p.pieces.len()), (-5, 2));
    assert_eq!(p.residue(), None);
    assert!(matches!(
        make_polar_part_odd(4, Side::Upper, &gs(&["1"])),
        Err(SurfaceError::BadOrder(_))
    ));
}

#[test]
fn tampered_surface_fails_verification() {
    let mut b = SurfaceBuilder::new();
    b.add_piece(unit_square());
    b.glue(EdgeRef::new(0, 0), EdgeRef::new(0, 2), Twist::Translation)
        .unwrap();
    b.glue(EdgeRef::new(0, 1), EdgeRef::new(0, 3), Twist::Translation)
        .unwrap();
    let mut surface = b.finish().unwrap();
    surface.gluings[0].twist = Twist::HalfTurn;
    assert!(matches!(
        verify(&surface),
        Err(SurfaceError::VectorMismatch { .. })
    ));
}

#[test]
fn surface_json_round_trip_and_scaling() {
    let surface = pillowcase();
    let back = FlatSurface::from_json(&surface.to_json()).unwrap();
    assert_eq!(back, surface);
    let scaled = surface.scaled(&g("2+i"));
    assert_eq!(verify(&scaled).unwrap(), verify(&surface).unwrap());
}
