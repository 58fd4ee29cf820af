// SPDX-License-Identifier: MIT OR Apache-2.0
//! Polar parts: groups of basic domains glued cyclically along their rays,
//! forming a neighbourhood of one pole. Their free boundary is a list of
//! segments that the caller glues to the rest of the surface.

use serde::{Deserialize, Serialize};

use super::flat::{EdgeRef, Gluing, SurfaceBuilder, Twist};
use super::piece::Piece;
use super::SurfaceError;
use crate::core::GaussianRational;

/// Which basic domain of an odd polar part carries the segments.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Upper,
    Lower,
}

/// A polar part before placement: pieces, internal gluings (piece indices
/// local to the part) and the free segments.
#[derive(Clone, Debug)]
pub struct PolarPart {
    /// Order of the represented pole (negative).
    pub order: i64,
    pub pieces: Vec<Piece>,
    pub gluings: Vec<Gluing>,
    /// Free segments carrying the upper vectors, in order.
    pub upper: Vec<EdgeRef>,
    /// Free segments carrying the lower vectors, in order.
    pub lower: Vec<EdgeRef>,
}

/// A polar part placed inside a builder.
#[derive(Clone, Debug)]
pub struct PlacedPart {
    pub pieces: Vec<usize>,
    pub upper: Vec<EdgeRef>,
    pub lower: Vec<EdgeRef>,
}

fn local(piece: usize, e: usize) -> EdgeRef {
    EdgeRef::new(piece, e)
}

fn out_ray(p: &Piece, i: usize) -> EdgeRef {
    local(i, p.element_count() - 1)
}

fn in_ray(i: usize) -> EdgeRef {
    local(i, 0)
}

fn trans(a: EdgeRef, b: EdgeRef) -> Gluing {
    Gluing {
        a,
        b,
        twist: Twist::Translation,
    }
}

fn half(a: EdgeRef, b: EdgeRef) -> Gluing {
    Gluing {
        a,
        b,
        twist: Twist::HalfTurn,
    }
}

fn check_all(pieces: &[Piece]) -> Result<(), SurfaceError> {
    for (i, p) in pieces.iter().enumerate() {
        p.check(i)?;
    }
    Ok(())
}

impl PolarPart {
    /// Applies a common frame to every piece.
    pub fn with_frame(mut self, f: &GaussianRational) -> Self {
        self.pieces = self.pieces.into_iter().map(|p| p.with_frame(f)).collect();
        self
    }

    /// Residue claimed for the part: the square of the period of a loop
    /// around the pole, or `None` for odd orders.
    pub fn residue(&self) -> Option<GaussianRational> {
        if self.order % 2 != 0 {
            return None;
        }
        let s: GaussianRational = self.pieces.iter().map(|p| p.segment_sum()).sum();
        Some(s.square())
    }
}

/// Even polar part of order `−b` and type `τ`: a positive domain with the
/// upper vectors, a negative domain with the lower vectors, `τ − 1`
/// left-open and `b/2 − τ − 1` right-open empty domains.
pub fn make_polar_part_even(
    b: i64,
    tau: i64,
    upper: &[GaussianRational],
    lower: &[GaussianRational],
) -> Result<PolarPart, SurfaceError> {
    if b < 4 || b % 2 != 0 {
        return Err(SurfaceError::BadOrder(-b));
    }
    if tau < 1 || tau > b / 2 - 1 {
        return Err(SurfaceError::BadType { b, tau });
    }
    let mut pieces = vec![
        Piece::positive(upper.to_vec()),
        Piece::negative(lower.to_vec()),
    ];
    let n_left = (tau - 1) as usize;
    let n_right = (b / 2 - tau - 1) as usize;
    pieces.extend((0..n_left).map(|_| Piece::open_left(vec![], vec![])));
    pieces.extend((0..n_right).map(|_| Piece::open_right(vec![], vec![])));
    check_all(&pieces)?;
    let lefts: Vec<usize> = (2..2 + n_left).collect();
    let rights: Vec<usize> = (2 + n_left..2 + n_left + n_right).collect();
    let mut gluings = Vec::new();
    // Left chain: D⁻ → left-open domains → D⁺ (through the left rays).
    let mut prev = 1usize;
    for &gi in &lefts {
        gluings.push(trans(out_ray(&pieces[prev], prev), in_ray(gi)));
        prev = gi;
    }
    gluings.push(trans(out_ray(&pieces[prev], prev), in_ray(0)));
    // Right chain: D⁺ → right-open domains → D⁻.
    let mut prev = 0usize;
    for &di in &rights {
        gluings.push(trans(out_ray(&pieces[prev], prev), in_ray(di)));
        prev = di;
    }
    gluings.push(trans(out_ray(&pieces[prev], prev), in_ray(1)));
    let upper_edges = (1..=upper.len()).map(|e| local(0, e)).collect();
    let l = lower.len();
    let lower_edges = (1..=l).map(|j| local(1, l - j + 1)).collect();
    Ok(PolarPart {
        order: -b,
        pieces,
        gluings,
        upper: upper_edges,
        lower: lower_edges,
    })
}

/// Double pole: a cylinder end with the given vectors whose rays are glued
/// by translation.
pub fn make_polar_part_order2(vectors: &[GaussianRational]) -> Result<PolarPart, SurfaceError> {
    make_polar_part_order2_directed(vectors, None)
}

/// Double pole with an explicit direction for the cylinder's rays.
pub fn make_polar_part_order2_directed(
    vectors: &[GaussianRational],
    direction: Option<GaussianRational>,
) -> Result<PolarPart, SurfaceError> {
    if vectors.is_empty() {
        return Err(SurfaceError::BadPiece {
            piece: 0,
            reason: "a double pole needs at least one vector".into(),
        });
    }
    let piece = match direction {
        Some(l) => Piece::cylinder_with_direction(vectors.to_vec(), l),
        None => Piece::cylinder(vectors.to_vec()),
    };
    piece.check(0)?;
    let last = piece.element_count() - 1;
    let gluings = vec![trans(local(0, last), in_ray(0))];
    Ok(PolarPart {
        order: -2,
        upper: (1..=vectors.len()).map(|e| local(0, e)).collect(),
        lower: vec![],
        pieces: vec![piece],
        gluings,
    })
}

/// Odd polar part of order `−c`: one basic domain carrying the vectors and
/// `(c − 3)/2` left-open empty domains, chained by translations and closed
/// by a half turn.
pub fn make_polar_part_odd(
    c: i64,
    side: Side,
    vectors: &[GaussianRational],
) -> Result<PolarPart, SurfaceError> {
    if c < 3 || c % 2 == 0 {
        return Err(SurfaceError::BadOrder(-c));
    }
    let ell = ((c - 1) / 2) as usize;
    let first = match side {
        Side::Upper => Piece::positive(vectors.to_vec()),
        Side::Lower => Piece::negative(vectors.to_vec()),
    };
    let mut pieces = vec![first];
    pieces.extend((1..ell).map(|_| Piece::open_left(vec![], vec![])));
    check_all(&pieces)?;
    let mut gluings = Vec::new();
    match side {
        Side::Upper => {
            // D⁺.in ← G₁.out, G_i.in ← G_{i+1}.out, last in ↔ D⁺.out.
            let mut cur_in = in_ray(0);
            for (gi, piece) in pieces.iter().enumerate().skip(1) {
                gluings.push(trans(cur_in, out_ray(piece, gi)));
                cur_in = in_ray(gi);
            }
            gluings.push(half(cur_in, out_ray(&pieces[0], 0)));
        }
        Side::Lower => {
            // D⁻.out → G₁.in, G_i.out → G_{i+1}.in, last out ↔ D⁻.in.
            let mut cur_out = out_ray(&pieces[0], 0);
            for (gi, piece) in pieces.iter().enumerate().skip(1) {
                gluings.push(trans(cur_out, in_ray(gi)));
                cur_out = out_ray(piece, gi);
            }
            gluings.push(half(cur_out, in_ray(0)));
        }
    }
    let l = vectors.len();
    let (upper, lower) = match side {
        Side::Upper => ((1..=l).map(|e| local(0, e)).collect(), vec![]),
        Side::Lower => (vec![], (1..=l).map(|j| local(0, l - j + 1)).collect()),
    };
    Ok(PolarPart {
        order: -c,
        pieces,
        gluings,
        upper,
        lower,
    })
}

impl SurfaceBuilder {
    /// Adds a polar part, its internal gluings and its pole mark.
    pub fn add_polar_part(
        &mut self,
        part: PolarPart,
        label: impl Into<String>,
    ) -> Result<PlacedPart, SurfaceError> {
        let ids: Vec<usize> = part.pieces.into_iter().map(|p| self.add_piece(p)).collect();
        let map = |e: &EdgeRef| EdgeRef::new(ids[e.piece], e.boundary_index);
        for g in &part.gluings {
            self.glue(map(&g.a), map(&g.b), g.twist)?;
        }
        self.mark_pole(label, part.order, ids.clone());
        Ok(PlacedPart {
            upper: part.upper.iter().map(map).collect(),
            lower: part.lower.iter().map(map).collect(),
            pieces: ids,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    #[test]
    fn even_piece_counts() {
        let p = make_polar_part_even(6, 1, &[g("1"), g("1")], &[]).unwrap();
        assert_eq!(p.pieces.len(), 3);
        assert_eq!(p.residue(), Some(g("4")));
        let p = make_polar_part_even(10, 2, &[], &[]).unwrap();
        assert_eq!(p.pieces.len(), 5);
        assert!(matches!(
            make_polar_part_even(6, 3, &[], &[]),
            Err(SurfaceError::BadType { .. })
        ));
        let p = make_polar_part_even(4, 1, &[g("1")], &[g("3")]).unwrap();
        assert_eq!(p.residue(), Some(g("4")));
    }

    #[test]
    fn order_two_residue() {
        let p = make_polar_part_order2(&[g("1"), g("i")]).unwrap();
        assert_eq!(p.residue(), Some(g("2i")));
        assert!(make_polar_part_order2(&[]).is_err());
    }

    #[test]
    fn odd_parts() {
        assert_eq!(
            make_polar_part_odd(3, Side::Upper, &[g("1")])
                .unwrap()
                .pieces
                .len(),
            1
        );
        assert_eq!(
            make_polar_part_odd(5, Side::Lower, &[g("1"), g("1")])
                .unwrap()
                .pieces
                .len(),
            2
        );
        assert!(matches!(
            make_polar_part_odd(4, Side::Upper, &[g("1")]),
            Err(SurfaceError::BadOrder(-4))
        ));
    }
}
