// SPDX-License-Identifier: MIT OR Apache-2.0
//! Flat surfaces assembled from pieces, and the gluing convention.
//!
//! Convention: reading an edge along its own piece's positively oriented
//! boundary gives a vector `u` (side `a`) and `u′` (side `b`). A translation
//! gluing requires `u′ = −u`; a half-turn gluing requires `u′ = u`. Rays use
//! their travel directions under the same rule, and a ray gluing always
//! pairs an out-ray with an in-ray.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::piece::{Piece, WalkElement};
use super::SurfaceError;
use crate::core::signature::{int_string, usize_string};
use crate::core::GaussianRational;

/// A boundary element of a piece.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EdgeRef {
    #[serde(with = "usize_string")]
    pub piece: usize,
    #[serde(with = "usize_string")]
    pub boundary_index: usize,
}

impl EdgeRef {
    /// Shorthand constructor.
    pub fn new(piece: usize, boundary_index: usize) -> Self {
        Self {
            piece,
            boundary_index,
        }
    }
}

impl std::fmt::Display for EdgeRef {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "piece {} edge {}", self.piece, self.boundary_index)
    }
}

/// How two edges are identified.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Twist {
    Translation,
    HalfTurn,
}

impl std::fmt::Display for Twist {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::Translation => "translation",
            Self::HalfTurn => "half_turn",
        })
    }
}

/// A pair of identified edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gluing {
    pub a: EdgeRef,
    pub b: EdgeRef,
    pub twist: Twist,
}

/// Declared pole: the pieces forming one polar part and its order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PoleMark {
    pub label: String,
    #[serde(with = "int_string")]
    pub order: i64,
    #[serde(with = "usize_string::vec")]
    pub pieces: Vec<usize>,
}

/// A translation-or-half-turn surface presented by pieces and gluings.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlatSurface {
    pub pieces: Vec<Piece>,
    pub gluings: Vec<Gluing>,
    #[serde(default)]
    pub pole_marks: Vec<PoleMark>,
}

impl FlatSurface {
    /// The walk element an edge reference points to.
    pub fn element(&self, e: EdgeRef) -> Result<WalkElement, SurfaceError> {
        let piece = self
            .pieces
            .get(e.piece)
            .ok_or(SurfaceError::EdgeOutOfRange(e))?;
        piece
            .walk()
            .get(e.boundary_index)
            .cloned()
            .ok_or(SurfaceError::EdgeOutOfRange(e))
    }

    /// Partner map `edge → (partner, twist)`; fails on double gluing.
    pub fn partner_map(&self) -> Result<HashMap<EdgeRef, (EdgeRef, Twist)>, SurfaceError> {
        let mut m = HashMap::new();
        for g in &self.gluings {
            for (x, y) in [(g.a, g.b), (g.b, g.a)] {
                if m.insert(x, (y, g.twist)).is_some() {
                    return Err(SurfaceError::AlreadyGlued(x));
                }
            }
        }
        Ok(m)
    }

    /// Returns a copy with every piece's frame multiplied by `lambda`
    /// (the action of a complex scalar; residues scale by `lambda²`).
    pub fn scaled(&self, lambda: &GaussianRational) -> Self {
        let mut s = self.clone();
        for p in &mut s.pieces {
            p.frame = &p.frame * lambda;
        }
        s
    }

    /// Serialises the surface as pretty JSON.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("surface serialises")
    }

    /// Parses a surface from JSON.
    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }
}

/// Checks the vector convention for a prospective gluing.
pub fn check_convention(
    surface: &FlatSurface,
    a: EdgeRef,
    b: EdgeRef,
    twist: Twist,
) -> Result<(), SurfaceError> {
    let ea = surface.element(a)?;
    let eb = surface.element(b)?;
    let kinds_ok = match (&ea, &eb) {
        (WalkElement::Segment(_), WalkElement::Segment(_)) => a != b,
        (WalkElement::OutRay(_), WalkElement::InRay(_))
        | (WalkElement::InRay(_), WalkElement::OutRay(_)) => true,
        _ => false,
    };
    if !kinds_ok {
        return Err(SurfaceError::KindMismatch { a, b });
    }
    let (u, u2) = (ea.vector(), eb.vector());
    let ok = match (&ea, twist) {
        (WalkElement::Segment(_), Twist::Translation) => u2 == &-u.clone(),
        (WalkElement::Segment(_), Twist::HalfTurn) => u2 == u,
        // Rays: only directions matter.
        (_, Twist::Translation) => u2.same_direction(&-u.clone()),
        (_, Twist::HalfTurn) => u2.same_direction(u),
    };
    if ok {
        Ok(())
    } else {
        Err(SurfaceError::VectorMismatch {
            a,
            b,
            twist,
            u: Box::new(u.clone()),
            u_prime: Box::new(u2.clone()),
        })
    }
}

/// Incremental, single-owner surface construction.
#[derive(Clone, Debug, Default)]
pub struct SurfaceBuilder {
    surface: FlatSurface,
    glued: HashMap<EdgeRef, usize>,
}

impl SurfaceBuilder {
    /// Empty builder.
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a piece and returns its index.
    pub fn add_piece(&mut self, piece: Piece) -> usize {
        self.surface.pieces.push(piece);
        self.surface.pieces.len() - 1
    }

    /// The piece at an index.
    pub fn piece(&self, i: usize) -> &Piece {
        &self.surface.pieces[i]
    }

    /// True if the edge is already glued.
    pub fn is_glued(&self, e: EdgeRef) -> bool {
        self.glued.contains_key(&e)
    }

    /// Glues two free edges after checking the convention.
    pub fn glue(&mut self, a: EdgeRef, b: EdgeRef, twist: Twist) -> Result<(), SurfaceError> {
        for e in [a, b] {
            self.surface.element(e)?;
            if self.glued.contains_key(&e) {
                return Err(SurfaceError::AlreadyGlued(e));
            }
        }
        check_convention(&self.surface, a, b, twist)?;
        self.surface.gluings.push(Gluing { a, b, twist });
        let id = self.surface.gluings.len() - 1;
        self.glued.insert(a, id);
        self.glued.insert(b, id);
        Ok(())
    }

    /// Glues two edges choosing the twist from their vectors.
    pub fn glue_auto(&mut self, a: EdgeRef, b: EdgeRef) -> Result<Twist, SurfaceError> {
        let ua = self.surface.element(a)?;
        let ub = self.surface.element(b)?;
        let twist = if ub.vector().same_direction(ua.vector()) {
            Twist::HalfTurn
        } else {
            Twist::Translation
        };
        self.glue(a, b, twist)?;
        Ok(twist)
    }

    /// Declares a pole.
    pub fn mark_pole(&mut self, label: impl Into<String>, order: i64, pieces: Vec<usize>) {
        self.surface.pole_marks.push(PoleMark {
            label: label.into(),
            order,
            pieces,
        });
    }

    /// Free edges, in piece/walk order.
    pub fn free_edges(&self) -> Vec<EdgeRef> {
        let mut out = Vec::new();
        for (i, p) in self.surface.pieces.iter().enumerate() {
            for e in 0..p.element_count() {
                let r = EdgeRef::new(i, e);
                if !self.glued.contains_key(&r) {
                    out.push(r);
                }
            }
        }
        out
    }

    /// The surface built so far, without the completeness check.
    pub fn peek(&self) -> &FlatSurface {
        &self.surface
    }

    /// Finishes construction; every edge must be glued.
    pub fn finish(self) -> Result<FlatSurface, SurfaceError> {
        if let Some(e) = self.free_edges().first() {
            return Err(SurfaceError::FreeEdge(*e));
        }
        Ok(self.surface)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    fn two_polygons(v: &str) -> SurfaceBuilder {
        let mut b = SurfaceBuilder::new();
        b.add_piece(Piece::polygon(vec![g("1"), g("i"), g("-1"), g("-i")]));
        let w = g(v);
        b.add_piece(Piece::polygon(vec![
            w.clone(),
            &g("i") * &w,
            -w.clone(),
            &g("-i") * &w,
        ]));
        b
    }

    #[test]
    fn convention_examples() {
        // Segment u = 1 against u′ = −1 by translation.
        let mut b = two_polygons("-1");
        assert!(b
            .glue(EdgeRef::new(0, 0), EdgeRef::new(1, 0), Twist::Translation)
            .is_ok());
        // Segment u = 1 against u′ = 1 by translation is rejected.
        let mut b = two_polygons("1");
        let err = b
            .glue(EdgeRef::new(0, 0), EdgeRef::new(1, 0), Twist::Translation)
            .unwrap_err();
        assert!(matches!(err, SurfaceError::VectorMismatch { .. }));
        // …but accepted as a half turn.
        assert!(b
            .glue(EdgeRef::new(0, 0), EdgeRef::new(1, 0), Twist::HalfTurn)
            .is_ok());
        let again = b.glue(EdgeRef::new(0, 0), EdgeRef::new(1, 2), Twist::Translation);
        assert!(matches!(again, Err(SurfaceError::AlreadyGlued(_))));
    }

    #[test]
    fn rays_only_glue_out_to_in() {
        let mut b = SurfaceBuilder::new();
        b.add_piece(Piece::positive(vec![]));
        b.add_piece(Piece::negative(vec![]));
        // in-ray of D⁺ (direction 1) with in-ray of D⁻ (direction −1).
        let err = b.glue(EdgeRef::new(0, 0), EdgeRef::new(1, 0), Twist::Translation);
        assert!(matches!(err, Err(SurfaceError::KindMismatch { .. })));
        assert_eq!(
            b.glue_auto(EdgeRef::new(0, 1), EdgeRef::new(1, 0)).unwrap(),
            Twist::Translation
        );
        assert_eq!(b.free_edges().len(), 2);
    }
}
