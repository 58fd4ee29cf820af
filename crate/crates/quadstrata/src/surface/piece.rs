// SPDX-License-Identifier: MIT OR Apache-2.0
//! The catalog of basic flat pieces.
//!
//! Every unbounded piece is described by its positively oriented boundary
//! walk `in-ray, segments…, out-ray` (the piece lies to the left). Corners
//! sit between consecutive walk elements, so a walk with `k` segments has
//! `k + 1` finite corners and one point at infinity. A polygon has a closed
//! walk of segments.
//!
//! Each piece carries a `frame`, a non-zero complex multiplier applied to
//! the whole canonical geometry (rays included). The default frame is `1`;
//! other frames express rotated and rescaled copies of the same piece.

use serde::{Deserialize, Serialize};

use super::angle::AngleSum;
use super::geometry::{open_walk_is_simple, polygon_double_area, polygon_is_simple};
use super::SurfaceError;
use crate::core::GaussianRational;

/// Shape of a piece, in canonical position (before the frame is applied).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PieceKind {
    /// Upper half-plane bounded by the broken line `ℝ₋, v_1, …, v_l, ℝ₊`.
    PositiveDomain { vectors: Vec<GaussianRational> },
    /// Lower half-plane bounded by the broken line `ℝ₋, w_1, …, w_l, ℝ₊`.
    NegativeDomain { vectors: Vec<GaussianRational> },
    /// A positive and a negative domain cut along their left rays and glued
    /// along their right rays (boundary: left ray up, `v`, `w` back, left ray
    /// down).
    OpenLeftDomain {
        upper: Vec<GaussianRational>,
        lower: Vec<GaussianRational>,
    },
    /// A positive and a negative domain cut along their right rays and glued
    /// along their left rays.
    OpenRightDomain {
        upper: Vec<GaussianRational>,
        lower: Vec<GaussianRational>,
    },
    /// Half-infinite cylinder end: the broken line `v_1, …, v_l` between two
    /// parallel rays of direction `direction` (default `i·Σv`).
    CylinderEnd {
        vectors: Vec<GaussianRational>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        direction: Option<GaussianRational>,
    },
    /// A compact polygon, edges listed counter-clockwise.
    Polygon { vectors: Vec<GaussianRational> },
}

fn is_one(g: &GaussianRational) -> bool {
    g == &GaussianRational::one()
}

/// A basic piece: a shape and a frame multiplier.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Piece {
    #[serde(flatten)]
    pub kind: PieceKind,
    #[serde(default = "GaussianRational::one", skip_serializing_if = "is_one")]
    pub frame: GaussianRational,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub label: String,
}

/// One element of a boundary walk, with its travel direction (framed).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WalkElement {
    /// Ray arriving from infinity at the first vertex.
    InRay(GaussianRational),
    /// Segment with the given displacement.
    Segment(GaussianRational),
    /// Ray leaving the last vertex towards infinity.
    OutRay(GaussianRational),
}

impl WalkElement {
    /// Travel direction / displacement.
    pub fn vector(&self) -> &GaussianRational {
        match self {
            Self::InRay(d) | Self::Segment(d) | Self::OutRay(d) => d,
        }
    }

    /// True for a segment.
    pub fn is_segment(&self) -> bool {
        matches!(self, Self::Segment(_))
    }
}

/// A corner of a piece: the angle between walk element `before` and walk
/// element `after`, located at finite vertex `vertex` of the piece.
#[derive(Clone, Debug)]
pub struct Corner {
    pub vertex: usize,
    pub before: usize,
    pub after: usize,
    pub angle: AngleSum,
}

fn neg_rev(w: &[GaussianRational]) -> impl Iterator<Item = GaussianRational> + '_ {
    w.iter().rev().map(|x| -x.clone())
}

impl Piece {
    /// A piece with the identity frame.
    pub fn new(kind: PieceKind) -> Self {
        Self {
            kind,
            frame: GaussianRational::one(),
            label: String::new(),
        }
    }

    /// Positive basic domain `D⁺(v)`.
    pub fn positive(v: Vec<GaussianRational>) -> Self {
        Self::new(PieceKind::PositiveDomain { vectors: v })
    }

    /// Negative basic domain `D⁻(w)`.
    pub fn negative(w: Vec<GaussianRational>) -> Self {
        Self::new(PieceKind::NegativeDomain { vectors: w })
    }

    /// Left-open domain.
    pub fn open_left(upper: Vec<GaussianRational>, lower: Vec<GaussianRational>) -> Self {
        Self::new(PieceKind::OpenLeftDomain { upper, lower })
    }

    /// Right-open domain.
    pub fn open_right(upper: Vec<GaussianRational>, lower: Vec<GaussianRational>) -> Self {
        Self::new(PieceKind::OpenRightDomain { upper, lower })
    }

    /// Cylinder end with the default vertical direction.
    pub fn cylinder(v: Vec<GaussianRational>) -> Self {
        Self::new(PieceKind::CylinderEnd {
            vectors: v,
            direction: None,
        })
    }

    /// Cylinder end with an explicit ray direction.
    pub fn cylinder_with_direction(v: Vec<GaussianRational>, l: GaussianRational) -> Self {
        Self::new(PieceKind::CylinderEnd {
            vectors: v,
            direction: Some(l),
        })
    }

    /// Compact polygon.
    pub fn polygon(v: Vec<GaussianRational>) -> Self {
        Self::new(PieceKind::Polygon { vectors: v })
    }

    /// Same piece with the frame multiplied by `f`.
    pub fn with_frame(mut self, f: &GaussianRational) -> Self {
        self.frame = &self.frame * f;
        self
    }

    /// Same piece with a label.
    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// True for the compact polygon.
    pub fn is_closed(&self) -> bool {
        matches!(self.kind, PieceKind::Polygon { .. })
    }

    /// All canonical vectors of the piece.
    fn all_vectors(&self) -> Vec<&GaussianRational> {
        match &self.kind {
            PieceKind::PositiveDomain { vectors }
            | PieceKind::NegativeDomain { vectors }
            | PieceKind::CylinderEnd { vectors, .. }
            | PieceKind::Polygon { vectors } => vectors.iter().collect(),
            PieceKind::OpenLeftDomain { upper, lower }
            | PieceKind::OpenRightDomain { upper, lower } => {
                upper.iter().chain(lower.iter()).collect()
            }
        }
    }

    fn cylinder_direction(
        vectors: &[GaussianRational],
        d: &Option<GaussianRational>,
    ) -> GaussianRational {
        match d {
            Some(l) => l.clone(),
            None => {
                let s: GaussianRational = vectors.iter().cloned().sum();
                &GaussianRational::i() * &s
            }
        }
    }

    /// Canonical (unframed) walk: ray directions and segments.
    fn canonical_walk(&self) -> Vec<WalkElement> {
        let one = GaussianRational::one;
        let mut w = Vec::new();
        match &self.kind {
            PieceKind::PositiveDomain { vectors } => {
                w.push(WalkElement::InRay(one()));
                w.extend(vectors.iter().cloned().map(WalkElement::Segment));
                w.push(WalkElement::OutRay(one()));
            }
            PieceKind::NegativeDomain { vectors } => {
                w.push(WalkElement::InRay(-one()));
                w.extend(neg_rev(vectors).map(WalkElement::Segment));
                w.push(WalkElement::OutRay(-one()));
            }
            PieceKind::OpenLeftDomain { upper, lower } => {
                w.push(WalkElement::InRay(one()));
                w.extend(upper.iter().cloned().map(WalkElement::Segment));
                w.extend(neg_rev(lower).map(WalkElement::Segment));
                w.push(WalkElement::OutRay(-one()));
            }
            PieceKind::OpenRightDomain { upper, lower } => {
                w.push(WalkElement::InRay(-one()));
                w.extend(neg_rev(lower).map(WalkElement::Segment));
                w.extend(upper.iter().cloned().map(WalkElement::Segment));
                w.push(WalkElement::OutRay(one()));
            }
            PieceKind::CylinderEnd { vectors, direction } => {
                let l = Self::cylinder_direction(vectors, direction);
                w.push(WalkElement::InRay(-l.clone()));
                w.extend(vectors.iter().cloned().map(WalkElement::Segment));
                w.push(WalkElement::OutRay(l));
            }
            PieceKind::Polygon { vectors } => {
                w.extend(vectors.iter().cloned().map(WalkElement::Segment));
            }
        }
        w
    }

    /// The positively oriented boundary walk, frame applied.
    pub fn walk(&self) -> Vec<WalkElement> {
        let f = &self.frame;
        self.canonical_walk()
            .into_iter()
            .map(|e| match e {
                WalkElement::InRay(d) => WalkElement::InRay(f * &d),
                WalkElement::Segment(d) => WalkElement::Segment(f * &d),
                WalkElement::OutRay(d) => WalkElement::OutRay(f * &d),
            })
            .collect()
    }

    /// Number of walk elements (valid `boundary_index` values).
    pub fn element_count(&self) -> usize {
        self.canonical_walk().len()
    }

    /// Number of finite vertices.
    pub fn vertex_count(&self) -> usize {
        let n = self.element_count();
        if self.is_closed() {
            n
        } else {
            n - 1
        }
    }

    /// Finite start and end vertices of walk element `e` (`None` for the
    /// ends of rays at infinity).
    pub fn element_vertices(&self, e: usize) -> (Option<usize>, Option<usize>) {
        let n = self.element_count();
        if self.is_closed() {
            (Some(e), Some((e + 1) % n))
        } else if e == 0 {
            (None, Some(0))
        } else if e == n - 1 {
            (Some(n - 2), None)
        } else {
            (Some(e - 1), Some(e))
        }
    }

    /// Hidden direction of a compound corner: `(corner index, direction)`.
    fn compound_corner(&self) -> Option<(usize, GaussianRational)> {
        match &self.kind {
            PieceKind::OpenLeftDomain { upper, .. } => Some((upper.len(), self.frame.clone())),
            PieceKind::OpenRightDomain { lower, .. } => Some((lower.len(), -self.frame.clone())),
            _ => None,
        }
    }

    /// Corners in walk order.
    pub fn corners(&self) -> Vec<Corner> {
        let walk = self.walk();
        let n = walk.len();
        let compound = self.compound_corner();
        let mut out = Vec::with_capacity(n);
        let count = if self.is_closed() { n } else { n - 1 };
        for c in 0..count {
            let (before, after, vertex) = if self.is_closed() {
                ((c + n - 1) % n, c, c)
            } else {
                (c, c + 1, c)
            };
            let back = -walk[before].vector().clone();
            let next = walk[after].vector();
            let angle = match &compound {
                Some((idx, h)) if *idx == c => {
                    AngleSum::sweep(h, &back).add(&AngleSum::sweep(next, h))
                }
                _ => AngleSum::sweep(next, &back),
            };
            out.push(Corner {
                vertex,
                before,
                after,
                angle,
            });
        }
        out
    }

    /// The angle at infinity `Θ = Σ corners − (k − 1)·π` of an unbounded
    /// piece with `k` corners.
    pub fn theta(&self) -> Option<AngleSum> {
        if self.is_closed() {
            return None;
        }
        let corners = self.corners();
        let mut s = AngleSum::zero();
        for c in &corners {
            s = s.add(&c.angle);
        }
        Some(s.add_half_turns(1 - corners.len() as i64))
    }

    /// Sum of all segment vectors of the walk (framed).
    pub fn segment_sum(&self) -> GaussianRational {
        self.walk()
            .iter()
            .filter(|e| e.is_segment())
            .map(|e| e.vector().clone())
            .sum()
    }

    /// Walk indices of the segments.
    pub fn segment_indices(&self) -> Vec<usize> {
        self.walk()
            .iter()
            .enumerate()
            .filter(|(_, e)| e.is_segment())
            .map(|(i, _)| i)
            .collect()
    }

    /// Walk index of the in-ray and out-ray of an unbounded piece.
    pub fn ray_indices(&self) -> Option<(usize, usize)> {
        (!self.is_closed()).then(|| (0, self.element_count() - 1))
    }

    /// Checks the piece invariants: non-zero frame and vectors, and an
    /// embedded boundary.
    pub fn check(&self, index: usize) -> Result<(), SurfaceError> {
        if self.frame.is_zero() {
            return Err(SurfaceError::BadPiece {
                piece: index,
                reason: "zero frame".into(),
            });
        }
        if self.all_vectors().iter().any(|v| v.is_zero()) {
            return Err(SurfaceError::BadPiece {
                piece: index,
                reason: "zero vector".into(),
            });
        }
        let one = GaussianRational::one();
        let m_one = -GaussianRational::one();
        let simple = match &self.kind {
            PieceKind::PositiveDomain { vectors } => open_walk_is_simple(&one, vectors, &one),
            PieceKind::NegativeDomain { vectors } => {
                let segs: Vec<_> = neg_rev(vectors).collect();
                open_walk_is_simple(&m_one, &segs, &m_one)
            }
            PieceKind::OpenLeftDomain { upper, lower }
            | PieceKind::OpenRightDomain { upper, lower } => {
                let segs: Vec<_> = neg_rev(lower).collect();
                open_walk_is_simple(&one, upper, &one) && open_walk_is_simple(&m_one, &segs, &m_one)
            }
            PieceKind::CylinderEnd { vectors, direction } => {
                if vectors.is_empty() {
                    return Err(SurfaceError::BadPiece {
                        piece: index,
                        reason: "cylinder end without vectors".into(),
                    });
                }
                let l = Self::cylinder_direction(vectors, direction);
                use num_traits::Signed;
                !l.is_zero() && vectors.iter().all(|v| l.cross(v).is_negative())
            }
            PieceKind::Polygon { vectors } => {
                use num_traits::Signed;
                polygon_is_simple(vectors) && polygon_double_area(vectors).is_positive()
            }
        };
        if simple {
            Ok(())
        } else {
            Err(SurfaceError::SelfIntersection { piece: index })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    fn theta_half_turns(p: &Piece) -> i64 {
        p.theta().unwrap().as_half_turns().unwrap()
    }

    #[test]
    fn basic_domains_have_theta_pi() {
        assert_eq!(theta_half_turns(&Piece::positive(vec![])), 1);
        assert_eq!(
            theta_half_turns(&Piece::positive(vec![g("1"), g("1+i")])),
            1
        );
        assert_eq!(theta_half_turns(&Piece::negative(vec![g("2-i")])), 1);
    }

    #[test]
    fn open_domains_have_theta_two_pi() {
        assert_eq!(theta_half_turns(&Piece::open_left(vec![], vec![])), 2);
        assert_eq!(
            theta_half_turns(&Piece::open_right(vec![g("1")], vec![g("1")])),
            2
        );
        assert_eq!(
            theta_half_turns(&Piece::open_left(vec![g("1+i")], vec![g("2-i")])),
            2
        );
    }

    #[test]
    fn cylinder_theta_zero() {
        let c = Piece::cylinder(vec![g("1"), g("i")]);
        assert_eq!(theta_half_turns(&c), 0);
        assert!(c.check(0).is_ok());
        assert!(Piece::cylinder(vec![]).check(0).is_err());
    }

    #[test]
    fn frames_rotate_everything() {
        let p = Piece::positive(vec![g("1")]).with_frame(&g("i"));
        assert_eq!(p.walk()[0], WalkElement::InRay(g("i")));
        assert_eq!(theta_half_turns(&p), 1);
    }

    #[test]
    fn simplicity() {
        assert!(Piece::positive(vec![g("-1")]).check(0).is_err());
        assert!(Piece::polygon(vec![g("1"), g("-1+i"), g("-i")])
            .check(0)
            .is_ok());
        assert!(Piece::polygon(vec![g("-i"), g("-1+i"), g("1")])
            .check(0)
            .is_err());
    }

    #[test]
    fn json_roundtrip() {
        let p = Piece::open_left(vec![g("1/2+i")], vec![g("3")]).with_frame(&g("1+i"));
        let s = serde_json::to_string(&p).unwrap();
        let back: Piece = serde_json::from_str(&s).unwrap();
        assert_eq!(p, back);
    }
}
