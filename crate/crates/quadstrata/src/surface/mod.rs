// SPDX-License-Identifier: MIT OR Apache-2.0
//! The flat-surface kernel: basic pieces, gluings, polar parts, and the
//! verifier recomputing genus, singularities, residues, connectivity and
//! primitivity from a glued structure.

pub mod angle;
pub mod flat;
pub mod geometry;
pub mod homology;
pub mod loops;
pub mod piece;
pub mod polar;
pub mod svg;
pub mod verify;

pub use angle::AngleSum;
pub use flat::{check_convention, EdgeRef, FlatSurface, Gluing, PoleMark, SurfaceBuilder, Twist};
pub use homology::{find_loop_basis, rotation_number, LoopBasis};
pub use loops::{loop_index, LoopStep};
pub use piece::{Piece, PieceKind, WalkElement};
pub use polar::{
    make_polar_part_even, make_polar_part_odd, make_polar_part_order2,
    make_polar_part_order2_directed, PlacedPart, PolarPart, Side,
};
pub use svg::render_svg;
pub use verify::{verify, LocalInvariants, PoleInvariant};

use thiserror::Error;

use crate::core::GaussianRational;

/// Errors raised while building or verifying a surface.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("piece {piece}: boundary is not embedded")]
    SelfIntersection { piece: usize },
    #[error("piece {piece}: {reason}")]
    BadPiece { piece: usize, reason: String },
    #[error("invalid type {tau} for a polar part of order -{b}")]
    BadType { b: i64, tau: i64 },
    #[error("invalid pole order {0}")]
    BadOrder(i64),
    #[error("no such edge: {0}")]
    EdgeOutOfRange(EdgeRef),
    #[error("{a} and {b} cannot be glued (segment to segment, out-ray to in-ray)")]
    KindMismatch { a: EdgeRef, b: EdgeRef },
    #[error(
        "{twist} gluing of {a} (vector {u}) with {b} (vector {u_prime}) violates the convention"
    )]
    VectorMismatch {
        a: EdgeRef,
        b: EdgeRef,
        twist: Twist,
        u: Box<GaussianRational>,
        u_prime: Box<GaussianRational>,
    },
    #[error("{0} is already glued")]
    AlreadyGlued(EdgeRef),
    #[error("{0} is not glued")]
    FreeEdge(EdgeRef),
    #[error("cone angle is not an integer multiple of pi at {0}")]
    NonIntegerAngle(String),
    #[error("loop is not closed: {0}")]
    NotClosed(String),
    #[error("pole marks do not match the surface: {0}")]
    PoleMarkMismatch(String),
    #[error("malformed surface: {0}")]
    Malformed(String),
}
