// SPDX-License-Identifier: MIT OR Apache-2.0
//! Turning number of closed transverse loops.
//!
//! A loop is given as the cyclic sequence of pieces it traverses: in each
//! step the path enters a piece across boundary element `enter` and leaves
//! across element `exit`, which must be glued to the `enter` element of the
//! next step. The path crosses every edge transversally and, inside a piece,
//! its turning is determined by the boundary between the exit and entry
//! edges: by Gauss–Bonnet on the enclosed flat disc it equals
//! `π − Σ (π − α_c)` over the corners met when following the boundary
//! forward from `exit` to `enter`, with an additional `−(π + Θ)` when that
//! stretch of boundary passes through the point at infinity of an
//! unbounded piece (`Θ` is the piece's angle at infinity).

use serde::{Deserialize, Serialize};

use super::angle::AngleSum;
use super::flat::{EdgeRef, FlatSurface};
use super::SurfaceError;
use crate::core::signature::usize_string;

/// One traversal of a piece by a loop.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoopStep {
    #[serde(with = "usize_string")]
    pub piece: usize,
    #[serde(with = "usize_string")]
    pub enter: usize,
    #[serde(with = "usize_string")]
    pub exit: usize,
}

impl LoopStep {
    /// Shorthand constructor.
    pub fn new(piece: usize, enter: usize, exit: usize) -> Self {
        Self { piece, enter, exit }
    }
}

/// Turning inside one piece, as an exact angle.
fn step_turning(surface: &FlatSurface, step: &LoopStep) -> Result<AngleSum, SurfaceError> {
    let piece = surface
        .pieces
        .get(step.piece)
        .ok_or(SurfaceError::EdgeOutOfRange(EdgeRef::new(
            step.piece, step.enter,
        )))?;
    let n = piece.element_count();
    for e in [step.enter, step.exit] {
        if e >= n {
            return Err(SurfaceError::EdgeOutOfRange(EdgeRef::new(step.piece, e)));
        }
    }
    let corners = piece.corners();
    let closed = piece.is_closed();
    let mut t = AngleSum::half_turns(1);
    let mut j = step.exit;
    loop {
        if !closed && j == n - 1 {
            let theta = piece.theta().expect("unbounded piece");
            t = t.sub(&theta).add_half_turns(-1);
            j = 0;
        } else {
            let next = (j + 1) % n;
            // Corner between element j and element next.
            let c = if closed { next } else { j };
            t = t.add(&corners[c].angle).add_half_turns(-1);
            j = next;
        }
        if j == step.enter {
            break;
        }
    }
    Ok(t)
}

/// Total turning of a closed loop divided by `π`.
pub fn loop_index(surface: &FlatSurface, steps: &[LoopStep]) -> Result<i64, SurfaceError> {
    if steps.is_empty() {
        return Err(SurfaceError::NotClosed("empty loop".into()));
    }
    let partners = surface.partner_map()?;
    let mut total = AngleSum::zero();
    for (k, step) in steps.iter().enumerate() {
        let next = &steps[(k + 1) % steps.len()];
        let exit = EdgeRef::new(step.piece, step.exit);
        let entry = EdgeRef::new(next.piece, next.enter);
        match partners.get(&exit) {
            Some((p, _)) if *p == entry => {}
            _ => {
                return Err(SurfaceError::NotClosed(format!(
                    "{exit} is not glued to {entry}"
                )))
            }
        }
        total = total.add(&step_turning(surface, step)?);
    }
    total
        .as_half_turns()
        .ok_or_else(|| SurfaceError::NonIntegerAngle("loop turning".into()))
}
