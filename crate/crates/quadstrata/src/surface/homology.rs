// SPDX-License-Identifier: MIT OR Apache-2.0
//! Homology bases of genus-one surfaces and their rotation number.
//!
//! Closed transverse loops are enumerated as simple cycles of the dual
//! graph (pieces as nodes, gluings as edges); such a loop crosses every
//! piece at most once, along a chord joining its entry and exit edges, so it
//! is a simple closed curve. Two such loops that share no gluing meet only
//! inside common pieces, and they cross there exactly when their chords
//! interleave along the piece's boundary. A pair crossing exactly once has
//! algebraic intersection `±1` and is therefore a basis of the first
//! homology of a genus-one surface.

use num_integer::Integer;

use super::flat::{EdgeRef, FlatSurface};
use super::loops::{loop_index, LoopStep};
use super::SurfaceError;

/// A pair of loops forming a homology basis, with their indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoopBasis {
    pub alpha: Vec<LoopStep>,
    pub beta: Vec<LoopStep>,
    pub alpha_index: i64,
    pub beta_index: i64,
}

struct Cycle {
    steps: Vec<LoopStep>,
    gluings: Vec<usize>,
}

struct Search<'a> {
    inc: &'a [Vec<(usize, EdgeRef, EdgeRef)>],
    start: usize,
    first: (usize, EdgeRef),
    used_pieces: Vec<bool>,
    used_gluings: Vec<bool>,
    frames: Vec<(LoopStep, usize)>,
    out: Vec<Cycle>,
    limit: usize,
}

impl Search<'_> {
    fn dfs(&mut self, piece: usize, enter: EdgeRef) {
        for k in 0..self.inc[piece].len() {
            if self.out.len() >= self.limit {
                return;
            }
            let (g, own, other) = self.inc[piece][k];
            if self.used_gluings[g] || own == enter {
                continue;
            }
            let step = LoopStep::new(piece, enter.boundary_index, own.boundary_index);
            if other.piece == self.start {
                // Close the loop; each cycle is recorded in one direction.
                let (g0, own0) = self.first;
                if other != own0 && g0 < g {
                    let mut steps = vec![LoopStep::new(
                        self.start,
                        other.boundary_index,
                        own0.boundary_index,
                    )];
                    let mut gluings = vec![g0];
                    for (st, gl) in &self.frames {
                        steps.push(*st);
                        gluings.push(*gl);
                    }
                    steps.push(step);
                    gluings.push(g);
                    self.out.push(Cycle { steps, gluings });
                }
                continue;
            }
            if self.used_pieces[other.piece] || other.piece < self.start {
                continue;
            }
            self.used_pieces[other.piece] = true;
            self.used_gluings[g] = true;
            self.frames.push((step, g));
            self.dfs(other.piece, other);
            self.frames.pop();
            self.used_gluings[g] = false;
            self.used_pieces[other.piece] = false;
        }
    }
}

/// Enumerates simple dual cycles (at most `limit` of them), shortest first.
fn dual_cycles(surface: &FlatSurface, limit: usize) -> Vec<Cycle> {
    let n = surface.pieces.len();
    // Incidence: for each piece, (gluing id, own edge, other edge).
    let mut inc: Vec<Vec<(usize, EdgeRef, EdgeRef)>> = vec![Vec::new(); n];
    for (k, g) in surface.gluings.iter().enumerate() {
        inc[g.a.piece].push((k, g.a, g.b));
        inc[g.b.piece].push((k, g.b, g.a));
    }
    let mut out = Vec::new();
    for start in 0..n {
        for &(g0, own0, other0) in &inc[start] {
            if out.len() >= limit {
                break;
            }
            if other0.piece == start {
                // Self-gluing: a loop crossing a single piece.
                if own0 < other0 {
                    out.push(Cycle {
                        steps: vec![LoopStep::new(
                            start,
                            other0.boundary_index,
                            own0.boundary_index,
                        )],
                        gluings: vec![g0],
                    });
                }
                continue;
            }
            if other0.piece < start {
                continue;
            }
            let mut search = Search {
                inc: &inc,
                start,
                first: (g0, own0),
                used_pieces: vec![false; n],
                used_gluings: vec![false; surface.gluings.len()],
                frames: Vec::new(),
                out: Vec::new(),
                limit: limit - out.len(),
            };
            search.used_pieces[start] = true;
            search.used_pieces[other0.piece] = true;
            search.used_gluings[g0] = true;
            search.dfs(other0.piece, other0);
            out.extend(search.out);
        }
    }
    out.sort_by_key(|c| c.steps.len());
    out
}

/// True if `x` lies strictly inside the cyclic interval `(a, b)`.
fn strictly_between(a: usize, b: usize, x: usize) -> bool {
    if a < b {
        a < x && x < b
    } else {
        x > a || x < b
    }
}

/// Number of crossings of two loops sharing no gluing.
fn crossings(a: &Cycle, b: &Cycle) -> Option<usize> {
    if a.gluings.iter().any(|g| b.gluings.contains(g)) {
        return None;
    }
    let mut count = 0;
    for sa in &a.steps {
        for sb in &b.steps {
            if sa.piece == sb.piece {
                let inside = [sb.enter, sb.exit]
                    .iter()
                    .filter(|&&x| strictly_between(sa.enter, sa.exit, x))
                    .count();
                if inside == 1 {
                    count += 1;
                }
            }
        }
    }
    Some(count)
}

/// Finds a pair of simple loops crossing exactly once and computes their
/// indices. Returns `None` if no such pair is found within the enumeration
/// budget.
pub fn find_loop_basis(surface: &FlatSurface) -> Result<Option<LoopBasis>, SurfaceError> {
    let cycles = dual_cycles(surface, 4000);
    for i in 0..cycles.len() {
        for j in (i + 1)..cycles.len() {
            if crossings(&cycles[i], &cycles[j]) == Some(1) {
                let alpha = cycles[i].steps.clone();
                let beta = cycles[j].steps.clone();
                let alpha_index = loop_index(surface, &alpha)?;
                let beta_index = loop_index(surface, &beta)?;
                return Ok(Some(LoopBasis {
                    alpha,
                    beta,
                    alpha_index,
                    beta_index,
                }));
            }
        }
    }
    Ok(None)
}

/// Rotation number `gcd(orders, Ind α, Ind β)`.
pub fn rotation_number(orders: &[i64], basis: &LoopBasis) -> i64 {
    orders
        .iter()
        .chain([basis.alpha_index, basis.beta_index].iter())
        .fold(0i64, |acc, x| acc.gcd(x))
}

#[cfg(test)]
mod tests {
    use super::super::flat::{SurfaceBuilder, Twist};
    use super::super::piece::Piece;
    use super::*;
    use crate::core::GaussianRational;

    #[test]
    fn square_torus_basis() {
        let g = |s: &str| s.parse::<GaussianRational>().unwrap();
        let mut b = SurfaceBuilder::new();
        b.add_piece(Piece::polygon(vec![g("1"), g("i"), g("-1"), g("-i")]));
        b.glue(EdgeRef::new(0, 0), EdgeRef::new(0, 2), Twist::Translation)
            .unwrap();
        b.glue(EdgeRef::new(0, 1), EdgeRef::new(0, 3), Twist::Translation)
            .unwrap();
        let s = b.finish().unwrap();
        let basis = find_loop_basis(&s).unwrap().unwrap();
        assert_eq!((basis.alpha_index, basis.beta_index), (0, 0));
    }
}
