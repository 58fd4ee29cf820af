// SPDX-License-Identifier: MIT OR Apache-2.0
//! SVG rendering of a surface's pieces (presentation only).
//!
//! Pieces are drawn side by side; rays are truncated. Edges of the same
//! gluing share a colour and a numeric label. Label positions receive a
//! small deterministic jitter so that coincident labels stay readable.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::angle::rat_to_f64;
use super::flat::FlatSurface;
use super::piece::WalkElement;
use crate::core::GaussianRational;

fn to_xy(g: &GaussianRational) -> (f64, f64) {
    (rat_to_f64(g.re()), rat_to_f64(g.im()))
}

const PALETTE: [&str; 10] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
    "#bcbd22", "#17becf",
];

/// A point of the drawing plane.
type Point = (f64, f64);

/// Renders the pieces of `surface`; `seed` drives the label jitter.
pub fn render_svg(surface: &FlatSurface, seed: u64) -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut gluing_of = std::collections::HashMap::new();
    for (k, g) in surface.gluings.iter().enumerate() {
        gluing_of.insert(g.a, k);
        gluing_of.insert(g.b, k);
    }
    let scale = 40.0;
    let mut body = String::new();
    let mut x_offset = 0.0f64;
    let mut max_h = 0.0f64;
    for (pi, piece) in surface.pieces.iter().enumerate() {
        let walk = piece.walk();
        // Vertices in the piece's own chart.
        let mut pts = vec![(0.0f64, 0.0f64)];
        for e in &walk {
            if let WalkElement::Segment(v) = e {
                let (dx, dy) = to_xy(v);
                let (x, y) = *pts.last().unwrap();
                pts.push((x + dx, y + dy));
            }
        }
        let span = pts
            .iter()
            .flat_map(|&(x, y)| [x.abs(), y.abs()])
            .fold(1.0f64, f64::max);
        let ray_len = span;
        let mut lines: Vec<(Point, Point, usize)> = Vec::new();
        let mut vi = 0usize;
        for (ei, e) in walk.iter().enumerate() {
            let (dx, dy) = to_xy(e.vector());
            let norm = (dx * dx + dy * dy).sqrt().max(1e-12);
            match e {
                WalkElement::InRay(_) => {
                    let (x, y) = pts[0];
                    let start = (x - dx / norm * ray_len, y - dy / norm * ray_len);
                    lines.push((start, (x, y), ei));
                }
                WalkElement::Segment(_) => {
                    lines.push((pts[vi], pts[vi + 1], ei));
                    vi += 1;
                }
                WalkElement::OutRay(_) => {
                    let (x, y) = *pts.last().unwrap();
                    lines.push((
                        (x, y),
                        (x + dx / norm * ray_len, y + dy / norm * ray_len),
                        ei,
                    ));
                }
            }
        }
        let min_x = lines
            .iter()
            .flat_map(|(a, b, _)| [a.0, b.0])
            .fold(f64::INFINITY, f64::min);
        let max_x = lines
            .iter()
            .flat_map(|(a, b, _)| [a.0, b.0])
            .fold(f64::NEG_INFINITY, f64::max);
        let max_y = lines
            .iter()
            .flat_map(|(a, b, _)| [a.1.abs(), b.1.abs()])
            .fold(0.0f64, f64::max);
        max_h = max_h.max(max_y);
        let shift = x_offset - min_x + 1.0;
        let _ = writeln!(body, "<g id=\"piece-{pi}\">");
        for (a, b, ei) in &lines {
            let key = super::flat::EdgeRef::new(pi, *ei);
            let (colour, label) = match gluing_of.get(&key) {
                Some(&k) => (PALETTE[k % PALETTE.len()], k.to_string()),
                None => ("#000000", "?".to_string()),
            };
            let (x1, y1) = ((a.0 + shift) * scale, -a.1 * scale);
            let (x2, y2) = ((b.0 + shift) * scale, -b.1 * scale);
            let _ = writeln!(
                body,
                "  <line x1=\"{x1:.2}\" y1=\"{y1:.2}\" x2=\"{x2:.2}\" y2=\"{y2:.2}\" stroke=\"{colour}\" stroke-width=\"2\"/>"
            );
            let jx: f64 = rng.gen_range(-3.0..3.0);
            let jy: f64 = rng.gen_range(-3.0..3.0);
            let _ = writeln!(
                body,
                "  <text x=\"{:.2}\" y=\"{:.2}\" font-size=\"10\" fill=\"{colour}\">{label}</text>",
                (x1 + x2) / 2.0 + jx,
                (y1 + y2) / 2.0 + jy
            );
        }
        let _ = writeln!(body, "</g>");
        x_offset += max_x - min_x + 2.0;
    }
    let width = (x_offset + 1.0) * scale;
    let height = (2.0 * max_h + 2.0) * scale;
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 {:.2} {width:.2} {height:.2}\">\n{body}</svg>\n",
        -(max_h + 1.0) * scale
    )
}
