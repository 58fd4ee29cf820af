// SPDX-License-Identifier: MIT OR Apache-2.0
//! Exact planar incidence tests for segments and rays.
//!
//! A boundary element is a closed set `{P + t·d : t ∈ [0, 1]}` (segment) or
//! `{P + t·d : t ≥ 0}` (ray). All tests are exact over the rationals.

use num_traits::{Signed, Zero};

use crate::core::{qi, GaussianRational, Q};

/// A closed segment or ray in the plane.
#[derive(Clone, Debug)]
pub struct Element {
    /// Starting point.
    pub origin: GaussianRational,
    /// Direction (segment: the full displacement).
    pub dir: GaussianRational,
    /// True for a ray (unbounded parameter range).
    pub unbounded: bool,
}

impl Element {
    /// A segment from `a` with displacement `v`.
    pub fn segment(a: GaussianRational, v: GaussianRational) -> Self {
        Self {
            origin: a,
            dir: v,
            unbounded: false,
        }
    }

    /// A ray from `a` in direction `d`.
    pub fn ray(a: GaussianRational, d: GaussianRational) -> Self {
        Self {
            origin: a,
            dir: d,
            unbounded: true,
        }
    }

    fn param_ok(&self, t: &Q) -> bool {
        !t.is_negative() && (self.unbounded || t <= &qi(1))
    }
}

/// Parameter interval `[lo, hi]` (`hi = None` means `+∞`).
fn overlap(a_lo: Q, a_hi: Option<Q>, b_lo: Q, b_hi: Option<Q>) -> bool {
    let lo = if a_lo > b_lo { a_lo } else { b_lo };
    let hi = match (a_hi, b_hi) {
        (None, None) => return true,
        (Some(x), None) | (None, Some(x)) => x,
        (Some(x), Some(y)) => {
            if x < y {
                x
            } else {
                y
            }
        }
    };
    lo <= hi
}

/// True if the two closed elements share at least one point.
pub fn intersects(a: &Element, b: &Element) -> bool {
    let w = &b.origin - &a.origin;
    let denom = a.dir.cross(&b.dir);
    if !denom.is_zero() {
        // a.origin + s·a.dir = b.origin + t·b.dir
        let s = w.cross(&b.dir) / &denom;
        let t = w.cross(&a.dir) / &denom;
        return a.param_ok(&s) && b.param_ok(&t);
    }
    if !w.cross(&a.dir).is_zero() {
        return false;
    }
    // Collinear: project on a.dir (coordinates in units of |a.dir|²).
    let n = a.dir.norm_sqr();
    let a_hi = if a.unbounded { None } else { Some(n.clone()) };
    let b0 = w.dot(&a.dir);
    let step = b.dir.dot(&a.dir);
    let (b_lo, b_hi) = if b.unbounded {
        if step.is_positive() {
            (b0, None)
        } else {
            // Ray pointing backwards: the set is (−∞, b0]; it meets
            // [0, a_hi] iff b0 ≥ 0.
            return !b0.is_negative();
        }
    } else {
        let b1 = &b0 + &step;
        if b0 <= b1 {
            (b0, Some(b1))
        } else {
            (b1, Some(b0))
        }
    };
    overlap(qi(0), a_hi, b_lo, b_hi)
}

/// Checks that an open chain of elements (consecutive elements share their
/// junction point) is simple: non-adjacent elements are disjoint and no
/// element folds back onto its predecessor. With `closed = true` the first
/// and last elements are also treated as adjacent.
pub fn chain_is_simple(elements: &[Element], closed: bool) -> bool {
    let n = elements.len();
    for i in 0..n {
        for j in (i + 1)..n {
            let adjacent = j == i + 1 || (closed && i == 0 && j == n - 1 && n > 2);
            if adjacent {
                let (p, q) = if j == i + 1 { (i, j) } else { (j, i) };
                // q follows p; folding back means q's direction opposes p's.
                if elements[q].dir.same_direction(&-elements[p].dir.clone()) {
                    return false;
                }
            } else if intersects(&elements[i], &elements[j]) {
                return false;
            }
        }
    }
    true
}

/// Elements of an open boundary walk `in-ray, segments, out-ray` starting at
/// the origin; the in-ray is stored as the ray leaving the first vertex
/// backwards.
pub fn open_walk_elements(
    d_in: &GaussianRational,
    segs: &[GaussianRational],
    d_out: &GaussianRational,
) -> Vec<Element> {
    let mut out = Vec::with_capacity(segs.len() + 2);
    let mut p = GaussianRational::zero();
    // The in-ray ends at the first vertex: as a set it is {P0 − t·d_in}.
    out.push(Element::ray(p.clone(), -d_in.clone()));
    for v in segs {
        out.push(Element::segment(p.clone(), v.clone()));
        p = &p + v;
    }
    out.push(Element::ray(p, d_out.clone()));
    out
}

/// Simplicity of an open walk; adjacency is checked with travel directions.
pub fn open_walk_is_simple(
    d_in: &GaussianRational,
    segs: &[GaussianRational],
    d_out: &GaussianRational,
) -> bool {
    let els = open_walk_elements(d_in, segs, d_out);
    let travel: Vec<GaussianRational> = std::iter::once(d_in.clone())
        .chain(segs.iter().cloned())
        .chain(std::iter::once(d_out.clone()))
        .collect();
    let n = els.len();
    for i in 0..n {
        for j in (i + 1)..n {
            if j == i + 1 {
                if travel[j].same_direction(&-travel[i].clone()) {
                    return false;
                }
            } else if intersects(&els[i], &els[j]) {
                return false;
            }
        }
    }
    true
}

/// Twice the signed area of a closed polygon with the given edge vectors.
pub fn polygon_double_area(edges: &[GaussianRational]) -> Q {
    let mut p = GaussianRational::zero();
    let mut area = qi(0);
    for v in edges {
        let next = &p + v;
        area += p.cross(&next);
        p = next;
    }
    area
}

/// Simplicity of a closed polygon given by its edge vectors.
pub fn polygon_is_simple(edges: &[GaussianRational]) -> bool {
    let mut p = GaussianRational::zero();
    let mut els = Vec::with_capacity(edges.len());
    for v in edges {
        els.push(Element::segment(p.clone(), v.clone()));
        p = &p + v;
    }
    p.is_zero() && edges.len() >= 3 && chain_is_simple(&els, true)
}
