// SPDX-License-Identifier: MIT OR Apache-2.0
//! Recomputes the local invariants of a glued surface from scratch.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::angle::AngleSum;
use super::flat::{check_convention, EdgeRef, FlatSurface, Twist};
use super::piece::WalkElement;
use super::SurfaceError;
use crate::core::signature::int_string;
use crate::core::GaussianRational;

/// Invariants of one pole.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PoleInvariant {
    pub label: String,
    #[serde(with = "int_string")]
    pub order: i64,
    /// Residue for poles of even order; `None` for odd orders.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residue: Option<GaussianRational>,
}

/// Invariants recomputed by [`verify`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalInvariants {
    #[serde(with = "int_string")]
    pub genus: i64,
    /// Orders of the conical singularities that are not regular points,
    /// sorted in decreasing order.
    #[serde(with = "int_string::vec")]
    pub zero_orders: Vec<i64>,
    /// Pole orders sorted in increasing order (most negative first).
    #[serde(with = "int_string::vec")]
    pub pole_orders: Vec<i64>,
    /// Per-pole data, in the order of the surface's pole marks.
    pub poles: Vec<PoleInvariant>,
    /// Residue of every even pole, keyed by pole label.
    pub residues: BTreeMap<String, GaussianRational>,
    /// Finite vertices with angle `2π`.
    #[serde(with = "int_string")]
    pub regular_points: i64,
    pub connected: bool,
    pub primitive: bool,
}

impl LocalInvariants {
    /// Residues aligned with the pole marks (even poles only).
    pub fn even_residues(&self) -> Vec<GaussianRational> {
        self.poles
            .iter()
            .filter_map(|p| p.residue.clone())
            .collect()
    }
}

/// Union–find over `0..n`.
#[derive(Clone, Debug)]
pub(crate) struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    pub(crate) fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// The finite vertex of a ray.
fn ray_vertex(ends: (Option<usize>, Option<usize>)) -> usize {
    match ends {
        (Some(v), _) | (None, Some(v)) => v,
        (None, None) => unreachable!("rays have one finite end"),
    }
}

/// Checks every piece and gluing and recomputes genus, singularities,
/// residues, connectivity and primitivity.
pub fn verify(surface: &FlatSurface) -> Result<LocalInvariants, SurfaceError> {
    let pieces = &surface.pieces;
    if pieces.is_empty() {
        return Err(SurfaceError::Malformed("surface without pieces".into()));
    }
    for (i, p) in pieces.iter().enumerate() {
        p.check(i)?;
    }
    let walks: Vec<Vec<WalkElement>> = pieces.iter().map(|p| p.walk()).collect();
    let partners = surface.partner_map()?;
    for g in &surface.gluings {
        check_convention(surface, g.a, g.b, g.twist)?;
    }
    for (i, w) in walks.iter().enumerate() {
        for e in 0..w.len() {
            if !partners.contains_key(&EdgeRef::new(i, e)) {
                return Err(SurfaceError::FreeEdge(EdgeRef::new(i, e)));
            }
        }
    }

    // Finite vertices: global ids by piece offset.
    let mut offset = Vec::with_capacity(pieces.len());
    let mut total = 0usize;
    for p in pieces {
        offset.push(total);
        total += p.vertex_count();
    }
    let mut vdsu = Dsu::new(total);
    // Infinite vertices: one per unbounded piece, indexed by piece.
    let mut idsu = Dsu::new(pieces.len());
    let vid = |e: EdgeRef, v: usize| offset[e.piece] + v;
    for g in &surface.gluings {
        let (a, b) = (g.a, g.b);
        match &walks[a.piece][a.boundary_index] {
            WalkElement::Segment(_) => {
                let (sa, ea) = pieces[a.piece].element_vertices(a.boundary_index);
                let (sb, eb) = pieces[b.piece].element_vertices(b.boundary_index);
                vdsu.union(vid(a, sa.unwrap()), vid(b, eb.unwrap()));
                vdsu.union(vid(a, ea.unwrap()), vid(b, sb.unwrap()));
            }
            _ => {
                // Out-ray start vertex ~ in-ray end vertex.
                let va = ray_vertex(pieces[a.piece].element_vertices(a.boundary_index));
                let vb = ray_vertex(pieces[b.piece].element_vertices(b.boundary_index));
                vdsu.union(vid(a, va), vid(b, vb));
                idsu.union(a.piece, b.piece);
            }
        }
    }

    // Cone angles at finite vertices.
    let mut angles: HashMap<usize, AngleSum> = HashMap::new();
    for (i, p) in pieces.iter().enumerate() {
        for c in p.corners() {
            let root = vdsu.find(offset[i] + c.vertex);
            let entry = angles.entry(root).or_insert_with(AngleSum::zero);
            *entry = entry.add(&c.angle);
        }
    }
    let mut roots: Vec<usize> = angles.keys().copied().collect();
    roots.sort_unstable();
    let mut zero_orders = Vec::new();
    let mut regular = 0i64;
    for r in &roots {
        let h = angles[r]
            .as_half_turns()
            .ok_or_else(|| SurfaceError::NonIntegerAngle(format!("finite vertex class {r}")))?;
        let order = h - 2;
        if order == 0 {
            regular += 1;
        } else {
            zero_orders.push(order);
        }
    }
    zero_orders.sort_unstable_by(|a, b| b.cmp(a));

    // Points at infinity.
    let unbounded: Vec<usize> = (0..pieces.len())
        .filter(|&i| !pieces[i].is_closed())
        .collect();
    let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &i in &unbounded {
        classes.entry(idsu.find(i)).or_default().push(i);
    }
    let mut computed: Vec<(Vec<usize>, i64, Option<GaussianRational>)> = Vec::new();
    for members in classes.values() {
        let mut theta = AngleSum::zero();
        for &i in members {
            theta = theta.add(&pieces[i].theta().expect("unbounded"));
        }
        let h = theta
            .as_half_turns()
            .ok_or_else(|| SurfaceError::NonIntegerAngle(format!("pole of pieces {members:?}")))?;
        let order = -(h + 2);
        // Walk the ray chain: out-ray of the current piece → next piece.
        let start = members[0];
        let mut cur = start;
        let mut eps = 1i64;
        let mut period = GaussianRational::zero();
        let mut visited = 0usize;
        loop {
            let s = pieces[cur].segment_sum();
            period = if eps > 0 { &period + &s } else { &period - &s };
            visited += 1;
            let out = EdgeRef::new(cur, walks[cur].len() - 1);
            let (partner, twist) = partners[&out];
            if twist == Twist::HalfTurn {
                eps = -eps;
            }
            cur = partner.piece;
            if cur == start || visited > members.len() {
                break;
            }
        }
        if cur != start || visited != members.len() {
            return Err(SurfaceError::Malformed(format!(
                "rays of pieces {members:?} do not form a single cycle"
            )));
        }
        let odd = order % 2 != 0;
        if odd != (eps < 0) {
            return Err(SurfaceError::Malformed(format!(
                "pole of order {order} has holonomy {eps}"
            )));
        }
        let residue = (!odd).then(|| period.square());
        computed.push((members.clone(), order, residue));
    }

    // Match against the declared pole marks.
    if surface.pole_marks.len() != computed.len() {
        return Err(SurfaceError::PoleMarkMismatch(format!(
            "{} poles found, {} declared",
            computed.len(),
            surface.pole_marks.len()
        )));
    }
    let mut poles = Vec::with_capacity(computed.len());
    let mut residues = BTreeMap::new();
    for mark in &surface.pole_marks {
        let mut want = mark.pieces.clone();
        want.sort_unstable();
        let found = computed
            .iter()
            .find(|(m, _, _)| m == &want)
            .ok_or_else(|| {
                SurfaceError::PoleMarkMismatch(format!(
                    "pole {:?}: pieces {:?} are not one point at infinity",
                    mark.label, mark.pieces
                ))
            })?;
        if found.1 != mark.order {
            return Err(SurfaceError::PoleMarkMismatch(format!(
                "pole {:?}: declared order {}, computed {}",
                mark.label, mark.order, found.1
            )));
        }
        if let Some(r) = &found.2 {
            residues.insert(mark.label.clone(), r.clone());
        }
        poles.push(PoleInvariant {
            label: mark.label.clone(),
            order: found.1,
            residue: found.2.clone(),
        });
    }
    let mut pole_orders: Vec<i64> = poles.iter().map(|p| p.order).collect();
    pole_orders.sort_unstable();

    // Connectivity and the translation/half-turn colouring.
    let n = pieces.len();
    let mut pdsu = Dsu::new(n);
    let mut adj: Vec<Vec<(usize, bool)>> = vec![Vec::new(); n];
    for g in &surface.gluings {
        pdsu.union(g.a.piece, g.b.piece);
        let flip = g.twist == Twist::HalfTurn;
        adj[g.a.piece].push((g.b.piece, flip));
        adj[g.b.piece].push((g.a.piece, flip));
    }
    let mut components = 0i64;
    for i in 0..n {
        if pdsu.find(i) == i {
            components += 1;
        }
    }
    let mut colour: Vec<Option<bool>> = vec![None; n];
    let mut primitive = false;
    for s in 0..n {
        if colour[s].is_some() {
            continue;
        }
        colour[s] = Some(false);
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            let cx = colour[x].unwrap();
            for &(y, flip) in &adj[x] {
                let want = cx ^ flip;
                match colour[y] {
                    None => {
                        colour[y] = Some(want);
                        stack.push(y);
                    }
                    Some(c) if c != want => primitive = true,
                    _ => {}
                }
            }
        }
    }

    // Euler characteristic of the compactified complex.
    let v = roots.len() as i64 + computed.len() as i64;
    let e = surface.gluings.len() as i64;
    let f = n as i64;
    let chi = v - e + f;
    let twice_genus = 2 * components - chi;
    if twice_genus < 0 || twice_genus % 2 != 0 {
        return Err(SurfaceError::Malformed(format!(
            "Euler characteristic {chi} is impossible for {components} components"
        )));
    }
    Ok(LocalInvariants {
        genus: twice_genus / 2,
        zero_orders,
        pole_orders,
        poles,
        residues,
        regular_points: regular,
        connected: components == 1,
        primitive,
    })
}
