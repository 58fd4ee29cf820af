// SPDX-License-Identifier: MIT OR Apache-2.0
//! Half-infinite cylinders glued along a graph with one odd cycle.
//!
//! The vertices of the graph are the double poles, realised by
//! half-infinite cylinders of circumference `r_v`; the edges are saddle
//! connections, glued by half turns between the bottom boundaries of the
//! cylinders. Every non-cycle vertex hangs from a parent; the length of
//! its edge to the parent is `r_v` minus the lengths of its children's
//! edges. On a cycle `v₀ … v_{c−1}` with `m_j = r_{v_j} − Σ(children)`,
//! the edge `e_j` between `v_j` and `v_{j+1}` satisfies
//! `e_{j−1} + e_j = m_j`, which for odd `c` has the unique solution
//! `e_j = (m_{j+1} − m_{j+2} + … + m_{j+c})/2`. A cycle of length one is a
//! loop: the two occurrences of `e₀` lie on the same cylinder.
//!
//! Every subtree hanging from a cycle vertex lies on side `A` or `B` of the
//! cycle. The two zeros are the two faces of the planar graph; their cone
//! angles are `(c + 2t_A)π` and `(c + 2t_B)π` where `t_X` counts the edges
//! of the subtrees on side `X`.

use serde::{Deserialize, Serialize};

use super::{double_label, precheck, ConstructError, Recipe, Witness};
use crate::core::arith::format_q;
use crate::core::{qi, GaussianRational, RootedResidueConfig, StratumSignature, Q};
use crate::oracle::arithmetic_normal_form;
use crate::surface::{make_polar_part_order2, EdgeRef, FlatSurface, SurfaceBuilder, Twist};

/// A graph with one odd cycle and sides for the subtrees.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ChainPlan {
    /// Cycle vertices in cyclic order; odd length (one vertex is a loop).
    pub cycle: Vec<usize>,
    /// Parent of every vertex off the cycle, `None` on the cycle.
    pub parent: Vec<Option<usize>>,
    /// For vertices whose parent is on the cycle: `true` for side `A`.
    /// Ignored elsewhere.
    pub side_a: Vec<bool>,
}

/// Exact saddle-connection lengths of a plan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainLengths {
    /// `cycle[j]` is the edge between cycle vertices `j` and `j + 1`.
    #[serde(with = "q_vec")]
    pub cycle: Vec<Q>,
    /// Length of the edge from each non-cycle vertex to its parent.
    #[serde(with = "q_opt_vec")]
    pub tree: Vec<Option<Q>>,
}

mod q_vec {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::core::arith::{format_q, parse_q};
    use crate::core::Q;

    pub fn serialize<S: Serializer>(v: &[Q], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(format_q).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Q>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|x| parse_q(x).map_err(serde::de::Error::custom))
            .collect()
    }
}

mod q_opt_vec {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::core::arith::{format_q, parse_q};
    use crate::core::Q;

    pub fn serialize<S: Serializer>(v: &[Option<Q>], s: S) -> Result<S::Ok, S::Error> {
        v.iter()
            .map(|x| x.as_ref().map(format_q))
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Option<Q>>, D::Error> {
        let v = Vec::<Option<String>>::deserialize(d)?;
        v.iter()
            .map(|x| {
                x.as_ref()
                    .map(|y| parse_q(y).map_err(serde::de::Error::custom))
                    .transpose()
            })
            .collect()
    }
}

impl ChainPlan {
    /// Number of vertices.
    pub fn len(&self) -> usize {
        self.parent.len()
    }

    /// True for the empty plan.
    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    /// Checks the shape: odd cycle of distinct vertices, parents leading to
    /// the cycle, no other cycle.
    pub fn validate(&self) -> Result<(), ConstructError> {
        let n = self.len();
        let bad = |m: &str| Err(ConstructError::InvalidPlan(m.to_string()));
        if self.side_a.len() != n {
            return bad("side list length");
        }
        if self.cycle.is_empty() || self.cycle.len().is_multiple_of(2) {
            return bad("the cycle must have odd length");
        }
        let mut on_cycle = vec![false; n];
        for &v in &self.cycle {
            if v >= n || on_cycle[v] {
                return bad("cycle vertices must be distinct");
            }
            on_cycle[v] = true;
        }
        for (v, (&cyc, &parent)) in on_cycle.iter().zip(&self.parent).enumerate() {
            match (cyc, parent) {
                (true, None) => {}
                (true, Some(_)) => return bad("cycle vertices have no parent"),
                (false, None) => return bad("every vertex off the cycle needs a parent"),
                (false, Some(p)) => {
                    if p >= n || p == v {
                        return bad("invalid parent");
                    }
                    // Follow parents; must reach the cycle within n steps.
                    let mut cur = v;
                    let mut steps = 0;
                    while let Some(q) = self.parent[cur] {
                        cur = q;
                        steps += 1;
                        if steps > n {
                            return bad("parents form a second cycle");
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Children of every vertex, ascending.
    pub fn children(&self) -> Vec<Vec<usize>> {
        let mut ch = vec![Vec::new(); self.len()];
        for (v, p) in self.parent.iter().enumerate() {
            if let Some(p) = p {
                ch[*p].push(v);
            }
        }
        ch
    }

    /// Number of vertices in the subtree of `v` (including `v`).
    pub fn subtree_size(&self, v: usize) -> usize {
        let ch = self.children();
        fn rec(v: usize, ch: &[Vec<usize>]) -> usize {
            1 + ch[v].iter().map(|&u| rec(u, ch)).sum::<usize>()
        }
        rec(v, &ch)
    }

    /// Cone angles (in units of `π`) of the two faces, side `A` first.
    pub fn face_degrees(&self) -> (i64, i64) {
        let c = self.cycle.len() as i64;
        let ch = self.children();
        let (mut ta, mut tb) = (0i64, 0i64);
        for &v in &self.cycle {
            for &u in &ch[v] {
                let t = self.subtree_size(u) as i64;
                if self.side_a[u] {
                    ta += t;
                } else {
                    tb += t;
                }
            }
        }
        (c + 2 * ta, c + 2 * tb)
    }
}

/// Solves the length system exactly; fails unless every length is
/// positive.
pub fn solve_lengths(plan: &ChainPlan, roots: &[Q]) -> Result<ChainLengths, ConstructError> {
    plan.validate()?;
    let n = plan.len();
    if roots.len() != n {
        return Err(ConstructError::InvalidPlan("one root per vertex".into()));
    }
    let ch = plan.children();
    let mut tree: Vec<Option<Q>> = vec![None; n];
    // Post-order: children before parents.
    fn settle(v: usize, ch: &[Vec<usize>], roots: &[Q], tree: &mut [Option<Q>]) -> Q {
        let mut rest = roots[v].clone();
        for &u in &ch[v] {
            let l = settle(u, ch, roots, tree);
            tree[u] = Some(l.clone());
            rest -= l;
        }
        rest
    }
    let m: Vec<Q> = plan
        .cycle
        .iter()
        .map(|&v| settle(v, &ch, roots, &mut tree))
        .collect();
    let c = m.len();
    let half = Q::new(1.into(), 2.into());
    let cycle: Vec<Q> = (0..c)
        .map(|j| {
            let mut acc = Q::from_integer(0.into());
            for k in 0..c {
                let term = &m[(j + 1 + k) % c];
                if k % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            acc * &half
        })
        .collect();
    let zero = qi(0);
    let positive = cycle.iter().all(|x| x > &zero) && tree.iter().flatten().all(|x| x > &zero);
    if !positive {
        return Err(ConstructError::InfeasibleLengths);
    }
    Ok(ChainLengths { cycle, tree })
}

/// Assembles the surface of a plan with known lengths; `roots` are the
/// circumferences.
pub fn build_chain_surface(
    plan: &ChainPlan,
    lengths: &ChainLengths,
) -> Result<FlatSurface, ConstructError> {
    let n = plan.len();
    let ch = plan.children();
    let c = plan.cycle.len();
    // Edge ids: tree edges are keyed by the child vertex, cycle edges by
    // n + j. Each vertex lists its boundary edges in rotation order.
    let mut rotation: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (j, &v) in plan.cycle.iter().enumerate() {
        let next_edge = n + j;
        let prev_edge = n + (j + c - 1) % c;
        let (a, b): (Vec<usize>, Vec<usize>) = ch[v].iter().partition(|&&u| plan.side_a[u]);
        let mut rot = vec![next_edge];
        rot.extend(a);
        rot.push(prev_edge);
        rot.extend(b);
        rotation[v] = rot;
    }
    for v in 0..n {
        if plan.parent[v].is_some() {
            let mut rot = vec![v];
            rot.extend(ch[v].iter().copied());
            rotation[v] = rot;
        }
    }
    let length = |e: usize| -> Q {
        if e >= n {
            lengths.cycle[e - n].clone()
        } else {
            lengths.tree[e].clone().expect("tree edge length")
        }
    };
    let mut b = SurfaceBuilder::new();
    let mut occurrences: Vec<Vec<EdgeRef>> = vec![Vec::new(); n + c];
    for (v, edges) in rotation.iter().enumerate() {
        let vectors: Vec<GaussianRational> = edges
            .iter()
            .map(|&e| GaussianRational::real(length(e)))
            .collect();
        let part = make_polar_part_order2(&vectors)?;
        let placed = b.add_polar_part(part, double_label(v))?;
        for (k, &e) in edges.iter().enumerate() {
            occurrences[e].push(placed.upper[k]);
        }
    }
    // Cycle vertices own no tree edge: their slots stay empty.
    for occ in occurrences.iter().filter(|o| !o.is_empty()) {
        b.glue(occ[0], occ[1], Twist::HalfTurn)?;
    }
    Ok(b.finish()?)
}

/// The two odd zero orders (ascending) of a supported signature.
pub(crate) fn zero_pair(sig: &StratumSignature) -> Result<(i64, i64), ConstructError> {
    crate::core::validate_signature(sig)?;
    let z = &sig.zero_orders;
    if sig.genus != 0 || sig.p() != 0 || sig.r() != 0 || z.len() != 2 || sig.odd_zero_count() != 2 {
        return Err(ConstructError::BadSignature(
            "needs genus zero, two odd zeros and only double poles".into(),
        ));
    }
    Ok((z[0].min(z[1]), z[0].max(z[1])))
}

fn integer_roots(roots: &[i64]) -> Result<Vec<Q>, ConstructError> {
    if roots.iter().any(|r| *r <= 0) {
        return Err(ConstructError::InvalidPlan(
            "roots must be positive integers".into(),
        ));
    }
    Ok(roots.iter().map(|r| qi(*r)).collect())
}

/// Builds the surface of an explicit plan for positive integer roots.
pub fn construct_cylinder_chain(
    sig: &StratumSignature,
    roots: &[i64],
    plan: &ChainPlan,
) -> Result<Witness, ConstructError> {
    let (a1, a2) = zero_pair(sig)?;
    let config = RootedResidueConfig::doubles(roots);
    precheck(sig, &config)?;
    let q_roots = integer_roots(roots)?;
    let lengths = solve_lengths(plan, &q_roots)?;
    let (fa, fb) = plan.face_degrees();
    let mut found = vec![fa - 2, fb - 2];
    found.sort_unstable();
    if found != vec![a1, a2] {
        return Err(ConstructError::AngleMismatch {
            expected: vec![a1, a2],
            found,
        });
    }
    let surface = build_chain_surface(plan, &lengths)?;
    Witness::checked(Recipe::CylinderChain, sig, &config, surface, None)
}

/// Enumerates every labelled plan shape (cycle and parents, sides unset)
/// on `n` vertices, calling `f` on each; stops when `f` returns `true`.
///
/// Cycles are listed once: smallest vertex first and, for length at least
/// three, second vertex smaller than the last.
pub fn for_each_shape(n: usize, mut f: impl FnMut(&[usize], &[Option<usize>]) -> bool) {
    for c in (1..=n).step_by(2) {
        let mut done = false;
        for_each_cycle(n, c, &mut |cycle| {
            let mut on_cycle = vec![false; n];
            for &v in cycle {
                on_cycle[v] = true;
            }
            let rest: Vec<usize> = (0..n).filter(|v| !on_cycle[*v]).collect();
            let mut parent: Vec<Option<usize>> = vec![None; n];
            done = assign_parents(&rest, 0, &on_cycle, &mut parent, &mut |p| f(cycle, p));
            done
        });
        if done {
            return;
        }
    }
}

/// Calls `f` on every cycle of length `c`; stops when `f` returns `true`.
pub(crate) fn for_each_cycle(n: usize, c: usize, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    fn rec(
        n: usize,
        c: usize,
        cur: &mut Vec<usize>,
        used: &mut [bool],
        f: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if cur.len() == c {
            if c >= 3 && cur[1] > cur[c - 1] {
                return false;
            }
            return f(cur);
        }
        for v in 0..n {
            if used[v] || (!cur.is_empty() && v < cur[0]) {
                continue;
            }
            used[v] = true;
            cur.push(v);
            let stop = rec(n, c, cur, used, f);
            cur.pop();
            used[v] = false;
            if stop {
                return true;
            }
        }
        false
    }
    let mut used = vec![false; n];
    rec(n, c, &mut Vec::new(), &mut used, f)
}

/// Assigns parents to `rest[k..]` so that every vertex reaches the cycle.
pub(crate) fn assign_parents(
    rest: &[usize],
    k: usize,
    on_cycle: &[bool],
    parent: &mut Vec<Option<usize>>,
    f: &mut dyn FnMut(&[Option<usize>]) -> bool,
) -> bool {
    if k == rest.len() {
        // Reject parent cycles among the non-cycle vertices.
        let n = parent.len();
        for &v in rest {
            let mut cur = v;
            let mut steps = 0;
            while !on_cycle[cur] {
                cur = parent[cur].expect("assigned");
                steps += 1;
                if steps > n {
                    return false;
                }
            }
        }
        return f(parent);
    }
    let v = rest[k];
    for p in 0..parent.len() {
        if p == v {
            continue;
        }
        parent[v] = Some(p);
        if assign_parents(rest, k + 1, on_cycle, parent, f) {
            return true;
        }
    }
    parent[v] = None;
    false
}

/// Side assignments of the subtrees hanging from the cycle such that side
/// `A` holds exactly `t_a` tree edges. Returns one `side_a` vector per
/// assignment.
pub fn side_assignments(cycle: &[usize], parent: &[Option<usize>], t_a: usize) -> Vec<Vec<bool>> {
    let n = parent.len();
    let plan = ChainPlan {
        cycle: cycle.to_vec(),
        parent: parent.to_vec(),
        side_a: vec![false; n],
    };
    let ch = plan.children();
    let hanging: Vec<(usize, usize)> = cycle
        .iter()
        .flat_map(|&v| {
            ch[v]
                .iter()
                .map(|&u| (u, plan.subtree_size(u)))
                .collect::<Vec<_>>()
        })
        .collect();
    let mut out = Vec::new();
    for mask in 0..(1u64 << hanging.len()) {
        let size: usize = hanging
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, (_, s))| *s)
            .sum();
        if size == t_a {
            let mut side = vec![false; n];
            for (i, (u, _)) in hanging.iter().enumerate() {
                side[*u] = mask & (1 << i) != 0;
            }
            out.push(side);
        }
    }
    out
}

/// Number of tree edges on side `A` for a cycle of length `c`, if the face
/// of degree `a + 2` can be side `A`.
pub fn tree_edges_for(a: i64, c: usize) -> Option<usize> {
    let t = a + 2 - c as i64;
    (t >= 0 && t % 2 == 0).then_some((t / 2) as usize)
}

/// First plan (in enumeration order) with positive lengths and matching
/// cone angles, for positive integer roots.
pub fn find_chain_plan(
    sig: &StratumSignature,
    roots: &[i64],
) -> Result<Option<ChainPlan>, ConstructError> {
    let (a1, a2) = zero_pair(sig)?;
    let q_roots = integer_roots(roots)?;
    if q_roots.len() != sig.s() {
        return Err(ConstructError::InvalidPlan(
            "one root per double pole".into(),
        ));
    }
    let n = q_roots.len();
    let mut found = None;
    for_each_shape(n, |cycle, parent| {
        let c = cycle.len();
        let (Some(ta), Some(_)) = (tree_edges_for(a1, c), tree_edges_for(a2, c)) else {
            return false;
        };
        let probe = ChainPlan {
            cycle: cycle.to_vec(),
            parent: parent.to_vec(),
            side_a: vec![false; n],
        };
        if solve_lengths(&probe, &q_roots).is_err() {
            return false;
        }
        if let Some(side) = side_assignments(cycle, parent, ta).into_iter().next() {
            found = Some(ChainPlan {
                side_a: side,
                ..probe
            });
            return true;
        }
        false
    });
    Ok(found)
}

/// Builds a cylinder chain for a configuration whose roots are rational
/// multiples of one complex number: the normalised integer roots are
/// realised and the surface is rotated and scaled back.
pub fn construct_chain_auto(
    sig: &StratumSignature,
    config: &RootedResidueConfig,
) -> Result<Witness, ConstructError> {
    precheck(sig, config)?;
    zero_pair(sig)?;
    let nf = arithmetic_normal_form(&config.double_pole_roots).ok_or_else(|| {
        ConstructError::UnsupportedCase("the roots are not rational multiples of one number".into())
    })?;
    let plan = find_chain_plan(sig, &nf.roots)?.ok_or(ConstructError::InfeasibleLengths)?;
    let base = construct_cylinder_chain(sig, &nf.roots, &plan)?;
    let surface = base.surface.scaled(&nf.lambda);
    Witness::checked(Recipe::CylinderChain, sig, config, surface, None)
}

/// Human-readable description of lengths (for reports).
pub fn describe_lengths(l: &ChainLengths) -> String {
    let cyc: Vec<String> = l.cycle.iter().map(format_q).collect();
    let tree: Vec<String> = l.tree.iter().flatten().map(format_q).collect();
    format!("cycle [{}], tree [{}]", cyc.join(", "), tree.join(", "))
}
