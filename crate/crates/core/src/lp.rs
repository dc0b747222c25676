//! The vertex-cover LP relaxation and everything derived from it.
//!
//! The LP optimum is read off a maximum matching of the bipartite double
//! cover (left copy `L_v`, right copy `R_v`, an edge `L_u R_v` per ordered
//! edge `uv`): `2λ(G) = ν`. Alternating-path reachability from unmatched left
//! vertices gives a König cover and with it an extreme half-integral
//! solution whose zero set is the unique smallest indset of surplus
//! `minsurp⁻(G)`.
//!
//! Positive surplus is handled through the identity
//! `minsurp(G) = min_x minsurp⁻(G − N[x]) + deg(x) − 1`, where `x` lies in
//! a min-set exactly when it attains the minimum.

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::half::Half;
use serde::{Deserialize, Serialize};
use std::collections::VecDeque;

const NIL: u32 = u32::MAX;

/// Bipartite double cover in compact indices.
pub(crate) struct DoubleCover {
    ids: Vec<Vertex>,
    pos: Vec<u32>,
    adj: Vec<Vec<u32>>,
}

/// A matching of the double cover: `ml[l]` is the right mate of left `l`.
#[derive(Clone)]
pub(crate) struct Matching {
    ml: Vec<u32>,
    mr: Vec<u32>,
    size: usize,
}

impl DoubleCover {
    pub(crate) fn new(g: &Graph) -> Self {
        let ids: Vec<Vertex> = g.vertices().collect();
        let mut pos = vec![NIL; g.id_bound()];
        for (i, &v) in ids.iter().enumerate() {
            pos[v as usize] = i as u32;
        }
        let adj = ids.iter().map(|&v| g.neighbors(v).iter().map(|&w| pos[w as usize]).collect()).collect();
        DoubleCover { ids, pos, adj }
    }

    fn len(&self) -> usize {
        self.ids.len()
    }

    fn empty(&self) -> Matching {
        Matching { ml: vec![NIL; self.len()], mr: vec![NIL; self.len()], size: 0 }
    }

    /// Drops matched pairs touching dead vertices.
    fn restrict(&self, m: &Matching, alive: &[bool]) -> Matching {
        let mut out = m.clone();
        for l in 0..self.len() {
            let r = out.ml[l];
            if r != NIL && (!alive[l] || !alive[r as usize]) {
                out.ml[l] = NIL;
                out.mr[r as usize] = NIL;
                out.size -= 1;
            }
        }
        out
    }

    /// Hopcroft–Karp augmentation on the alive subgraph, starting from `m`.
    fn maximize(&self, m: &mut Matching, alive: &[bool]) {
        let n = self.len();
        let mut dist = vec![u32::MAX; n];
        let mut it = vec![0usize; n];
        loop {
            let mut q = VecDeque::new();
            for l in 0..n {
                if alive[l] && m.ml[l] == NIL {
                    dist[l] = 0;
                    q.push_back(l);
                } else {
                    dist[l] = u32::MAX;
                }
            }
            let mut found = false;
            while let Some(l) = q.pop_front() {
                for &r in &self.adj[l] {
                    if !alive[r as usize] {
                        continue;
                    }
                    let l2 = m.mr[r as usize];
                    if l2 == NIL {
                        found = true;
                    } else if dist[l2 as usize] == u32::MAX {
                        dist[l2 as usize] = dist[l] + 1;
                        q.push_back(l2 as usize);
                    }
                }
            }
            if !found {
                return;
            }
            it.iter_mut().for_each(|x| *x = 0);
            for l in 0..n {
                if alive[l] && m.ml[l] == NIL && self.augment(l, m, alive, &mut dist, &mut it) {
                    m.size += 1;
                }
            }
        }
    }

    fn augment(&self, l: usize, m: &mut Matching, alive: &[bool], dist: &mut [u32], it: &mut [usize]) -> bool {
        while it[l] < self.adj[l].len() {
            let r = self.adj[l][it[l]] as usize;
            it[l] += 1;
            if !alive[r] {
                continue;
            }
            let l2 = m.mr[r];
            let ok = if l2 == NIL {
                true
            } else {
                let l2 = l2 as usize;
                dist[l2] == dist[l].wrapping_add(1) && self.augment(l2, m, alive, dist, it)
            };
            if ok {
                m.ml[l] = r as u32;
                m.mr[r] = l as u32;
                return true;
            }
        }
        dist[l] = u32::MAX;
        false
    }

    /// Maximum matching of the alive subgraph.
    fn matching(&self, alive: &[bool], warm: Option<&Matching>) -> Matching {
        let mut m = match warm {
            Some(w) => self.restrict(w, alive),
            None => self.empty(),
        };
        self.maximize(&mut m, alive);
        m
    }

    /// Left/right vertices reachable by alternating paths from free left vertices.
    fn reach_left(&self, m: &Matching, alive: &[bool]) -> (Vec<bool>, Vec<bool>) {
        let n = self.len();
        let (mut zl, mut zr) = (vec![false; n], vec![false; n]);
        let mut q = VecDeque::new();
        for l in 0..n {
            if alive[l] && m.ml[l] == NIL {
                zl[l] = true;
                q.push_back(l);
            }
        }
        while let Some(l) = q.pop_front() {
            for &r in &self.adj[l] {
                let r = r as usize;
                if alive[r] && !zr[r] {
                    zr[r] = true;
                    let l2 = m.mr[r];
                    if l2 != NIL && !zl[l2 as usize] {
                        zl[l2 as usize] = true;
                        q.push_back(l2 as usize);
                    }
                }
            }
        }
        (zl, zr)
    }

    /// Smallest indset of minimum (≤ 0) surplus in the alive subgraph.
    fn zero_set_min(&self, m: &Matching, alive: &[bool]) -> VertexSet {
        let (zl, zr) = self.reach_left(m, alive);
        (0..self.len()).filter(|&i| alive[i] && zl[i] && !zr[i]).map(|i| self.ids[i]).collect()
    }

    fn alive_without(&self, removed: &[Vertex]) -> Vec<bool> {
        let mut alive = vec![true; self.len()];
        for &v in removed {
            let p = self.pos[v as usize];
            if p != NIL {
                alive[p as usize] = false;
            }
        }
        alive
    }
}

/// An optimal half-integral LP solution, values stored doubled (`0, 1, 2`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HalfIntegralSolution {
    /// `(v, 2θ(v))` for every vertex, ascending by id.
    pub theta2: Vec<(Vertex, u8)>,
    /// `Σ θ(v)`.
    pub weight: Half,
}

impl HalfIntegralSolution {
    /// `θ(v)` as a half-integer.
    pub fn value(&self, v: Vertex) -> Option<Half> {
        self.theta2
            .binary_search_by_key(&v, |&(w, _)| w)
            .ok()
            .map(|i| Half(i64::from(self.theta2[i].1)))
    }

    /// `θ⁻¹(0)`.
    pub fn zero_set(&self) -> VertexSet {
        self.theta2.iter().filter(|&&(_, t)| t == 0).map(|&(v, _)| v).collect()
    }

    /// `θ⁻¹(1)`.
    pub fn one_set(&self) -> VertexSet {
        self.theta2.iter().filter(|&&(_, t)| t == 2).map(|&(v, _)| v).collect()
    }

    /// Whether `θ(u) + θ(v) ≥ 1` on every edge of `g`.
    pub fn is_feasible(&self, g: &Graph) -> bool {
        g.edges().all(|(u, v)| match (self.value(u), self.value(v)) {
            (Some(a), Some(b)) => (a + b).doubled() >= 2,
            _ => false,
        })
    }
}

/// An independent set together with its surplus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurplusCert {
    /// The independent set.
    pub indset: VertexSet,
    /// `|N(I)| − |I|`.
    pub surplus: i64,
}

/// Shadow value: an integer, or `+∞` when nothing is left.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Shadow {
    /// `minsurp(G − X)`.
    Finite(i64),
    /// `G − X` is empty.
    Infinite,
}

impl Shadow {
    /// Whether the shadow is at least `c`.
    pub fn at_least(self, c: i64) -> bool {
        self >= Shadow::Finite(c)
    }

    /// `min(0, shadow)`, the correction term of principal-subproblem drops.
    pub fn min0(self) -> i64 {
        match self {
            Shadow::Finite(s) => s.min(0),
            Shadow::Infinite => 0,
        }
    }
}

impl std::fmt::Display for Shadow {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Shadow::Finite(s) => write!(f, "{s}"),
            Shadow::Infinite => write!(f, "inf"),
        }
    }
}

/// `2λ(G)`.
pub fn lambda2(g: &Graph) -> i64 {
    let dc = DoubleCover::new(g);
    dc.matching(&vec![true; dc.len()], None).size as i64
}

/// `λ(G)`, the LP optimum.
pub fn lambda(g: &Graph) -> Half {
    Half(lambda2(g))
}

/// `minsurp⁻(G) = min(0, minsurp(G)) = 2λ − n`.
pub fn minsurp_minus(g: &Graph) -> i64 {
    lambda2(g) - g.n() as i64
}

/// An optimal extreme half-integral solution whose zero set is the smallest
/// indset of surplus `minsurp⁻(G)`.
pub fn lp_basic_solution(g: &Graph) -> HalfIntegralSolution {
    let dc = DoubleCover::new(g);
    let alive = vec![true; dc.len()];
    let m = dc.matching(&alive, None);
    let (zl, zr) = dc.reach_left(&m, &alive);
    let theta2: Vec<(Vertex, u8)> = (0..dc.len()).map(|i| (dc.ids[i], u8::from(!zl[i]) + u8::from(zr[i]))).collect();
    let weight = Half(theta2.iter().map(|&(_, t)| i64::from(t)).sum());
    debug_assert_eq!(weight.doubled(), m.size as i64);
    HalfIntegralSolution { theta2, weight }
}

/// Per-vertex surplus data of a graph.
pub(crate) struct Analysis {
    /// `minsurp(G)`.
    pub minsurp: i64,
    /// `(x, minsurp⁻(G − N[x]) + deg(x) − 1)` for every vertex; `x` lies in a
    /// min-set iff its value equals `minsurp`. Left empty when `minsurp < 0`
    /// and the caller did not ask for it.
    pub values: Vec<(Vertex, i64)>,
    dc: DoubleCover,
    base: Matching,
}

impl Analysis {
    /// Analyzes a non-empty graph; `with_values` forces the per-vertex
    /// values even when `minsurp < 0` (where the LP alone decides minsurp).
    pub(crate) fn new(g: &Graph, with_values: bool) -> Result<Analysis> {
        if g.is_empty() {
            return Err(Error::EmptyGraph);
        }
        let dc = DoubleCover::new(g);
        let alive = vec![true; dc.len()];
        let base = dc.matching(&alive, None);
        let lambda2 = base.size as i64;
        let deficit = lambda2 - g.n() as i64;
        let mut a = Analysis { minsurp: deficit, values: Vec::new(), dc, base };
        if deficit < 0 && !with_values {
            return Ok(a);
        }
        a.values = g
            .vertices()
            .map(|x| {
                let (m, alive) = a.matching_without(g, x);
                let rest = alive.iter().filter(|&&b| b).count() as i64;
                (x, m.size as i64 - rest + g.degree(x) as i64 - 1)
            })
            .collect();
        if deficit >= 0 {
            a.minsurp = a.values.iter().map(|&(_, v)| v).min().expect("non-empty");
        }
        debug_assert!(a.values.iter().all(|&(_, v)| v >= a.minsurp));
        Ok(a)
    }

    /// Maximum matching of `G − N[x]` together with its alive mask.
    fn matching_without(&self, g: &Graph, x: Vertex) -> (Matching, Vec<bool>) {
        let alive = self.dc.alive_without(g.closed_nbhd_of(x).as_slice());
        (self.dc.matching(&alive, Some(&self.base)), alive)
    }

    /// `{x} ∪ Z` where `Z` is the smallest minimum-surplus indset of `G − N[x]`.
    fn min_set_through(&self, g: &Graph, x: Vertex) -> VertexSet {
        let (m, alive) = self.matching_without(g, x);
        self.dc.zero_set_min(&m, &alive).with(x)
    }

    /// Vertices lying in some min-set (requires the per-vertex values).
    pub(crate) fn min_set_vertices(&self) -> VertexSet {
        self.values.iter().filter(|&&(_, v)| v == self.minsurp).map(|&(x, _)| x).collect()
    }

    /// The smallest min-set, ties broken lexicographically.
    pub(crate) fn smallest_min_set(&self, g: &Graph) -> VertexSet {
        if self.minsurp < 0 {
            // The LP zero set is the intersection of all min-sets, hence the unique smallest.
            let alive = vec![true; self.dc.len()];
            return self.dc.zero_set_min(&self.base, &alive);
        }
        self.values
            .iter()
            .filter(|&&(_, v)| v == self.minsurp)
            .map(|&(x, _)| self.min_set_through(g, x))
            .min_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)))
            .expect("some vertex attains the minimum")
    }

    /// A min-set containing `x` (which must attain the minimum value).
    pub(crate) fn min_set_containing(&self, g: &Graph, x: Vertex) -> VertexSet {
        self.min_set_through(g, x)
    }
}

/// `minsurp(G)` together with a smallest min-set (ties broken lexicographically).
pub fn minsurp(g: &Graph) -> Result<SurplusCert> {
    let a = Analysis::new(g, false)?;
    let indset = a.smallest_min_set(g);
    debug_assert_eq!(g.surplus_unchecked(&indset), a.minsurp);
    Ok(SurplusCert { indset, surplus: a.minsurp })
}

/// `minsurp(G)` as a number.
pub fn minsurp_value(g: &Graph) -> Result<i64> {
    Ok(Analysis::new(g, false)?.minsurp)
}

/// A min-set containing the independent set `x`, if one exists.
pub fn find_min_set(g: &Graph, x: &VertexSet) -> Result<Option<SurplusCert>> {
    for v in x.iter() {
        if !g.contains(v) {
            return Err(Error::UnknownVertex(v));
        }
    }
    if !g.is_independent(x) {
        return Err(Error::NotIndependent);
    }
    let target = minsurp_value(g)?;
    if x.is_empty() {
        return minsurp(g).map(Some);
    }
    let dc = DoubleCover::new(g);
    let removed = g.closed_nbhd(x);
    let alive = dc.alive_without(removed.as_slice());
    let m = dc.matching(&alive, None);
    let rest = (g.n() - removed.len()) as i64;
    let inner = m.size as i64 - rest;
    let sx = g.surplus_unchecked(x);
    if inner + sx != target {
        return Ok(None);
    }
    let indset = dc.zero_set_min(&m, &alive).union(x);
    debug_assert_eq!(g.surplus_unchecked(&indset), target);
    Ok(Some(SurplusCert { indset, surplus: target }))
}

/// A min-set with at least two members, if one exists.
///
/// Writing `I = {x} ∪ J` with `J ⊆ G − N[x]` gives
/// `surp(I) = surp(x) + surp_{G − N[x]}(J)`, so a non-singleton min-set
/// through `x` exists iff `x` lies in a min-set and `minsurp(G − N[x]) ≤ 0`.
pub fn nonsingleton_min_set(g: &Graph) -> Result<Option<SurplusCert>> {
    let a = Analysis::new(g, true)?;
    for &(x, v) in &a.values {
        if v != a.minsurp {
            continue;
        }
        let h = g.delete_vertices(&g.closed_nbhd_of(x))?;
        if h.is_empty() {
            continue;
        }
        let ha = Analysis::new(&h, false)?;
        if ha.minsurp <= 0 {
            let indset = ha.smallest_min_set(&h).with(x);
            debug_assert_eq!(g.surplus_unchecked(&indset), a.minsurp);
            return Ok(Some(SurplusCert { indset, surplus: a.minsurp }));
        }
    }
    Ok(None)
}

/// `shad(X) = minsurp(G − X)`, with `+∞` for an empty remainder.
pub fn shadow(g: &Graph, x: &VertexSet) -> Shadow {
    let h = g.delete_vertices(x).expect("shadow of a vertex subset");
    shadow_of_rest(&h)
}

fn shadow_of_rest(h: &Graph) -> Shadow {
    match Analysis::new(h, false) {
        Ok(a) => Shadow::Finite(a.minsurp),
        Err(_) => Shadow::Infinite,
    }
}

/// `shad(N[u])`.
pub fn shadow_closed(g: &Graph, u: Vertex) -> Shadow {
    shadow(g, &g.closed_nbhd_of(u))
}

/// All blockers of `u` (vertices in some min-set of `G − N[u]`), or the
/// empty set when `u` is not blocked.
pub fn blockers(g: &Graph, u: Vertex) -> VertexSet {
    let h = g.delete_vertices(&g.closed_nbhd_of(u)).expect("u is a vertex");
    match Analysis::new(&h, true) {
        Ok(a) if a.minsurp <= 0 => a.min_set_vertices(),
        _ => VertexSet::new(),
    }
}

/// A blocker of `u` with the certifying min-set of `G − N[u]`: the smallest
/// min-set (then lexicographically least) and its lowest member.
pub fn find_blocker(g: &Graph, u: Vertex) -> Option<(Vertex, SurplusCert)> {
    let h = g.delete_vertices(&g.closed_nbhd_of(u)).ok()?;
    let a = Analysis::new(&h, false).ok()?;
    if a.minsurp > 0 {
        return None;
    }
    let set = a.smallest_min_set(&h);
    let x = set.first()?;
    Some((x, SurplusCert { indset: set, surplus: a.minsurp }))
}

/// A vertex-cover instance `⟨G, k⟩` with its LP value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    graph: Graph,
    k: i64,
    lambda2: i64,
}

impl Instance {
    /// Builds an instance, solving the LP.
    pub fn new(graph: Graph, k: i64) -> Self {
        let lambda2 = lambda2(&graph);
        Instance { graph, k, lambda2 }
    }

    /// The graph.
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// The budget `k`.
    pub fn k(&self) -> i64 {
        self.k
    }

    /// Splits into graph and budget.
    pub fn into_parts(self) -> (Graph, i64) {
        (self.graph, self.k)
    }

    /// `λ(G)`.
    pub fn lambda(&self) -> Half {
        Half(self.lambda2)
    }

    /// `μ = k − λ`.
    pub fn mu(&self) -> Half {
        Half::int(self.k) - self.lambda()
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.graph.n()
    }

    /// Whether the instance is trivially infeasible (`k < 0` or `μ < 0`).
    pub fn obviously_infeasible(&self) -> bool {
        self.k < 0 || self.mu() < Half::ZERO
    }
}
