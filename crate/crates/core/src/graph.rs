//! Simple undirected graphs with stable vertex ids.
//!
//! Vertices are identified by `u32` ids that are never reused: deleting a
//! vertex retires its id, and every created vertex takes a fresh id past the
//! largest one ever allocated. Neighbor lists are kept sorted.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::VecDeque;

/// Vertex identifier.
pub type Vertex = u32;

/// A canonical (sorted, deduplicated) set of vertex ids.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet(Vec<Vertex>);

impl VertexSet {
    /// The empty set.
    pub fn new() -> Self {
        VertexSet(Vec::new())
    }

    /// Builds a set from an already sorted, deduplicated vector.
    pub(crate) fn from_sorted(v: Vec<Vertex>) -> Self {
        debug_assert!(v.windows(2).all(|w| w[0] < w[1]));
        VertexSet(v)
    }

    /// Single-element set.
    pub fn single(v: Vertex) -> Self {
        VertexSet(vec![v])
    }

    /// Number of members.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Whether the set has no members.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Membership test.
    pub fn contains(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// Members in ascending order.
    pub fn as_slice(&self) -> &[Vertex] {
        &self.0
    }

    /// Iterator over members in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.0.iter().copied()
    }

    /// Smallest member.
    pub fn first(&self) -> Option<Vertex> {
        self.0.first().copied()
    }

    /// Set union.
    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut out = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            let (a, b) = (self.0[i], other.0[j]);
            if a < b {
                out.push(a);
                i += 1;
            } else if b < a {
                out.push(b);
                j += 1;
            } else {
                out.push(a);
                i += 1;
                j += 1;
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        VertexSet(out)
    }

    /// Members of `self` not in `other`.
    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.iter().filter(|&v| !other.contains(v)).collect())
    }

    /// Members of both sets.
    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.iter().filter(|&v| other.contains(v)).collect())
    }

    /// Set with `v` added.
    pub fn with(&self, v: Vertex) -> VertexSet {
        self.union(&VertexSet::single(v))
    }

    /// Set with `v` removed.
    pub fn without(&self, v: Vertex) -> VertexSet {
        VertexSet(self.iter().filter(|&w| w != v).collect())
    }

    /// Whether every member of `self` is in `other`.
    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }

    /// Consumes the set, returning the sorted vector.
    pub fn into_vec(self) -> Vec<Vertex> {
        self.0
    }
}

impl FromIterator<Vertex> for VertexSet {
    fn from_iter<I: IntoIterator<Item = Vertex>>(iter: I) -> Self {
        let mut v: Vec<Vertex> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        VertexSet(v)
    }
}

impl<const N: usize> From<[Vertex; N]> for VertexSet {
    fn from(a: [Vertex; N]) -> Self {
        a.into_iter().collect()
    }
}

impl From<&[Vertex]> for VertexSet {
    fn from(a: &[Vertex]) -> Self {
        a.iter().copied().collect()
    }
}

/// Whether a neighborhood includes the set itself.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// `N(S)`: neighbors of `S` outside `S`.
    Open,
    /// `N[S] = N(S) ∪ S`.
    Closed,
}

/// Kinds of local pattern recognised by [`Graph::find_pattern`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PatternKind {
    /// A vertex `u` with a neighbor `x` such that `N(u) \ {x}` is a clique.
    Funnel,
    /// A degree-3 vertex `u` with neighbors `x, y, z`, `x ~ y`, `y ~ z`.
    Kite,
    /// A degree-3 vertex lying in a triangle.
    ThreeTriangle,
}

/// A located pattern: the centre `u`, its distinguished neighbor `x` (the
/// funnel out-neighbor), and the remaining witness vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternMatch {
    /// Centre vertex.
    pub u: Vertex,
    /// Out-neighbor: `N(u) \ {x}` is a clique.
    pub x: Vertex,
    /// Remaining neighbors of `u` (for a kite: `[y, z]` with `y` the middle).
    pub witnesses: Vec<Vertex>,
}

/// Simple undirected graph with stable ids and sorted adjacency.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Option<Vec<Vertex>>>,
    n: usize,
    m: usize,
}

impl Graph {
    /// Graph with no vertices.
    pub fn new() -> Self {
        Self::default()
    }

    /// Graph with isolated vertices `0..n`.
    pub fn with_vertices(n: usize) -> Self {
        Graph { adj: vec![Some(Vec::new()); n], n, m: 0 }
    }

    /// Graph on `0..n` with the given edges (duplicates are merged).
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut g = Self::with_vertices(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of edges.
    pub fn m(&self) -> usize {
        self.m
    }

    /// Whether there are no vertices.
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// The id the next created vertex will receive.
    pub fn next_id(&self) -> Vertex {
        self.adj.len() as Vertex
    }

    /// One past the largest id ever allocated (for id-indexed scratch arrays).
    pub fn id_bound(&self) -> usize {
        self.adj.len()
    }

    /// Whether `v` is a vertex.
    pub fn contains(&self, v: Vertex) -> bool {
        matches!(self.adj.get(v as usize), Some(Some(_)))
    }

    fn check(&self, v: Vertex) -> Result<()> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v))
        }
    }

    /// Vertices in ascending id order.
    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.adj
            .iter()
            .enumerate()
            .filter(|(_, a)| a.is_some())
            .map(|(i, _)| i as Vertex)
    }

    /// All vertices as a set.
    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::from_sorted(self.vertices().collect())
    }

    /// Sorted neighbors of `v` (empty for unknown ids).
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        match self.adj.get(v as usize) {
            Some(Some(a)) => a,
            _ => &[],
        }
    }

    /// Degree of `v`.
    pub fn degree(&self, v: Vertex) -> usize {
        self.neighbors(v).len()
    }

    /// Whether `u` and `v` are adjacent.
    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    /// Number of common neighbors of `u` and `v`.
    pub fn codegree(&self, u: Vertex, v: Vertex) -> usize {
        let (a, b) = (self.neighbors(u), self.neighbors(v));
        let (mut i, mut j, mut c) = (0, 0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    c += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        c
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.vertices()
            .flat_map(move |u| self.neighbors(u).iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Largest degree (0 for the empty graph).
    pub fn max_degree(&self) -> usize {
        self.vertices().map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Smallest degree (0 for the empty graph).
    pub fn min_degree(&self) -> usize {
        self.vertices().map(|v| self.degree(v)).min().unwrap_or(0)
    }

    /// Lowest-id vertex of maximum degree.
    pub fn max_degree_vertex(&self) -> Option<Vertex> {
        let mut best: Option<(usize, Vertex)> = None;
        for v in self.vertices() {
            let d = self.degree(v);
            if best.is_none_or(|(bd, _)| d > bd) {
                best = Some((d, v));
            }
        }
        best.map(|(_, v)| v)
    }

    /// Adds a fresh isolated vertex and returns its id.
    pub fn add_vertex(&mut self) -> Vertex {
        self.adj.push(Some(Vec::new()));
        self.n += 1;
        (self.adj.len() - 1) as Vertex
    }

    /// Inserts edge `uv`; returns whether it was new.
    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<bool> {
        self.check(u)?;
        self.check(v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        let au = self.adj[u as usize].as_mut().expect("checked");
        match au.binary_search(&v) {
            Ok(_) => return Ok(false),
            Err(p) => au.insert(p, v),
        }
        let av = self.adj[v as usize].as_mut().expect("checked");
        let p = av.binary_search(&u).unwrap_err();
        av.insert(p, u);
        self.m += 1;
        Ok(true)
    }

    /// Removes vertex `v` and its incident edges, in place.
    pub fn remove_vertex(&mut self, v: Vertex) -> Result<()> {
        self.check(v)?;
        let nb = self.adj[v as usize].take().expect("checked");
        for w in &nb {
            let aw = self.adj[*w as usize].as_mut().expect("symmetric adjacency");
            let p = aw.binary_search(&v).expect("symmetric adjacency");
            aw.remove(p);
        }
        self.m -= nb.len();
        self.n -= 1;
        Ok(())
    }

    /// Removes every vertex of `s`, in place.
    pub fn remove_vertices(&mut self, s: &VertexSet) -> Result<()> {
        for v in s.iter() {
            self.check(v)?;
        }
        for v in s.iter() {
            self.remove_vertex(v)?;
        }
        Ok(())
    }

    /// `G − s` as a new graph; `self` is unchanged.
    pub fn delete_vertices(&self, s: &VertexSet) -> Result<Graph> {
        let mut g = self.clone();
        g.remove_vertices(s)?;
        Ok(g)
    }

    /// Adds a fresh vertex adjacent to exactly `nbrs`; returns the new graph and id.
    pub fn add_vertex_with_edges(&self, nbrs: &VertexSet) -> Result<(Graph, Vertex)> {
        let mut g = self.clone();
        let y = g.insert_vertex_with_edges(nbrs)?;
        Ok((g, y))
    }

    /// In-place form of [`Graph::add_vertex_with_edges`].
    pub fn insert_vertex_with_edges(&mut self, nbrs: &VertexSet) -> Result<Vertex> {
        for v in nbrs.iter() {
            self.check(v)?;
        }
        let y = self.add_vertex();
        for v in nbrs.iter() {
            self.add_edge(y, v)?;
        }
        Ok(y)
    }

    /// Makes every `x ∈ a` adjacent to every `y ∈ b`; returns the new graph.
    pub fn add_biclique(&self, a: &VertexSet, b: &VertexSet) -> Result<Graph> {
        let mut g = self.clone();
        g.insert_biclique(a, b)?;
        Ok(g)
    }

    /// In-place form of [`Graph::add_biclique`].
    pub fn insert_biclique(&mut self, a: &VertexSet, b: &VertexSet) -> Result<()> {
        if let Some(v) = a.iter().find(|&v| b.contains(v)) {
            return Err(Error::Overlap(v));
        }
        for x in a.iter() {
            for y in b.iter() {
                self.add_edge(x, y)?;
            }
        }
        Ok(())
    }

    /// `N(s)` or `N[s]`.
    pub fn neighborhood(&self, s: &VertexSet, mode: Mode) -> Result<VertexSet> {
        for v in s.iter() {
            self.check(v)?;
        }
        Ok(match mode {
            Mode::Open => self.open_nbhd(s),
            Mode::Closed => self.closed_nbhd(s),
        })
    }

    /// `N(s)` without argument checks.
    pub fn open_nbhd(&self, s: &VertexSet) -> VertexSet {
        s.iter()
            .flat_map(|v| self.neighbors(v).iter().copied())
            .filter(|&w| !s.contains(w))
            .collect()
    }

    /// `N[s]` without argument checks.
    pub fn closed_nbhd(&self, s: &VertexSet) -> VertexSet {
        s.iter().chain(s.iter().flat_map(|v| self.neighbors(v).iter().copied())).collect()
    }

    /// `N[v]` for a single vertex.
    pub fn closed_nbhd_of(&self, v: Vertex) -> VertexSet {
        let mut s: Vec<Vertex> = self.neighbors(v).to_vec();
        let p = s.binary_search(&v).unwrap_or_else(|p| p);
        s.insert(p, v);
        VertexSet::from_sorted(s)
    }

    /// `N(v)` as a set.
    pub fn nbhd_of(&self, v: Vertex) -> VertexSet {
        VertexSet::from_sorted(self.neighbors(v).to_vec())
    }

    /// Whether `s` is independent.
    pub fn is_independent(&self, s: &VertexSet) -> bool {
        s.iter().all(|v| self.neighbors(v).iter().all(|&w| !s.contains(w)))
    }

    /// Whether `s` is a clique.
    pub fn is_clique(&self, s: &[Vertex]) -> bool {
        s.iter().enumerate().all(|(i, &a)| s[i + 1..].iter().all(|&b| self.has_edge(a, b)))
    }

    /// `|N(I)| − |I|` for a non-empty independent set `I`.
    pub fn surplus(&self, i: &VertexSet) -> Result<i64> {
        if i.is_empty() {
            return Err(Error::EmptySet);
        }
        for v in i.iter() {
            self.check(v)?;
        }
        if !self.is_independent(i) {
            return Err(Error::NotIndependent);
        }
        Ok(self.surplus_unchecked(i))
    }

    /// Surplus without precondition checks.
    pub(crate) fn surplus_unchecked(&self, i: &VertexSet) -> i64 {
        self.open_nbhd(i).len() as i64 - i.len() as i64
    }

    /// Whether `c` touches every edge.
    pub fn is_vertex_cover(&self, c: &VertexSet) -> bool {
        self.edges().all(|(u, v)| c.contains(u) || c.contains(v))
    }

    /// Subgraph induced by `s`, keeping ids.
    pub fn induced(&self, s: &VertexSet) -> Graph {
        let mut adj: Vec<Option<Vec<Vertex>>> = vec![None; self.adj.len()];
        let mut m2 = 0;
        for v in s.iter().filter(|&v| self.contains(v)) {
            let nb: Vec<Vertex> = self.neighbors(v).iter().copied().filter(|&w| s.contains(w)).collect();
            m2 += nb.len();
            adj[v as usize] = Some(nb);
        }
        let n = adj.iter().filter(|a| a.is_some()).count();
        Graph { adj, n, m: m2 / 2 }
    }

    /// Connected components, each sorted, listed by smallest member.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut seen = vec![false; self.adj.len()];
        let mut out = Vec::new();
        for s in self.vertices() {
            if seen[s as usize] {
                continue;
            }
            seen[s as usize] = true;
            let mut comp = vec![s];
            let mut q = VecDeque::from([s]);
            while let Some(v) = q.pop_front() {
                for &w in self.neighbors(v) {
                    if !seen[w as usize] {
                        seen[w as usize] = true;
                        comp.push(w);
                        q.push_back(w);
                    }
                }
            }
            out.push(comp.into_iter().collect());
        }
        out
    }

    /// Lowest-id match of the requested pattern (by `u`, then `x`).
    pub fn find_pattern(&self, kind: PatternKind) -> Option<PatternMatch> {
        self.vertices().find_map(|u| self.pattern_at(u, kind))
    }

    /// Lowest-id match of the requested pattern centred at `u`.
    pub fn pattern_at(&self, u: Vertex, kind: PatternKind) -> Option<PatternMatch> {
        let nb = self.neighbors(u);
        match kind {
            PatternKind::Funnel => nb.iter().find_map(|&x| {
                let rest: Vec<Vertex> = nb.iter().copied().filter(|&w| w != x).collect();
                self.is_clique(&rest).then_some(PatternMatch { u, x, witnesses: rest })
            }),
            PatternKind::Kite => {
                if nb.len() != 3 {
                    return None;
                }
                // Orderings (x, y, z) with y the middle vertex, lowest x first.
                let mut found: Option<PatternMatch> = None;
                for &y in nb {
                    let ends: Vec<Vertex> = nb.iter().copied().filter(|&w| w != y).collect();
                    if self.has_edge(ends[0], y) && self.has_edge(ends[1], y) {
                        let cand = PatternMatch { u, x: ends[0], witnesses: vec![y, ends[1]] };
                        if found.as_ref().is_none_or(|f| (cand.x, cand.witnesses[0]) < (f.x, f.witnesses[0])) {
                            found = Some(cand);
                        }
                    }
                }
                found
            }
            PatternKind::ThreeTriangle => {
                if nb.len() != 3 {
                    return None;
                }
                for (i, &a) in nb.iter().enumerate() {
                    for &b in &nb[i + 1..] {
                        if self.has_edge(a, b) {
                            let x = *nb.iter().find(|&&w| w != a && w != b).expect("degree 3");
                            return Some(PatternMatch { u, x, witnesses: vec![a, b] });
                        }
                    }
                }
                None
            }
        }
    }

    /// Relabels vertices to `0..n` in ascending id order; returns the graph and old ids.
    pub fn compact(&self) -> (Graph, Vec<Vertex>) {
        let ids: Vec<Vertex> = self.vertices().collect();
        let mut pos = vec![u32::MAX; self.adj.len()];
        for (i, &v) in ids.iter().enumerate() {
            pos[v as usize] = i as u32;
        }
        let adj = ids
            .iter()
            .map(|&v| Some(self.neighbors(v).iter().map(|&w| pos[w as usize]).collect()))
            .collect();
        (Graph { adj, n: self.n, m: self.m }, ids)
    }
}
