//! Preprocessing rules P1/P2/P3, small-component solving, the fixpoint
//! simplifier `S(G)`, and lifting covers back through a reduction trace.

use crate::error::{Error, Result};
use crate::graph::{Graph, PatternKind, Vertex, VertexSet};
use crate::lp::{Analysis, Instance, SurplusCert};
use crate::oracle;
use serde::{Deserialize, Serialize};
use std::fmt;

/// Default size up to which connected components are solved exhaustively.
pub const DEFAULT_COMPONENT_LIMIT: usize = 24;

/// Which rule produced a step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RuleKind {
    /// Delete `N[I]` for a critical-set of surplus ≤ 0 (or of surplus 1 whose
    /// neighborhood contains an edge, where some optimal cover contains `N(I)`).
    P1,
    /// Fold `N[I]` into a fresh vertex for a critical-set of surplus 1.
    P2,
    /// Fold a funnel.
    P3,
    /// Remove a small component with an optimal cover.
    ComponentSolve,
}

impl fmt::Display for RuleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RuleKind::P1 => "P1",
            RuleKind::P2 => "P2",
            RuleKind::P3 => "P3",
            RuleKind::ComponentSolve => "COMP",
        })
    }
}

/// One applied reduction, with everything needed to lift a cover back.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ReductionStep {
    /// `N[I]` deleted, `k' = k − |N(I)|`.
    P1 {
        /// The critical-set `I`.
        indset: VertexSet,
        /// `N(I)`.
        nbhd: VertexSet,
    },
    /// `N[I]` replaced by `y` adjacent to `N(N(I))`, `k' = k − |I|`.
    P2 {
        /// The critical-set `I`.
        indset: VertexSet,
        /// `N(I)`.
        nbhd: VertexSet,
        /// The fresh vertex `y`.
        created: Vertex,
        /// `N(N(I)) \ N[I]`, the neighbors of `y`.
        outer: VertexSet,
    },
    /// Funnel `u` with out-neighbor `x` folded, `k' = k − 1 − |A|`.
    P3 {
        /// The funnel vertex.
        u: Vertex,
        /// Its out-neighbor.
        x: Vertex,
        /// `A = N(u) ∩ N(x)`.
        common: VertexSet,
        /// `B_u = N(u) \ N[x]`.
        bu: VertexSet,
        /// `B_x = N(x) \ N[u]`.
        bx: VertexSet,
    },
    /// A component removed together with an optimal cover of it.
    ComponentSolve {
        /// The component's vertices.
        component: VertexSet,
        /// An optimal cover of the component.
        cover: VertexSet,
    },
}

impl ReductionStep {
    /// The rule.
    pub fn kind(&self) -> RuleKind {
        match self {
            ReductionStep::P1 { .. } => RuleKind::P1,
            ReductionStep::P2 { .. } => RuleKind::P2,
            ReductionStep::P3 { .. } => RuleKind::P3,
            ReductionStep::ComponentSolve { .. } => RuleKind::ComponentSolve,
        }
    }

    /// Vertices deleted from the graph.
    pub fn removed(&self) -> VertexSet {
        match self {
            ReductionStep::P1 { indset, nbhd } | ReductionStep::P2 { indset, nbhd, .. } => indset.union(nbhd),
            ReductionStep::P3 { u, x, common, .. } => common.with(*u).with(*x),
            ReductionStep::ComponentSolve { component, .. } => component.clone(),
        }
    }

    /// The vertex created by the step, if any.
    pub fn created(&self) -> Option<Vertex> {
        match self {
            ReductionStep::P2 { created, .. } => Some(*created),
            _ => None,
        }
    }

    /// Decrease of `k`.
    pub fn dk(&self) -> i64 {
        (match self {
            ReductionStep::P1 { nbhd, .. } => nbhd.len(),
            ReductionStep::P2 { indset, .. } => indset.len(),
            ReductionStep::P3 { common, .. } => 1 + common.len(),
            ReductionStep::ComponentSolve { cover, .. } => cover.len(),
        }) as i64
    }

    /// Whether this P3 step folded a kite (`|A| = 1` at a 3-vertex with `B_u` a single vertex).
    pub fn is_kite_fold(&self) -> bool {
        matches!(self, ReductionStep::P3 { common, bu, .. } if common.len() == 1 && bu.len() == 1)
    }

    /// Lifts a cover of the graph after this step to a cover of the graph before it.
    pub fn lift(&self, cover: &VertexSet) -> VertexSet {
        match self {
            ReductionStep::P1 { nbhd, .. } => cover.union(nbhd),
            ReductionStep::P2 { indset, nbhd, created, .. } => {
                if cover.contains(*created) {
                    cover.without(*created).union(nbhd)
                } else {
                    cover.union(indset)
                }
            }
            ReductionStep::P3 { u, x, common, bu, .. } => {
                if bu.is_subset(cover) {
                    cover.union(common).with(*x)
                } else {
                    cover.union(common).with(*u)
                }
            }
            ReductionStep::ComponentSolve { cover: c, .. } => cover.union(c),
        }
    }

    /// Applies the step to `g` in place (the step must have been recorded on `g`).
    pub fn replay(&self, g: &mut Graph) -> Result<()> {
        match self {
            ReductionStep::P1 { .. } | ReductionStep::ComponentSolve { .. } => g.remove_vertices(&self.removed()),
            ReductionStep::P2 { created, outer, .. } => {
                g.remove_vertices(&self.removed())?;
                let y = g.insert_vertex_with_edges(outer)?;
                if y != *created {
                    return Err(Error::Internal(format!("replay created {y}, trace recorded {created}")));
                }
                Ok(())
            }
            ReductionStep::P3 { bu, bx, .. } => {
                g.remove_vertices(&self.removed())?;
                g.insert_biclique(bu, bx)
            }
        }
    }
}

fn join(s: &VertexSet) -> String {
    if s.is_empty() {
        "-".into()
    } else {
        s.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
    }
}

impl fmt::Display for ReductionStep {
    /// `KIND removed=<ids> created=<id|-> dk=<n>`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let created = self.created().map_or_else(|| "-".to_string(), |v| v.to_string());
        write!(f, "{} removed={} created={} dk={}", self.kind(), join(&self.removed()), created, self.dk())
    }
}

/// Ordered log of reductions.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionTrace {
    /// Steps in application order.
    pub steps: Vec<ReductionStep>,
}

impl ReductionTrace {
    /// Empty trace.
    pub fn new() -> Self {
        Self::default()
    }

    /// `Σ Δk`.
    pub fn total_dk(&self) -> i64 {
        self.steps.iter().map(ReductionStep::dk).sum()
    }

    /// Number of steps.
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    /// Whether no step was applied.
    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Number of steps of a given kind.
    pub fn count(&self, kind: RuleKind) -> usize {
        self.steps.iter().filter(|s| s.kind() == kind).count()
    }

    /// Lifts a cover of the reduced graph without validating it.
    pub fn lift(&self, cover: &VertexSet) -> VertexSet {
        self.steps.iter().rev().fold(cover.clone(), |c, s| s.lift(&c))
    }

    /// Replays the trace on a copy of `g`.
    pub fn replay(&self, g: &Graph) -> Result<Graph> {
        let mut h = g.clone();
        for s in &self.steps {
            s.replay(&mut h)?;
        }
        Ok(h)
    }

    /// One line per step.
    pub fn to_text(&self) -> String {
        self.steps.iter().map(|s| format!("{s}\n")).collect()
    }

    /// Appends another trace.
    pub fn extend(&mut self, other: ReductionTrace) {
        self.steps.extend(other.steps);
    }
}

/// Lifts `cover_reduced`, a cover of `reduced`, back through `trace`.
pub fn lift_cover(trace: &ReductionTrace, reduced: &Graph, cover_reduced: &VertexSet) -> Result<VertexSet> {
    if !reduced.is_vertex_cover(cover_reduced) {
        return Err(Error::Precondition("not a vertex cover of the reduced graph".into()));
    }
    Ok(trace.lift(cover_reduced))
}

fn p1_in_place(g: &mut Graph, indset: &VertexSet) -> ReductionStep {
    let nbhd = g.open_nbhd(indset);
    g.remove_vertices(&indset.union(&nbhd)).expect("vertices present");
    ReductionStep::P1 { indset: indset.clone(), nbhd }
}

fn p2_in_place(g: &mut Graph, indset: &VertexSet) -> ReductionStep {
    let nbhd = g.open_nbhd(indset);
    let closed = indset.union(&nbhd);
    let outer = g.open_nbhd(&nbhd).difference(&closed);
    g.remove_vertices(&closed).expect("vertices present");
    let created = g.insert_vertex_with_edges(&outer).expect("outer vertices present");
    ReductionStep::P2 { indset: indset.clone(), nbhd, created, outer }
}

fn p3_in_place(g: &mut Graph, u: Vertex, x: Vertex) -> ReductionStep {
    let nu = g.nbhd_of(u);
    let nx = g.nbhd_of(x);
    let common = nu.intersection(&nx);
    let bu = nu.difference(&nx).without(x);
    let bx = nx.difference(&nu).without(u);
    g.remove_vertices(&common.with(u).with(x)).expect("vertices present");
    g.insert_biclique(&bu, &bx).expect("disjoint sides");
    ReductionStep::P3 { u, x, common, bu, bx }
}

fn check_indset(g: &Graph, cert: &SurplusCert) -> Result<i64> {
    let s = g.surplus(&cert.indset)?;
    if s != cert.surplus {
        return Err(Error::Precondition(format!("certificate claims surplus {}, actual {s}", cert.surplus)));
    }
    Ok(s)
}

fn check_critical(g: &Graph, cert: &SurplusCert) -> Result<()> {
    if cert.indset.len() > 1 && crate::lp::minsurp_value(g)? != cert.surplus {
        return Err(Error::Precondition("indset is neither a singleton nor a min-set".into()));
    }
    Ok(())
}

/// Rule P1 on a min-set or singleton of surplus ≤ 0.
pub fn apply_p1(inst: &Instance, cert: &SurplusCert) -> Result<(Instance, ReductionStep)> {
    let g = inst.graph();
    if check_indset(g, cert)? > 0 {
        return Err(Error::Precondition("P1 needs surplus at most 0".into()));
    }
    check_critical(g, cert)?;
    let mut h = g.clone();
    let step = p1_in_place(&mut h, &cert.indset);
    Ok((Instance::new(h, inst.k() - step.dk()), step))
}

/// Rule P2 on a min-set or singleton of surplus exactly 1 whose
/// neighborhood is independent.
///
/// Folding is only sound when `N(I)` has no internal edge: otherwise a cover
/// of the folded graph avoiding `y` lifts to `C' ∪ I`, which misses that
/// edge. Such sets are removed with [`apply_p1_dependent`] instead.
pub fn apply_p2(inst: &Instance, cert: &SurplusCert) -> Result<(Instance, ReductionStep)> {
    let g = inst.graph();
    if check_indset(g, cert)? != 1 {
        return Err(Error::Precondition("P2 needs surplus exactly 1".into()));
    }
    check_critical(g, cert)?;
    if !g.is_independent(&g.open_nbhd(&cert.indset)) {
        return Err(Error::Precondition("P2 needs an independent neighborhood N(I)".into()));
    }
    let mut h = g.clone();
    let step = p2_in_place(&mut h, &cert.indset);
    Ok((Instance::new(h, inst.k() - step.dk()), step))
}

/// Deletes `N[I]` with `k' = k − |N(I)|` for a surplus-1 critical-set whose
/// neighborhood contains an edge.
///
/// Some good cover contains all of `N(I)`: a good cover avoiding `I` does,
/// and one containing `I` meets `N(I)` (it covers the internal edge), so
/// trading `I` for `N(I)` costs nothing.
pub fn apply_p1_dependent(inst: &Instance, cert: &SurplusCert) -> Result<(Instance, ReductionStep)> {
    let g = inst.graph();
    if check_indset(g, cert)? != 1 {
        return Err(Error::Precondition("needs surplus exactly 1".into()));
    }
    check_critical(g, cert)?;
    if g.is_independent(&g.open_nbhd(&cert.indset)) {
        return Err(Error::Precondition("N(I) is independent; use P2".into()));
    }
    let mut h = g.clone();
    let step = p1_in_place(&mut h, &cert.indset);
    Ok((Instance::new(h, inst.k() - step.dk()), step))
}

/// Rule P3 on funnel `u` with out-neighbor `x`.
pub fn apply_p3(inst: &Instance, u: Vertex, x: Vertex) -> Result<(Instance, ReductionStep)> {
    let g = inst.graph();
    for v in [u, x] {
        if !g.contains(v) {
            return Err(Error::UnknownVertex(v));
        }
    }
    if !g.has_edge(u, x) {
        return Err(Error::Precondition(format!("{x} is not a neighbor of {u}")));
    }
    let rest: Vec<Vertex> = g.neighbors(u).iter().copied().filter(|&w| w != x).collect();
    if !g.is_clique(&rest) {
        return Err(Error::Precondition(format!("({u}, {x}) is not a funnel")));
    }
    let mut h = g.clone();
    let step = p3_in_place(&mut h, u, x);
    Ok((Instance::new(h, inst.k() - step.dk()), step))
}

/// Snapshot handed to a [`Simplifier`] observer after every step.
pub struct StepView<'a> {
    /// Graph before the step.
    pub before: &'a Graph,
    /// Budget before the step.
    pub k_before: i64,
    /// `minsurp` of the graph before the step (for component steps: not computed, `None`).
    pub minsurp_before: Option<i64>,
    /// The applied step.
    pub step: &'a ReductionStep,
    /// Graph after the step.
    pub after: &'a Graph,
}

/// The deterministic fixpoint policy computing `S(G)`.
///
/// Each round: solve components of at most `component_limit` vertices; then
/// P1 while `minsurp ≤ 0` (degree-1 singletons first); P2 while
/// `minsurp = 1` (degree-2 singletons first, else a smallest min-set; a set
/// whose neighborhood has an edge is deleted P1-style instead); P3 on
/// kites, then on the lowest funnel; stop when nothing applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Simplifier {
    /// Largest component solved exhaustively (0 disables, capped at the oracle guard).
    pub component_limit: usize,
}

impl Default for Simplifier {
    fn default() -> Self {
        Simplifier { component_limit: DEFAULT_COMPONENT_LIMIT }
    }
}

impl Simplifier {
    /// Simplifier with the given component limit.
    pub fn new(component_limit: usize) -> Self {
        Simplifier { component_limit: component_limit.min(oracle::MAX_ORACLE_N) }
    }

    /// Runs to the fixpoint.
    pub fn simplify(&self, inst: &Instance) -> (Instance, ReductionTrace) {
        let (g, k) = inst.clone().into_parts();
        let (g, k, trace) = self.simplify_graph(g, k, None);
        (Instance::new(g, k), trace)
    }

    /// Runs to the fixpoint, calling `observer` after every step.
    pub fn simplify_observed(&self, inst: &Instance, observer: &mut dyn FnMut(&StepView<'_>)) -> (Instance, ReductionTrace) {
        let (g, k) = inst.clone().into_parts();
        let (g, k, trace) = self.simplify_graph(g, k, Some(observer));
        (Instance::new(g, k), trace)
    }

    /// In-place core shared by the solver.
    pub(crate) fn simplify_graph(
        &self,
        mut g: Graph,
        mut k: i64,
        mut observer: Option<&mut dyn FnMut(&StepView<'_>)>,
    ) -> (Graph, i64, ReductionTrace) {
        let mut trace = ReductionTrace::new();
        loop {
            let before = observer.as_ref().map(|_| g.clone());
            let Some((step, ms)) = self.next_step(&mut g) else { break };
            if let (Some(obs), Some(b)) = (observer.as_mut(), before.as_ref()) {
                obs(&StepView { before: b, k_before: k, minsurp_before: ms, step: &step, after: &g });
            }
            k -= step.dk();
            trace.steps.push(step);
        }
        (g, k, trace)
    }

    /// Applies one step in place, returning it and the pre-step `minsurp`.
    fn next_step(&self, g: &mut Graph) -> Option<(ReductionStep, Option<i64>)> {
        if g.is_empty() {
            return None;
        }
        if self.component_limit > 0 {
            if let Some(comp) = g.components().into_iter().find(|c| c.len() <= self.component_limit) {
                let sub = g.induced(&comp);
                let (_, cover) = oracle::brute_force_vc(&sub).expect("component within oracle guard");
                g.remove_vertices(&comp).expect("component present");
                return Some((ReductionStep::ComponentSolve { component: comp, cover }, None));
            }
        }
        let a = Analysis::new(g, false).expect("non-empty");
        let ms = a.minsurp;
        let step = if ms < 0 {
            let z = a.smallest_min_set(g);
            p1_in_place(g, &z)
        } else if ms == 0 {
            let i = match g.vertices().find(|&v| g.degree(v) == 1) {
                Some(v) => VertexSet::single(v),
                None => {
                    let x = a.values.iter().find(|&&(_, v)| v == 0).expect("attained").0;
                    a.min_set_containing(g, x)
                }
            };
            p1_in_place(g, &i)
        } else if ms == 1 {
            let i = match g.vertices().find(|&v| g.degree(v) == 2) {
                Some(v) => VertexSet::single(v),
                None => a.smallest_min_set(g),
            };
            if g.is_independent(&g.open_nbhd(&i)) {
                p2_in_place(g, &i)
            } else {
                p1_in_place(g, &i)
            }
        } else {
            let p = g.find_pattern(PatternKind::Kite).or_else(|| g.find_pattern(PatternKind::Funnel))?;
            p3_in_place(g, p.u, p.x)
        };
        Some((step, Some(ms)))
    }
}

/// [`Simplifier::simplify`] with the default component limit.
pub fn simplify(inst: &Instance) -> (Instance, ReductionTrace) {
    Simplifier::default().simplify(inst)
}

/// Whether `g` is simplified: empty, or minimum degree ≥ 3, `minsurp ≥ 2` and no funnel.
pub fn is_simplified(g: &Graph) -> bool {
    g.is_empty()
        || (g.min_degree() >= 3
            && crate::lp::minsurp_value(g).is_ok_and(|m| m >= 2)
            && g.find_pattern(PatternKind::Funnel).is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::half::Half;

    fn cycle(n: u32) -> Graph {
        let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n as usize, &e).unwrap()
    }

    fn cert(g: &Graph, s: &[Vertex]) -> SurplusCert {
        let indset: VertexSet = s.iter().copied().collect();
        SurplusCert { surplus: g.surplus(&indset).unwrap(), indset }
    }

    #[test]
    fn p1_examples() {
        let iso = Instance::new(Graph::with_vertices(1), 3);
        let (out, step) = apply_p1(&iso, &cert(iso.graph(), &[0])).unwrap();
        assert_eq!((out.n(), out.k(), step.dk()), (0, 3, 0));

        let pendant = Instance::new(Graph::from_edges(2, &[(0, 1)]).unwrap(), 2);
        let (out, _) = apply_p1(&pendant, &cert(pendant.graph(), &[0])).unwrap();
        assert_eq!((out.n(), out.k()), (0, 1));

        let star = Instance::new(Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap(), 1);
        let (out, _) = apply_p1(&star, &cert(star.graph(), &[1, 2, 3])).unwrap();
        assert_eq!((out.n(), out.k()), (0, 0));

        let c5 = Instance::new(cycle(5), 3);
        assert!(matches!(apply_p1(&c5, &cert(c5.graph(), &[0])), Err(Error::Precondition(_))));
    }

    #[test]
    fn p2_examples() {
        let c4 = Instance::new(cycle(4), 2);
        let (out, step) = apply_p2(&c4, &cert(c4.graph(), &[0])).unwrap();
        assert_eq!(out.k(), 1);
        assert_eq!(step.created(), Some(4));
        assert_eq!(out.graph().edges().collect::<Vec<_>>(), vec![(2, 4)]);

        let p3 = Instance::new(Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap(), 2);
        let (out, _) = apply_p2(&p3, &cert(p3.graph(), &[1])).unwrap();
        assert_eq!((out.n(), out.graph().m(), out.k()), (1, 0, 1));

        let c5 = Instance::new(cycle(5), 3);
        let (out, _) = apply_p2(&c5, &cert(c5.graph(), &[0])).unwrap();
        assert_eq!(out.k(), 2);
        assert_eq!(out.graph().edges().collect::<Vec<_>>(), vec![(2, 3), (2, 5), (3, 5)]);

        let star = Instance::new(Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap(), 1);
        assert!(apply_p2(&star, &cert(star.graph(), &[1, 2, 3])).is_err());

        // A triangle's 2-vertex has a dependent neighborhood: folding would lose an edge.
        let k3 = Instance::new(cycle(3), 2);
        assert!(apply_p2(&k3, &cert(k3.graph(), &[0])).is_err());
        let (out, step) = apply_p1_dependent(&k3, &cert(k3.graph(), &[0])).unwrap();
        assert_eq!((out.n(), out.k(), step.kind()), (0, 0, RuleKind::P1));
    }

    #[test]
    fn p3_examples() {
        let k3 = Instance::new(cycle(3), 2);
        let (out, step) = apply_p3(&k3, 0, 1).unwrap();
        assert_eq!((out.n(), out.k()), (0, 0));
        let lifted = step.lift(&VertexSet::new());
        assert!(k3.graph().is_vertex_cover(&lifted) && lifted.len() == 2);

        let kite = Instance::new(Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (2, 3)]).unwrap(), 2);
        let (out, step) = apply_p3(&kite, 0, 1).unwrap();
        assert_eq!((out.k(), out.graph().vertex_set()), (0, [3].into()));
        assert!(step.is_kite_fold());

        // Funnel 0 with out-neighbor 1; B_u = {2}, B_x = {3, 4} get joined.
        let fig = Instance::new(Graph::from_edges(5, &[(0, 1), (0, 2), (1, 3), (1, 4)]).unwrap(), 3);
        let (out, _) = apply_p3(&fig, 0, 1).unwrap();
        assert_eq!(out.graph().edges().collect::<Vec<_>>(), vec![(2, 3), (2, 4)]);
        assert!(apply_p3(&Instance::new(cycle(4), 2), 0, 2).is_err());
        let c9 = crate::graph::Graph::from_edges(9, &(0..9).flat_map(|i| [(i, (i + 1) % 9), (i, (i + 2) % 9)]).collect::<Vec<_>>()).unwrap();
        assert!(apply_p3(&Instance::new(c9, 6), 0, 1).is_err());
    }

    #[test]
    fn simplify_examples() {
        let s0 = Simplifier::new(0);
        let mut q4 = Vec::new();
        for v in 0u32..16 {
            for b in 0..4 {
                let w = v ^ (1 << b);
                if v < w {
                    q4.push((v, w));
                }
            }
        }
        let q4 = Instance::new(Graph::from_edges(16, &q4).unwrap(), 8);
        let (out, trace) = s0.simplify(&q4);
        assert_eq!((out.n(), out.k(), trace.total_dk()), (0, 0, 8));
        assert_eq!(trace.steps[0].kind(), RuleKind::P1);

        let (out, trace) = s0.simplify(&Instance::new(cycle(4), 2));
        assert_eq!((out.n(), out.k()), (0, 0));
        // minsurp(C4) = 0 via {0, 2}, so P1 fires directly.
        assert_eq!(trace.steps.iter().map(|s| s.kind()).collect::<Vec<_>>(), vec![RuleKind::P1]);
        let lifted = lift_cover(&trace, out.graph(), &VertexSet::new()).unwrap();
        assert!(cycle(4).is_vertex_cover(&lifted) && lifted.len() == 2);

        let c9 = Graph::from_edges(9, &(0..9).flat_map(|i| [(i, (i + 1) % 9), (i, (i + 2) % 9)]).collect::<Vec<_>>()).unwrap();
        let (out, trace) = s0.simplify(&Instance::new(c9.clone(), 6));
        assert!(trace.is_empty() && out.graph() == &c9);
        assert!(is_simplified(&c9));
        assert_eq!(out.mu(), Half::int(6) - Half(9));

        // With component solving on, everything small disappears in one step.
        let (out, trace) = simplify(&Instance::new(c9, 6));
        assert_eq!((out.n(), out.k(), trace.count(RuleKind::ComponentSolve)), (0, 0, 1));
    }

    #[test]
    fn lift_identity_and_rejection() {
        let t = ReductionTrace::new();
        assert_eq!(t.lift(&[1, 2].into()), [1, 2].into());
        let g = cycle(4);
        assert!(lift_cover(&t, &g, &[0].into()).is_err());
    }

    #[test]
    fn trace_text() {
        let (out, trace) = Simplifier::new(0).simplify(&Instance::new(cycle(5), 3));
        assert_eq!(
            trace.to_text(),
            "P2 removed=0,1,4 created=5 dk=1\nP1 removed=2,3,5 created=- dk=2\n"
        );
        assert_eq!(trace.replay(&cycle(5)).unwrap(), *out.graph());
    }
}
