//! Branch sequences, the primitive branching rules and the case selector for
//! simplified graphs of maximum degree at least four.
//!
//! A branching rule replaces `⟨G, k⟩` by children `⟨G − include − exclude,
//! k − |include|⟩`, where `include` is forced into the cover and every
//! neighbor of `exclude` lies in `include`. Rules built here are sound in the
//! sense that the parent is feasible iff some child is.

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::half::Half;
use crate::lp::{self, Analysis, Instance, Shadow, SurplusCert};
use crate::reduce::{is_simplified, ReductionTrace, Simplifier};
use serde::{Deserialize, Serialize};
use std::fmt;

/// A guaranteed decrease `(Δμ, Δk)` of one child.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Drop {
    /// Decrease of `μ`.
    pub dmu: Half,
    /// Decrease of `k`.
    pub dk: i64,
}

impl Drop {
    /// A drop from its parts.
    pub const fn new(dmu: Half, dk: i64) -> Drop {
        Drop { dmu, dk }
    }

    /// A drop with `Δμ = dmu2 / 2`.
    pub const fn halves(dmu2: i64, dk: i64) -> Drop {
        Drop { dmu: Half(dmu2), dk }
    }

    /// `e^{−aΔμ − bΔk}`.
    pub fn weight(self, p: MeasureParams) -> f64 {
        (-p.a * self.dmu.as_f64() - p.b * self.dk as f64).exp()
    }

    /// Whether this drop is at least `other` in both coordinates.
    pub fn covers(self, other: Drop) -> bool {
        self.dmu >= other.dmu && self.dk >= other.dk
    }
}

impl fmt::Display for Drop {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.dmu, self.dk)
    }
}

/// Shorthand for claims written with decimal `Δμ` (always a multiple of ½).
fn d(dmu: f64, dk: usize) -> Drop {
    Drop::halves((dmu * 2.0).round() as i64, dk as i64)
}

/// A list of drops, one per child.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BranchSeq(Vec<Drop>);

impl BranchSeq {
    /// A branch sequence; every entry needs `Δk ≥ 1` and `Δμ ≥ 0`.
    pub fn new(drops: Vec<Drop>) -> Result<BranchSeq> {
        if let Some(bad) = drops.iter().find(|d| d.dk < 1 || d.dmu < Half::ZERO) {
            return Err(Error::Precondition(format!("branch-seq entry {bad} needs Δk ≥ 1 and Δμ ≥ 0")));
        }
        Ok(BranchSeq(drops))
    }

    /// Builds from `(Δμ, Δk)` pairs; `Δμ` must be a multiple of ½.
    pub fn from_pairs(pairs: &[(f64, i64)]) -> Result<BranchSeq> {
        let drops = pairs
            .iter()
            .map(|&(mu, k)| {
                let doubled = mu * 2.0;
                if (doubled - doubled.round()).abs() > 1e-9 || !doubled.is_finite() {
                    return Err(Error::Precondition(format!("Δμ = {mu} is not a half-integer")));
                }
                Ok(Drop::halves(doubled.round() as i64, k))
            })
            .collect::<Result<Vec<_>>>()?;
        BranchSeq::new(drops)
    }

    /// Sequence of realized drops; those always satisfy the invariants on
    /// simplified parents, but are not re-validated here.
    pub(crate) fn realized(drops: Vec<Drop>) -> BranchSeq {
        BranchSeq(drops)
    }

    /// The drops.
    pub fn drops(&self) -> &[Drop] {
        &self.0
    }

    /// Number of entries.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Whether there are no entries.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for BranchSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, "]")
    }
}

/// Coefficients of the measure `φ = aμ + bk`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeasureParams {
    /// Weight of `μ`.
    pub a: f64,
    /// Weight of `k`.
    pub b: f64,
}

impl MeasureParams {
    /// Validated parameters (finite and non-negative).
    pub fn new(a: f64, b: f64) -> Result<MeasureParams> {
        if !(a.is_finite() && b.is_finite() && a >= 0.0 && b >= 0.0) {
            return Err(Error::Precondition(format!("measure parameters ({a}, {b}) must be finite and non-negative")));
        }
        Ok(MeasureParams { a, b })
    }
}

/// `Σ e^{−aΔμᵢ − bΔkᵢ}`.
pub fn val(params: MeasureParams, seq: &BranchSeq) -> f64 {
    seq.0.iter().map(|d| d.weight(params)).sum()
}

/// Whether `b1` is at least as good as `b2` at the given parameters.
pub fn dominates(params: MeasureParams, b1: &BranchSeq, b2: &BranchSeq) -> bool {
    val(params, b1) <= val(params, b2)
}

/// Drop of the principal child that puts `x1` into the cover of a graph with
/// `minsurp ≥ 2`, together with its excess `s` (vertices isolated by the
/// deletion): `Δk = |X₁|`, `Δμ = ½(Δk − s + min(0, shad(X₀ ∪ X₁)))`.
pub fn principal_drop(g: &Graph, x1: &VertexSet) -> Result<(Drop, usize)> {
    if lp::minsurp_value(g)? < 2 {
        return Err(Error::Precondition("principal drops need minsurp ≥ 2".into()));
    }
    let rest = g.delete_vertices(x1)?;
    let x0: VertexSet = rest.vertices().filter(|&v| rest.degree(v) == 0).collect();
    let shad = lp::shadow(g, &x1.union(&x0));
    let dk = x1.len() as i64;
    Ok((Drop::halves(dk - x0.len() as i64 + shad.min0(), dk), x0.len()))
}

/// The rule that produced a decision.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "kebab-case")]
pub enum RuleTag {
    /// `u` in or out of the cover.
    SplitVertex {
        /// The split vertex.
        u: Vertex,
    },
    /// A critical-set entirely in or entirely out of the cover.
    SplitIndset {
        /// The critical-set.
        indset: VertexSet,
    },
    /// `x` blocks every vertex of `us`: all of `us ∪ {x}` in, or `x` out.
    RuleB {
        /// The blocker.
        x: Vertex,
        /// The blocked vertices.
        us: VertexSet,
    },
    /// 2-vertex `v`: `v` out, or both neighbors out.
    A1 {
        /// The 2-vertex.
        v: Vertex,
    },
    /// Funnel `u` with out-neighbor `x`: `v` in, or `v` and `x` out.
    A2 {
        /// The funnel.
        u: Vertex,
        /// Its out-neighbor.
        x: Vertex,
        /// Another neighbor of `u`.
        v: Vertex,
    },
    /// `u, v` both in, or all their common neighbors in.
    A3 {
        /// First vertex.
        u: Vertex,
        /// Second vertex.
        v: Vertex,
    },
}

impl fmt::Display for RuleTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |s: &VertexSet| s.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",");
        match self {
            RuleTag::SplitVertex { u } => write!(f, "split-vertex(u={u})"),
            RuleTag::SplitIndset { indset } => write!(f, "split-indset(I={})", list(indset)),
            RuleTag::RuleB { x, us } => write!(f, "rule-B(x={x};us={})", list(us)),
            RuleTag::A1 { v } => write!(f, "A1(v={v})"),
            RuleTag::A2 { u, x, v } => write!(f, "A2(u={u};x={x};v={v})"),
            RuleTag::A3 { u, v } => write!(f, "A3(u={u};v={v})"),
        }
    }
}

impl RuleTag {
    /// Short rule name used for per-rule statistics.
    pub fn name(&self) -> &'static str {
        match self {
            RuleTag::SplitVertex { .. } => "split-vertex",
            RuleTag::SplitIndset { .. } => "split-indset",
            RuleTag::RuleB { .. } => "rule-B",
            RuleTag::A1 { .. } => "A1",
            RuleTag::A2 { .. } => "A2",
            RuleTag::A3 { .. } => "A3",
        }
    }
}

/// One child of a branching decision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Child {
    /// Vertices forced into the cover.
    pub include: VertexSet,
    /// Vertices forced out of the cover (all their neighbors are included).
    pub exclude: VertexSet,
    /// The child instance (after any simplification recorded in `trace`).
    pub instance: Instance,
    /// Reductions applied after the deletions.
    pub trace: ReductionTrace,
    /// `k` of the child right after the deletions.
    pub direct_k: i64,
    /// `μ` of the child right after the deletions.
    pub direct_mu: Half,
}

impl Child {
    fn direct(g: &Graph, k: i64, include: VertexSet, exclude: VertexSet) -> Result<Child> {
        if let Some(v) = include.intersection(&exclude).first() {
            return Err(Error::Overlap(v));
        }
        let removed = include.union(&exclude);
        if !g.open_nbhd(&exclude).is_subset(&include) {
            return Err(Error::Internal("an excluded vertex has a neighbor outside the included set".into()));
        }
        let graph = g.delete_vertices(&removed)?;
        let direct_k = k - include.len() as i64;
        let instance = Instance::new(graph, direct_k);
        let direct_mu = instance.mu();
        Ok(Child { include, exclude, instance, trace: ReductionTrace::new(), direct_k, direct_mu })
    }

    fn simplified(mut self, simp: &Simplifier) -> Child {
        let (g, k) = self.instance.into_parts();
        let (g, k, trace) = simp.simplify_graph(g, k, None);
        self.instance = Instance::new(g, k);
        self.trace = trace;
        self
    }

    /// Lifts a cover of the child instance to a cover of the parent graph.
    pub fn lift(&self, cover: &VertexSet) -> VertexSet {
        self.trace.lift(cover).union(&self.include)
    }
}

/// A branching decision: the rule, its children and the claimed drops.
#[derive(Clone, Debug, PartialEq)]
pub struct BranchDecision {
    /// The rule applied.
    pub rule: RuleTag,
    /// Selector case that chose the rule (`direct` for a bare primitive).
    pub case: String,
    /// Claimed drops, one per child.
    pub claimed: BranchSeq,
    /// The children.
    pub children: Vec<Child>,
    /// `k` of the parent.
    pub parent_k: i64,
    /// `μ` of the parent.
    pub parent_mu: Half,
}

impl BranchDecision {
    fn build(inst: &Instance, rule: RuleTag, branches: Vec<(VertexSet, VertexSet)>) -> Result<BranchDecision> {
        let children = branches
            .into_iter()
            .map(|(inc, exc)| Child::direct(inst.graph(), inst.k(), inc, exc))
            .collect::<Result<Vec<_>>>()?;
        let mut dec = BranchDecision {
            rule,
            case: "direct".into(),
            claimed: BranchSeq::default(),
            children,
            parent_k: inst.k(),
            parent_mu: inst.mu(),
        };
        dec.claimed = dec.realized();
        Ok(dec)
    }

    /// Exact drops of the children as they stand, `(μ − μ', k − k')`.
    pub fn realized(&self) -> BranchSeq {
        BranchSeq::realized(
            self.children.iter().map(|c| Drop::new(self.parent_mu - c.instance.mu(), self.parent_k - c.instance.k())).collect(),
        )
    }

    /// Exact drops of the children right after the deletions.
    pub fn direct_drops(&self) -> BranchSeq {
        BranchSeq::realized(
            self.children.iter().map(|c| Drop::new(self.parent_mu - c.direct_mu, self.parent_k - c.direct_k)).collect(),
        )
    }

    /// Simplifies every child with `simp`.
    pub fn simplify_children(mut self, simp: &Simplifier) -> BranchDecision {
        self.children = self.children.into_iter().map(|c| c.simplified(simp)).collect();
        self
    }
}

fn check_vertex(g: &Graph, v: Vertex) -> Result<()> {
    if g.contains(v) {
        Ok(())
    } else {
        Err(Error::UnknownVertex(v))
    }
}

/// Split on `u`: `⟨G − u, k − 1⟩` and `⟨G − N[u], k − deg(u)⟩`.
pub fn split_vertex(inst: &Instance, u: Vertex) -> Result<BranchDecision> {
    let g = inst.graph();
    check_vertex(g, u)?;
    BranchDecision::build(inst, RuleTag::SplitVertex { u }, split_branches(g, u))
}

fn split_branches(g: &Graph, u: Vertex) -> Vec<(VertexSet, VertexSet)> {
    vec![(VertexSet::single(u), VertexSet::new()), (g.nbhd_of(u), VertexSet::single(u))]
}

fn indset_branches(g: &Graph, i: &VertexSet) -> Vec<(VertexSet, VertexSet)> {
    vec![(i.clone(), VertexSet::new()), (g.open_nbhd(i), i.clone())]
}

/// Split on a critical-set `I` (a singleton or a min-set):
/// `⟨G − I, k − |I|⟩` and `⟨G − N[I], k − |N(I)|⟩`.
pub fn split_indset(inst: &Instance, cert: &SurplusCert) -> Result<BranchDecision> {
    let g = inst.graph();
    let i = &cert.indset;
    if i.is_empty() {
        return Err(Error::EmptySet);
    }
    let surp = g.surplus(i)?;
    if surp != cert.surplus {
        return Err(Error::Precondition(format!("certificate claims surplus {} but the set has {surp}", cert.surplus)));
    }
    if i.len() > 1 && surp != lp::minsurp_value(g)? {
        return Err(Error::Precondition("the set is neither a singleton nor a min-set".into()));
    }
    BranchDecision::build(inst, RuleTag::SplitIndset { indset: i.clone() }, indset_branches(g, i))
}

/// Whether `x` may serve as the blocker of `u` in rule (B): `x` lies in a
/// min-set of `G − N[u]` with non-positive surplus, or `x` alone has
/// non-positive surplus there (then `{x}` is a critical-set every good cover
/// of `G − N[u]` can avoid).
fn certifies_blocker(g: &Graph, u: Vertex, x: Vertex) -> bool {
    if u == x || g.has_edge(u, x) {
        return false;
    }
    let nu = g.closed_nbhd_of(u);
    if g.neighbors(x).iter().filter(|w| !nu.contains(**w)).count() <= 1 {
        return true;
    }
    lp::blockers(g, u).contains(x)
}

/// Rule (B): `x` blocks every `u ∈ us`; children
/// `⟨G − (us ∪ {x}), k − |us| − 1⟩` and `⟨G − N[x], k − deg(x)⟩`.
pub fn rule_b(inst: &Instance, x: Vertex, us: &VertexSet) -> Result<BranchDecision> {
    let g = inst.graph();
    check_vertex(g, x)?;
    if us.is_empty() {
        return Err(Error::EmptySet);
    }
    for u in us.iter() {
        check_vertex(g, u)?;
        if !certifies_blocker(g, u, x) {
            return Err(Error::Precondition(format!("vertex {x} is not a blocker of {u}")));
        }
    }
    BranchDecision::build(inst, RuleTag::RuleB { x, us: us.clone() }, rule_b_branches(g, x, us))
}

fn rule_b_branches(g: &Graph, x: Vertex, us: &VertexSet) -> Vec<(VertexSet, VertexSet)> {
    vec![(us.with(x), VertexSet::new()), (g.nbhd_of(x), VertexSet::single(x))]
}

/// (A1) on a 2-vertex `v` with neighbors `x, y`: `⟨G − N[v], k − 2⟩` and
/// `⟨G − N[x, y], k − |N(x, y)|⟩`. When `x ~ y` only the first child exists.
pub fn rule_a1(inst: &Instance, v: Vertex) -> Result<BranchDecision> {
    let g = inst.graph();
    check_vertex(g, v)?;
    if g.degree(v) != 2 {
        return Err(Error::Precondition(format!("vertex {v} has degree {}, not 2", g.degree(v))));
    }
    let nv = g.nbhd_of(v);
    let mut branches = vec![(nv.clone(), VertexSet::single(v))];
    if g.is_independent(&nv) {
        branches.push((g.open_nbhd(&nv), nv));
    }
    BranchDecision::build(inst, RuleTag::A1 { v }, branches)
}

/// (A2) on a funnel `u` with out-neighbor `x` and another neighbor `v`:
/// `⟨G − v, k − 1⟩` and `⟨G − N[v, x], k − |N(v, x)|⟩`. When `v ~ x` only the
/// first child exists.
pub fn rule_a2(inst: &Instance, u: Vertex, x: Vertex, v: Vertex) -> Result<BranchDecision> {
    let g = inst.graph();
    for w in [u, x, v] {
        check_vertex(g, w)?;
    }
    if !g.has_edge(u, x) || !g.has_edge(u, v) || x == v {
        return Err(Error::Precondition("x and v must be distinct neighbors of u".into()));
    }
    let rest: Vec<Vertex> = g.neighbors(u).iter().copied().filter(|&w| w != x).collect();
    if !g.is_clique(&rest) {
        return Err(Error::Precondition(format!("({u}, {x}) is not a funnel")));
    }
    let vx = VertexSet::from([v, x]);
    let mut branches = vec![(VertexSet::single(v), VertexSet::new())];
    if !g.has_edge(v, x) {
        branches.push((g.open_nbhd(&vx), vx));
    }
    BranchDecision::build(inst, RuleTag::A2 { u, x, v }, branches)
}

/// (A3) on `u, v`: `⟨G − {u, v}, k − 2⟩` and `⟨G − (N(u) ∩ N(v)), k − codeg(u, v)⟩`.
pub fn rule_a3(inst: &Instance, u: Vertex, v: Vertex) -> Result<BranchDecision> {
    let g = inst.graph();
    check_vertex(g, u)?;
    check_vertex(g, v)?;
    if u == v {
        return Err(Error::Precondition("A3 needs two distinct vertices".into()));
    }
    let common = g.nbhd_of(u).intersection(&g.nbhd_of(v));
    if common.is_empty() {
        return Err(Error::Precondition(format!("{u} and {v} share no neighbor")));
    }
    BranchDecision::build(inst, RuleTag::A3 { u, v }, vec![(VertexSet::from([u, v]), VertexSet::new()), (common, VertexSet::new())])
}

/// Branching decision for a simplified instance of maximum degree ≥ 4, with
/// children simplified by the default [`Simplifier`].
pub fn select_branch(inst: &Instance) -> Result<BranchDecision> {
    select_branch_with(inst, &Simplifier::default())
}

/// [`select_branch`] with an explicit simplifier for the children.
pub fn select_branch_with(inst: &Instance, simp: &Simplifier) -> Result<BranchDecision> {
    let g = inst.graph();
    if !is_simplified(g) {
        return Err(Error::Precondition("select_branch needs a simplified graph".into()));
    }
    if g.max_degree() < 4 {
        return Err(Error::Precondition("maximum degree is below 4; use a base solver".into()));
    }
    select_unchecked(inst, simp)
}

/// The selector without the precondition checks (the solver simplifies first).
pub(crate) fn select_unchecked(inst: &Instance, simp: &Simplifier) -> Result<BranchDecision> {
    let sel = Selector { g: inst.graph(), simp };
    let plan = sel.choose();
    let mut dec = BranchDecision::build(inst, plan.rule, plan.branches)?.simplify_children(simp);
    dec.case = plan.case.to_string();
    dec.claimed = BranchSeq::new(plan.claim)?;
    debug_assert_eq!(dec.claimed.len(), dec.children.len());
    Ok(dec)
}

/// A chosen rule before its children are materialized.
struct Plan {
    rule: RuleTag,
    case: &'static str,
    branches: Vec<(VertexSet, VertexSet)>,
    claim: Vec<Drop>,
}

/// Case analysis on a simplified graph. Each case returns `None` when the
/// structure it expects is absent; the caller then falls back to a plain
/// split whose claim is computed exactly.
struct Selector<'a> {
    g: &'a Graph,
    simp: &'a Simplifier,
}

impl Selector<'_> {
    fn deg(&self, v: Vertex) -> usize {
        self.g.degree(v)
    }

    fn shad(&self, u: Vertex) -> Shadow {
        lp::shadow_closed(self.g, u)
    }

    /// `shad(N[u]) ≤ c`.
    fn shad_at_most(s: Shadow, c: i64) -> bool {
        !s.at_least(c + 1)
    }

    fn minus_closed(&self, u: Vertex) -> Graph {
        self.g.delete_vertices(&self.g.closed_nbhd_of(u)).expect("vertex present")
    }

    fn common(&self, u: Vertex, v: Vertex) -> Vec<Vertex> {
        self.g.neighbors(u).iter().copied().filter(|&w| self.g.has_edge(v, w)).collect()
    }

    fn split(&self, u: Vertex, case: &'static str, claim: Vec<Drop>) -> Plan {
        Plan { rule: RuleTag::SplitVertex { u }, case, branches: split_branches(self.g, u), claim }
    }

    fn split_set(&self, i: &VertexSet, case: &'static str, claim: Vec<Drop>) -> Plan {
        Plan { rule: RuleTag::SplitIndset { indset: i.clone() }, case, branches: indset_branches(self.g, i), claim }
    }

    fn rule_b(&self, x: Vertex, us: VertexSet, case: &'static str, claim: Vec<Drop>) -> Plan {
        debug_assert!(us.iter().all(|u| certifies_blocker(self.g, u, x)), "uncertified blocker {x} in {case}");
        Plan { rule: RuleTag::RuleB { x, us: us.clone() }, case, branches: rule_b_branches(self.g, x, &us), claim }
    }

    /// `R(X)`: decrease of `k` when simplifying `G − X`.
    fn reducible(&self, x: &VertexSet) -> i64 {
        let h = self.g.delete_vertices(x).expect("vertices present");
        self.simp.simplify_graph(h, 0, None).2.total_dk()
    }

    /// Whether `x` lies in a min-set of size ≥ 2 of `h`.
    fn in_nonsingleton_min_set(h: &Graph, x: Vertex) -> bool {
        if !matches!(lp::find_min_set(h, &VertexSet::single(x)), Ok(Some(_))) {
            return false;
        }
        let rest = h.delete_vertices(&h.closed_nbhd_of(x)).expect("vertex present");
        !rest.is_empty() && lp::minsurp_value(&rest).is_ok_and(|m| m <= 0)
    }

    /// Drop of `⟨G − N[x], k − deg(x)⟩` when `x` blocks `u` (whose shadow is `su`).
    fn blocker_drop(&self, u: Vertex, su: Shadow, x: Vertex) -> Drop {
        let dx = self.deg(x);
        if dx >= 4 || !Self::shad_at_most(su, 4 - self.deg(u) as i64) {
            // shad(N[x]) ≥ 3 − deg(x) already gives Δμ ≥ 1 directly.
            return d(1.0, dx);
        }
        if Self::in_nonsingleton_min_set(&self.minus_closed(u), x) {
            d(1.0, 5)
        } else {
            d(1.0, 4)
        }
    }

    fn choose(&self) -> Plan {
        let u = self.g.max_degree_vertex().expect("non-empty graph");
        if let Some(i) = self.surplus_two_set() {
            let plan = if i.len() >= 3 { self.surplus_two_triple(&i) } else { self.surplus_two_pair(&i) };
            if let Some(p) = plan {
                return p;
            }
        }
        self.top(u).unwrap_or_else(|| self.fallback(u))
    }

    /// Plain split on `u` with its exact direct drops.
    fn fallback(&self, u: Vertex) -> Plan {
        let du = self.deg(u) as i64;
        let s = self.shad(u);
        self.split(u, "fallback-split", vec![Drop::halves(1, 1), Drop::halves(du - 1 + s.min0(), du)])
    }

    /// A min-set of surplus 2 with at least two members, preferring one with
    /// at least three.
    fn surplus_two_set(&self) -> Option<VertexSet> {
        let g = self.g;
        let a = Analysis::new(g, true).ok()?;
        if a.minsurp != 2 {
            return None;
        }
        let mut pair = None;
        for &(x, v) in &a.values {
            if v != 2 {
                continue;
            }
            let h = self.minus_closed(x);
            if h.is_empty() {
                continue;
            }
            let ha = Analysis::new(&h, false).ok()?;
            if ha.minsurp > 0 {
                continue;
            }
            if let Ok(Some(c)) = lp::nonsingleton_min_set(&h) {
                return Some(c.indset.with(x));
            }
            if pair.is_none() {
                pair = Some(ha.smallest_min_set(&h).with(x));
            }
        }
        pair
    }

    /// Top-level dispatch on the lowest-id vertex `u` of maximum degree `r`.
    fn top(&self, u: Vertex) -> Option<Plan> {
        let r = self.deg(u);
        let s = self.shad(u);
        match r {
            4 if s.at_least(0) => Some(self.split(u, "high-degree-split", vec![d(0.5, 1), d(1.5, 4)])),
            5 if s.at_least(0) => Some(self.split(u, "high-degree-split", vec![d(0.5, 1), d(2.0, 5)])),
            4 | 5 => self.blocked_low(u),
            _ if s.at_least(6 - r as i64) => Some(self.split(u, "high-degree-split", vec![d(0.5, 1), d(2.5, r)])),
            _ => self.blocked_high(u),
        }
    }

    /// `deg(u) ≥ 4` and `shad(N[u]) ≤ 4 − deg(u)`:
    /// `[(1,3),(1,5)]` or `[(0.5,2),(2,5)]`.
    fn blocked_low(&self, u: Vertex) -> Option<Plan> {
        let du = self.deg(u) as i64;
        let su = self.shad(u);
        if du < 4 || !Self::shad_at_most(su, 4 - du) {
            return None;
        }
        let h = self.minus_closed(u);
        let i = lp::minsurp(&h).ok()?.indset;
        let x = i.iter().find(|&x| self.g.codegree(x, u) >= 1)?;
        if self.deg(x) >= 4 {
            return self.heavy_blocker(u, x);
        }
        let shared = self.common(x, u);
        if let Some(&t) = shared.iter().find(|&&t| self.deg(t) >= 5) {
            return self.cubic_neighbor(t);
        }
        if i.len() >= 2 {
            return Some(self.rule_b(x, VertexSet::single(u), "blocked-low/blocker-set", vec![d(1.0, 3), d(1.0, 5)]));
        }
        if shared.len() < 2 {
            return None;
        }
        Some(self.rule_b(x, VertexSet::single(u), "blocked-low/blocker-single", vec![d(1.0, 4), d(1.0, 4)]))
    }

    /// `shad(N[u]) ≤ 5 − deg(u)` and `u` has a blocker `x` of degree ≥ 4:
    /// `[(1,4),(1,4)]` or `[(0.5,2),(2,5)]` (or something dominating them).
    fn heavy_blocker(&self, u: Vertex, x: Vertex) -> Option<Plan> {
        let dx = self.deg(x) as i64;
        let sx = self.shad(x);
        if Self::shad_at_most(sx, 3 - dx) {
            let hx = self.minus_closed(x);
            let j = lp::minsurp(&hx).ok()?.indset;
            let i = j.with(x);
            if self.g.surplus(&i).ok()? != 2 {
                return None;
            }
            return self.surplus_two_pair(&i);
        }
        Some(self.rule_b(x, VertexSet::single(u), "heavy-blocker", vec![d(1.0, 2), d(1.5, 5)]))
    }

    /// Surplus-2 indset `I` with `|I| ≥ 2`: `[(1,4),(1,4)]` or `[(0.5,3),(2,5)]`.
    fn surplus_two_pair(&self, i: &VertexSet) -> Option<Plan> {
        if i.len() >= 3 {
            return self.surplus_two_triple(i);
        }
        let mut xy = i.as_slice().to_vec();
        xy.sort_by_key(|&v| (self.deg(v), v));
        let (x, y) = (xy[0], xy[1]);
        let a = self.common(x, y);
        let (z1, z2) = a
            .iter()
            .enumerate()
            .flat_map(|(p, &z1)| a[p + 1..].iter().map(move |&z2| (z1, z2)))
            .find(|&(z1, z2)| !self.g.has_edge(z1, z2))?;
        if self.deg(z1) <= 4 && self.deg(z2) <= 4 {
            return Some(self.split_set(i, "surplus-two-pair/split-set", vec![d(1.0, 4), d(1.0, 4)]));
        }
        let z = if self.deg(z1) >= 5 { z1 } else { z2 };
        let sz = self.shad(z);
        let n = i.len();
        if sz.at_least(0) {
            return Some(self.split(z, "surplus-two-pair/split-neighbor", vec![d(0.5, 1 + n), d(2.0, 5)]));
        }
        let (t, _) = lp::find_blocker(self.g, z)?;
        if i.contains(t) {
            return None;
        }
        let second = self.blocker_drop(z, sz, t);
        Some(self.rule_b(t, VertexSet::single(z), "surplus-two-pair/blocker", vec![d(1.0, 2 + n), second]))
    }

    /// Surplus-2 indset `I` with `|I| ≥ 3`: `[(1,4),(1,5)]` or `[(0.5,4),(2,5)]`.
    fn surplus_two_triple(&self, i: &VertexSet) -> Option<Plan> {
        let n = i.len();
        if n >= 4 {
            return Some(self.split_set(i, "surplus-two-triple/split-large", vec![d(1.0, n), d(1.0, n + 2)]));
        }
        let g = self.g;
        let z = g.open_nbhd(i).iter().find(|&z| g.neighbors(z).iter().filter(|w| i.contains(**w)).count() == 2)?;
        let mut xs: Vec<Vertex> = g.neighbors(z).iter().copied().filter(|&w| i.contains(w)).collect();
        xs.sort_by_key(|&v| (self.deg(v), v));
        let (x1, x2) = (xs[0], xs[1]);
        let y = i.iter().find(|&v| v != x1 && v != x2)?;
        let dz = self.deg(z) as i64;
        if dz <= 4 {
            return Some(self.split_set(i, "surplus-two-triple/split-set", vec![d(1.0, 4), d(1.0, 5)]));
        }
        let sz = self.shad(z);
        if sz.at_least(5 - dz) {
            return Some(self.split(z, "surplus-two-triple/split-neighbor", vec![d(0.5, 4), d(2.0, 5)]));
        }
        if let Some(t) = lp::blockers(g, z).iter().find(|&t| t != y) {
            let second = self.blocker_drop(z, sz, t);
            return Some(self.rule_b(t, VertexSet::single(z), "surplus-two-triple/blocker", vec![d(1.0, 5), second]));
        }
        if self.deg(x1) == 3 {
            return None;
        }
        let us = VertexSet::from([x1, x2, z]);
        if !us.iter().all(|w| certifies_blocker(g, w, y)) {
            return None;
        }
        Some(self.rule_b(y, us, "surplus-two-triple/shared-blocker", vec![d(1.0, 4), d(1.0, 5)]))
    }

    /// A vertex of degree ≥ 5 with a 3-neighbor somewhere in the graph:
    /// `[(1,3),(1,5)]` or `[(0.5,2),(2,5)]`.
    fn cubic_neighbor(&self, u: Vertex) -> Option<Plan> {
        if let Some(p) = self.cubic_neighbor_at(u) {
            return Some(p);
        }
        let g = self.g;
        let big: Vec<Vertex> =
            g.vertices().filter(|&w| g.degree(w) >= 5 && g.neighbors(w).iter().any(|&z| g.degree(z) == 3)).collect();
        for &w in &big {
            if w != u {
                if let Some(p) = self.cubic_neighbor_at(w) {
                    return Some(p);
                }
            }
        }
        // Every such vertex is blocked by a linked 3-vertex; some 3-vertex is
        // linked to two of them.
        for x in g.vertices().filter(|&x| g.degree(x) == 3) {
            let nx = g.nbhd_of(x);
            let linked: Vec<Vertex> =
                big.iter().copied().filter(|&w| w != x && !g.has_edge(w, x) && nx.is_subset(&g.nbhd_of(w))).collect();
            if linked.len() >= 2 {
                let us = VertexSet::from([linked[0], linked[1]]);
                return Some(self.rule_b(x, us, "cubic-neighbor/linked-pair", vec![d(1.0, 5), d(1.0, 4)]));
            }
        }
        None
    }

    /// The per-vertex cases for a vertex `u` of degree ≥ 5 with a 3-neighbor.
    fn cubic_neighbor_at(&self, u: Vertex) -> Option<Plan> {
        let g = self.g;
        let du = self.deg(u) as i64;
        let z = g.neighbors(u).iter().copied().find(|&z| g.degree(z) == 3)?;
        if du < 5 {
            return None;
        }
        let su = self.shad(u);
        if su.at_least(5 - du) {
            return Some(self.split(u, "cubic-neighbor/split", vec![d(0.5, 2), d(2.0, 5)]));
        }
        let bl = lp::blockers(g, u);
        if let Some(x) = bl.iter().find(|&x| self.deg(x) >= 4) {
            if let Some(p) = self.heavy_blocker(u, x) {
                return Some(p);
            }
        }
        for x in bl.iter() {
            if self.reducible(&VertexSet::from([u, x])) >= 2 {
                let second = self.blocker_drop(u, su, x);
                return Some(self.rule_b(x, VertexSet::single(u), "cubic-neighbor/reducible-pair", vec![d(1.0, 4), second]));
            }
        }
        let h = self.minus_closed(u);
        if let Ok(Some(cert)) = lp::nonsingleton_min_set(&h) {
            let x = cert.indset.first()?;
            if self.deg(x) == 3 && z != x {
                return Some(self.rule_b(x, VertexSet::single(u), "cubic-neighbor/blocker-set", vec![d(1.0, 3), d(1.0, 5)]));
            }
        }
        None
    }

    /// `deg(u) ≥ 5` and `shad(N[u]) ≤ 5 − deg(u)`:
    /// `[(1,3),(1,4)]` / `[(1,3),(1,5)]` or `[(0.5,2),(2,5)]`.
    fn blocked_high(&self, u: Vertex) -> Option<Plan> {
        let g = self.g;
        let du = self.deg(u) as i64;
        let su = self.shad(u);
        if du < 5 || !Self::shad_at_most(su, 5 - du) {
            return None;
        }
        let h = self.minus_closed(u);
        let i = lp::minsurp(&h).ok()?.indset;
        if let Some(x) = i.iter().find(|&x| self.deg(x) >= 4) {
            return self.heavy_blocker(u, x);
        }
        let x = i.iter().find(|&x| g.codegree(x, u) >= 1)?;
        let zs = self.common(x, u);
        let ys = g.neighbors(x).len() - zs.len();
        if let Some(&z) = zs.iter().find(|&&z| self.deg(z) >= 5) {
            return self.cubic_neighbor(z);
        }
        if zs.iter().any(|&z| self.deg(z) == 3) {
            return self.cubic_neighbor(u);
        }
        if let Some(x2) = i.iter().find(|&x2| x2 != x && g.codegree(x, x2) >= 2) {
            return self.surplus_two_pair(&VertexSet::from([x, x2]));
        }
        for (p, &z) in zs.iter().enumerate() {
            for &z2 in &zs[p + 1..] {
                if g.codegree(z, z2) >= 3 {
                    return if Self::shad_at_most(self.shad(z), 0) { self.blocked_low(z) } else { None };
                }
            }
        }
        let first = d(1.0, 2 + zs.len());
        let second = if i.len() == 1 { d(1.0, 3) } else { d(1.0, 3 + ys) };
        let case = if i.len() == 1 { "blocked-high/blocker-single" } else { "blocked-high/blocker-set" };
        Some(self.rule_b(x, VertexSet::single(u), case, vec![first, second]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;
    use crate::oracle::brute_force_feasible;

    fn l4() -> MeasureParams {
        MeasureParams::new(0.71808, 0.019442).unwrap()
    }

    fn seq(p: &[(f64, i64)]) -> BranchSeq {
        BranchSeq::from_pairs(p).unwrap()
    }

    fn feasible_children(dec: &BranchDecision) -> Vec<bool> {
        dec.children.iter().map(|c| brute_force_feasible(c.instance.graph(), c.instance.k()).unwrap()).collect()
    }

    #[test]
    fn val_examples() {
        assert!((val(l4(), &seq(&[(1.0, 3), (1.0, 5)])) - 0.90259).abs() < 1e-4);
        assert_eq!(val(l4(), &BranchSeq::default()), 0.0);
        let zero = MeasureParams::new(0.0, 0.0).unwrap();
        assert_eq!(val(zero, &seq(&[(1.0, 3), (0.5, 1), (2.0, 9)])), 3.0);
        assert!(BranchSeq::from_pairs(&[(0.3, 1)]).is_err());
        assert!(BranchSeq::from_pairs(&[(1.0, 0)]).is_err());
        assert!(MeasureParams::new(-1.0, 0.0).is_err());
        assert_eq!(seq(&[(0.5, 1), (1.5, 4)]).to_string(), "[(0.5,1),(1.5,4)]");
    }

    #[test]
    fn dominates_examples() {
        let p = MeasureParams::new(0.5, 0.1).unwrap();
        assert!(dominates(p, &seq(&[(1.0, 4), (1.0, 4)]), &seq(&[(1.0, 3), (1.0, 5)])));
        let s = seq(&[(1.0, 3), (2.0, 5)]);
        assert!(dominates(p, &s, &s));
        let q = MeasureParams::new(1.0, 0.0).unwrap();
        assert!(!dominates(q, &seq(&[(0.5, 1)]), &seq(&[(1.0, 1)])));
    }

    #[test]
    fn split_vertex_examples() {
        let c5 = Instance::new(gen::cycle(5).unwrap(), 3);
        let dec = split_vertex(&c5, 0).unwrap();
        let g0 = dec.children[0].instance.graph();
        assert_eq!((g0.n(), g0.m(), dec.children[0].instance.k()), (4, 3, 2));
        let g1 = dec.children[1].instance.graph();
        assert_eq!((g1.vertex_set(), g1.m(), dec.children[1].instance.k()), ([2, 3].into(), 1, 1));
        assert_eq!(feasible_children(&dec), [true, true]);

        let k2 = Instance::new(gen::complete(2), 1);
        let dec = split_vertex(&k2, 0).unwrap();
        assert_eq!((dec.children[0].instance.n(), dec.children[0].instance.k()), (1, 0));
        assert_eq!((dec.children[1].instance.n(), dec.children[1].instance.k()), (0, 0));
        assert_eq!(feasible_children(&dec), [true, true]);

        let k4 = Instance::new(gen::complete(4), 2);
        let dec = split_vertex(&k4, 0).unwrap();
        assert_eq!(dec.children[1].instance.k(), -1);
        assert_eq!(feasible_children(&dec), [false, false]);
        assert!(matches!(split_vertex(&k4, 9), Err(Error::UnknownVertex(9))));
    }

    #[test]
    fn split_indset_examples() {
        let c5 = Instance::new(gen::cycle(5).unwrap(), 3);
        let single = SurplusCert { indset: [0].into(), surplus: 1 };
        let a = split_indset(&c5, &single).unwrap();
        let b = split_vertex(&c5, 0).unwrap();
        assert_eq!(a.children, b.children);

        let c6 = Instance::new(gen::cycle(6).unwrap(), 3);
        let bad = SurplusCert { indset: [0, 3].into(), surplus: 2 };
        assert!(matches!(split_indset(&c6, &bad), Err(Error::Precondition(_))));
        let good = SurplusCert { indset: [0, 2, 4].into(), surplus: 0 };
        let dec = split_indset(&c6, &good).unwrap();
        let g0 = dec.children[0].instance.graph();
        assert_eq!((g0.vertex_set(), g0.m(), dec.children[0].instance.k()), ([1, 3, 5].into(), 0, 0));
        assert_eq!((dec.children[1].instance.n(), dec.children[1].instance.k()), (0, 0));
        assert_eq!(feasible_children(&dec), [true, true]);
    }

    #[test]
    fn rule_b_examples() {
        // N[0] = {0, 1, 2, 3, 4}, so 5 and 6 are isolated in G − N[0] and both block 0.
        let g = Graph::from_edges(7, &[(0, 1), (0, 2), (0, 3), (0, 4), (5, 1), (5, 2), (5, 3), (4, 6)]).unwrap();
        let inst = Instance::new(g.clone(), 4);
        let dec = rule_b(&inst, 5, &VertexSet::single(0)).unwrap();
        assert_eq!(dec.children[0].instance.graph().vertex_set(), [1, 2, 3, 4, 6].into());
        assert_eq!(dec.children[0].instance.k(), 2);
        assert_eq!(dec.children[1].instance.k(), 1);
        for k in 0..5 {
            let inst = Instance::new(g.clone(), k);
            let dec = rule_b(&inst, 5, &VertexSet::single(0)).unwrap();
            assert_eq!(brute_force_feasible(&g, k).unwrap(), feasible_children(&dec).iter().any(|&f| f));
        }
        assert!(rule_b(&inst, 1, &VertexSet::single(0)).is_err());
        assert!(rule_b(&inst, 5, &VertexSet::new()).is_err());
    }

    #[test]
    fn a_rule_examples() {
        let p3 = Instance::new(gen::path(3), 1);
        let dec = rule_a1(&p3, 1).unwrap();
        assert_eq!(dec.children.len(), 2);
        assert_eq!(dec.children[0].instance.k(), -1);
        assert_eq!(dec.children[1].instance.k(), 0);
        assert_eq!(feasible_children(&dec), [false, true]);
        assert!(rule_a1(&p3, 0).is_err());

        let c4 = Instance::new(gen::cycle(4).unwrap(), 2);
        let dec = rule_a3(&c4, 0, 2).unwrap();
        assert_eq!(dec.children.iter().map(|c| c.instance.k()).collect::<Vec<_>>(), [0, 0]);
        assert_eq!(feasible_children(&dec), [true, true]);
        assert!(rule_a3(&c4, 0, 1).is_err());

        // Kite: 0 and 2 are the degree-3 vertices; (0, 1) is a funnel since 2 ~ 3.
        let kite_g = gen::named("kite").unwrap();
        for k in 0..4 {
            let kite = Instance::new(kite_g.clone(), k);
            let dec = rule_a2(&kite, 0, 1, 3).unwrap();
            assert_eq!(dec.children.len(), 2);
            assert_eq!(dec.children[0].instance.k(), k - 1);
            assert_eq!(dec.children[1].exclude, [1, 3].into());
            assert_eq!(brute_force_feasible(&kite_g, k).unwrap(), feasible_children(&dec).iter().any(|&f| f));
        }
        let kite = Instance::new(kite_g, 2);
        // 1 ~ 2, so "2 and 1 both out" is impossible and only one child remains.
        assert_eq!(rule_a2(&kite, 0, 1, 2).unwrap().children.len(), 1);
        // N(0) \ {2} = {1, 3} is not a clique.
        assert!(rule_a2(&kite, 0, 2, 1).is_err());
    }

    #[test]
    fn selector_on_circulant() {
        let g = gen::circulant(9, &[1, 2]).unwrap();
        let inst = Instance::new(g, 6);
        let dec = select_branch(&inst).unwrap();
        assert_eq!(dec.rule, RuleTag::SplitVertex { u: 0 });
        assert_eq!(dec.claimed, seq(&[(0.5, 1), (1.5, 4)]));
        assert_eq!(dec.case, "high-degree-split");
        for (r, c) in dec.realized().drops().iter().zip(dec.claimed.drops()) {
            assert!(r.covers(*c), "{r} vs {c}");
        }
        assert!(select_branch(&Instance::new(gen::cycle(5).unwrap(), 3)).is_err());
        assert!(select_branch(&Instance::new(gen::petersen(), 6)).is_err());
    }

    #[test]
    fn principal_drop_matches_lp() {
        let g = gen::circulant(11, &[1, 3]).unwrap();
        let inst = Instance::new(g.clone(), 8);
        for u in g.vertices() {
            let dec = split_vertex(&inst, u).unwrap();
            for (c, x1) in dec.children.iter().zip([VertexSet::single(u), g.nbhd_of(u)]) {
                let (drop, _) = principal_drop(&g, &x1).unwrap();
                assert_eq!(drop, Drop::new(inst.mu() - c.direct_mu, inst.k() - c.direct_k));
            }
        }
    }
}
