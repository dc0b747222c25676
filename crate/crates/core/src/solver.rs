//! Degree-stratified decision solvers (levels 4–7), the two exact base
//! solvers, the dovetail combiner and the optimization wrapper.
//!
//! Every solver is a resumable explicit-stack search driven by a node
//! "fuel" counter. That lets [`dovetail`] alternate two solvers in fixed
//! node quanta on one thread: the first definitive answer wins and the other
//! search is dropped.

use crate::branch::{select_unchecked, split_vertex, BranchDecision, Child, MeasureParams};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::lp::{Instance, SurplusCert};
use crate::reduce::{apply_p1, apply_p1_dependent, apply_p2, ReductionTrace, Simplifier, DEFAULT_COMPONENT_LIMIT};
use crate::verify::AuditRecord;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::rc::Rc;
use std::str::FromStr;
use std::time::Instant;

/// Branch nodes granted to each side of a dovetail per turn.
pub const DOVETAIL_QUANTUM: u64 = 256;

/// Log base of the AGVC stand-in's predicted cost per unit of `μ`.
pub const AGVC_RATE: f64 = 2.3146;

/// Predicted per-vertex MaxIS rates by maximum degree (3 through 7).
pub const MAXIS_RATES: [(usize, f64); 5] = [(3, 1.083506), (4, 1.137595), (5, 1.17366), (6, 1.18922), (7, 1.19698)];

/// `e^b` of the level-7 measure: the level-7 solver tracks `k` alone.
pub const LEVEL7_RATE: f64 = 1.2575;

/// One of the four degree levels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Level {
    /// Branches on degree ≥ 4; degree ≤ 3 goes to the base solvers.
    #[serde(rename = "level4")]
    L4,
    /// Branches on degree ≥ 5; lower degree goes to level 4.
    #[serde(rename = "level5")]
    L5,
    /// Branches on degree ≥ 6; lower degree goes to level 5.
    #[serde(rename = "level6")]
    L6,
    /// Splits on degree ≥ 7; lower degree goes to level 6.
    #[serde(rename = "level7")]
    L7,
}

impl Level {
    /// All levels, lowest first.
    pub const ALL: [Level; 4] = [Level::L4, Level::L5, Level::L6, Level::L7];

    /// The smallest degree this level branches on.
    pub fn degree(self) -> usize {
        match self {
            Level::L4 => 4,
            Level::L5 => 5,
            Level::L6 => 6,
            Level::L7 => 7,
        }
    }

    /// Level from its branching degree.
    pub fn from_degree(d: usize) -> Result<Level> {
        Level::ALL.into_iter().find(|l| l.degree() == d).ok_or_else(|| Error::Usage(format!("no level {d} (expected 4..7)")))
    }

    fn lower(self) -> Option<Level> {
        match self {
            Level::L4 => None,
            Level::L5 => Some(Level::L4),
            Level::L6 => Some(Level::L5),
            Level::L7 => Some(Level::L6),
        }
    }

    pub fn index(self) -> usize {
        self.degree() - 4
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "level{}", self.degree())
    }
}

impl FromStr for Level {
    type Err = Error;
    fn from_str(s: &str) -> Result<Level> {
        let d = s.strip_prefix("level").unwrap_or(s);
        Level::from_degree(d.parse().map_err(|_| Error::Usage(format!("unknown level '{s}'")))?)
    }
}

/// How a level hands off graphs below its degree.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BasePolicy {
    /// Dovetail the lower solver with MaxIS, predicted-cheaper first.
    #[default]
    Dovetail,
    /// Use only the lower solver (AGVC below level 4).
    LowerOnly,
    /// Use only the MaxIS stand-in.
    MaxisOnly,
}

/// Solver configuration.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    /// Measure parameters for levels 4, 5, 6, 7.
    pub params: [MeasureParams; 4],
    /// Largest component solved exhaustively during simplification (0 disables).
    pub component_limit: usize,
    /// Maximum number of search nodes (`None` = unlimited).
    pub budget: Option<u64>,
    /// Record an [`AuditRecord`] at every branching node of levels 4–7.
    pub audit: bool,
    /// Hand-off policy below each level's degree.
    pub base: BasePolicy,
    /// Level used by [`solve_optimum`].
    pub level: Level,
    /// Nodes each side of a dovetail runs before yielding (default
    /// [`DOVETAIL_QUANTUM`]).
    pub quantum: u64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            params: default_params(),
            component_limit: DEFAULT_COMPONENT_LIMIT,
            budget: None,
            audit: false,
            base: BasePolicy::Dovetail,
            level: Level::L7,
            quantum: DOVETAIL_QUANTUM,
        }
    }
}

/// The default measure parameters `(a, b)` for levels 4–7.
pub fn default_params() -> [MeasureParams; 4] {
    [
        MeasureParams { a: 0.71808, b: 0.019442 },
        MeasureParams { a: 0.44849, b: 0.085297 },
        MeasureParams { a: 0.20199, b: 0.160637 },
        MeasureParams { a: 0.0, b: LEVEL7_RATE.ln() },
    ]
}

impl SolverConfig {
    /// Measure parameters of `level`.
    pub fn params_for(&self, level: Level) -> MeasureParams {
        self.params[level.index()]
    }

    /// Checks that every constant is finite and non-negative.
    pub fn validate(&self) -> Result<()> {
        for p in &self.params {
            MeasureParams::new(p.a, p.b)?;
        }
        if self.quantum == 0 {
            return Err(Error::Precondition("dovetail quantum must be positive".into()));
        }
        Ok(())
    }

    fn simplifier(&self) -> Simplifier {
        Simplifier::new(self.component_limit)
    }
}

/// Search statistics.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SolveStats {
    /// Search nodes visited (every popped subproblem).
    pub nodes: u64,
    /// Nodes at which a branching rule was applied.
    pub branch_nodes: u64,
    /// Branching rules applied, by rule name.
    pub rule_counts: BTreeMap<String, u64>,
    /// Branching cases taken by the selector, by case id.
    pub case_counts: BTreeMap<String, u64>,
    /// Which solver answered each dovetail.
    pub dovetail_wins: BTreeMap<String, u64>,
    /// Deepest search node.
    pub max_depth: usize,
    /// Audit records whose realized drops exceed the claim.
    pub audit_violations: u64,
    /// Audit records (empty unless auditing).
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub audit: Vec<AuditRecord>,
    /// Wall-clock time in seconds.
    pub wall_time_s: f64,
}

/// Outcome of a decision solve.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolveResult {
    /// Whether a cover of size at most `k` exists.
    pub feasible: bool,
    /// Such a cover of the input graph, present iff feasible.
    pub cover: Option<VertexSet>,
    /// Search statistics.
    pub stats: SolveStats,
}

/// Outcome of [`solve_optimum`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Optimum {
    /// Minimum vertex cover size.
    pub opt: i64,
    /// A minimum vertex cover.
    pub cover: VertexSet,
    /// Statistics accumulated over every decision call.
    pub stats: SolveStats,
}

/// A solver that [`dovetail`] can run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Solver {
    /// A degree level.
    Level(Level),
    /// LP-guided branching stand-in for the `μ`-parameterized algorithm.
    Agvc,
    /// Plain branch-and-reduce stand-in for MaxIS.
    Maxis,
}

impl fmt::Display for Solver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Solver::Level(l) => write!(f, "{l}"),
            Solver::Agvc => write!(f, "agvc"),
            Solver::Maxis => write!(f, "maxis"),
        }
    }
}

// ---------------------------------------------------------------------------
// Search machinery
// ---------------------------------------------------------------------------

/// Lifting chain from a subproblem back to the root: each link lifts a
/// cover through one trace and adds the vertices the branch included.
struct LiftNode {
    trace: ReductionTrace,
    include: VertexSet,
    parent: Chain,
}

type Chain = Option<Rc<LiftNode>>;

fn link(parent: &Chain, trace: ReductionTrace, include: VertexSet) -> Chain {
    if trace.is_empty() && include.is_empty() {
        return parent.clone();
    }
    Some(Rc::new(LiftNode { trace, include, parent: parent.clone() }))
}

fn lift(chain: &Chain, cover: VertexSet) -> VertexSet {
    let mut c = cover;
    let mut cur = chain.as_ref();
    while let Some(node) = cur {
        c = node.trace.lift(&c).union(&node.include);
        cur = node.parent.as_ref();
    }
    c
}

struct Ctx<'a> {
    cfg: &'a SolverConfig,
    simp: Simplifier,
    stats: SolveStats,
}

impl<'a> Ctx<'a> {
    fn new(cfg: &'a SolverConfig) -> Self {
        Ctx { cfg, simp: cfg.simplifier(), stats: SolveStats::default() }
    }

    fn visit(&mut self, depth: usize) -> Result<()> {
        if let Some(b) = self.cfg.budget {
            if self.stats.nodes >= b {
                return Err(Error::Budget { nodes: self.stats.nodes, stats: Box::default() });
            }
        }
        self.stats.nodes += 1;
        self.stats.max_depth = self.stats.max_depth.max(depth);
        Ok(())
    }

    fn record_branch(&mut self, dec: &BranchDecision, level: Option<Level>) {
        self.stats.branch_nodes += 1;
        *self.stats.rule_counts.entry(dec.rule.name().to_string()).or_insert(0) += 1;
        if dec.case != "direct" {
            *self.stats.case_counts.entry(dec.case.clone()).or_insert(0) += 1;
        }
        if let (true, Some(level)) = (self.cfg.audit, level) {
            let rec = AuditRecord::new(
                self.stats.nodes,
                level,
                dec.rule.to_string(),
                dec.case.clone(),
                dec.claimed.clone(),
                dec.realized(),
                self.cfg.params_for(level),
            );
            self.stats.audit_violations += u64::from(rec.violation);
            self.stats.audit.push(rec);
        }
    }
}

enum Poll {
    Done(Option<VertexSet>),
    Pending,
}

struct Task {
    inst: Instance,
    simplified: bool,
    chain: Chain,
    depth: usize,
}

enum Entry {
    Task(Task),
    Nested { machine: Box<Machine>, chain: Chain },
}

enum Machine {
    Search { solver: Solver, stack: Vec<Entry> },
    Dovetail { sides: [Box<Machine>; 2], names: [Solver; 2], turn: usize, left: u64, quantum: u64 },
}

enum Expansion {
    Solved(VertexSet),
    Dead,
    Push(Vec<Entry>),
}

impl Machine {
    fn search(solver: Solver, inst: Instance, simplified: bool, depth: usize) -> Machine {
        Machine::Search { solver, stack: vec![Entry::Task(Task { inst, simplified, chain: None, depth })] }
    }

    fn dovetail(first: Solver, second: Solver, inst: &Instance, simplified: bool, depth: usize, quantum: u64) -> Machine {
        Machine::Dovetail {
            sides: [
                Box::new(Machine::search(first, inst.clone(), simplified, depth)),
                Box::new(Machine::search(second, inst.clone(), simplified, depth)),
            ],
            names: [first, second],
            turn: 0,
            left: quantum,
            quantum,
        }
    }

    /// Runs until an answer or until `fuel` (search nodes) runs out.
    fn run(&mut self, fuel: &mut u64, ctx: &mut Ctx<'_>) -> Result<Poll> {
        match self {
            Machine::Dovetail { sides, names, turn, left, quantum } => loop {
                if *fuel == 0 {
                    return Ok(Poll::Pending);
                }
                let slice = (*left).min(*fuel);
                let mut f = slice;
                let poll = sides[*turn].run(&mut f, ctx)?;
                let used = slice - f;
                *fuel -= used;
                *left -= used;
                if let Poll::Done(ans) = poll {
                    *ctx.stats.dovetail_wins.entry(names[*turn].to_string()).or_insert(0) += 1;
                    return Ok(Poll::Done(ans));
                }
                if *left == 0 {
                    *turn ^= 1;
                    *left = *quantum;
                }
            },
            Machine::Search { solver, stack } => loop {
                match stack.last_mut() {
                    None => return Ok(Poll::Done(None)),
                    Some(Entry::Nested { machine, .. }) => match machine.run(fuel, ctx)? {
                        Poll::Pending => return Ok(Poll::Pending),
                        Poll::Done(ans) => {
                            let Some(Entry::Nested { chain, .. }) = stack.pop() else { unreachable!() };
                            if let Some(c) = ans {
                                return Ok(Poll::Done(Some(lift(&chain, c))));
                            }
                        }
                    },
                    Some(Entry::Task(_)) => {
                        if *fuel == 0 {
                            return Ok(Poll::Pending);
                        }
                        let Some(Entry::Task(task)) = stack.pop() else { unreachable!() };
                        *fuel -= 1;
                        ctx.visit(task.depth)?;
                        let chain = task.chain.clone();
                        match expand(*solver, task, ctx)? {
                            Expansion::Solved(c) => return Ok(Poll::Done(Some(lift(&chain, c)))),
                            Expansion::Dead => {}
                            Expansion::Push(entries) => stack.extend(entries.into_iter().rev()),
                        }
                    }
                }
            },
        }
    }
}

/// Expands one subproblem. Covers in [`Expansion::Solved`] live in the
/// task's own graph; the caller lifts them through the task chain.
fn expand(solver: Solver, task: Task, ctx: &mut Ctx<'_>) -> Result<Expansion> {
    let Task { inst, simplified, chain, depth } = task;
    if solver == Solver::Maxis {
        return expand_maxis(inst, chain, depth, ctx);
    }
    let (inst, trace) = if simplified { (inst, ReductionTrace::new()) } else { ctx.simp.simplify(&inst) };
    if inst.obviously_infeasible() {
        return Ok(Expansion::Dead);
    }
    if inst.graph().is_empty() {
        return Ok(Expansion::Solved(trace.lift(&VertexSet::new())));
    }
    let chain = link(&chain, trace, VertexSet::new());
    // A nested machine works in this (simplified) graph; lift from it via `chain`.
    let delegate = |ctx: &Ctx<'_>, lower: Solver| -> Expansion {
        let machine = match ctx.cfg.base {
            BasePolicy::LowerOnly => Machine::search(lower, inst.clone(), true, depth),
            BasePolicy::MaxisOnly => Machine::search(Solver::Maxis, inst.clone(), true, depth),
            BasePolicy::Dovetail => {
                let (first, second) = if predicted_cost(ctx.cfg, Solver::Maxis, &inst) < predicted_cost(ctx.cfg, lower, &inst) {
                    (Solver::Maxis, lower)
                } else {
                    (lower, Solver::Maxis)
                };
                Machine::dovetail(first, second, &inst, true, depth, ctx.cfg.quantum)
            }
        };
        Expansion::Push(vec![Entry::Nested { machine: Box::new(machine), chain: chain.clone() }])
    };
    let maxdeg = inst.graph().max_degree();
    let dec = match solver {
        Solver::Agvc => {
            // Simplified graphs have the all-½ vector as their unique LP
            // optimum, so every vertex lies in its support.
            let u = inst.graph().max_degree_vertex().expect("non-empty");
            let dec = split_vertex(&inst, u)?.simplify_children(&ctx.simp);
            ctx.record_branch(&dec, None);
            dec
        }
        Solver::Level(level) => {
            if maxdeg < level.degree() {
                let lower = level.lower().map_or(Solver::Agvc, Solver::Level);
                return Ok(delegate(ctx, lower));
            }
            let dec = if level == Level::L7 {
                let u = inst.graph().max_degree_vertex().expect("non-empty");
                let mut d = split_vertex(&inst, u)?.simplify_children(&ctx.simp);
                d.case = "high-degree-split".into();
                d
            } else {
                select_unchecked(&inst, &ctx.simp)?
            };
            ctx.record_branch(&dec, Some(level));
            dec
        }
        Solver::Maxis => unreachable!(),
    };
    Ok(Expansion::Push(children_entries(dec.children, &chain, depth + 1, true)))
}

fn children_entries(children: Vec<Child>, chain: &Chain, depth: usize, simplified: bool) -> Vec<Entry> {
    children
        .into_iter()
        .map(|c| {
            let chain = link(chain, c.trace, c.include);
            Entry::Task(Task { inst: c.instance, simplified, chain, depth })
        })
        .collect()
}

/// MaxIS stand-in: remove vertices of degree ≤ 2 with P1/P2 on singletons,
/// prune by the trivial degree bound, then split on a maximum-degree vertex.
fn expand_maxis(inst: Instance, chain: Chain, depth: usize, ctx: &mut Ctx<'_>) -> Result<Expansion> {
    let mut inst = inst;
    let mut trace = ReductionTrace::new();
    loop {
        if inst.k() < 0 {
            return Ok(Expansion::Dead);
        }
        let g = inst.graph();
        let Some(v) = g.vertices().find(|&v| g.degree(v) <= 2) else { break };
        let cert = SurplusCert { surplus: g.degree(v) as i64 - 1, indset: VertexSet::single(v) };
        let (next, step) = match cert.surplus {
            1 if !g.is_independent(&g.nbhd_of(v)) => apply_p1_dependent(&inst, &cert)?,
            1 => apply_p2(&inst, &cert)?,
            _ => apply_p1(&inst, &cert)?,
        };
        trace.steps.push(step);
        inst = next;
    }
    let g = inst.graph();
    if g.is_empty() {
        return Ok(Expansion::Solved(trace.lift(&VertexSet::new())));
    }
    if g.m() as i64 > inst.k() * g.max_degree() as i64 {
        return Ok(Expansion::Dead);
    }
    let chain = link(&chain, trace, VertexSet::new());
    let u = g.max_degree_vertex().expect("non-empty");
    let dec = split_vertex(&inst, u)?;
    ctx.record_branch(&dec, None);
    Ok(Expansion::Push(children_entries(dec.children, &chain, depth + 1, false)))
}

/// Natural log of the predicted running time of `solver` on `inst`, from
/// the published rates: `μ ln 2.3146` for AGVC, `n ln c_Δ` for MaxIS-Δ and
/// `aμ + bk` for a level. Only used to order dovetailed solvers.
pub fn predicted_cost(cfg: &SolverConfig, solver: Solver, inst: &Instance) -> f64 {
    let mu = inst.mu().as_f64().max(0.0);
    let k = inst.k().max(0) as f64;
    match solver {
        Solver::Agvc => mu * AGVC_RATE.ln(),
        Solver::Maxis => {
            let d = inst.graph().max_degree().max(3);
            let rate = MAXIS_RATES.iter().find(|&&(dd, _)| dd >= d).map_or(MAXIS_RATES[4].1, |&(_, r)| r);
            inst.n() as f64 * rate.ln()
        }
        Solver::Level(l) => {
            let p = cfg.params_for(l);
            p.a * mu + p.b * k
        }
    }
}

// ---------------------------------------------------------------------------
// Public entry points
// ---------------------------------------------------------------------------

fn finish(inst: &Instance, machine: &mut Machine, ctx: &mut Ctx<'_>) -> Result<Option<VertexSet>> {
    let mut fuel = u64::MAX;
    let cover = match machine.run(&mut fuel, ctx)? {
        Poll::Done(c) => c,
        Poll::Pending => return Err(Error::Internal("search paused with unlimited fuel".into())),
    };
    if let Some(c) = &cover {
        if !inst.graph().is_vertex_cover(c) || c.len() as i64 > inst.k() {
            return Err(Error::Internal(format!("solver returned an invalid cover of size {}", c.len())));
        }
    }
    Ok(cover)
}

fn run_machine(inst: &Instance, mut machine: Machine, cfg: &SolverConfig) -> Result<SolveResult> {
    cfg.validate()?;
    let start = Instant::now();
    let mut ctx = Ctx::new(cfg);
    let out = finish(inst, &mut machine, &mut ctx);
    ctx.stats.wall_time_s = start.elapsed().as_secs_f64();
    match out {
        Ok(cover) => Ok(SolveResult { feasible: cover.is_some(), cover, stats: ctx.stats }),
        Err(Error::Budget { nodes, .. }) => Err(Error::Budget { nodes, stats: Box::new(ctx.stats) }),
        Err(e) => Err(e),
    }
}

/// Decides whether `inst` has a vertex cover of size at most `k` with the
/// given level's solver.
pub fn solve_decision(inst: &Instance, level: Level, cfg: &SolverConfig) -> Result<SolveResult> {
    solve_with(Solver::Level(level), inst, cfg)
}

/// Runs any single solver on `inst`.
pub fn solve_with(solver: Solver, inst: &Instance, cfg: &SolverConfig) -> Result<SolveResult> {
    run_machine(inst, Machine::search(solver, inst.clone(), false, 0), cfg)
}

/// MaxIS stand-in: exact branch-and-reduce on a maximum-degree vertex.
pub fn base_maxis(inst: &Instance, cfg: &SolverConfig) -> Result<SolveResult> {
    solve_with(Solver::Maxis, inst, cfg)
}

/// AGVC stand-in: simplify, then split on a vertex of the all-½ LP support;
/// infeasible at once when `μ < 0`.
pub fn base_agvc(inst: &Instance, cfg: &SolverConfig) -> Result<SolveResult> {
    solve_with(Solver::Agvc, inst, cfg)
}

/// Runs `s1` and `s2` in alternating quanta of `cfg.quantum` nodes,
/// `s1` first; the first answer wins.
pub fn dovetail(s1: Solver, s2: Solver, inst: &Instance, cfg: &SolverConfig) -> Result<SolveResult> {
    run_machine(inst, Machine::dovetail(s1, s2, inst, false, 0, cfg.quantum), cfg)
}

/// Minimum vertex cover by ascending `k` from `⌈λ⌉` with `cfg.level`.
pub fn solve_optimum(g: &Graph, cfg: &SolverConfig) -> Result<Optimum> {
    cfg.validate()?;
    let start = Instant::now();
    let mut ctx = Ctx::new(cfg);
    let mut k = crate::lp::lambda(g).ceil();
    let out = loop {
        let inst = Instance::new(g.clone(), k);
        let mut machine = Machine::search(Solver::Level(cfg.level), inst.clone(), false, 0);
        match finish(&inst, &mut machine, &mut ctx) {
            Ok(Some(cover)) => break Ok((k, cover)),
            Ok(None) if k >= g.n() as i64 => break Err(Error::Internal("no cover found up to k = n".into())),
            Ok(None) => k += 1,
            Err(e) => break Err(e),
        }
    };
    ctx.stats.wall_time_s = start.elapsed().as_secs_f64();
    match out {
        Ok((opt, cover)) => Ok(Optimum { opt, cover, stats: ctx.stats }),
        Err(Error::Budget { nodes, .. }) => Err(Error::Budget { nodes, stats: Box::new(ctx.stats) }),
        Err(e) => Err(e),
    }
}
