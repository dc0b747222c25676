//! Exact parameterized vertex cover by branch-and-reduce over the LP-surplus
//! measure `φ = aμ + bk`, with an audit engine that checks every branching
//! step against its claimed measure drop.

pub mod branch;
pub mod cli;
pub mod error;
pub mod gen;
pub mod graph;
pub mod half;
pub mod io;
pub mod lp;
pub mod oracle;
pub mod reduce;
pub mod solver;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{Graph, Mode, PatternKind, PatternMatch, Vertex, VertexSet};
pub use half::Half;
pub use lp::{HalfIntegralSolution, Instance, Shadow, SurplusCert};
pub use branch::{BranchDecision, BranchSeq, Drop, MeasureParams, RuleTag};
pub use solver::{Level, SolveResult, SolveStats, SolverConfig};
pub use verify::{AuditRecord, Profile};
