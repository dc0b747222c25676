//! Crate-wide error type.

use thiserror::Error;

/// Errors raised by graph operations, reductions, solvers and the CLI.
#[derive(Debug, Error)]
pub enum Error {
    /// A vertex id that is not present in the graph.
    #[error("unknown vertex {0}")]
    UnknownVertex(u32),
    /// An edge from a vertex to itself.
    #[error("self-loop at vertex {0}")]
    SelfLoop(u32),
    /// A set that was required to be independent contains an edge.
    #[error("vertex set is not independent")]
    NotIndependent,
    /// A set that was required to be non-empty is empty.
    #[error("vertex set is empty")]
    EmptySet,
    /// An operation that needs at least one vertex was given the empty graph.
    #[error("graph is empty")]
    EmptyGraph,
    /// Two sets that must be disjoint overlap.
    #[error("sets overlap at vertex {0}")]
    Overlap(u32),
    /// A rule or operation was applied outside its precondition.
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// Malformed graph text.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    /// The brute-force oracle refuses graphs above its size guard.
    #[error("graph has {0} vertices, above the oracle guard")]
    TooLarge(usize),
    /// The branch-node budget ran out.
    #[error("node budget exhausted after {nodes} nodes")]
    Budget {
        /// Nodes visited before giving up.
        nodes: u64,
        /// Statistics of the partial search.
        stats: Box<crate::solver::SolveStats>,
    },
    /// An internal consistency check failed.
    #[error("internal error: {0}")]
    Internal(String),
    /// Bad command-line usage.
    #[error("usage: {0}")]
    Usage(String),
    /// I/O failure.
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
