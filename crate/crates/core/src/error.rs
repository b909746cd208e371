use thiserror::Error;

use crate::core::Edge;
use crate::engine::Probe;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid edge: {0}")]
    InvalidEdge(String),
    #[error("rank {rank} out of range for C({n},{k})")]
    RankOutOfRange { rank: u64, n: usize, k: usize },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("index {index} out of range for a structure with {len} edges")]
    IndexError { index: usize, len: usize },
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("need at least {needed} vertices, have {have}")]
    TooFewVertices { needed: usize, have: usize },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("connector edges overlap")]
    NotDisjoint,
    #[error("cannot complement: {0}")]
    CannotComplement(String),
    #[error("merge failed: {0}")]
    MergeBug(String),
    #[error("construction error in {op}: {detail}")]
    Construction {
        op: &'static str,
        detail: String,
        candidate: Option<Edge>,
        trace: Vec<Probe>,
    },
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("format error: {0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Why an edge sequence is not a loose path or cycle.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum InvalidStructure {
    #[error("empty edge sequence")]
    Empty,
    #[error("a cycle needs at least two edges")]
    TooShort,
    #[error("edge {0} has size {1}, expected {2}")]
    WrongEdgeSize(usize, usize, usize),
    #[error("edges {0} and {1} share {2} vertices, expected {3}")]
    BadOverlap(usize, usize, usize, usize),
    #[error("edges {0} and {1} must be disjoint")]
    NotDisjoint(usize, usize),
    #[error("expected {expected} distinct vertices, found {found}")]
    VertexCount { expected: usize, found: usize },
}
