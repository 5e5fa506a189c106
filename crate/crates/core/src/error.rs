use thiserror::Error;

use crate::graph::GenTreeRejection;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graph must have at least one vertex")]
    EmptyGraph,
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    OutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph is not a tree")]
    NotATree,
    #[error("tree is a path (no major vertex); operation requires a tree which is not a path")]
    IsAPath,
    #[error("graph is not a path")]
    NotAPath,
    #[error("graph is not a star")]
    NotAStar,
    #[error("tree is a star")]
    IsAStar,
    #[error("tree is not a spider (it has {exterior_majors} exterior major vertices, expected exactly 1)")]
    NotASpider { exterior_majors: usize },
    #[error("tree has {leaves} leaves, at least 4 required")]
    TooFewLeaves { leaves: usize },
    #[error("graph is not a generalized tree: {0}")]
    NotGeneralizedTree(GenTreeRejection),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("invalid vertex set: {0}")]
    InvalidSet(String),
    #[error("graph on {n} vertices exceeds the exact-search limit of {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("constructed partition failed verification: {0}")]
    VerificationFailed(String),
    #[error("invalid range: {0}")]
    InvalidRange(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}
