use thiserror::Error;

use crate::graph::VertexId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid vertex name {0:?}: names must match [A-Za-z0-9_]+")]
    InvalidName(String),

    #[error("vertex {0} declared more than once")]
    DuplicateVertex(VertexId),

    #[error("edge {0} -> {1} listed more than once")]
    DuplicateEdge(VertexId, VertexId),

    #[error("self-loop on vertex {0}")]
    SelfLoop(VertexId),

    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),

    #[error("invalid separation statement: {0}")]
    InvalidStatement(String),

    #[error("graph has {n} vertices, exceeding the oracle cap of {cap}")]
    OracleCapExceeded { n: usize, cap: usize },

    #[error("input graph contains a directed cycle")]
    CyclicInput,

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid generator config: {0}")]
    InvalidConfig(String),
}
