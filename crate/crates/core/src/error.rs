use std::fmt;

use crate::digraph::VertexId;

/// Errors produced by graph construction, packing and reductions.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("arc {index}: {reason}")]
    InvalidArc { index: usize, reason: ArcDefect },

    #[error("vertex {vertex} out of range for digraph with {vertex_count} vertices")]
    VertexOutOfRange {
        vertex: VertexId,
        vertex_count: usize,
    },

    #[error("arc id {arc} out of range for digraph with {arc_count} arcs")]
    ArcOutOfRange { arc: usize, arc_count: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("digraph is not regular: vertex {vertex} has in-degree {in_degree} and out-degree {out_degree}, expected {expected}")]
    NotRegular {
        vertex: VertexId,
        in_degree: usize,
        out_degree: usize,
        expected: usize,
    },

    #[error("root vector is infeasible: vertex set {witness:?} has too few entering arcs")]
    RootVectorViolation { witness: Vec<VertexId> },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("oracle budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("internal defect: {0}")]
    InternalDefect(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArcDefect {
    SelfLoop,
    EndpointOutOfRange,
}

impl fmt::Display for ArcDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArcDefect::SelfLoop => f.write_str("self-loop"),
            ArcDefect::EndpointOutOfRange => f.write_str("endpoint out of range"),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
