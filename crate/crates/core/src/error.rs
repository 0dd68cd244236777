use thiserror::Error;

use crate::hypergraph::{Edge, Vertex};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("uniformity must be at least 2, got {0}")]
    InvalidUniformity(usize),

    #[error("invalid edge: {0}")]
    InvalidEdge(String),

    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },

    #[error("hypergraph has no vertices")]
    EmptyVertexSet,

    #[error("uniformity mismatch: pattern is {pattern}-uniform, host is {host}-uniform")]
    UniformityMismatch { pattern: usize, host: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid list assignment: {0}")]
    InvalidLists(String),

    #[error("coloring does not cover host edge {0}")]
    IncompleteColoring(Edge),

    #[error("pattern has no edges")]
    EdgelessPattern,

    #[error("pattern needs at least 2 edges, has {0}")]
    TooFewEdges(usize),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("search budget exhausted after {nodes} nodes")]
    BudgetExceeded { nodes: u64 },

    #[error("parameters fail the local lemma condition (e*p*(d+1) = {condition_value:.6} > 1)")]
    Infeasible { condition_value: f64 },

    #[error("resampling limit of {limit} reached with {} violated edges", violated.len())]
    ResampleLimit { limit: u64, violated: Vec<Edge> },

    #[error("retry limit of {limit} reached; best attempt left {best_uncovered} edges uncovered")]
    RetryLimit { limit: u64, best_uncovered: usize },

    #[error("color class map is not a homomorphism on edge {edge} (color {color})")]
    Unsound { edge: Edge, color: u32 },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
