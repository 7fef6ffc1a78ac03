use thiserror::Error;

use crate::edge::Edge;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: cannot join a dimension-{left} network with a dimension-{right} network")]
    DimensionMismatch { left: usize, right: usize },

    #[error("invalid matching: {0}")]
    InvalidMatching(String),

    #[error("dimension {requested} exceeds the supported maximum {max}")]
    DimensionTooLarge { requested: usize, max: usize },

    #[error("vertex {0} is out of range")]
    UnknownVertex(u32),

    #[error("edge {0} is not present in the graph")]
    UnknownEdge(Edge),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("isomorphism check supports at most {max} vertices, got {got}")]
    IsomorphismTooLarge { got: usize, max: usize },

    #[error("flow certification failed: {0}")]
    FlowCertification(String),

    #[error("witness construction invariant failed: {0}")]
    WitnessInvariant(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
