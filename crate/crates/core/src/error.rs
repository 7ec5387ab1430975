use thiserror::Error;

use crate::graph::EdgeId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("no spanning tree: graph is disconnected")]
    Disconnected,
    #[error("invalid tree: {0}")]
    InvalidTree(String),
    #[error("edge already in tree: {0}")]
    EdgeInTree(EdgeId),
    #[error("illegal move: edge {remove} is not on the tree path of edge {add}")]
    IllegalMove { add: EdgeId, remove: EdgeId },
    #[error("cost vector has length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("negative cost {value} on edge {edge}")]
    NegativeCost { edge: EdgeId, value: i64 },
    #[error("recovery parameter k={k} outside [0, {max}]")]
    InvalidRecovery { k: usize, max: usize },
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("optimality would break: shift {delta} exceeds delta* = {limit}")]
    OptimalityWouldBreak { delta: i64, limit: i64 },
    #[error("instance too large for oracle: {0}")]
    TooLarge(String),
    #[error("integer overflow while {0}")]
    Overflow(&'static str),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}
