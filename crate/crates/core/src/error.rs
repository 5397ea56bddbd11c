use std::io;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("graph has no edges")]
    EmptyGraph,

    #[error("edge id {id} out of range (graph has {edge_count} edges)")]
    InvalidEdge { id: usize, edge_count: usize },

    #[error("vertex {id} out of range (graph has {vertex_count} vertices)")]
    InvalidVertex { id: usize, vertex_count: usize },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("infeasible budget: {0}")]
    Budget(String),

    #[error("reachable pair set was computed for k={expected}, got k={got}")]
    KMismatch { expected: u32, got: u32 },

    #[error("instance too large for exhaustive search: {0}")]
    TooLarge(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

/// Rejects spreading parameters below 2; k = 1 makes every edge its own cut.
pub(crate) fn check_k(k: u32) -> Result<()> {
    if k < 2 {
        return Err(Error::Parameter(format!(
            "spreading parameter k must be at least 2, got {k}"
        )));
    }
    Ok(())
}
