use alloc::string::String;

use crate::exact::Integer;

/// Errors raised by the lattice and reformulation pipeline.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// An argument is outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// The vectors (columns) or rows are linearly dependent. `index` is the
    /// zero-based position of the first offending vector.
    #[error("rank deficient: {what} {index} is linearly dependent on its predecessors")]
    RankDeficient { what: &'static str, index: usize },

    /// `A x = b` has no integer solution; `A x = scale_k * b` does.
    #[error("system has no integer solution (A x = {scale_k} b is solvable)")]
    Infeasible { scale_k: Integer },

    /// An exact division that must succeed by construction did not.
    #[error("integrality error: {0}")]
    Integrality(String),

    /// A structural assumption of the knapsack analysis is violated.
    #[error("invalid decomposition: {0}")]
    Validation(String),

    /// A post-hoc invariant check failed.
    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("resource limit: {0}")]
    Resource(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
