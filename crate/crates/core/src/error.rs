use thiserror::Error;

/// Errors raised by the algebra, lattice and classification layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("Gram matrix not symmetric: entry ({row},{col}) = {upper} but ({col},{row}) = {lower}")]
    NotSymmetric {
        row: usize,
        col: usize,
        upper: String,
        lower: String,
    },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("form is degenerate (determinant 0)")]
    Degenerate,

    #[error("form is not unimodular (determinant {det})")]
    NotUnimodular { det: String },

    #[error("search space of {points} points exceeds the limit of {limit}")]
    SearchTooLarge { points: String, limit: u64 },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("invalid manifold data: {0}")]
    InvalidManifold(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("not tabulated: {0}")]
    NotTabulated(String),

    #[error("malformed table data: {0}")]
    TableFormat(String),

    #[error("internal consistency check failed: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
