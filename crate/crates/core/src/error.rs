use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("field mismatch: cannot combine real and complex operands")]
    FieldMismatch,

    #[error("basis vectors are linearly dependent (residual {residual:.3e} below tolerance)")]
    DependentBasis { residual: f64 },

    #[error("singular value decomposition did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("grade mismatch: {left} vs {right}")]
    GradeMismatch { left: usize, right: usize },

    #[error("grade {grade} exceeds ambient dimension {ambient}")]
    GradeOverflow { grade: usize, ambient: usize },

    #[error("operation is undefined for the zero subspace")]
    ZeroSubspace,

    #[error("operation is undefined for the zero vector")]
    ZeroVector,

    #[error("operation is undefined for a zero blade")]
    ZeroBlade,

    #[error("expected a line, got a subspace of dimension {dim}")]
    NotALine { dim: usize },

    #[error("subspaces {first} and {second} are not orthogonal (overlap {overlap:.3e})")]
    NotOrthogonal { first: usize, second: usize, overlap: f64 },

    #[error("partition dimensions sum to {sum}, ambient dimension is {ambient}")]
    IncompletePartition { sum: usize, ambient: usize },

    #[error("index {index} out of range (size {len})")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("invalid multi-index: {0}")]
    InvalidMultiIndex(String),

    #[error("invalid sampled set: {0}")]
    InvalidSet(String),

    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
