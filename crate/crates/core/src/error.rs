use thiserror::Error;

/// Errors raised by constructors and structural checks.
///
/// Witness vectors are carried pre-rendered so the error stays independent of
/// the scalar type.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix {index} is not skew-symmetric at ({row}, {col})")]
    NotSkew { index: usize, row: usize, col: usize },

    #[error("{what} is degenerate; kernel witness {witness}")]
    Degenerate { what: String, witness: String },

    #[error("{what} rejected; witness {witness}")]
    Rejected { what: String, witness: String },

    #[error("structure constants are not antisymmetric at [e{alpha}, e{beta}] component {gamma}")]
    NotAntisymmetric { alpha: usize, beta: usize, gamma: usize },

    #[error("vector {0} is not in the domain subspace")]
    NotInDomain(String),

    #[error("linear map is not well defined on the given generators")]
    IllDefined,

    #[error("generators do not span the domain (rank {rank} of {dim})")]
    Underdetermined { rank: usize, dim: usize },

    #[error("affine degree exceeded in {0}")]
    DegreeOverflow(String),

    #[error("{0} requires exact arithmetic")]
    ExactRequired(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("internal assertion failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
