use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian: entry ({row},{col}) is not the conjugate of ({col},{row})")]
    NotHermitian { row: usize, col: usize },

    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("bidegree mismatch: {0}")]
    DegreeMismatch(String),

    #[error("matrix is not positive definite")]
    NotPositiveDefinite,

    #[error("matrix is not positive semidefinite")]
    NotPsd,

    #[error("basis vectors are linearly dependent")]
    DependentBasis,

    #[error("invalid rational literal {0:?}")]
    BadRational(String),

    #[error("floating-point input is not accepted: {0}")]
    FloatRejected(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid rank table: {0}")]
    InvalidRankTable(String),

    #[error("not a valid rank table: rank of subset {subset:?} is {rank}, below offset {offset}")]
    NegativeRank { subset: Vec<usize>, rank: usize, offset: usize },

    #[error("internal arithmetic inconsistency: {0}")]
    Arithmetic(String),

    #[error("generator gave up after {0} draws")]
    GeneratorExhausted(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
