use thiserror::Error;

/// Errors surfaced by the library layer.
#[derive(Debug, Error)]
pub enum CoreError {
    #[error("division by zero scalar")]
    DivisionByZero,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("not a Calogero-Moser pair: rank([X,Z]+I) = {rank}, expected 1")]
    NotCalogeroMoser { rank: usize },
    #[error("non-regular point: {0}")]
    NonRegular(String),
    #[error("repeated lambda entries in chart")]
    RepeatedLambda,
    #[error("polynomial has a coefficient with nonzero imaginary part")]
    NonRealCoefficient,
    #[error("root finder failed to converge after {0} iterations")]
    RootFindingFailed(usize),
    #[error("spectrum is not exactly representable over the rationals")]
    NonRationalSpectrum,
    #[error("linearly dependent basis")]
    DependentBasis,
    #[error("matrix is singular")]
    Singular,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("internal error: {0}")]
    Internal(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, CoreError>;
