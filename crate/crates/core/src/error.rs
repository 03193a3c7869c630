use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ambient dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("division by zero: {0}")]
    DivisionByZero(&'static str),

    #[error("invalid substitution: {0}")]
    InvalidSubstitution(String),

    #[error("series is not invertible: {0}")]
    NotInvertible(String),

    #[error("exponential does not converge q-adically: constant term is {0}")]
    NonconvergentExponential(String),

    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),

    #[error("J-form contract violated: {0}")]
    ContractViolation(String),

    #[error("model/series mismatch: {0}")]
    ModelMismatch(String),

    #[error("unsupported genus {0}; only genus zero is implemented")]
    UnsupportedGenus(u32),

    #[error("unsupported curve degree {0}; localization handles d <= 2")]
    UnsupportedDegree(u32),

    #[error("singular torus weights: {0}")]
    SingularWeights(String),

    #[error("missing instanton number for degree {0}")]
    MissingDegree(u32),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}
