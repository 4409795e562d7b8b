use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix has rank {rank}, expected {expected}")]
    RankDeficient { rank: usize, expected: usize },

    #[error("point is not in the Schubert variety S_{r} (intersection dimension {intersection_dim})")]
    NotInSchubert { r: usize, intersection_dim: usize },

    #[error("Gröbner computation exceeded its budget of {budget} reduction steps")]
    Diverged { budget: u64 },

    #[error("{nvars} variables exceed the elimination cap of {cap}")]
    TooManyVariables { nvars: usize, cap: usize },

    #[error("empty point set")]
    EmptyPointSet,

    #[error("all coordinate functions vanish identically along the curve")]
    ZeroCurve,

    #[error("non-generic sample: {0}")]
    NonGenericSample(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameters(msg.into())
}
