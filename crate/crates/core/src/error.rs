use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("input contains no samples")]
    EmptyInput,

    #[error("sample {index} is not finite ({value})")]
    NonFiniteInput { index: usize, value: f64 },

    #[error("quantile level must lie in (0, 1), got {0}")]
    InvalidLevel(String),

    #[error("balance function is undefined at sample value {q}")]
    QAtSample { q: f64 },

    #[error("solver stopped after {iterations} iterations with bracket width {bracket_width:e}")]
    ToleranceNotReached { iterations: u32, bracket_width: f64 },

    #[error("unsupported epsilon {eps:e}: must be finite and at least {min:e}")]
    UnsupportedEpsilon { eps: f64, min: f64 },

    #[error("invalid epsilon schedule: {0}")]
    InvalidSchedule(String),

    #[error("tolerance must be finite and positive, got {0}")]
    InvalidTolerance(f64),

    #[error("grid resolution must be finite and positive, got {0}")]
    InvalidResolution(f64),

    #[error("grid of {points} points exceeds the limit of {limit}")]
    GridTooFine { points: u64, limit: u64 },

    #[error("at epsilon {eps:e}: {source}")]
    AtEpsilon {
        eps: f64,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    /// The underlying error with any `AtEpsilon` annotations peeled off.
    pub fn root(&self) -> &Error {
        match self {
            Error::AtEpsilon { source, .. } => source.root(),
            other => other,
        }
    }
}
