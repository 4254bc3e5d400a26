use thiserror::Error;

/// Errors raised anywhere in the crate.
#[derive(Debug, Error)]
pub enum MoprlError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("singular or ill-conditioned system (condition estimate {cond:.3e})")]
    IllConditioned { cond: f64 },

    #[error("quadrature did not converge: {0}")]
    NonConvergent(String),

    #[error("insufficient moments: need order {needed}, table holds {available}")]
    InsufficientMoments { needed: usize, available: usize },

    #[error("evaluation point {re}{im:+}i is too close to the real axis")]
    NearAxis { re: f64, im: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, MoprlError>;
