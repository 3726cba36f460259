use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("unsupported dimension d = {d}: {reason}")]
    UnsupportedDimension { d: usize, reason: &'static str },

    #[error("resource budget exceeded: {requested} points requested, budget is {budget}")]
    Budget { requested: u128, budget: usize },

    #[error("precondition failed: {message} (minimum valid value {minimum})")]
    Precondition { message: String, minimum: f64 },

    #[error("insufficient Fourier resolution: {0}")]
    Resolution(String),

    #[error("time range too short: |u| at boundary is {ratio:.3e} of peak (limit {limit:.1e})")]
    Truncation { ratio: f64, limit: f64 },

    #[error("fit window error: {0}")]
    Window(String),

    #[error("fit rejected: residual {residual:.4} exceeds threshold {threshold}")]
    FitRejected { residual: f64, threshold: f64 },

    #[error("divergent integral: {0}")]
    Divergent(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
