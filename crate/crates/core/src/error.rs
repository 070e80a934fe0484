use thiserror::Error;

/// Errors raised by driver construction, the Loewner solver and the diagnostics.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("time {t} lies outside the driver domain [0, {horizon}]")]
    Domain { t: f64, horizon: f64 },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("d-similar boundary piece violates V(d^2) = d*V(1) (residual {residual:e})")]
    Construction { residual: f64 },

    #[error("resolution failure: {0}")]
    Resolution(String),

    #[error("point swallowed by the hull at step {step}")]
    Swallowed { step: usize },

    #[error("point lies on the hull (reverse step {step})")]
    OnHull { step: usize },

    #[error("welding bisection could not bracket hit time s = {s}")]
    Inconsistent { s: f64 },

    #[error("tip iteration reached the real axis after {iterations} iterations")]
    TipOnBoundary { iterations: usize },

    #[error("tip iteration is not contracting (ratio {ratio:.4} after {iterations} iterations)")]
    TipDivergence { ratio: f64, iterations: usize },

    #[error("degenerate curve: {0}")]
    Degenerate(String),

    #[error("malformed input: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
