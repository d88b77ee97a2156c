use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error in {func}: {msg}")]
    Domain { func: &'static str, msg: String },

    #[error("{func} has a pole at {x}")]
    Pole { func: &'static str, x: f64 },

    #[error("invalid size: {0}")]
    Size(String),

    #[error("index {index} out of range for dimension {n}")]
    Index { index: usize, n: usize },

    #[error("quadrature did not converge{}: estimate {value:e}, error estimate {err:e} after {evaluations} evaluations",
        .context.map(|c| format!(" ({c})")).unwrap_or_default())]
    Quadrature {
        context: Option<&'static str>,
        value: f64,
        err: f64,
        evaluations: usize,
    },

    #[error("{what} failed to converge")]
    Convergence { what: &'static str },

    #[error("matrix dimension {n} exceeds the dense limit {limit}")]
    DenseLimit { n: usize, limit: usize },

    #[error("function undefined at eigenvalue {0}")]
    Undefined(f64),

    #[error("bound {kind} is not applicable: {reason}")]
    Inapplicable { kind: &'static str, reason: String },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("insufficient data: {0}")]
    Insufficient(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(func: &'static str, msg: impl Into<String>) -> Error {
    Error::Domain { func, msg: msg.into() }
}
