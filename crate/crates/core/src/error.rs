use thiserror::Error;

/// Errors raised by the screening, solving and I/O layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("index {index} out of range (len {len})")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid data: {0}")]
    InvalidData(String),

    /// A radicand in the dual geometry went negative beyond round-off, which
    /// means the warm start is not consistent with the problem data.
    #[error("invalid dual geometry: {0}")]
    InvalidGeometry(String),

    #[error("solver did not converge after {iterations} iterations (gap {gap:e})")]
    NotConverged { iterations: usize, gap: f64 },

    #[error("numerical failure: {0}")]
    Numerical(String),

    /// No bisection iterate met the feature budget.
    #[error("feature budget {budget} unattainable: best lambda {best_lambda:e} kept {best_kept}")]
    BudgetInfeasible {
        budget: usize,
        best_lambda: f64,
        best_kept: usize,
    },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
