//! Reference solvers and solution post-processing.

mod hinge;
mod lasso;
mod logreg;
mod thresholding;

pub use hinge::solve_hinge;
pub use lasso::{duality_gap_lasso, lasso_dual_point, solve_lasso};
pub use logreg::{duality_gap_logreg, solve_logreg, solve_logreg_traced};
pub use thresholding::{kkt_threshold, threshold_c_trace, tr_threshold, KKT_FACTOR};

use crate::error::{Error, Result};

/// Stopping rule shared by the solvers.
#[derive(Debug, Clone, PartialEq)]
pub struct SolveOptions {
    /// Target for `duality_gap / objective`.
    pub tol: f64,
    /// Cap on sweeps, gradient steps or pivots.
    pub max_iters: usize,
    /// Starting point; zero when absent.
    pub warm_w: Option<Vec<f64>>,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            tol: 1e-9,
            max_iters: 100_000,
            warm_w: None,
        }
    }
}

impl SolveOptions {
    pub fn with_tol(tol: f64) -> Self {
        Self {
            tol,
            ..Self::default()
        }
    }

    pub(crate) fn validate(&self, n: usize) -> Result<()> {
        if !(self.tol > 0.0) {
            return Err(Error::InvalidArgument(format!("tol must be > 0, got {}", self.tol)));
        }
        if self.max_iters == 0 {
            return Err(Error::InvalidArgument("max_iters must be >= 1".into()));
        }
        if let Some(w) = &self.warm_w {
            if w.len() != n {
                return Err(Error::Dimension(format!(
                    "warm start has {} entries, expected {n}",
                    w.len()
                )));
            }
            if w.iter().any(|v| !v.is_finite()) {
                return Err(Error::InvalidArgument("warm start has non-finite entries".into()));
            }
        }
        Ok(())
    }

    pub(crate) fn start(&self, n: usize) -> Vec<f64> {
        self.warm_w.clone().unwrap_or_else(|| vec![0.0; n])
    }
}

pub(crate) fn check_lambda(lambda: f64) -> Result<()> {
    if lambda > 0.0 && lambda.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("lambda must be positive and finite, got {lambda}")))
    }
}

pub(crate) fn soft_threshold(z: f64, t: f64) -> f64 {
    if z > t {
        z - t
    } else if z < -t {
        z + t
    } else {
        0.0
    }
}
