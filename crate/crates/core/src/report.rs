use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Outcome of one screening pass at a fixed penalty.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScreeningReport {
    pub lambda: f64,
    /// Sorted indices of features proven to be zero at the optimum.
    pub eliminated: Vec<usize>,
    /// Sorted complement of `eliminated`.
    pub kept: Vec<usize>,
    /// Lower bound on the optimal value used by the test.
    pub gamma_used: f64,
    /// Per-feature test value (indexed by feature), when requested.
    pub certificates: Option<Vec<f64>>,
}

/// Guard band: a feature is eliminated only if `λ − T > REL_GUARD·λ`.
pub const REL_GUARD: f64 = 1e-10;

impl ScreeningReport {
    /// Builds the report from per-feature test values `T_k`; feature k is
    /// eliminated iff `λ − T_k > REL_GUARD·λ`. Non-finite values are kept.
    pub fn from_tests(lambda: f64, gamma_used: f64, tests: Vec<f64>, keep_certificates: bool) -> Self {
        let mut eliminated = Vec::new();
        let mut kept = Vec::new();
        for (k, &t) in tests.iter().enumerate() {
            if t.is_finite() && lambda - t > REL_GUARD * lambda {
                eliminated.push(k);
            } else {
                kept.push(k);
            }
        }
        Self {
            lambda,
            eliminated,
            kept,
            gamma_used,
            certificates: keep_certificates.then_some(tests),
        }
    }

    pub fn all_eliminated(lambda: f64, gamma_used: f64, n: usize) -> Self {
        Self {
            lambda,
            eliminated: (0..n).collect(),
            kept: Vec::new(),
            gamma_used,
            certificates: None,
        }
    }

    pub fn n_features(&self) -> usize {
        self.eliminated.len() + self.kept.len()
    }

    pub fn is_eliminated(&self, k: usize) -> bool {
        self.eliminated.binary_search(&k).is_ok()
    }
}

/// Output of a reference solver.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverResult {
    pub w: Vec<f64>,
    /// Unpenalized intercept (zero for the LASSO family).
    pub intercept: f64,
    pub objective: f64,
    /// Certified primal-minus-dual gap, `>= 0`.
    pub duality_gap: f64,
    /// Outer iterations: coordinate sweeps, gradient steps or simplex pivots.
    pub iterations: usize,
    /// Individual coordinate updates (sweeps × features for coordinate descent).
    pub coordinate_updates: usize,
    pub converged: bool,
}

impl SolverResult {
    /// `gap / (objective − gap)`: an upper bound on relative suboptimality.
    pub fn relative_gap(&self) -> f64 {
        let lower = self.objective - self.duality_gap;
        if lower > 0.0 {
            self.duality_gap / lower
        } else if self.duality_gap == 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    }

    /// Turns a non-converged result into an error.
    pub fn require_converged(self) -> Result<Self> {
        if self.converged {
            Ok(self)
        } else {
            Err(Error::NotConverged {
                iterations: self.iterations,
                gap: self.duality_gap,
            })
        }
    }
}
