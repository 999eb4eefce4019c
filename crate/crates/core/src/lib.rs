//! Safe feature elimination for sparse supervised learning.
//!
//! Screening tests for the LASSO (with intercept and elastic-net variants),
//! hinge-loss SVM and logistic regression, reference solvers, solution
//! thresholding and the workflows built on top of them.

pub mod cli;
pub mod error;
pub mod instance;
pub mod io;
pub mod matrix;
pub mod report;
pub mod safe_lasso;
pub mod safe_logreg;
pub mod safe_svm;
pub mod solvers;
pub mod workflows;

pub use error::{Error, Result};
pub use instance::{LabeledData, LassoInstance, LassoVariant, LogRegInstance, SvmInstance, WarmStart};
pub use matrix::{CenteredMatrix, Design, SparseColMatrix};
pub use report::{ScreeningReport, SolverResult};
