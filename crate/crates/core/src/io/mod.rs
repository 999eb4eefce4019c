//! Dataset loading, synthetic data and JSON reports.

mod csv_dense;
mod report_file;
mod svmlight;
pub mod synth;

use std::path::Path;

pub use csv_dense::{load_csv, parse_csv, write_csv};
pub use report_file::{
    read_report, sparse_pairs, write_report, ReportFile, ScreenRecord, SolutionRecord, Timings, SCHEMA_VERSION,
};
pub use svmlight::{load_svmlight, parse_svmlight, write_svmlight};

use crate::error::Result;
use crate::matrix::SparseColMatrix;

/// Loads a dataset, choosing the format from the file extension: `.csv` is
/// dense CSV (response first), anything else is svmlight.
pub fn load_dataset(path: &Path, csv_header: bool) -> Result<(SparseColMatrix, Vec<f64>)> {
    if is_csv(path) {
        load_csv(path, csv_header)
    } else {
        load_svmlight(path)
    }
}

pub fn write_dataset(path: &Path, x: &SparseColMatrix, response: &[f64]) -> Result<()> {
    if is_csv(path) {
        write_csv(path, x, response)
    } else {
        write_svmlight(path, x, response)
    }
}

fn is_csv(path: &Path) -> bool {
    path.extension()
        .and_then(|e| e.to_str())
        .is_some_and(|e| e.eq_ignore_ascii_case("csv"))
}

/// Maps a response to ±1 labels (`> 0` → +1, else −1). The flag reports
/// whether any value was not already exactly ±1.
pub fn to_labels(response: &[f64]) -> (Vec<f64>, bool) {
    let mut remapped = false;
    let labels = response
        .iter()
        .map(|&v| {
            if v != 1.0 && v != -1.0 {
                remapped = true;
            }
            if v > 0.0 {
                1.0
            } else {
                -1.0
            }
        })
        .collect();
    (labels, remapped)
}
