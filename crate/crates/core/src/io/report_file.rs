use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::workflows::StageLog;

pub const SCHEMA_VERSION: u32 = 1;

/// A solution vector stored as sorted `(index, value)` pairs of its nonzeros.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionRecord {
    pub lambda: f64,
    pub solution: Vec<(usize, f64)>,
    #[serde(default)]
    pub intercept: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub objective: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gap: Option<f64>,
}

impl SolutionRecord {
    pub fn dense(&self, n: usize) -> Result<Vec<f64>> {
        let mut w = vec![0.0; n];
        for &(k, v) in &self.solution {
            if k >= n {
                return Err(Error::IndexOutOfRange { index: k, len: n });
            }
            w[k] = v;
        }
        Ok(w)
    }
}

/// Screening outcome at one penalty (the `bench` command).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScreenRecord {
    pub lambda: f64,
    pub kept_count: usize,
    pub eliminated_count: usize,
    pub seconds: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub total_seconds: f64,
}

/// JSON document written by every command.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportFile {
    pub schema: u32,
    pub command: String,
    pub task: String,
    /// Number of features.
    pub n: usize,
    /// Number of samples.
    pub m: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    /// Penalty the `--lambda-frac` option is relative to.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda_ref: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eliminated_count: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kept_indices: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificates: Option<Vec<f64>>,
    #[serde(default)]
    pub stages: Vec<StageLog>,
    #[serde(default)]
    pub solutions: Vec<SolutionRecord>,
    #[serde(default)]
    pub screening: Vec<ScreenRecord>,
    #[serde(default)]
    pub timings: Timings,
    #[serde(default)]
    pub config: serde_json::Value,
}

impl ReportFile {
    pub fn new(command: &str, task: &str, n: usize, m: usize) -> Self {
        Self {
            schema: SCHEMA_VERSION,
            command: command.into(),
            task: task.into(),
            n,
            m,
            lambda: None,
            lambda_ref: None,
            eliminated_count: None,
            kept_indices: None,
            certificates: None,
            stages: Vec::new(),
            solutions: Vec::new(),
            screening: Vec::new(),
            timings: Timings::default(),
            config: serde_json::Value::Null,
        }
    }
}

/// Nonzeros of `w` as `(index, value)` pairs.
pub fn sparse_pairs(w: &[f64]) -> Vec<(usize, f64)> {
    w.iter().enumerate().filter(|(_, v)| **v != 0.0).map(|(k, &v)| (k, v)).collect()
}

pub fn write_report(path: &Path, report: &ReportFile) -> Result<()> {
    let mut out = BufWriter::new(File::create(path)?);
    serde_json::to_writer_pretty(&mut out, report)?;
    writeln!(out)?;
    out.flush()?;
    Ok(())
}

pub fn read_report(path: &Path) -> Result<ReportFile> {
    let report: ReportFile = serde_json::from_reader(BufReader::new(File::open(path)?))?;
    if report.schema != SCHEMA_VERSION {
        return Err(Error::InvalidData(format!(
            "unsupported report schema {} (expected {SCHEMA_VERSION})",
            report.schema
        )));
    }
    Ok(report)
}
