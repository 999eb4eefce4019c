use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::matrix::SparseColMatrix;

pub fn load_svmlight(path: &Path) -> Result<(SparseColMatrix, Vec<f64>)> {
    parse_svmlight(BufReader::new(File::open(path)?))
}

/// Parses `label idx:val idx:val …` lines (1-based indices, `#` comments).
/// Indices may come in any order; repeats within a line are summed.
pub fn parse_svmlight<R: BufRead>(reader: R) -> Result<(SparseColMatrix, Vec<f64>)> {
    let mut labels = Vec::new();
    let mut rows: Vec<Vec<(usize, f64)>> = Vec::new();
    let mut n_cols = 0;
    for (lineno, line) in reader.lines().enumerate() {
        let line = line?;
        let line_no = lineno + 1;
        let body = line.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let mut tokens = body.split_whitespace();
        let label_tok = tokens.next().unwrap_or_default();
        let label: f64 = label_tok.parse().map_err(|_| Error::Parse {
            line: line_no,
            msg: format!("bad label {label_tok:?}"),
        })?;
        if !label.is_finite() {
            return Err(Error::Parse {
                line: line_no,
                msg: format!("non-finite label {label_tok:?}"),
            });
        }
        let mut entries = Vec::new();
        for tok in tokens {
            if tok.starts_with("qid:") {
                continue;
            }
            let bad = || Error::Parse {
                line: line_no,
                msg: format!("malformed token {tok:?}"),
            };
            let (idx, val) = tok.split_once(':').ok_or_else(bad)?;
            let idx: usize = idx.parse().map_err(|_| bad())?;
            let val: f64 = val.parse().map_err(|_| bad())?;
            if idx == 0 || !val.is_finite() {
                return Err(bad());
            }
            entries.push((idx - 1, val));
        }
        entries.sort_by_key(|e| e.0);
        let mut merged: Vec<(usize, f64)> = Vec::with_capacity(entries.len());
        for (c, v) in entries {
            match merged.last_mut() {
                Some(last) if last.0 == c => last.1 += v,
                _ => merged.push((c, v)),
            }
        }
        merged.retain(|e| e.1 != 0.0);
        if let Some(&(c, _)) = merged.last() {
            n_cols = n_cols.max(c + 1);
        }
        labels.push(label);
        rows.push(merged);
    }
    if labels.is_empty() {
        return Err(Error::InvalidData("no samples".into()));
    }

    // two passes: count per column, then fill in row order
    let mut col_ptr = vec![0usize; n_cols + 1];
    for row in &rows {
        for &(c, _) in row {
            col_ptr[c + 1] += 1;
        }
    }
    for k in 0..n_cols {
        col_ptr[k + 1] += col_ptr[k];
    }
    let nnz = col_ptr[n_cols];
    let mut next = col_ptr.clone();
    let mut row_idx = vec![0usize; nnz];
    let mut values = vec![0.0; nnz];
    for (i, row) in rows.iter().enumerate() {
        for &(c, v) in row {
            row_idx[next[c]] = i;
            values[next[c]] = v;
            next[c] += 1;
        }
    }
    let x = SparseColMatrix::from_csc(labels.len(), n_cols, col_ptr, row_idx, values)?;
    Ok((x, labels))
}

/// Writes rows in svmlight format with shortest round-trip float formatting.
pub fn write_svmlight(path: &Path, x: &SparseColMatrix, response: &[f64]) -> Result<()> {
    if response.len() != x.n_rows() {
        return Err(Error::Dimension("response length != n_rows".into()));
    }
    let mut rows: Vec<Vec<(usize, f64)>> = vec![Vec::new(); x.n_rows()];
    for k in 0..x.n_cols() {
        for (i, v) in x.col(k).iter() {
            rows[i].push((k, v));
        }
    }
    let mut out = BufWriter::new(File::create(path)?);
    for (label, row) in response.iter().zip(&rows) {
        write!(out, "{label}")?;
        for (k, v) in row {
            write!(out, " {}:{v}", k + 1)?;
        }
        writeln!(out)?;
    }
    out.flush()?;
    Ok(())
}
