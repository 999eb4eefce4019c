use std::io::Read;
use std::path::Path;

use crate::error::{Error, Result};
use crate::matrix::SparseColMatrix;

pub fn load_csv(path: &Path, header: bool) -> Result<(SparseColMatrix, Vec<f64>)> {
    parse_csv(std::fs::File::open(path)?, header)
}

/// Dense CSV: first column is the response, the rest are features.
pub fn parse_csv<R: Read>(reader: R, header: bool) -> Result<(SparseColMatrix, Vec<f64>)> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(header)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(reader);
    let mut response = Vec::new();
    let mut rows = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| Error::Parse {
            line: e.position().map_or(i + 1, |p| p.line() as usize),
            msg: e.to_string(),
        })?;
        let line = rec.position().map_or(i + 1, |p| p.line() as usize);
        let vals = rec
            .iter()
            .map(|f| {
                f.parse::<f64>().ok().filter(|v| v.is_finite()).ok_or_else(|| Error::Parse {
                    line,
                    msg: format!("bad number {f:?}"),
                })
            })
            .collect::<Result<Vec<f64>>>()?;
        if vals.is_empty() {
            continue;
        }
        response.push(vals[0]);
        rows.push(vals[1..].to_vec());
    }
    if rows.is_empty() {
        return Err(Error::InvalidData("no samples".into()));
    }
    let x = SparseColMatrix::from_dense_rows(&rows)?;
    Ok((x, response))
}

pub fn write_csv(path: &Path, x: &SparseColMatrix, response: &[f64]) -> Result<()> {
    if response.len() != x.n_rows() {
        return Err(Error::Dimension("response length != n_rows".into()));
    }
    let mut w = csv::Writer::from_path(path).map_err(|e| Error::InvalidData(e.to_string()))?;
    for (r, row) in response.iter().zip(x.to_dense_rows()) {
        let fields: Vec<String> = std::iter::once(*r).chain(row).map(|v| v.to_string()).collect();
        w.write_record(&fields).map_err(|e| Error::InvalidData(e.to_string()))?;
    }
    w.flush()?;
    Ok(())
}
