//! Line-delimited structured output records.

use std::io::Write;
use std::path::Path;

use serde::Serialize;

use crate::cli::CliError;

/// One structured output record. Fields not produced by a command are null.
#[derive(Debug, Clone, PartialEq, Serialize, Default)]
pub struct Record {
    pub estimator: String,
    pub a: Option<f64>,
    pub b: Option<f64>,
    pub alpha_hat: Option<f64>,
    pub ci_lo: Option<f64>,
    pub ci_hi: Option<f64>,
    pub ks: Option<f64>,
    pub p_value: Option<f64>,
    pub premium: Option<f64>,
    pub premium_ci_lo: Option<f64>,
    pub premium_ci_hi: Option<f64>,
}

/// Write records as one JSON object per line.
pub fn write_records(path: &Path, records: &[Record]) -> Result<(), CliError> {
    let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
    for record in records {
        let line = serde_json::to_string(record)
            .map_err(|e| CliError::Numeric(format!("record serialization: {e}")))?;
        writeln!(out, "{line}")?;
    }
    Ok(())
}
