//! Claims-file ingestion.
//!
//! The file is delimited text with a header row `amount[,status]`, one claim
//! per line. Amounts are ground-up loss amounts as recorded (already above
//! the deductible for payment-per-payment data). The optional status column
//! takes `exact`, `limit`, or `zero`; when absent, statuses are inferred from
//! the run configuration while mapping to payments.

use std::path::Path;

use crate::cli::{CliError, RunConfig, Scheme};
use crate::estimators::{PaymentSample, PaymentStatus};
use crate::transforms::PolicyTerms;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClaimStatus {
    Exact,
    Limit,
    Zero,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClaimsData {
    pub amounts: Vec<f64>,
    pub statuses: Vec<Option<ClaimStatus>>,
}

impl ClaimsData {
    pub fn len(&self) -> usize {
        self.amounts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amounts.is_empty()
    }
}

pub fn read_claims(path: &Path) -> Result<ClaimsData, CliError> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
    let headers = reader.headers().map_err(|e| CliError::Data(e.to_string()))?.clone();
    let amount_col = headers
        .iter()
        .position(|h| h.eq_ignore_ascii_case("amount"))
        .ok_or_else(|| CliError::Data("claims file needs an `amount` header column".into()))?;
    let status_col = headers.iter().position(|h| h.eq_ignore_ascii_case("status"));
    let mut amounts = Vec::new();
    let mut statuses = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let line = i + 2; // header is line 1
        let record = record.map_err(|e| CliError::Data(format!("line {line}: {e}")))?;
        let raw = record
            .get(amount_col)
            .ok_or_else(|| CliError::Data(format!("line {line}: missing amount field")))?;
        let amount: f64 = raw
            .parse()
            .map_err(|_| CliError::Data(format!("line {line}: bad amount `{raw}`")))?;
        if !amount.is_finite() || amount < 0.0 {
            return Err(CliError::Data(format!(
                "line {line}: amount {amount} must be finite and nonnegative"
            )));
        }
        let status = match status_col.and_then(|c| record.get(c)) {
            None | Some("") => None,
            Some(text) => Some(match text.to_ascii_lowercase().as_str() {
                "exact" => ClaimStatus::Exact,
                "limit" => ClaimStatus::Limit,
                "zero" => ClaimStatus::Zero,
                other => {
                    return Err(CliError::Data(format!(
                        "line {line}: unknown status `{other}` (expected exact, limit, or zero)"
                    )));
                }
            }),
        };
        amounts.push(amount);
        statuses.push(status);
    }
    if amounts.is_empty() {
        return Err(CliError::Data("claims file has no data rows (n = 0)".into()));
    }
    Ok(ClaimsData { amounts, statuses })
}

/// Map ground-up claim amounts to the configured payment variable:
/// `y = c (l - d)` with censoring at the policy limit, or the
/// payment-per-loss analogue with zeros for claims at or below the
/// deductible.
pub fn to_payment_sample(claims: &ClaimsData, cfg: &RunConfig) -> Result<PaymentSample, CliError> {
    let terms =
        PolicyTerms::new(cfg.c, cfg.d, cfg.u).map_err(|e| CliError::Config(e.to_string()))?;
    let ymax = terms.max_payment();
    let mut values = Vec::with_capacity(claims.len());
    let mut statuses = Vec::with_capacity(claims.len());
    for (i, (&l, st)) in claims.amounts.iter().zip(&claims.statuses).enumerate() {
        let line = i + 2;
        let (value, status) = match (cfg.scheme, st) {
            (Scheme::PaymentY, Some(ClaimStatus::Zero)) => {
                return Err(CliError::Data(format!(
                    "line {line}: zero-payment records require the payment-z scheme"
                )));
            }
            (Scheme::PaymentY, Some(ClaimStatus::Limit)) => {
                if !ymax.is_finite() {
                    return Err(CliError::Data(format!(
                        "line {line}: at-limit status with an unlimited policy"
                    )));
                }
                (ymax, PaymentStatus::AtLimit)
            }
            (Scheme::PaymentY, _) => {
                if l == 0.0 {
                    return Err(CliError::Data(format!(
                        "line {line}: zero amounts require the payment-z scheme"
                    )));
                }
                if l <= cfg.d {
                    return Err(CliError::Data(format!(
                        "line {line}: claim {l} does not exceed the deductible {}",
                        cfg.d
                    )));
                }
                if l >= cfg.u {
                    (ymax, PaymentStatus::AtLimit)
                } else {
                    (cfg.c * (l - cfg.d), PaymentStatus::Uncensored)
                }
            }
            (Scheme::PaymentZ, Some(ClaimStatus::Zero)) => (0.0, PaymentStatus::Zero),
            (Scheme::PaymentZ, Some(ClaimStatus::Limit)) => {
                if !ymax.is_finite() {
                    return Err(CliError::Data(format!(
                        "line {line}: at-limit status with an unlimited policy"
                    )));
                }
                (ymax, PaymentStatus::AtLimit)
            }
            (Scheme::PaymentZ, _) => {
                if l <= cfg.d {
                    (0.0, PaymentStatus::Zero)
                } else if l >= cfg.u {
                    (ymax, PaymentStatus::AtLimit)
                } else {
                    (cfg.c * (l - cfg.d), PaymentStatus::Uncensored)
                }
            }
        };
        values.push(value);
        statuses.push(status);
    }
    PaymentSample::with_statuses(values, statuses, terms)
        .map_err(|e| CliError::Data(e.to_string()))
}

/// Fully observed loss amounts, reconstructed on the claims scale.
pub fn observed_losses(sample: &PaymentSample) -> Vec<f64> {
    let terms = sample.terms();
    sample
        .values()
        .iter()
        .zip(sample.statuses())
        .filter(|(_, st)| **st == PaymentStatus::Uncensored)
        .map(|(v, _)| v / terms.c + terms.d)
        .collect()
}
