//! Batch front-end: claims ingestion, run configuration, and the five
//! commands behind the `sevfit` binary (`summarize`, `fit`, `are`, `price`,
//! `simulate`).

mod claims;
mod commands;
mod config;
mod records;

pub use claims::{observed_losses, read_claims, to_payment_sample, ClaimStatus, ClaimsData};
pub use commands::{
    cmd_are, cmd_fit, cmd_price, cmd_summarize, fit_records, price_records, render_are,
    render_fit, render_price, render_simulation, render_summarize, run_simulation, AreArgs,
    AreReport, FitOutcome, FitReport, FitRow, PriceOutcome, PriceReport, PriceRow, QqDiagnostics,
    SimulationRow, SummarizeReport,
};
pub use config::{
    EstimatorChoice, LayerConfig, LossBasis, OutputFormat, RunConfig, ScenarioConfig, Scheme,
};
pub use records::{write_records, Record};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("data error: {0}")]
    Data(String),
    #[error("numeric failure: {0}")]
    Numeric(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// Process exit code: 1 for configuration or data problems, 2 for
    /// numeric failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Data(_) | CliError::Io(_) => 1,
            CliError::Numeric(_) => 2,
        }
    }
}
