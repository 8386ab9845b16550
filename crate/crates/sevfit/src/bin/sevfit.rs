//! Thin command-line front end over the library commands.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use sevfit::asymptotics::{ArePreset, Competitor};
use sevfit::cli::{
    cmd_are, cmd_fit, cmd_price, cmd_summarize, read_claims, run_simulation, write_records,
    AreArgs, CliError, EstimatorChoice, OutputFormat, RunConfig, ScenarioConfig, Scheme,
};

#[derive(Parser)]
#[command(name = "sevfit", version, about = "Fit claim-severity models to truncated, censored, and coinsured payment data")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct ConfigOverrides {
    /// TOML run configuration; flags below override its fields
    #[arg(long)]
    config: Option<PathBuf>,
    /// payment-y or payment-z
    #[arg(long)]
    scheme: Option<String>,
    /// Coinsurance rate in (0, 1]
    #[arg(long)]
    c: Option<f64>,
    /// Deductible
    #[arg(long)]
    d: Option<f64>,
    /// Policy limit (use `inf` for none)
    #[arg(long)]
    u: Option<f64>,
    /// Ground-up severity scale
    #[arg(long)]
    x0: Option<f64>,
    /// Confidence level in (0, 1)
    #[arg(long)]
    ci_level: Option<f64>,
    /// Parametric bootstrap runs per estimator
    #[arg(long)]
    bootstrap_runs: Option<usize>,
    /// Seed for bootstrap and simulation streams
    #[arg(long)]
    seed: Option<u64>,
    /// Estimator spec, repeatable: mle | t:a:b | t2:a:b | w:a:b |
    /// censored-mle:d_tilde:u_tilde
    #[arg(long = "estimator")]
    estimators: Vec<String>,
    /// Output format: table or records
    #[arg(long)]
    output: Option<String>,
}

impl ConfigOverrides {
    fn build(&self) -> Result<RunConfig, CliError> {
        let mut cfg = match &self.config {
            Some(path) => RunConfig::from_toml(&std::fs::read_to_string(path)?)?,
            None => RunConfig::default(),
        };
        if let Some(scheme) = &self.scheme {
            cfg.scheme = parse_scheme(scheme)?;
        }
        if let Some(c) = self.c {
            cfg.c = c;
        }
        if let Some(d) = self.d {
            cfg.d = d;
        }
        if let Some(u) = self.u {
            cfg.u = u;
        }
        if let Some(x0) = self.x0 {
            cfg.x0 = x0;
        }
        if let Some(level) = self.ci_level {
            cfg.ci_level = level;
        }
        if let Some(runs) = self.bootstrap_runs {
            cfg.bootstrap_runs = runs;
        }
        if let Some(seed) = self.seed {
            cfg.seed = seed;
        }
        if !self.estimators.is_empty() {
            cfg.estimators = self
                .estimators
                .iter()
                .map(|text| EstimatorChoice::parse_flag(text).map_err(CliError::Config))
                .collect::<Result<_, _>>()?;
        }
        if let Some(output) = &self.output {
            cfg.output = match output.as_str() {
                "table" => OutputFormat::Table,
                "records" => OutputFormat::Records,
                other => {
                    return Err(CliError::Config(format!(
                        "unknown output format `{other}` (expected table or records)"
                    )));
                }
            };
        }
        Ok(cfg)
    }
}

fn parse_scheme(text: &str) -> Result<Scheme, CliError> {
    match text {
        "payment-y" => Ok(Scheme::PaymentY),
        "payment-z" => Ok(Scheme::PaymentZ),
        other => Err(CliError::Config(format!(
            "unknown scheme `{other}` (expected payment-y or payment-z)"
        ))),
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Histogram summary of a claims file, with optional numeric QQ pairs
    Summarize {
        file: PathBuf,
        /// Emit Pareto QQ pairs for claims above this deductible
        #[arg(long)]
        qq: Option<f64>,
    },
    /// Fit the configured estimators: point estimates, confidence intervals,
    /// KS statistics, and bootstrap p-values
    Fit {
        file: PathBuf,
        #[command(flatten)]
        overrides: ConfigOverrides,
        /// Also write line-delimited structured records here
        #[arg(long)]
        records: Option<PathBuf>,
    },
    /// Asymptotic relative efficiency tables and queries
    Are {
        /// Canned grid: t-y, w-y, t-z, or w-z
        #[arg(long)]
        preset: Option<String>,
        /// Estimator for a custom grid (same names as --preset)
        #[arg(long)]
        estimator: Option<String>,
        /// Lower proportions, comma separated
        #[arg(long, value_delimiter = ',')]
        a: Vec<f64>,
        /// Upper proportions, comma separated
        #[arg(long, value_delimiter = ',')]
        b: Vec<f64>,
        /// Right-censoring share (payment-y queries)
        #[arg(long)]
        delta: Option<f64>,
        /// Zero-payment share (payment-z queries)
        #[arg(long)]
        delta_l: Option<f64>,
        /// At-limit share (payment-z queries)
        #[arg(long)]
        delta_r: Option<f64>,
    },
    /// Layer pure premiums with delta-method intervals
    Price {
        file: PathBuf,
        #[command(flatten)]
        overrides: ConfigOverrides,
        #[arg(long)]
        records: Option<PathBuf>,
    },
    /// Monte Carlo bias/variance sweep from a scenario file
    Simulate {
        /// TOML scenario configuration
        #[arg(long)]
        scenario: PathBuf,
    },
}

fn parse_competitor(text: &str) -> Result<Competitor, CliError> {
    match text {
        "t-y" => Ok(Competitor::TrimmedY),
        "w-y" => Ok(Competitor::WinsorizedY),
        "t-z" => Ok(Competitor::TrimmedZ),
        "w-z" => Ok(Competitor::WinsorizedZ),
        other => Err(CliError::Config(format!(
            "unknown estimator `{other}` (expected t-y, w-y, t-z, or w-z)"
        ))),
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.cmd {
        Cmd::Summarize { file, qq } => {
            let claims = read_claims(&file)?;
            let report = cmd_summarize(&claims, qq)?;
            print!("{}", sevfit::cli::render_summarize(&report));
        }
        Cmd::Fit { file, overrides, records } => {
            let cfg = overrides.build()?;
            let claims = read_claims(&file)?;
            let report = cmd_fit(&claims, &cfg)?;
            let recs = sevfit::cli::fit_records(&report);
            match cfg.output {
                OutputFormat::Table => print!("{}", sevfit::cli::render_fit(&report)),
                OutputFormat::Records => {
                    for rec in &recs {
                        println!("{}", serde_json::to_string(rec).expect("record serializes"));
                    }
                }
            }
            if let Some(path) = records {
                write_records(&path, &recs)?;
            }
        }
        Cmd::Are { preset, estimator, a, b, delta, delta_l, delta_r } => {
            let args = match (preset, estimator) {
                (Some(name), None) => AreArgs::Preset(match name.as_str() {
                    "t-y" => ArePreset::TrimmedY,
                    "w-y" => ArePreset::WinsorizedY,
                    "t-z" => ArePreset::TrimmedZ,
                    "w-z" => ArePreset::WinsorizedZ,
                    other => {
                        return Err(CliError::Config(format!(
                            "unknown preset `{other}` (expected t-y, w-y, t-z, or w-z)"
                        )));
                    }
                }),
                (None, Some(est)) => {
                    let competitor = parse_competitor(&est)?;
                    let delta_r = match (competitor, delta, delta_r) {
                        (Competitor::TrimmedY | Competitor::WinsorizedY, Some(d), None) => d,
                        (Competitor::TrimmedZ | Competitor::WinsorizedZ, None, Some(d)) => d,
                        _ => {
                            return Err(CliError::Config(
                                "payment-y grids take --delta; payment-z grids take --delta-l and --delta-r"
                                    .into(),
                            ));
                        }
                    };
                    AreArgs::Grid { estimator: competitor, a_values: a, b_values: b, delta_l, delta_r }
                }
                _ => {
                    return Err(CliError::Config(
                        "pass exactly one of --preset or --estimator".into(),
                    ));
                }
            };
            let report = cmd_are(&args)?;
            print!("{}", sevfit::cli::render_are(&report));
        }
        Cmd::Price { file, overrides, records } => {
            let cfg = overrides.build()?;
            let claims = read_claims(&file)?;
            let report = cmd_price(&claims, &cfg)?;
            let recs = sevfit::cli::price_records(&report);
            match cfg.output {
                OutputFormat::Table => print!("{}", sevfit::cli::render_price(&report)),
                OutputFormat::Records => {
                    for rec in &recs {
                        println!("{}", serde_json::to_string(rec).expect("record serializes"));
                    }
                }
            }
            if let Some(path) = records {
                write_records(&path, &recs)?;
            }
        }
        Cmd::Simulate { scenario } => {
            let scenario = ScenarioConfig::from_toml(&std::fs::read_to_string(&scenario)?)?;
            let rows = run_simulation(&scenario)?;
            print!("{}", sevfit::cli::render_simulation(&scenario, &rows));
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
