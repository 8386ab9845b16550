//! The five batch commands. Each command returns a typed report; rendering
//! to a human table and conversion to structured records are separate so both
//! carry identical numeric payloads.

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;

use crate::asymptotics::{are_grid, are_preset_table, avar, ArePreset, AreTable, Competitor};
use crate::cli::claims::{to_payment_sample, ClaimsData};
use crate::cli::config::{LossBasis, RunConfig, ScenarioConfig, Scheme};
use crate::cli::records::Record;
use crate::cli::CliError;
use crate::distributions::ParetoI;
use crate::estimators::{Estimator, PaymentSample};
use crate::inference::{bootstrap_pvalue, ci_normal, ols_line, pareto_qq_pairs, ConfidenceInterval};
use crate::pricing::{premium, premium_ci, Layer};
use crate::transforms::{payment_y_dist, payment_z_dist, ObservedDistribution, PolicyTerms};

/// Severity histogram bin edges in currency units.
const BUCKET_EDGES: [f64; 6] = [0.5e6, 1.0e6, 2.0e6, 5.0e6, 10.0e6, 20.0e6];

/// Numeric QQ pairs together with their least-squares `(intercept, slope)`.
#[derive(Debug, Clone, PartialEq)]
pub struct QqDiagnostics {
    pub pairs: Vec<(f64, f64)>,
    pub intercept: f64,
    pub slope: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SummarizeReport {
    pub n: usize,
    pub max: f64,
    /// Relative frequency per bucket, labelled in millions.
    pub buckets: Vec<(String, f64)>,
    /// Claims below the first bin edge, reported separately when present.
    pub below_first: usize,
    pub qq: Option<QqDiagnostics>,
}

pub fn cmd_summarize(
    claims: &ClaimsData,
    qq_deductible: Option<f64>,
) -> Result<SummarizeReport, CliError> {
    if claims.is_empty() {
        return Err(CliError::Data("no claims to summarize (n = 0)".into()));
    }
    let n = claims.len();
    let mut counts = vec![0usize; BUCKET_EDGES.len()];
    let mut below_first = 0usize;
    let mut max = f64::NEG_INFINITY;
    for &l in &claims.amounts {
        max = max.max(l);
        if l < BUCKET_EDGES[0] {
            below_first += 1;
            continue;
        }
        let mut bucket = BUCKET_EDGES.len() - 1;
        for (i, window) in BUCKET_EDGES.windows(2).enumerate() {
            if l < window[1] {
                bucket = i;
                break;
            }
        }
        counts[bucket] += 1;
    }
    let buckets = counts
        .iter()
        .enumerate()
        .map(|(i, &count)| {
            let label = if i + 1 < BUCKET_EDGES.len() {
                format!("[{}; {})", BUCKET_EDGES[i] / 1e6, BUCKET_EDGES[i + 1] / 1e6)
            } else {
                format!("[{}; inf)", BUCKET_EDGES[i] / 1e6)
            };
            (label, count as f64 / n as f64)
        })
        .collect();
    let qq = qq_deductible.map(|d| {
        let losses: Vec<f64> =
            claims.amounts.iter().copied().filter(|&l| l > d).collect();
        let pairs = pareto_qq_pairs(&losses, d);
        let (intercept, slope) = ols_line(&pairs);
        QqDiagnostics { pairs, intercept, slope }
    });
    Ok(SummarizeReport { n, max, buckets, below_first, qq })
}

pub fn render_summarize(report: &SummarizeReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("n = {}, max = {:.4e}\n", report.n, report.max));
    if report.below_first > 0 {
        out.push_str(&format!("claims below the first bin edge: {}\n", report.below_first));
    }
    out.push_str("severity (millions)   relative frequency\n");
    for (label, freq) in &report.buckets {
        out.push_str(&format!("{label:<21} {freq:.2}\n"));
    }
    if let Some(qq) = &report.qq {
        out.push_str(&format!(
            "\nqq pairs (n = {}), least-squares line y = {:.3} + {:.3} x\n",
            qq.pairs.len(),
            qq.intercept,
            qq.slope
        ));
        out.push_str("exp_quantile log_loss\n");
        for (x, y) in &qq.pairs {
            out.push_str(&format!("{x:.6} {y:.6}\n"));
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct FitOutcome {
    pub alpha_hat: f64,
    pub ci: ConfidenceInterval,
    pub ks: f64,
    pub p_value: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FitRow {
    pub label: String,
    pub a: Option<f64>,
    pub b: Option<f64>,
    pub outcome: Result<FitOutcome, String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FitReport {
    pub n: usize,
    pub rows: Vec<FitRow>,
}

type EstimatorRow = (String, Option<f64>, Option<f64>, Result<Estimator, String>);

fn estimator_rows(cfg: &RunConfig) -> Vec<EstimatorRow> {
    cfg.estimators
        .iter()
        .map(|choice| {
            let est = choice.to_estimator(cfg.scheme, cfg.d, cfg.x0);
            let (label, a, b) = match est {
                Ok(e) => (e.label(), e.trim().map(|t| t.a()), e.trim().map(|t| t.b())),
                Err(_) => (format!("{choice:?}"), None, None),
            };
            (label, a, b, est)
        })
        .collect()
}

/// Fit every configured estimator, with per-row confidence intervals, KS
/// statistics, and bootstrap p-values. Estimator-level failures mark their
/// row unavailable without aborting the table.
pub fn cmd_fit(claims: &ClaimsData, cfg: &RunConfig) -> Result<FitReport, CliError> {
    cfg.validate()?;
    let sample = to_payment_sample(claims, cfg)?;
    let n = sample.len();
    let rows = estimator_rows(cfg)
        .into_iter()
        .map(|(label, a, b, est)| {
            let outcome = est.map_err(|e| e.to_string()).and_then(|est| {
                fit_one(&sample, &est, cfg).map_err(|e| e.to_string())
            });
            FitRow { label, a, b, outcome }
        })
        .collect::<Vec<_>>();
    if rows.iter().all(|r| r.outcome.is_err()) {
        let first = rows.first().and_then(|r| r.outcome.as_ref().err().cloned());
        return Err(CliError::Numeric(format!(
            "every configured estimator failed; first failure: {}",
            first.unwrap_or_default()
        )));
    }
    Ok(FitReport { n, rows })
}

fn fit_one(sample: &PaymentSample, est: &Estimator, cfg: &RunConfig) -> Result<FitOutcome, CliError> {
    let fit = est.fit(sample).map_err(|e| CliError::Numeric(e.to_string()))?;
    let spec = avar(est.variance_model(sample.terms(), fit.alpha_hat))
        .map_err(|e| CliError::Numeric(e.to_string()))?;
    let ci = ci_normal(fit.alpha_hat, &spec, fit.n_used, cfg.ci_level)
        .map_err(|e| CliError::Numeric(e.to_string()))?;
    let gof = bootstrap_pvalue(sample, est, cfg.bootstrap_runs, cfg.seed)
        .map_err(|e| CliError::Numeric(e.to_string()))?;
    Ok(FitOutcome { alpha_hat: fit.alpha_hat, ci, ks: gof.ks_statistic, p_value: gof.p_value })
}

pub fn render_fit(report: &FitReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("n = {}\n", report.n));
    out.push_str(&format!(
        "{:<28} {:>8} {:>18} {:>7} {:>8}\n",
        "estimator", "alpha", "ci", "ks", "p-value"
    ));
    for row in &report.rows {
        match &row.outcome {
            Ok(o) => out.push_str(&format!(
                "{:<28} {:>8.4} [{:.4}; {:.4}] {:>7.4} {:>8.2}\n",
                row.label, o.alpha_hat, o.ci.lower, o.ci.upper, o.ks, o.p_value
            )),
            Err(reason) => {
                out.push_str(&format!("{:<28} {:>8} ({reason})\n", row.label, "--"))
            }
        }
    }
    out
}

pub fn fit_records(report: &FitReport) -> Vec<Record> {
    report
        .rows
        .iter()
        .map(|row| {
            let mut rec = Record {
                estimator: row.label.clone(),
                a: row.a,
                b: row.b,
                ..Record::default()
            };
            if let Ok(o) = &row.outcome {
                rec.alpha_hat = Some(o.alpha_hat);
                rec.ci_lo = Some(o.ci.lower);
                rec.ci_hi = Some(o.ci.upper);
                rec.ks = Some(o.ks);
                rec.p_value = Some(o.p_value);
            }
            rec
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct PriceOutcome {
    pub alpha_hat: f64,
    pub alpha_ci: ConfidenceInterval,
    pub premium: f64,
    pub premium_ci: ConfidenceInterval,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PriceRow {
    pub label: String,
    pub a: Option<f64>,
    pub b: Option<f64>,
    pub basis: LossBasis,
    pub attachment: f64,
    pub exhaustion: f64,
    pub outcome: Result<PriceOutcome, String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PriceReport {
    pub n: usize,
    pub rows: Vec<PriceRow>,
}

/// Price every configured layer per estimator and loss basis, with
/// log-transformed delta-method intervals.
pub fn cmd_price(claims: &ClaimsData, cfg: &RunConfig) -> Result<PriceReport, CliError> {
    cfg.validate()?;
    if cfg.layers.is_empty() {
        return Err(CliError::Config("price needs at least one configured layer".into()));
    }
    let sample = to_payment_sample(claims, cfg)?;
    let n = sample.len();
    let mut rows = Vec::new();
    for (label, a, b, est) in estimator_rows(cfg) {
        let fitted = est.clone().map_err(|e| e.to_string()).and_then(|est| {
            est.fit(&sample)
                .and_then(|fit| {
                    avar(est.variance_model(sample.terms(), fit.alpha_hat))
                        .map(|spec| (fit, spec))
                        .map_err(|e| crate::estimators::EstimatorError::Data(e.to_string()))
                })
                .map_err(|e| e.to_string())
        });
        for layer_cfg in &cfg.layers {
            for basis in &layer_cfg.bases {
                let scale = match basis {
                    LossBasis::Observed => cfg.d,
                    LossBasis::GroundUp => cfg.x0,
                };
                let outcome = fitted.as_ref().map_err(|e| e.clone()).and_then(|(fit, spec)| {
                    let layer = Layer::new(layer_cfg.attachment, layer_cfg.exhaustion, scale)
                        .map_err(|e| e.to_string())?;
                    let point = premium(&layer, fit.alpha_hat);
                    let p_ci = premium_ci(&layer, fit, spec, fit.n_used, cfg.ci_level)
                        .map_err(|e| e.to_string())?;
                    let a_ci = ci_normal(fit.alpha_hat, spec, fit.n_used, cfg.ci_level)
                        .map_err(|e| e.to_string())?;
                    Ok(PriceOutcome {
                        alpha_hat: fit.alpha_hat,
                        alpha_ci: a_ci,
                        premium: point,
                        premium_ci: p_ci,
                    })
                });
                rows.push(PriceRow {
                    label: label.clone(),
                    a,
                    b,
                    basis: *basis,
                    attachment: layer_cfg.attachment,
                    exhaustion: layer_cfg.exhaustion,
                    outcome,
                });
            }
        }
    }
    if rows.iter().all(|r| r.outcome.is_err()) {
        return Err(CliError::Numeric("every configured estimator failed to price".into()));
    }
    Ok(PriceReport { n, rows })
}

pub fn render_price(report: &PriceReport) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{:<28} {:<10} {:>12} {:>26}\n",
        "estimator", "basis", "premium", "ci"
    ));
    for row in &report.rows {
        let basis = match row.basis {
            LossBasis::Observed => "observed",
            LossBasis::GroundUp => "ground-up",
        };
        match &row.outcome {
            Ok(o) => out.push_str(&format!(
                "{:<28} {:<10} {:>12.4e} [{:.4e}; {:.4e}]\n",
                row.label, basis, o.premium, o.premium_ci.lower, o.premium_ci.upper
            )),
            Err(reason) => {
                out.push_str(&format!("{:<28} {:<10} {:>12} ({reason})\n", row.label, basis, "--"))
            }
        }
    }
    out
}

pub fn price_records(report: &PriceReport) -> Vec<Record> {
    report
        .rows
        .iter()
        .map(|row| {
            let mut rec = Record {
                estimator: format!(
                    "{} ({})",
                    row.label,
                    match row.basis {
                        LossBasis::Observed => "observed",
                        LossBasis::GroundUp => "ground-up",
                    }
                ),
                a: row.a,
                b: row.b,
                ..Record::default()
            };
            if let Ok(o) = &row.outcome {
                rec.alpha_hat = Some(o.alpha_hat);
                rec.ci_lo = Some(o.alpha_ci.lower);
                rec.ci_hi = Some(o.alpha_ci.upper);
                rec.premium = Some(o.premium);
                rec.premium_ci_lo = Some(o.premium_ci.lower);
                rec.premium_ci_hi = Some(o.premium_ci.upper);
            }
            rec
        })
        .collect()
}

/// Arguments of the `are` command: a canned preset, or a custom grid over
/// `a`/`b` values at one censoring setting.
#[derive(Debug, Clone, PartialEq)]
pub enum AreArgs {
    Preset(ArePreset),
    Grid {
        estimator: Competitor,
        a_values: Vec<f64>,
        b_values: Vec<f64>,
        delta_l: Option<f64>,
        delta_r: f64,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct AreReport {
    pub table: AreTable,
}

pub fn cmd_are(args: &AreArgs) -> Result<AreReport, CliError> {
    let table = match args {
        AreArgs::Preset(preset) => are_preset_table(*preset),
        AreArgs::Grid { estimator, a_values, b_values, delta_l, delta_r } => {
            if a_values.is_empty() || b_values.is_empty() {
                return Err(CliError::Config("grid needs at least one a and one b".into()));
            }
            match (estimator, delta_l) {
                (Competitor::TrimmedZ | Competitor::WinsorizedZ, None) => {
                    return Err(CliError::Config(
                        "payment-z efficiency queries need --delta-l".into(),
                    ));
                }
                (Competitor::TrimmedY | Competitor::WinsorizedY, Some(_)) => {
                    return Err(CliError::Config(
                        "payment-y efficiency queries take --delta only".into(),
                    ));
                }
                _ => {}
            }
            are_grid(*estimator, a_values, *delta_l, &[(*delta_r, b_values.clone())])
        }
    };
    Ok(AreReport { table })
}

pub fn render_are(report: &AreReport) -> String {
    let table = &report.table;
    let mut out = String::new();
    let name = match table.estimator {
        Competitor::TrimmedY => "T vs MLE, payments per payment",
        Competitor::WinsorizedY => "W vs MLE, payments per payment",
        Competitor::TrimmedZ => "T vs MLE, payments per loss",
        Competitor::WinsorizedZ => "W vs MLE, payments per loss",
    };
    out.push_str(&format!("asymptotic relative efficiency: {name}\n"));
    let mut header = String::new();
    if table.rows.first().is_some_and(|r| r.delta_l.is_some()) {
        header.push_str(&format!("{:>7} ", "delta_l"));
    }
    header.push_str(&format!("{:>5} |", "a"));
    for (delta, bs) in &table.col_groups {
        for &b in bs {
            header.push_str(&format!(" {:>11}", format!("d={delta} b={b}")));
        }
    }
    out.push_str(&header);
    out.push('\n');
    for row in &table.rows {
        let mut line = String::new();
        if let Some(dl) = row.delta_l {
            line.push_str(&format!("{dl:>7} "));
        }
        line.push_str(&format!("{:>5} |", row.a));
        for cell in &row.cells {
            match cell {
                Some(v) => line.push_str(&format!(" {v:>11.3}")),
                None => line.push_str(&format!(" {:>11}", "--")),
            }
        }
        out.push_str(&line);
        out.push('\n');
    }
    out
}

/// Per-estimator empirical summary of a simulation sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SimulationRow {
    pub label: String,
    pub replicates_used: usize,
    pub failures: usize,
    pub mean: f64,
    pub bias: f64,
    pub variance: f64,
    /// Empirical variance over the asymptotic approximation at the true
    /// parameters; 0 when the variance is degenerate.
    pub variance_ratio: f64,
}

/// Simulate `replicates` samples from the configured scheme, refit every
/// estimator on each, and report bias and variance against the asymptotic
/// formulas. All fields are finite even for a single replicate.
pub fn run_simulation(scenario: &ScenarioConfig) -> Result<Vec<SimulationRow>, CliError> {
    scenario.validate()?;
    let model = ParetoI::new(scenario.x0, scenario.alpha)
        .map_err(|e| CliError::Config(e.to_string()))?;
    let terms = PolicyTerms::new(scenario.c, scenario.d, scenario.u)
        .map_err(|e| CliError::Config(e.to_string()))?;
    let dist: ObservedDistribution<ParetoI> = match scenario.scheme {
        Scheme::PaymentY => payment_y_dist(model, terms),
        Scheme::PaymentZ => payment_z_dist(model, terms),
    }
    .map_err(|e| CliError::Config(e.to_string()))?;
    let estimators: Vec<(String, Estimator)> = scenario
        .estimators
        .iter()
        .map(|choice| {
            choice
                .to_estimator(scenario.scheme, scenario.d, scenario.x0)
                .map(|e| (e.label(), e))
                .map_err(CliError::Config)
        })
        .collect::<Result<_, _>>()?;
    let fits: Vec<Vec<Option<f64>>> = (0..scenario.replicates)
        .into_par_iter()
        .map(|r| {
            let mut rng = ChaCha20Rng::seed_from_u64(scenario.seed);
            rng.set_stream(r as u64 + 1);
            let values = dist.sample_with(&mut rng, scenario.n);
            match PaymentSample::new(values, terms) {
                Ok(sample) => estimators
                    .iter()
                    .map(|(_, est)| est.fit(&sample).ok().map(|f| f.alpha_hat))
                    .collect(),
                Err(_) => vec![None; estimators.len()],
            }
        })
        .collect();
    let mut rows = Vec::new();
    for (j, (label, est)) in estimators.iter().enumerate() {
        let alphas: Vec<f64> = fits.iter().filter_map(|row| row[j]).collect();
        let used = alphas.len();
        let failures = scenario.replicates - used;
        if used == 0 {
            rows.push(SimulationRow {
                label: label.clone(),
                replicates_used: 0,
                failures,
                mean: 0.0,
                bias: 0.0,
                variance: 0.0,
                variance_ratio: 0.0,
            });
            continue;
        }
        let mean = alphas.iter().sum::<f64>() / used as f64;
        let variance = if used > 1 {
            alphas.iter().map(|a| (a - mean).powi(2)).sum::<f64>() / (used - 1) as f64
        } else {
            0.0
        };
        let asymptotic = avar(est.variance_model(&terms, scenario.alpha))
            .map(|s| s.variance_factor * scenario.alpha * scenario.alpha / scenario.n as f64)
            .unwrap_or(f64::NAN);
        let variance_ratio =
            if asymptotic.is_finite() && asymptotic > 0.0 { variance / asymptotic } else { 0.0 };
        rows.push(SimulationRow {
            label: label.clone(),
            replicates_used: used,
            failures,
            mean,
            bias: mean - scenario.alpha,
            variance,
            variance_ratio,
        });
    }
    Ok(rows)
}

pub fn render_simulation(scenario: &ScenarioConfig, rows: &[SimulationRow]) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "alpha = {}, n = {}, replicates = {}, seed = {}\n",
        scenario.alpha, scenario.n, scenario.replicates, scenario.seed
    ));
    out.push_str(&format!(
        "{:<28} {:>6} {:>6} {:>10} {:>10} {:>12} {:>10}\n",
        "estimator", "used", "fail", "mean", "bias", "variance", "var-ratio"
    ));
    for row in rows {
        out.push_str(&format!(
            "{:<28} {:>6} {:>6} {:>10.4} {:>10.4} {:>12.4e} {:>10.3}\n",
            row.label,
            row.replicates_used,
            row.failures,
            row.mean,
            row.bias,
            row.variance,
            row.variance_ratio
        ));
    }
    out
}
