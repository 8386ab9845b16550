//! Run configuration: a TOML file with every field overridable by
//! command-line flags of the same names.

use serde::{Deserialize, Serialize};

use crate::cli::CliError;
use crate::estimators::Estimator;
use crate::moments::TrimSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scheme {
    PaymentY,
    PaymentZ,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum EstimatorChoice {
    Mle,
    T { a: f64, b: f64 },
    TCase2 { a: f64, b: f64 },
    W { a: f64, b: f64 },
    CensoredMle { d_tilde: f64, u_tilde: f64 },
}

impl EstimatorChoice {
    /// Resolve the choice against the run parameters. `d` is the deductible
    /// and `x0` the ground-up scale. The threshold-censored fit models the
    /// observed losses, whose Pareto scale is the deductible itself.
    pub fn to_estimator(self, scheme: Scheme, d: f64, x0: f64) -> Result<Estimator, String> {
        let trim = |a, b| TrimSpec::new(a, b).map_err(|e| e.to_string());
        Ok(match (self, scheme) {
            (EstimatorChoice::Mle, Scheme::PaymentY) => Estimator::MleY,
            (EstimatorChoice::Mle, Scheme::PaymentZ) => Estimator::MleZ { x0 },
            (EstimatorChoice::T { a, b }, Scheme::PaymentY) => Estimator::TrimmedY(trim(a, b)?),
            (EstimatorChoice::T { a, b }, Scheme::PaymentZ) => {
                Estimator::TrimmedZ { trim: trim(a, b)?, x0 }
            }
            (EstimatorChoice::TCase2 { a, b }, Scheme::PaymentY) => {
                Estimator::TrimmedYCase2(trim(a, b)?)
            }
            (EstimatorChoice::TCase2 { .. }, Scheme::PaymentZ) => {
                return Err("the case-2 solver applies to payment-per-payment data only".into());
            }
            (EstimatorChoice::W { a, b }, Scheme::PaymentY) => Estimator::WinsorizedY(trim(a, b)?),
            (EstimatorChoice::W { a, b }, Scheme::PaymentZ) => {
                Estimator::WinsorizedZ { trim: trim(a, b)?, x0 }
            }
            (EstimatorChoice::CensoredMle { d_tilde, u_tilde }, _) => {
                Estimator::ThresholdCensoredMle { d_tilde, u_tilde, x0: d }
            }
        })
    }

    /// Parse a compact flag form: `mle`, `t:a:b`, `t2:a:b`, `w:a:b`,
    /// `censored-mle:d_tilde:u_tilde`.
    pub fn parse_flag(text: &str) -> Result<Self, String> {
        let parts: Vec<&str> = text.split(':').collect();
        let two = |parts: &[&str]| -> Result<(f64, f64), String> {
            if parts.len() != 3 {
                return Err(format!("expected kind:first:second, got `{text}`"));
            }
            let p1 = parts[1].parse().map_err(|_| format!("bad number `{}`", parts[1]))?;
            let p2 = parts[2].parse().map_err(|_| format!("bad number `{}`", parts[2]))?;
            Ok((p1, p2))
        };
        match parts[0] {
            "mle" => Ok(EstimatorChoice::Mle),
            "t" => two(&parts).map(|(a, b)| EstimatorChoice::T { a, b }),
            "t2" => two(&parts).map(|(a, b)| EstimatorChoice::TCase2 { a, b }),
            "w" => two(&parts).map(|(a, b)| EstimatorChoice::W { a, b }),
            "censored-mle" => {
                two(&parts).map(|(d_tilde, u_tilde)| EstimatorChoice::CensoredMle {
                    d_tilde,
                    u_tilde,
                })
            }
            other => Err(format!("unknown estimator kind `{other}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LossBasis {
    /// Severity scale at the deductible: losses as recorded.
    Observed,
    /// Severity scale at the ground-up constant `x0`.
    GroundUp,
}

fn default_bases() -> Vec<LossBasis> {
    vec![LossBasis::Observed, LossBasis::GroundUp]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LayerConfig {
    pub attachment: f64,
    pub exhaustion: f64,
    #[serde(default = "default_bases")]
    pub bases: Vec<LossBasis>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum OutputFormat {
    #[default]
    Table,
    Records,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub scheme: Scheme,
    pub c: f64,
    pub d: f64,
    pub u: f64,
    pub x0: f64,
    pub estimators: Vec<EstimatorChoice>,
    pub ci_level: f64,
    pub bootstrap_runs: usize,
    pub seed: u64,
    pub layers: Vec<LayerConfig>,
    pub output: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            scheme: Scheme::PaymentY,
            c: 1.0,
            d: 500_000.0,
            u: f64::INFINITY,
            x0: 500_000.0,
            estimators: vec![EstimatorChoice::Mle],
            ci_level: 0.90,
            bootstrap_runs: 1000,
            seed: 42,
            layers: Vec::new(),
            output: OutputFormat::Table,
        }
    }
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        let cfg: RunConfig =
            toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        Ok(cfg)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    /// Check every module precondition up front, aggregating all violations
    /// into a single report.
    pub fn validate(&self) -> Result<(), CliError> {
        let mut problems = Vec::new();
        if !(self.c > 0.0 && self.c <= 1.0) {
            problems.push(format!("coinsurance c = {} must lie in (0, 1]", self.c));
        }
        if !(self.d > 0.0 && self.d.is_finite()) {
            problems.push(format!("deductible d = {} must be finite and positive", self.d));
        }
        if !(self.u > self.d) {
            problems.push(format!("policy limit u = {} must exceed d = {}", self.u, self.d));
        }
        if !(self.x0 > 0.0 && self.x0.is_finite()) {
            problems.push(format!("ground-up scale x0 = {} must be finite and positive", self.x0));
        }
        if self.x0 > self.d {
            problems.push(format!(
                "ground-up scale x0 = {} must not exceed the deductible d = {}",
                self.x0, self.d
            ));
        }
        if self.estimators.is_empty() {
            problems.push("at least one estimator must be configured".into());
        }
        for (i, e) in self.estimators.iter().enumerate() {
            match *e {
                EstimatorChoice::T { a, b }
                | EstimatorChoice::TCase2 { a, b }
                | EstimatorChoice::W { a, b } => {
                    if TrimSpec::new(a, b).is_err() {
                        problems.push(format!(
                            "estimator #{i}: proportions a = {a}, b = {b} are invalid"
                        ));
                    }
                }
                EstimatorChoice::CensoredMle { d_tilde, u_tilde } => {
                    if !(self.x0 < d_tilde && d_tilde < u_tilde) {
                        problems.push(format!(
                            "estimator #{i}: thresholds need x0 < d_tilde < u_tilde, got {d_tilde}, {u_tilde}"
                        ));
                    }
                }
                EstimatorChoice::Mle => {}
            }
        }
        if !(self.ci_level > 0.0 && self.ci_level < 1.0) {
            problems.push(format!("ci_level = {} must lie in (0, 1)", self.ci_level));
        }
        if self.bootstrap_runs == 0 {
            problems.push("bootstrap_runs must be at least 1".into());
        }
        for (i, layer) in self.layers.iter().enumerate() {
            if !(layer.attachment < layer.exhaustion) {
                problems.push(format!(
                    "layer #{i}: attachment {} must be below exhaustion {}",
                    layer.attachment, layer.exhaustion
                ));
            }
            for basis in &layer.bases {
                let scale = match basis {
                    LossBasis::Observed => self.d,
                    LossBasis::GroundUp => self.x0,
                };
                if scale > layer.attachment {
                    problems.push(format!(
                        "layer #{i}: severity scale {scale} exceeds the attachment {}",
                        layer.attachment
                    ));
                }
            }
        }
        if problems.is_empty() {
            Ok(())
        } else {
            Err(CliError::Config(problems.join("; ")))
        }
    }
}

/// Scenario for the Monte Carlo simulation command.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ScenarioConfig {
    pub x0: f64,
    pub alpha: f64,
    pub scheme: Scheme,
    pub c: f64,
    pub d: f64,
    pub u: f64,
    pub n: usize,
    pub replicates: usize,
    pub seed: u64,
    pub estimators: Vec<EstimatorChoice>,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        ScenarioConfig {
            x0: 1000.0,
            alpha: 1.5,
            scheme: Scheme::PaymentY,
            c: 1.0,
            d: 1000.0,
            u: f64::INFINITY,
            n: 1000,
            replicates: 100,
            seed: 42,
            estimators: vec![EstimatorChoice::Mle],
        }
    }
}

impl ScenarioConfig {
    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let mut problems = Vec::new();
        if !(self.alpha > 0.0 && self.alpha.is_finite()) {
            problems.push(format!("alpha = {} must be finite and positive", self.alpha));
        }
        if !(self.x0 > 0.0 && self.x0 <= self.d && self.d < self.u) {
            problems.push(format!(
                "need 0 < x0 <= d < u, got x0 = {}, d = {}, u = {}",
                self.x0, self.d, self.u
            ));
        }
        if self.n == 0 || self.replicates == 0 {
            problems.push("n and replicates must be at least 1".into());
        }
        if self.estimators.is_empty() {
            problems.push("at least one estimator must be configured".into());
        }
        if problems.is_empty() {
            Ok(())
        } else {
            Err(CliError::Config(problems.join("; ")))
        }
    }
}
