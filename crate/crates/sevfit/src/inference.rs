//! Confidence intervals, goodness of fit for right-censored payments, and
//! parametric-bootstrap p-values.

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::asymptotics::AsymptoticSpec;
use crate::estimators::{Estimator, EstimatorError, PaymentSample, PaymentStatus};
use crate::numerics::normal_quantile;
use crate::transforms::TransformError;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum InferenceError {
    #[error("confidence level {0} outside (0, 1)")]
    InvalidLevel(f64),
    #[error("bootstrap needs at least one run")]
    NoRuns,
    #[error("base fit failed: {0}")]
    BaseFit(EstimatorError),
    #[error("{failures} failed replicate fits out of {runs} runs exceed the 5% budget")]
    TooManyFailures { failures: usize, runs: usize },
    #[error("replicate {replicate} failed to fit after {attempts} attempts")]
    ReplicateExhausted { replicate: usize, attempts: u32 },
    #[error(transparent)]
    Transform(#[from] TransformError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CiStyle {
    PlainNormal,
    LogTransformed,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConfidenceInterval {
    pub lower: f64,
    pub upper: f64,
    pub level: f64,
    pub style: CiStyle,
}

/// Plain normal interval `alpha_hat +/- z * alpha_hat * sqrt(factor / n)`,
/// plugging the estimate into the variance.
pub fn ci_normal(
    alpha_hat: f64,
    spec: &AsymptoticSpec,
    n: usize,
    level: f64,
) -> Result<ConfidenceInterval, InferenceError> {
    if !(0.0 < level && level < 1.0) {
        return Err(InferenceError::InvalidLevel(level));
    }
    let z = normal_quantile(0.5 * (1.0 + level));
    let half = z * alpha_hat * (spec.variance_factor / n as f64).sqrt();
    Ok(ConfidenceInterval {
        lower: alpha_hat - half,
        upper: alpha_hat + half,
        level,
        style: CiStyle::PlainNormal,
    })
}

/// Kolmogorov-Smirnov statistic for right-censored payment data.
///
/// The supremum runs over the fully observed payment amounts, comparing the
/// fitted observed-data cdf against the empirical cdf from both sides of each
/// jump. Censored observations enter the empirical cdf but are compared only
/// at the censoring point, just below the at-limit atom.
pub fn ks_right_censored<F: Fn(f64) -> f64>(s: &PaymentSample, fitted: F) -> f64 {
    let n = s.len() as f64;
    let mut points: Vec<(f64, PaymentStatus)> =
        s.values().iter().copied().zip(s.statuses().iter().copied()).collect();
    points.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    let mut sup: f64 = 0.0;
    let mut idx = 0;
    while idx < points.len() {
        let x = points[idx].0;
        let first = idx;
        let mut any_uncensored = false;
        while idx < points.len() && points[idx].0 == x {
            any_uncensored |= points[idx].1 == PaymentStatus::Uncensored;
            idx += 1;
        }
        if any_uncensored {
            let g = fitted(x);
            sup = sup
                .max((first as f64 / n - g).abs())
                .max((idx as f64 / n - g).abs());
        }
    }
    let (_, _, n_lim) = s.status_counts();
    if n_lim > 0 {
        let ymax = s.terms().max_payment();
        let g = fitted(ymax * (1.0 - 1e-12));
        sup = sup.max(((n - n_lim as f64) / n - g).abs());
    }
    sup
}

/// Parametric-bootstrap goodness-of-fit report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GofReport {
    pub ks_statistic: f64,
    pub p_value: f64,
    pub bootstrap_runs: usize,
    pub seed: u64,
    /// Replicate fits that failed and were retried on a fresh substream.
    pub retried: u32,
}

const MAX_ATTEMPTS: u32 = 8;

/// Refit-per-replicate parametric bootstrap p-value for the KS statistic.
///
/// Each replicate simulates `n` observations from the fitted observed-data
/// distribution on its own ChaCha20 substream (`seed` with stream index
/// `replicate + 1`), refits with the same estimator, and recomputes the KS
/// statistic against its own refit. The p-value is the plain fraction of
/// replicate statistics at or above the observed one. Replicates whose fit
/// fails are retried on the next substream block; more than 5% failures is an
/// error.
pub fn bootstrap_pvalue(
    s: &PaymentSample,
    estimator: &Estimator,
    runs: usize,
    seed: u64,
) -> Result<GofReport, InferenceError> {
    if runs == 0 {
        return Err(InferenceError::NoRuns);
    }
    let fit0 = estimator.fit(s).map_err(InferenceError::BaseFit)?;
    let dist0 = estimator
        .fitted_distribution(s.terms(), fit0.alpha_hat)
        .map_err(InferenceError::BaseFit)?;
    let ks0 = ks_right_censored(s, |x| dist0.cdf(x));
    let n = s.len();
    let replicates: Vec<Result<(f64, u32), InferenceError>> = (0..runs)
        .into_par_iter()
        .map(|r| {
            let mut retries = 0u32;
            for attempt in 0..MAX_ATTEMPTS {
                let mut rng = ChaCha20Rng::seed_from_u64(seed);
                rng.set_stream((attempt as u64) * runs as u64 + r as u64 + 1);
                let values = dist0.sample_with(&mut rng, n);
                let refit = PaymentSample::new(values, *s.terms())
                    .and_then(|sample| estimator.fit(&sample).map(|fit| (sample, fit)));
                match refit {
                    Ok((sample, fit)) => {
                        match estimator.fitted_distribution(s.terms(), fit.alpha_hat) {
                            Ok(dist_r) => {
                                let ks_r = ks_right_censored(&sample, |x| dist_r.cdf(x));
                                return Ok((ks_r, retries));
                            }
                            Err(_) => retries += 1,
                        }
                    }
                    Err(_) => retries += 1,
                }
            }
            Err(InferenceError::ReplicateExhausted { replicate: r, attempts: MAX_ATTEMPTS })
        })
        .collect();
    let mut exceed = 0usize;
    let mut retried = 0u32;
    for rep in replicates {
        let (ks_r, retries) = rep?;
        retried += retries;
        if ks_r >= ks0 {
            exceed += 1;
        }
    }
    if retried as usize * 20 > runs {
        return Err(InferenceError::TooManyFailures { failures: retried as usize, runs });
    }
    Ok(GofReport {
        ks_statistic: ks0,
        p_value: exceed as f64 / runs as f64,
        bootstrap_runs: runs,
        seed,
        retried,
    })
}

/// Numeric quantile-quantile pairs for a Pareto fit to losses recorded above
/// a deductible `d`: standard exponential plotting positions against log
/// losses. Only fully observed losses should be passed in.
pub fn pareto_qq_pairs(losses: &[f64], d: f64) -> Vec<(f64, f64)> {
    let mut sorted: Vec<f64> = losses.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = sorted.len();
    sorted
        .iter()
        .enumerate()
        .map(|(i, &l)| {
            let p = (i + 1) as f64 / (n + 1) as f64;
            (-(1.0 - p).ln(), (l.max(d)).ln())
        })
        .collect()
}

/// Ordinary least squares line through the pairs, returned as
/// `(intercept, slope)`.
pub fn ols_line(pairs: &[(f64, f64)]) -> (f64, f64) {
    let n = pairs.len() as f64;
    let mean_x = pairs.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = pairs.iter().map(|p| p.1).sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for &(x, y) in pairs {
        sxx += (x - mean_x) * (x - mean_x);
        sxy += (x - mean_x) * (y - mean_y);
    }
    let slope = sxy / sxx;
    (mean_y - slope * mean_x, slope)
}
