//! Point estimators of the Pareto tail parameter for payment data.
//!
//! Payment-per-payment (Y) samples admit a closed-form maximum likelihood
//! estimator; the payment-per-loss (Z) likelihood is maximized numerically by
//! root-bracketing its score. The trimmed (T) and winsorized (W) estimators
//! match the first sample moment of a log transformation against its
//! population counterpart, which for the fully observed arrangement gives
//! explicit formulas:
//!
//! * T for payments Y: `alpha = I_t(a, 1-b) / ((1-a-b) T_hat)`;
//! * W for payments Y: `alpha = I_w(a, 1-b) / W_hat`;
//! * T/W for payments Z subtract `ln x0` from the sample moment first.
//!
//! When the window extends into right-censored mass (payment Y, case 2) the
//! matching equation has no closed form and is solved numerically. Estimation
//! from censored mass alone (case 1) is impossible; those arrangements are
//! rejected.
//!
//! All numeric solves bracket the root starting from `(0.01, 100)`, expanding
//! to `(1e-6, 1e3)`, and bisect to `1e-10`; solve diagnostics (bracket,
//! iteration count, terminal residual) are kept on the fit result.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::asymptotics::VarianceModel;
use crate::distributions::ParetoI;
use crate::moments::{
    classify_case, sample_t_moment, sample_w_moment, CaseArrangement, HTransform, MomentError,
    TrimSpec,
};
use crate::numerics::{bracket_and_solve, RootError, RootSolve};
use crate::transforms::{
    payment_y_dist, payment_z_dist, ObservedDistribution, PolicyTerms, TransformError,
};

/// Relative tolerance for recognizing a payment as sitting at the policy
/// limit `c (u - d)`.
pub const AT_LIMIT_REL_TOL: f64 = 1e-9;

const SOLVE_TOL: f64 = 1e-10;
const BRACKET_INIT: (f64, f64) = (0.01, 100.0);
const BRACKET_LIMITS: (f64, f64) = (1e-6, 1e3);

#[derive(Debug, Clone, Error, PartialEq)]
pub enum EstimatorError {
    #[error("data error: {0}")]
    Data(String),
    #[error("non-identifiable: {0}")]
    NonIdentifiable(String),
    #[error("degenerate data: {0}")]
    Degenerate(String),
    #[error("arrangement violation: {0}")]
    Case(String),
    #[error("solver failure: {0}")]
    Solver(#[from] RootError),
    #[error(transparent)]
    Moment(#[from] MomentError),
    #[error(transparent)]
    Transform(#[from] TransformError),
}

/// Per-payment observation status.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PaymentStatus {
    Uncensored,
    AtLimit,
    Zero,
}

/// A sample of insurance payments under common policy terms.
///
/// Statuses may be supplied explicitly or inferred: zero values are zero
/// payments, values within [`AT_LIMIT_REL_TOL`] of `c (u - d)` sit at the
/// limit. Explicit flags win on conflict, and flagged values are normalized
/// onto their atom location so order statistics stay coherent.
#[derive(Debug, Clone, PartialEq)]
pub struct PaymentSample {
    values: Vec<f64>,
    statuses: Vec<PaymentStatus>,
    terms: PolicyTerms,
}

impl PaymentSample {
    /// Build a sample, inferring statuses from the values.
    pub fn new(values: Vec<f64>, terms: PolicyTerms) -> Result<Self, EstimatorError> {
        let ymax = terms.max_payment();
        let statuses = values
            .iter()
            .map(|&v| {
                if v == 0.0 {
                    PaymentStatus::Zero
                } else if ymax.is_finite() && (v - ymax).abs() <= AT_LIMIT_REL_TOL * ymax {
                    PaymentStatus::AtLimit
                } else {
                    PaymentStatus::Uncensored
                }
            })
            .collect();
        Self::with_statuses(values, statuses, terms)
    }

    /// Build a sample with explicit statuses.
    pub fn with_statuses(
        mut values: Vec<f64>,
        statuses: Vec<PaymentStatus>,
        terms: PolicyTerms,
    ) -> Result<Self, EstimatorError> {
        if values.len() != statuses.len() {
            return Err(EstimatorError::Data(format!(
                "{} values but {} status flags",
                values.len(),
                statuses.len()
            )));
        }
        let ymax = terms.max_payment();
        for (i, (v, st)) in values.iter_mut().zip(&statuses).enumerate() {
            if !v.is_finite() || *v < 0.0 {
                return Err(EstimatorError::Data(format!(
                    "payment #{i} = {v} must be finite and nonnegative"
                )));
            }
            match st {
                PaymentStatus::Zero => *v = 0.0,
                PaymentStatus::AtLimit => {
                    if !ymax.is_finite() {
                        return Err(EstimatorError::Data(format!(
                            "payment #{i} flagged at-limit but the policy has no limit"
                        )));
                    }
                    *v = ymax;
                }
                PaymentStatus::Uncensored => {
                    if ymax.is_finite() && *v > ymax * (1.0 + AT_LIMIT_REL_TOL) {
                        return Err(EstimatorError::Data(format!(
                            "payment #{i} = {v} exceeds the maximum payment {ymax}"
                        )));
                    }
                }
            }
        }
        Ok(Self { values, statuses, terms })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn statuses(&self) -> &[PaymentStatus] {
        &self.statuses
    }

    pub fn terms(&self) -> &PolicyTerms {
        &self.terms
    }

    /// Ascending copy of the payment values.
    pub fn sorted_values(&self) -> Vec<f64> {
        let mut v = self.values.clone();
        v.sort_by(|a, b| a.partial_cmp(b).unwrap());
        v
    }

    /// `(zero, uncensored, at-limit)` counts.
    pub fn status_counts(&self) -> (usize, usize, usize) {
        let mut c = (0, 0, 0);
        for st in &self.statuses {
            match st {
                PaymentStatus::Zero => c.0 += 1,
                PaymentStatus::Uncensored => c.1 += 1,
                PaymentStatus::AtLimit => c.2 += 1,
            }
        }
        c
    }

    /// Share of fully observed payments, `#{0 < y < c(u-d)} / n`. Ties at the
    /// limit count as censored.
    pub fn uncensored_share(&self) -> f64 {
        let (_, unc, _) = self.status_counts();
        unc as f64 / self.values.len() as f64
    }

    fn require_no_zeros(&self, who: &str) -> Result<(), EstimatorError> {
        let (zeros, _, _) = self.status_counts();
        if zeros > 0 {
            return Err(EstimatorError::Data(format!(
                "{who} applies to payment-per-payment data, but the sample has {zeros} zero payments"
            )));
        }
        Ok(())
    }
}

/// Which estimator produced a fit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EstimatorTag {
    MleY,
    MleZ,
    TrimmedY { a: f64, b: f64, case: CaseArrangement },
    TrimmedYCase2 { a: f64, b: f64 },
    WinsorizedY { a: f64, b: f64, case: CaseArrangement },
    TrimmedZ { a: f64, b: f64 },
    WinsorizedZ { a: f64, b: f64 },
    ThresholdCensoredMle { d_tilde: f64, u_tilde: f64 },
}

/// A point estimate of the Pareto tail parameter with its provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct FitResult {
    pub alpha_hat: f64,
    pub estimator: EstimatorTag,
    pub n_used: usize,
    /// Present for numerically solved fits.
    pub diagnostics: Option<RootSolve>,
}

fn finite_positive(alpha: f64, what: &str) -> Result<f64, EstimatorError> {
    if alpha.is_finite() && alpha > 0.0 {
        Ok(alpha)
    } else {
        Err(EstimatorError::Degenerate(format!("{what} produced alpha = {alpha}")))
    }
}

/// Closed-form maximum likelihood for payments per payment.
///
/// `alpha = n_unc / [sum_unc ln(y/(c d) + 1) + n_lim ln(u/d)]`.
pub fn mle_payment_y(s: &PaymentSample) -> Result<FitResult, EstimatorError> {
    s.require_no_zeros("maximum likelihood for payments per payment")?;
    let PolicyTerms { c, d, u } = *s.terms();
    if d <= 0.0 {
        return Err(EstimatorError::Data("payment-per-payment fits need a positive deductible".into()));
    }
    let (_, n_unc, n_lim) = s.status_counts();
    if n_unc == 0 {
        return Err(EstimatorError::NonIdentifiable(
            "no fully observed payments; the likelihood carries no information on alpha".into(),
        ));
    }
    let mut denom = 0.0;
    for (v, st) in s.values().iter().zip(s.statuses()) {
        if *st == PaymentStatus::Uncensored {
            if *v <= 0.0 {
                return Err(EstimatorError::Data(format!(
                    "uncensored payment {v} must be strictly positive"
                )));
            }
            denom += (v / (c * d) + 1.0).ln();
        }
    }
    if n_lim > 0 {
        denom += (u / d).ln() * n_lim as f64;
    }
    let alpha_hat = finite_positive(n_unc as f64 / denom, "payment-Y maximum likelihood")?;
    Ok(FitResult { alpha_hat, estimator: EstimatorTag::MleY, n_used: s.len(), diagnostics: None })
}

/// Score of the interval-censored Pareto likelihood with left atom at
/// `d_low`, right atom at `u_high`, and `n_int` interior observations whose
/// log losses (relative to `x0`) sum to `interior_log_sum`.
#[allow(clippy::too_many_arguments)]
fn censored_score(
    alpha: f64,
    n_low: f64,
    n_high: f64,
    n_int: f64,
    interior_log_sum: f64,
    x0: f64,
    d_low: f64,
    u_high: f64,
) -> f64 {
    let log_qd = (x0 / d_low).ln();
    let q_d = f64::exp(alpha * log_qd);
    let low_term = if n_low > 0.0 { -n_low * q_d * log_qd / (1.0 - q_d) } else { 0.0 };
    let high_term = if n_high > 0.0 { n_high * (x0 / u_high).ln() } else { 0.0 };
    low_term + high_term + n_int / alpha - interior_log_sum
}

fn solve_censored_mle(
    n_low: usize,
    n_high: usize,
    n_int: usize,
    interior_log_sum: f64,
    x0: f64,
    d_low: f64,
    u_high: f64,
) -> Result<(f64, RootSolve), EstimatorError> {
    if n_int == 0 {
        return Err(EstimatorError::NonIdentifiable(
            "all observations sit at the censoring atoms; the likelihood is monotone in alpha"
                .into(),
        ));
    }
    let solve = bracket_and_solve(
        |alpha| {
            censored_score(
                alpha,
                n_low as f64,
                n_high as f64,
                n_int as f64,
                interior_log_sum,
                x0,
                d_low,
                u_high,
            )
        },
        BRACKET_INIT,
        BRACKET_LIMITS,
        SOLVE_TOL,
    )?;
    Ok((finite_positive(solve.root, "censored maximum likelihood")?, solve))
}

/// Numerically maximized likelihood for payments per loss.
pub fn mle_payment_z(s: &PaymentSample, x0: f64) -> Result<FitResult, EstimatorError> {
    let PolicyTerms { c, d, u } = *s.terms();
    if !(x0 > 0.0 && d > x0) {
        return Err(EstimatorError::Data(format!(
            "need 0 < x0 < d, got x0 = {x0}, d = {d}"
        )));
    }
    let (n_zero, n_unc, n_lim) = s.status_counts();
    let mut interior_log_sum = 0.0;
    for (v, st) in s.values().iter().zip(s.statuses()) {
        if *st == PaymentStatus::Uncensored {
            interior_log_sum += ((v / c + d) / x0).ln();
        }
    }
    let (alpha_hat, solve) =
        solve_censored_mle(n_zero, n_lim, n_unc, interior_log_sum, x0, d, u)?;
    Ok(FitResult {
        alpha_hat,
        estimator: EstimatorTag::MleZ,
        n_used: s.len(),
        diagnostics: Some(solve),
    })
}

fn payment_y_case(s: &PaymentSample, t: TrimSpec) -> CaseArrangement {
    classify_case(t, 0.0, s.uncensored_share())
}

/// Explicit trimmed-moment estimator for payments per payment (window inside
/// the fully observed region).
pub fn t_estimator_payment_y(s: &PaymentSample, t: TrimSpec) -> Result<FitResult, EstimatorError> {
    s.require_no_zeros("the trimmed estimator")?;
    let (a, b) = (t.a(), t.b());
    match payment_y_case(s, t) {
        CaseArrangement::Case6 => {}
        CaseArrangement::Case4 => {
            return Err(EstimatorError::NonIdentifiable(format!(
                "a = {a} places the whole window in censored mass; estimation of alpha is impossible"
            )));
        }
        _ => {
            return Err(EstimatorError::Case(format!(
                "need 1 - b = {} at or below the uncensored share {:.6}; use the case-2 solver instead",
                1.0 - b,
                s.uncensored_share()
            )));
        }
    }
    let PolicyTerms { c, d, .. } = *s.terms();
    let sorted = s.sorted_values();
    let t_hat = sample_t_moment(&sorted, HTransform::PaymentY { c, d }, 1, t)?;
    if t_hat <= 0.0 {
        return Err(EstimatorError::Degenerate(format!("trimmed moment {t_hat} is not positive")));
    }
    let alpha_hat = finite_positive(
        crate::asymptotics::i_t(a, 1.0 - b) / ((1.0 - a - b) * t_hat),
        "trimmed estimator",
    )?;
    Ok(FitResult {
        alpha_hat,
        estimator: EstimatorTag::TrimmedY { a, b, case: CaseArrangement::Case6 },
        n_used: s.len(),
        diagnostics: None,
    })
}

/// Trimmed-moment estimator for payments per payment when the window extends
/// into right-censored mass (case 2), solved numerically.
///
/// The matching equation is solved as the root of the concave function
/// `G(alpha) = K - (d/u)^alpha + (b ln(d/u) - (1-a-b) T_hat) alpha` with
/// `K = (1-a)(1 - ln(1-a))`; the statistically meaningful root is the one on
/// the decreasing branch past the maximizer of `G`.
pub fn t_estimator_payment_y_case2(
    s: &PaymentSample,
    t: TrimSpec,
) -> Result<FitResult, EstimatorError> {
    s.require_no_zeros("the trimmed estimator")?;
    let PolicyTerms { c, d, u } = *s.terms();
    if !u.is_finite() {
        return Err(EstimatorError::Data(
            "the case-2 trimmed estimator needs a finite policy limit".into(),
        ));
    }
    let (a, b) = (t.a(), t.b());
    if s.uncensored_share() <= a {
        return Err(EstimatorError::NonIdentifiable(format!(
            "a = {a} places the whole window in censored mass; estimation of alpha is impossible"
        )));
    }
    let sorted = s.sorted_values();
    let t_hat = sample_t_moment(&sorted, HTransform::PaymentY { c, d }, 1, t)?;
    let k = (1.0 - a) * (1.0 - (1.0 - a).ln());
    let l = (d / u).ln();
    let slope = b * l - (1.0 - a - b) * t_hat;
    let g = |alpha: f64| k - f64::exp(alpha * l) + slope * alpha;
    // G is concave with G(0) <= 0; a positive root exists only past the peak
    let ratio = slope / l; // e^{alpha_peak l}
    if !(0.0 < ratio && ratio < 1.0) {
        return Err(EstimatorError::Solver(RootError::NoSignChange {
            lo: BRACKET_LIMITS.0,
            hi: BRACKET_LIMITS.1,
            f_lo: g(BRACKET_LIMITS.0),
            f_hi: g(BRACKET_LIMITS.1),
        }));
    }
    let peak = ratio.ln() / l;
    if g(peak) < 0.0 {
        return Err(EstimatorError::Solver(RootError::NoSignChange {
            lo: peak,
            hi: BRACKET_LIMITS.1,
            f_lo: g(peak),
            f_hi: g(BRACKET_LIMITS.1),
        }));
    }
    let solve = bracket_and_solve(
        g,
        (peak.max(BRACKET_LIMITS.0), (10.0 * peak).max(BRACKET_INIT.1)),
        (peak.max(BRACKET_LIMITS.0), BRACKET_LIMITS.1),
        SOLVE_TOL,
    )?;
    let alpha_hat = finite_positive(solve.root, "case-2 trimmed estimator")?;
    Ok(FitResult {
        alpha_hat,
        estimator: EstimatorTag::TrimmedYCase2 { a, b },
        n_used: s.len(),
        diagnostics: Some(solve),
    })
}

/// Explicit winsorized-moment estimator for payments per payment.
pub fn w_estimator_payment_y(s: &PaymentSample, t: TrimSpec) -> Result<FitResult, EstimatorError> {
    s.require_no_zeros("the winsorized estimator")?;
    let (a, b) = (t.a(), t.b());
    match payment_y_case(s, t) {
        CaseArrangement::Case6 => {}
        CaseArrangement::Case4 => {
            return Err(EstimatorError::NonIdentifiable(format!(
                "a = {a} places the whole window in censored mass; estimation of alpha is impossible"
            )));
        }
        _ => {
            return Err(EstimatorError::Case(format!(
                "need 1 - b = {} at or below the uncensored share {:.6}",
                1.0 - b,
                s.uncensored_share()
            )));
        }
    }
    let PolicyTerms { c, d, .. } = *s.terms();
    let sorted = s.sorted_values();
    let w_hat = sample_w_moment(&sorted, HTransform::PaymentY { c, d }, 1, t)?;
    if w_hat <= 0.0 {
        return Err(EstimatorError::Degenerate(format!(
            "winsorized moment {w_hat} is not positive"
        )));
    }
    let alpha_hat =
        finite_positive(crate::asymptotics::i_w(a, 1.0 - b) / w_hat, "winsorized estimator")?;
    Ok(FitResult {
        alpha_hat,
        estimator: EstimatorTag::WinsorizedY { a, b, case: CaseArrangement::Case6 },
        n_used: s.len(),
        diagnostics: None,
    })
}

fn payment_z_window_check(s: &PaymentSample, t: TrimSpec) -> Result<(), EstimatorError> {
    let n = s.len() as f64;
    let (n_zero, _, n_lim) = s.status_counts();
    let p1 = n_zero as f64 / n;
    let p2 = 1.0 - n_lim as f64 / n;
    if !(p1 <= t.a()) {
        return Err(EstimatorError::Case(format!(
            "lower proportion a = {} is below the zero-payment share {p1:.6}",
            t.a()
        )));
    }
    if !(1.0 - t.b() <= p2) {
        return Err(EstimatorError::Case(format!(
            "1 - b = {} exceeds the fully observed ceiling {p2:.6}",
            1.0 - t.b()
        )));
    }
    Ok(())
}

/// Explicit trimmed-moment estimator for payments per loss.
pub fn t_estimator_payment_z(
    s: &PaymentSample,
    t: TrimSpec,
    x0: f64,
) -> Result<FitResult, EstimatorError> {
    let PolicyTerms { c, d, .. } = *s.terms();
    if !(x0 > 0.0 && x0 < d) {
        return Err(EstimatorError::Data(format!(
            "need 0 < x0 < d, got x0 = {x0}, d = {d}"
        )));
    }
    payment_z_window_check(s, t)?;
    let (a, b) = (t.a(), t.b());
    let sorted = s.sorted_values();
    let t_hat = sample_t_moment(&sorted, HTransform::PaymentZ { c, d }, 1, t)?;
    let centered = t_hat - x0.ln();
    if centered <= 0.0 {
        return Err(EstimatorError::Degenerate(format!(
            "trimmed moment {t_hat} does not exceed ln(x0) = {}",
            x0.ln()
        )));
    }
    let alpha_hat = finite_positive(
        crate::asymptotics::i_t(a, 1.0 - b) / ((1.0 - a - b) * centered),
        "trimmed estimator",
    )?;
    Ok(FitResult {
        alpha_hat,
        estimator: EstimatorTag::TrimmedZ { a, b },
        n_used: s.len(),
        diagnostics: None,
    })
}

/// Explicit winsorized-moment estimator for payments per loss.
pub fn w_estimator_payment_z(
    s: &PaymentSample,
    t: TrimSpec,
    x0: f64,
) -> Result<FitResult, EstimatorError> {
    let PolicyTerms { c, d, .. } = *s.terms();
    if !(x0 > 0.0 && x0 < d) {
        return Err(EstimatorError::Data(format!(
            "need 0 < x0 < d, got x0 = {x0}, d = {d}"
        )));
    }
    payment_z_window_check(s, t)?;
    let (a, b) = (t.a(), t.b());
    let sorted = s.sorted_values();
    let w_hat = sample_w_moment(&sorted, HTransform::PaymentZ { c, d }, 1, t)?;
    let centered = w_hat - x0.ln();
    if centered <= 0.0 {
        return Err(EstimatorError::Degenerate(format!(
            "winsorized moment {w_hat} does not exceed ln(x0) = {}",
            x0.ln()
        )));
    }
    let alpha_hat =
        finite_positive(crate::asymptotics::i_w(a, 1.0 - b) / centered, "winsorized estimator")?;
    Ok(FitResult {
        alpha_hat,
        estimator: EstimatorTag::WinsorizedZ { a, b },
        n_used: s.len(),
        diagnostics: None,
    })
}

/// Censored maximum likelihood with data-driven thresholds treated as fixed.
///
/// Payments are mapped to the loss scale, losses strictly below `d_tilde` are
/// left-censored, losses strictly above `u_tilde` right-censored, and the
/// interval-censored Pareto likelihood with scale `x0` is maximized. With
/// `d_tilde` at the sample minimum and `u_tilde` above the maximum nothing is
/// censored and the fit coincides with the plain maximum likelihood estimate.
///
/// The asymptotic variance reported downstream assumes the thresholds are
/// fixed in advance, which estimated thresholds are not.
pub fn fit_with_estimated_thresholds(
    s: &PaymentSample,
    d_tilde: f64,
    u_tilde: f64,
    x0: f64,
) -> Result<FitResult, EstimatorError> {
    if !(x0 > 0.0 && x0 < d_tilde && d_tilde < u_tilde) {
        return Err(EstimatorError::Data(format!(
            "need 0 < x0 < d_tilde < u_tilde, got x0 = {x0}, d_tilde = {d_tilde}, u_tilde = {u_tilde}"
        )));
    }
    let PolicyTerms { c, d, u } = *s.terms();
    let mut n_low = 0usize;
    let mut n_high = 0usize;
    let mut n_int = 0usize;
    let mut interior_log_sum = 0.0;
    for (v, st) in s.values().iter().zip(s.statuses()) {
        match st {
            // a zero payment only locates the loss at or below d
            PaymentStatus::Zero => {
                if d_tilde < d {
                    return Err(EstimatorError::Data(format!(
                        "zero payments locate the loss below d = {d}, which is above the censoring threshold {d_tilde}"
                    )));
                }
                n_low += 1;
            }
            // an at-limit payment only locates the loss at or above u
            PaymentStatus::AtLimit => {
                if u_tilde > u {
                    return Err(EstimatorError::Data(format!(
                        "at-limit payments locate the loss above u = {u}, which is below the censoring threshold {u_tilde}"
                    )));
                }
                n_high += 1;
            }
            PaymentStatus::Uncensored => {
                let loss = v / c + d;
                if loss < d_tilde {
                    n_low += 1;
                } else if loss > u_tilde {
                    n_high += 1;
                } else {
                    n_int += 1;
                    interior_log_sum += (loss / x0).ln();
                }
            }
        }
    }
    let (alpha_hat, solve) =
        solve_censored_mle(n_low, n_high, n_int, interior_log_sum, x0, d_tilde, u_tilde)?;
    Ok(FitResult {
        alpha_hat,
        estimator: EstimatorTag::ThresholdCensoredMle { d_tilde, u_tilde },
        n_used: s.len(),
        diagnostics: Some(solve),
    })
}

/// Uniform dispatch over the estimator family, used by the bootstrap, the
/// simulation harness, and the command-line front end.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Estimator {
    MleY,
    TrimmedY(TrimSpec),
    TrimmedYCase2(TrimSpec),
    WinsorizedY(TrimSpec),
    MleZ { x0: f64 },
    TrimmedZ { trim: TrimSpec, x0: f64 },
    WinsorizedZ { trim: TrimSpec, x0: f64 },
    ThresholdCensoredMle { d_tilde: f64, u_tilde: f64, x0: f64 },
}

impl Estimator {
    pub fn fit(&self, s: &PaymentSample) -> Result<FitResult, EstimatorError> {
        match *self {
            Estimator::MleY => mle_payment_y(s),
            Estimator::TrimmedY(t) => t_estimator_payment_y(s, t),
            Estimator::TrimmedYCase2(t) => t_estimator_payment_y_case2(s, t),
            Estimator::WinsorizedY(t) => w_estimator_payment_y(s, t),
            Estimator::MleZ { x0 } => mle_payment_z(s, x0),
            Estimator::TrimmedZ { trim, x0 } => t_estimator_payment_z(s, trim, x0),
            Estimator::WinsorizedZ { trim, x0 } => w_estimator_payment_z(s, trim, x0),
            Estimator::ThresholdCensoredMle { d_tilde, u_tilde, x0 } => {
                fit_with_estimated_thresholds(s, d_tilde, u_tilde, x0)
            }
        }
    }

    /// Variance scenario matching this estimator at the fitted `alpha_hat`.
    pub fn variance_model(&self, terms: &PolicyTerms, alpha_hat: f64) -> VarianceModel {
        match *self {
            Estimator::MleY => {
                VarianceModel::MlePaymentY { alpha: alpha_hat, d: terms.d, u: terms.u }
            }
            Estimator::TrimmedY(t) => VarianceModel::TrimmedY { a: t.a(), b: t.b() },
            Estimator::TrimmedYCase2(t) => VarianceModel::TrimmedYCase2 {
                alpha: alpha_hat,
                a: t.a(),
                d: terms.d,
                u: terms.u,
            },
            Estimator::WinsorizedY(t) => VarianceModel::WinsorizedY { a: t.a(), b: t.b() },
            Estimator::MleZ { x0 } => VarianceModel::MlePaymentZ {
                alpha: alpha_hat,
                x0,
                d: terms.d,
                u: terms.u,
            },
            Estimator::TrimmedZ { trim, .. } => {
                VarianceModel::TrimmedZ { a: trim.a(), b: trim.b() }
            }
            Estimator::WinsorizedZ { trim, .. } => {
                VarianceModel::WinsorizedZ { a: trim.a(), b: trim.b() }
            }
            Estimator::ThresholdCensoredMle { d_tilde, u_tilde, x0 } => {
                VarianceModel::MlePaymentZ { alpha: alpha_hat, x0, d: d_tilde, u: u_tilde }
            }
        }
    }

    /// Observed-data distribution implied by this estimator at `alpha`, used
    /// to simulate bootstrap replicates. Payment-per-payment distributions do
    /// not depend on the ground-up scale, so the deductible stands in for it.
    pub fn fitted_distribution(
        &self,
        terms: &PolicyTerms,
        alpha: f64,
    ) -> Result<ObservedDistribution<ParetoI>, EstimatorError> {
        let model_scale = match *self {
            Estimator::MleZ { x0 }
            | Estimator::TrimmedZ { x0, .. }
            | Estimator::WinsorizedZ { x0, .. } => x0,
            _ => terms.d,
        };
        let model = ParetoI::new(model_scale, alpha)
            .map_err(|e| EstimatorError::Data(e.to_string()))?;
        match *self {
            Estimator::MleZ { .. } | Estimator::TrimmedZ { .. } | Estimator::WinsorizedZ { .. } => {
                Ok(payment_z_dist(model, *terms)?)
            }
            _ => Ok(payment_y_dist(model, *terms)?),
        }
    }

    pub fn trim(&self) -> Option<TrimSpec> {
        match *self {
            Estimator::TrimmedY(t)
            | Estimator::TrimmedYCase2(t)
            | Estimator::WinsorizedY(t) => Some(t),
            Estimator::TrimmedZ { trim, .. } | Estimator::WinsorizedZ { trim, .. } => Some(trim),
            _ => None,
        }
    }

    pub fn label(&self) -> String {
        match *self {
            Estimator::MleY | Estimator::MleZ { .. } => "MLE".into(),
            Estimator::TrimmedY(t) | Estimator::TrimmedZ { trim: t, .. } => {
                format!("T a={:.2} b={:.2}", t.a(), t.b())
            }
            Estimator::TrimmedYCase2(t) => format!("T2 a={:.2} b={:.2}", t.a(), t.b()),
            Estimator::WinsorizedY(t) | Estimator::WinsorizedZ { trim: t, .. } => {
                format!("W a={:.2} b={:.2}", t.a(), t.b())
            }
            Estimator::ThresholdCensoredMle { d_tilde, u_tilde, .. } => {
                format!("MLE censored [{d_tilde:.0}, {u_tilde:.0}]")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn terms(c: f64, d: f64, u: f64) -> PolicyTerms {
        PolicyTerms::new(c, d, u).unwrap()
    }

    fn trim(a: f64, b: f64) -> TrimSpec {
        TrimSpec::new(a, b).unwrap()
    }

    #[test]
    fn status_inference() {
        let s =
            PaymentSample::new(vec![0.0, 3.0, 8.0, 8.0 * (1.0 + 1e-12)], terms(1.0, 2.0, 10.0))
                .unwrap();
        assert_eq!(
            s.statuses(),
            &[
                PaymentStatus::Zero,
                PaymentStatus::Uncensored,
                PaymentStatus::AtLimit,
                PaymentStatus::AtLimit
            ]
        );
        // explicit flags win and the value is normalized onto the atom
        let s = PaymentSample::with_statuses(
            vec![7.9999],
            vec![PaymentStatus::AtLimit],
            terms(1.0, 2.0, 10.0),
        )
        .unwrap();
        assert_eq!(s.values(), &[8.0]);
    }

    #[test]
    fn sample_rejects_impossible_values() {
        assert!(PaymentSample::new(vec![9.0], terms(1.0, 2.0, 10.0)).is_err());
        assert!(PaymentSample::new(vec![f64::NAN], terms(1.0, 2.0, 10.0)).is_err());
        assert!(PaymentSample::with_statuses(
            vec![5.0],
            vec![PaymentStatus::AtLimit],
            terms(1.0, 2.0, f64::INFINITY),
        )
        .is_err());
    }

    #[test]
    fn mle_y_hand_example() {
        // c = 1, d = 1, u = 10, one observed payment of 1 and one at the limit:
        // alpha = 1 / (ln 2 + ln 10)
        let s = PaymentSample::new(vec![1.0, 9.0], terms(1.0, 1.0, 10.0)).unwrap();
        let fit = mle_payment_y(&s).unwrap();
        assert!((fit.alpha_hat - 1.0 / (2.0_f64.ln() + 10.0_f64.ln())).abs() < 1e-12);
        assert!((fit.alpha_hat - 0.3338).abs() < 1e-4);
    }

    #[test]
    fn mle_y_unit_denominator() {
        // construct payments whose transformed logs sum to n
        let t = terms(1.0, 2.0, f64::INFINITY);
        let y: Vec<f64> = (1..=4).map(|_| 2.0 * (1.0_f64.exp() - 1.0)).collect();
        let s = PaymentSample::new(y, t).unwrap();
        let fit = mle_payment_y(&s).unwrap();
        assert!((fit.alpha_hat - 1.0).abs() < 1e-12);
    }

    #[test]
    fn mle_y_requires_information() {
        let t = terms(1.0, 2.0, 10.0);
        let s = PaymentSample::new(vec![8.0, 8.0], t).unwrap();
        assert!(matches!(mle_payment_y(&s), Err(EstimatorError::NonIdentifiable(_))));
    }

    /// Grid-search oracle maximizing the payment-Z log likelihood directly.
    fn mle_z_grid_oracle(s: &PaymentSample, x0: f64) -> f64 {
        let PolicyTerms { c, d, u } = *s.terms();
        let loglik = |alpha: f64| {
            let mut ll = 0.0;
            for (v, st) in s.values().iter().zip(s.statuses()) {
                ll += match st {
                    PaymentStatus::Zero => (-f64::exp_m1(alpha * (x0 / d).ln())).ln(),
                    PaymentStatus::AtLimit => alpha * (x0 / u).ln(),
                    PaymentStatus::Uncensored => {
                        (alpha / (c * x0)).ln() - (alpha + 1.0) * ((v / c + d) / x0).ln()
                    }
                };
            }
            ll
        };
        // coarse grid then golden-section refinement
        let mut best = (0.01, loglik(0.01));
        let mut alpha = 0.01;
        while alpha < 100.0 {
            let ll = loglik(alpha);
            if ll > best.1 {
                best = (alpha, ll);
            }
            alpha *= 1.01;
        }
        let (mut lo, mut hi) = (best.0 / 1.02, best.0 * 1.02);
        let phi = 0.5 * (5.0_f64.sqrt() - 1.0);
        for _ in 0..200 {
            let m1 = hi - phi * (hi - lo);
            let m2 = lo + phi * (hi - lo);
            if loglik(m1) < loglik(m2) {
                lo = m1;
            } else {
                hi = m2;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn mle_z_matches_grid_oracle() {
        let t = terms(1.0, 2.0, 30.0);
        let model = ParetoI::new(1.0, 1.6).unwrap();
        let dist = payment_z_dist(model, t).unwrap();
        let values = dist.sample(400, 11);
        let s = PaymentSample::new(values, t).unwrap();
        let fit = mle_payment_z(&s, 1.0).unwrap();
        let oracle = mle_z_grid_oracle(&s, 1.0);
        assert!((fit.alpha_hat - oracle).abs() < 1e-6, "{} vs {oracle}", fit.alpha_hat);
        // interior-only data still goes through the same score
        let interior: Vec<f64> = s
            .values()
            .iter()
            .zip(s.statuses())
            .filter(|(_, st)| **st == PaymentStatus::Uncensored)
            .map(|(v, _)| *v)
            .collect();
        let s2 = PaymentSample::new(interior, t).unwrap();
        let fit2 = mle_payment_z(&s2, 1.0).unwrap();
        let oracle2 = mle_z_grid_oracle(&s2, 1.0);
        assert!((fit2.alpha_hat - oracle2).abs() < 1e-6);
    }

    #[test]
    fn mle_z_balanced_score_at_one() {
        // pick interior values so the score vanishes exactly at alpha = 1
        let t = terms(1.0, 2.0, 20.0);
        let x0 = 1.0;
        let (n_zero, n_lim, n_int) = (6usize, 1usize, 5usize);
        let q_d = x0 / t.d; // (x0/d)^1
        let balance = -(n_zero as f64) * q_d * (x0 / t.d).ln() / (1.0 - q_d)
            + n_lim as f64 * (x0 / t.u).ln()
            + n_int as f64;
        let target_log = balance / n_int as f64; // per-observation ln(l / x0)
        let z = (x0 * target_log.exp() - t.d) * t.c;
        assert!(z > 0.0 && z < t.max_payment());
        let mut values = vec![0.0; n_zero];
        values.extend(vec![t.max_payment(); n_lim]);
        values.extend(vec![z; n_int]);
        let s = PaymentSample::new(values, t).unwrap();
        let fit = mle_payment_z(&s, x0).unwrap();
        assert!((fit.alpha_hat - 1.0).abs() < 1e-9, "alpha = {}", fit.alpha_hat);
        let oracle = mle_z_grid_oracle(&s, x0);
        assert!((fit.alpha_hat - oracle).abs() < 1e-6);
    }

    #[test]
    fn mle_z_deterministic() {
        let t = terms(0.75, 2.0, 25.0);
        let dist = payment_z_dist(ParetoI::new(1.0, 2.0).unwrap(), t).unwrap();
        let s = PaymentSample::new(dist.sample(300, 5), t).unwrap();
        let a1 = mle_payment_z(&s, 1.0).unwrap().alpha_hat;
        let a2 = mle_payment_z(&s, 1.0).unwrap().alpha_hat;
        assert_eq!(a1.to_bits(), a2.to_bits());
    }

    #[test]
    fn mle_z_atoms_only_non_identifiable() {
        let t = terms(1.0, 2.0, 20.0);
        let s = PaymentSample::new(vec![0.0, 0.0, 18.0], t).unwrap();
        assert!(matches!(mle_payment_z(&s, 1.0), Err(EstimatorError::NonIdentifiable(_))));
    }

    #[test]
    fn t_y_unit_construction() {
        // five payments, a = b = 0.2: the middle three carry the trimmed mean
        let t = terms(1.0, 1.0, f64::INFINITY);
        let ts = trim(0.2, 0.2);
        let i_t = crate::asymptotics::i_t(0.2, 0.8);
        assert!((i_t - 0.45662).abs() < 1e-5);
        let target = i_t / 0.6; // T_hat that yields alpha = 1
        let y_mid = t.c * t.d * (target.exp() - 1.0);
        let values = vec![0.01, y_mid, y_mid, y_mid, 1e6];
        let s = PaymentSample::new(values, t).unwrap();
        let fit = t_estimator_payment_y(&s, ts).unwrap();
        assert!((fit.alpha_hat - 1.0).abs() < 1e-12);
    }

    #[test]
    fn w_y_unit_construction() {
        let t = terms(1.0, 1.0, f64::INFINITY);
        let ts = trim(0.2, 0.2);
        let i_w = crate::asymptotics::i_w(0.2, 0.8);
        assert!((i_w - 0.82314).abs() < 1e-5);
        // all payments equal: the winsorized moment is the common h value
        let y = t.c * t.d * (i_w.exp() - 1.0);
        let s = PaymentSample::new(vec![y; 5], t).unwrap();
        let fit = w_estimator_payment_y(&s, ts).unwrap();
        assert!((fit.alpha_hat - 1.0).abs() < 1e-12);
    }

    #[test]
    fn t_w_match_mle_without_trimming() {
        let t = terms(1.0, 2.0, f64::INFINITY);
        let dist = payment_y_dist(ParetoI::new(2.0, 1.3).unwrap(), t).unwrap();
        let s = PaymentSample::new(dist.sample(500, 3), t).unwrap();
        let ts = trim(0.0, 0.0);
        let mle = mle_payment_y(&s).unwrap().alpha_hat;
        let t_est = t_estimator_payment_y(&s, ts).unwrap().alpha_hat;
        let w_est = w_estimator_payment_y(&s, ts).unwrap().alpha_hat;
        assert!((t_est - mle).abs() <= 1e-10 * mle);
        assert!((w_est - mle).abs() <= 1e-10 * mle);
    }

    #[test]
    fn t_y_case_errors() {
        let t = terms(1.0, 2.0, 10.0);
        // every payment censored: case with no information
        let s = PaymentSample::new(vec![8.0, 8.0, 8.0], t).unwrap();
        assert!(matches!(
            t_estimator_payment_y(&s, trim(0.1, 0.1)),
            Err(EstimatorError::NonIdentifiable(_))
        ));
        // some censoring but b too small for the explicit formula
        let s = PaymentSample::new(vec![1.0, 2.0, 3.0, 8.0], t).unwrap();
        assert!(matches!(
            t_estimator_payment_y(&s, trim(0.0, 0.1)),
            Err(EstimatorError::Case(_))
        ));
    }

    #[test]
    fn t_y_case2_consistency_monte_carlo() {
        let t = terms(1.0, 2.0, 14.0);
        let alpha = 1.5;
        let dist = payment_y_dist(ParetoI::new(2.0, alpha).unwrap(), t).unwrap();
        let s = PaymentSample::new(dist.sample(100_000, 21), t).unwrap();
        // delta = (d/u)^alpha ~ 0.054; b below delta keeps the window censored
        let fit = t_estimator_payment_y_case2(&s, trim(0.05, 0.01)).unwrap();
        assert!((fit.alpha_hat - alpha).abs() < 0.05, "alpha = {}", fit.alpha_hat);
        let again = t_estimator_payment_y_case2(&s, trim(0.05, 0.01)).unwrap();
        assert_eq!(fit.alpha_hat.to_bits(), again.alpha_hat.to_bits());
    }

    #[test]
    fn t_z_unit_construction_and_case_errors() {
        let t = terms(1.0, 2.0, 50.0);
        let x0 = 1.0_f64;
        let ts = trim(0.2, 0.2);
        let target = crate::asymptotics::i_t(0.2, 0.8) / 0.6 + x0.ln();
        let z = (target.exp() - t.d) * t.c;
        let s = PaymentSample::new(vec![z; 5], t).unwrap();
        let fit = t_estimator_payment_z(&s, ts, x0).unwrap();
        assert!((fit.alpha_hat - 1.0).abs() < 1e-12);
        // a below the zero-payment share
        let s = PaymentSample::new(vec![0.0, 0.0, 1.0, 2.0], t).unwrap();
        let err = t_estimator_payment_z(&s, trim(0.1, 0.1), x0).unwrap_err();
        assert!(matches!(err, EstimatorError::Case(_)));
    }

    #[test]
    fn t_z_consistency_monte_carlo() {
        let x0 = 1.0;
        let alpha = 2.0;
        // delta_l = 1 - (x0/d)^alpha = 0.5 at d = sqrt(2)
        let t = terms(1.0, 2.0_f64.sqrt(), 60.0);
        let dist = payment_z_dist(ParetoI::new(x0, alpha).unwrap(), t).unwrap();
        let s = PaymentSample::new(dist.sample(100_000, 33), t).unwrap();
        let fit = t_estimator_payment_z(&s, trim(0.6, 0.1), x0).unwrap();
        assert!((fit.alpha_hat - alpha).abs() < 0.06, "alpha = {}", fit.alpha_hat);
    }

    #[test]
    fn w_z_unit_and_agreement_with_t() {
        let t = terms(1.0, 2.0, 50.0);
        let x0 = 1.0_f64;
        let ts = trim(0.2, 0.2);
        let target = crate::asymptotics::i_w(0.2, 0.8) + x0.ln();
        let z = (target.exp() - t.d) * t.c;
        let s = PaymentSample::new(vec![z; 5], t).unwrap();
        let fit = w_estimator_payment_z(&s, ts, x0).unwrap();
        assert!((fit.alpha_hat - 1.0).abs() < 1e-12);
        // atom-free data, nothing trimmed: T and W moments coincide
        let dist = payment_z_dist(ParetoI::new(1.0, 1.5).unwrap(), terms(1.0, 1.5, f64::INFINITY))
            .unwrap();
        let values: Vec<f64> =
            dist.sample(200, 9).into_iter().filter(|&v| v > 0.0).collect();
        let s = PaymentSample::new(values, terms(1.0, 1.5, f64::INFINITY)).unwrap();
        let zero_trim = trim(0.0, 0.0);
        let t_fit = t_estimator_payment_z(&s, zero_trim, 1.0).unwrap();
        let w_fit = w_estimator_payment_z(&s, zero_trim, 1.0).unwrap();
        assert!((t_fit.alpha_hat - w_fit.alpha_hat).abs() < 1e-12);
    }

    #[test]
    fn w_z_consistency_monte_carlo() {
        let x0 = 1.0;
        let alpha = 1.5;
        // delta_l = 0.5 at d = 2^(1/1.5)
        let d = f64::exp(2.0_f64.ln() / alpha);
        let t = terms(1.0, d, 60.0);
        let dist = payment_z_dist(ParetoI::new(x0, alpha).unwrap(), t).unwrap();
        let s = PaymentSample::new(dist.sample(100_000, 44), t).unwrap();
        let fit = w_estimator_payment_z(&s, trim(0.5, 0.05), x0).unwrap();
        assert!((fit.alpha_hat - alpha).abs() < 0.05, "alpha = {}", fit.alpha_hat);
    }

    #[test]
    fn threshold_mle_without_censoring_is_plain_mle() {
        let t = terms(1.0, 2.0, f64::INFINITY);
        let dist = payment_y_dist(ParetoI::new(2.0, 1.4).unwrap(), t).unwrap();
        let s = PaymentSample::new(dist.sample(250, 17), t).unwrap();
        let losses: Vec<f64> = s.values().iter().map(|v| v / t.c + t.d).collect();
        let min = losses.iter().cloned().fold(f64::INFINITY, f64::min);
        let max = losses.iter().cloned().fold(0.0, f64::max);
        let fit = fit_with_estimated_thresholds(&s, min, max * 1.01, t.d).unwrap();
        let mle = mle_payment_y(&s).unwrap();
        assert!(
            (fit.alpha_hat - mle.alpha_hat).abs() < 1e-8 * mle.alpha_hat,
            "{} vs {}",
            fit.alpha_hat,
            mle.alpha_hat
        );
    }

    #[test]
    fn threshold_mle_matches_winsorized_effect() {
        // thresholds at the winsorizing order statistics reproduce the
        // censored-likelihood robustification of the plain fit
        let t = terms(1.0, 2.0, f64::INFINITY);
        let dist = payment_y_dist(ParetoI::new(2.0, 1.2).unwrap(), t).unwrap();
        let s = PaymentSample::new(dist.sample(142, 7), t).unwrap();
        let losses: Vec<f64> = {
            let mut l: Vec<f64> = s.values().iter().map(|v| v / t.c + t.d).collect();
            l.sort_by(|a, b| a.partial_cmp(b).unwrap());
            l
        };
        let (m, m_star) = trim(0.1, 0.1).counts(losses.len());
        let d_tilde = losses[m];
        let u_tilde = losses[losses.len() - m_star - 1];
        let fit = fit_with_estimated_thresholds(&s, d_tilde, u_tilde, t.d).unwrap();
        let w = w_estimator_payment_y(&s, trim(0.1, 0.1)).unwrap();
        // close but not identical, as with the reference data
        assert!((fit.alpha_hat - w.alpha_hat).abs() / w.alpha_hat < 0.05);
        assert!(fit.diagnostics.is_some());
    }

    #[test]
    fn coinsurance_scale_invariance() {
        // base rate of 0.1 keeps every rescaled rate inside (0, 1]
        let base = terms(0.1, 2.0, 12.0);
        let dist = payment_y_dist(ParetoI::new(1.0, 1.7).unwrap(), base).unwrap();
        let values = dist.sample(400, 23);
        let s = PaymentSample::new(values.clone(), base).unwrap();
        let ts = trim(0.05, 0.1);
        let reference = [
            mle_payment_y(&s).unwrap().alpha_hat,
            t_estimator_payment_y(&s, ts).unwrap().alpha_hat,
            w_estimator_payment_y(&s, ts).unwrap().alpha_hat,
        ];
        for lambda in [0.5, 2.0, 10.0] {
            let scaled_terms = terms(base.c * lambda, base.d, base.u);
            let scaled: Vec<f64> = values.iter().map(|v| v * lambda).collect();
            let s2 = PaymentSample::new(scaled, scaled_terms).unwrap();
            let got = [
                mle_payment_y(&s2).unwrap().alpha_hat,
                t_estimator_payment_y(&s2, ts).unwrap().alpha_hat,
                w_estimator_payment_y(&s2, ts).unwrap().alpha_hat,
            ];
            for (r, g) in reference.iter().zip(got) {
                assert!((r - g).abs() <= 1e-12 * r, "lambda = {lambda}: {r} vs {g}");
            }
        }
    }

    #[test]
    fn censoring_above_winsorizing_bound_leaves_t_w_unchanged() {
        let t = terms(1.0, 2.0, f64::INFINITY);
        let dist = payment_y_dist(ParetoI::new(2.0, 1.2).unwrap(), t).unwrap();
        let s = PaymentSample::new(dist.sample(200, 31), t).unwrap();
        let ts = trim(0.1, 0.1);
        let t_ref = t_estimator_payment_y(&s, ts).unwrap().alpha_hat;
        let w_ref = w_estimator_payment_y(&s, ts).unwrap().alpha_hat;
        let sorted = s.sorted_values();
        let (_, m_star) = ts.counts(sorted.len());
        let cap = sorted[sorted.len() - m_star - 1];
        let clipped: Vec<f64> = s.values().iter().map(|v| v.min(cap)).collect();
        let s2 = PaymentSample::new(clipped, t).unwrap();
        let t_new = t_estimator_payment_y(&s2, ts).unwrap().alpha_hat;
        let w_new = w_estimator_payment_y(&s2, ts).unwrap().alpha_hat;
        assert_eq!(t_ref.to_bits(), t_new.to_bits());
        assert_eq!(w_ref.to_bits(), w_new.to_bits());
    }
}
