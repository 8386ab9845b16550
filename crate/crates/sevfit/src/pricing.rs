//! Layer pure premiums for a fitted Pareto severity, with delta-method
//! variances and log-transformed confidence intervals.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::asymptotics::AsymptoticSpec;
use crate::estimators::FitResult;
use crate::inference::{CiStyle, ConfidenceInterval, InferenceError};
use crate::numerics::normal_quantile;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum PricingError {
    #[error("invalid layer: need 0 < scale <= attachment < exhaustion, got C = {scale}, d* = {attachment}, u* = {exhaustion}")]
    InvalidLayer { scale: f64, attachment: f64, exhaustion: f64 },
    #[error(transparent)]
    Inference(#[from] InferenceError),
}

/// An excess layer attaching at `attachment` and exhausting at `exhaustion`,
/// priced against a Pareto severity with scale constant `scale` (the
/// deductible for observed losses, the ground-up scale otherwise).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Layer {
    pub attachment: f64,
    pub exhaustion: f64,
    pub scale: f64,
}

impl Layer {
    pub fn new(attachment: f64, exhaustion: f64, scale: f64) -> Result<Self, PricingError> {
        if !(scale > 0.0 && scale <= attachment && attachment < exhaustion) {
            return Err(PricingError::InvalidLayer { scale, attachment, exhaustion });
        }
        Ok(Self { attachment, exhaustion, scale })
    }

    fn log_ratios(&self) -> (f64, f64) {
        ((self.attachment / self.scale).ln(), (self.exhaustion / self.scale).ln())
    }
}

/// Expected payment in the layer:
/// `C [(u*/C)^(1-alpha) - (d*/C)^(1-alpha)] / (1-alpha)`, with the `alpha = 1`
/// branch `C ln(u*/d*)`.
///
/// Evaluated through `expm1` so the expression stays exact arbitrarily close
/// to `alpha = 1` instead of losing digits to 0/0 cancellation.
pub fn premium(layer: &Layer, alpha: f64) -> f64 {
    let (t_d, t_u) = layer.log_ratios();
    if alpha == 1.0 {
        return layer.scale * (t_u - t_d);
    }
    let s = 1.0 - alpha;
    layer.scale * (f64::exp_m1(s * t_u) - f64::exp_m1(s * t_d)) / s
}

/// Derivative of [`premium`] in the tail parameter.
///
/// Near `alpha = 1` the closed form loses digits to the `(1-alpha)^2`
/// denominator, so a short series around the limit takes over; at exactly
/// `alpha = 1` the limit is evaluated as a central finite difference of the
/// stable premium.
pub fn premium_derivative(layer: &Layer, alpha: f64) -> f64 {
    let (t_d, t_u) = layer.log_ratios();
    if alpha == 1.0 {
        let h = 1e-6;
        return (premium(layer, alpha + h) - premium(layer, alpha - h)) / (2.0 * h);
    }
    let s = 1.0 - alpha;
    if s.abs() < 1e-3 {
        // d premium / d alpha = -C sum_{k>=2} (k-1) s^(k-2) (t_u^k - t_d^k) / k!
        let mut deriv = 0.0;
        let mut s_pow = 1.0;
        let mut factorial = 1.0;
        for k in 2..=8u32 {
            factorial *= k as f64;
            deriv += (k - 1) as f64 * s_pow * (t_u.powi(k as i32) - t_d.powi(k as i32)) / factorial;
            s_pow *= s;
        }
        return -layer.scale * deriv;
    }
    let e_u = f64::exp(s * t_u);
    let e_d = f64::exp(s * t_d);
    layer.scale / (s * s) * (s * (e_d * t_d - e_u * t_u) + e_u - e_d)
}

/// Log-transformed delta-method interval `[premium / K, premium * K]` with
/// `K = exp(z * sigma / premium)` and
/// `sigma = sqrt(Var(alpha_hat)) |d premium / d alpha|`.
pub fn premium_ci(
    layer: &Layer,
    fit: &FitResult,
    spec: &AsymptoticSpec,
    n: usize,
    level: f64,
) -> Result<ConfidenceInterval, PricingError> {
    if !(0.0 < level && level < 1.0) {
        return Err(PricingError::Inference(InferenceError::InvalidLevel(level)));
    }
    let alpha = fit.alpha_hat;
    let point = premium(layer, alpha);
    let sd_alpha = (spec.variance_factor * alpha * alpha / n as f64).sqrt();
    let sigma = sd_alpha * premium_derivative(layer, alpha).abs();
    let z = normal_quantile(0.5 * (1.0 + level));
    let k = (z * sigma / point).exp();
    Ok(ConfidenceInterval {
        lower: point / k,
        upper: point * k,
        level,
        style: CiStyle::LogTransformed,
    })
}
