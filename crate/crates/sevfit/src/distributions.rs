//! Ground-up loss models.
//!
//! A ground-up model exposes the cdf, pdf, and quantile function of the loss
//! before any coverage modification is applied. The concrete model shipped
//! here is the single-parameter Pareto; everything downstream (observed-data
//! transforms, moments) is written against the [`GroundUpModel`] capability so
//! further one-parameter families can slot in.

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum DistributionError {
    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter { name: &'static str, value: f64, reason: &'static str },
    #[error("probability {0} outside [0, 1]")]
    ProbabilityOutOfRange(f64),
    #[error("quantile diverges at v = 1")]
    InfiniteQuantile,
}

/// A continuous loss model with `k >= 1` parameters.
///
/// This release instantiates only the one-parameter Pareto, but the moment
/// machinery is model-agnostic and only relies on this surface.
pub trait GroundUpModel {
    /// Number of unknown parameters.
    fn param_count(&self) -> usize;
    fn cdf(&self, x: f64) -> f64;
    fn pdf(&self, x: f64) -> f64;
    /// Quantile function. `v = 1` on an unbounded support is reported as
    /// [`DistributionError::InfiniteQuantile`], distinct from a domain error,
    /// because winsorized-moment code probes the quantile near 1.
    fn quantile(&self, v: f64) -> Result<f64, DistributionError>;
    /// Lower end of the support.
    fn support_lower(&self) -> f64;

    /// Survival function `1 - cdf(x)`. Override when the tail can be
    /// computed without cancellation; truncation arithmetic relies on it.
    fn sf(&self, x: f64) -> f64 {
        1.0 - self.cdf(x)
    }

    /// Quantile at survival level `s`, i.e. `quantile(1 - s)`. Override to
    /// keep deep-tail quantiles exact under heavy truncation.
    fn quantile_complement(&self, s: f64) -> Result<f64, DistributionError> {
        if !(0.0..=1.0).contains(&s) {
            return Err(DistributionError::ProbabilityOutOfRange(1.0 - s));
        }
        if s == 0.0 {
            return Err(DistributionError::InfiniteQuantile);
        }
        self.quantile(1.0 - s)
    }
}

/// Single-parameter Pareto with known scale `x0` and tail parameter `alpha`.
///
/// cdf `F(x) = 1 - (x0/x)^alpha` for `x > x0`, pdf
/// `(alpha/x0) (x0/x)^(alpha+1)`, quantile `x0 (1-v)^(-1/alpha)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParetoI {
    x0: f64,
    alpha: f64,
}

impl ParetoI {
    pub fn new(x0: f64, alpha: f64) -> Result<Self, DistributionError> {
        if !(x0.is_finite() && x0 > 0.0) {
            return Err(DistributionError::InvalidParameter {
                name: "x0",
                value: x0,
                reason: "scale must be finite and positive",
            });
        }
        if !(alpha.is_finite() && alpha > 0.0) {
            return Err(DistributionError::InvalidParameter {
                name: "alpha",
                value: alpha,
                reason: "tail parameter must be finite and positive",
            });
        }
        Ok(Self { x0, alpha })
    }

    pub fn x0(&self) -> f64 {
        self.x0
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
}

impl GroundUpModel for ParetoI {
    fn param_count(&self) -> usize {
        1
    }

    // Powers are evaluated as exp(alpha * ln(x0/x)) so large alpha stays
    // finite instead of overflowing through powf chains.
    fn cdf(&self, x: f64) -> f64 {
        if x <= self.x0 {
            return 0.0;
        }
        if x == f64::INFINITY {
            return 1.0;
        }
        -f64::exp_m1(self.alpha * (self.x0 / x).ln())
    }

    fn pdf(&self, x: f64) -> f64 {
        if x <= self.x0 || x == f64::INFINITY {
            return 0.0;
        }
        (self.alpha / self.x0) * f64::exp((self.alpha + 1.0) * (self.x0 / x).ln())
    }

    fn quantile(&self, v: f64) -> Result<f64, DistributionError> {
        if !(0.0..=1.0).contains(&v) {
            return Err(DistributionError::ProbabilityOutOfRange(v));
        }
        if v == 1.0 {
            return Err(DistributionError::InfiniteQuantile);
        }
        Ok(self.x0 * f64::exp(-(1.0 - v).ln() / self.alpha))
    }

    fn support_lower(&self) -> f64 {
        self.x0
    }

    fn sf(&self, x: f64) -> f64 {
        if x <= self.x0 {
            return 1.0;
        }
        if x == f64::INFINITY {
            return 0.0;
        }
        f64::exp(self.alpha * (self.x0 / x).ln())
    }

    fn quantile_complement(&self, s: f64) -> Result<f64, DistributionError> {
        if !(0.0..=1.0).contains(&s) {
            return Err(DistributionError::ProbabilityOutOfRange(1.0 - s));
        }
        if s == 0.0 {
            return Err(DistributionError::InfiniteQuantile);
        }
        Ok(self.x0 * f64::exp(-s.ln() / self.alpha))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_parameters() {
        assert!(ParetoI::new(0.0, 1.0).is_err());
        assert!(ParetoI::new(1.0, 0.0).is_err());
        assert!(ParetoI::new(-1.0, 1.0).is_err());
        assert!(ParetoI::new(1.0, f64::NAN).is_err());
    }

    #[test]
    fn cdf_values() {
        let m = ParetoI::new(1.0, 1.0).unwrap();
        assert_eq!(m.cdf(1.0), 0.0);
        assert!((m.cdf(2.0) - 0.5).abs() < 1e-15);
        let m = ParetoI::new(1.0, 2.0).unwrap();
        assert!((m.cdf(10.0) - 0.99).abs() < 1e-15);
    }

    #[test]
    fn pdf_values() {
        let m = ParetoI::new(1.0, 1.0).unwrap();
        assert_eq!(m.pdf(0.5), 0.0);
        assert!((m.pdf(2.0) - 0.25).abs() < 1e-15);
        // right limit at the support boundary is alpha / x0
        let m = ParetoI::new(2.0, 3.0).unwrap();
        assert!((m.pdf(2.0 * (1.0 + 1e-12)) - 1.5).abs() < 1e-9);
    }

    #[test]
    fn quantile_values() {
        let m = ParetoI::new(1.0, 1.0).unwrap();
        assert_eq!(m.quantile(0.0).unwrap(), 1.0);
        assert!((m.quantile(0.75).unwrap() - 4.0).abs() < 1e-12);
        let m = ParetoI::new(1.0, 2.0).unwrap();
        assert!((m.quantile(0.99).unwrap() - 10.0).abs() < 1e-12);
    }

    #[test]
    fn quantile_edge_signals() {
        let m = ParetoI::new(1.0, 1.0).unwrap();
        assert_eq!(m.quantile(1.0), Err(DistributionError::InfiniteQuantile));
        assert_eq!(m.quantile(-0.1), Err(DistributionError::ProbabilityOutOfRange(-0.1)));
        assert_eq!(m.quantile(1.5), Err(DistributionError::ProbabilityOutOfRange(1.5)));
    }

    #[test]
    fn large_alpha_stays_finite() {
        let m = ParetoI::new(1.0, 50.0).unwrap();
        assert!(m.cdf(1.5).is_finite());
        assert!(m.pdf(1.5).is_finite());
        assert!(m.quantile(1.0 - 1e-9).unwrap().is_finite());
    }

    #[test]
    fn cdf_quantile_round_trip() {
        // deterministic parameter/probability sweep, |cdf(qf(v)) - v| < 1e-10
        let mut worst = 0.0_f64;
        let mut state = 0x9e3779b97f4a7c15_u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..1000 {
            let x0 = 0.1 + 10.0 * next();
            let alpha = 0.2 + 49.0 * next();
            let v = next() * (1.0 - 1e-9);
            let m = ParetoI::new(x0, alpha).unwrap();
            let x = m.quantile(v).unwrap();
            worst = worst.max((m.cdf(x) - v).abs());
        }
        assert!(worst < 1e-10, "worst round-trip error {worst}");
    }

    #[test]
    fn pdf_matches_cdf_derivative() {
        let m = ParetoI::new(2.0, 1.7).unwrap();
        for i in 1..=100 {
            let x = 2.0 + 0.3 * i as f64;
            let h = 1e-6 * x;
            let num = (m.cdf(x + h) - m.cdf(x - h)) / (2.0 * h);
            let rel = (num - m.pdf(x)).abs() / m.pdf(x);
            assert!(rel < 1e-6, "x = {x}: relative error {rel}");
        }
    }

    #[test]
    fn quantile_monotone_on_grid() {
        let m = ParetoI::new(0.5, 3.2).unwrap();
        let mut prev = f64::NEG_INFINITY;
        for i in 0..10_000 {
            let v = i as f64 / 10_000.0;
            let q = m.quantile(v).unwrap();
            assert!(q >= prev);
            prev = q;
        }
    }
}
