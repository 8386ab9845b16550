//! Sample and population trimmed (T) and winsorized (W) moments.
//!
//! With order statistics `w_{1:n} <= ... <= w_{n:n}`, trimming counts
//! `m = [n a]` and `m* = [n b]`, and a chosen monotone transformation `h`:
//!
//! * the sample T moment of order `j` is the mean of `h(w)^j` over the
//!   retained window `i = m+1, ..., n - m*`;
//! * the sample W moment replaces the discarded observations by the nearest
//!   retained order statistic instead of dropping them;
//! * the population counterparts integrate `h(qf(v))^j` over `[a, 1-b]`,
//!   normalized for T, plus endpoint terms `a h(qf(a))^j` and
//!   `b h(qf(1-b))^j` for W.
//!
//! The proportions `a`, `b` and the transformation `h` are single global
//! choices shared by every moment order. Population moments always exist,
//! whatever the tail of the underlying model.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::distributions::GroundUpModel;
use crate::numerics::integrate_with_breakpoints;
use crate::transforms::ObservedDistribution;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum MomentError {
    #[error("invalid proportions a = {a}, b = {b}: need a >= 0, b >= 0, a + b < 1")]
    InvalidProportions { a: f64, b: f64 },
    #[error("empty retained window: a = {a}, b = {b} leave no observations out of n = {n}")]
    EmptyWindow { a: f64, b: f64, n: usize },
    #[error("non-finite integrand h(qf(v))^j near v = {v}")]
    NonFiniteIntegrand { v: f64 },
    #[error("non-finite winsorizing endpoint h(qf({v}))")]
    NonFiniteEndpoint { v: f64 },
}

/// Lower and upper trimming-or-winsorizing proportions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrimSpec {
    a: f64,
    b: f64,
}

impl TrimSpec {
    pub fn new(a: f64, b: f64) -> Result<Self, MomentError> {
        if !(a.is_finite() && b.is_finite() && a >= 0.0 && b >= 0.0 && a + b < 1.0) {
            return Err(MomentError::InvalidProportions { a, b });
        }
        Ok(Self { a, b })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    /// Finite-sample counts `(m, m*) = ([n a], [n b])`.
    ///
    /// The greatest-integer part is taken as the floor; a tiny nudge keeps
    /// products like `142 * 0.15` from landing one ulp under an integer.
    pub fn counts(&self, n: usize) -> (usize, usize) {
        let m = (n as f64 * self.a + 1e-9).floor() as usize;
        let m_star = (n as f64 * self.b + 1e-9).floor() as usize;
        (m, m_star)
    }

    fn window(&self, n: usize) -> Result<(usize, usize), MomentError> {
        let (m, m_star) = self.counts(n);
        if n == 0 || m + m_star >= n {
            return Err(MomentError::EmptyWindow { a: self.a, b: self.b, n });
        }
        Ok((m, m_star))
    }
}

/// Monotone transformation applied to observations before moment matching.
///
/// The payment variants linearize the Pareto quantile function in `1/alpha`:
/// `log(y/(c d) + 1)` for payments per payment, `log(z/c + d)` for payments
/// per loss, and `log(l/d)` for ground-up claim amounts recorded above a
/// deductible `d`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum HTransform {
    Identity,
    Log,
    PaymentY { c: f64, d: f64 },
    PaymentZ { c: f64, d: f64 },
    Claims { d: f64 },
}

impl HTransform {
    pub fn eval(&self, x: f64) -> f64 {
        match *self {
            HTransform::Identity => x,
            HTransform::Log => x.ln(),
            HTransform::PaymentY { c, d } => (x / (c * d) + 1.0).ln(),
            HTransform::PaymentZ { c, d } => (x / c + d).ln(),
            HTransform::Claims { d } => (x / d).ln(),
        }
    }
}

/// Relative position of the trimming proportions and the censoring
/// probabilities `p1 = F(t1)`, `p2 = F(t2)`.
///
/// Case 6 (`p1 <= a < 1-b <= p2`) keeps the retained window strictly inside
/// the observed region and is the arrangement the estimators build on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseArrangement {
    /// `a < 1-b <= p1`: the window sees only the lower censored mass.
    Case1,
    /// `a <= p1 < 1-b <= p2`: lower censored mass enters the window.
    Case2,
    /// `a <= p1 < p2 <= 1-b`: censored mass from both ends enters.
    Case3,
    /// `p2 <= a`: the window sees only the upper censored mass.
    Case4,
    /// `p1 <= a < p2 <= 1-b`: upper censored mass enters the window.
    Case5,
    /// `p1 <= a < 1-b <= p2`: window inside the fully observed region.
    Case6,
}

/// Classify the arrangement of `(a, 1-b)` against `(p1, p2)`.
///
/// Boundary ties resolve toward the arrangement that retains more observed
/// mass, i.e. the higher-numbered case, which is why Case 6 is tested first.
pub fn classify_case(t: TrimSpec, p1: f64, p2: f64) -> CaseArrangement {
    let (a, q) = (t.a(), 1.0 - t.b());
    if p1 <= a && q <= p2 {
        CaseArrangement::Case6
    } else if p1 <= a && a < p2 && p2 <= q {
        CaseArrangement::Case5
    } else if p2 <= a {
        CaseArrangement::Case4
    } else if a <= p1 && p2 <= q {
        CaseArrangement::Case3
    } else if a <= p1 && p1 < q && q <= p2 {
        CaseArrangement::Case2
    } else {
        CaseArrangement::Case1
    }
}

fn check_sorted(sorted: &[f64]) {
    debug_assert!(
        sorted.windows(2).all(|w| w[0] <= w[1]),
        "sample moments require ascending input"
    );
}

/// Sample T moment of order `j` over pre-sorted data.
pub fn sample_t_moment(
    sorted: &[f64],
    h: HTransform,
    j: u32,
    t: TrimSpec,
) -> Result<f64, MomentError> {
    check_sorted(sorted);
    let n = sorted.len();
    let (m, m_star) = t.window(n)?;
    let window = &sorted[m..n - m_star];
    let sum: f64 = window.iter().map(|&w| h.eval(w).powi(j as i32)).sum();
    Ok(sum / window.len() as f64)
}

/// Sample W moment of order `j` over pre-sorted data.
pub fn sample_w_moment(
    sorted: &[f64],
    h: HTransform,
    j: u32,
    t: TrimSpec,
) -> Result<f64, MomentError> {
    check_sorted(sorted);
    let n = sorted.len();
    let (m, m_star) = t.window(n)?;
    let low = h.eval(sorted[m]).powi(j as i32);
    let high = h.eval(sorted[n - m_star - 1]).powi(j as i32);
    let mid: f64 = sorted[m..n - m_star].iter().map(|&w| h.eval(w).powi(j as i32)).sum();
    Ok((m as f64 * low + mid + m_star as f64 * high) / n as f64)
}

fn integrate_h_power<M: GroundUpModel>(
    dist: &ObservedDistribution<M>,
    h: HTransform,
    j: u32,
    lo: f64,
    hi: f64,
) -> Result<f64, MomentError> {
    let bad = std::cell::Cell::new(None);
    let value = integrate_with_breakpoints(
        |v| {
            let q = match dist.quantile(v) {
                Ok(q) => q,
                Err(_) => {
                    bad.set(Some(v));
                    return 0.0;
                }
            };
            let y = h.eval(q).powi(j as i32);
            if !y.is_finite() {
                bad.set(Some(v));
                return 0.0;
            }
            y
        },
        lo,
        hi,
        &dist.qf_breakpoints(),
    );
    match bad.get() {
        Some(v) => Err(MomentError::NonFiniteIntegrand { v }),
        None => Ok(value),
    }
}

/// Population T moment: `(1-a-b)^{-1} \int_a^{1-b} h(qf(v))^j dv`.
pub fn population_t_moment<M: GroundUpModel>(
    dist: &ObservedDistribution<M>,
    h: HTransform,
    j: u32,
    t: TrimSpec,
) -> Result<f64, MomentError> {
    let (a, b) = (t.a(), t.b());
    let integral = integrate_h_power(dist, h, j, a, 1.0 - b)?;
    Ok(integral / (1.0 - a - b))
}

/// Population W moment:
/// `a h(qf(a))^j + \int_a^{1-b} h(qf(v))^j dv + b h(qf(1-b))^j`.
///
/// Endpoint terms with zero weight are dropped without probing the quantile,
/// so `b = 0` works on unbounded supports.
pub fn population_w_moment<M: GroundUpModel>(
    dist: &ObservedDistribution<M>,
    h: HTransform,
    j: u32,
    t: TrimSpec,
) -> Result<f64, MomentError> {
    let (a, b) = (t.a(), t.b());
    let endpoint = |v: f64| -> Result<f64, MomentError> {
        let q = dist.quantile(v).map_err(|_| MomentError::NonFiniteEndpoint { v })?;
        let y = h.eval(q).powi(j as i32);
        if y.is_finite() {
            Ok(y)
        } else {
            Err(MomentError::NonFiniteEndpoint { v })
        }
    };
    let low = if a > 0.0 { a * endpoint(a)? } else { 0.0 };
    let high = if b > 0.0 { b * endpoint(1.0 - b)? } else { 0.0 };
    let integral = integrate_h_power(dist, h, j, a, 1.0 - b)?;
    Ok(low + integral + high)
}
