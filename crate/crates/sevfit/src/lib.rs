//! Claim-severity model fitting for truncated, censored, and coinsurance-scaled
//! insurance payment data.
//!
//! The library fits the tail parameter of a single-parameter Pareto severity
//! model to the two standard insurance payment variables:
//!
//! * payment per payment (left-truncated at the deductible, right-censored at
//!   the policy limit, scaled by coinsurance), and
//! * payment per loss (interval-censored and scaled, with zero payments
//!   recorded).
//!
//! Three families of estimators are provided: maximum likelihood, trimmed
//! moments (`T`), and winsorized moments (`W`), together with their closed-form
//! asymptotic variances, relative-efficiency tables, goodness-of-fit via a
//! right-censored Kolmogorov-Smirnov statistic with parametric-bootstrap
//! p-values, and layer pricing with delta-method confidence intervals.
//!
//! Module map:
//!
//! * [`distributions`]: ground-up loss models (Pareto I behind a generic
//!   single-parameter capability).
//! * [`transforms`]: distributions of the observed-data mechanisms (truncated,
//!   interval-censored, payment per payment, payment per loss) and
//!   quantile-inversion sampling.
//! * [`moments`]: sample and population trimmed/winsorized moments and the
//!   trimming-vs-censoring case arrangements.
//! * [`estimators`]: point estimators of the Pareto tail parameter.
//! * [`asymptotics`]: asymptotic variances and relative-efficiency queries.
//! * [`inference`]: confidence intervals, the censored KS statistic, and
//!   parametric-bootstrap p-values.
//! * [`pricing`]: layer pure premiums with delta-method intervals.
//! * [`cli`]: batch front-end used by the `sevfit` binary.
//!
//! Each major capability has a runnable program under `examples/`; start with
//! `cargo run --example fitting_estimators`.

// `!(x > 0.0)`-style guards below are deliberate: the negation rejects NaN,
// which `x <= 0.0` would silently accept.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod asymptotics;
pub mod cli;
pub mod distributions;
pub mod estimators;
pub mod inference;
pub mod moments;
pub mod numerics;
pub mod pricing;
pub mod transforms;

pub use distributions::{DistributionError, GroundUpModel, ParetoI};
pub use estimators::{Estimator, EstimatorError, FitResult, PaymentSample, PaymentStatus};
pub use inference::{ConfidenceInterval, GofReport};
pub use moments::{CaseArrangement, HTransform, TrimSpec};
pub use pricing::Layer;
pub use transforms::{ObservationScheme, ObservedDistribution, PointMass, PolicyTerms};
