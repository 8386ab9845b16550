//! Closed-form asymptotic variances and relative-efficiency queries.
//!
//! Every estimator in this crate is asymptotically normal with variance
//! `variance_factor * alpha^2 / n`. The factors are built from four
//! integrals over the trimming window `[a, 1-b]`:
//!
//! * `I_t(a, 1-b) = -\int_a^{1-b} ln(1-v) dv
//!    = (1-a)(1 - ln(1-a)) - b (1 - ln b)`;
//! * `J_t(a, 1-b) = \int\int (min{v,w} - v w) d[-ln(1-v)] d[-ln(1-w)]`,
//!   reduced by symmetry to `2 \int_a^{1-b} v (1-b-v) / (1-v) dv` and then to
//!   a closed form;
//! * `I_w(a, 1-b) = 1 - a - b - ln(1-a)`;
//! * `J_w = J_t + a^2 (2-a)/(1-a) - b [1 - 2a - b + 2 ln b - 2 ln(1-a)]`.
//!
//! The closed forms are authoritative; `*_quadrature` twins evaluate the same
//! integrals numerically and serve as independent oracles in tests and in the
//! acceptance suite.

use thiserror::Error;

use crate::numerics::{integrate, integrate_with_breakpoints};

#[derive(Debug, Clone, Error, PartialEq)]
pub enum AsymptoticsError {
    #[error("infeasible arrangement: {0}")]
    Infeasible(String),
    #[error("invalid proportions a = {a}, b = {b}")]
    InvalidProportions { a: f64, b: f64 },
}

fn check_window(a: f64, one_minus_b: f64) -> (f64, f64) {
    debug_assert!(
        (0.0..1.0).contains(&a) && a < one_minus_b && one_minus_b <= 1.0,
        "need 0 <= a < 1-b <= 1, got a = {a}, 1-b = {one_minus_b}"
    );
    (a, 1.0 - one_minus_b)
}

/// `I_t(a, 1-b)`; the `b (1 - ln b)` correction vanishes as `b -> 0`.
pub fn i_t(a: f64, one_minus_b: f64) -> f64 {
    let (a, b) = check_window(a, one_minus_b);
    let upper = if b > 0.0 { b * (1.0 - b.ln()) } else { 0.0 };
    (1.0 - a) * (1.0 - (1.0 - a).ln()) - upper
}

/// `J_t(a, 1-b; a, 1-b)` in closed form.
pub fn j_t(a: f64, one_minus_b: f64) -> f64 {
    let (a, b) = check_window(a, one_minus_b);
    let q = one_minus_b;
    // (q-1) ln((1-a)/(1-q)) -> 0 as q -> 1
    let log_term = if b > 0.0 { (q - 1.0) * ((1.0 - a) / b).ln() } else { 0.0 };
    2.0 * (log_term + (2.0 - q) * (q - a) - 0.5 * ((1.0 - a).powi(2) - b * b))
}

/// `I_w(a, 1-b) = 1 - a - b - ln(1-a)`.
pub fn i_w(a: f64, one_minus_b: f64) -> f64 {
    let (a, _) = check_window(a, one_minus_b);
    one_minus_b - a - (1.0 - a).ln()
}

/// `J_w(a, 1-b; a, 1-b)`; the `b`-dependent correction vanishes as `b -> 0`.
pub fn j_w(a: f64, one_minus_b: f64) -> f64 {
    let (a, b) = check_window(a, one_minus_b);
    let winsor_low = a * a * (2.0 - a) / (1.0 - a);
    let winsor_high = if b > 0.0 {
        b * (1.0 - 2.0 * a - b + 2.0 * b.ln() - 2.0 * (1.0 - a).ln())
    } else {
        0.0
    };
    j_t(a, one_minus_b) + winsor_low - winsor_high
}

/// Quadrature oracle for `I_t`.
pub fn i_t_quadrature(a: f64, one_minus_b: f64) -> f64 {
    integrate(|v| -(1.0 - v).ln(), a, one_minus_b)
}

/// Quadrature oracle for `J_t`: nested integration of the original double
/// integral with the `min{v, w}` kink split at the diagonal. Independent of
/// the symmetry reduction behind the closed form.
pub fn j_t_quadrature(a: f64, one_minus_b: f64) -> f64 {
    let q = one_minus_b;
    integrate(
        |w| {
            integrate_with_breakpoints(
                |v| (v.min(w) - v * w) / ((1.0 - v) * (1.0 - w)),
                a,
                q,
                &[w],
            )
        },
        a,
        q,
    )
}

/// Quadrature oracle for `J_w`: quadrature `J_t` plus the winsorizing
/// covariance terms, which are polynomial and evaluated directly.
pub fn j_w_quadrature(a: f64, one_minus_b: f64) -> f64 {
    let b = 1.0 - one_minus_b;
    let a22 = (1.0 - a - b) * (a * a / (1.0 - a) - b)
        + if b > 0.0 { b * (1.0 - a).ln() - b * b.ln() } else { 0.0 };
    let a4 = a * a / (1.0 - a) * (a + 2.0 * b) + b * (1.0 - b);
    j_t_quadrature(a, one_minus_b) + 2.0 * a22 + a4
}

/// Fisher-information bracket of the payment-per-loss likelihood, written in
/// terms of `q_d = (x0/d)^alpha` and `q_u = (x0/u)^alpha`.
fn mle_z_bracket(q_d: f64, q_u: f64) -> f64 {
    // q_d -> 1 (no deductible) sends the atom information term to zero
    let info = if q_d >= 1.0 - 1e-12 { 0.0 } else { q_d / (1.0 - q_d) * q_d.ln().powi(2) };
    info + q_d - q_u
}

/// Estimator tag plus the scenario parameters its variance depends on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum VarianceModel {
    /// Payment-per-payment maximum likelihood.
    MlePaymentY { alpha: f64, d: f64, u: f64 },
    /// Payment-per-loss maximum likelihood (also covers threshold-censored
    /// fits with `d`, `u` read as the censoring thresholds).
    MlePaymentZ { alpha: f64, x0: f64, d: f64, u: f64 },
    /// Trimmed estimator, fully observed window (payment Y case 3).
    TrimmedY { a: f64, b: f64 },
    /// Trimmed estimator solved through the censored window (payment Y
    /// case 2); does not depend on `b`.
    TrimmedYCase2 { alpha: f64, a: f64, d: f64, u: f64 },
    /// Winsorized estimator for payment Y.
    WinsorizedY { a: f64, b: f64 },
    /// Trimmed estimator for payment Z.
    TrimmedZ { a: f64, b: f64 },
    /// Winsorized estimator for payment Z.
    WinsorizedZ { a: f64, b: f64 },
}

/// Variance factor such that `Var(alpha_hat) ~ variance_factor * alpha^2 / n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticSpec {
    pub variance_factor: f64,
    pub model: VarianceModel,
}

fn window_factor(a: f64, b: f64, winsorized: bool) -> Result<f64, AsymptoticsError> {
    if !(a >= 0.0 && b >= 0.0 && a + b < 1.0) {
        return Err(AsymptoticsError::InvalidProportions { a, b });
    }
    let q = 1.0 - b;
    Ok(if winsorized { j_w(a, q) / i_w(a, q).powi(2) } else { j_t(a, q) / i_t(a, q).powi(2) })
}

/// Asymptotic variance factor of an estimator in a given scenario.
pub fn avar(model: VarianceModel) -> Result<AsymptoticSpec, AsymptoticsError> {
    let variance_factor = match model {
        VarianceModel::MlePaymentY { alpha, d, u } => {
            if !(d > 0.0 && u > d) {
                return Err(AsymptoticsError::Infeasible(format!(
                    "need 0 < d < u, got d = {d}, u = {u}"
                )));
            }
            let delta = if u.is_finite() { f64::exp(alpha * (d / u).ln()) } else { 0.0 };
            1.0 / (1.0 - delta)
        }
        VarianceModel::MlePaymentZ { alpha, x0, d, u } => {
            if !(x0 > 0.0 && d >= x0 && u > d) {
                return Err(AsymptoticsError::Infeasible(format!(
                    "need 0 < x0 <= d < u, got x0 = {x0}, d = {d}, u = {u}"
                )));
            }
            let q_d = f64::exp(alpha * (x0 / d).ln());
            let q_u = if u.is_finite() { f64::exp(alpha * (x0 / u).ln()) } else { 0.0 };
            1.0 / mle_z_bracket(q_d, q_u)
        }
        VarianceModel::TrimmedY { a, b } | VarianceModel::TrimmedZ { a, b } => {
            window_factor(a, b, false)?
        }
        VarianceModel::TrimmedYCase2 { alpha, a, d, u } => {
            if !u.is_finite() {
                return Err(AsymptoticsError::Infeasible(
                    "case-2 variance needs a finite policy limit".into(),
                ));
            }
            let delta = f64::exp(alpha * (d / u).ln());
            if !(a < 1.0 - delta) {
                return Err(AsymptoticsError::Infeasible(format!(
                    "need a < 1 - (d/u)^alpha = {}",
                    1.0 - delta
                )));
            }
            window_factor(a, delta, false)?
        }
        VarianceModel::WinsorizedY { a, b } | VarianceModel::WinsorizedZ { a, b } => {
            window_factor(a, b, true)?
        }
    };
    Ok(AsymptoticSpec { variance_factor, model })
}

/// Which robust estimator an efficiency query compares against its maximum
/// likelihood counterpart.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Competitor {
    TrimmedY,
    WinsorizedY,
    TrimmedZ,
    WinsorizedZ,
}

/// Censoring proportions of the scenario, in probability units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Censoring {
    /// Payment per payment: `delta = (d/u)^alpha` right-censored share.
    Y { delta: f64 },
    /// Payment per loss: `delta_l = F(d)` zero-payment share and
    /// `delta_r = (x0/u)^alpha` at-limit share.
    Z { delta_l: f64, delta_r: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AreQuery {
    pub estimator: Competitor,
    pub a: f64,
    pub b: f64,
    pub censoring: Censoring,
}

/// Asymptotic relative efficiency of a trimmed or winsorized estimator with
/// respect to maximum likelihood on the same observed data.
///
/// Infeasible arrangements (the retained window reaching into censored mass)
/// are reported as errors; they correspond to the dashed cells of the
/// reference efficiency tables.
pub fn are(q: &AreQuery) -> Result<f64, AsymptoticsError> {
    let AreQuery { estimator, a, b, censoring } = *q;
    if !(a >= 0.0 && b >= 0.0 && a.is_finite() && b.is_finite()) {
        return Err(AsymptoticsError::InvalidProportions { a, b });
    }
    // a >= 1-b leaves no retained window; these are the dashed grid cells
    if a + b >= 1.0 {
        return Err(AsymptoticsError::Infeasible(format!(
            "proportions a = {a}, b = {b} leave no retained window"
        )));
    }
    let one_minus_b = 1.0 - b;
    let (mle_bracket, feasible) = match censoring {
        Censoring::Y { delta } => {
            if !(0.0..1.0).contains(&delta) {
                return Err(AsymptoticsError::Infeasible(format!(
                    "right-censoring share {delta} outside [0, 1)"
                )));
            }
            (1.0 - delta, one_minus_b <= 1.0 - delta + 1e-12)
        }
        Censoring::Z { delta_l, delta_r } => {
            if !(0.0..1.0).contains(&delta_l) || !(0.0..1.0).contains(&delta_r) {
                return Err(AsymptoticsError::Infeasible(
                    "censoring shares outside [0, 1)".into(),
                ));
            }
            let q_d = 1.0 - delta_l;
            let bracket = mle_z_bracket(q_d, delta_r);
            let ok = delta_l <= a + 1e-12 && one_minus_b <= 1.0 - delta_r + 1e-12;
            (bracket, ok)
        }
    };
    if !feasible {
        return Err(AsymptoticsError::Infeasible(format!(
            "window [{a}, {one_minus_b}] leaves the fully observed region"
        )));
    }
    let factor = match estimator {
        Competitor::TrimmedY | Competitor::TrimmedZ => {
            j_t(a, one_minus_b) / i_t(a, one_minus_b).powi(2)
        }
        Competitor::WinsorizedY | Competitor::WinsorizedZ => {
            j_w(a, one_minus_b) / i_w(a, one_minus_b).powi(2)
        }
    };
    Ok(1.0 / (mle_bracket * factor))
}

/// Canned reference grids matching the published efficiency tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArePreset {
    TrimmedY,
    TrimmedZ,
    WinsorizedY,
    WinsorizedZ,
}

/// One row of an efficiency grid. `delta_l` is populated for payment-Z
/// presets only. `cells` follow the flattened column order of `col_groups`;
/// `None` marks an infeasible cell.
#[derive(Debug, Clone, PartialEq)]
pub struct AreRow {
    pub delta_l: Option<f64>,
    pub a: f64,
    pub cells: Vec<Option<f64>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AreTable {
    pub estimator: Competitor,
    /// Right-censoring share of each column group, with its `b` values.
    pub col_groups: Vec<(f64, Vec<f64>)>,
    pub rows: Vec<AreRow>,
}

const Y_COL_GROUPS: [(f64, &[f64]); 3] = [
    (0.01, &[0.01, 0.05, 0.10, 0.15, 0.25]),
    (0.05, &[0.05, 0.10, 0.15, 0.25]),
    (0.10, &[0.10, 0.15, 0.25]),
];
const Y_ROWS: [f64; 5] = [0.0, 0.05, 0.10, 0.15, 0.25];
const Z_ROWS: [(f64, f64); 9] = [
    (0.50, 0.50),
    (0.50, 0.60),
    (0.50, 0.70),
    (0.50, 0.80),
    (0.75, 0.75),
    (0.75, 0.80),
    (0.75, 0.85),
    (0.85, 0.85),
    (0.85, 0.89),
];

/// Build a preset efficiency grid. Cells whose arrangement is infeasible come
/// back as `None`.
pub fn are_preset_table(preset: ArePreset) -> AreTable {
    let estimator = match preset {
        ArePreset::TrimmedY => Competitor::TrimmedY,
        ArePreset::TrimmedZ => Competitor::TrimmedZ,
        ArePreset::WinsorizedY => Competitor::WinsorizedY,
        ArePreset::WinsorizedZ => Competitor::WinsorizedZ,
    };
    let col_groups: Vec<(f64, Vec<f64>)> =
        Y_COL_GROUPS.iter().map(|&(d, bs)| (d, bs.to_vec())).collect();
    let rows = match estimator {
        Competitor::TrimmedY | Competitor::WinsorizedY => Y_ROWS
            .iter()
            .map(|&a| AreRow {
                delta_l: None,
                a,
                cells: grid_cells(estimator, a, None, &col_groups),
            })
            .collect(),
        Competitor::TrimmedZ | Competitor::WinsorizedZ => Z_ROWS
            .iter()
            .map(|&(delta_l, a)| AreRow {
                delta_l: Some(delta_l),
                a,
                cells: grid_cells(estimator, a, Some(delta_l), &col_groups),
            })
            .collect(),
    };
    AreTable { estimator, col_groups, rows }
}

/// Evaluate an arbitrary grid of queries (used by the command-line front
/// end for non-preset sweeps).
pub fn are_grid(
    estimator: Competitor,
    a_values: &[f64],
    delta_l: Option<f64>,
    col_groups: &[(f64, Vec<f64>)],
) -> AreTable {
    let rows = a_values
        .iter()
        .map(|&a| AreRow { delta_l, a, cells: grid_cells(estimator, a, delta_l, col_groups) })
        .collect();
    AreTable { estimator, col_groups: col_groups.to_vec(), rows }
}

fn grid_cells(
    estimator: Competitor,
    a: f64,
    delta_l: Option<f64>,
    col_groups: &[(f64, Vec<f64>)],
) -> Vec<Option<f64>> {
    let mut cells = Vec::new();
    for (delta_r, bs) in col_groups {
        for &b in bs {
            let censoring = match (estimator, delta_l) {
                (Competitor::TrimmedY | Competitor::WinsorizedY, _) => {
                    Censoring::Y { delta: *delta_r }
                }
                (_, Some(dl)) => Censoring::Z { delta_l: dl, delta_r: *delta_r },
                (_, None) => Censoring::Z { delta_l: 0.0, delta_r: *delta_r },
            };
            cells.push(are(&AreQuery { estimator, a, b, censoring }).ok());
        }
    }
    cells
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn i_t_values() {
        assert!((i_t(0.0, 1.0) - 1.0).abs() < 1e-12);
        assert!((i_t(0.2, 0.8) - 0.45662).abs() < 1e-5);
        let quad = i_t_quadrature(0.1, 0.85);
        assert!((i_t(0.1, 0.85) - quad).abs() < 1e-10);
    }

    #[test]
    fn j_t_values() {
        assert!((j_t(0.0, 1.0) - 1.0).abs() < 1e-12);
        let quad = j_t_quadrature(0.1, 0.85);
        assert!((j_t(0.1, 0.85) - quad).abs() < 1e-8, "{} vs {quad}", j_t(0.1, 0.85));
    }

    #[test]
    fn j_t_diagonal_symmetry() {
        // swapping the quadrature axes changes nothing
        let a = 0.07;
        let q = 0.9;
        let swapped = integrate(
            |v| {
                integrate_with_breakpoints(
                    |w| (v.min(w) - v * w) / ((1.0 - v) * (1.0 - w)),
                    a,
                    q,
                    &[v],
                )
            },
            a,
            q,
        );
        assert!((j_t_quadrature(a, q) - swapped).abs() < 1e-12);
    }

    #[test]
    fn i_w_j_w_values() {
        assert!((i_w(0.0, 1.0) - 1.0).abs() < 1e-12);
        assert!((j_w(0.0, 1.0) - 1.0).abs() < 1e-12);
        assert!((i_w(0.2, 0.8) - 0.82314).abs() < 1e-5);
        let quad = j_w_quadrature(0.05, 0.9);
        assert!((j_w(0.05, 0.9) - quad).abs() < 1e-8, "{} vs {quad}", j_w(0.05, 0.9));
    }

    #[test]
    fn avar_reference_points() {
        // no policy limit: efficiency of the complete-data case
        let s = avar(VarianceModel::MlePaymentY { alpha: 1.5, d: 100.0, u: f64::INFINITY })
            .unwrap();
        assert!((s.variance_factor - 1.0).abs() < 1e-12);
        // untrimmed T matches maximum likelihood
        let s = avar(VarianceModel::TrimmedY { a: 0.0, b: 0.0 }).unwrap();
        assert!((s.variance_factor - 1.0).abs() < 1e-12);
        // payment-Z information bracket at delta_l = 0.5, delta_r = 0.01:
        // 0.5/0.5 ln^2(0.5) + 0.5 - 0.01
        let alpha = 2.0;
        let x0 = 1.0;
        let d = f64::exp(f64::ln(2.0) / alpha); // (x0/d)^alpha = 0.5
        let u = f64::exp(f64::ln(100.0) / alpha); // (x0/u)^alpha = 0.01
        let s = avar(VarianceModel::MlePaymentZ { alpha, x0, d, u }).unwrap();
        let bracket = 0.5_f64.ln().powi(2) + 0.49;
        assert!((s.variance_factor - 1.0 / bracket).abs() < 1e-10);
    }

    #[test]
    fn case2_variance_ignores_b() {
        let m1 = avar(VarianceModel::TrimmedYCase2 { alpha: 1.5, a: 0.05, d: 10.0, u: 100.0 })
            .unwrap();
        let m2 = avar(VarianceModel::TrimmedYCase2 { alpha: 1.5, a: 0.05, d: 10.0, u: 100.0 })
            .unwrap();
        assert_eq!(m1.variance_factor, m2.variance_factor);
        // and equals the case-3 factor evaluated at b = (d/u)^alpha
        let delta = f64::exp(1.5 * (10.0_f64 / 100.0).ln());
        let case3 = avar(VarianceModel::TrimmedY { a: 0.05, b: delta }).unwrap();
        assert!((m1.variance_factor - case3.variance_factor).abs() < 1e-12);
    }

    #[test]
    fn are_reference_cells() {
        let v = are(&AreQuery {
            estimator: Competitor::TrimmedY,
            a: 0.0,
            b: 0.01,
            censoring: Censoring::Y { delta: 0.01 },
        })
        .unwrap();
        assert!((v - 0.992).abs() < 0.0015, "got {v}");
        let v = are(&AreQuery {
            estimator: Competitor::WinsorizedY,
            a: 0.0,
            b: 0.10,
            censoring: Censoring::Y { delta: 0.10 },
        })
        .unwrap();
        assert!((v - 1.000).abs() < 0.0015, "got {v}");
        let v = are(&AreQuery {
            estimator: Competitor::TrimmedZ,
            a: 0.50,
            b: 0.01,
            censoring: Censoring::Z { delta_l: 0.50, delta_r: 0.01 },
        })
        .unwrap();
        assert!((v - 0.973).abs() < 0.0015, "got {v}");
        let v = are(&AreQuery {
            estimator: Competitor::WinsorizedZ,
            a: 0.50,
            b: 0.01,
            censoring: Censoring::Z { delta_l: 0.50, delta_r: 0.01 },
        })
        .unwrap();
        assert!((v - 0.968).abs() < 0.0015, "got {v}");
    }

    #[test]
    fn are_infeasible_cells() {
        // window reaching past the at-limit mass
        let err = are(&AreQuery {
            estimator: Competitor::TrimmedZ,
            a: 0.80,
            b: 0.25,
            censoring: Censoring::Z { delta_l: 0.50, delta_r: 0.01 },
        });
        assert!(matches!(err, Err(AsymptoticsError::Infeasible(_))));
        // window starting below the zero-payment mass
        let err = are(&AreQuery {
            estimator: Competitor::WinsorizedZ,
            a: 0.30,
            b: 0.10,
            censoring: Censoring::Z { delta_l: 0.50, delta_r: 0.01 },
        });
        assert!(matches!(err, Err(AsymptoticsError::Infeasible(_))));
    }

    #[test]
    fn winsorized_dominates_trimmed_for_payment_y() {
        for &(delta, bs) in Y_COL_GROUPS.iter() {
            for &a in &Y_ROWS {
                for &b in bs {
                    let t = are(&AreQuery {
                        estimator: Competitor::TrimmedY,
                        a,
                        b,
                        censoring: Censoring::Y { delta },
                    })
                    .unwrap();
                    let w = are(&AreQuery {
                        estimator: Competitor::WinsorizedY,
                        a,
                        b,
                        censoring: Censoring::Y { delta },
                    })
                    .unwrap();
                    assert!(w >= t - 1e-12, "a={a} b={b} delta={delta}: W {w} < T {t}");
                }
            }
        }
    }

    #[test]
    fn trimmed_y_monotone_in_b() {
        for &(delta, bs) in Y_COL_GROUPS.iter() {
            for &a in &Y_ROWS {
                let mut prev = f64::INFINITY;
                for &b in bs {
                    let v = are(&AreQuery {
                        estimator: Competitor::TrimmedY,
                        a,
                        b,
                        censoring: Censoring::Y { delta },
                    })
                    .unwrap();
                    assert!(v <= prev + 1e-12);
                    prev = v;
                }
            }
        }
    }

    #[test]
    fn closed_forms_match_quadrature_on_grid() {
        for i in 0..10 {
            let a = i as f64 * 0.09;
            for j in 1..10 {
                let b = j as f64 * 0.09;
                if a + b >= 0.95 {
                    continue;
                }
                let q = 1.0 - b;
                assert!((i_t(a, q) - i_t_quadrature(a, q)).abs() < 1e-8);
                assert!((j_t(a, q) - j_t_quadrature(a, q)).abs() < 1e-8);
                assert!((j_w(a, q) - j_w_quadrature(a, q)).abs() < 1e-8);
            }
        }
    }
}
