//! Fit the tail parameter of simulated payment data with maximum likelihood
//! and the trimmed/winsorized moment estimators, with asymptotic confidence
//! intervals.

use sevfit::asymptotics::avar;
use sevfit::distributions::ParetoI;
use sevfit::estimators::{Estimator, PaymentSample};
use sevfit::inference::ci_normal;
use sevfit::moments::TrimSpec;
use sevfit::transforms::{payment_y_dist, payment_z_dist, PolicyTerms};

fn fit_and_print(sample: &PaymentSample, estimators: &[Estimator]) {
    for est in estimators {
        match est.fit(sample) {
            Ok(fit) => {
                let spec = avar(est.variance_model(sample.terms(), fit.alpha_hat)).unwrap();
                let ci = ci_normal(fit.alpha_hat, &spec, fit.n_used, 0.90).unwrap();
                println!(
                    "  {:<18} alpha = {:.4}  90% ci [{:.4}; {:.4}]",
                    est.label(),
                    fit.alpha_hat,
                    ci.lower,
                    ci.upper
                );
            }
            Err(e) => println!("  {:<18} unavailable: {e}", est.label()),
        }
    }
}

fn main() {
    let alpha = 1.5;

    // payments per payment: left-truncated at d, right-censored at u
    let terms = PolicyTerms::new(1.0, 2.0, 40.0).unwrap();
    let dist = payment_y_dist(ParetoI::new(1.0, alpha).unwrap(), terms).unwrap();
    let sample = PaymentSample::new(dist.sample(2000, 11), terms).unwrap();
    let trim = TrimSpec::new(0.05, 0.10).unwrap();
    println!("payment per payment, n = 2000, true alpha = {alpha}:");
    fit_and_print(
        &sample,
        &[
            Estimator::MleY,
            Estimator::TrimmedY(trim),
            Estimator::WinsorizedY(trim),
            // censored-window solver with the upper proportion inside the
            // at-limit mass
            Estimator::TrimmedYCase2(TrimSpec::new(0.05, 0.005).unwrap()),
        ],
    );

    // payments per loss: zero payments recorded, so the window must clear
    // the zero-payment share F(d)
    let x0 = 1.0;
    let terms = PolicyTerms::new(1.0, 1.6, 40.0).unwrap();
    let dist = payment_z_dist(ParetoI::new(x0, alpha).unwrap(), terms).unwrap();
    let sample = PaymentSample::new(dist.sample(2000, 12), terms).unwrap();
    let zero_share = sample.values().iter().filter(|&&z| z == 0.0).count() as f64 / 2000.0;
    let trim = TrimSpec::new(0.55, 0.10).unwrap();
    println!("\npayment per loss, n = 2000, zero-payment share {zero_share:.3}:");
    fit_and_print(
        &sample,
        &[
            Estimator::MleZ { x0 },
            Estimator::TrimmedZ { trim, x0 },
            Estimator::WinsorizedZ { trim, x0 },
        ],
    );
}
