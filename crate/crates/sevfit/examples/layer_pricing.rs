//! Price an excess layer from a fitted tail parameter, with a delta-method
//! log-transformed interval.

use sevfit::asymptotics::{avar, VarianceModel};
use sevfit::estimators::{EstimatorTag, FitResult};
use sevfit::pricing::{premium, premium_ci, premium_derivative, Layer};

fn main() {
    // benefit attaching at 7m and exhausting at 35m, severity recorded above
    // a 500k deductible
    let layer = Layer::new(7.0e6, 35.0e6, 5.0e5).unwrap();
    let n = 142;
    let alpha_hat = 1.2176;

    let point = premium(&layer, alpha_hat);
    println!("pure premium at alpha = {alpha_hat}: {:.4e}", point);
    println!("sensitivity d premium / d alpha:    {:.4e}", premium_derivative(&layer, alpha_hat));

    let fit = FitResult { alpha_hat, estimator: EstimatorTag::MleY, n_used: n, diagnostics: None };
    let spec = avar(VarianceModel::MlePaymentY { alpha: alpha_hat, d: 5.0e5, u: f64::INFINITY })
        .unwrap();
    let ci = premium_ci(&layer, &fit, &spec, n, 0.90).unwrap();
    println!("90% interval: [{:.4e}; {:.4e}]", ci.lower, ci.upper);
    println!("multiplicative spread K = {:.4}", ci.upper / point);

    // the same layer on the ground-up scale is orders of magnitude cheaper
    let ground_up = Layer::new(7.0e6, 35.0e6, 7000.0).unwrap();
    println!("\nground-up basis premium: {:.4e}", premium(&ground_up, alpha_hat));

    // the tail parameter 1 is not special: the two branches meet smoothly
    println!("\npremium near the unit tail:");
    for alpha in [0.999, 1.0, 1.001] {
        println!("  alpha = {alpha}: {:.6e}", premium(&layer, alpha));
    }
}
