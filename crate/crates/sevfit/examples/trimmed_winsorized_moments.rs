//! Sample and population trimmed/winsorized moments, and how the trimming
//! proportions sit against the censoring probabilities.

use sevfit::distributions::ParetoI;
use sevfit::moments::{
    classify_case, population_t_moment, population_w_moment, sample_t_moment, sample_w_moment,
    HTransform, TrimSpec,
};
use sevfit::transforms::{payment_y_dist, PolicyTerms};

fn main() {
    // a plain trimmed and winsorized mean first
    let data = [1.0, 2.0, 3.0, 4.0, 100.0];
    let t = TrimSpec::new(0.2, 0.2).unwrap();
    let h = HTransform::Identity;
    println!("data {data:?}, trimming one value per side:");
    println!("  trimmed mean    = {:.4}", sample_t_moment(&data, h, 1, t).unwrap());
    println!("  winsorized mean = {:.4}", sample_w_moment(&data, h, 1, t).unwrap());
    println!("  plain mean      = {:.4}", data.iter().sum::<f64>() / 5.0);

    // payment data: the log transformation linearizes the Pareto quantile
    let alpha = 1.4;
    let terms = PolicyTerms::new(1.0, 2.0, 25.0).unwrap();
    let dist = payment_y_dist(ParetoI::new(1.0, alpha).unwrap(), terms).unwrap();
    let h = HTransform::PaymentY { c: terms.c, d: terms.d };
    let t = TrimSpec::new(0.05, 0.10).unwrap();

    let mut sample = dist.sample(50_000, 7);
    sample.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let t_hat = sample_t_moment(&sample, h, 1, t).unwrap();
    let w_hat = sample_w_moment(&sample, h, 1, t).unwrap();
    let t_pop = population_t_moment(&dist, h, 1, t).unwrap();
    let w_pop = population_w_moment(&dist, h, 1, t).unwrap();
    println!("\n50k payments, a = 0.05, b = 0.10, h = log(y/(cd) + 1):");
    println!("  sample T moment     = {t_hat:.6}");
    println!("  population T moment = {t_pop:.6}");
    println!("  sample W moment     = {w_hat:.6}");
    println!("  population W moment = {w_pop:.6}");

    // where the window sits relative to the censored masses
    let share = sample.iter().filter(|&&y| y < terms.max_payment()).count() as f64
        / sample.len() as f64;
    println!("\nuncensored share {share:.4}:");
    for (a, b) in [(0.05, 0.10), (0.0, 0.01), (0.97, 0.01)] {
        let t = TrimSpec::new(a, b).unwrap();
        println!("  a = {a}, b = {b}: {:?}", classify_case(t, 0.0, share));
    }
}
