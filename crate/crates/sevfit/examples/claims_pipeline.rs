//! The full batch pipeline on the bundled synthetic claims file: summary,
//! fits with goodness of fit, and layer premiums. The `sevfit` binary wraps
//! exactly these calls.

use std::path::Path;

use sevfit::cli::{
    cmd_fit, cmd_price, cmd_summarize, read_claims, render_fit, render_price, render_summarize,
    EstimatorChoice, LayerConfig, LossBasis, RunConfig,
};

fn main() {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/synthetic_claims.csv");
    let claims = read_claims(&path).unwrap();

    let summary = cmd_summarize(&claims, Some(5.0e5)).unwrap();
    // drop the (long) qq listing for this walkthrough
    let summary_no_qq =
        sevfit::cli::SummarizeReport { qq: None, ..summary.clone() };
    print!("{}", render_summarize(&summary_no_qq));
    if let Some(qq) = &summary.qq {
        println!(
            "qq line over {} pairs: log loss = {:.2} + {:.2} x\n",
            qq.pairs.len(),
            qq.intercept,
            qq.slope
        );
    }

    let cfg = RunConfig {
        d: 5.0e5,
        x0: 7000.0,
        estimators: vec![
            EstimatorChoice::Mle,
            EstimatorChoice::T { a: 0.10, b: 0.10 },
            EstimatorChoice::W { a: 0.10, b: 0.10 },
        ],
        bootstrap_runs: 200,
        seed: 5,
        layers: vec![LayerConfig {
            attachment: 7.0e6,
            exhaustion: 35.0e6,
            bases: vec![LossBasis::Observed, LossBasis::GroundUp],
        }],
        ..RunConfig::default()
    };
    print!("{}", render_fit(&cmd_fit(&claims, &cfg).unwrap()));
    println!();
    print!("{}", render_price(&cmd_price(&claims, &cfg).unwrap()));
}
