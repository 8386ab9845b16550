//! Asymptotic relative efficiency of the trimmed and winsorized estimators
//! against maximum likelihood, over the canned censoring grids.

use sevfit::asymptotics::{are, are_preset_table, AreQuery, ArePreset, Censoring, Competitor};
use sevfit::cli::{render_are, AreReport};

fn main() {
    for preset in [
        ArePreset::TrimmedY,
        ArePreset::WinsorizedY,
        ArePreset::TrimmedZ,
        ArePreset::WinsorizedZ,
    ] {
        let table = are_preset_table(preset);
        println!("{}", render_are(&AreReport { table }));
    }

    // single-cell queries
    let q = AreQuery {
        estimator: Competitor::WinsorizedY,
        a: 0.05,
        b: 0.05,
        censoring: Censoring::Y { delta: 0.05 },
    };
    println!("W vs MLE at a = b = 0.05 with 5% censoring: {:.3}", are(&q).unwrap());
    let q = AreQuery {
        estimator: Competitor::TrimmedZ,
        a: 0.80,
        b: 0.25,
        censoring: Censoring::Z { delta_l: 0.50, delta_r: 0.01 },
    };
    println!("T vs MLE at a = 0.80, b = 0.25 with half the payments zero: {:?}", are(&q));
}
