//! Biometric rates from a confusion matrix and a one-way ANOVA.

use gaitforge::learn::{
    anova_from_summaries, biometric_metrics, class_accuracy, ConfusionMatrix, GroupSummary,
};
use gaitforge::Result;

fn main() -> Result<()> {
    let m = ConfusionMatrix::from_counts(vec![
        vec![20, 0, 0, 0],
        vec![1, 19, 0, 0],
        vec![1, 1, 18, 0],
        vec![2, 0, 1, 17],
    ])?;
    let b = biometric_metrics(&m)?;
    println!(
        "TAR {:.2}% FAR {:.2}% FRR {:.2}%",
        b.macro_tar, b.macro_far, b.macro_frr
    );
    for c in 0..m.k() {
        let counts = m.class_counts(c);
        println!(
            "  class {c}: {:?} accuracy {:.2}%",
            counts,
            class_accuracy(&counts)
        );
    }

    let a = anova_from_summaries(&[
        GroupSummary {
            n: 5,
            mean: 79.0,
            variance: 6.5,
        },
        GroupSummary {
            n: 5,
            mean: 86.8,
            variance: 3.3,
        },
    ])?;
    println!(
        "ANOVA: SSB {:.2} SSW {:.2} F({}, {}) = {:.4}, p = {:.2e}",
        a.ss_between, a.ss_within, a.df_between, a.df_within, a.f, a.p
    );
    Ok(())
}
