//! Leave-one-out cross-validation against whole-set training metrics.
//!
//! A dataset of duplicated points with flipped labels is pure
//! memorization bait: whole-set evaluation rewards fitting it, while
//! leave-one-out punishes it because the held-out point's twin carries
//! the opposite label. Pure-noise features show the same honesty: LOOCV
//! hovers at chance while whole-set numbers drift upward.

use citesem::classify::{lda_fit, loocv_lda, split_classes};
use citesem::synth::{memorization_bait, noise_features};

fn main() {
    let (x, labels) = memorization_bait(30, 30, 4, 0.4, 11);
    let (pos, neg) = split_classes(&x, &labels);
    let model = lda_fit(&pos, &neg, 0.0).unwrap();
    let whole = (model.training_sensitivity + model.training_specificity) * 100.0;
    let held_out = loocv_lda(&x, &labels, 0.0).unwrap();
    println!("memorization-prone dataset ({} points):", labels.len());
    println!("  whole-set LDA sum  {whole:.2}%");
    println!("  leave-one-out sum  {:.2}%", held_out.sum_pct());

    println!("\npure-noise features, 5 seeds:");
    println!("  seed  whole-set%  loocv%");
    for seed in 0..5 {
        let (x, labels) = noise_features(100, 5, 300 + seed);
        let (pos, neg) = split_classes(&x, &labels);
        let model = lda_fit(&pos, &neg, 0.0).unwrap();
        let whole = (model.training_sensitivity + model.training_specificity) * 100.0;
        let report = loocv_lda(&x, &labels, 0.0).unwrap();
        println!("  {seed:4}  {whole:9.2}  {:6.2}", report.sum_pct());
    }
}
