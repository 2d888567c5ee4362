//! Class-weighted kNN on imbalanced data, swept over the k grid.
//!
//! With a 4:1 class imbalance, plain majority voting drowns the minority
//! class. Weighting each neighborhood by the inverse class priors keeps
//! minority recall alive; this example compares both over the default
//! k grid using leave-one-out evaluation on the training set.

use citesem::classify::{KnnConfig, KnnLooEvaluator};
use citesem::corpus::Label;
use citesem::evaluate::confusion;
use citesem::synth::gaussian_blobs;
use nalgebra::DMatrix;

fn main() {
    // 240 negatives vs 60 positives, modest overlap
    let (big, _) = gaussian_blobs(240, 3, 0.0, 71);
    let (small, _) = gaussian_blobs(60, 3, 0.0, 72);
    let mut data = Vec::new();
    let mut labels = Vec::new();
    for row in big.row_iter() {
        data.extend(row.iter().map(|v| v - 0.8));
        labels.push(Label::Negative);
    }
    for row in small.row_iter() {
        data.extend(row.iter().map(|v| v + 0.8));
        labels.push(Label::Positive);
    }
    let x = DMatrix::from_row_slice(labels.len(), 3, &data);
    let n_pos = labels.iter().filter(|l| **l == Label::Positive).count();
    let n_neg = labels.len() - n_pos;
    println!("{n_pos} positive vs {n_neg} negative training points");

    let evaluator = KnnLooEvaluator::new(&x, &labels).unwrap();
    println!("\n  k   sens%   spec%    sum%");
    let mut best = (0usize, f64::NEG_INFINITY);
    for k in [1usize, 3, 5, 7, 11, 13, 17] {
        let config = KnnConfig::from_counts(k, n_pos, n_neg).unwrap();
        let (predictions, _) = evaluator.evaluate(&config).unwrap();
        let cm = confusion(&predictions, &labels).unwrap();
        let sens = cm.true_pos as f64 / cm.positives() as f64 * 100.0;
        let spec = cm.true_neg as f64 / cm.negatives() as f64 * 100.0;
        println!("{k:3}  {sens:6.2}  {spec:6.2}  {:6.2}", sens + spec);
        if sens + spec > best.1 {
            best = (k, sens + spec);
        }
    }
    println!("\nbest k = {} with sum {:.2}%", best.0, best.1);
}
