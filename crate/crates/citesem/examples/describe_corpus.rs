//! Corpus descriptive statistics and the two class-labeling schemes.
//!
//! Generates a synthetic corpus with a long-tailed citation distribution,
//! prints the per-category summary statistics, and shows how the same
//! category splits under the mean threshold (H/L) and under the extreme
//! quartiles (EH/EL).

use citesem::corpus::{descriptive_stats, label_ehel, label_hl, Thresholds};
use citesem::synth::{ladder_corpus, LadderParams};

fn main() {
    let params = LadderParams {
        n_docs: 2000,
        separation: 1.0,
        seed: 17,
        ..LadderParams::default()
    };
    let synthetic = ladder_corpus(&params);
    let corpus = &synthetic.corpus;

    let citations: Vec<u64> = corpus.records().iter().map(|r| r.citations).collect();
    let stats = descriptive_stats(&citations).unwrap();
    println!("category `{}`:", synthetic.category);
    println!("  n      = {}", stats.n);
    println!("  max    = {}", stats.max);
    println!("  min    = {}", stats.min);
    println!("  mean   = {:.3}", stats.mean);
    println!(
        "  q1/q2/q3 = {:.2} / {:.2} / {:.2}",
        stats.q1, stats.q2, stats.q3
    );
    println!("  sigma  = {:.3}", stats.sigma);
    println!("  se     = {:.5}", stats.se);

    let hl = label_hl(corpus, &synthetic.category).unwrap();
    if let Thresholds::Mean(mean) = hl.thresholds {
        println!(
            "\nmean-split labels (threshold {:.3}): {} highly cited, {} little cited",
            mean,
            hl.positives(),
            hl.negatives()
        );
    }

    let ehel = label_ehel(corpus, &synthetic.category).unwrap();
    if let Thresholds::Quartiles { q1, q3 } = ehel.thresholds {
        println!(
            "extreme-quartile labels (q1 {:.2}, q3 {:.2}): {} extremely high, {} extremely low, {} excluded",
            q1,
            q3,
            ehel.positives(),
            ehel.negatives(),
            corpus.len() - ehel.items.len()
        );
    }
}
