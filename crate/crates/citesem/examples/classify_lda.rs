//! Fisher LDA over Meaning-Space features, with the threshold that
//! maximizes sensitivity + specificity, an ROC curve and its AUC.

use citesem::classify::{lda_fit, split_classes};
use citesem::corpus::{label_hl, Label};
use citesem::evaluate::{confusion, roc_and_auc};
use citesem::fvt::{featurize, FvtVariant};
use citesem::synth::{ladder_corpus, LadderParams};

fn main() {
    let params = LadderParams {
        n_docs: 1200,
        separation: 2.0,
        seed: 31,
        ..LadderParams::default()
    };
    let synthetic = ladder_corpus(&params);
    let dataset = label_hl(&synthetic.corpus, &synthetic.category).unwrap();

    // features aligned with the labeled items
    let docs: Vec<_> = dataset
        .items
        .iter()
        .filter_map(|(id, _)| synthetic.corpus.get(id))
        .collect();
    let fm = featurize(docs, &synthetic.table, FvtVariant::Fvt3);
    let labels: Vec<Label> = dataset.items.iter().map(|(_, l)| *l).collect();
    println!(
        "{} documents featurized as {} ({} dims)",
        fm.matrix.nrows(),
        fm.variant,
        fm.matrix.ncols()
    );

    let (pos, neg) = split_classes(&fm.matrix, &labels);
    let model = lda_fit(&pos, &neg, 0.0).unwrap();
    println!(
        "threshold {:.4} (ridge used {:.1e}, flipped {})",
        model.threshold, model.ridge_used, model.flipped
    );

    let scores: Vec<f64> = (&fm.matrix * &model.omega).iter().copied().collect();
    let predictions: Vec<Label> = scores
        .iter()
        .map(|&s| {
            if s > model.threshold {
                Label::Positive
            } else {
                Label::Negative
            }
        })
        .collect();
    let cm = confusion(&predictions, &labels).unwrap();
    println!(
        "confusion: tp {} fp {} fn {} tn {}",
        cm.true_pos, cm.false_pos, cm.false_neg, cm.true_neg
    );
    println!(
        "sensitivity {:.2}%  specificity {:.2}%  sum {:.2}%",
        model.training_sensitivity * 100.0,
        model.training_specificity * 100.0,
        (model.training_sensitivity + model.training_specificity) * 100.0
    );

    let roc = roc_and_auc(&scores, &labels).unwrap();
    println!("auc {:.4} over {} roc points", roc.auc, roc.points.len());
    println!("first roc points (1-specificity, sensitivity):");
    for (x, y) in roc.points.iter().take(5) {
        println!("  ({x:.4}, {y:.4})");
    }
}
