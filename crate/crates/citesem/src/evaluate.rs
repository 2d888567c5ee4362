//! Classifier evaluation: confusion matrices, sensitivity and specificity,
//! ROC curves and AUC.
//!
//! The ROC sweeps every distinct score as a threshold; tied scores step
//! diagonally, which matches the half-tie convention of the rank-statistic
//! AUC. The trapezoid AUC therefore equals P(score_pos > score_neg) +
//! P(tie)/2, and the test suite holds the two routes against each other.

use std::io::Write;

use serde::Serialize;

use crate::corpus::Label;
use crate::error::{Error, Result};

/// Binary confusion counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ConfusionMatrix {
    pub true_pos: usize,
    pub false_pos: usize,
    pub false_neg: usize,
    pub true_neg: usize,
}

impl ConfusionMatrix {
    pub fn positives(&self) -> usize {
        self.true_pos + self.false_neg
    }

    pub fn negatives(&self) -> usize {
        self.true_neg + self.false_pos
    }

    pub fn total(&self) -> usize {
        self.positives() + self.negatives()
    }
}

/// Exact counts of prediction/truth agreement.
pub fn confusion(predictions: &[Label], truths: &[Label]) -> Result<ConfusionMatrix> {
    if predictions.len() != truths.len() {
        return Err(Error::domain(format!(
            "confusion: {} predictions vs {} truths",
            predictions.len(),
            truths.len()
        )));
    }
    let mut cm = ConfusionMatrix {
        true_pos: 0,
        false_pos: 0,
        false_neg: 0,
        true_neg: 0,
    };
    for (p, t) in predictions.iter().zip(truths) {
        match (p, t) {
            (Label::Positive, Label::Positive) => cm.true_pos += 1,
            (Label::Positive, Label::Negative) => cm.false_pos += 1,
            (Label::Negative, Label::Positive) => cm.false_neg += 1,
            (Label::Negative, Label::Negative) => cm.true_neg += 1,
        }
    }
    Ok(cm)
}

/// TP / (TP + FN). Errors rather than returning NaN when no positives exist.
pub fn sensitivity(cm: &ConfusionMatrix) -> Result<f64> {
    let denom = cm.positives();
    if denom == 0 {
        return Err(Error::domain("sensitivity undefined: no positive examples"));
    }
    Ok(cm.true_pos as f64 / denom as f64)
}

/// TN / (TN + FP). Errors rather than returning NaN when no negatives exist.
pub fn specificity(cm: &ConfusionMatrix) -> Result<f64> {
    let denom = cm.negatives();
    if denom == 0 {
        return Err(Error::domain("specificity undefined: no negative examples"));
    }
    Ok(cm.true_neg as f64 / denom as f64)
}

/// ROC curve as ordered (1 - specificity, sensitivity) points with its
/// trapezoid area.
#[derive(Debug, Clone, PartialEq)]
pub struct RocCurve {
    /// Monotone points from (0, 0) to (1, 1).
    pub points: Vec<(f64, f64)>,
    pub auc: f64,
}

/// Sweep all thresholds over the distinct scores (higher score = more
/// positive) and integrate by the trapezoid rule.
pub fn roc_and_auc(scores: &[f64], truths: &[Label]) -> Result<RocCurve> {
    if scores.len() != truths.len() {
        return Err(Error::domain("roc: score/label count mismatch"));
    }
    let n_pos = truths.iter().filter(|l| **l == Label::Positive).count();
    let n_neg = truths.len() - n_pos;
    if n_pos == 0 || n_neg == 0 {
        return Err(Error::domain("roc needs both classes present"));
    }
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| {
        scores[b]
            .partial_cmp(&scores[a])
            .expect("scores must not be NaN")
    });
    let mut points = Vec::with_capacity(scores.len() + 1);
    points.push((0.0, 0.0));
    let mut tp = 0usize;
    let mut fp = 0usize;
    let mut i = 0usize;
    while i < order.len() {
        let value = scores[order[i]];
        // consume the whole tie group before emitting a point
        while i < order.len() && scores[order[i]] == value {
            match truths[order[i]] {
                Label::Positive => tp += 1,
                Label::Negative => fp += 1,
            }
            i += 1;
        }
        points.push((fp as f64 / n_neg as f64, tp as f64 / n_pos as f64));
    }
    let mut auc = 0.0;
    for w in points.windows(2) {
        let (x1, y1) = w[0];
        let (x2, y2) = w[1];
        auc += (x2 - x1) * (y1 + y2) / 2.0;
    }
    Ok(RocCurve { points, auc })
}

/// Evaluation of one classifier run.
#[derive(Debug, Clone)]
pub struct EvaluationReport {
    pub confusion: ConfusionMatrix,
    pub sensitivity: f64,
    pub specificity: f64,
    /// Present when comparable scores were available for a curve.
    pub roc: Option<RocCurve>,
}

impl EvaluationReport {
    pub fn from_confusion(cm: ConfusionMatrix) -> Result<Self> {
        Ok(EvaluationReport {
            confusion: cm,
            sensitivity: sensitivity(&cm)?,
            specificity: specificity(&cm)?,
            roc: None,
        })
    }

    pub fn with_roc(mut self, roc: RocCurve) -> Self {
        self.roc = Some(roc);
        self
    }

    /// Sensitivity + specificity in percentage points.
    pub fn sum_pct(&self) -> f64 {
        (self.sensitivity + self.specificity) * 100.0
    }

    pub fn auc(&self) -> Option<f64> {
        self.roc.as_ref().map(|r| r.auc)
    }
}

/// CSV export of a curve: `one_minus_specificity,sensitivity` rows.
pub fn export_roc_csv<W: Write>(out: &mut W, roc: &RocCurve) -> std::io::Result<()> {
    writeln!(out, "one_minus_specificity,sensitivity")?;
    for (x, y) in &roc.points {
        writeln!(out, "{x},{y}")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lab(spec: &[(Label, usize)]) -> Vec<Label> {
        spec.iter()
            .flat_map(|&(l, n)| std::iter::repeat_n(l, n))
            .collect()
    }

    #[test]
    fn confusion_all_correct() {
        let truth = lab(&[(Label::Positive, 3), (Label::Negative, 2)]);
        let cm = confusion(&truth, &truth).unwrap();
        assert_eq!(cm.false_pos, 0);
        assert_eq!(cm.false_neg, 0);
        assert_eq!(cm.true_pos, 3);
        assert_eq!(cm.true_neg, 2);
    }

    #[test]
    fn confusion_inverted_predictions_swap_cells() {
        let truth = lab(&[(Label::Positive, 3), (Label::Negative, 2)]);
        let inverted: Vec<Label> = truth
            .iter()
            .map(|l| match l {
                Label::Positive => Label::Negative,
                Label::Negative => Label::Positive,
            })
            .collect();
        let straight = confusion(&truth, &truth).unwrap();
        let swapped = confusion(&inverted, &truth).unwrap();
        assert_eq!(swapped.false_neg, straight.true_pos);
        assert_eq!(swapped.false_pos, straight.true_neg);
        assert_eq!(swapped.true_pos, 0);
        assert_eq!(swapped.true_neg, 0);
    }

    #[test]
    fn confusion_length_mismatch_errors() {
        let a = lab(&[(Label::Positive, 2)]);
        let b = lab(&[(Label::Positive, 3)]);
        assert!(confusion(&a, &b).is_err());
    }

    #[test]
    fn sensitivity_specificity_formulas() {
        let cm = ConfusionMatrix {
            true_pos: 3,
            false_neg: 1,
            true_neg: 0,
            false_pos: 5,
        };
        assert_eq!(sensitivity(&cm).unwrap(), 0.75);
        assert_eq!(specificity(&cm).unwrap(), 0.0);
    }

    #[test]
    fn zero_denominator_is_an_error_not_nan() {
        let cm = ConfusionMatrix {
            true_pos: 0,
            false_neg: 0,
            true_neg: 4,
            false_pos: 0,
        };
        assert!(sensitivity(&cm).is_err());
        assert!(specificity(&cm).is_ok());
    }

    #[test]
    fn perfect_ranking_auc_one() {
        let scores = [0.9, 0.8, 0.2, 0.1];
        let truths = lab(&[(Label::Positive, 2), (Label::Negative, 2)]);
        let roc = roc_and_auc(&scores, &truths).unwrap();
        assert_eq!(roc.auc, 1.0);
        assert_eq!(roc.points.first().unwrap(), &(0.0, 0.0));
        assert_eq!(roc.points.last().unwrap(), &(1.0, 1.0));
    }

    #[test]
    fn all_tied_scores_auc_half() {
        let scores = [1.0; 6];
        let truths = lab(&[(Label::Positive, 3), (Label::Negative, 3)]);
        let roc = roc_and_auc(&scores, &truths).unwrap();
        assert!((roc.auc - 0.5).abs() < 1e-12);
        // a single diagonal segment
        assert_eq!(roc.points.len(), 2);
    }

    #[test]
    fn one_class_input_errors() {
        let scores = [0.4, 0.6];
        let truths = lab(&[(Label::Positive, 2)]);
        assert!(roc_and_auc(&scores, &truths).is_err());
    }

    #[test]
    fn roc_points_monotone() {
        let scores = [0.1, 0.4, 0.35, 0.8, 0.8, 0.05];
        let truths = lab(&[
            (Label::Negative, 2),
            (Label::Positive, 3),
            (Label::Negative, 1),
        ]);
        let roc = roc_and_auc(&scores, &truths).unwrap();
        for w in roc.points.windows(2) {
            assert!(w[1].0 >= w[0].0);
            assert!(w[1].1 >= w[0].1);
        }
    }
}
