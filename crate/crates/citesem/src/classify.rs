//! Binary classifiers: Fisher LDA with a sensitivity+specificity-optimal
//! threshold, class-weighted kNN, and leave-one-out cross-validation.
//!
//! The LDA direction solves (Sigma_1 + Sigma_2 + ridge I) w = mu_1 - mu_2
//! with a linear solve; a ridge ladder kicks in when the pooled covariance
//! is singular, which is routine for high-dimensional features with few
//! documents. The decision threshold is searched over midpoints between
//! consecutive distinct projections plus the two infinite cuts.
//!
//! Weighted kNN scores the k-neighborhood by class priors: with s positive
//! neighbors out of t, the positive class scores s / P1 and the negative
//! (t - s) / P2 where P1 and P2 are exact training class fractions.

use std::io::Write;

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;

use crate::corpus::Label;
use crate::error::{Error, Result};
use crate::evaluate::{confusion, EvaluationReport};
use crate::linalg;

/// Fitted Fisher discriminant with its decision threshold. The model
/// predicts positive when `omega . x > threshold`.
#[derive(Debug, Clone)]
pub struct LdaModel {
    pub omega: DVector<f64>,
    pub threshold: f64,
    /// Ridge actually used by the linear solve (0 when none was needed).
    pub ridge_used: f64,
    /// True when the raw Fisher direction was negated so that positives
    /// score above the threshold.
    pub flipped: bool,
    /// Set when the class means coincide and the direction is zero.
    pub degenerate: bool,
    /// Training sensitivity and specificity at the chosen threshold.
    pub training_sensitivity: f64,
    pub training_specificity: f64,
}

impl LdaModel {
    pub fn score(&self, x: &DVector<f64>) -> f64 {
        self.omega.dot(x)
    }

    pub fn predict(&self, x: &DVector<f64>) -> Label {
        if self.score(x) > self.threshold {
            Label::Positive
        } else {
            Label::Negative
        }
    }

    /// Text dump: direction, threshold, ridge and orientation.
    pub fn dump<W: Write>(&self, out: &mut W) -> std::io::Result<()> {
        let omega: Vec<String> = self.omega.iter().map(|v| v.to_string()).collect();
        writeln!(out, "omega\t{}", omega.join(" "))?;
        writeln!(out, "threshold\t{}", self.threshold)?;
        writeln!(out, "ridge\t{}", self.ridge_used)?;
        writeln!(out, "orientation\tpositive_above")?;
        writeln!(out, "flipped\t{}", self.flipped)?;
        writeln!(out, "degenerate\t{}", self.degenerate)
    }
}

/// Chosen cut with the training metrics it attains.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdChoice {
    pub threshold: f64,
    pub sensitivity: f64,
    pub specificity: f64,
}

impl ThresholdChoice {
    pub fn sum(&self) -> f64 {
        self.sensitivity + self.specificity
    }
}

/// Threshold maximizing sensitivity + specificity under the convention
/// "predict positive iff score > threshold". Candidates are midpoints of
/// consecutive distinct sorted scores plus -inf and +inf; ties take the
/// smaller threshold.
pub fn lda_threshold(projections: &[(f64, Label)]) -> Result<ThresholdChoice> {
    let n_pos = projections
        .iter()
        .filter(|(_, l)| *l == Label::Positive)
        .count();
    let n_neg = projections.len() - n_pos;
    if n_pos == 0 || n_neg == 0 {
        return Err(Error::domain("threshold search needs both classes present"));
    }
    let mut sorted: Vec<(f64, Label)> = projections.to_vec();
    sorted.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("scores must not be NaN"));

    // walk cuts from -inf upward; at each candidate t, sensitivity counts
    // positives above t and specificity negatives at or below t.
    let mut best = ThresholdChoice {
        threshold: f64::NEG_INFINITY,
        sensitivity: 1.0,
        specificity: 0.0,
    };
    let mut pos_above = n_pos;
    let mut neg_below = 0usize;
    let mut i = 0usize;
    while i < sorted.len() {
        let value = sorted[i].0;
        while i < sorted.len() && sorted[i].0 == value {
            match sorted[i].1 {
                Label::Positive => pos_above -= 1,
                Label::Negative => neg_below += 1,
            }
            i += 1;
        }
        let threshold = if i < sorted.len() {
            (value + sorted[i].0) / 2.0
        } else {
            f64::INFINITY
        };
        let candidate = ThresholdChoice {
            threshold,
            sensitivity: pos_above as f64 / n_pos as f64,
            specificity: neg_below as f64 / n_neg as f64,
        };
        if candidate.sum() > best.sum() {
            best = candidate;
        }
    }
    Ok(best)
}

/// Fit Fisher LDA on the two class matrices (rows are samples). `ridge`
/// is the initial regularization added to Sigma_1 + Sigma_2; when the
/// solve fails it is raised along a ladder starting at 1e-8 of the mean
/// diagonal and multiplying by 10 until the system becomes solvable.
pub fn lda_fit(x_pos: &DMatrix<f64>, x_neg: &DMatrix<f64>, ridge: f64) -> Result<LdaModel> {
    if x_pos.nrows() < 2 || x_neg.nrows() < 2 {
        return Err(Error::domain(
            "lda_fit needs at least 2 rows per class for covariances",
        ));
    }
    if x_pos.ncols() != x_neg.ncols() {
        return Err(Error::domain("class matrices disagree on dimension"));
    }
    let d = x_pos.ncols();
    let (mu_pos, cov_pos) = linalg::sample_covariance(x_pos);
    let (mu_neg, cov_neg) = linalg::sample_covariance(x_neg);
    let pooled = cov_pos + cov_neg;
    let diff = &mu_pos - &mu_neg;

    let scale = pooled.trace() / d as f64;
    let degenerate = diff.norm() <= 1e-300;
    let (omega, ridge_used) = if degenerate {
        (DVector::zeros(d), ridge)
    } else {
        solve_with_ridge_ladder(&pooled, &diff, ridge, scale)?
    };

    let score = |x: &DMatrix<f64>| -> Vec<f64> { (x * &omega).iter().copied().collect() };
    let mut projections: Vec<(f64, Label)> = score(x_pos)
        .into_iter()
        .map(|s| (s, Label::Positive))
        .collect();
    projections.extend(score(x_neg).into_iter().map(|s| (s, Label::Negative)));

    let forward = lda_threshold(&projections)?;
    let mirrored: Vec<(f64, Label)> = projections.iter().map(|&(s, l)| (-s, l)).collect();
    let backward = lda_threshold(&mirrored)?;

    let (omega, choice, flipped) = if backward.sum() > forward.sum() {
        (-omega, backward, true)
    } else {
        (omega, forward, false)
    };
    Ok(LdaModel {
        omega,
        threshold: choice.threshold,
        ridge_used,
        flipped,
        degenerate,
        training_sensitivity: choice.sensitivity,
        training_specificity: choice.specificity,
    })
}

fn solve_with_ridge_ladder(
    pooled: &DMatrix<f64>,
    diff: &DVector<f64>,
    ridge: f64,
    scale: f64,
) -> Result<(DVector<f64>, f64)> {
    let d = pooled.nrows();
    let attempt = |r: f64| -> Option<DVector<f64>> {
        let mut a = pooled.clone();
        for i in 0..d {
            a[(i, i)] += r;
        }
        let solution = a.clone().cholesky()?.solve(diff);
        // reject solves whose residual says the factorization broke down
        let residual = (&a * &solution - diff).norm();
        (residual <= 1e-6 * diff.norm().max(1e-300) && solution.iter().all(|v| v.is_finite()))
            .then_some(solution)
    };
    if let Some(omega) = attempt(ridge) {
        return Ok((omega, ridge));
    }
    let base = 1e-8 * scale.max(f64::MIN_POSITIVE);
    let mut r = base.max(ridge);
    for _ in 0..24 {
        if let Some(omega) = attempt(r) {
            return Ok((omega, r));
        }
        r *= 10.0;
    }
    Err(Error::domain(
        "pooled covariance unsolvable even with maximal ridge",
    ))
}

/// kNN configuration: neighborhood size and exact class priors.
#[derive(Debug, Clone, Copy)]
pub struct KnnConfig {
    pub k: usize,
    /// Positive-class prior N1 / N.
    pub p1: f64,
    /// Negative-class prior N2 / N.
    pub p2: f64,
}

impl KnnConfig {
    /// Priors from training class counts. `k` must be odd and positive,
    /// matching the experiment grids.
    pub fn from_counts(k: usize, n_pos: usize, n_neg: usize) -> Result<Self> {
        if k == 0 || k.is_multiple_of(2) {
            return Err(Error::domain(format!(
                "k must be odd and positive, got {k}"
            )));
        }
        if n_pos == 0 || n_neg == 0 {
            return Err(Error::domain("kNN priors need both classes non-empty"));
        }
        let n = (n_pos + n_neg) as f64;
        Ok(KnnConfig {
            k,
            p1: n_pos as f64 / n,
            p2: n_neg as f64 / n,
        })
    }
}

/// Weighted-score difference of a neighborhood: s/P1 - (t-s)/P2, positive
/// when the positive class wins.
fn weighted_margin(s: usize, t: usize, config: &KnnConfig) -> f64 {
    s as f64 / config.p1 - (t - s) as f64 / config.p2
}

fn margin_to_label(margin: f64) -> Label {
    // exact score ties go to the positive class
    if margin >= 0.0 {
        Label::Positive
    } else {
        Label::Negative
    }
}

/// Classify a query by its k nearest training points under the Euclidean
/// metric. Distance ties at the k-th neighbor widen the neighborhood, so
/// the scores use the actual neighborhood size t.
pub fn knn_predict(
    train: &DMatrix<f64>,
    labels: &[Label],
    config: &KnnConfig,
    query: &DVector<f64>,
) -> Result<Label> {
    if config.k > train.nrows() {
        return Err(Error::domain(format!(
            "k = {} exceeds training size {}",
            config.k,
            train.nrows()
        )));
    }
    let mut distances: Vec<(f64, usize)> = train
        .row_iter()
        .enumerate()
        .map(|(i, row)| ((row.transpose() - query).norm_squared(), i))
        .collect();
    distances.sort_by(|a, b| a.partial_cmp(b).expect("distances must not be NaN"));
    let cutoff = distances[config.k - 1].0;
    let mut s = 0usize;
    let mut t = 0usize;
    for &(dist, idx) in &distances {
        if t >= config.k && dist > cutoff {
            break;
        }
        t += 1;
        if labels[idx] == Label::Positive {
            s += 1;
        }
    }
    Ok(margin_to_label(weighted_margin(s, t, config)))
}

/// Neighbor tables for evaluating weighted kNN on its own training set.
/// Each point is scored against all others (never against itself), and the
/// sorted neighbor lists are shared across the whole k grid.
#[derive(Debug)]
pub struct KnnLooEvaluator {
    /// For each point, (squared distance, index) to every other point,
    /// ascending with index tie-break.
    neighbors: Vec<Vec<(f64, usize)>>,
    labels: Vec<Label>,
}

impl KnnLooEvaluator {
    pub fn new(x: &DMatrix<f64>, labels: &[Label]) -> Result<Self> {
        let n = x.nrows();
        if n != labels.len() {
            return Err(Error::domain("row/label count mismatch"));
        }
        if n < 2 {
            return Err(Error::domain("kNN evaluation needs at least 2 points"));
        }
        let neighbors: Vec<Vec<(f64, usize)>> = (0..n)
            .into_par_iter()
            .map(|i| {
                let mut row: Vec<(f64, usize)> = (0..n)
                    .filter(|&j| j != i)
                    .map(|j| ((x.row(i) - x.row(j)).norm_squared(), j))
                    .collect();
                row.sort_by(|a, b| a.partial_cmp(b).expect("distances must not be NaN"));
                row
            })
            .collect();
        Ok(KnnLooEvaluator {
            neighbors,
            labels: labels.to_vec(),
        })
    }

    /// Predictions and weighted margins for one k over all points.
    pub fn evaluate(&self, config: &KnnConfig) -> Result<(Vec<Label>, Vec<f64>)> {
        let n = self.neighbors.len();
        if config.k > n - 1 {
            return Err(Error::domain(format!(
                "k = {} exceeds leave-one-out training size {}",
                config.k,
                n - 1
            )));
        }
        let mut predictions = Vec::with_capacity(n);
        let mut margins = Vec::with_capacity(n);
        for row in &self.neighbors {
            let cutoff = row[config.k - 1].0;
            let mut s = 0usize;
            let mut t = 0usize;
            for &(dist, idx) in row {
                if t >= config.k && dist > cutoff {
                    break;
                }
                t += 1;
                if self.labels[idx] == Label::Positive {
                    s += 1;
                }
            }
            let margin = weighted_margin(s, t, config);
            predictions.push(margin_to_label(margin));
            margins.push(margin);
        }
        Ok((predictions, margins))
    }
}

/// Leave-one-out cross-validation: train on all but one point, predict the
/// held-out point, aggregate the confusion matrix over all folds. Requires
/// at least 3 points per class so every fold keeps 2 for covariances.
pub fn loocv<M, T, P>(
    x: &DMatrix<f64>,
    labels: &[Label],
    trainer: T,
    predictor: P,
) -> Result<EvaluationReport>
where
    T: Fn(&DMatrix<f64>, &[Label]) -> Result<M> + Sync,
    P: Fn(&M, &DVector<f64>) -> Label + Sync,
    M: Send,
{
    let n = x.nrows();
    if n != labels.len() {
        return Err(Error::domain("row/label count mismatch"));
    }
    let n_pos = labels.iter().filter(|l| **l == Label::Positive).count();
    if n_pos < 3 || n - n_pos < 3 {
        return Err(Error::domain(
            "leave-one-out needs at least 3 points per class",
        ));
    }
    let predictions: Vec<Label> = (0..n)
        .into_par_iter()
        .map(|held_out| {
            let mut train_rows = DMatrix::zeros(n - 1, x.ncols());
            let mut train_labels = Vec::with_capacity(n - 1);
            let mut w = 0usize;
            for (i, row) in x.row_iter().enumerate() {
                if i == held_out {
                    continue;
                }
                train_rows.set_row(w, &row);
                train_labels.push(labels[i]);
                w += 1;
            }
            let model = trainer(&train_rows, &train_labels)
                .map_err(|e| Error::domain(format!("fold {held_out}: {e}")))?;
            Ok(predictor(&model, &x.row(held_out).transpose()))
        })
        .collect::<Result<Vec<Label>>>()?;
    let cm = confusion(&predictions, labels)?;
    EvaluationReport::from_confusion(cm)
}

/// Split a feature matrix into per-class matrices in row order.
pub fn split_classes(x: &DMatrix<f64>, labels: &[Label]) -> (DMatrix<f64>, DMatrix<f64>) {
    let pos_idx: Vec<usize> = labels
        .iter()
        .enumerate()
        .filter(|(_, l)| **l == Label::Positive)
        .map(|(i, _)| i)
        .collect();
    let neg_idx: Vec<usize> = labels
        .iter()
        .enumerate()
        .filter(|(_, l)| **l == Label::Negative)
        .map(|(i, _)| i)
        .collect();
    let take = |idx: &[usize]| {
        let mut m = DMatrix::zeros(idx.len(), x.ncols());
        for (w, &i) in idx.iter().enumerate() {
            m.set_row(w, &x.row(i));
        }
        m
    };
    (take(&pos_idx), take(&neg_idx))
}

/// LDA trainer suitable for [`loocv`]: splits classes and fits with the
/// given starting ridge.
pub fn lda_trainer(ridge: f64) -> impl Fn(&DMatrix<f64>, &[Label]) -> Result<LdaModel> + Sync {
    move |x, labels| {
        let (pos, neg) = split_classes(x, labels);
        lda_fit(&pos, &neg, ridge)
    }
}

/// Leave-one-out evaluation of LDA with per-fold threshold selection.
pub fn loocv_lda(x: &DMatrix<f64>, labels: &[Label], ridge: f64) -> Result<EvaluationReport> {
    loocv(x, labels, lda_trainer(ridge), |model: &LdaModel, q| {
        model.predict(q)
    })
}
