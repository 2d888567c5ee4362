//! Dimensionality reduction over feature matrices: plain PCA with the
//! Kaiser and Broken-Stick component-count rules, and supervised PCA.
//!
//! Supervised PCA searches for an orthonormal basis V maximizing
//!
//! ```text
//! D_C = D_B - (alpha / 2) (D_W1 + D_W2)
//! ```
//!
//! where D_B is the averaged squared distance between projections of
//! points in different classes and D_Wk the averaged squared distance
//! within class k. Both averages are quadratic in the data, so D_C equals
//! tr(V^T Q V) for a symmetric matrix Q assembled from class Gram matrices
//! and sums; the maximizer is the top eigenvectors of Q. The pair sums use
//! scatter identities instead of O(n^2) loops; the explicit pair loop is
//! kept in the test suite as an oracle.

use nalgebra::{DMatrix, DVector};

use crate::corpus::Label;
use crate::error::{Error, Result};
use crate::linalg;

/// Principal component model of a feature matrix.
#[derive(Debug, Clone)]
pub struct PcaModel {
    pub mean: DVector<f64>,
    /// All m axes as orthonormal columns, by non-increasing eigenvalue.
    pub axes: DMatrix<f64>,
    /// Eigenvalues of the sample covariance, clamped at zero.
    pub eigenvalues: Vec<f64>,
}

impl PcaModel {
    /// Project rows of `x` onto the top `p` axes.
    pub fn project(&self, x: &DMatrix<f64>, p: usize) -> DMatrix<f64> {
        let mut centered = x.clone();
        for mut row in centered.row_iter_mut() {
            for (j, v) in row.iter_mut().enumerate() {
                *v -= self.mean[j];
            }
        }
        centered * self.axes.columns(0, p)
    }
}

/// Eigen-decomposition of the covariance of centered rows.
pub fn fit_pca(x: &DMatrix<f64>) -> Result<PcaModel> {
    if x.nrows() < 2 {
        return Err(Error::domain("fit_pca requires at least 2 rows"));
    }
    let (mean, cov) = linalg::sample_covariance(x);
    let (mut eigenvalues, axes) = linalg::sym_eigen_desc(&cov);
    for v in &mut eigenvalues {
        if *v < 0.0 {
            *v = 0.0;
        }
    }
    Ok(PcaModel {
        mean,
        axes,
        eigenvalues,
    })
}

/// Kaiser rule: number of eigenvalues strictly greater than the mean
/// eigenvalue, floored at 1 for degenerate (all-equal) spectra.
pub fn kaiser_count(eigenvalues: &[f64]) -> Result<usize> {
    check_spectrum(eigenvalues)?;
    let mean = eigenvalues.iter().sum::<f64>() / eigenvalues.len() as f64;
    let count = eigenvalues.iter().filter(|&&v| v > mean).count();
    Ok(count.max(1))
}

/// Broken-Stick rule: largest k such that every normalized eigenvalue up
/// to k exceeds the expected length of the i-th largest piece of a
/// randomly broken unit stick, b_i = (1/m) * sum_{j=i..m} 1/j. Strict
/// inequality; floored at 1.
pub fn broken_stick_count(eigenvalues: &[f64]) -> Result<usize> {
    check_spectrum(eigenvalues)?;
    let m = eigenvalues.len();
    let total: f64 = eigenvalues.iter().sum();
    // b_i built back-to-front from the tail of the harmonic series
    let mut expectations = vec![0.0; m];
    let mut tail = 0.0;
    for i in (0..m).rev() {
        tail += 1.0 / (i + 1) as f64;
        expectations[i] = tail / m as f64;
    }
    let mut count = 0;
    for (i, &v) in eigenvalues.iter().enumerate() {
        if v / total > expectations[i] {
            count = i + 1;
        } else {
            break;
        }
    }
    Ok(count.max(1))
}

fn check_spectrum(eigenvalues: &[f64]) -> Result<()> {
    if eigenvalues.is_empty() || !eigenvalues.iter().any(|&v| v > 0.0) {
        return Err(Error::domain(
            "component-count rules need at least one positive eigenvalue",
        ));
    }
    Ok(())
}

/// Orthonormal basis maximizing the supervised objective, with the value
/// it attains.
#[derive(Debug, Clone)]
pub struct SupervisedBasis {
    /// m x p orthonormal columns.
    pub axes: DMatrix<f64>,
    pub alpha: f64,
    /// Achieved D_C = tr(V^T Q V), the sum of the top-p eigenvalues of Q.
    pub objective: f64,
    /// Column means subtracted before projection.
    pub mean: DVector<f64>,
    /// Set when the requested dimension exceeded the attainable rank and
    /// the basis was truncated.
    pub truncated_from: Option<usize>,
}

impl SupervisedBasis {
    pub fn output_dimension(&self) -> usize {
        self.axes.ncols()
    }

    pub fn project(&self, x: &DMatrix<f64>) -> DMatrix<f64> {
        let mut centered = x.clone();
        for mut row in centered.row_iter_mut() {
            for (j, v) in row.iter_mut().enumerate() {
                *v -= self.mean[j];
            }
        }
        centered * &self.axes
    }
}

/// The eigen-structure of Q, shared between `supervised_pca` and the
/// dimension sweep so Q is decomposed once.
struct SupervisedSolver {
    mean: DVector<f64>,
    eigenvalues: Vec<f64>,
    eigenvectors: DMatrix<f64>,
    rank: usize,
    alpha: f64,
}

impl SupervisedSolver {
    fn new(x: &DMatrix<f64>, labels: &[Label], alpha: f64) -> Result<Self> {
        if x.nrows() != labels.len() {
            return Err(Error::domain("row/label count mismatch"));
        }
        if alpha < 0.0 {
            return Err(Error::domain("alpha must be non-negative"));
        }
        let n_pos = labels.iter().filter(|l| **l == Label::Positive).count();
        let n_neg = labels.len() - n_pos;
        if n_pos == 0 || n_neg == 0 {
            return Err(Error::domain(
                "supervised projection needs both classes non-empty",
            ));
        }
        let (mean, centered) = linalg::center_rows(x);
        let m = x.ncols();

        // per-class Gram-sum G_k = X_k^T X_k and coordinate sum s_k
        let mut gram = [DMatrix::zeros(m, m), DMatrix::zeros(m, m)];
        let mut sums = [DVector::zeros(m), DVector::zeros(m)];
        let counts = [n_pos as f64, n_neg as f64];
        for (row, label) in centered.row_iter().zip(labels) {
            let k = usize::from(*label == Label::Negative);
            let v = row.transpose();
            gram[k] += &v * v.transpose();
            sums[k] += v;
        }

        // between: sum over cross pairs of (x_i - x_j)^T (x_i - x_j)
        //        = n2 G1 + n1 G2 - s1 s2^T - s2 s1^T
        let cross = &gram[0] * counts[1] + &gram[1] * counts[0]
            - &sums[0] * sums[1].transpose()
            - &sums[1] * sums[0].transpose();
        let mut q = cross / (counts[0] * counts[1]);

        // within class k: sum over i>j of (x_i - x_j)^T (x_i - x_j)
        //               = n_k G_k - s_k s_k^T, zero when n_k < 2
        for k in 0..2 {
            if counts[k] >= 2.0 {
                let scatter = &gram[k] * counts[k] - &sums[k] * sums[k].transpose();
                let d_w = scatter * (2.0 / (counts[k] * (counts[k] - 1.0)));
                q -= d_w * (alpha / 2.0);
            }
        }

        let (eigenvalues, eigenvectors) = linalg::sym_eigen_desc(&q);
        let scale = eigenvalues.iter().fold(0.0f64, |a, &v| a.max(v.abs()));
        if scale <= 0.0 {
            return Err(Error::domain(
                "supervised objective is identically zero; no informative axes",
            ));
        }
        let rank = eigenvalues
            .iter()
            .filter(|&&v| v.abs() > 1e-12 * scale)
            .count();
        Ok(SupervisedSolver {
            mean,
            eigenvalues,
            eigenvectors,
            rank,
            alpha,
        })
    }

    fn basis(&self, p: usize) -> SupervisedBasis {
        let keep = p.min(self.rank);
        SupervisedBasis {
            axes: self.eigenvectors.columns(0, keep).clone_owned(),
            alpha: self.alpha,
            objective: self.eigenvalues[..keep].iter().sum(),
            mean: self.mean.clone(),
            truncated_from: (keep < p).then_some(p),
        }
    }
}

/// Fit the supervised basis at dimension `p`. `x` is centered internally.
/// When `p` exceeds the attainable rank of Q the basis is truncated and
/// `truncated_from` records the request.
pub fn supervised_pca(
    x: &DMatrix<f64>,
    labels: &[Label],
    p: usize,
    alpha: f64,
) -> Result<SupervisedBasis> {
    if p == 0 || p > x.ncols() {
        return Err(Error::domain(format!(
            "supervised dimension {p} outside 1..={}",
            x.ncols()
        )));
    }
    Ok(SupervisedSolver::new(x, labels, alpha)?.basis(p))
}

/// One row of the dimension-selection trace.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceRow {
    pub p: usize,
    pub sensitivity: f64,
    pub specificity: f64,
}

impl TraceRow {
    pub fn sum(&self) -> f64 {
        self.sensitivity + self.specificity
    }
}

/// Result of the supervised dimension sweep.
#[derive(Debug, Clone)]
pub struct Selection {
    pub best_p: usize,
    pub basis: SupervisedBasis,
    pub trace: Vec<TraceRow>,
}

/// Sweep the supervised dimension from 1 to the Broken-Stick count of a
/// plain PCA of `x`, scoring each candidate with the classifier hook
/// (sensitivity, specificity on the projected data). Returns the dimension
/// maximizing sensitivity + specificity; ties go to the smallest p.
pub fn supervised_selection<F>(
    x: &DMatrix<f64>,
    labels: &[Label],
    alpha: f64,
    mut classify: F,
) -> Result<Selection>
where
    F: FnMut(&DMatrix<f64>, &[Label]) -> Result<(f64, f64)>,
{
    let pca = fit_pca(x)?;
    let ncomp = broken_stick_count(&pca.eigenvalues)?;
    let solver = SupervisedSolver::new(x, labels, alpha)?;
    let mut trace = Vec::with_capacity(ncomp);
    let mut best: Option<(usize, f64)> = None;
    for p in 1..=ncomp {
        let basis = solver.basis(p);
        let projected = basis.project(x);
        let (sensitivity, specificity) = classify(&projected, labels)?;
        let row = TraceRow {
            p,
            sensitivity,
            specificity,
        };
        if best.is_none_or(|(_, s)| row.sum() > s) {
            best = Some((p, row.sum()));
        }
        trace.push(row);
    }
    let (best_p, _) = best.expect("ncomp >= 1 guarantees one trace row");
    Ok(Selection {
        best_p,
        basis: solver.basis(best_p),
        trace,
    })
}
