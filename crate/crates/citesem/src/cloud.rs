//! Word clouds: a document viewed as the set of its word vectors, plus the
//! summary statistics taken over the cloud (mean, standard deviation,
//! first principal axis and deterministic 2-means centroids).
//!
//! A document's repeated tokens collapse to a single cloud point: the cloud
//! is a set of word positions, not a weighted bag. Rows are kept sorted by
//! word so every summary is invariant under token order.

use nalgebra::{DMatrix, DVector};

use crate::corpus::DocumentRecord;
use crate::error::{Error, Result};
use crate::linalg;
use crate::meaning::WordVectorTable;

/// Maximum Lloyd iterations before 2-means gives up with `converged = false`.
const MAX_LLOYD_ITERATIONS: usize = 1_000;

/// The word vectors present in one document, one row per distinct in-table
/// word, ordered lexicographically by word.
#[derive(Debug, Clone)]
pub struct WordCloud {
    pub doc_id: String,
    words: Vec<String>,
    rows: DMatrix<f64>,
    /// In-table token occurrences beyond the first per word.
    pub duplicates_collapsed: usize,
    /// Tokens not found in the table.
    pub oov_tokens: usize,
}

/// First principal axis of a cloud. Degenerate clouds (fewer than two
/// distinct points) carry a zero axis and the flag set.
#[derive(Debug, Clone)]
pub struct PrincipalAxis {
    pub axis: DVector<f64>,
    pub degenerate: bool,
}

/// Output of deterministic 2-means: centroids ordered so that `c1` is the
/// lexicographically smaller vector.
#[derive(Debug, Clone)]
pub struct TwoMeans {
    pub c1: DVector<f64>,
    pub c2: DVector<f64>,
    /// True when the cloud had fewer than two distinct points, in which
    /// case both centroids equal the single point.
    pub degenerate: bool,
    /// False only if the iteration cap was hit before assignments settled.
    pub converged: bool,
    pub iterations: usize,
}

/// Build the cloud of a document over a word-vector table. Duplicate
/// tokens collapse to one point; a document with no in-table words is an
/// exclusion error carrying the document id.
pub fn build_cloud(doc: &DocumentRecord, table: &WordVectorTable) -> Result<WordCloud> {
    let mut words: Vec<&str> = Vec::new();
    let mut duplicates = 0usize;
    let mut oov = 0usize;
    let mut seen = std::collections::HashSet::new();
    for token in &doc.tokens {
        if !table.contains(token) {
            oov += 1;
            continue;
        }
        if seen.insert(token.as_str()) {
            words.push(token);
        } else {
            duplicates += 1;
        }
    }
    if words.is_empty() {
        return Err(Error::EmptyCloud(doc.id.clone()));
    }
    words.sort_unstable();
    let d = table.dimension();
    let mut rows = DMatrix::zeros(words.len(), d);
    for (i, word) in words.iter().enumerate() {
        let v = table.vector(word).expect("word presence checked above");
        rows.set_row(i, &v.transpose());
    }
    Ok(WordCloud {
        doc_id: doc.id.clone(),
        words: words.into_iter().map(str::to_string).collect(),
        rows,
        duplicates_collapsed: duplicates,
        oov_tokens: oov,
    })
}

impl WordCloud {
    /// Construct directly from rows and their word labels (rows are
    /// re-sorted by word). Mostly useful for tests and synthetic data.
    pub fn from_rows(doc_id: &str, words: Vec<String>, rows: DMatrix<f64>) -> Result<Self> {
        if words.is_empty() || words.len() != rows.nrows() {
            return Err(Error::domain(
                "cloud rows and word labels must be non-empty and 1:1",
            ));
        }
        let mut order: Vec<usize> = (0..words.len()).collect();
        order.sort_by(|&a, &b| words[a].cmp(&words[b]));
        let mut sorted_rows = DMatrix::zeros(rows.nrows(), rows.ncols());
        let mut sorted_words = Vec::with_capacity(words.len());
        for (dst, &src) in order.iter().enumerate() {
            sorted_rows.set_row(dst, &rows.row(src));
            sorted_words.push(words[src].clone());
        }
        Ok(WordCloud {
            doc_id: doc_id.to_string(),
            words: sorted_words,
            rows: sorted_rows,
            duplicates_collapsed: 0,
            oov_tokens: 0,
        })
    }

    pub fn words(&self) -> &[String] {
        &self.words
    }

    pub fn rows(&self) -> &DMatrix<f64> {
        &self.rows
    }

    pub fn point_count(&self) -> usize {
        self.rows.nrows()
    }

    /// Space dimension of the cloud's points.
    pub fn dimension(&self) -> usize {
        self.rows.ncols()
    }

    /// Componentwise arithmetic mean of the cloud's points.
    pub fn mean_vector(&self) -> DVector<f64> {
        linalg::column_means(&self.rows)
    }

    /// Componentwise sample standard deviation (n-1). A single-point cloud
    /// yields the zero vector.
    pub fn std_vector(&self) -> DVector<f64> {
        let n = self.rows.nrows();
        let d = self.rows.ncols();
        if n < 2 {
            return DVector::zeros(d);
        }
        let mean = self.mean_vector();
        let mut acc = DVector::zeros(d);
        for row in self.rows.row_iter() {
            for j in 0..d {
                let diff = row[j] - mean[j];
                acc[j] += diff * diff;
            }
        }
        acc.map(|s: f64| (s / (n as f64 - 1.0)).sqrt())
    }

    /// Unit-length top principal axis of the mean-centered cloud, oriented
    /// so its largest-magnitude component is positive. Clouds with a single
    /// distinct point return a zero axis flagged degenerate.
    pub fn first_pc(&self) -> PrincipalAxis {
        let n = self.rows.nrows();
        let d = self.rows.ncols();
        let (_, centered) = linalg::center_rows(&self.rows);
        let scale = centered.iter().map(|v| v * v).sum::<f64>();
        if scale <= 1e-24 {
            return PrincipalAxis {
                axis: DVector::zeros(d),
                degenerate: true,
            };
        }
        // eigen-solve the smaller gram: n x n when the cloud is thinner
        // than the space, d x d otherwise; both give the same top axis.
        let mut axis = if n < d {
            let gram = &centered * centered.transpose();
            let (vals, vecs) = linalg::sym_eigen_desc(&gram);
            if vals[0] <= 1e-18 * scale {
                return PrincipalAxis {
                    axis: DVector::zeros(d),
                    degenerate: true,
                };
            }
            let u = vecs.column(0).clone_owned();
            centered.transpose() * u
        } else {
            let cov = centered.transpose() * &centered;
            let (vals, vecs) = linalg::sym_eigen_desc(&cov);
            if vals[0] <= 1e-18 * scale {
                return PrincipalAxis {
                    axis: DVector::zeros(d),
                    degenerate: true,
                };
            }
            vecs.column(0).clone_owned()
        };
        let norm = axis.norm();
        if norm <= 0.0 {
            return PrincipalAxis {
                axis: DVector::zeros(d),
                degenerate: true,
            };
        }
        axis /= norm;
        // orient: largest-magnitude component positive, first index on ties
        let mut m = DMatrix::from_column_slice(d, 1, axis.as_slice());
        linalg::fix_column_sign(&mut m, 0);
        PrincipalAxis {
            axis: m.column(0).clone_owned(),
            degenerate: false,
        }
    }

    /// Lloyd 2-means from the deterministic farthest-pair initialization.
    /// Ties for the farthest pair break by lexicographic word order; the
    /// returned centroids are ordered with `c1` lexicographically smaller.
    pub fn two_means(&self) -> TwoMeans {
        let n = self.rows.nrows();
        let d = self.rows.ncols();
        let distinct = self.has_two_distinct_points();
        if n < 2 || !distinct {
            let point = self.rows.row(0).transpose();
            return TwoMeans {
                c1: point.clone(),
                c2: point,
                degenerate: true,
                converged: true,
                iterations: 0,
            };
        }
        // farthest pair by exact O(n^2) scan; rows are word-sorted, so the
        // first maximal pair encountered is the lexicographically smallest.
        let (mut seed_a, mut seed_b, mut best) = (0usize, 1usize, f64::NEG_INFINITY);
        for i in 0..n {
            for j in (i + 1)..n {
                let dist = (self.rows.row(i) - self.rows.row(j)).norm_squared();
                if dist > best {
                    best = dist;
                    seed_a = i;
                    seed_b = j;
                }
            }
        }
        let mut centroids = [
            self.rows.row(seed_a).transpose(),
            self.rows.row(seed_b).transpose(),
        ];
        let mut assignment = self.assign(&centroids);
        let mut converged = false;
        let mut iterations = 0usize;
        let mut prev_wcss = f64::INFINITY;
        while iterations < MAX_LLOYD_ITERATIONS {
            iterations += 1;
            for (cluster, centroid) in centroids.iter_mut().enumerate() {
                let members: Vec<usize> = assignment
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| c == cluster)
                    .map(|(i, _)| i)
                    .collect();
                if members.is_empty() {
                    continue;
                }
                let mut mean = DVector::zeros(d);
                for &i in &members {
                    mean += self.rows.row(i).transpose();
                }
                *centroid = mean / members.len() as f64;
            }
            let next = self.assign(&centroids);
            let wcss = self.wcss(&centroids, &next);
            debug_assert!(
                wcss <= prev_wcss + 1e-9 * prev_wcss.abs().max(1.0),
                "2-means within-cluster sum of squares increased: {prev_wcss} -> {wcss}"
            );
            prev_wcss = wcss;
            if next == assignment {
                converged = true;
                break;
            }
            assignment = next;
        }
        let [a, b] = centroids;
        let (c1, c2) = if lex_le(&a, &b) { (a, b) } else { (b, a) };
        TwoMeans {
            c1,
            c2,
            degenerate: false,
            converged,
            iterations,
        }
    }

    fn has_two_distinct_points(&self) -> bool {
        let first = self.rows.row(0);
        self.rows.row_iter().skip(1).any(|r| r != first)
    }

    /// Nearest-centroid assignment; equidistant points go to cluster 0.
    fn assign(&self, centroids: &[DVector<f64>; 2]) -> Vec<usize> {
        self.rows
            .row_iter()
            .map(|row| {
                let d0 = (row.transpose() - &centroids[0]).norm_squared();
                let d1 = (row.transpose() - &centroids[1]).norm_squared();
                usize::from(d1 < d0)
            })
            .collect()
    }

    fn wcss(&self, centroids: &[DVector<f64>; 2], assignment: &[usize]) -> f64 {
        self.rows
            .row_iter()
            .zip(assignment)
            .map(|(row, &c)| (row.transpose() - &centroids[c]).norm_squared())
            .sum()
    }
}

fn lex_le(a: &DVector<f64>, b: &DVector<f64>) -> bool {
    for (x, y) in a.iter().zip(b.iter()) {
        if x < y {
            return true;
        }
        if x > y {
            return false;
        }
    }
    true
}
