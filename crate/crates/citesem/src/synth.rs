//! Seeded synthetic corpora and datasets for examples and tests.
//!
//! `ladder_corpus` plants class-dependent word semantics at a controlled
//! separation level: a vocabulary split into two topic pools along one
//! Meaning-Space axis, and documents whose pool mixture follows their
//! citation standing. The mixture strength is calibrated from the drawn
//! citations so that the highly/little-cited document clouds separate by
//! the requested number of within-class standard deviations in feature
//! space. Because the mixture is graded by citation percentile, the
//! extreme-quartile classes separate more than the mean-split classes,
//! and a zero level leaves no signal at all.

use std::collections::BTreeSet;
use std::path::Path;

use nalgebra::DMatrix;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution, Exp, StandardNormal};

use crate::corpus::{Corpus, DocumentRecord, Label};
use crate::error::{Error, Result};
use crate::meaning::WordVectorTable;

/// Offset of the topic pools along the planted axis.
const POOL_SHIFT: f64 = 0.15;
/// Per-component word-vector noise.
const WORD_NOISE: f64 = 0.05;
/// Weight of the citation-percentile-graded part of a document's topic
/// charge; the rest follows its mean-split side outright.
const GRADED_WEIGHT: f64 = 0.7;

/// Knobs for the planted-semantics corpus generator.
#[derive(Debug, Clone)]
pub struct LadderParams {
    pub n_docs: usize,
    pub words_per_doc: usize,
    /// Total vocabulary; half per topic pool.
    pub vocab_size: usize,
    /// Meaning-Space dimension (number of categories).
    pub dimension: usize,
    /// Class separation of the mean-split classes, in within-class
    /// standard deviations of the document cloud means. Zero plants no
    /// signal.
    pub separation: f64,
    /// Mean of the long-tailed citation distribution.
    pub citation_scale: f64,
    pub category: String,
    pub seed: u64,
}

impl Default for LadderParams {
    fn default() -> Self {
        LadderParams {
            n_docs: 1500,
            words_per_doc: 40,
            vocab_size: 400,
            dimension: 8,
            separation: 1.0,
            citation_scale: 8.0,
            category: "synthetic".to_string(),
            seed: 0,
        }
    }
}

/// A generated corpus with the word-vector table it was built over.
#[derive(Debug, Clone)]
pub struct SyntheticCorpus {
    pub corpus: Corpus,
    pub table: WordVectorTable,
    pub category: String,
}

impl SyntheticCorpus {
    /// Write the corpus as JSON lines in the loader's format.
    pub fn write_corpus(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let mut out = String::new();
        for record in self.corpus.records() {
            out.push_str(&serde_json::to_string(record).expect("record serializes"));
            out.push('\n');
        }
        std::fs::write(path, out).map_err(|e| Error::io(path, e))
    }
}

/// Midrank percentile of each value mapped to (-1, 1).
fn graded_charges(citations: &[u64]) -> Vec<f64> {
    let n = citations.len() as f64;
    let mut sorted = citations.to_vec();
    sorted.sort_unstable();
    citations
        .iter()
        .map(|&c| {
            let below = sorted.partition_point(|&v| v < c) as f64;
            let upto = sorted.partition_point(|&v| v <= c) as f64;
            let midrank = (below + (upto - below + 1.0) / 2.0) / n;
            2.0 * midrank - 1.0
        })
        .collect()
}

/// Generate a corpus with planted semantics at the requested separation.
///
/// Panics when the separation is too large to calibrate against the
/// within-class charge spread of the drawn citations; levels up to about
/// 4 are comfortably feasible with the default parameters.
pub fn ladder_corpus(params: &LadderParams) -> SyntheticCorpus {
    assert!(params.dimension >= 2, "need at least 2 dimensions");
    assert!(
        params.vocab_size >= 2 * params.words_per_doc,
        "vocabulary too small"
    );
    assert!(params.n_docs >= 4, "need at least 4 documents");
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let m = params.dimension;
    let pool = params.vocab_size / 2;

    // vocabulary: two pools shifted oppositely along axis 0
    let mut rows = Vec::with_capacity(pool * 2);
    for w in 0..pool * 2 {
        let charge = if w < pool { 1.0 } else { -1.0 };
        let vector: Vec<f64> = (0..m)
            .map(|j| {
                let noise: f64 = StandardNormal.sample(&mut rng);
                let base = 0.5 + noise * WORD_NOISE;
                let v = if j == 0 {
                    base + charge * POOL_SHIFT
                } else {
                    base
                };
                v.clamp(0.0, 1.0)
            })
            .collect();
        rows.push((format!("w{w:05}"), vector));
    }
    let categories: Vec<String> = (1..=m).map(|i| format!("cat{i:02}")).collect();
    let table = WordVectorTable::from_rows(categories, rows).expect("valid synthetic table");

    // long-tailed citations
    let exp = Exp::new(1.0 / params.citation_scale).expect("positive scale");
    let citations: Vec<u64> = (0..params.n_docs)
        .map(|_| exp.sample(&mut rng).floor() as u64)
        .collect();

    // topic charge per document: mean-split side blended with percentile
    let mean = citations.iter().map(|&c| c as f64).sum::<f64>() / citations.len() as f64;
    let graded = graded_charges(&citations);
    let charges: Vec<f64> = citations
        .iter()
        .zip(&graded)
        .map(|(&c, &t)| {
            let side = if (c as f64) > mean { 1.0 } else { -1.0 };
            (1.0 - GRADED_WEIGHT) * side + GRADED_WEIGHT * t
        })
        .collect();

    // calibrate the mixture strength kappa so the mean-split classes
    // separate by `separation` within-class standard deviations
    let kappa = if params.separation == 0.0 {
        0.0
    } else {
        let highs: Vec<f64> = citations
            .iter()
            .zip(&charges)
            .filter(|(&c, _)| (c as f64) > mean)
            .map(|(_, &g)| g)
            .collect();
        let lows: Vec<f64> = citations
            .iter()
            .zip(&charges)
            .filter(|(&c, _)| (c as f64) <= mean)
            .map(|(_, &g)| g)
            .collect();
        assert!(
            highs.len() >= 2 && lows.len() >= 2,
            "degenerate citation draw; adjust seed or size"
        );
        let mean_of = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
        let delta = mean_of(&highs) - mean_of(&lows);
        let pooled_var = {
            let mh = mean_of(&highs);
            let ml = mean_of(&lows);
            let ss: f64 = highs.iter().map(|g| (g - mh).powi(2)).sum::<f64>()
                + lows.iter().map(|g| (g - ml).powi(2)).sum::<f64>();
            ss / (highs.len() + lows.len()) as f64
        };
        let level = params.separation;
        let base_var =
            (POOL_SHIFT * POOL_SHIFT + WORD_NOISE * WORD_NOISE) / params.words_per_doc as f64;
        let denom = POOL_SHIFT * POOL_SHIFT * (delta * delta - level * level * pooled_var);
        assert!(
            denom > 0.0,
            "separation level {level} infeasible for this citation draw"
        );
        let kappa = (level * level * base_var / denom).sqrt();
        assert!(kappa <= 1.0, "separation level {level} needs kappa > 1");
        kappa
    };

    // documents: binomial pool mixture driven by the charge
    let w = params.words_per_doc as u64;
    let mut records = Vec::with_capacity(params.n_docs);
    for (i, (&citation, &g)) in citations.iter().zip(&charges).enumerate() {
        let q = (1.0 + kappa * g) / 2.0;
        let k = Binomial::new(w, q)
            .expect("valid probability")
            .sample(&mut rng) as usize;
        let mut tokens = Vec::with_capacity(params.words_per_doc);
        for idx in rand::seq::index::sample(&mut rng, pool, k) {
            tokens.push(format!("w{:05}", idx));
        }
        for idx in rand::seq::index::sample(&mut rng, pool, params.words_per_doc - k) {
            tokens.push(format!("w{:05}", pool + idx));
        }
        records.push(DocumentRecord {
            id: format!("doc{i:05}"),
            tokens,
            citations: citation,
            categories: BTreeSet::from([params.category.clone()]),
        });
    }
    SyntheticCorpus {
        corpus: Corpus::from_records(records).expect("unique synthetic ids"),
        table,
        category: params.category.clone(),
    }
}

/// Two-class data whose class signal sits on a low-variance axis while a
/// signal-free axis dominates the total variance.
pub fn anisotropic_data(n_per_class: usize, dims: usize, seed: u64) -> (DMatrix<f64>, Vec<Label>) {
    assert!(dims >= 2);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = 2 * n_per_class;
    let mut data = Vec::with_capacity(n * dims);
    let mut labels = Vec::with_capacity(n);
    for i in 0..n {
        let positive = i < n_per_class;
        for j in 0..dims {
            let noise: f64 = StandardNormal.sample(&mut rng);
            let v = match j {
                0 => noise * 6.0,
                1 => noise + if positive { 1.5 } else { -1.5 },
                _ => noise,
            };
            data.push(v);
        }
        labels.push(if positive {
            Label::Positive
        } else {
            Label::Negative
        });
    }
    (DMatrix::from_row_slice(n, dims, &data), labels)
}

/// Feature matrix of pure noise with arbitrary (uninformative) labels.
pub fn noise_features(n_per_class: usize, dims: usize, seed: u64) -> (DMatrix<f64>, Vec<Label>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = 2 * n_per_class;
    let data: Vec<f64> = (0..n * dims)
        .map(|_| StandardNormal.sample(&mut rng))
        .collect();
    let labels: Vec<Label> = (0..n)
        .map(|i| {
            if i < n_per_class {
                Label::Positive
            } else {
                Label::Negative
            }
        })
        .collect();
    (DMatrix::from_row_slice(n, dims, &data), labels)
}

/// Two Gaussian blobs with the given mean gap along the first axis.
pub fn gaussian_blobs(
    n_per_class: usize,
    dims: usize,
    gap: f64,
    seed: u64,
) -> (DMatrix<f64>, Vec<Label>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = 2 * n_per_class;
    let mut data = Vec::with_capacity(n * dims);
    let mut labels = Vec::with_capacity(n);
    for i in 0..n {
        let positive = i < n_per_class;
        let shift = if positive { gap / 2.0 } else { -gap / 2.0 };
        for j in 0..dims {
            let noise: f64 = StandardNormal.sample(&mut rng);
            data.push(if j == 0 { noise + shift } else { noise });
        }
        labels.push(if positive {
            Label::Positive
        } else {
            Label::Negative
        });
    }
    (DMatrix::from_row_slice(n, dims, &data), labels)
}

/// A memorization-prone dataset: duplicate point pairs carrying flipped
/// labels (pure bait) mixed with weakly separated genuine classes.
pub fn memorization_bait(
    n_pairs: usize,
    n_signal_per_class: usize,
    dims: usize,
    signal_shift: f64,
    seed: u64,
) -> (DMatrix<f64>, Vec<Label>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = 2 * n_pairs + 2 * n_signal_per_class;
    let mut data = Vec::with_capacity(n * dims);
    let mut labels = Vec::with_capacity(n);
    for _ in 0..n_pairs {
        let point: Vec<f64> = (0..dims).map(|_| StandardNormal.sample(&mut rng)).collect();
        data.extend_from_slice(&point);
        labels.push(Label::Positive);
        data.extend_from_slice(&point);
        labels.push(Label::Negative);
    }
    for i in 0..2 * n_signal_per_class {
        let positive = i % 2 == 0;
        let shift = if positive {
            signal_shift
        } else {
            -signal_shift
        };
        for j in 0..dims {
            let noise: f64 = StandardNormal.sample(&mut rng);
            data.push(if j == 0 { noise + shift } else { noise });
        }
        labels.push(if positive {
            Label::Positive
        } else {
            Label::Negative
        });
    }
    (DMatrix::from_row_slice(n, dims, &data), labels)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ladder_is_deterministic() {
        let params = LadderParams {
            n_docs: 40,
            seed: 3,
            ..LadderParams::default()
        };
        let a = ladder_corpus(&params);
        let b = ladder_corpus(&params);
        assert_eq!(a.table.checksum(), b.table.checksum());
        for (ra, rb) in a.corpus.records().iter().zip(b.corpus.records()) {
            assert_eq!(ra.id, rb.id);
            assert_eq!(ra.tokens, rb.tokens);
            assert_eq!(ra.citations, rb.citations);
        }
    }

    #[test]
    fn ladder_vectors_stay_in_range() {
        let params = LadderParams {
            n_docs: 10,
            seed: 1,
            ..LadderParams::default()
        };
        let s = ladder_corpus(&params);
        assert_eq!(s.table.range_violations(), 0);
        assert_eq!(s.corpus.len(), 10);
        assert!(s.corpus.records().iter().all(|r| r.tokens.len() == 40));
    }

    #[test]
    fn zero_separation_plants_balanced_mixture() {
        let params = LadderParams {
            n_docs: 200,
            separation: 0.0,
            seed: 9,
            ..LadderParams::default()
        };
        let s = ladder_corpus(&params);
        // with kappa = 0 every document draws from both pools around 50/50
        let pool = 200usize;
        let mut positive_fraction = 0.0;
        for r in s.corpus.records() {
            let pos = r
                .tokens
                .iter()
                .filter(|t| t[1..].parse::<usize>().unwrap() < pool)
                .count();
            positive_fraction += pos as f64 / r.tokens.len() as f64;
        }
        positive_fraction /= s.corpus.len() as f64;
        assert!((positive_fraction - 0.5).abs() < 0.05);
    }
}
