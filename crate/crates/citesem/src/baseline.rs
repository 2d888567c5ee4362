//! Classical bag-of-words representations: TF, IDF and TF-IDF vectors.
//!
//! These serve as a reference baseline and input sanity check next to the
//! Meaning-Space features. IDF uses the natural logarithm; any other base
//! rescales IDF uniformly and leaves normalized comparisons unchanged.

use std::collections::{BTreeMap, HashMap};
use std::io::Write;

use crate::corpus::{Corpus, DocumentRecord};
use crate::error::{Error, Result};

/// Dense word-to-column index with per-word document frequencies.
#[derive(Debug, Clone)]
pub struct VocabularyIndex {
    words: Vec<String>,
    index: HashMap<String, usize>,
    doc_freq: Vec<u32>,
    corpus_size: usize,
}

impl VocabularyIndex {
    /// Build the vocabulary over a corpus. Column indices follow first
    /// occurrence order, which makes the layout deterministic.
    pub fn build(corpus: &Corpus) -> Self {
        let mut words = Vec::new();
        let mut index = HashMap::new();
        let mut doc_freq = Vec::new();
        for doc in corpus.records() {
            let mut seen_in_doc = std::collections::HashSet::new();
            for token in &doc.tokens {
                let idx = *index.entry(token.clone()).or_insert_with(|| {
                    words.push(token.clone());
                    doc_freq.push(0);
                    words.len() - 1
                });
                if seen_in_doc.insert(idx) {
                    doc_freq[idx] += 1;
                }
            }
        }
        VocabularyIndex {
            words,
            index,
            doc_freq,
            corpus_size: corpus.len(),
        }
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn corpus_size(&self) -> usize {
        self.corpus_size
    }

    pub fn index_of(&self, word: &str) -> Option<usize> {
        self.index.get(word).copied()
    }

    pub fn word(&self, index: usize) -> Option<&str> {
        self.words.get(index).map(String::as_str)
    }

    pub fn document_frequency(&self, word: &str) -> Option<u32> {
        self.index_of(word).map(|i| self.doc_freq[i])
    }
}

/// Exact multiset count of `word` in the document's tokens.
pub fn term_frequency(word: &str, doc: &DocumentRecord) -> usize {
    doc.tokens.iter().filter(|t| t.as_str() == word).count()
}

/// IDF(w) = 1 + ln(corpus size / document frequency of w).
pub fn inverse_document_frequency(word: &str, vocab: &VocabularyIndex) -> Result<f64> {
    let df = vocab
        .document_frequency(word)
        .ok_or_else(|| Error::UnknownWord(word.to_string()))?;
    Ok(1.0 + (vocab.corpus_size() as f64 / df as f64).ln())
}

/// Sparse TF-IDF representation of one document.
#[derive(Debug, Clone)]
pub struct TfidfVector {
    /// column index -> weight, non-zero entries only.
    pub weights: BTreeMap<usize, f64>,
    /// True when the vector was scaled to unit Euclidean length. Stays
    /// false for all-zero vectors even when normalization was requested.
    pub normalized: bool,
    /// Tokens skipped because they are outside the vocabulary.
    pub oov_count: usize,
}

impl TfidfVector {
    pub fn norm(&self) -> f64 {
        self.weights.values().map(|w| w * w).sum::<f64>().sqrt()
    }
}

/// TF-IDF vector of a document over a vocabulary built from the same
/// corpus. With `normalize` set, the vector is scaled to unit length; an
/// empty or fully out-of-vocabulary document comes back unnormalized.
pub fn tfidf_vector(doc: &DocumentRecord, vocab: &VocabularyIndex, normalize: bool) -> TfidfVector {
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    let mut oov_count = 0usize;
    for token in &doc.tokens {
        match vocab.index_of(token) {
            Some(idx) => *counts.entry(idx).or_insert(0) += 1,
            None => oov_count += 1,
        }
    }
    let n = vocab.corpus_size() as f64;
    let mut weights: BTreeMap<usize, f64> = counts
        .into_iter()
        .map(|(idx, tf)| {
            let idf = 1.0 + (n / vocab.doc_freq[idx] as f64).ln();
            (idx, tf as f64 * idf)
        })
        .collect();
    let norm: f64 = weights.values().map(|w| w * w).sum::<f64>().sqrt();
    let mut normalized = false;
    if normalize && norm > 0.0 {
        for w in weights.values_mut() {
            *w /= norm;
        }
        normalized = true;
    }
    TfidfVector {
        weights,
        normalized,
        oov_count,
    }
}

/// Write documents as CSV rows: `doc_id,` then space-separated
/// `index:weight` pairs.
pub fn export_tfidf_csv<W: Write>(
    out: &mut W,
    rows: &[(String, TfidfVector)],
) -> std::io::Result<()> {
    writeln!(out, "doc_id,weights")?;
    for (id, vec) in rows {
        let pairs: Vec<String> = vec
            .weights
            .iter()
            .map(|(i, w)| format!("{i}:{w}"))
            .collect();
        writeln!(out, "{},{}", id, pairs.join(" "))?;
    }
    Ok(())
}
