//! Corpus ingestion, per-category citation statistics and class labeling.
//!
//! A corpus is a sequence of documents, each carrying preprocessed tokens, a
//! citation count and a set of category memberships. Two labeling schemes
//! turn a category's documents into a binary classification dataset:
//!
//! * H/L — highly-cited vs little-cited, split strictly above the mean
//!   citation count of the category;
//! * EH/EL — extremely highly/little cited, keeping only documents at or
//!   above the third quartile (EH) or at or below the first quartile (EL).
//!
//! Quartiles use linear interpolation between order statistics: the p-th
//! quantile sits at rank p(n-1)+1 of the sorted data (1-based). Standard
//! deviation uses the sample convention (n-1) so that SE = sigma / sqrt(n).

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One document: the unit of featurization and classification.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DocumentRecord {
    pub id: String,
    pub tokens: Vec<String>,
    pub citations: u64,
    pub categories: BTreeSet<String>,
}

impl DocumentRecord {
    pub fn has_tokens(&self) -> bool {
        !self.tokens.is_empty()
    }
}

/// An immutable, id-indexed collection of documents.
#[derive(Debug, Clone)]
pub struct Corpus {
    records: Vec<DocumentRecord>,
    by_id: HashMap<String, usize>,
}

impl Corpus {
    /// Build a corpus from records, rejecting duplicate ids.
    pub fn from_records(records: Vec<DocumentRecord>) -> Result<Self> {
        let mut by_id = HashMap::with_capacity(records.len());
        for (i, rec) in records.iter().enumerate() {
            if let Some(&first) = by_id.get(&rec.id) {
                return Err(Error::DuplicateDocId {
                    doc_id: rec.id.clone(),
                    first_line: first + 1,
                    second_line: i + 1,
                });
            }
            by_id.insert(rec.id.clone(), i);
        }
        Ok(Corpus { records, by_id })
    }

    /// Load a corpus from a JSON-lines file. Each line is an object with
    /// fields `id`, `tokens`, `citations` (non-negative) and `categories`.
    /// Empty-token documents are retained; see [`Corpus::empty_token_count`].
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let file = File::open(path).map_err(|e| Error::io(path, e))?;
        let reader = BufReader::new(file);
        let path_str = path.display().to_string();
        let mut records = Vec::new();
        let mut first_line_of: HashMap<String, usize> = HashMap::new();
        for (i, line) in reader.lines().enumerate() {
            let line = line.map_err(|e| Error::io(path, e))?;
            if line.trim().is_empty() {
                continue;
            }
            let rec: DocumentRecord = serde_json::from_str(&line)
                .map_err(|e| Error::parse(&path_str, i + 1, e.to_string()))?;
            if let Some(&first) = first_line_of.get(&rec.id) {
                return Err(Error::DuplicateDocId {
                    doc_id: rec.id,
                    first_line: first,
                    second_line: i + 1,
                });
            }
            first_line_of.insert(rec.id.clone(), i + 1);
            records.push(rec);
        }
        let mut by_id = HashMap::with_capacity(records.len());
        for (i, rec) in records.iter().enumerate() {
            by_id.insert(rec.id.clone(), i);
        }
        Ok(Corpus { records, by_id })
    }

    pub fn records(&self) -> &[DocumentRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn get(&self, id: &str) -> Option<&DocumentRecord> {
        self.by_id.get(id).map(|&i| &self.records[i])
    }

    /// Number of retained documents whose token list is empty. These keep
    /// their labels but are dropped at featurization time.
    pub fn empty_token_count(&self) -> usize {
        self.records.iter().filter(|r| !r.has_tokens()).count()
    }

    /// All category names present, sorted.
    pub fn categories(&self) -> BTreeSet<&str> {
        self.records
            .iter()
            .flat_map(|r| r.categories.iter().map(String::as_str))
            .collect()
    }

    /// Documents carrying the given category, in corpus order.
    pub fn in_category<'a>(
        &'a self,
        category: &'a str,
    ) -> impl Iterator<Item = &'a DocumentRecord> + 'a {
        self.records
            .iter()
            .filter(move |r| r.categories.contains(category))
    }
}

/// Location and dispersion statistics of a citation-count sample.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CategoryStats {
    pub n: usize,
    pub max: u64,
    pub min: u64,
    pub mean: f64,
    pub q1: f64,
    pub q2: f64,
    pub q3: f64,
    pub sigma: f64,
    pub se: f64,
}

/// Linear-interpolation quantile of sorted data: value at rank p(n-1)+1.
fn quantile_sorted(sorted: &[u64], p: f64) -> f64 {
    debug_assert!(!sorted.is_empty());
    let n = sorted.len();
    if n == 1 {
        return sorted[0] as f64;
    }
    let pos = p * (n - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    let frac = pos - lo as f64;
    sorted[lo] as f64 + frac * (sorted[hi] as f64 - sorted[lo] as f64)
}

/// Compute the nine summary statistics of a non-empty citation sample.
/// A single-element sample has sigma = se = 0 by convention.
pub fn descriptive_stats(citations: &[u64]) -> Result<CategoryStats> {
    if citations.is_empty() {
        return Err(Error::domain("descriptive_stats: empty citation sequence"));
    }
    let n = citations.len();
    let mut sorted = citations.to_vec();
    sorted.sort_unstable();
    let sum: f64 = citations.iter().map(|&c| c as f64).sum();
    let mean = sum / n as f64;
    let sigma = if n < 2 {
        0.0
    } else {
        let ss: f64 = citations
            .iter()
            .map(|&c| {
                let d = c as f64 - mean;
                d * d
            })
            .sum();
        (ss / (n as f64 - 1.0)).sqrt()
    };
    Ok(CategoryStats {
        n,
        max: sorted[n - 1],
        min: sorted[0],
        mean,
        q1: quantile_sorted(&sorted, 0.25),
        q2: quantile_sorted(&sorted, 0.5),
        q3: quantile_sorted(&sorted, 0.75),
        sigma,
        se: sigma / (n as f64).sqrt(),
    })
}

/// Labeling scheme for turning citation counts into binary classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scheme {
    /// Highly/little cited, split strictly above the category mean.
    Hl,
    /// Extreme quartile classes; middle documents are excluded.
    Ehel,
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scheme::Hl => write!(f, "hl"),
            Scheme::Ehel => write!(f, "ehel"),
        }
    }
}

impl std::str::FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "hl" => Ok(Scheme::Hl),
            "ehel" => Ok(Scheme::Ehel),
            other => Err(Error::Config(format!("unknown scheme `{other}`"))),
        }
    }
}

/// Binary class label. `Positive` is the highly-cited side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Label {
    Positive,
    Negative,
}

/// Thresholds a labeled dataset was computed with.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Thresholds {
    Mean(f64),
    Quartiles { q1: f64, q3: f64 },
}

/// A category's documents with their binary labels under one scheme.
#[derive(Debug, Clone)]
pub struct LabeledDataset {
    pub scheme: Scheme,
    pub category: String,
    /// (document id, label) pairs in corpus order.
    pub items: Vec<(String, Label)>,
    pub thresholds: Thresholds,
}

impl LabeledDataset {
    pub fn positives(&self) -> usize {
        self.items
            .iter()
            .filter(|(_, l)| *l == Label::Positive)
            .count()
    }

    pub fn negatives(&self) -> usize {
        self.items.len() - self.positives()
    }
}

fn category_citations(corpus: &Corpus, category: &str) -> Result<Vec<(String, u64)>> {
    let docs: Vec<(String, u64)> = corpus
        .in_category(category)
        .map(|r| (r.id.clone(), r.citations))
        .collect();
    if docs.is_empty() {
        return Err(Error::UnknownCategory(category.to_string()));
    }
    if docs.len() < 2 {
        return Err(Error::domain(format!(
            "category `{category}` has fewer than 2 documents"
        )));
    }
    Ok(docs)
}

/// Label every document of a category: positive (H) iff its citation count
/// is strictly greater than the category mean.
pub fn label_hl(corpus: &Corpus, category: &str) -> Result<LabeledDataset> {
    let docs = category_citations(corpus, category)?;
    let mean = docs.iter().map(|(_, c)| *c as f64).sum::<f64>() / docs.len() as f64;
    let items = docs
        .into_iter()
        .map(|(id, c)| {
            let label = if (c as f64) > mean {
                Label::Positive
            } else {
                Label::Negative
            };
            (id, label)
        })
        .collect();
    Ok(LabeledDataset {
        scheme: Scheme::Hl,
        category: category.to_string(),
        items,
        thresholds: Thresholds::Mean(mean),
    })
}

/// Keep only the extreme quartiles of a category: negative (EL) iff
/// citations <= q1, positive (EH) iff citations >= q3. Documents strictly
/// between the quartiles are excluded from the dataset.
pub fn label_ehel(corpus: &Corpus, category: &str) -> Result<LabeledDataset> {
    let docs = category_citations(corpus, category)?;
    let citations: Vec<u64> = docs.iter().map(|(_, c)| *c).collect();
    let stats = descriptive_stats(&citations)?;
    if stats.q1 == stats.q3 {
        return Err(Error::DegenerateDistribution(category.to_string()));
    }
    let items = docs
        .into_iter()
        .filter_map(|(id, c)| {
            let c = c as f64;
            if c <= stats.q1 {
                Some((id, Label::Negative))
            } else if c >= stats.q3 {
                Some((id, Label::Positive))
            } else {
                None
            }
        })
        .collect();
    Ok(LabeledDataset {
        scheme: Scheme::Ehel,
        category: category.to_string(),
        items,
        thresholds: Thresholds::Quartiles {
            q1: stats.q1,
            q3: stats.q3,
        },
    })
}

/// Label a category under the requested scheme.
pub fn label(corpus: &Corpus, category: &str, scheme: Scheme) -> Result<LabeledDataset> {
    match scheme {
        Scheme::Hl => label_hl(corpus, category),
        Scheme::Ehel => label_ehel(corpus, category),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn doc(id: &str, citations: u64, cats: &[&str]) -> DocumentRecord {
        DocumentRecord {
            id: id.to_string(),
            tokens: vec!["w".to_string()],
            citations,
            categories: cats.iter().map(|s| s.to_string()).collect(),
        }
    }

    #[test]
    fn load_three_lines() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        writeln!(
            f,
            r#"{{"id":"a","tokens":["x","y"],"citations":3,"categories":["math"]}}"#
        )
        .unwrap();
        writeln!(
            f,
            r#"{{"id":"b","tokens":[],"citations":0,"categories":["math"]}}"#
        )
        .unwrap();
        writeln!(
            f,
            r#"{{"id":"c","tokens":["z"],"citations":7,"categories":["bio","math"]}}"#
        )
        .unwrap();
        let corpus = Corpus::load(f.path()).unwrap();
        assert_eq!(corpus.len(), 3);
        assert_eq!(corpus.empty_token_count(), 1);
        assert_eq!(corpus.get("c").unwrap().citations, 7);
        assert_eq!(corpus.in_category("math").count(), 3);
    }

    #[test]
    fn load_empty_file() {
        let f = tempfile::NamedTempFile::new().unwrap();
        let corpus = Corpus::load(f.path()).unwrap();
        assert!(corpus.is_empty());
        assert_eq!(corpus.empty_token_count(), 0);
    }

    #[test]
    fn negative_citations_rejected_with_line() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        writeln!(
            f,
            r#"{{"id":"a","tokens":["x"],"citations":1,"categories":[]}}"#
        )
        .unwrap();
        writeln!(
            f,
            r#"{{"id":"b","tokens":["x"],"citations":-1,"categories":[]}}"#
        )
        .unwrap();
        match Corpus::load(f.path()) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn duplicate_ids_rejected_with_both_lines() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        writeln!(
            f,
            r#"{{"id":"a","tokens":["x"],"citations":1,"categories":[]}}"#
        )
        .unwrap();
        writeln!(
            f,
            r#"{{"id":"a","tokens":["y"],"citations":2,"categories":[]}}"#
        )
        .unwrap();
        match Corpus::load(f.path()) {
            Err(Error::DuplicateDocId {
                first_line,
                second_line,
                ..
            }) => {
                assert_eq!(first_line, 1);
                assert_eq!(second_line, 2);
            }
            other => panic!("expected duplicate error, got {other:?}"),
        }
    }

    #[test]
    fn stats_symmetric_data() {
        let s = descriptive_stats(&[1, 2, 3, 4, 5]).unwrap();
        assert_eq!(s.mean, 3.0);
        assert_eq!(s.q2, 3.0);
        assert_eq!(s.min, 1);
        assert_eq!(s.max, 5);
    }

    #[test]
    fn stats_constant_data() {
        let s = descriptive_stats(&[5, 5, 5, 5]).unwrap();
        assert_eq!(s.sigma, 0.0);
        assert_eq!(s.se, 0.0);
        assert_eq!(s.q1, 5.0);
        assert_eq!(s.q2, 5.0);
        assert_eq!(s.q3, 5.0);
    }

    #[test]
    fn stats_empty_is_domain_error() {
        assert!(descriptive_stats(&[]).is_err());
    }

    #[test]
    fn hl_direct_rule() {
        let corpus = Corpus::from_records(vec![
            doc("a", 0, &["m"]),
            doc("b", 0, &["m"]),
            doc("c", 12, &["m"]),
        ])
        .unwrap();
        let ds = label_hl(&corpus, "m").unwrap();
        assert_eq!(ds.items[0].1, Label::Negative);
        assert_eq!(ds.items[1].1, Label::Negative);
        assert_eq!(ds.items[2].1, Label::Positive);
        assert_eq!(ds.thresholds, Thresholds::Mean(4.0));
    }

    #[test]
    fn hl_boundary_is_strict() {
        let corpus = Corpus::from_records(vec![doc("a", 3, &["m"]), doc("b", 3, &["m"])]).unwrap();
        let ds = label_hl(&corpus, "m").unwrap();
        assert!(ds.items.iter().all(|(_, l)| *l == Label::Negative));
    }

    #[test]
    fn ehel_extreme_quartiles() {
        let corpus = Corpus::from_records(
            (0..8u64)
                .map(|c| doc(&format!("d{c}"), c, &["m"]))
                .collect(),
        )
        .unwrap();
        let ds = label_ehel(&corpus, "m").unwrap();
        // interpolated quartiles of 0..7 are q1 = 1.75, q3 = 5.25
        assert_eq!(ds.thresholds, Thresholds::Quartiles { q1: 1.75, q3: 5.25 });
        let el: Vec<&str> = ds
            .items
            .iter()
            .filter(|(_, l)| *l == Label::Negative)
            .map(|(id, _)| id.as_str())
            .collect();
        let eh: Vec<&str> = ds
            .items
            .iter()
            .filter(|(_, l)| *l == Label::Positive)
            .map(|(id, _)| id.as_str())
            .collect();
        assert_eq!(el, vec!["d0", "d1"]);
        assert_eq!(eh, vec!["d6", "d7"]);
    }

    #[test]
    fn ehel_degenerate_distribution() {
        let corpus = Corpus::from_records(vec![
            doc("a", 2, &["m"]),
            doc("b", 2, &["m"]),
            doc("c", 2, &["m"]),
        ])
        .unwrap();
        match label_ehel(&corpus, "m") {
            Err(Error::DegenerateDistribution(cat)) => assert_eq!(cat, "m"),
            other => panic!("expected degenerate error, got {other:?}"),
        }
    }

    #[test]
    fn unknown_category_errors() {
        let corpus = Corpus::from_records(vec![doc("a", 1, &["m"])]).unwrap();
        assert!(matches!(
            label_hl(&corpus, "nope"),
            Err(Error::UnknownCategory(_))
        ));
    }
}
