//! The experiment grid: {space} x {FVT variant} x {labeling scheme} x
//! {LDA, weighted kNN over the k grid} for each category, reported as CSV.
//!
//! Cells are independent jobs executed on a worker pool; results flow
//! through a single collector and are written sorted by grid key, so two
//! runs over the same inputs produce byte-identical files. Per-cell
//! failures become rows with an error tag and the grid continues.

use std::collections::HashMap;
use std::fmt;
use std::fs;
use std::path::PathBuf;

use nalgebra::DMatrix;
use rayon::prelude::*;

use crate::classify::{lda_fit, loocv_lda, split_classes, KnnConfig, KnnLooEvaluator, LdaModel};
use crate::cloud::build_cloud;
use crate::config::{ExperimentConfig, Space};
use crate::corpus::{
    descriptive_stats, label, CategoryStats, Corpus, Label, LabeledDataset, Scheme,
};
use crate::error::{Error, Result};
use crate::evaluate::{confusion, export_roc_csv, roc_and_auc, EvaluationReport};
use crate::fvt::{CloudSummary, FvtVariant};
use crate::meaning::{reduce_words, WordVectorTable};
use crate::reduction::{supervised_selection, Selection};

/// Classifier identity of a report row.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classifier {
    Lda,
    Knn,
    LdaLoocv,
}

impl fmt::Display for Classifier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classifier::Lda => write!(f, "lda"),
            Classifier::Knn => write!(f, "knn"),
            Classifier::LdaLoocv => write!(f, "lda_loocv"),
        }
    }
}

/// One grid cell outcome, mirroring a row of the result tables.
#[derive(Debug, Clone)]
pub struct ReportRow {
    pub category: String,
    pub scheme: Scheme,
    pub space: Space,
    pub variant: FvtVariant,
    pub classifier: Classifier,
    pub k: Option<usize>,
    pub sensitivity_pct: Option<f64>,
    pub specificity_pct: Option<f64>,
    pub sum_pct: Option<f64>,
    pub auc: Option<f64>,
    /// Best sum within its (category, scheme, classifier) table.
    pub best: bool,
    pub error: Option<String>,
}

impl ReportRow {
    fn sort_key(&self) -> (String, u8, u8, u8, u8, usize) {
        (
            self.category.clone(),
            match self.scheme {
                Scheme::Hl => 0,
                Scheme::Ehel => 1,
            },
            match self.space {
                Space::Original => 0,
                Space::Reduced => 1,
                Space::Supervised => 2,
            },
            FvtVariant::ALL
                .iter()
                .position(|v| *v == self.variant)
                .unwrap() as u8,
            match self.classifier {
                Classifier::Lda => 0,
                Classifier::Knn => 1,
                Classifier::LdaLoocv => 2,
            },
            self.k.unwrap_or(0),
        )
    }

    fn ok(
        key: &CellKey,
        classifier: Classifier,
        k: Option<usize>,
        report: &EvaluationReport,
    ) -> ReportRow {
        let sens = report.sensitivity * 100.0;
        let spec = report.specificity * 100.0;
        ReportRow {
            category: key.category.clone(),
            scheme: key.scheme,
            space: key.space,
            variant: key.variant,
            classifier,
            k,
            sensitivity_pct: Some(sens),
            specificity_pct: Some(spec),
            sum_pct: Some(sens + spec),
            auc: report.auc(),
            best: false,
            error: None,
        }
    }

    fn failed(key: &CellKey, classifier: Classifier, k: Option<usize>, error: &Error) -> ReportRow {
        ReportRow {
            category: key.category.clone(),
            scheme: key.scheme,
            space: key.space,
            variant: key.variant,
            classifier,
            k,
            sensitivity_pct: None,
            specificity_pct: None,
            sum_pct: None,
            auc: None,
            best: false,
            error: Some(sanitize(&error.to_string())),
        }
    }
}

fn sanitize(message: &str) -> String {
    message
        .chars()
        .map(|c| {
            if c == ',' || c == '\n' || c == '\r' {
                ';'
            } else {
                c
            }
        })
        .collect()
}

fn file_tag(s: &str) -> String {
    s.chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || c == '-' || c == '_' {
                c
            } else {
                '-'
            }
        })
        .collect()
}

#[derive(Debug, Clone)]
struct CellKey {
    category: String,
    scheme: Scheme,
    space: Space,
    variant: FvtVariant,
}

impl CellKey {
    fn tag(&self) -> String {
        format!(
            "{}_{}_{}_{}",
            file_tag(&self.category),
            self.scheme,
            self.space,
            self.variant
        )
    }
}

/// Everything a grid run produced, including the files written.
#[derive(Debug)]
pub struct GridOutcome {
    pub rows: Vec<ReportRow>,
    pub loocv_rows: Vec<ReportRow>,
    /// Number of rows carrying an error tag.
    pub failures: usize,
    pub files: Vec<PathBuf>,
}

/// Per-category cloud summaries in one word space; `None` marks documents
/// excluded at featurization (empty or fully out-of-table).
type SummaryMap = HashMap<String, Option<CloudSummary>>;

fn summarize_category(corpus: &Corpus, table: &WordVectorTable, category: &str) -> SummaryMap {
    let docs: Vec<_> = corpus.in_category(category).collect();
    docs.par_iter()
        .map(|doc| {
            let summary = build_cloud(doc, table).ok().map(|c| CloudSummary::of(&c));
            (doc.id.clone(), summary)
        })
        .collect()
}

/// Feature matrix for the labeled items that survived featurization.
fn cell_features(
    labeled: &LabeledDataset,
    summaries: &SummaryMap,
    variant: FvtVariant,
) -> Result<(DMatrix<f64>, Vec<Label>, usize)> {
    let mut rows = Vec::new();
    let mut labels = Vec::new();
    let mut excluded = 0usize;
    for (doc_id, lab) in &labeled.items {
        match summaries.get(doc_id).and_then(|s| s.as_ref()) {
            Some(summary) => {
                rows.push(summary.assemble(variant).values);
                labels.push(*lab);
            }
            None => excluded += 1,
        }
    }
    if rows.is_empty() {
        return Err(Error::domain("no featurizable documents in this cell"));
    }
    let d = rows[0].len();
    let mut x = DMatrix::zeros(rows.len(), d);
    for (i, row) in rows.iter().enumerate() {
        x.set_row(i, &row.transpose());
    }
    if !labels.contains(&Label::Positive) || !labels.contains(&Label::Negative) {
        return Err(Error::domain(
            "featurization left only one class in this cell",
        ));
    }
    Ok((x, labels, excluded))
}

struct CellOutput {
    rows: Vec<ReportRow>,
    /// (file name, contents) artifacts produced by this cell.
    artifacts: Vec<(String, String)>,
}

fn lda_selection_hook(ridge: f64) -> impl Fn(&DMatrix<f64>, &[Label]) -> Result<(f64, f64)> {
    move |x, labels| {
        let (pos, neg) = split_classes(x, labels);
        let model = lda_fit(&pos, &neg, ridge)?;
        Ok((model.training_sensitivity, model.training_specificity))
    }
}

/// Whole-set LDA evaluation of a feature matrix: fit, threshold, score.
fn evaluate_lda(
    x: &DMatrix<f64>,
    labels: &[Label],
    ridge: f64,
) -> Result<(LdaModel, EvaluationReport)> {
    let (pos, neg) = split_classes(x, labels);
    let model = lda_fit(&pos, &neg, ridge)?;
    let scores: Vec<f64> = (x * &model.omega).iter().copied().collect();
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
    let cm = confusion(&predictions, labels)?;
    let report = EvaluationReport::from_confusion(cm)?.with_roc(roc_and_auc(&scores, labels)?);
    Ok((model, report))
}

/// The supervised-space projection for a cell: features built in the
/// original space, reduced by supervised PCA at the LDA-selected
/// dimension.
fn supervised_projection(
    x: &DMatrix<f64>,
    labels: &[Label],
    alpha: f64,
    ridge: f64,
) -> Result<(DMatrix<f64>, Selection)> {
    let selection = supervised_selection(x, labels, alpha, lda_selection_hook(ridge))?;
    let projected = selection.basis.project(x);
    Ok((projected, selection))
}

fn trace_csv(selection: &Selection) -> String {
    let mut out = String::from("p,sensitivity_pct,specificity_pct,sum_pct\n");
    for row in &selection.trace {
        out.push_str(&format!(
            "{},{:.4},{:.4},{:.4}\n",
            row.p,
            row.sensitivity * 100.0,
            row.specificity * 100.0,
            row.sum() * 100.0
        ));
    }
    out
}

fn evaluate_cell(
    key: &CellKey,
    labeled: &LabeledDataset,
    summaries: &SummaryMap,
    config: &ExperimentConfig,
) -> CellOutput {
    let mut rows = Vec::new();
    let mut artifacts = Vec::new();

    let prepared =
        cell_features(labeled, summaries, key.variant).and_then(|(x, labels, _)| match key.space {
            Space::Supervised => {
                let (projected, selection) =
                    supervised_projection(&x, &labels, config.alpha, config.ridge)?;
                artifacts.push((format!("trace_{}.csv", key.tag()), trace_csv(&selection)));
                Ok((projected, labels))
            }
            _ => Ok((x, labels)),
        });

    let (x, labels) = match prepared {
        Ok(v) => v,
        Err(e) => {
            // the whole cell is unusable: one error row per classifier slot
            rows.push(ReportRow::failed(key, Classifier::Lda, None, &e));
            for &k in &config.k_grid {
                rows.push(ReportRow::failed(key, Classifier::Knn, Some(k), &e));
            }
            return CellOutput { rows, artifacts };
        }
    };

    if config.export_fvt {
        artifacts.push((
            format!("fvt_{}.csv", key.tag()),
            matrix_csv(&x, labels.len()),
        ));
    }

    match evaluate_lda(&x, &labels, config.ridge) {
        Ok((_, report)) => rows.push(ReportRow::ok(key, Classifier::Lda, None, &report)),
        Err(e) => rows.push(ReportRow::failed(key, Classifier::Lda, None, &e)),
    }

    let n_pos = labels.iter().filter(|l| **l == Label::Positive).count();
    let n_neg = labels.len() - n_pos;
    match KnnLooEvaluator::new(&x, &labels) {
        Ok(evaluator) => {
            for &k in &config.k_grid {
                let result = KnnConfig::from_counts(k, n_pos, n_neg)
                    .and_then(|cfg| evaluator.evaluate(&cfg))
                    .and_then(|(predictions, margins)| {
                        let cm = confusion(&predictions, &labels)?;
                        let report = EvaluationReport::from_confusion(cm)?
                            .with_roc(roc_and_auc(&margins, &labels)?);
                        Ok(report)
                    });
                match result {
                    Ok(report) => rows.push(ReportRow::ok(key, Classifier::Knn, Some(k), &report)),
                    Err(e) => rows.push(ReportRow::failed(key, Classifier::Knn, Some(k), &e)),
                }
            }
        }
        Err(e) => {
            for &k in &config.k_grid {
                rows.push(ReportRow::failed(key, Classifier::Knn, Some(k), &e));
            }
        }
    }
    CellOutput { rows, artifacts }
}

fn matrix_csv(x: &DMatrix<f64>, n: usize) -> String {
    let mut out = String::from("row");
    for j in 0..x.ncols() {
        out.push_str(&format!(",f{j}"));
    }
    out.push('\n');
    for i in 0..n {
        out.push_str(&i.to_string());
        for v in x.row(i).iter() {
            out.push_str(&format!(",{v}"));
        }
        out.push('\n');
    }
    out
}

/// Run the full grid described by the configuration, write `results.csv`,
/// `loocv.csv` and per-cell artifacts into the output directory, and
/// return every row.
pub fn run_grid(config: &ExperimentConfig) -> Result<GridOutcome> {
    config.validate()?;
    let corpus = Corpus::load(&config.corpus)?;
    let table = WordVectorTable::load(&config.word_vectors)?;

    let mut categories: Vec<String> = if config.categories.is_empty() {
        corpus.categories().iter().map(|s| s.to_string()).collect()
    } else {
        config.categories.clone()
    };
    categories.sort();
    categories.dedup();

    // the reduced word basis is shared by every cell in the reduced space
    let reduced = if config.spaces.contains(&Space::Reduced) {
        Some(reduce_words(&table, config.reduced_dimension))
    } else {
        None
    };

    let mut all_rows: Vec<ReportRow> = Vec::new();
    let mut loocv_rows: Vec<ReportRow> = Vec::new();
    let mut artifacts: Vec<(String, String)> = Vec::new();

    for category in &categories {
        let needs_original = config
            .spaces
            .iter()
            .any(|s| matches!(s, Space::Original | Space::Supervised));
        let original_summaries =
            needs_original.then(|| summarize_category(&corpus, &table, category));
        let reduced_summaries = match &reduced {
            Some(Ok((_, reduced_table))) => {
                Some(summarize_category(&corpus, reduced_table, category))
            }
            _ => None,
        };

        let labeled: HashMap<Scheme, Result<LabeledDataset>> = config
            .schemes
            .iter()
            .map(|&scheme| (scheme, label(&corpus, category, scheme)))
            .collect();

        let cells: Vec<CellKey> = config
            .schemes
            .iter()
            .flat_map(|&scheme| {
                config.spaces.iter().flat_map(move |&space| {
                    config.variants.iter().map(move |&variant| CellKey {
                        category: category.clone(),
                        scheme,
                        space,
                        variant,
                    })
                })
            })
            .collect();

        let outputs: Vec<CellOutput> = cells
            .par_iter()
            .map(|key| {
                let dataset = match &labeled[&key.scheme] {
                    Ok(ds) => ds,
                    Err(e) => {
                        let e = Error::domain(e.to_string());
                        let mut rows = vec![ReportRow::failed(key, Classifier::Lda, None, &e)];
                        for &k in &config.k_grid {
                            rows.push(ReportRow::failed(key, Classifier::Knn, Some(k), &e));
                        }
                        return CellOutput {
                            rows,
                            artifacts: Vec::new(),
                        };
                    }
                };
                let summaries = match key.space {
                    Space::Original | Space::Supervised => original_summaries.as_ref(),
                    Space::Reduced => reduced_summaries.as_ref(),
                };
                let summaries = match summaries {
                    Some(s) => s,
                    None => {
                        let message = match &reduced {
                            Some(Err(e)) => e.to_string(),
                            _ => "word space unavailable".to_string(),
                        };
                        let e = Error::domain(message);
                        let mut rows = vec![ReportRow::failed(key, Classifier::Lda, None, &e)];
                        for &k in &config.k_grid {
                            rows.push(ReportRow::failed(key, Classifier::Knn, Some(k), &e));
                        }
                        return CellOutput {
                            rows,
                            artifacts: Vec::new(),
                        };
                    }
                };
                evaluate_cell(key, dataset, summaries, config)
            })
            .collect();

        let mut category_rows: Vec<ReportRow> = Vec::new();
        for output in outputs {
            category_rows.extend(output.rows);
            artifacts.extend(output.artifacts);
        }

        // leave-one-out for the best whole-set LDA cell of this category
        if let Some(best) = category_rows
            .iter()
            .filter(|r| r.classifier == Classifier::Lda && r.error.is_none())
            .max_by(|a, b| {
                a.sum_pct
                    .partial_cmp(&b.sum_pct)
                    .unwrap_or(std::cmp::Ordering::Equal)
                    .then_with(|| b.sort_key().cmp(&a.sort_key()))
            })
            .cloned()
        {
            let key = CellKey {
                category: best.category.clone(),
                scheme: best.scheme,
                space: best.space,
                variant: best.variant,
            };
            let summaries = match key.space {
                Space::Original | Space::Supervised => original_summaries.as_ref(),
                Space::Reduced => reduced_summaries.as_ref(),
            }
            .expect("best row exists, so its space was computed");
            let dataset = labeled[&key.scheme]
                .as_ref()
                .expect("best row exists, so labeling succeeded");
            let loocv_result = cell_features(dataset, summaries, key.variant)
                .and_then(|(x, labels, _)| match key.space {
                    Space::Supervised => {
                        let (projected, _) =
                            supervised_projection(&x, &labels, config.alpha, config.ridge)?;
                        Ok((projected, labels))
                    }
                    _ => Ok((x, labels)),
                })
                .and_then(|(x, labels)| {
                    // ROC artifact of the whole-set model for the best cell
                    if let Ok((_, report)) = evaluate_lda(&x, &labels, config.ridge) {
                        if let Some(roc) = &report.roc {
                            let mut buf = Vec::new();
                            export_roc_csv(&mut buf, roc).expect("string write");
                            artifacts.push((
                                format!("roc_best_{}.csv", file_tag(&key.category)),
                                String::from_utf8(buf).expect("utf8 csv"),
                            ));
                        }
                    }
                    loocv_lda(&x, &labels, config.ridge)
                });
            match loocv_result {
                Ok(report) => {
                    loocv_rows.push(ReportRow::ok(&key, Classifier::LdaLoocv, None, &report))
                }
                Err(e) => loocv_rows.push(ReportRow::failed(&key, Classifier::LdaLoocv, None, &e)),
            }
        }
        all_rows.extend(category_rows);
    }

    // best flag per (category, scheme, classifier) table
    mark_best(&mut all_rows);
    all_rows.sort_by_key(|a| a.sort_key());
    loocv_rows.sort_by_key(|a| a.sort_key());

    let failures = all_rows
        .iter()
        .chain(loocv_rows.iter())
        .filter(|r| r.error.is_some())
        .count();

    fs::create_dir_all(&config.output_dir).map_err(|e| Error::io(&config.output_dir, e))?;
    let mut files = Vec::new();

    let results_path = config.output_dir.join("results.csv");
    fs::write(&results_path, rows_csv(&all_rows)).map_err(|e| Error::io(&results_path, e))?;
    files.push(results_path);

    let loocv_path = config.output_dir.join("loocv.csv");
    fs::write(&loocv_path, rows_csv(&loocv_rows)).map_err(|e| Error::io(&loocv_path, e))?;
    files.push(loocv_path);

    if let Some(Ok((basis, _))) = &reduced {
        let basis_path = config.output_dir.join("reduced_basis.tsv");
        basis.save(&basis_path, table.categories())?;
        files.push(basis_path);
    }

    artifacts.sort_by(|a, b| a.0.cmp(&b.0));
    for (name, contents) in artifacts {
        let path = config.output_dir.join(&name);
        fs::write(&path, contents).map_err(|e| Error::io(&path, e))?;
        files.push(path);
    }

    Ok(GridOutcome {
        rows: all_rows,
        loocv_rows,
        failures,
        files,
    })
}

fn mark_best(rows: &mut [ReportRow]) {
    let mut best: HashMap<(String, u8, u8), (f64, usize)> = HashMap::new();
    let mut order: Vec<usize> = (0..rows.len()).collect();
    order.sort_by(|&a, &b| rows[a].sort_key().cmp(&rows[b].sort_key()));
    for &i in &order {
        let row = &rows[i];
        let (Some(sum), None) = (row.sum_pct, &row.error) else {
            continue;
        };
        let group = (
            row.category.clone(),
            match row.scheme {
                Scheme::Hl => 0,
                Scheme::Ehel => 1,
            },
            match row.classifier {
                Classifier::Lda => 0,
                Classifier::Knn => 1,
                Classifier::LdaLoocv => 2,
            },
        );
        match best.get(&group) {
            Some(&(s, _)) if s >= sum => {}
            _ => {
                best.insert(group, (sum, i));
            }
        }
    }
    for (_, (_, i)) in best {
        rows[i].best = true;
    }
}

fn rows_csv(rows: &[ReportRow]) -> String {
    let mut out = String::from(
        "category,scheme,space,fvt,classifier,k,sensitivity_pct,specificity_pct,sum_pct,auc,best,error\n",
    );
    for row in rows {
        let fmt_pct = |v: Option<f64>| v.map(|v| format!("{v:.4}")).unwrap_or_default();
        let fmt_auc = |v: Option<f64>| v.map(|v| format!("{v:.6}")).unwrap_or_default();
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{}\n",
            sanitize(&row.category),
            row.scheme,
            row.space,
            row.variant,
            row.classifier,
            row.k.map(|k| k.to_string()).unwrap_or_default(),
            fmt_pct(row.sensitivity_pct),
            fmt_pct(row.specificity_pct),
            fmt_pct(row.sum_pct),
            fmt_auc(row.auc),
            row.best,
            row.error.clone().unwrap_or_default(),
        ));
    }
    out
}

/// Descriptive statistics and citation histogram of a corpus.
#[derive(Debug)]
pub struct DescribeOutcome {
    pub stats: Vec<(String, CategoryStats)>,
    /// (citation count, number of documents), ascending; each document
    /// counted once regardless of category multiplicity.
    pub histogram: Vec<(u64, usize)>,
    pub files: Vec<PathBuf>,
}

/// Per-category statistics plus plot-ready histogram data, written as
/// `stats.csv` and `histogram.csv`.
pub fn describe(config: &ExperimentConfig) -> Result<DescribeOutcome> {
    let corpus = Corpus::load(&config.corpus)?;
    let mut categories: Vec<String> = if config.categories.is_empty() {
        corpus.categories().iter().map(|s| s.to_string()).collect()
    } else {
        config.categories.clone()
    };
    categories.sort();
    categories.dedup();

    let mut stats = Vec::new();
    for category in &categories {
        let citations: Vec<u64> = corpus.in_category(category).map(|r| r.citations).collect();
        if citations.is_empty() {
            return Err(Error::UnknownCategory(category.clone()));
        }
        stats.push((category.clone(), descriptive_stats(&citations)?));
    }

    let mut histogram_map = std::collections::BTreeMap::new();
    for record in corpus.records() {
        *histogram_map.entry(record.citations).or_insert(0usize) += 1;
    }
    let histogram: Vec<(u64, usize)> = histogram_map.into_iter().collect();

    fs::create_dir_all(&config.output_dir).map_err(|e| Error::io(&config.output_dir, e))?;
    let mut files = Vec::new();

    let mut stats_csv = String::from("category,n,max,min,mean,q1,q2,q3,sigma,se\n");
    for (name, s) in &stats {
        stats_csv.push_str(&format!(
            "{},{},{},{},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6}\n",
            sanitize(name),
            s.n,
            s.max,
            s.min,
            s.mean,
            s.q1,
            s.q2,
            s.q3,
            s.sigma,
            s.se
        ));
    }
    let stats_path = config.output_dir.join("stats.csv");
    fs::write(&stats_path, stats_csv).map_err(|e| Error::io(&stats_path, e))?;
    files.push(stats_path);

    let mut histogram_csv = String::from("citations,documents\n");
    for (citations, count) in &histogram {
        histogram_csv.push_str(&format!("{citations},{count}\n"));
    }
    let histogram_path = config.output_dir.join("histogram.csv");
    fs::write(&histogram_path, histogram_csv).map_err(|e| Error::io(&histogram_path, e))?;
    files.push(histogram_path);

    Ok(DescribeOutcome {
        stats,
        histogram,
        files,
    })
}
