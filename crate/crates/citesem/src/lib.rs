//! citesem — informational semantics for citation-impact classification.
//!
//! Documents are clouds of word points in a Meaning Space whose axes are
//! subject categories and whose coordinates are per-category importance
//! scores. Each cloud is summarized into a Feature Vector of Text (FVT):
//! combinations of the cloud mean, its first principal axis and the two
//! centroids of a deterministic 2-means clustering. FVTs feed binary
//! citation classifiers — Fisher LDA with a sensitivity+specificity
//! optimal threshold and class-weighted kNN — evaluated with confusion
//! matrices, ROC curves, AUC and leave-one-out cross-validation, in three
//! spaces: the original Meaning Space, a PCA-reduced word basis, and a
//! supervised-PCA projection of the features.
//!
//! Start with the runnable programs under `examples/`; each demonstrates
//! one capability end to end on seeded synthetic data. The `citesem`
//! binary drives the same pipeline from a TOML configuration with the
//! `describe`, `featurize`, `run-grid` and `loocv` subcommands.

pub mod baseline;
pub mod classify;
pub mod cloud;
pub mod config;
pub mod corpus;
pub mod error;
pub mod evaluate;
pub mod fvt;
pub mod grid;
mod linalg;
pub mod meaning;
pub mod reduction;
pub mod synth;

pub use baseline::{
    inverse_document_frequency, term_frequency, tfidf_vector, TfidfVector, VocabularyIndex,
};
pub use classify::{
    knn_predict, lda_fit, lda_threshold, loocv, loocv_lda, KnnConfig, KnnLooEvaluator, LdaModel,
    ThresholdChoice,
};
pub use cloud::{build_cloud, PrincipalAxis, TwoMeans, WordCloud};
pub use config::{ExperimentConfig, Space};
pub use corpus::{
    descriptive_stats, label, label_ehel, label_hl, CategoryStats, Corpus, DocumentRecord, Label,
    LabeledDataset, Scheme,
};
pub use error::{Error, Result};
pub use evaluate::{
    confusion, roc_and_auc, sensitivity, specificity, ConfusionMatrix, EvaluationReport, RocCurve,
};
pub use fvt::{
    assemble_fvt, featurize, Block, CloudSummary, FeatureMatrix, FvtVariant, TextFeatures,
};
pub use grid::{describe, run_grid, Classifier, DescribeOutcome, GridOutcome, ReportRow};
pub use meaning::{reduce_words, ReducedWordBasis, WordVectorTable};
pub use reduction::{
    broken_stick_count, fit_pca, kaiser_count, supervised_pca, supervised_selection, PcaModel,
    Selection, SupervisedBasis, TraceRow,
};
