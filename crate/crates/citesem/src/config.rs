//! Experiment configuration: a flat TOML file of keys and arrays driving
//! the grid runner.

use std::fmt;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::corpus::Scheme;
use crate::error::{Error, Result};
use crate::fvt::FvtVariant;

/// Which word space the documents are featurized or reduced in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Space {
    /// The full Meaning Space as loaded.
    Original,
    /// Words re-expressed in the reduced principal basis.
    Reduced,
    /// Features built in the original space, then projected by supervised
    /// PCA with LDA-driven dimension selection.
    Supervised,
}

impl Space {
    pub const ALL: [Space; 3] = [Space::Original, Space::Reduced, Space::Supervised];
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Space::Original => write!(f, "original"),
            Space::Reduced => write!(f, "reduced"),
            Space::Supervised => write!(f, "supervised"),
        }
    }
}

impl std::str::FromStr for Space {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "original" => Ok(Space::Original),
            "reduced" => Ok(Space::Reduced),
            "supervised" => Ok(Space::Supervised),
            other => Err(Error::Config(format!("unknown space `{other}`"))),
        }
    }
}

fn default_reduced_dimension() -> usize {
    13
}

fn default_alpha() -> f64 {
    1.0
}

fn default_k_grid() -> Vec<usize> {
    vec![1, 3, 5, 7, 11, 13, 17]
}

fn default_schemes() -> Vec<Scheme> {
    vec![Scheme::Hl, Scheme::Ehel]
}

fn default_spaces() -> Vec<Space> {
    Space::ALL.to_vec()
}

fn default_variants() -> Vec<FvtVariant> {
    FvtVariant::ALL.to_vec()
}

fn default_output_dir() -> PathBuf {
    PathBuf::from("citesem-out")
}

/// Full description of an experiment grid.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExperimentConfig {
    /// JSON-lines corpus file.
    pub corpus: PathBuf,
    /// TSV word-vector table.
    pub word_vectors: PathBuf,
    /// Categories to run; empty means every category in the corpus.
    #[serde(default)]
    pub categories: Vec<String>,
    /// Dimension of the reduced word basis.
    #[serde(default = "default_reduced_dimension")]
    pub reduced_dimension: usize,
    /// Relative weight of the within-class term in supervised PCA.
    #[serde(default = "default_alpha")]
    pub alpha: f64,
    /// Neighborhood sizes for weighted kNN.
    #[serde(default = "default_k_grid")]
    pub k_grid: Vec<usize>,
    #[serde(default = "default_schemes")]
    pub schemes: Vec<Scheme>,
    #[serde(default = "default_spaces")]
    pub spaces: Vec<Space>,
    #[serde(default = "default_variants")]
    pub variants: Vec<FvtVariant>,
    #[serde(default = "default_output_dir")]
    pub output_dir: PathBuf,
    /// Starting ridge for the LDA solve; the ladder takes over on failure.
    #[serde(default)]
    pub ridge: f64,
    /// Also write the per-cell feature matrices as CSV artifacts.
    #[serde(default)]
    pub export_fvt: bool,
}

impl ExperimentConfig {
    /// Minimal configuration over a corpus and word-vector file, with all
    /// grid axes at their defaults.
    pub fn new(corpus: impl Into<PathBuf>, word_vectors: impl Into<PathBuf>) -> Self {
        ExperimentConfig {
            corpus: corpus.into(),
            word_vectors: word_vectors.into(),
            categories: Vec::new(),
            reduced_dimension: default_reduced_dimension(),
            alpha: default_alpha(),
            k_grid: default_k_grid(),
            schemes: default_schemes(),
            spaces: default_spaces(),
            variants: default_variants(),
            output_dir: default_output_dir(),
            ridge: 0.0,
            export_fvt: false,
        }
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let config: ExperimentConfig =
            toml::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Ok(config)
    }

    /// Check input paths and grid axes before any cell runs.
    pub fn validate(&self) -> Result<()> {
        if !self.corpus.exists() {
            return Err(Error::Config(format!(
                "corpus file not found: {}",
                self.corpus.display()
            )));
        }
        if !self.word_vectors.exists() {
            return Err(Error::Config(format!(
                "word-vector file not found: {}",
                self.word_vectors.display()
            )));
        }
        if self.reduced_dimension == 0 {
            return Err(Error::Config("reduced_dimension must be >= 1".into()));
        }
        if self.alpha < 0.0 {
            return Err(Error::Config("alpha must be non-negative".into()));
        }
        if self.k_grid.is_empty() {
            return Err(Error::Config("k_grid must not be empty".into()));
        }
        for &k in &self.k_grid {
            if k == 0 || k % 2 == 0 {
                return Err(Error::Config(format!(
                    "k_grid entries must be odd and positive, got {k}"
                )));
            }
        }
        if self.schemes.is_empty() || self.spaces.is_empty() || self.variants.is_empty() {
            return Err(Error::Config(
                "schemes, spaces and variants must not be empty".into(),
            ));
        }
        if self.ridge < 0.0 {
            return Err(Error::Config("ridge must be non-negative".into()));
        }
        Ok(())
    }
}
