//! Thin command-line front end over the citesem library.

use std::path::PathBuf;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand};

use citesem::config::{ExperimentConfig, Space};
use citesem::corpus::{label, Corpus, Scheme};
use citesem::fvt::{export_fvt_csv, featurize, FvtVariant};
use citesem::grid::{describe, run_grid};
use citesem::meaning::{reduce_words, WordVectorTable};

#[derive(Parser)]
#[command(
    name = "citesem",
    about = "Meaning-Space document featurization and citation-impact classification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct ConfigArgs {
    /// TOML experiment configuration.
    #[arg(long)]
    config: PathBuf,
    /// Override the corpus path from the configuration.
    #[arg(long)]
    corpus: Option<PathBuf>,
    /// Override the word-vector table path.
    #[arg(long)]
    word_vectors: Option<PathBuf>,
    /// Override the output directory.
    #[arg(long)]
    output_dir: Option<PathBuf>,
    /// Override the categories to run.
    #[arg(long, value_delimiter = ',')]
    categories: Option<Vec<String>>,
    /// Override the reduced word-basis dimension.
    #[arg(long)]
    reduced_dimension: Option<usize>,
    /// Override the supervised-PCA alpha.
    #[arg(long)]
    alpha: Option<f64>,
}

impl ConfigArgs {
    fn load(&self) -> anyhow::Result<ExperimentConfig> {
        let mut config = ExperimentConfig::load(&self.config)
            .with_context(|| format!("loading {}", self.config.display()))?;
        if let Some(corpus) = &self.corpus {
            config.corpus = corpus.clone();
        }
        if let Some(words) = &self.word_vectors {
            config.word_vectors = words.clone();
        }
        if let Some(dir) = &self.output_dir {
            config.output_dir = dir.clone();
        }
        if let Some(categories) = &self.categories {
            config.categories = categories.clone();
        }
        if let Some(p) = self.reduced_dimension {
            config.reduced_dimension = p;
        }
        if let Some(alpha) = self.alpha {
            config.alpha = alpha;
        }
        Ok(config)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Per-category citation statistics and the corpus histogram.
    Describe {
        #[command(flatten)]
        config: ConfigArgs,
    },
    /// Export feature vectors for one category, space and variant.
    Featurize {
        #[command(flatten)]
        config: ConfigArgs,
        #[arg(long)]
        category: String,
        #[arg(long, default_value = "original")]
        space: Space,
        #[arg(long, default_value = "fvt1")]
        variant: FvtVariant,
        /// Output CSV path; defaults into the output directory.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run the whole experiment grid and write the result tables.
    RunGrid {
        #[command(flatten)]
        config: ConfigArgs,
    },
    /// Leave-one-out LDA evaluation of one grid cell.
    Loocv {
        #[command(flatten)]
        config: ConfigArgs,
        #[arg(long)]
        category: String,
        #[arg(long, default_value = "hl")]
        scheme: Scheme,
        #[arg(long, default_value = "original")]
        space: Space,
        #[arg(long, default_value = "fvt1")]
        variant: FvtVariant,
    },
}

fn main() -> anyhow::Result<()> {
    let cli = Cli::parse();
    match cli.command {
        Command::Describe { config } => {
            let config = config.load()?;
            let outcome = describe(&config)?;
            println!("category,n,mean,q1,q2,q3");
            for (name, s) in &outcome.stats {
                println!(
                    "{name},{},{:.4},{:.4},{:.4},{:.4}",
                    s.n, s.mean, s.q1, s.q2, s.q3
                );
            }
            for file in &outcome.files {
                eprintln!("wrote {}", file.display());
            }
        }
        Command::Featurize {
            config,
            category,
            space,
            variant,
            output,
        } => {
            let config = config.load()?;
            config.validate()?;
            let corpus = Corpus::load(&config.corpus)?;
            let table = WordVectorTable::load(&config.word_vectors)?;
            if space == Space::Supervised {
                bail!(
                    "featurize exports raw feature vectors; use run-grid for the supervised space"
                );
            }
            let (features, dim, space_name) = match space {
                Space::Original => {
                    let docs: Vec<_> = corpus.in_category(&category).collect();
                    ensure_category(&docs, &category)?;
                    let fm = featurize(docs, &table, variant);
                    (fm, table.dimension(), "original")
                }
                Space::Reduced => {
                    let (_, reduced) = reduce_words(&table, config.reduced_dimension)?;
                    let docs: Vec<_> = corpus.in_category(&category).collect();
                    ensure_category(&docs, &category)?;
                    let fm = featurize(docs, &reduced, variant);
                    (fm, reduced.dimension(), "reduced")
                }
                Space::Supervised => unreachable!(),
            };
            let path = output.unwrap_or_else(|| {
                config
                    .output_dir
                    .join(format!("fvt_{category}_{space_name}_{variant}.csv"))
            });
            if let Some(parent) = path.parent() {
                std::fs::create_dir_all(parent)?;
            }
            let mut file = std::fs::File::create(&path)
                .with_context(|| format!("creating {}", path.display()))?;
            export_fvt_csv(&mut file, &features, space_name, dim)?;
            if !features.excluded.is_empty() {
                eprintln!(
                    "excluded {} documents with no in-table words",
                    features.excluded.len()
                );
            }
            println!("wrote {}", path.display());
        }
        Command::RunGrid { config } => {
            let config = config.load()?;
            let outcome = run_grid(&config)?;
            for file in &outcome.files {
                eprintln!("wrote {}", file.display());
            }
            println!(
                "{} rows ({} failed), {} leave-one-out rows",
                outcome.rows.len(),
                outcome.failures,
                outcome.loocv_rows.len()
            );
            if outcome.failures > 0 {
                bail!("{} grid cells failed", outcome.failures);
            }
        }
        Command::Loocv {
            config,
            category,
            scheme,
            space,
            variant,
        } => {
            let config = config.load()?;
            config.validate()?;
            let corpus = Corpus::load(&config.corpus)?;
            let table = WordVectorTable::load(&config.word_vectors)?;
            let dataset = label(&corpus, &category, scheme)?;
            let word_table = match space {
                Space::Reduced => reduce_words(&table, config.reduced_dimension)?.1,
                _ => table,
            };
            let docs: Vec<_> = dataset
                .items
                .iter()
                .filter_map(|(id, _)| corpus.get(id))
                .collect();
            let fm = featurize(docs, &word_table, variant);
            let kept: std::collections::HashSet<&str> =
                fm.doc_ids.iter().map(String::as_str).collect();
            let labels: Vec<_> = dataset
                .items
                .iter()
                .filter(|(id, _)| kept.contains(id.as_str()))
                .map(|(_, l)| *l)
                .collect();
            let x = match space {
                Space::Supervised => {
                    let selection = citesem::reduction::supervised_selection(
                        &fm.matrix,
                        &labels,
                        config.alpha,
                        |proj, labs| {
                            let (pos, neg) = citesem::classify::split_classes(proj, labs);
                            let model = citesem::classify::lda_fit(&pos, &neg, config.ridge)?;
                            Ok((model.training_sensitivity, model.training_specificity))
                        },
                    )?;
                    selection.basis.project(&fm.matrix)
                }
                _ => fm.matrix.clone(),
            };
            let report = citesem::classify::loocv_lda(&x, &labels, config.ridge)?;
            println!("category={category} scheme={scheme} space={space} variant={variant}");
            println!(
                "sensitivity={:.2}% specificity={:.2}% sum={:.2}%",
                report.sensitivity * 100.0,
                report.specificity * 100.0,
                report.sum_pct()
            );
        }
    }
    Ok(())
}

fn ensure_category(
    docs: &[&citesem::corpus::DocumentRecord],
    category: &str,
) -> anyhow::Result<()> {
    if docs.is_empty() {
        bail!("no documents carry category `{category}`");
    }
    Ok(())
}
