//! The full experiment grid end to end: synthesize a corpus and its
//! word-vector table, write them to disk, run every combination of
//! {scheme} x {space} x {FVT variant} x {LDA, weighted kNN over the k
//! grid}, and print the result table plus the leave-one-out row for the
//! best LDA cell.

use citesem::config::ExperimentConfig;
use citesem::grid::run_grid;
use citesem::synth::{ladder_corpus, LadderParams};

fn main() -> citesem::Result<()> {
    let dir = std::env::temp_dir().join("citesem-grid-example");
    std::fs::create_dir_all(&dir).expect("temp dir");

    let params = LadderParams {
        n_docs: 300,
        separation: 1.5,
        seed: 9,
        ..LadderParams::default()
    };
    let synthetic = ladder_corpus(&params);
    let corpus_path = dir.join("corpus.jsonl");
    let table_path = dir.join("words.tsv");
    synthetic.write_corpus(&corpus_path)?;
    synthetic.table.save(&table_path)?;

    let mut config = ExperimentConfig::new(&corpus_path, &table_path);
    config.reduced_dimension = 4;
    config.k_grid = vec![1, 5, 17];
    config.output_dir = dir.join("out");

    let outcome = run_grid(&config)?;
    println!(
        "{} rows ({} failures); files under {}",
        outcome.rows.len(),
        outcome.failures,
        config.output_dir.display()
    );

    println!("\nscheme  space       fvt   classifier  k   sens%   spec%    sum%  best");
    for row in &outcome.rows {
        if row.error.is_some() {
            continue;
        }
        println!(
            "{:<6}  {:<10}  {:<4}  {:<10}  {:<2}  {:6.2}  {:6.2}  {:6.2}  {}",
            row.scheme.to_string(),
            row.space.to_string(),
            row.variant.to_string(),
            row.classifier.to_string(),
            row.k.map(|k| k.to_string()).unwrap_or_default(),
            row.sensitivity_pct.unwrap(),
            row.specificity_pct.unwrap(),
            row.sum_pct.unwrap(),
            if row.best { "*" } else { "" }
        );
    }

    println!("\nleave-one-out for the best LDA cell:");
    for row in &outcome.loocv_rows {
        println!(
            "{} {} {} -> sens {:.2}% spec {:.2}% sum {:.2}%",
            row.scheme,
            row.space,
            row.variant,
            row.sensitivity_pct.unwrap_or(f64::NAN),
            row.specificity_pct.unwrap_or(f64::NAN),
            row.sum_pct.unwrap_or(f64::NAN)
        );
    }
    Ok(())
}
