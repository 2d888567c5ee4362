//! Reducing the word space: PCA over the word-vector table with the
//! Kaiser and Broken-Stick component-count rules.
//!
//! Words live in a Meaning Space with one axis per subject category. This
//! example fits the principal basis of a synthetic table, shows how many
//! axes each selection rule keeps, and re-expresses the words in a
//! 3-dimensional reduced basis.

use citesem::meaning::reduce_words;
use citesem::reduction::{broken_stick_count, fit_pca, kaiser_count};
use citesem::synth::{ladder_corpus, LadderParams};

fn main() {
    let params = LadderParams {
        n_docs: 50,
        dimension: 10,
        seed: 23,
        ..LadderParams::default()
    };
    let table = ladder_corpus(&params).table;
    println!(
        "word table: {} words in {} categories",
        table.word_count(),
        table.dimension()
    );

    // spectrum of the word matrix itself
    let pca = fit_pca(table.matrix()).unwrap();
    println!("\nword-space eigenvalues:");
    for (i, v) in pca.eigenvalues.iter().enumerate() {
        println!("  axis {:2}  {v:.6}", i + 1);
    }
    println!(
        "kaiser keeps {}, broken stick keeps {}",
        kaiser_count(&pca.eigenvalues).unwrap(),
        broken_stick_count(&pca.eigenvalues).unwrap()
    );

    let (basis, reduced) = reduce_words(&table, 3).unwrap();
    println!(
        "\nreduced to {} axes; explained variance {:?}",
        reduced.dimension(),
        basis
            .explained_variance
            .iter()
            .map(|v| (v * 1e4).round() / 1e4)
            .collect::<Vec<_>>()
    );
    let word = &table.words()[0];
    println!(
        "word `{word}`: original {:?} -> reduced {:?}",
        table
            .vector(word)
            .unwrap()
            .iter()
            .map(|v| (v * 100.0).round() / 100.0)
            .collect::<Vec<_>>(),
        reduced
            .vector(word)
            .unwrap()
            .iter()
            .map(|v| (v * 100.0).round() / 100.0)
            .collect::<Vec<_>>()
    );
}
