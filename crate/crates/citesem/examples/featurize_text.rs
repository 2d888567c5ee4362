//! From a document to its Feature Vector of Text.
//!
//! Builds the word cloud of one document, prints its summaries (mean,
//! standard deviation, first principal axis, deterministic 2-means
//! centroids) and assembles all five FVT layouts.

use citesem::cloud::build_cloud;
use citesem::fvt::{Block, CloudSummary, FvtVariant};
use citesem::synth::{ladder_corpus, LadderParams};

fn short(v: &[f64]) -> Vec<f64> {
    v.iter().map(|x| (x * 1000.0).round() / 1000.0).collect()
}

fn main() {
    let params = LadderParams {
        n_docs: 30,
        dimension: 5,
        words_per_doc: 12,
        seed: 4,
        ..LadderParams::default()
    };
    let synthetic = ladder_corpus(&params);
    let doc = &synthetic.corpus.records()[0];

    let cloud = build_cloud(doc, &synthetic.table).unwrap();
    println!(
        "document `{}`: {} tokens -> {} distinct in-table words ({} duplicates collapsed)",
        doc.id,
        doc.tokens.len(),
        cloud.point_count(),
        cloud.duplicates_collapsed
    );

    let summary = CloudSummary::of(&cloud);
    println!("mean  {:?}", short(summary.mean.as_slice()));
    println!("std   {:?}", short(summary.std.as_slice()));
    println!("pc1   {:?}", short(summary.pc1.as_slice()));
    println!("c1    {:?}", short(summary.c1.as_slice()));
    println!("c2    {:?}", short(summary.c2.as_slice()));

    println!(
        "\nvariant layouts in a {}-dimensional space:",
        cloud.dimension()
    );
    for variant in FvtVariant::ALL {
        let features = summary.assemble(variant);
        let blocks: Vec<&str> = variant.blocks().iter().map(|b| b.name()).collect();
        println!(
            "  {variant}: length {:3}, blocks {}",
            features.len(),
            blocks.join("+")
        );
    }

    let fvt3 = summary.assemble(FvtVariant::Fvt3);
    println!(
        "\nfvt3 mean block equals the cloud mean: {}",
        fvt3.block(Block::Mean).unwrap() == summary.mean.as_slice()
    );
}
