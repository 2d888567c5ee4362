//! The classical TF-IDF baseline on a tiny hand-written corpus.

use std::collections::BTreeSet;

use citesem::baseline::{
    export_tfidf_csv, inverse_document_frequency, term_frequency, tfidf_vector, VocabularyIndex,
};
use citesem::corpus::{Corpus, DocumentRecord};

fn doc(id: &str, text: &str) -> DocumentRecord {
    DocumentRecord {
        id: id.to_string(),
        tokens: text.split_whitespace().map(str::to_string).collect(),
        citations: 0,
        categories: BTreeSet::new(),
    }
}

fn main() {
    let corpus = Corpus::from_records(vec![
        doc("d1", "sparse vector models represent text"),
        doc("d2", "vector spaces weight every word"),
        doc("d3", "rare words carry more weight than common words"),
        doc("d4", "text mining pipelines weight word counts"),
    ])
    .unwrap();

    let vocab = VocabularyIndex::build(&corpus);
    println!(
        "{} documents, vocabulary of {} words",
        corpus.len(),
        vocab.len()
    );

    for word in ["word", "weight", "sparse"] {
        let idf = inverse_document_frequency(word, &vocab).unwrap();
        println!(
            "idf({word}) = {idf:.4}  (document frequency {})",
            vocab.document_frequency(word).unwrap()
        );
    }

    let d3 = corpus.get("d3").unwrap();
    println!("\ntf(words, d3) = {}", term_frequency("words", d3));

    let rows: Vec<(String, _)> = corpus
        .records()
        .iter()
        .map(|d| (d.id.clone(), tfidf_vector(d, &vocab, true)))
        .collect();
    println!("\nnormalized tf-idf rows (index:weight):");
    let mut out = Vec::new();
    export_tfidf_csv(&mut out, &rows).unwrap();
    print!("{}", String::from_utf8(out).unwrap());
}
