//! Clusters whole documents by raw keyword counts instead of
//! co-occurrence points, then queries a single α level.
//!
//! Usage: cargo run --example term_frequency [ALPHA]

use fuzzy_equiv::closure::transitive_closure;
use fuzzy_equiv::partition::alpha_cut;
use fuzzy_equiv::relation::compatibility_relation;
use fuzzy_equiv::text_ingest::{documents_from_texts, tf_vectors, KeywordTable, StopWordSet};

const TEXTS: &[(&str, &str)] = &[
    (
        "fcm",
        "Fuzzy c-means assigns a membership to every cluster.",
    ),
    (
        "hac",
        "Agglomerative clustering merges the closest cluster pair.",
    ),
    (
        "crawl",
        "A web crawler fetches each web page and its links.",
    ),
    (
        "index",
        "The inverted index maps each web term to its page list.",
    ),
    (
        "fuzzy",
        "Fuzzy relations give every pair a membership degree.",
    ),
];

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let alpha: f64 = std::env::args()
        .nth(1)
        .map(|s| s.parse())
        .transpose()?
        .unwrap_or(0.6);

    let docs = documents_from_texts(TEXTS.iter().copied(), &StopWordSet::default());
    let table = KeywordTable::build(&docs, 2)?;
    println!(
        "shared keywords: {:?}",
        table.iter().map(|(_, k)| k).collect::<Vec<_>>()
    );

    let data = tf_vectors(&docs, &table)?;
    println!("{}", data.to_csv());

    let (relation, _) = compatibility_relation(&data, 1.0)?;
    let (closure, _) = transitive_closure(&relation);
    println!("{}", closure.to_text());

    let cut = alpha_cut(&closure, alpha)?;
    println!(
        "clusters at alpha {alpha}: {}",
        cut.display(closure.labels())
    );
    Ok(())
}
