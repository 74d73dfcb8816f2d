//! Clusters a folder of text files through keyword/document co-occurrence
//! points. Defaults to the bundled four-document corpus.
//!
//! Usage: cargo run --example document_clustering [DIR] [MIN_DF]

use std::path::PathBuf;

use fuzzy_equiv::closure::transitive_closure;
use fuzzy_equiv::partition::{build_dendrogram, partition_schedule};
use fuzzy_equiv::relation::compatibility_relation;
use fuzzy_equiv::text_ingest::{load_corpus, occurrence_points, KeywordTable, StopWordSet};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let dir = args
        .next()
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/corpus"));
    let min_df = args.next().map(|s| s.parse()).transpose()?.unwrap_or(1);

    let docs = load_corpus(&dir, &StopWordSet::default())?;
    for doc in &docs {
        println!("doc {} ({}): {:?}", doc.doc_id, doc.name, doc.tokens);
    }

    let table = KeywordTable::build(&docs, min_df)?;
    println!("\nkeywords:\n{}", table.to_json());

    let (occurrences, data) = occurrence_points(&docs, &table)?;
    println!("\n{}", occurrences.to_csv());

    let (relation, _) = compatibility_relation(&data, 2.0)?;
    let (closure, _) = transitive_closure(&relation);
    let schedule = partition_schedule(&closure);
    println!("{}", schedule.to_text());
    println!("{}", build_dendrogram(&schedule)?.to_text());
    Ok(())
}
