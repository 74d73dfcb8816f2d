//! Renders the dendrogram of a points CSV as text, Graphviz DOT and JSON.
//!
//! Usage: cargo run --example dendrogram_formats [POINTS.csv] [Q]
//! Pipe the DOT section through `dot -Tsvg` to draw it.

use std::path::PathBuf;

use fuzzy_equiv::closure::transitive_closure;
use fuzzy_equiv::partition::{build_dendrogram, partition_schedule};
use fuzzy_equiv::relation::{compatibility_relation, Dataset};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let path = args.next().map(PathBuf::from).unwrap_or_else(|| {
        PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/six_points.csv")
    });
    let q: f64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(2.0);

    let data = Dataset::from_csv_path(&path)?;
    let (relation, _) = compatibility_relation(&data, q)?;
    let (closure, _) = transitive_closure(&relation);
    let schedule = partition_schedule(&closure);
    let tree = build_dendrogram(&schedule)?;

    println!("{}", tree.to_text());
    println!("{}", tree.to_dot());
    println!("{}", tree.to_json());
    println!("{}", schedule.to_json());
    Ok(())
}
