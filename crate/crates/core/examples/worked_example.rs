//! Six-point walkthrough: relation, closure, α-cut schedule and dendrogram
//! for both Manhattan (q = 1) and Euclidean (q = 2) distances.
//!
//! Usage: cargo run --example worked_example

use fuzzy_equiv::closure::transitive_closure;
use fuzzy_equiv::partition::{build_dendrogram, partition_schedule};
use fuzzy_equiv::relation::{compatibility_relation, Dataset};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let data = Dataset::from_points(vec![
        vec![0.0, 0.0],
        vec![1.0, 1.0],
        vec![1.0, 2.0],
        vec![2.0, 3.0],
        vec![2.0, 0.0],
        vec![3.0, 4.0],
    ])?;

    for q in [2.0, 1.0] {
        let (relation, params) = compatibility_relation(&data, q)?;
        println!(
            "== q = {q}: diameter {:.4}, delta {:.4}",
            params.diameter, params.delta
        );
        println!("compatibility relation:\n{}", relation.to_text());

        let (closure, rounds) = transitive_closure(&relation);
        println!(
            "transitive closure ({rounds} rounds):\n{}",
            closure.to_text()
        );

        let schedule = partition_schedule(&closure);
        println!("{}", schedule.to_text());
        println!("{}", build_dendrogram(&schedule)?.to_text());
    }
    Ok(())
}
