//! Cross-checks the fixpoint closure against the strongest-path oracles and
//! the α-cuts against connected components of the original relation.
//!
//! Usage: cargo run --example closure_oracles

use fuzzy_equiv::closure::{minimax_path_strength, path_strength_oracle, transitive_closure};
use fuzzy_equiv::partition::{alpha_cut, connected_components_oracle};
use fuzzy_equiv::FuzzyRelation;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let r = FuzzyRelation::from_unlabelled_rows(vec![
        vec![1.0, 0.8, 0.0, 0.1, 0.2],
        vec![0.8, 1.0, 0.4, 0.0, 0.9],
        vec![0.0, 0.4, 1.0, 0.0, 0.0],
        vec![0.1, 0.0, 0.0, 1.0, 0.5],
        vec![0.2, 0.9, 0.0, 0.5, 1.0],
    ])?;
    println!("relation:\n{}", r.to_text());
    println!(
        "max-min transitive already? {}",
        r.is_max_min_transitive(1e-12)
    );

    let (closure, rounds) = transitive_closure(&r);
    println!("closure after {rounds} rounds:\n{}", closure.to_text());

    let enumerated = path_strength_oracle(&r)?;
    let swept = minimax_path_strength(&r);
    println!(
        "max |closure - path enumeration| = {:e}",
        closure.max_abs_diff(&enumerated)
    );
    println!(
        "max |closure - minimax sweep|    = {:e}",
        closure.max_abs_diff(&swept)
    );

    for alpha in [0.1, 0.4, 0.5, 0.8, 0.9] {
        let cut = alpha_cut(&closure, alpha)?;
        let components = connected_components_oracle(&r, alpha)?;
        println!(
            "alpha {alpha}: {}  (components agree: {})",
            cut.display(closure.labels()),
            cut == components
        );
    }
    Ok(())
}
