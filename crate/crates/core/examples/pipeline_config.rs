//! Drives the full pipeline through the same configuration the
//! `fuzzy-equiv` binary uses, then renders a few dumps.
//!
//! Usage: cargo run --example pipeline_config

use std::path::PathBuf;

use fuzzy_equiv::cli::{self, Dump, InputMode, OutputFormat, PipelineConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let corpus = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/corpus");
    let mut config = PipelineConfig::new(corpus, InputMode::Docs);
    config.q = 1.0;

    let output = cli::execute(&config)?;
    println!(
        "{} points, {} closure rounds",
        output.dataset.len(),
        output.iterations
    );

    config.dump = vec![Dump::Keywords, Dump::Relation, Dump::Schedule];
    print!("{}", cli::render(&output, &config)?);

    config.dump = vec![Dump::Closure];
    config.output_format = OutputFormat::Json;
    print!("{}", cli::render(&output, &config)?);

    config.alpha = Some(0.8);
    config.output_format = OutputFormat::Text;
    print!("partition at 0.8: {}", cli::render(&output, &config)?);
    Ok(())
}
