//! Command-line configuration and the end-to-end pipeline driver.
//!
//! [`parse_args`] maps flags onto a [`PipelineConfig`], [`execute`] runs
//! every stage and keeps the intermediate artifacts, [`render`] formats the
//! requested dumps and [`run_pipeline`] ties the three together. Output is a
//! pure function of the inputs and the config.

use std::fmt::{self, Write as _};
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use serde_json::{json, Map, Value};

use crate::partition::{self, AlphaCutSchedule, Dendrogram};
use crate::relation::{self, Dataset, DistanceParams, FuzzyRelation};
use crate::text_ingest::{self, Document, KeywordTable, OccurrenceTable, StopWordSet};
use crate::{closure, Error};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputMode {
    /// A directory of UTF-8 text files.
    Docs,
    /// A CSV file of points.
    Points,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VectorMode {
    /// One (doc_id, keyword_id) point per keyword/document co-occurrence.
    Occurrence,
    /// One keyword-count vector per document.
    Tf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
    Dot,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Dump {
    Keywords,
    Occurrences,
    Relation,
    Closure,
    Schedule,
    Dendrogram,
}

impl Dump {
    fn name(self) -> &'static str {
        match self {
            Dump::Keywords => "keywords",
            Dump::Occurrences => "occurrences",
            Dump::Relation => "relation",
            Dump::Closure => "closure",
            Dump::Schedule => "schedule",
            Dump::Dendrogram => "dendrogram",
        }
    }
}

/// Fuzzy hierarchical clustering of documents or points through the
/// max-min transitive closure of a fuzzy compatibility relation.
#[derive(Debug, Parser)]
#[command(name = "fuzzy-equiv", version)]
struct Args {
    /// Document directory (docs mode) or points CSV (points mode).
    #[arg(long)]
    input: PathBuf,

    #[arg(long, value_enum, default_value_t = InputMode::Docs)]
    mode: InputMode,

    /// How documents become points (docs mode only).
    #[arg(long = "vector", value_enum, default_value_t = VectorMode::Occurrence)]
    vector: VectorMode,

    /// Minkowski exponent, > 0.
    #[arg(long, default_value_t = 2.0)]
    q: f64,

    /// Minimum number of documents a token must appear in to become a keyword.
    #[arg(long = "min-df", default_value_t = 1)]
    min_df: usize,

    /// Stop-word file, one word per line, `#` comments allowed.
    #[arg(long)]
    stopwords: Option<PathBuf>,

    /// Print only the α-cut partition of the closure at this level.
    #[arg(long)]
    alpha: Option<f64>,

    /// Comma-separated artifacts to print [default: schedule,dendrogram].
    #[arg(long, value_enum, value_delimiter = ',')]
    dump: Vec<Dump>,

    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,

    /// Write output here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineConfig {
    pub input_path: PathBuf,
    pub input_mode: InputMode,
    pub vector_mode: VectorMode,
    pub q: f64,
    pub min_df: usize,
    pub stopwords_path: Option<PathBuf>,
    pub alpha: Option<f64>,
    pub output_format: OutputFormat,
    pub dump: Vec<Dump>,
    pub out: Option<PathBuf>,
}

impl PipelineConfig {
    /// Defaults for everything but the input.
    pub fn new(input_path: impl Into<PathBuf>, input_mode: InputMode) -> Self {
        PipelineConfig {
            input_path: input_path.into(),
            input_mode,
            vector_mode: VectorMode::Occurrence,
            q: 2.0,
            min_df: 1,
            stopwords_path: None,
            alpha: None,
            output_format: OutputFormat::Text,
            dump: vec![Dump::Schedule, Dump::Dendrogram],
            out: None,
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let usage = |msg: String| Err(CliError::Usage(msg));
        if !(self.q.is_finite() && self.q > 0.0) {
            return usage(format!("--q must be a finite value > 0, got {}", self.q));
        }
        if self.min_df < 1 {
            return usage("--min-df must be >= 1".into());
        }
        if let Some(alpha) = self.alpha {
            if !(0.0..=1.0).contains(&alpha) {
                return usage(format!("--alpha must lie in [0, 1], got {alpha}"));
            }
            if self.output_format == OutputFormat::Dot {
                return usage("--format dot applies only to the dendrogram".into());
            }
            return Ok(());
        }
        for &d in &self.dump {
            if self.input_mode == InputMode::Points
                && matches!(d, Dump::Keywords | Dump::Occurrences)
            {
                return usage(format!("--dump {} needs --mode docs", d.name()));
            }
            if d == Dump::Occurrences && self.vector_mode == VectorMode::Tf {
                return usage("--dump occurrences needs --vector occurrence".into());
            }
            if self.output_format == OutputFormat::Dot && d != Dump::Dendrogram {
                return usage("--format dot applies only to the dendrogram".into());
            }
            if self.output_format == OutputFormat::Csv && d == Dump::Dendrogram {
                return usage("the dendrogram has no CSV form; use text, json or dot".into());
            }
        }
        Ok(())
    }
}

/// Maps flags (without the program name) onto a validated config.
pub fn parse_args<I, S>(argv: I) -> Result<PipelineConfig, CliError>
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let argv = std::iter::once("fuzzy-equiv".into()).chain(argv.into_iter().map(Into::into));
    let args = Args::try_parse_from(argv).map_err(|e| match e.kind() {
        clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
            CliError::Help(e.to_string())
        }
        _ => CliError::Usage(e.to_string()),
    })?;

    let mut dump = Vec::new();
    for d in args.dump {
        if !dump.contains(&d) {
            dump.push(d);
        }
    }
    if dump.is_empty() {
        dump = vec![Dump::Schedule, Dump::Dendrogram];
    }

    let config = PipelineConfig {
        input_path: args.input,
        input_mode: args.mode,
        vector_mode: args.vector,
        q: args.q,
        min_df: args.min_df,
        stopwords_path: args.stopwords,
        alpha: args.alpha,
        output_format: args.format,
        dump,
        out: args.out,
    };
    config.validate()?;
    Ok(config)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    Ingest,
    Relation,
    Closure,
    Partition,
    Dendrogram,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stage::Ingest => "ingest",
            Stage::Relation => "relation",
            Stage::Closure => "closure",
            Stage::Partition => "partition",
            Stage::Dendrogram => "dendrogram",
        })
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// `--help` / `--version` output; not a failure.
    #[error("{0}")]
    Help(String),

    #[error("{0}")]
    Usage(String),

    #[error("{stage}: {source}")]
    Data {
        stage: Stage,
        #[source]
        source: Error,
    },

    #[error("writing output: {0}")]
    Output(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Help(_) => 0,
            CliError::Usage(_) => 2,
            CliError::Data { .. } => 3,
            CliError::Output(_) => 1,
        }
    }
}

fn at(stage: Stage) -> impl Fn(Error) -> CliError {
    move |source| CliError::Data { stage, source }
}

/// Every artifact produced by one pipeline run.
#[derive(Debug, Clone)]
pub struct PipelineOutput {
    pub documents: Option<Vec<Document>>,
    pub keywords: Option<KeywordTable>,
    pub occurrences: Option<OccurrenceTable>,
    pub dataset: Dataset,
    pub params: DistanceParams,
    pub relation: FuzzyRelation,
    pub closure: FuzzyRelation,
    pub iterations: usize,
    pub schedule: AlphaCutSchedule,
    pub dendrogram: Dendrogram,
}

/// Runs ingest, relation, closure, schedule and dendrogram.
pub fn execute(config: &PipelineConfig) -> Result<PipelineOutput, CliError> {
    config.validate()?;
    if !config.input_path.exists() {
        return Err(CliError::Usage(format!(
            "input path {} does not exist",
            config.input_path.display()
        )));
    }

    let (documents, keywords, occurrences, dataset) = match config.input_mode {
        InputMode::Points => {
            if !config.input_path.is_file() {
                return Err(CliError::Usage("--mode points expects a CSV file".into()));
            }
            let data = Dataset::from_csv_path(&config.input_path).map_err(at(Stage::Ingest))?;
            (None, None, None, data)
        }
        InputMode::Docs => {
            if !config.input_path.is_dir() {
                return Err(CliError::Usage("--mode docs expects a directory".into()));
            }
            let stops = match &config.stopwords_path {
                Some(path) => StopWordSet::from_file(path).map_err(at(Stage::Ingest))?,
                None => StopWordSet::default(),
            };
            let docs =
                text_ingest::load_corpus(&config.input_path, &stops).map_err(at(Stage::Ingest))?;
            let table = KeywordTable::build(&docs, config.min_df).map_err(at(Stage::Ingest))?;
            let (occ, data) = match config.vector_mode {
                VectorMode::Occurrence => {
                    let (occ, data) =
                        text_ingest::occurrence_points(&docs, &table).map_err(at(Stage::Ingest))?;
                    (Some(occ), data)
                }
                VectorMode::Tf => (
                    None,
                    text_ingest::tf_vectors(&docs, &table).map_err(at(Stage::Ingest))?,
                ),
            };
            (Some(docs), Some(table), occ, data)
        }
    };

    let (relation, params) =
        relation::compatibility_relation(&dataset, config.q).map_err(at(Stage::Relation))?;
    let (closure, iterations) = closure::transitive_closure(&relation);
    let schedule = partition::partition_schedule(&closure);
    let dendrogram = partition::build_dendrogram(&schedule).map_err(at(Stage::Dendrogram))?;

    Ok(PipelineOutput {
        documents,
        keywords,
        occurrences,
        dataset,
        params,
        relation,
        closure,
        iterations,
        schedule,
        dendrogram,
    })
}

/// Formats the artifacts selected by `config`.
pub fn render(output: &PipelineOutput, config: &PipelineConfig) -> Result<String, CliError> {
    config.validate()?;
    if let Some(alpha) = config.alpha {
        return render_alpha(output, config.output_format, alpha);
    }

    let format = config.output_format;
    match format {
        OutputFormat::Json => {
            let values = config
                .dump
                .iter()
                .map(|&d| Ok((d, dump_json(output, d)?)))
                .collect::<Result<Vec<_>, CliError>>()?;
            let doc = if values.len() == 1 {
                values
                    .into_iter()
                    .next()
                    .map(|(_, v)| v)
                    .unwrap_or(Value::Null)
            } else {
                Value::Object(
                    values
                        .into_iter()
                        .map(|(d, v)| (d.name().to_owned(), v))
                        .collect::<Map<_, _>>(),
                )
            };
            Ok(serde_json::to_string_pretty(&doc).expect("json renders") + "\n")
        }
        _ => {
            let single = config.dump.len() == 1;
            let mut out = String::new();
            for (i, &d) in config.dump.iter().enumerate() {
                if !single {
                    if i > 0 {
                        out.push('\n');
                    }
                    let _ = writeln!(out, "# {}", d.name());
                }
                out.push_str(&dump_plain(output, d, format)?);
            }
            Ok(out)
        }
    }
}

fn missing(d: Dump) -> CliError {
    CliError::Usage(format!(
        "--dump {} needs --mode docs with --vector occurrence",
        d.name()
    ))
}

fn dump_json(output: &PipelineOutput, d: Dump) -> Result<Value, CliError> {
    Ok(match d {
        Dump::Keywords => {
            let table = output.keywords.as_ref().ok_or_else(|| missing(d))?;
            serde_json::to_value(table.entries()).expect("keywords serialize")
        }
        Dump::Occurrences => {
            let occ = output.occurrences.as_ref().ok_or_else(|| missing(d))?;
            serde_json::to_value(&occ.pairs).expect("occurrences serialize")
        }
        Dump::Relation => {
            let mut v = output.relation.to_json_value();
            v["q"] = json!(output.params.q);
            v["delta"] = json!(output.params.delta);
            v
        }
        Dump::Closure => {
            let mut v = output.closure.to_json_value();
            v["iterations"] = json!(output.iterations);
            v
        }
        Dump::Schedule => output.schedule.to_json_value(),
        Dump::Dendrogram => output.dendrogram.to_json_value(),
    })
}

fn dump_plain(output: &PipelineOutput, d: Dump, format: OutputFormat) -> Result<String, CliError> {
    let csv = format == OutputFormat::Csv;
    Ok(match d {
        Dump::Keywords => {
            let table = output.keywords.as_ref().ok_or_else(|| missing(d))?;
            let mut out = String::from(if csv { "id,keyword\n" } else { "id  keyword\n" });
            for (id, kw) in table.iter() {
                if csv {
                    let _ = writeln!(out, "{id},{kw}");
                } else {
                    let _ = writeln!(out, "{id:<3} {kw}");
                }
            }
            out
        }
        Dump::Occurrences => {
            let occ = output.occurrences.as_ref().ok_or_else(|| missing(d))?;
            if csv {
                occ.to_csv()
            } else {
                let mut out = String::from("label  keyword_id  doc_id\n");
                for p in &occ.pairs {
                    let _ = writeln!(out, "{:<6} {:<11} {}", p.label, p.keyword_id, p.doc_id);
                }
                out
            }
        }
        Dump::Relation if csv => output.relation.to_csv(),
        Dump::Relation => format!(
            "q = {}, delta = {:.4}\n{}",
            output.params.q,
            output.params.delta,
            output.relation.to_text()
        ),
        Dump::Closure if csv => output.closure.to_csv(),
        Dump::Closure => format!(
            "{}iterations: {}\n",
            output.closure.to_text(),
            output.iterations
        ),
        Dump::Schedule if csv => output.schedule.to_csv(),
        Dump::Schedule => output.schedule.to_text(),
        Dump::Dendrogram => match format {
            OutputFormat::Dot => output.dendrogram.to_dot(),
            _ => output.dendrogram.to_text(),
        },
    })
}

fn render_alpha(
    output: &PipelineOutput,
    format: OutputFormat,
    alpha: f64,
) -> Result<String, CliError> {
    let cut = partition::alpha_cut(&output.closure, alpha).map_err(at(Stage::Partition))?;
    let labels = output.closure.labels();
    Ok(match format {
        OutputFormat::Json => {
            let v = json!({ "alpha": alpha, "blocks": cut.labelled(labels) });
            serde_json::to_string_pretty(&v).expect("json renders") + "\n"
        }
        OutputFormat::Csv => {
            let mut out = String::from("label,block\n");
            let owner = cut.assignment();
            for (label, block) in labels.iter().zip(owner) {
                let _ = writeln!(out, "{label},{block}");
            }
            out
        }
        _ => cut.display(labels) + "\n",
    })
}

/// Runs the pipeline and writes the rendered output to `--out` or `stdout`.
pub fn run_pipeline<W: Write>(config: &PipelineConfig, stdout: &mut W) -> Result<(), CliError> {
    let output = execute(config)?;
    let text = render(&output, config)?;
    match &config.out {
        Some(path) => std::fs::write(path, text)?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

/// Entry point used by the binary. Returns the process exit code.
pub fn main_with_args<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let result =
        parse_args(argv).and_then(|config| run_pipeline(&config, &mut std::io::stdout().lock()));
    match result {
        Ok(()) => 0,
        Err(CliError::Help(text)) => {
            print!("{text}");
            0
        }
        Err(CliError::Usage(msg)) if msg.starts_with("error:") => {
            eprint!("{msg}");
            2
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_maps_flags() {
        let c = parse_args(["--input", "pts.csv", "--mode", "points", "--q", "1"]).unwrap();
        assert_eq!(c.q, 1.0);
        assert_eq!(c.input_mode, InputMode::Points);
        assert_eq!(c.input_path, PathBuf::from("pts.csv"));
        assert_eq!(c.min_df, 1);
        assert_eq!(c.dump, [Dump::Schedule, Dump::Dendrogram]);
        assert_eq!(c.output_format, OutputFormat::Text);
    }

    #[test]
    fn parse_dump_list() {
        let c = parse_args([
            "--input",
            "d",
            "--dump",
            "closure,relation,closure",
            "--format",
            "json",
        ])
        .unwrap();
        assert_eq!(c.dump, [Dump::Closure, Dump::Relation]);
        assert_eq!(c.output_format, OutputFormat::Json);
    }

    #[test]
    fn parse_rejects_bad_input() {
        for argv in [
            vec!["--q", "0"],
            vec![],
            vec!["--input", "x", "--q", "0"],
            vec!["--input", "x", "--q", "-1"],
            vec!["--input", "x", "--alpha", "1.2"],
            vec!["--input", "x", "--min-df", "0"],
            vec!["--input", "x", "--bogus"],
            vec!["--input", "x", "--mode", "points", "--dump", "keywords"],
            vec!["--input", "x", "--dump", "closure", "--format", "dot"],
            vec!["--input", "x", "--dump", "dendrogram", "--format", "csv"],
        ] {
            let err = parse_args(argv.clone()).unwrap_err();
            assert_eq!(err.exit_code(), 2, "{argv:?}: {err}");
        }
    }

    #[test]
    fn help_is_not_an_error_exit() {
        assert_eq!(parse_args(["--help"]).unwrap_err().exit_code(), 0);
    }
}
