//! Document ingestion: tokenization, stop-word removal, keyword table and
//! the numeric points handed to the relation stage.
//!
//! Documents are read as UTF-8 from a directory, ordered by file name so
//! that document ids are stable across file systems. Tokens are maximal
//! runs of alphanumeric characters, lowercased.

use std::collections::{HashMap, HashSet};
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::relation::Dataset;
use crate::{Error, Result};

const DEFAULT_STOP_WORDS: &[&str] = &[
    "a", "an", "and", "are", "as", "at", "be", "but", "by", "for", "if", "in", "into", "is", "it",
    "no", "not", "of", "on", "or", "such", "that", "the", "their", "then", "there", "these",
    "they", "this", "to", "was", "will", "with",
];

/// Set of words dropped by [`tokenize`]. Lookups are case-insensitive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StopWordSet {
    words: HashSet<String>,
}

impl StopWordSet {
    pub fn new<I, S>(words: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        StopWordSet {
            words: words
                .into_iter()
                .map(|w| w.as_ref().trim().to_lowercase())
                .filter(|w| !w.is_empty())
                .collect(),
        }
    }

    /// Stop-word set with no entries.
    pub fn empty() -> Self {
        StopWordSet {
            words: HashSet::new(),
        }
    }

    /// Parses one word per line. Blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Self {
        StopWordSet::new(
            text.lines()
                .map(|line| line.split('#').next().unwrap_or("").trim())
                .filter(|line| !line.is_empty()),
        )
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        Ok(StopWordSet::parse(&read_utf8(path)?))
    }

    pub fn contains(&self, word: &str) -> bool {
        if word.chars().any(char::is_uppercase) {
            self.words.contains(&word.to_lowercase())
        } else {
            self.words.contains(word)
        }
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

impl Default for StopWordSet {
    fn default() -> Self {
        StopWordSet::new(DEFAULT_STOP_WORDS)
    }
}

/// Splits `raw_text` into lowercase alphanumeric runs and drops stop words.
pub fn tokenize(raw_text: &str, stops: &StopWordSet) -> Vec<String> {
    raw_text
        .to_lowercase()
        .split(|c: char| !c.is_alphanumeric())
        .filter(|run| !run.is_empty())
        .map(str::to_owned)
        .filter(|token| !stops.contains(token))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub doc_id: usize,
    pub name: String,
    pub tokens: Vec<String>,
}

impl Document {
    pub fn new(doc_id: usize, name: impl Into<String>, tokens: Vec<String>) -> Self {
        Document {
            doc_id,
            name: name.into(),
            tokens,
        }
    }
}

fn read_utf8(path: &Path) -> Result<String> {
    let bytes = fs::read(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    String::from_utf8(bytes).map_err(|e| Error::Undecodable {
        path: path.to_path_buf(),
        offset: e.utf8_error().valid_up_to(),
    })
}

/// Reads every regular file in `dir` (sorted by file name) into a
/// [`Document`], assigning doc ids 0, 1, 2, ... in that order.
pub fn load_corpus(dir: &Path, stops: &StopWordSet) -> Result<Vec<Document>> {
    let io_err = |source| Error::Io {
        path: dir.to_path_buf(),
        source,
    };
    let mut files: Vec<(String, PathBuf)> = Vec::new();
    for entry in fs::read_dir(dir).map_err(io_err)? {
        let entry = entry.map_err(io_err)?;
        let path = entry.path();
        if path.is_file() {
            files.push((entry.file_name().to_string_lossy().into_owned(), path));
        }
    }
    if files.is_empty() {
        return Err(Error::NoDocuments);
    }
    files.sort();

    files
        .into_iter()
        .enumerate()
        .map(|(doc_id, (name, path))| {
            let text = read_utf8(&path)?;
            Ok(Document::new(doc_id, name, tokenize(&text, stops)))
        })
        .collect()
}

/// Builds documents from in-memory `(name, text)` pairs, in the given order.
pub fn documents_from_texts<'a, I>(texts: I, stops: &StopWordSet) -> Vec<Document>
where
    I: IntoIterator<Item = (&'a str, &'a str)>,
{
    texts
        .into_iter()
        .enumerate()
        .map(|(doc_id, (name, text))| Document::new(doc_id, name, tokenize(text, stops)))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KeywordEntry {
    pub id: usize,
    pub keyword: String,
}

/// Corpus vocabulary with stable integer ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KeywordTable {
    keywords: Vec<String>,
    ids: HashMap<String, usize>,
    min_df: usize,
}

impl KeywordTable {
    /// Keeps tokens appearing in at least `min_df` distinct documents.
    /// Ids follow first occurrence, scanning documents in doc id order.
    pub fn build(docs: &[Document], min_df: usize) -> Result<Self> {
        if min_df == 0 {
            return Err(Error::InvalidMinDf);
        }
        if docs.is_empty() {
            return Err(Error::NoDocuments);
        }

        let mut ordered: Vec<&Document> = docs.iter().collect();
        ordered.sort_by_key(|d| d.doc_id);

        let mut first_seen: Vec<&str> = Vec::new();
        let mut df: HashMap<&str, usize> = HashMap::new();
        for doc in &ordered {
            let mut in_doc: HashSet<&str> = HashSet::new();
            for token in &doc.tokens {
                if in_doc.insert(token) {
                    let count = df.entry(token).or_insert(0);
                    if *count == 0 {
                        first_seen.push(token);
                    }
                    *count += 1;
                }
            }
        }

        let keywords: Vec<String> = first_seen
            .into_iter()
            .filter(|t| df[t] >= min_df)
            .map(str::to_owned)
            .collect();
        if keywords.is_empty() {
            return Err(Error::EmptyVocabulary);
        }
        let ids = keywords
            .iter()
            .enumerate()
            .map(|(i, k)| (k.clone(), i))
            .collect();
        Ok(KeywordTable {
            keywords,
            ids,
            min_df,
        })
    }

    pub fn id(&self, keyword: &str) -> Option<usize> {
        self.ids.get(keyword).copied()
    }

    pub fn keyword(&self, id: usize) -> Option<&str> {
        self.keywords.get(id).map(String::as_str)
    }

    pub fn min_df(&self) -> usize {
        self.min_df
    }

    pub fn len(&self) -> usize {
        self.keywords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keywords.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &str)> {
        self.keywords
            .iter()
            .enumerate()
            .map(|(i, k)| (i, k.as_str()))
    }

    pub fn entries(&self) -> Vec<KeywordEntry> {
        self.iter()
            .map(|(id, keyword)| KeywordEntry {
                id,
                keyword: keyword.to_owned(),
            })
            .collect()
    }

    /// JSON array of `{id, keyword}` objects.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.entries()).expect("keyword entries serialize")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Occurrence {
    pub label: String,
    pub keyword_id: usize,
    pub doc_id: usize,
}

/// One row per distinct (keyword, document) co-occurrence.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct OccurrenceTable {
    pub pairs: Vec<Occurrence>,
}

impl OccurrenceTable {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// CSV with header `label,keyword_id,doc_id`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("label,keyword_id,doc_id\n");
        for p in &self.pairs {
            out.push_str(&format!("{},{},{}\n", p.label, p.keyword_id, p.doc_id));
        }
        out
    }
}

/// Emits one 2-D point `(doc_id, keyword_id)` per distinct keyword/document
/// co-occurrence, ordered by doc id and then by the keyword's first position
/// inside the document. Labels are `x1..xn`.
pub fn occurrence_points(
    docs: &[Document],
    table: &KeywordTable,
) -> Result<(OccurrenceTable, Dataset)> {
    let mut ordered: Vec<&Document> = docs.iter().collect();
    ordered.sort_by_key(|d| d.doc_id);

    let mut pairs = Vec::new();
    let mut points = Vec::new();
    for doc in ordered {
        let mut seen: HashSet<usize> = HashSet::new();
        for token in &doc.tokens {
            let Some(keyword_id) = table.id(token) else {
                continue;
            };
            if seen.insert(keyword_id) {
                pairs.push(Occurrence {
                    label: format!("x{}", pairs.len() + 1),
                    keyword_id,
                    doc_id: doc.doc_id,
                });
                points.push(vec![doc.doc_id as f64, keyword_id as f64]);
            }
        }
    }
    if pairs.is_empty() {
        return Err(Error::EmptyOccurrences);
    }
    let labels = pairs.iter().map(|p| p.label.clone()).collect();
    let data = Dataset::new(points, labels)?;
    Ok((OccurrenceTable { pairs }, data))
}

/// Raw term-count vectors: one point per document, one coordinate per
/// keyword. Points are labelled with the document names.
pub fn tf_vectors(docs: &[Document], table: &KeywordTable) -> Result<Dataset> {
    let mut ordered: Vec<&Document> = docs.iter().collect();
    ordered.sort_by_key(|d| d.doc_id);

    let points = ordered
        .iter()
        .map(|doc| {
            let mut counts = vec![0.0; table.len()];
            for id in doc.tokens.iter().filter_map(|t| table.id(t)) {
                counts[id] += 1.0;
            }
            counts
        })
        .collect();
    let labels = ordered.iter().map(|d| d.name.clone()).collect();
    Dataset::new(points, labels)
}
