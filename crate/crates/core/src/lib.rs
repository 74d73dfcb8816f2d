//! Fuzzy hierarchical clustering through fuzzy equivalence relations.
//!
//! The pipeline runs in five stages, one module each:
//!
//! - [`text_ingest`]: tokenize a folder of documents, build the keyword
//!   table and turn keyword/document co-occurrences into numeric points.
//! - [`relation`]: build the fuzzy compatibility relation
//!   `R(x_i, x_k) = 1 - δ·d_q(x_i, x_k)` from Minkowski distances, with
//!   `δ` the reciprocal of the dataset diameter.
//! - [`closure`]: max-min transitive closure of that relation by iterating
//!   `R ← R ∪ (R ∘ R)` to a fixpoint, plus path-strength oracles.
//! - [`partition`]: α-cut partitions of the closure, the full α-cut
//!   schedule and the dendrogram built from it.
//! - [`cli`]: configuration, orchestration and output rendering used by the
//!   `fuzzy-equiv` binary.
//!
//! ```
//! use fuzzy_equiv::{closure, partition, relation::{self, Dataset}};
//!
//! let data = Dataset::from_points(vec![
//!     vec![0.0, 0.0], vec![1.0, 1.0], vec![1.0, 2.0],
//!     vec![2.0, 3.0], vec![2.0, 0.0], vec![3.0, 4.0],
//! ]).unwrap();
//! let (r, params) = relation::compatibility_relation(&data, 2.0).unwrap();
//! assert!((params.delta - 0.2).abs() < 1e-12);
//!
//! let (rt, _) = closure::transitive_closure(&r);
//! let schedule = partition::partition_schedule(&rt);
//! assert_eq!(schedule.rows().len(), 3);
//! ```

pub mod cli;
pub mod closure;
mod error;
pub mod partition;
pub mod relation;
pub mod text_ingest;

pub use error::{Error, Result};
pub use partition::{AlphaCutSchedule, Dendrogram, Partition};
pub use relation::{Dataset, DistanceParams, FuzzyRelation};
pub use text_ingest::{Document, KeywordTable, OccurrenceTable, StopWordSet};
