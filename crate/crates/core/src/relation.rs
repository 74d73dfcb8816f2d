//! Datasets, Minkowski distances and the fuzzy compatibility relation.

use std::fmt::Write as _;
use std::io::Read;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Entries this far outside `[0, 1]` are clamped; anything further is rejected.
const RANGE_SLACK: f64 = 1e-12;

/// Ordered, labelled set of points sharing one dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    points: Vec<Vec<f64>>,
    labels: Vec<String>,
}

impl Dataset {
    pub fn new(points: Vec<Vec<f64>>, labels: Vec<String>) -> Result<Self> {
        if labels.len() != points.len() {
            return Err(Error::LabelCount {
                expected: points.len(),
                got: labels.len(),
            });
        }
        if let Some(first) = points.first() {
            let dim = first.len();
            if dim == 0 {
                return Err(Error::ZeroDimension);
            }
            for (i, p) in points.iter().enumerate() {
                if p.len() != dim {
                    return Err(Error::DimensionMismatch {
                        expected: dim,
                        got: p.len(),
                    });
                }
                if p.iter().any(|v| !v.is_finite()) {
                    return Err(Error::NonFinite { point: i });
                }
            }
        }
        Ok(Dataset { points, labels })
    }

    /// Labels the points `x1..xn`.
    pub fn from_points(points: Vec<Vec<f64>>) -> Result<Self> {
        let labels = (1..=points.len()).map(|i| format!("x{i}")).collect();
        Dataset::new(points, labels)
    }

    /// Reads point-mode CSV. A header row is required; when its first column
    /// is named `label` that column supplies the labels, otherwise points are
    /// labelled `x1..xn`. All other columns are real coordinates.
    pub fn from_csv_reader<R: Read>(reader: R) -> Result<Self> {
        let bad = |e: csv::Error| Error::PointsCsv(e.to_string());
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(true)
            .trim(csv::Trim::All)
            .from_reader(reader);
        let headers = rdr.headers().map_err(bad)?.clone();
        let has_label = headers
            .get(0)
            .is_some_and(|h| h.eq_ignore_ascii_case("label"));
        let skip = usize::from(has_label);
        if headers.len() <= skip {
            return Err(Error::ZeroDimension);
        }

        let mut points = Vec::new();
        let mut labels = Vec::new();
        for (row, record) in rdr.records().enumerate() {
            let record = record.map_err(bad)?;
            if has_label {
                labels.push(record.get(0).unwrap_or_default().to_owned());
            } else {
                labels.push(format!("x{}", row + 1));
            }
            let coords = record
                .iter()
                .skip(skip)
                .map(|field| {
                    field.parse::<f64>().map_err(|_| {
                        Error::PointsCsv(format!("row {}: not a number: {field:?}", row + 1))
                    })
                })
                .collect::<Result<Vec<f64>>>()?;
            points.push(coords);
        }
        Dataset::new(points, labels)
    }

    pub fn from_csv_path(path: &Path) -> Result<Self> {
        let file = std::fs::File::open(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Dataset::from_csv_reader(file)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Coordinate count `p` (0 for an empty dataset).
    pub fn dim(&self) -> usize {
        self.points.first().map_or(0, Vec::len)
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.points[i]
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// CSV with a `label` column followed by `c1..cp`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("label");
        for j in 1..=self.dim() {
            let _ = write!(out, ",c{j}");
        }
        out.push('\n');
        for (label, p) in self.labels.iter().zip(&self.points) {
            out.push_str(label);
            for v in p {
                let _ = write!(out, ",{v}");
            }
            out.push('\n');
        }
        out
    }
}

fn check_exponent(q: f64) -> Result<()> {
    if q.is_finite() && q > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidExponent(q))
    }
}

/// `(Σ_j |a_j - b_j|^q)^(1/q)`.
pub fn minkowski_distance(a: &[f64], b: &[f64], q: f64) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch {
            expected: a.len(),
            got: b.len(),
        });
    }
    check_exponent(q)?;
    Ok(minkowski_unchecked(a, b, q))
}

fn minkowski_unchecked(a: &[f64], b: &[f64], q: f64) -> f64 {
    let diffs = a.iter().zip(b).map(|(x, y)| (x - y).abs());
    if q == 1.0 {
        diffs.sum()
    } else if q == 2.0 {
        diffs.map(|d| d * d).sum::<f64>().sqrt()
    } else {
        diffs.map(|d| d.powf(q)).sum::<f64>().powf(1.0 / q)
    }
}

/// Exponent and normalizer used to build a compatibility relation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DistanceParams {
    pub q: f64,
    /// Reciprocal of `diameter`.
    pub delta: f64,
    /// Largest pairwise distance in the dataset.
    pub diameter: f64,
}

fn diameter(data: &Dataset, q: f64) -> Result<f64> {
    if data.len() < 2 {
        return Err(Error::TooFewPoints {
            needed: 2,
            got: data.len(),
        });
    }
    check_exponent(q)?;
    let mut d_max = 0.0f64;
    for i in 0..data.len() {
        for k in i + 1..data.len() {
            d_max = d_max.max(minkowski_unchecked(data.point(i), data.point(k), q));
        }
    }
    if d_max == 0.0 {
        return Err(Error::DegenerateDataset);
    }
    Ok(d_max)
}

/// `δ = 1 / d_max`, the reciprocal of the largest pairwise distance.
pub fn compute_delta(data: &Dataset, q: f64) -> Result<f64> {
    Ok(1.0 / diameter(data, q)?)
}

/// Builds `R(x_i, x_k) = 1 - δ·d_q(x_i, x_k)`.
///
/// Entries are computed as `1 - d / d_max` so that the diameter pair lands on
/// exactly 0 and the diagonal on exactly 1.
pub fn compatibility_relation(data: &Dataset, q: f64) -> Result<(FuzzyRelation, DistanceParams)> {
    let d_max = diameter(data, q)?;
    let n = data.len();
    let mut values = vec![0.0; n * n];
    for i in 0..n {
        values[i * n + i] = 1.0;
        for k in i + 1..n {
            let d = minkowski_unchecked(data.point(i), data.point(k), q);
            let r = (1.0 - d / d_max).clamp(0.0, 1.0);
            values[i * n + k] = r;
            values[k * n + i] = r;
        }
    }
    let relation = FuzzyRelation {
        labels: data.labels().to_vec(),
        values,
    };
    Ok((
        relation,
        DistanceParams {
            q,
            delta: 1.0 / d_max,
            diameter: d_max,
        },
    ))
}

/// Square matrix of membership degrees in `[0, 1]` over a labelled set.
#[derive(Debug, Clone, PartialEq)]
pub struct FuzzyRelation {
    labels: Vec<String>,
    values: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    labels: Vec<String>,
    values: Vec<Vec<f64>>,
}

impl FuzzyRelation {
    /// Builds a relation from rows, clamping entries within `1e-12` of the
    /// unit interval and rejecting anything further out.
    pub fn from_rows(labels: Vec<String>, rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = rows.len();
        if labels.len() != n {
            return Err(Error::LabelCount {
                expected: n,
                got: labels.len(),
            });
        }
        let mut values = Vec::with_capacity(n * n);
        for (row, r) in rows.into_iter().enumerate() {
            if r.len() != n {
                return Err(Error::NotSquare {
                    row,
                    len: r.len(),
                    expected: n,
                });
            }
            for (col, v) in r.into_iter().enumerate() {
                if !(-RANGE_SLACK..=1.0 + RANGE_SLACK).contains(&v) {
                    return Err(Error::OutOfRange { row, col, value: v });
                }
                values.push(v.clamp(0.0, 1.0));
            }
        }
        Ok(FuzzyRelation { labels, values })
    }

    /// Like [`FuzzyRelation::from_rows`] with labels `x1..xn`.
    pub fn from_unlabelled_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let labels = (1..=rows.len()).map(|i| format!("x{i}")).collect();
        FuzzyRelation::from_rows(labels, rows)
    }

    /// Crisp equality relation: 1 on the diagonal, 0 elsewhere.
    pub fn identity(labels: Vec<String>) -> Self {
        let n = labels.len();
        let mut values = vec![0.0; n * n];
        for i in 0..n {
            values[i * n + i] = 1.0;
        }
        FuzzyRelation { labels, values }
    }

    pub(crate) fn from_parts(labels: Vec<String>, values: Vec<f64>) -> Self {
        debug_assert_eq!(values.len(), labels.len() * labels.len());
        FuzzyRelation { labels, values }
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    #[inline]
    pub fn get(&self, i: usize, k: usize) -> f64 {
        self.values[i * self.size() + k]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        let n = self.size();
        &self.values[i * n..(i + 1) * n]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        (0..self.size()).map(|i| self.row(i).to_vec()).collect()
    }

    /// Row-major entries.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.size()).all(|i| self.get(i, i) == 1.0)
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.size();
        (0..n).all(|i| (i + 1..n).all(|k| self.get(i, k) == self.get(k, i)))
    }

    /// `R[i][k] >= min(R[i][j], R[j][k]) - tol` for every triple.
    pub fn is_max_min_transitive(&self, tol: f64) -> bool {
        let n = self.size();
        (0..n).all(|i| {
            (0..n)
                .all(|j| (0..n).all(|k| self.get(i, k) >= self.get(i, j).min(self.get(j, k)) - tol))
        })
    }

    /// Largest absolute entrywise difference. Panics on size mismatch.
    pub fn max_abs_diff(&self, other: &FuzzyRelation) -> f64 {
        assert_eq!(self.size(), other.size(), "relation sizes differ");
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// `{"labels": [...], "values": [[...]]}` at full precision.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_repr()).expect("matrix serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let repr: MatrixRepr =
            serde_json::from_str(text).map_err(|e| Error::MatrixJson(e.to_string()))?;
        FuzzyRelation::from_rows(repr.labels, repr.values)
    }

    pub(crate) fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self.to_repr()).expect("matrix serializes")
    }

    fn to_repr(&self) -> MatrixRepr {
        MatrixRepr {
            labels: self.labels.clone(),
            values: self.rows(),
        }
    }

    /// CSV with a label header row and a label first column, full precision.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("label");
        for l in &self.labels {
            let _ = write!(out, ",{l}");
        }
        out.push('\n');
        for (i, l) in self.labels.iter().enumerate() {
            out.push_str(l);
            for v in self.row(i) {
                let _ = write!(out, ",{v}");
            }
            out.push('\n');
        }
        out
    }

    /// Whitespace-aligned table rounded to two decimals.
    pub fn to_text(&self) -> String {
        let width = self
            .labels
            .iter()
            .map(String::len)
            .max()
            .unwrap_or(0)
            .max(4);
        let mut out = format!("{:width$}", "");
        for l in &self.labels {
            let _ = write!(out, " {l:>width$}");
        }
        out.push('\n');
        for (i, l) in self.labels.iter().enumerate() {
            let _ = write!(out, "{l:width$}");
            for v in self.row(i) {
                let _ = write!(out, " {v:>width$.2}");
            }
            out.push('\n');
        }
        out
    }
}
