//! Max-min composition and transitive closure of fuzzy relations.
//!
//! The closure is computed by iterating `R' = R ∪ (R ∘ R)` until the relation
//! stops changing. For a reflexive relation every round squares the relation,
//! so the number of rounds is bounded by `⌈log2 n⌉ + 1`.
//!
//! Two path-strength routes are provided for checking the result: an
//! exhaustive simple-path enumerator and an incremental minimax sweep.

use crate::relation::FuzzyRelation;
use crate::{Error, Result};

/// Per-entry tolerance of the fixpoint test.
pub const FIXPOINT_TOLERANCE: f64 = 1e-12;

/// Largest relation [`path_strength_oracle`] will enumerate.
pub const ORACLE_LIMIT: usize = 10;

fn check_compatible(r: &FuzzyRelation, s: &FuzzyRelation) -> Result<()> {
    if r.size() != s.size() {
        return Err(Error::SizeMismatch {
            left: r.size(),
            right: s.size(),
        });
    }
    if r.labels() != s.labels() {
        return Err(Error::LabelMismatch);
    }
    Ok(())
}

/// `T[i][k] = max_j min(R[i][j], S[j][k])`.
pub fn max_min_compose(r: &FuzzyRelation, s: &FuzzyRelation) -> Result<FuzzyRelation> {
    check_compatible(r, s)?;
    Ok(compose_unchecked(r, s))
}

fn compose_unchecked(r: &FuzzyRelation, s: &FuzzyRelation) -> FuzzyRelation {
    let n = r.size();
    let mut values = vec![0.0; n * n];
    for i in 0..n {
        let row = r.row(i);
        let out = &mut values[i * n..(i + 1) * n];
        for (j, &rij) in row.iter().enumerate() {
            if rij == 0.0 {
                continue;
            }
            for (t, &sjk) in out.iter_mut().zip(s.row(j)) {
                let m = rij.min(sjk);
                if m > *t {
                    *t = m;
                }
            }
        }
    }
    FuzzyRelation::from_parts(r.labels().to_vec(), values)
}

/// Entrywise maximum.
pub fn fuzzy_union(r: &FuzzyRelation, s: &FuzzyRelation) -> Result<FuzzyRelation> {
    check_compatible(r, s)?;
    Ok(union_unchecked(r, s))
}

fn union_unchecked(r: &FuzzyRelation, s: &FuzzyRelation) -> FuzzyRelation {
    let values = r
        .values()
        .iter()
        .zip(s.values())
        .map(|(a, b)| a.max(*b))
        .collect();
    FuzzyRelation::from_parts(r.labels().to_vec(), values)
}

/// Smallest max-min transitive relation containing `r`, together with the
/// number of `R ← R ∪ (R ∘ R)` rounds performed (the last round is the one
/// that observed no change).
pub fn transitive_closure(r: &FuzzyRelation) -> (FuzzyRelation, usize) {
    let mut current = r.clone();
    let mut rounds = 0;
    loop {
        rounds += 1;
        let next = union_unchecked(&current, &compose_unchecked(&current, &current));
        if next.max_abs_diff(&current) <= FIXPOINT_TOLERANCE {
            return (next, rounds);
        }
        current = next;
    }
}

/// Strength of the strongest simple path between every pair, found by
/// enumerating all simple paths. Exponential; limited to [`ORACLE_LIMIT`]
/// points. The diagonal is copied from `r`.
pub fn path_strength_oracle(r: &FuzzyRelation) -> Result<FuzzyRelation> {
    let n = r.size();
    if n > ORACLE_LIMIT {
        return Err(Error::OracleLimit {
            limit: ORACLE_LIMIT,
            got: n,
        });
    }
    let mut best = vec![0.0; n * n];
    let mut visited = vec![false; n];
    for start in 0..n {
        visited[start] = true;
        walk(
            r,
            start,
            f64::INFINITY,
            &mut visited,
            &mut best[start * n..(start + 1) * n],
        );
        visited[start] = false;
        best[start * n + start] = r.get(start, start);
    }
    Ok(FuzzyRelation::from_parts(r.labels().to_vec(), best))
}

fn walk(r: &FuzzyRelation, at: usize, strength: f64, visited: &mut [bool], best: &mut [f64]) {
    for next in 0..r.size() {
        if visited[next] {
            continue;
        }
        let s = strength.min(r.get(at, next));
        if s > best[next] {
            best[next] = s;
        }
        visited[next] = true;
        walk(r, next, s, visited, best);
        visited[next] = false;
    }
}

/// Strongest-path relation by an incremental minimax sweep over
/// intermediate points. `O(n³)`, usable at any size.
pub fn minimax_path_strength(r: &FuzzyRelation) -> FuzzyRelation {
    let n = r.size();
    let mut t = r.values().to_vec();
    for j in 0..n {
        for i in 0..n {
            let tij = t[i * n + j];
            for k in 0..n {
                let via = tij.min(t[j * n + k]);
                if via > t[i * n + k] {
                    t[i * n + k] = via;
                }
            }
        }
    }
    FuzzyRelation::from_parts(r.labels().to_vec(), t)
}
