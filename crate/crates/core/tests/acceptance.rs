//! Acceptance criteria for the clustering pipeline, one line per criterion.
//!
//! Run with `cargo test -p fuzzy-equiv --test acceptance`.

#![allow(clippy::needless_range_loop)]

use std::path::PathBuf;
use std::process::ExitCode;

use fuzzy_equiv::closure::{path_strength_oracle, transitive_closure};
use fuzzy_equiv::partition::{
    alpha_cut, build_dendrogram, connected_components_oracle, partition_schedule,
};
use fuzzy_equiv::relation::{compatibility_relation, Dataset};
use fuzzy_equiv::text_ingest::{load_corpus, occurrence_points, KeywordTable, StopWordSet};
use fuzzy_equiv::{FuzzyRelation, Partition};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const FIGURE_TOL: f64 = 0.005;
const DELTA_Q1_TOL: f64 = 0.003;
const CLOSURE_TOL: f64 = 1e-12;
const ORACLE_TOL: f64 = 1e-9;
const GEOMETRY_TOL: f64 = 1e-12;
const RANDOM_MATRICES: usize = 200;
const RANDOM_DATASETS: usize = 100;

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

const SIX_POINTS: [[f64; 2]; 6] = [
    [0.0, 0.0],
    [1.0, 1.0],
    [1.0, 2.0],
    [2.0, 3.0],
    [2.0, 0.0],
    [3.0, 4.0],
];

// Compatibility matrices as printed (two decimals) for q = 2 and q = 1.
const PRINTED_Q2: [[f64; 6]; 6] = [
    [1.0, 0.72, 0.55, 0.28, 0.6, 0.0],
    [0.72, 1.0, 0.8, 0.55, 0.72, 0.28],
    [0.55, 0.8, 1.0, 0.72, 0.55, 0.43],
    [0.28, 0.55, 0.72, 1.0, 0.4, 0.72],
    [0.6, 0.72, 0.55, 0.4, 1.0, 0.18],
    [0.0, 0.28, 0.43, 0.72, 0.18, 1.0],
];
const PRINTED_Q1: [[f64; 6]; 6] = [
    [1.0, 0.71, 0.57, 0.29, 0.71, 0.0],
    [0.71, 1.0, 0.86, 0.57, 0.71, 0.29],
    [0.57, 0.86, 1.0, 0.71, 0.57, 0.43],
    [0.29, 0.57, 0.71, 1.0, 0.57, 0.71],
    [0.71, 0.71, 0.57, 0.57, 1.0, 0.29],
    [0.0, 0.29, 0.43, 0.71, 0.29, 1.0],
];

fn six_point_dataset() -> Dataset {
    Dataset::from_points(SIX_POINTS.iter().map(|p| p.to_vec()).collect()).unwrap()
}

fn expected_partitions() -> Vec<Partition> {
    vec![
        Partition::new(vec![(0..6).collect()]),
        Partition::new(vec![vec![0], vec![1, 2], vec![3], vec![4], vec![5]]),
        Partition::singletons(6),
    ]
}

fn compare_printed(r: &FuzzyRelation, printed: &[[f64; 6]; 6], what: &str) -> Check {
    for i in 0..6 {
        for k in 0..6 {
            let diff = (r.get(i, k) - printed[i][k]).abs();
            ensure(diff <= FIGURE_TOL, || {
                format!(
                    "{what}[x{}][x{}] = {:.5}, printed {}",
                    i + 1,
                    k + 1,
                    r.get(i, k),
                    printed[i][k]
                )
            })?;
        }
    }
    Ok(())
}

fn check_closure_shape(rt: &FuzzyRelation, base: f64, pair: f64) -> Check {
    for i in 0..6 {
        for k in 0..6 {
            let want = if i == k {
                1.0
            } else if (i, k) == (1, 2) || (i, k) == (2, 1) {
                pair
            } else {
                base
            };
            ensure((rt.get(i, k) - want).abs() <= FIGURE_TOL, || {
                format!(
                    "closure[x{}][x{}] = {:.5}, expected {want}",
                    i + 1,
                    k + 1,
                    rt.get(i, k)
                )
            })?;
        }
    }
    Ok(())
}

fn check_schedule(rt: &FuzzyRelation, low: f64, high: f64) -> Check {
    let schedule = partition_schedule(rt);
    let rows = schedule.rows();
    ensure(rows.len() == 3, || format!("{} schedule rows", rows.len()))?;
    let parts: Vec<Partition> = rows.iter().map(|r| r.partition.clone()).collect();
    ensure(parts == expected_partitions(), || {
        format!("partitions {parts:?}")
    })?;
    ensure((rows[0].upper - low).abs() <= FIGURE_TOL, || {
        format!("first threshold {}", rows[0].upper)
    })?;
    ensure((rows[1].upper - high).abs() <= FIGURE_TOL, || {
        format!("second threshold {}", rows[1].upper)
    })?;
    ensure(rows[0].lower == 0.0 && !rows[0].lower_open, || {
        "first row must be [0, v1]".into()
    })?;
    ensure(rows[2].upper == 1.0, || "last row must end at 1".into())
}

fn c1_occurrence_points() -> Check {
    let docs = load_corpus(&fixtures().join("corpus"), &StopWordSet::default())
        .map_err(|e| e.to_string())?;
    ensure(docs.len() == 4, || format!("{} documents", docs.len()))?;
    let table = KeywordTable::build(&docs, 1).map_err(|e| e.to_string())?;
    let keywords: Vec<_> = table.iter().map(|(_, k)| k).collect();
    ensure(
        keywords == ["cluster", "web", "document", "fuzzy", "outlier"],
        || format!("{keywords:?}"),
    )?;
    let (_, data) = occurrence_points(&docs, &table).map_err(|e| e.to_string())?;
    let got: Vec<Vec<f64>> = data.points().to_vec();
    let want: Vec<Vec<f64>> = SIX_POINTS.iter().map(|p| p.to_vec()).collect();
    ensure(got == want, || format!("points {got:?}"))
}

fn c2_relation_q2() -> Check {
    let (r, params) = compatibility_relation(&six_point_dataset(), 2.0).map_err(|e| e.to_string())?;
    ensure(params.delta == 0.2, || format!("delta = {}", params.delta))?;
    compare_printed(&r, &PRINTED_Q2, "R")
}

fn c3_closure_q2() -> Check {
    let (r, _) = compatibility_relation(&six_point_dataset(), 2.0).map_err(|e| e.to_string())?;
    check_closure_shape(&transitive_closure(&r).0, 0.72, 0.8)
}

fn c4_schedule_q2() -> Check {
    let (r, _) = compatibility_relation(&six_point_dataset(), 2.0).map_err(|e| e.to_string())?;
    check_schedule(&transitive_closure(&r).0, 0.72, 0.8)
}

fn c5_q1() -> Check {
    let (r, params) = compatibility_relation(&six_point_dataset(), 1.0).map_err(|e| e.to_string())?;
    ensure((params.delta - 0.14).abs() <= DELTA_Q1_TOL, || {
        format!("delta = {}", params.delta)
    })?;
    compare_printed(&r, &PRINTED_Q1, "R")?;
    let (rt, _) = transitive_closure(&r);
    check_closure_shape(&rt, 0.71, 0.86)?;
    check_schedule(&rt, 0.71, 0.86)
}

fn c6_q_robustness() -> Check {
    let sequence = |q: f64| -> Result<Vec<Partition>, String> {
        let (r, _) = compatibility_relation(&six_point_dataset(), q).map_err(|e| e.to_string())?;
        let schedule = partition_schedule(&transitive_closure(&r).0);
        Ok(schedule
            .rows()
            .iter()
            .map(|row| row.partition.clone())
            .collect())
    };
    let (s1, s2) = (sequence(1.0)?, sequence(2.0)?);
    ensure(s1 == s2, || format!("q=1 {s1:?} vs q=2 {s2:?}"))
}

fn random_matrices() -> Vec<FuzzyRelation> {
    const LEVELS: [f64; 6] = [0.0, 0.2, 0.4, 0.6, 0.8, 1.0];
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    (0..RANDOM_MATRICES)
        .map(|_| {
            let n = rng.random_range(2..=8);
            let mut rows = vec![vec![0.0; n]; n];
            for i in 0..n {
                rows[i][i] = 1.0;
                for k in i + 1..n {
                    let v = LEVELS[rng.random_range(0..LEVELS.len())];
                    rows[i][k] = v;
                    rows[k][i] = v;
                }
            }
            FuzzyRelation::from_unlabelled_rows(rows).unwrap()
        })
        .collect()
}

fn c7_closure_axioms() -> Check {
    for (m, r) in random_matrices().iter().enumerate() {
        let (rt, _) = transitive_closure(r);
        let n = r.size();
        ensure(rt.is_reflexive(), || format!("matrix {m}: not reflexive"))?;
        ensure(rt.is_symmetric(), || format!("matrix {m}: not symmetric"))?;
        ensure(rt.is_max_min_transitive(CLOSURE_TOL), || {
            format!("matrix {m}: not transitive")
        })?;
        for i in 0..n {
            for k in 0..n {
                ensure(rt.get(i, k) >= r.get(i, k), || {
                    format!("matrix {m}: ({i},{k}) decreased")
                })?;
            }
        }
        let (again, rounds) = transitive_closure(&rt);
        ensure(again == rt && rounds == 1, || {
            format!("matrix {m}: closure not idempotent")
        })?;
    }
    Ok(())
}

fn c8_oracles() -> Check {
    let mut checked = 0;
    for (m, r) in random_matrices()
        .iter()
        .enumerate()
        .filter(|(_, r)| r.size() <= 7)
    {
        let (rt, _) = transitive_closure(r);
        let oracle = path_strength_oracle(r).map_err(|e| e.to_string())?;
        let diff = rt.max_abs_diff(&oracle);
        ensure(diff <= ORACLE_TOL, || {
            format!("matrix {m}: closure vs path oracle differ by {diff}")
        })?;
        let mut levels: Vec<f64> = rt.values().to_vec();
        levels.sort_by(f64::total_cmp);
        levels.dedup();
        for alpha in levels {
            let cut = alpha_cut(&rt, alpha).map_err(|e| e.to_string())?;
            let components = connected_components_oracle(r, alpha).map_err(|e| e.to_string())?;
            ensure(cut == components, || {
                format!("matrix {m}, alpha {alpha}: {cut:?} vs {components:?}")
            })?;
        }
        checked += 1;
    }
    ensure(checked > 0, || "no matrices with n <= 7".into())
}

struct RandomDataset {
    data: Dataset,
    q: f64,
    shift: Vec<f64>,
    scale: f64,
}

fn random_datasets() -> Vec<RandomDataset> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    (0..RANDOM_DATASETS)
        .map(|i| {
            let n = rng.random_range(2..=10);
            let p = rng.random_range(1..=5);
            let points = (0..n)
                .map(|_| (0..p).map(|_| rng.random_range(-10.0..10.0)).collect())
                .collect();
            let q = match i % 3 {
                0 => 1.0,
                1 => 2.0,
                _ => rng.random_range(0.5..4.0),
            };
            RandomDataset {
                data: Dataset::from_points(points).unwrap(),
                q,
                shift: (0..p).map(|_| rng.random_range(-10.0..10.0)).collect(),
                scale: rng.random_range(0.1..10.0),
            }
        })
        .collect()
}

fn c9_geometry() -> Check {
    for (m, case) in random_datasets().iter().enumerate() {
        let (r, _) = compatibility_relation(&case.data, case.q).map_err(|e| e.to_string())?;
        let n = r.size();
        ensure((0..n).all(|i| r.get(i, i) == 1.0), || {
            format!("dataset {m}: diagonal not exactly 1")
        })?;
        let min_off = (0..n)
            .flat_map(|i| (0..n).filter(move |&k| k != i).map(move |k| (i, k)))
            .map(|(i, k)| r.get(i, k))
            .fold(f64::INFINITY, f64::min);
        ensure(min_off == 0.0, || {
            format!("dataset {m}: min off-diagonal {min_off}")
        })?;

        let transform = |f: &dyn Fn(usize, f64) -> f64| {
            let pts = case
                .data
                .points()
                .iter()
                .map(|p| p.iter().enumerate().map(|(j, &v)| f(j, v)).collect())
                .collect();
            Dataset::from_points(pts).unwrap()
        };
        let shifted = transform(&|j, v| v + case.shift[j]);
        let scaled = transform(&|_, v| v * case.scale);
        for (name, moved) in [("translation", shifted), ("scaling", scaled)] {
            let (r2, _) = compatibility_relation(&moved, case.q).map_err(|e| e.to_string())?;
            let diff = r.max_abs_diff(&r2);
            ensure(diff <= GEOMETRY_TOL, || {
                format!("dataset {m}: {name} moved entries by {diff:e}")
            })?;
        }
    }
    Ok(())
}

fn c10_dendrogram_round_trip() -> Check {
    for (m, case) in random_datasets().iter().enumerate() {
        let (r, _) = compatibility_relation(&case.data, case.q).map_err(|e| e.to_string())?;
        let schedule = partition_schedule(&transitive_closure(&r).0);
        let tree = build_dendrogram(&schedule).map_err(|e| format!("dataset {m}: {e}"))?;
        for row in schedule.rows() {
            let cut = tree.cut(row.upper).map_err(|e| e.to_string())?;
            ensure(cut == row.partition, || {
                format!(
                    "dataset {m}, alpha {}: {cut:?} vs {:?}",
                    row.upper, row.partition
                )
            })?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: &[Criterion] = &[
        (
            "AC1 fixture corpus yields the six occurrence points",
            c1_occurrence_points,
        ),
        (
            "AC2 compatibility relation q=2 (delta 0.20, printed matrix +/-0.005)",
            c2_relation_q2,
        ),
        ("AC3 transitive closure q=2 (0.72 / 0.8)", c3_closure_q2),
        ("AC4 alpha-cut schedule q=2 (3 rows)", c4_schedule_q2),
        (
            "AC5 q=1 relation, closure and schedule (delta 0.14, 0.71 / 0.86)",
            c5_q1,
        ),
        (
            "AC6 identical partition sequences for q=1 and q=2",
            c6_q_robustness,
        ),
        (
            "AC7 closure axioms on 200 random relations",
            c7_closure_axioms,
        ),
        ("AC8 closure and alpha-cuts agree with oracles", c8_oracles),
        (
            "AC9 relation invariant to translation and scaling",
            c9_geometry,
        ),
        (
            "AC10 dendrogram cuts reproduce every schedule row",
            c10_dendrogram_round_trip,
        ),
    ];

    let mut failed = 0;
    for &(name, check) in criteria {
        match check() {
            Ok(()) => println!("PASS  {name}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}: {why}");
            }
        }
    }
    println!(
        "{} of {} acceptance criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
