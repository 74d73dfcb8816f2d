//! α-cut partitions, the α-cut schedule of a closure and its dendrogram.
//!
//! A closure `R_T` is a fuzzy equivalence relation, so thresholding it at any
//! `α` gives a crisp equivalence relation. As `α` grows the partitions only
//! split, which is what makes the schedule a hierarchy.

use std::collections::VecDeque;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{json, Value};

use crate::relation::FuzzyRelation;
use crate::{Error, Result};

/// Closure values closer than this are one α-level.
pub const LEVEL_TOLERANCE: f64 = 1e-9;

/// Disjoint blocks of point indices covering `0..n`.
///
/// Canonical form: members ascending, blocks ordered by their smallest
/// member. Two partitions of the same points compare equal iff they group
/// the points the same way.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    /// Canonicalizes `blocks`. Does not check coverage or disjointness.
    pub fn new(mut blocks: Vec<Vec<usize>>) -> Self {
        blocks.retain(|b| !b.is_empty());
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        Partition { blocks }
    }

    /// Builds a partition from a block id per point.
    pub fn from_assignment(assignment: &[usize]) -> Self {
        let mut first_index: Vec<Option<usize>> = Vec::new();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for (point, &block) in assignment.iter().enumerate() {
            if block >= first_index.len() {
                first_index.resize(block + 1, None);
            }
            let slot = *first_index[block].get_or_insert_with(|| {
                blocks.push(Vec::new());
                blocks.len() - 1
            });
            blocks[slot].push(point);
        }
        Partition { blocks }
    }

    pub fn singletons(n: usize) -> Self {
        Partition {
            blocks: (0..n).map(|i| vec![i]).collect(),
        }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Number of points covered.
    pub fn point_count(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    /// Block index of every point.
    pub fn assignment(&self) -> Vec<usize> {
        let mut out = vec![usize::MAX; self.point_count()];
        for (b, block) in self.blocks.iter().enumerate() {
            for &i in block {
                out[i] = b;
            }
        }
        out
    }

    /// `true` if every block of `self` lies inside a block of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        let owner = coarser.assignment();
        self.blocks
            .iter()
            .all(|b| b.iter().all(|&i| owner.get(i) == owner.get(b[0])))
    }

    pub fn labelled<'a>(&self, labels: &'a [String]) -> Vec<Vec<&'a str>> {
        self.blocks
            .iter()
            .map(|b| b.iter().map(|&i| labels[i].as_str()).collect())
            .collect()
    }

    /// `{x2,x3}, {x1}, ...` style rendering.
    pub fn display(&self, labels: &[String]) -> String {
        self.labelled(labels)
            .iter()
            .map(|b| format!("{{{}}}", b.join(",")))
            .collect::<Vec<_>>()
            .join(", ")
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if (0.0..=1.0).contains(&alpha) {
        Ok(())
    } else {
        Err(Error::AlphaOutOfRange(alpha))
    }
}

/// Groups `i` and `k` together iff `RT[i][k] >= alpha`.
///
/// `rt` is expected to be a closure; on a non-transitive relation the blocks
/// are seeded by their smallest member and may not be an equivalence.
pub fn alpha_cut(rt: &FuzzyRelation, alpha: f64) -> Result<Partition> {
    check_alpha(alpha)?;
    Ok(alpha_cut_unchecked(rt, alpha))
}

fn alpha_cut_unchecked(rt: &FuzzyRelation, alpha: f64) -> Partition {
    let n = rt.size();
    let mut assigned = vec![false; n];
    let mut blocks = Vec::new();
    for i in 0..n {
        if assigned[i] {
            continue;
        }
        let block: Vec<usize> = (i..n)
            .filter(|&k| !assigned[k] && (k == i || rt.get(i, k) >= alpha))
            .collect();
        for &k in &block {
            assigned[k] = true;
        }
        blocks.push(block);
    }
    Partition { blocks }
}

/// Connected components of the graph with an edge wherever `R[i][k] >= alpha`.
///
/// Run on the original compatibility relation this equals the α-cut of its
/// transitive closure.
pub fn connected_components_oracle(r: &FuzzyRelation, alpha: f64) -> Result<Partition> {
    check_alpha(alpha)?;
    let n = r.size();
    let mut component = vec![usize::MAX; n];
    let mut next_id = 0;
    for start in 0..n {
        if component[start] != usize::MAX {
            continue;
        }
        component[start] = next_id;
        let mut queue = VecDeque::from([start]);
        while let Some(at) = queue.pop_front() {
            for (k, c) in component.iter_mut().enumerate() {
                if *c == usize::MAX && r.get(at, k) >= alpha {
                    *c = next_id;
                    queue.push_back(k);
                }
            }
        }
        next_id += 1;
    }
    Ok(Partition::from_assignment(&component))
}

/// One α interval of the schedule and the partition valid across it.
#[derive(Debug, Clone, PartialEq)]
pub struct ScheduleRow {
    pub lower: f64,
    pub upper: f64,
    pub lower_open: bool,
    pub partition: Partition,
}

impl ScheduleRow {
    pub fn interval(&self) -> String {
        let open = if self.lower_open { '(' } else { '[' };
        format!("{open}{:.2}, {:.2}]", self.lower, self.upper)
    }
}

/// Every distinct partition produced by α-cuts of a closure, coarsest first.
/// The row intervals tile `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct AlphaCutSchedule {
    labels: Vec<String>,
    rows: Vec<ScheduleRow>,
}

#[derive(Serialize)]
struct RowRepr<'a> {
    lower: f64,
    upper: f64,
    lower_open: bool,
    blocks: Vec<Vec<&'a str>>,
}

impl AlphaCutSchedule {
    pub fn rows(&self) -> &[ScheduleRow] {
        &self.rows
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// The partitions in row order, without thresholds.
    pub fn partitions(&self) -> Vec<&Partition> {
        self.rows.iter().map(|r| &r.partition).collect()
    }

    pub(crate) fn to_json_value(&self) -> Value {
        let rows: Vec<RowRepr> = self
            .rows
            .iter()
            .map(|r| RowRepr {
                lower: r.lower,
                upper: r.upper,
                lower_open: r.lower_open,
                blocks: r.partition.labelled(&self.labels),
            })
            .collect();
        serde_json::to_value(rows).expect("schedule serializes")
    }

    /// JSON list of `{lower, upper, lower_open, blocks}`.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("schedule serializes")
    }

    /// `lower,upper,lower_open,blocks` with blocks as space-separated labels
    /// joined by `;`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("lower,upper,lower_open,blocks\n");
        for r in &self.rows {
            let blocks: Vec<String> = r
                .partition
                .labelled(&self.labels)
                .iter()
                .map(|b| b.join(" "))
                .collect();
            let _ = writeln!(
                out,
                "{},{},{},{}",
                r.lower,
                r.upper,
                r.lower_open,
                blocks.join(";")
            );
        }
        out
    }

    /// Two-column table of intervals and members.
    pub fn to_text(&self) -> String {
        let width = self
            .rows
            .iter()
            .map(|r| r.interval().len())
            .max()
            .unwrap_or(0)
            .max(10);
        let mut out = format!("{:width$} | Members\n", "Alpha cuts");
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{:width$} | {}",
                r.interval(),
                r.partition.display(&self.labels)
            );
        }
        out
    }
}

/// Distinct closure values, ascending, with values within
/// [`LEVEL_TOLERANCE`] of the previous kept value merged into it.
fn levels(rt: &FuzzyRelation) -> Vec<f64> {
    let mut values = rt.values().to_vec();
    values.sort_by(f64::total_cmp);
    let mut out: Vec<f64> = Vec::new();
    for v in values {
        match out.last() {
            Some(&last) if v - last <= LEVEL_TOLERANCE => {}
            _ => out.push(v),
        }
    }
    out
}

/// One row per distinct value `v₁ < … < v_m` of the closure: the first row
/// is `[0, v₁]`, then `(vₖ₋₁, vₖ]`. The partition of each row is the α-cut at
/// its upper endpoint. When a level groups near-equal values the endpoint is
/// the smallest of them.
pub fn partition_schedule(rt: &FuzzyRelation) -> AlphaCutSchedule {
    let mut rows = Vec::new();
    let mut lower = 0.0;
    for (i, upper) in levels(rt).into_iter().enumerate() {
        rows.push(ScheduleRow {
            lower,
            upper,
            lower_open: i > 0,
            partition: alpha_cut_unchecked(rt, upper),
        });
        lower = upper;
    }
    AlphaCutSchedule {
        labels: rt.labels().to_vec(),
        rows,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum DendrogramNode {
    Leaf {
        index: usize,
    },
    Merge {
        height: f64,
        children: Vec<DendrogramNode>,
    },
}

impl DendrogramNode {
    /// Leaves sit at height 1.
    pub fn height(&self) -> f64 {
        match self {
            DendrogramNode::Leaf { .. } => 1.0,
            DendrogramNode::Merge { height, .. } => *height,
        }
    }

    /// Point indices under this node, in tree order.
    pub fn leaves(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<usize>) {
        match self {
            DendrogramNode::Leaf { index } => out.push(*index),
            DendrogramNode::Merge { children, .. } => {
                children.iter().for_each(|c| c.collect_leaves(out))
            }
        }
    }

    fn min_leaf(&self) -> usize {
        self.leaves().into_iter().min().unwrap_or(usize::MAX)
    }
}

/// Merge tree of an α-cut schedule. Internal nodes carry the α-level at which
/// their children fuse and may have more than two children.
#[derive(Debug, Clone, PartialEq)]
pub struct Dendrogram {
    labels: Vec<String>,
    root: DendrogramNode,
}

/// Builds the dendrogram by walking the schedule from the finest row to the
/// coarsest. Each block of a row that gathers two or more current clusters
/// becomes a node at the row's upper endpoint.
pub fn build_dendrogram(schedule: &AlphaCutSchedule) -> Result<Dendrogram> {
    let n = schedule.labels.len();
    if n == 0 {
        return Err(Error::TooFewPoints { needed: 1, got: 0 });
    }
    let mut clusters: Vec<DendrogramNode> =
        (0..n).map(|index| DendrogramNode::Leaf { index }).collect();

    for row in schedule.rows.iter().rev() {
        if row.partition.point_count() != n {
            return Err(Error::NotHierarchy);
        }
        let owner = row.partition.assignment();
        let mut grouped: Vec<Vec<DendrogramNode>> = vec![Vec::new(); row.partition.len()];
        for node in clusters {
            let leaves = node.leaves();
            let block = owner[leaves[0]];
            if leaves.iter().any(|&i| owner[i] != block) {
                return Err(Error::NotHierarchy);
            }
            grouped[block].push(node);
        }
        clusters = grouped
            .into_iter()
            .map(|mut group| {
                if group.len() == 1 {
                    group.pop().expect("one node")
                } else {
                    group.sort_by_key(DendrogramNode::min_leaf);
                    DendrogramNode::Merge {
                        height: row.upper,
                        children: group,
                    }
                }
            })
            .collect();
    }

    // a schedule covers [0, 1], so its first row is a single block
    if clusters.len() != 1 {
        return Err(Error::NotHierarchy);
    }
    let root = clusters.pop().expect("one root");
    Ok(Dendrogram {
        labels: schedule.labels.clone(),
        root,
    })
}

impl Dendrogram {
    pub fn root(&self) -> &DendrogramNode {
        &self.root
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Clusters are the maximal subtrees whose height is at least `alpha`.
    pub fn cut(&self, alpha: f64) -> Result<Partition> {
        check_alpha(alpha)?;
        let mut blocks = Vec::new();
        let mut stack = vec![&self.root];
        while let Some(node) = stack.pop() {
            match node {
                DendrogramNode::Merge { height, children } if *height < alpha => {
                    stack.extend(children.iter())
                }
                _ => blocks.push(node.leaves()),
            }
        }
        Ok(Partition::new(blocks))
    }

    /// Indented tree, one node per line, heights at two decimals.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        self.text_node(&self.root, 0, &mut out);
        out
    }

    fn text_node(&self, node: &DendrogramNode, depth: usize, out: &mut String) {
        let indent = "  ".repeat(depth);
        match node {
            DendrogramNode::Leaf { index } => {
                let _ = writeln!(out, "{indent}{}", self.labels[*index]);
            }
            DendrogramNode::Merge { height, children } => {
                let _ = writeln!(out, "{indent}+ {height:.2}");
                for c in children {
                    self.text_node(c, depth + 1, out);
                }
            }
        }
    }

    /// Graphviz digraph. Merge nodes are labelled with their height, leaves
    /// with point labels; edges point from parent to child.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph dendrogram {\n    rankdir=TB;\n");
        let mut next_id = 0;
        self.dot_node(&self.root, &mut next_id, &mut out);
        out.push_str("}\n");
        out
    }

    fn dot_node(&self, node: &DendrogramNode, next_id: &mut usize, out: &mut String) -> usize {
        let id = *next_id;
        *next_id += 1;
        match node {
            DendrogramNode::Leaf { index } => {
                let label = self.labels[*index]
                    .replace('\\', "\\\\")
                    .replace('"', "\\\"");
                let _ = writeln!(out, "    n{id} [label=\"{label}\", shape=box];");
            }
            DendrogramNode::Merge { height, children } => {
                let _ = writeln!(out, "    n{id} [label=\"{height:.2}\", shape=ellipse];");
                for c in children {
                    let child = self.dot_node(c, next_id, out);
                    let _ = writeln!(out, "    n{id} -> n{child};");
                }
            }
        }
        id
    }

    pub(crate) fn to_json_value(&self) -> Value {
        self.json_node(&self.root)
    }

    fn json_node(&self, node: &DendrogramNode) -> Value {
        match node {
            DendrogramNode::Leaf { index } => json!({ "leaf": self.labels[*index] }),
            DendrogramNode::Merge { height, children } => json!({
                "height": height,
                "children": children.iter().map(|c| self.json_node(c)).collect::<Vec<_>>(),
            }),
        }
    }

    /// Nested `{height, children}` objects with `{leaf}` at the bottom.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("dendrogram serializes")
    }
}
