//! Rooted metrics, minimum spanning trees and the MST set functions.
//!
//! A [`Metric`] is a full distance matrix over nodes `0..=n`: node `0` is the
//! root `r` and node `e` (1-based) is element `e` of the ground set, so element
//! bit `i` of a [`Subset`] is matrix row `i + 1`.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::setfn::{Flags, SetFunction, TOL};
use crate::subset::Subset;

/// First reason a matrix fails to be a metric. Indices are matrix rows (root = 0).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Violation {
    NotSquare {
        row: usize,
    },
    NonFinite {
        i: usize,
        j: usize,
    },
    NonzeroDiagonal {
        i: usize,
    },
    Negative {
        i: usize,
        j: usize,
    },
    Asymmetric {
        i: usize,
        j: usize,
    },
    /// `d(i, k) > d(i, j) + d(j, k)`.
    Triangle {
        i: usize,
        j: usize,
        k: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::NotSquare { row } => write!(f, "row {row} has the wrong length"),
            Violation::NonFinite { i, j } => write!(f, "d({i},{j}) is not finite"),
            Violation::NonzeroDiagonal { i } => write!(f, "d({i},{i}) is not zero"),
            Violation::Negative { i, j } => write!(f, "d({i},{j}) is negative"),
            Violation::Asymmetric { i, j } => write!(f, "d({i},{j}) != d({j},{i})"),
            Violation::Triangle { i, j, k } => {
                write!(f, "triangle inequality fails for ({i},{j},{k}): d({i},{k}) > d({i},{j}) + d({j},{k})")
            }
        }
    }
}

#[allow(clippy::needless_range_loop)]
pub fn first_violation(d: &[Vec<f64>]) -> Option<Violation> {
    let size = d.len();
    for (row, r) in d.iter().enumerate() {
        if r.len() != size {
            return Some(Violation::NotSquare { row });
        }
    }
    for i in 0..size {
        for j in 0..size {
            if !d[i][j].is_finite() {
                return Some(Violation::NonFinite { i, j });
            }
        }
    }
    for i in 0..size {
        if d[i][i] != 0.0 {
            return Some(Violation::NonzeroDiagonal { i });
        }
        for j in 0..size {
            if d[i][j] < 0.0 {
                return Some(Violation::Negative { i, j });
            }
            if d[i][j] != d[j][i] {
                return Some(Violation::Asymmetric {
                    i: i.min(j),
                    j: i.max(j),
                });
            }
        }
    }
    for i in 0..size {
        for k in i + 1..size {
            for j in 0..size {
                if d[i][k] > d[i][j] + d[j][k] + TOL {
                    return Some(Violation::Triangle { i, j, k });
                }
            }
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq)]
pub struct Metric {
    d: Vec<Vec<f64>>,
}

impl Metric {
    /// Validates `d` and wraps it. Row 0 is the root.
    pub fn new(d: Vec<Vec<f64>>) -> Result<Self> {
        if d.is_empty() {
            return Err(Error::InvalidMetric("matrix has no root row".into()));
        }
        if let Some(v) = first_violation(&d) {
            return Err(Error::InvalidMetric(v.to_string()));
        }
        Ok(Self { d })
    }

    /// Euclidean metric with `root` at node 0 followed by `points`.
    pub fn euclidean(root: [f64; 2], points: &[[f64; 2]]) -> Result<Self> {
        let nodes: Vec<[f64; 2]> = std::iter::once(root)
            .chain(points.iter().copied())
            .collect();
        let d = nodes
            .iter()
            .map(|a| {
                nodes
                    .iter()
                    .map(|b| (a[0] - b[0]).hypot(a[1] - b[1]))
                    .collect()
            })
            .collect();
        Self::new(d)
    }

    /// Number of non-root nodes.
    pub fn n(&self) -> usize {
        self.d.len() - 1
    }

    /// Distance between matrix nodes (root = 0, element bit `i` = node `i + 1`).
    pub fn dist(&self, a: usize, b: usize) -> f64 {
        self.d[a][b]
    }

    pub fn matrix(&self) -> &[Vec<f64>] {
        &self.d
    }
}

/// JSON form `{"n": int, "root": 0, "d": [[...]]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MetricFile {
    pub n: usize,
    pub root: usize,
    pub d: Vec<Vec<f64>>,
}

impl TryFrom<MetricFile> for Metric {
    type Error = Error;

    fn try_from(file: MetricFile) -> Result<Self> {
        if file.root != 0 {
            return Err(Error::Invalid(format!("root must be 0, got {}", file.root)));
        }
        if file.d.len() != file.n + 1 {
            return Err(Error::Invalid(format!(
                "n = {} requires a {}x{} matrix, got {} rows",
                file.n,
                file.n + 1,
                file.n + 1,
                file.d.len()
            )));
        }
        Metric::new(file.d)
    }
}

impl From<&Metric> for MetricFile {
    fn from(m: &Metric) -> Self {
        MetricFile {
            n: m.n(),
            root: 0,
            d: m.d.clone(),
        }
    }
}

/// Spanning tree over the root and a subset of nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct SpanningTree {
    /// Spanned matrix nodes, root first.
    pub nodes: Vec<usize>,
    /// `(parent, child)` pairs in the order Prim attached them.
    pub edges: Vec<(usize, usize)>,
    pub cost: f64,
}

impl SpanningTree {
    /// Children of `node`, ascending.
    pub fn children(&self, node: usize) -> Vec<usize> {
        let mut c: Vec<usize> = self
            .edges
            .iter()
            .filter(|&&(p, _)| p == node)
            .map(|&(_, ch)| ch)
            .collect();
        c.sort_unstable();
        c
    }

    pub fn parent(&self, node: usize) -> Option<usize> {
        self.edges
            .iter()
            .find(|&&(_, ch)| ch == node)
            .map(|&(p, _)| p)
    }
}

/// Prim's algorithm on `{r} ∪ S`. The next node is the one with the smallest
/// key, ties to the smaller node index; a key only moves on strict improvement,
/// so a node's parent is the earliest attached node at minimum distance.
pub fn mst(metric: &Metric, s: Subset) -> SpanningTree {
    let nodes: Vec<usize> = std::iter::once(0).chain(s.iter().map(|i| i + 1)).collect();
    let k = nodes.len();
    let mut in_tree = vec![false; k];
    let mut key = vec![f64::INFINITY; k];
    let mut parent = vec![0usize; k];
    let mut edges = Vec::with_capacity(k - 1);
    let mut cost = 0.0;
    in_tree[0] = true;
    for v in 1..k {
        key[v] = metric.dist(0, nodes[v]);
    }
    for _ in 1..k {
        let mut best = usize::MAX;
        for v in 1..k {
            if !in_tree[v] && (best == usize::MAX || key[v] < key[best]) {
                best = v;
            }
        }
        in_tree[best] = true;
        cost += key[best];
        edges.push((nodes[parent[best]], nodes[best]));
        for v in 1..k {
            if !in_tree[v] {
                let d = metric.dist(nodes[best], nodes[v]);
                if d < key[v] {
                    key[v] = d;
                    parent[v] = best;
                }
            }
        }
    }
    SpanningTree { nodes, edges, cost }
}

/// Cost of [`mst`] without materializing the tree.
pub fn mst_cost(metric: &Metric, s: Subset) -> f64 {
    let mut nodes: Vec<usize> = s.iter().map(|i| i + 1).collect();
    let mut key: Vec<f64> = nodes.iter().map(|&v| metric.dist(0, v)).collect();
    let mut cost = 0.0;
    while !nodes.is_empty() {
        let mut best = 0;
        for v in 1..nodes.len() {
            if key[v] < key[best] {
                best = v;
            }
        }
        cost += key[best];
        let u = nodes.swap_remove(best);
        key.swap_remove(best);
        for (v, kv) in nodes.iter().zip(key.iter_mut()) {
            let d = metric.dist(u, *v);
            if d < *kv {
                *kv = d;
            }
        }
    }
    cost
}

/// `MST(S) + beta |S|` with the root always included.
#[derive(Debug, Clone)]
pub struct MstOracle {
    metric: Arc<Metric>,
    beta: f64,
}

impl MstOracle {
    pub fn new(metric: Arc<Metric>, beta: f64) -> Result<Self> {
        if !beta.is_finite() || beta < 0.0 {
            return Err(Error::Domain(format!(
                "waiting time must be >= 0, got {beta}"
            )));
        }
        Ok(Self { metric, beta })
    }

    pub fn metric(&self) -> &Arc<Metric> {
        &self.metric
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }
}

impl SetFunction for MstOracle {
    fn n(&self) -> usize {
        self.metric.n()
    }

    fn eval(&self, s: Subset) -> f64 {
        mst_cost(&self.metric, s) + self.beta * s.len() as f64
    }

    fn flags(&self) -> Flags {
        Flags {
            normalized: true,
            nonnegative: true,
            nondecreasing: false,
            subadditive: true,
            submodular: false,
            s_minimal: true,
        }
    }
}

/// Cost shares from the full MST: each element pays the edge to its parent.
#[derive(Debug, Clone, PartialEq)]
pub struct BirdWeights {
    pub weights: Vec<f64>,
    pub tree: SpanningTree,
}

pub fn bird_weights(metric: &Metric) -> BirdWeights {
    let tree = mst(metric, Subset::full(metric.n()));
    let mut weights = vec![0.0; metric.n()];
    for &(p, ch) in &tree.edges {
        weights[ch - 1] = metric.dist(p, ch);
    }
    BirdWeights { weights, tree }
}
