//! Sparse weighted directed graph in compressed row form, plus the
//! normalization transforms every ranking method builds on.
//!
//! Graphs are immutable after construction. Node indices follow first
//! appearance in the input, parallel edges merge by weight summation, and
//! self-loops are allowed (self-citations and input-output diagonals need
//! them). Dangling rows are kept as all-zero here; each method applies its
//! own patch.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::{Error, Result};

/// How a score vector is (or is meant to be) scaled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Normalization {
    /// Components sum to one (probability-style scores).
    SumToOne,
    /// Largest-magnitude component is one.
    MaxComponent,
    /// No scaling applied.
    None,
}

/// Per-node real scores with normalization metadata.
#[derive(Debug, Clone)]
pub struct ScoreVector {
    pub values: Vec<f64>,
    pub normalization: Normalization,
}

impl ScoreVector {
    pub fn new(values: Vec<f64>, normalization: Normalization) -> Self {
        Self {
            values,
            normalization,
        }
    }

    /// Uniform probability vector of length `n`.
    pub fn uniform(n: usize) -> Self {
        Self::new(vec![1.0 / n as f64; n], Normalization::SumToOne)
    }

    /// All-ones vector, unnormalized.
    pub fn ones(n: usize) -> Self {
        Self::new(vec![1.0; n], Normalization::None)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    /// Checks that the vector is a probability vector: nonnegative entries
    /// summing to one within 1e-12.
    pub fn validate_probability(&self, what: &str) -> Result<()> {
        if self.values.iter().any(|&v| v < 0.0 || !v.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "{what} must be nonnegative and finite"
            )));
        }
        let s = self.sum();
        if (s - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidInput(format!(
                "{what} must sum to 1 (got {s})"
            )));
        }
        Ok(())
    }
}

/// Sparse weighted directed graph with label-mapped nodes and row-compressed
/// edges. Every (source, dest) pair appears at most once.
#[derive(Debug, Clone)]
pub struct SparseGraph {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    row_ptr: Vec<usize>,
    col: Vec<usize>,
    weight: Vec<f64>,
}

impl SparseGraph {
    /// Number of nodes.
    pub fn n(&self) -> usize {
        self.labels.len()
    }

    /// Number of stored (merged) edges.
    pub fn edge_count(&self) -> usize {
        self.col.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    /// Out-edges of node `i` as (dest, weight) pairs.
    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let lo = self.row_ptr[i];
        let hi = self.row_ptr[i + 1];
        self.col[lo..hi]
            .iter()
            .copied()
            .zip(self.weight[lo..hi].iter().copied())
    }

    /// All edges as (src, dest, weight) triples.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.n()).flat_map(move |i| self.row(i).map(move |(j, w)| (i, j, w)))
    }

    pub fn is_dangling(&self, i: usize) -> bool {
        self.row_ptr[i] == self.row_ptr[i + 1]
    }

    pub fn total_weight(&self) -> f64 {
        self.weight.iter().sum()
    }

    pub fn has_self_loop(&self) -> bool {
        self.edges().any(|(i, j, w)| i == j && w != 0.0)
    }

    /// Row sums: values[i] = sum of outgoing weights of node i; zero for
    /// dangling nodes.
    pub fn out_strength(&self) -> ScoreVector {
        let values = (0..self.n())
            .map(|i| self.row(i).map(|(_, w)| w).sum())
            .collect();
        ScoreVector::new(values, Normalization::None)
    }

    /// Column sums: total incoming weight per node.
    pub fn in_strength(&self) -> Vec<f64> {
        let mut v = vec![0.0; self.n()];
        for (_, j, w) in self.edges() {
            v[j] += w;
        }
        v
    }

    /// Divides each row by its sum, so every nonempty row sums to 1.
    /// Dangling rows stay all-zero; patching them is the caller's business.
    pub fn row_stochastic(&self) -> Result<SparseGraph> {
        if self.weight.iter().any(|&w| w < 0.0) {
            return Err(Error::Numerical(
                "row_stochastic requires nonnegative weights".into(),
            ));
        }
        let mut g = self.clone();
        for i in 0..g.n() {
            let lo = g.row_ptr[i];
            let hi = g.row_ptr[i + 1];
            let s: f64 = g.weight[lo..hi].iter().sum();
            if s > 0.0 {
                for w in &mut g.weight[lo..hi] {
                    *w /= s;
                }
            }
        }
        Ok(g)
    }

    /// Scales each entry (i, j) by the out-strength of the *destination*:
    /// entry becomes w(i,j) / out_strength(j). This is the Pinski-Narin
    /// citation normalization and equally the Leontief technical-coefficient
    /// matrix; the resulting matrix has spectral radius 1 whenever every
    /// node has positive out-strength.
    pub fn dest_outstrength_normalize(&self) -> Result<SparseGraph> {
        if self.weight.iter().any(|&w| w < 0.0) {
            return Err(Error::Numerical(
                "dest_outstrength_normalize requires nonnegative weights".into(),
            ));
        }
        let strength = self.out_strength();
        let mut g = self.clone();
        for i in 0..g.n() {
            let lo = g.row_ptr[i];
            let hi = g.row_ptr[i + 1];
            for k in lo..hi {
                let j = g.col[k];
                let s = strength.values[j];
                if s <= 0.0 && g.weight[k] != 0.0 {
                    return Err(Error::Numerical(format!(
                        "node '{}' receives edges but has zero out-strength; \
                         per-reference score undefined",
                        self.labels[j]
                    )));
                }
                if s > 0.0 {
                    g.weight[k] /= s;
                }
            }
        }
        Ok(g)
    }

    /// Edge (i, j, w) becomes (j, i, w). Involution; labels unchanged.
    pub fn transpose(&self) -> SparseGraph {
        let edges: Vec<(usize, usize, f64)> =
            self.edges().map(|(i, j, w)| (j, i, w)).collect();
        SparseGraph::from_indexed_edges(self.labels.clone(), edges)
    }

    /// 0/1 adjacency: positive weights become 1, everything else drops out.
    pub fn binarized(&self) -> SparseGraph {
        let edges: Vec<(usize, usize, f64)> = self
            .edges()
            .filter(|&(_, _, w)| w > 0.0)
            .map(|(i, j, _)| (i, j, 1.0))
            .collect();
        SparseGraph::from_indexed_edges(self.labels.clone(), edges)
    }

    /// out[j] = sum_i x[i] * w(i, j): left vector-matrix product.
    pub fn mul_left(&self, x: &[f64], out: &mut [f64]) {
        out.fill(0.0);
        for i in 0..self.n() {
            let xi = x[i];
            if xi != 0.0 {
                for (j, w) in self.row(i) {
                    out[j] += xi * w;
                }
            }
        }
    }

    /// out[i] = sum_j w(i, j) * x[j]: matrix-vector product.
    pub fn mul_right(&self, x: &[f64], out: &mut [f64]) {
        for i in 0..self.n() {
            out[i] = self.row(i).map(|(j, w)| w * x[j]).sum();
        }
    }

    /// Dense row-major copy of the adjacency matrix.
    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        let mut m = vec![vec![0.0; self.n()]; self.n()];
        for (i, j, w) in self.edges() {
            m[i][j] = w;
        }
        m
    }

    /// True when the graph is strongly connected (forward and backward
    /// reachability sweeps from node 0 both cover all nodes).
    pub fn is_strongly_connected(&self) -> bool {
        if self.n() == 0 {
            return true;
        }
        self.full_reach(false) && self.full_reach(true)
    }

    fn full_reach(&self, backward: bool) -> bool {
        let g;
        let adj = if backward {
            g = self.transpose();
            &g
        } else {
            self
        };
        let mut seen = vec![false; adj.n()];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(i) = stack.pop() {
            for (j, w) in adj.row(i) {
                if w != 0.0 && !seen[j] {
                    seen[j] = true;
                    count += 1;
                    stack.push(j);
                }
            }
        }
        count == adj.n()
    }

    /// Serializes to the tab-separated edge-list format accepted by
    /// [`SparseGraph::parse_tsv`]. Every node is declared up front so the
    /// round-trip preserves first-appearance indexing.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for label in &self.labels {
            let _ = writeln!(out, "{label}");
        }
        for (i, j, w) in self.edges() {
            let _ = writeln!(out, "{}\t{}\t{}", self.labels[i], self.labels[j], w);
        }
        out
    }

    /// Parses the edge-list format: one record per line, TAB-separated
    /// `src dst [weight]`, weight defaulting to 1.0; `#` starts a comment
    /// line; a single-field line declares an isolated node.
    pub fn parse_tsv(text: &str) -> Result<SparseGraph> {
        let mut b = GraphBuilder::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.strip_suffix('\r').unwrap_or(raw);
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split('\t').collect();
            let err = |msg: String| Error::Parse {
                line: lineno + 1,
                msg,
            };
            match fields.as_slice() {
                [node] => b.add_node(node),
                [src, dst] => b
                    .add_edge(src, dst, 1.0)
                    .map_err(|e| err(e.to_string()))?,
                [src, dst, w] => {
                    let w: f64 = w
                        .parse()
                        .map_err(|_| err(format!("bad weight '{w}'")))?;
                    b.add_edge(src, dst, w).map_err(|e| err(e.to_string()))?;
                }
                _ => return Err(err(format!("expected 1-3 TAB-separated fields: '{line}'"))),
            }
        }
        b.build()
    }

    pub fn parse_tsv_path(path: &std::path::Path) -> Result<SparseGraph> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            Error::InvalidInput(format!("cannot read {}: {e}", path.display()))
        })?;
        Self::parse_tsv(&text)
    }

    /// Builds from already-indexed edges; merges duplicates by summation and
    /// sorts each row by destination index.
    pub(crate) fn from_indexed_edges(
        labels: Vec<String>,
        mut edges: Vec<(usize, usize, f64)>,
    ) -> SparseGraph {
        let n = labels.len();
        edges.sort_by_key(|&(i, j, _)| (i, j));
        let mut merged: Vec<(usize, usize, f64)> = Vec::with_capacity(edges.len());
        for (i, j, w) in edges {
            match merged.last_mut() {
                Some(last) if last.0 == i && last.1 == j => last.2 += w,
                _ => merged.push((i, j, w)),
            }
        }
        let mut row_ptr = vec![0usize; n + 1];
        for &(i, _, _) in &merged {
            row_ptr[i + 1] += 1;
        }
        for i in 0..n {
            row_ptr[i + 1] += row_ptr[i];
        }
        let index = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i))
            .collect();
        SparseGraph {
            labels,
            index,
            row_ptr,
            col: merged.iter().map(|&(_, j, _)| j).collect(),
            weight: merged.iter().map(|&(_, _, w)| w).collect(),
        }
    }
}

/// Incremental graph construction. Nodes are indexed in first-appearance
/// order; duplicate edges merge by weight summation at `build` time.
#[derive(Debug, Default)]
pub struct GraphBuilder {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    edges: Vec<(usize, usize, f64)>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    fn intern(&mut self, label: &str) -> usize {
        if let Some(&i) = self.index.get(label) {
            return i;
        }
        let i = self.labels.len();
        self.labels.push(label.to_string());
        self.index.insert(label.to_string(), i);
        i
    }

    /// Declares a node, possibly isolated.
    pub fn add_node(&mut self, label: &str) {
        self.intern(label);
    }

    /// Adds an edge; negative weights are allowed (Hubbell endorsements),
    /// non-finite weights are rejected.
    pub fn add_edge(&mut self, src: &str, dst: &str, weight: f64) -> Result<()> {
        if !weight.is_finite() {
            return Err(Error::InvalidInput(format!(
                "non-finite weight {weight} on edge {src} -> {dst}"
            )));
        }
        let i = self.intern(src);
        let j = self.intern(dst);
        self.edges.push((i, j, weight));
        Ok(())
    }

    pub fn build(self) -> Result<SparseGraph> {
        Ok(SparseGraph::from_indexed_edges(self.labels, self.edges))
    }
}

/// Builds a graph from (src, dst, optional weight) triples; missing weights
/// default to 1.0.
pub fn build_graph(edges: &[(&str, &str, Option<f64>)]) -> Result<SparseGraph> {
    let mut b = GraphBuilder::new();
    for &(src, dst, w) in edges {
        b.add_edge(src, dst, w.unwrap_or(1.0))?;
    }
    b.build()
}
