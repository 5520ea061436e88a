//! Weighted undirected graphs, random instances, and exact MaxCut.
//!
//! Vertices are `0..n_vertices`. Edges are stored as `(u, v, w)` with
//! `u < v`, no self-loops, and no duplicates. A cut assignment is a bitmask
//! whose bit `q` gives the side of vertex `q`, matching the simulator's
//! basis-index convention.

use std::collections::VecDeque;
use std::fmt::Write as _;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::stream_rng;

/// Hard cap on vertex count so assignments fit a `u64` with headroom.
pub const MAX_VERTICES: usize = 60;

/// Exact MaxCut enumerates all `2^n` assignments; past this it is refused.
pub const MAX_BRUTE_FORCE_VERTICES: usize = 24;

/// Undirected graph with real edge weights.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    n_vertices: usize,
    edges: Vec<(usize, usize, f64)>,
}

/// Optimal cut found by exhaustive enumeration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CutResult {
    /// Bit `q` is the side of vertex `q`; the lexicographically smallest
    /// optimal assignment (compared bit 0 first) is reported.
    pub assignment: u64,
    /// Total weight crossing the cut.
    pub cut_value: f64,
    /// Vertex count of the graph the cut belongs to.
    pub n_vertices: usize,
}

impl CutResult {
    /// Renders the assignment as a 0/1 string, vertex 0 first.
    pub fn bitstring(&self) -> String {
        (0..self.n_vertices)
            .map(|q| if self.assignment >> q & 1 == 1 { '1' } else { '0' })
            .collect()
    }
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n_vertices: usize,
    edges: Vec<(usize, usize, f64)>,
}

impl Graph {
    /// Builds a graph from a weighted edge list.
    ///
    /// Endpoint order within an edge is normalized to `u < v`; self-loops,
    /// duplicate pairs, out-of-range endpoints, and non-finite or zero
    /// weights are rejected.
    pub fn new(n_vertices: usize, edges: &[(usize, usize, f64)]) -> Result<Self> {
        if n_vertices == 0 {
            return Err(Error::InvalidInstance("graph needs at least one vertex".into()));
        }
        if n_vertices > MAX_VERTICES {
            return Err(Error::TooLarge {
                context: "graph vertex count",
                size: n_vertices,
                limit: MAX_VERTICES,
            });
        }
        let mut norm: Vec<(usize, usize, f64)> = Vec::with_capacity(edges.len());
        for &(a, b, w) in edges {
            if a == b {
                return Err(Error::InvalidInstance(format!("self-loop at vertex {a}")));
            }
            if a >= n_vertices || b >= n_vertices {
                return Err(Error::InvalidInstance(format!(
                    "edge ({a}, {b}) outside vertex range 0..{n_vertices}"
                )));
            }
            if !w.is_finite() || w == 0.0 {
                return Err(Error::InvalidInstance(format!(
                    "edge ({a}, {b}) has unusable weight {w}"
                )));
            }
            let (u, v) = if a < b { (a, b) } else { (b, a) };
            norm.push((u, v, w));
        }
        norm.sort_by_key(|&(u, v, _)| (u, v));
        for pair in norm.windows(2) {
            if pair[0].0 == pair[1].0 && pair[0].1 == pair[1].1 {
                return Err(Error::InvalidInstance(format!(
                    "duplicate edge ({}, {})",
                    pair[0].0, pair[0].1
                )));
            }
        }
        Ok(Self { n_vertices, edges: norm })
    }

    /// Builds an unweighted graph (all weights 1).
    pub fn unweighted(n_vertices: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let edges: Vec<_> = pairs.iter().map(|&(u, v)| (u, v, 1.0)).collect();
        Self::new(n_vertices, &edges)
    }

    /// Complete unweighted graph on `n` vertices.
    pub fn complete(n: usize) -> Result<Self> {
        let mut pairs = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                pairs.push((u, v));
            }
        }
        Self::unweighted(n, &pairs)
    }

    /// Samples G(n, p): each of the `n(n-1)/2` pairs is included
    /// independently with probability `edge_prob`, in fixed pair order, so
    /// the instance is a pure function of `(n, edge_prob, seed)`.
    pub fn random(n: usize, edge_prob: f64, seed: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidArgument(format!(
                "random graph needs at least 2 vertices, got {n}"
            )));
        }
        if !(0.0..=1.0).contains(&edge_prob) {
            return Err(Error::InvalidArgument(format!(
                "edge probability {edge_prob} outside [0, 1]"
            )));
        }
        let mut rng = stream_rng(seed, 0);
        let mut pairs = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen::<f64>() < edge_prob {
                    pairs.push((u, v));
                }
            }
        }
        Self::unweighted(n, &pairs)
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v, w)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> &[(usize, usize, f64)] {
        &self.edges
    }

    /// True when every weight is exactly 1.
    pub fn is_unweighted(&self) -> bool {
        self.edges.iter().all(|&(_, _, w)| w == 1.0)
    }

    /// Fraction of the `n(n-1)/2` possible edges that are present.
    pub fn edge_density(&self) -> f64 {
        if self.n_vertices < 2 {
            return 0.0;
        }
        let possible = self.n_vertices * (self.n_vertices - 1) / 2;
        self.edges.len() as f64 / possible as f64
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b, _)| a == v || b == v).count()
    }

    pub fn total_weight(&self) -> f64 {
        self.edges.iter().map(|&(_, _, w)| w).sum()
    }

    /// Total weight crossing the cut described by `assignment`.
    pub fn cut_value(&self, assignment: u64) -> f64 {
        self.edges
            .iter()
            .filter(|&&(u, v, _)| (assignment >> u ^ assignment >> v) & 1 == 1)
            .map(|&(_, _, w)| w)
            .sum()
    }

    /// Exhaustive MaxCut over all `2^n` assignments.
    ///
    /// Ties resolve to the lexicographically smallest assignment, comparing
    /// the side of vertex 0 first.
    pub fn brute_force_maxcut(&self) -> Result<CutResult> {
        if self.n_vertices > MAX_BRUTE_FORCE_VERTICES {
            return Err(Error::TooLarge {
                context: "exact MaxCut enumeration",
                size: self.n_vertices,
                limit: MAX_BRUTE_FORCE_VERTICES,
            });
        }
        let mut best_mask = 0u64;
        let mut best_value = self.cut_value(0);
        for mask in 1..(1u64 << self.n_vertices) {
            let value = self.cut_value(mask);
            if value > best_value
                || (value == best_value && lex_smaller(mask, best_mask, self.n_vertices))
            {
                best_value = value;
                best_mask = mask;
            }
        }
        Ok(CutResult {
            assignment: best_mask,
            cut_value: best_value,
            n_vertices: self.n_vertices,
        })
    }

    /// Deletes vertex `v` and its incident edges; vertices above `v` shift
    /// down by one, preserving relative order.
    pub fn remove_vertex(&self, v: usize) -> Result<Self> {
        if v >= self.n_vertices {
            return Err(Error::InvalidArgument(format!(
                "vertex {v} outside 0..{}",
                self.n_vertices
            )));
        }
        if self.n_vertices == 1 {
            return Err(Error::InvalidInstance(
                "removing the last vertex would leave an empty graph".into(),
            ));
        }
        let relabel = |x: usize| if x > v { x - 1 } else { x };
        let edges: Vec<_> = self
            .edges
            .iter()
            .filter(|&&(a, b, _)| a != v && b != v)
            .map(|&(a, b, w)| (relabel(a), relabel(b), w))
            .collect();
        Self::new(self.n_vertices - 1, &edges)
    }

    /// Breadth-first connectivity over the whole vertex set.
    pub fn is_connected(&self) -> bool {
        if self.n_vertices <= 1 {
            return true;
        }
        let mut adj = vec![Vec::new(); self.n_vertices];
        for &(u, v, _) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut seen = vec![false; self.n_vertices];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    queue.push_back(v);
                }
            }
        }
        count == self.n_vertices
    }

    /// Plain-text form: first line is the vertex count, then one
    /// `u v weight` line per edge. Weights print in shortest round-trip
    /// form, so parsing the output reproduces the graph exactly.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.n_vertices);
        for &(u, v, w) in &self.edges {
            let _ = writeln!(out, "{u} {v} {w}");
        }
        out
    }

    /// Parses the [`Graph::to_edge_list`] format. Blank lines and lines
    /// starting with `#` are skipped.
    pub fn from_edge_list(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let n: usize = lines
            .next()
            .ok_or_else(|| Error::Parse("empty edge list".into()))?
            .parse()
            .map_err(|e| Error::Parse(format!("vertex count: {e}")))?;
        let mut edges = Vec::new();
        for line in lines {
            let mut it = line.split_whitespace();
            let mut field = |name: &str| {
                it.next()
                    .ok_or_else(|| Error::Parse(format!("edge line {line:?} missing {name}")))
            };
            let u: usize = field("u")?
                .parse()
                .map_err(|e| Error::Parse(format!("edge endpoint: {e}")))?;
            let v: usize = field("v")?
                .parse()
                .map_err(|e| Error::Parse(format!("edge endpoint: {e}")))?;
            let w: f64 = field("weight")?
                .parse()
                .map_err(|e| Error::Parse(format!("edge weight: {e}")))?;
            edges.push((u, v, w));
        }
        Self::new(n, &edges)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&GraphJson {
            n_vertices: self.n_vertices,
            edges: self.edges.clone(),
        })
        .expect("graph serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: GraphJson =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("graph json: {e}")))?;
        Self::new(raw.n_vertices, &raw.edges)
    }
}

/// Compares assignments as bit sequences starting at vertex 0.
fn lex_smaller(a: u64, b: u64, n: usize) -> bool {
    for q in 0..n {
        let (ba, bb) = (a >> q & 1, b >> q & 1);
        if ba != bb {
            return ba < bb;
        }
    }
    false
}
