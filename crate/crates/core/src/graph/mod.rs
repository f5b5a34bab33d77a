//! Weighted graphs, vertex functions and the pointwise operators built on them.
//!
//! All sums written over pairs `(x, y)` run over *ordered* pairs, so every
//! edge is counted twice. The helpers here that take that convention say so.

mod function;
mod green;
mod product;

use std::collections::VecDeque;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

pub use function::VertexFunction;
pub use green::{greens_identity_residual, greens_terms, GreensTerms};
pub use product::{cartesian_product, strip_truncation, StripGraph};

/// A finite, connected, undirected graph with symmetric positive edge weights.
///
/// Vertices are dense indices `0..vertex_count`; labels are opaque strings
/// carried along for reporting only. The vertex weight `μ(x)` is the sum of
/// the weights of the edges at `x` and is fixed at construction.
#[derive(Debug, Clone)]
pub struct WeightedGraph {
    labels: Vec<String>,
    adjacency: Vec<Vec<(usize, f64)>>,
    edges: Vec<(usize, usize, f64)>,
    mu: Vec<f64>,
    id: u64,
}

impl WeightedGraph {
    /// Builds a graph from an undirected edge list. Each unordered pair may
    /// appear at most once (in either orientation).
    pub fn new<I>(vertex_count: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        let labels = (0..vertex_count).map(|i| i.to_string()).collect();
        Self::with_labels(labels, edges)
    }

    pub fn with_labels<I>(labels: Vec<String>, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        let n = labels.len();
        if n == 0 {
            return Err(Error::Structure("graph has no vertices".into()));
        }
        let mut adjacency: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
        let mut list = Vec::new();
        for (u, v, w) in edges {
            for idx in [u, v] {
                if idx >= n {
                    return Err(Error::IndexOutOfRange { index: idx, len: n });
                }
            }
            if u == v {
                return Err(Error::Structure(format!("self-loop at vertex {u}")));
            }
            if !(w.is_finite() && w > 0.0) {
                return Err(Error::Structure(format!(
                    "edge ({u}, {v}) has non-positive or non-finite weight {w}"
                )));
            }
            let (a, b) = if u < v { (u, v) } else { (v, u) };
            list.push((a, b, w));
        }
        list.sort_by_key(|e| (e.0, e.1));
        for pair in list.windows(2) {
            if pair[0].0 == pair[1].0 && pair[0].1 == pair[1].1 {
                return Err(Error::Structure(format!(
                    "edge ({}, {}) listed more than once",
                    pair[0].0, pair[0].1
                )));
            }
        }
        for &(a, b, w) in &list {
            adjacency[a].push((b, w));
            adjacency[b].push((a, w));
        }
        for nbrs in &mut adjacency {
            nbrs.sort_by_key(|&(y, _)| y);
        }
        if let Some(x) = adjacency.iter().position(Vec::is_empty) {
            return Err(Error::Structure(format!("vertex {x} has no neighbours")));
        }
        let mu = adjacency
            .iter()
            .map(|nbrs| nbrs.iter().map(|&(_, w)| w).sum())
            .collect();
        let id = fingerprint(n, &list);
        let graph = Self {
            labels,
            adjacency,
            edges: list,
            mu,
            id,
        };
        if !graph.is_connected() {
            return Err(Error::Structure("graph is not connected".into()));
        }
        Ok(graph)
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v, w)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> &[(usize, usize, f64)] {
        &self.edges
    }

    pub fn neighbors(&self, x: usize) -> &[(usize, f64)] {
        &self.adjacency[x]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    /// Content fingerprint of the vertex count and weighted edge set.
    /// Labels do not participate.
    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn mu(&self) -> &[f64] {
        &self.mu
    }

    pub fn check_vertex(&self, x: usize) -> Result<()> {
        if x < self.vertex_count() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: x,
                len: self.vertex_count(),
            })
        }
    }

    pub(crate) fn check_function(&self, f: &VertexFunction) -> Result<()> {
        if f.graph_id() == self.id && f.len() == self.vertex_count() {
            Ok(())
        } else {
            Err(Error::DomainMismatch {
                expected: self.id,
                found: f.graph_id(),
            })
        }
    }

    /// `μ(x) = Σ_{y∼x} w_xy`.
    pub fn vertex_weight(&self, x: usize) -> Result<f64> {
        self.check_vertex(x)?;
        Ok(self.mu[x])
    }

    pub fn weight(&self, x: usize, y: usize) -> Option<f64> {
        let nbrs = self.adjacency.get(x)?;
        nbrs.binary_search_by_key(&y, |&(v, _)| v)
            .ok()
            .map(|i| nbrs[i].1)
    }

    pub fn adjacent(&self, x: usize, y: usize) -> bool {
        self.weight(x, y).is_some()
    }

    /// Normalized Laplacian `Δf(x) = Σ_{y∼x} (w_xy/μ(x)) (f(y) − f(x))`.
    pub fn laplacian(&self, f: &VertexFunction) -> Result<VertexFunction> {
        self.check_function(f)?;
        let values = self.laplacian_values(f.values());
        Ok(VertexFunction::from_parts(self.id, values))
    }

    pub(crate) fn laplacian_values(&self, f: &[f64]) -> Vec<f64> {
        self.adjacency
            .iter()
            .zip(&self.mu)
            .enumerate()
            .map(|(x, (nbrs, &mu))| {
                nbrs.iter().map(|&(y, w)| w * (f[y] - f[x])).sum::<f64>() / mu
            })
            .collect()
    }

    /// Difference operator `∇_xy f`: `f(y) − f(x)` on edges, zero otherwise.
    pub fn difference(&self, f: &VertexFunction, x: usize, y: usize) -> Result<f64> {
        self.check_function(f)?;
        self.check_vertex(x)?;
        self.check_vertex(y)?;
        let v = f.values();
        Ok(if self.adjacent(x, y) { v[y] - v[x] } else { 0.0 })
    }

    /// `⟨∇f, ∇h⟩(x) = Σ_{y∼x} (w_xy/μ(x)) (f(y) − f(x)) (h(y) − h(x))`.
    pub fn gradient_inner(&self, f: &VertexFunction, h: &VertexFunction, x: usize) -> Result<f64> {
        self.check_function(f)?;
        self.check_function(h)?;
        self.check_vertex(x)?;
        Ok(self.gradient_inner_values(f.values(), h.values(), x))
    }

    pub(crate) fn gradient_inner_values(&self, f: &[f64], h: &[f64], x: usize) -> f64 {
        let sum: f64 = self.adjacency[x]
            .iter()
            .map(|&(y, w)| w * (f[y] - f[x]) * (h[y] - h[x]))
            .sum();
        sum / self.mu[x]
    }

    /// `|∇f|²(x)`.
    pub fn gradient_norm_sq(&self, f: &VertexFunction, x: usize) -> Result<f64> {
        self.gradient_inner(f, f, x)
    }

    /// Ordered-pair Dirichlet sum `Σ_{x,y∈V} |∇_xy f|² w_xy`; twice the per-edge sum.
    pub fn dirichlet_sum(&self, f: &VertexFunction) -> Result<f64> {
        self.check_function(f)?;
        let v = f.values();
        Ok(2.0
            * self
                .edges
                .iter()
                .map(|&(a, b, w)| w * (v[b] - v[a]).powi(2))
                .sum::<f64>())
    }

    /// `Σ_x f(x) h(x) μ(x)`.
    pub fn mu_inner(&self, f: &VertexFunction, h: &VertexFunction) -> Result<f64> {
        self.check_function(f)?;
        self.check_function(h)?;
        Ok(self.mu_inner_values(f.values(), h.values()))
    }

    pub(crate) fn mu_inner_values(&self, f: &[f64], h: &[f64]) -> f64 {
        f.iter()
            .zip(h)
            .zip(&self.mu)
            .map(|((a, b), m)| a * b * m)
            .sum()
    }

    /// Breadth-first distances from `source`; `None` for unreachable vertices.
    pub fn distances_from(&self, source: usize) -> Result<Vec<Option<usize>>> {
        self.check_vertex(source)?;
        let mut dist = vec![None; self.vertex_count()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(x) = queue.pop_front() {
            let dx = dist[x].unwrap_or(0);
            for &(y, _) in &self.adjacency[x] {
                if dist[y].is_none() {
                    dist[y] = Some(dx + 1);
                    queue.push_back(y);
                }
            }
        }
        Ok(dist)
    }

    /// Shortest-path length in edges.
    pub fn distance(&self, x: usize, y: usize) -> Result<usize> {
        self.check_vertex(y)?;
        self.distances_from(x)?[y].ok_or_else(|| {
            Error::Structure(format!("vertex {y} is unreachable from vertex {x}"))
        })
    }

    /// Largest pairwise distance inside `subset`.
    pub fn diameter(&self, subset: &VertexSubset) -> Result<usize> {
        let mut best = 0;
        for &x in subset.members() {
            let dist = self.distances_from(x)?;
            for &y in subset.members() {
                let d = dist[y].ok_or_else(|| {
                    Error::Structure(format!("vertex {y} is unreachable from vertex {x}"))
                })?;
                best = best.max(d);
            }
        }
        Ok(best)
    }

    fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.vertex_count()];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for &(y, _) in &self.adjacency[x] {
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        count == self.vertex_count()
    }
}

fn fingerprint(n: usize, edges: &[(usize, usize, f64)]) -> u64 {
    let mut hasher = Sha256::new();
    hasher.update((n as u64).to_le_bytes());
    for &(a, b, w) in edges {
        hasher.update((a as u64).to_le_bytes());
        hasher.update((b as u64).to_le_bytes());
        hasher.update(w.to_bits().to_le_bytes());
    }
    let digest = hasher.finalize();
    let mut head = [0u8; 8];
    head.copy_from_slice(&digest[..8]);
    u64::from_le_bytes(head)
}

/// A set of vertices of one graph, stored sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexSubset {
    graph_id: u64,
    mask: Vec<bool>,
    members: Vec<usize>,
}

impl VertexSubset {
    pub fn new<I>(graph: &WeightedGraph, members: I) -> Result<Self>
    where
        I: IntoIterator<Item = usize>,
    {
        let n = graph.vertex_count();
        let mut mask = vec![false; n];
        for x in members {
            graph.check_vertex(x)?;
            mask[x] = true;
        }
        Ok(Self::from_mask(graph.id(), mask))
    }

    pub fn all(graph: &WeightedGraph) -> Self {
        Self::from_mask(graph.id(), vec![true; graph.vertex_count()])
    }

    fn from_mask(graph_id: u64, mask: Vec<bool>) -> Self {
        let members = mask
            .iter()
            .enumerate()
            .filter_map(|(i, &m)| m.then_some(i))
            .collect();
        Self {
            graph_id,
            mask,
            members,
        }
    }

    pub fn graph_id(&self) -> u64 {
        self.graph_id
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.mask.get(x).copied().unwrap_or(false)
    }

    pub fn is_full(&self) -> bool {
        self.members.len() == self.mask.len()
    }

    pub fn is_proper(&self) -> bool {
        !self.is_empty() && !self.is_full()
    }

    pub fn complement(&self) -> Self {
        Self::from_mask(self.graph_id, self.mask.iter().map(|m| !m).collect())
    }

    /// Rejects the empty set and the whole vertex set.
    pub fn require_proper(&self) -> Result<()> {
        if self.is_empty() {
            Err(Error::Subset("subset is empty".into()))
        } else if self.is_full() {
            Err(Error::Subset(
                "subset is the whole vertex set; a proper subset is required".into(),
            ))
        } else {
            Ok(())
        }
    }

    pub(crate) fn check_graph(&self, graph: &WeightedGraph) -> Result<()> {
        if self.graph_id == graph.id() {
            Ok(())
        } else {
            Err(Error::DomainMismatch {
                expected: graph.id(),
                found: self.graph_id,
            })
        }
    }
}
