use super::{VertexSubset, WeightedGraph};
use crate::error::{Error, Result};

/// Weighted Cartesian product `G₁ □_{p,q} G₂`.
///
/// Vertex `(x₁, x₂)` gets index `x₁·|V₂| + x₂`. An edge moving along `G₂`
/// has weight `p·μ¹(x₁)·w²`, one moving along `G₁` has weight `q·μ²(x₂)·w¹`,
/// which yields `μ(x₁, x₂) = (p + q)·μ¹(x₁)·μ²(x₂)`.
pub fn cartesian_product(
    g1: &WeightedGraph,
    g2: &WeightedGraph,
    p: f64,
    q: f64,
) -> Result<WeightedGraph> {
    if !(p.is_finite() && p > 0.0 && q.is_finite() && q > 0.0) {
        return Err(Error::Parameter(format!(
            "product weights must be positive, got p = {p}, q = {q}"
        )));
    }
    let (n1, n2) = (g1.vertex_count(), g2.vertex_count());
    let index = |a: usize, b: usize| a * n2 + b;
    let mut edges = Vec::with_capacity(n1 * g2.edge_count() + n2 * g1.edge_count());
    for x1 in 0..n1 {
        for &(a, b, w) in g2.edges() {
            edges.push((index(x1, a), index(x1, b), p * g1.mu()[x1] * w));
        }
    }
    for x2 in 0..n2 {
        for &(a, b, w) in g1.edges() {
            edges.push((index(a, x2), index(b, x2), q * g2.mu()[x2] * w));
        }
    }
    let labels = (0..n1)
        .flat_map(|a| (0..n2).map(move |b| (a, b)))
        .map(|(a, b)| format!("({},{})", g1.label(a), g2.label(b)))
        .collect();
    WeightedGraph::with_labels(labels, edges)
}

/// Finite truncation `G₀ □ ({−r..r} ⊂ ℤ)` of a strip-type graph.
#[derive(Debug, Clone)]
pub struct StripGraph {
    base: WeightedGraph,
    radius: usize,
    product: WeightedGraph,
}

/// Builds the levels `−r..=r` of `G₀ □ ℤ` with `p = q = 1` and unit weights on
/// the line.
///
/// Weights are those of the infinite product: a base edge on any level has
/// weight `μ_ℤ·w⁰ = 2w⁰` and a level edge at `x₀` has weight `μ⁰(x₀)`. Only the
/// edges leaving the truncation are dropped, so levels `|z| < r` keep
/// `μ = 4μ⁰` while the two end levels have `μ = 3μ⁰`.
pub fn strip_truncation(base: &WeightedGraph, radius: usize) -> Result<StripGraph> {
    const LINE_MU: f64 = 2.0;
    let n0 = base.vertex_count();
    let levels = 2 * radius + 1;
    let index = |x0: usize, level: usize| level * n0 + x0;
    let mut edges = Vec::new();
    for level in 0..levels {
        for &(a, b, w) in base.edges() {
            edges.push((index(a, level), index(b, level), LINE_MU * w));
        }
        if level + 1 < levels {
            for x0 in 0..n0 {
                edges.push((index(x0, level), index(x0, level + 1), base.mu()[x0]));
            }
        }
    }
    let r = radius as i64;
    let labels = (0..levels)
        .flat_map(|level| (0..n0).map(move |x0| (x0, level as i64 - r)))
        .map(|(x0, z)| format!("({},{})", base.label(x0), z))
        .collect();
    let product = WeightedGraph::with_labels(labels, edges)?;
    Ok(StripGraph {
        base: base.clone(),
        radius,
        product,
    })
}

impl StripGraph {
    pub fn base(&self) -> &WeightedGraph {
        &self.base
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn graph(&self) -> &WeightedGraph {
        &self.product
    }

    /// Index of the vertex `(x₀, z)`.
    pub fn vertex(&self, x0: usize, z: i64) -> Result<usize> {
        self.base.check_vertex(x0)?;
        if z.unsigned_abs() as usize > self.radius {
            return Err(Error::Parameter(format!(
                "level {z} outside truncation radius {}",
                self.radius
            )));
        }
        let level = (z + self.radius as i64) as usize;
        Ok(level * self.base.vertex_count() + x0)
    }

    /// `(base vertex, level)` of a strip vertex.
    pub fn layer_index(&self, v: usize) -> (usize, i64) {
        let n0 = self.base.vertex_count();
        (v % n0, (v / n0) as i64 - self.radius as i64)
    }

    pub fn level(&self, v: usize) -> i64 {
        self.layer_index(v).1
    }

    /// `D_r = V₀ × {−r..r}`.
    pub fn ball(&self, r: usize) -> Result<VertexSubset> {
        if r > self.radius {
            return Err(Error::Coverage(format!(
                "D_{r} exceeds truncation radius {}",
                self.radius
            )));
        }
        let n0 = self.base.vertex_count();
        let lo = (self.radius - r) * n0;
        let hi = (self.radius + r + 1) * n0;
        VertexSubset::new(&self.product, lo..hi)
    }

    /// `W₀ × {z : |z| ≤ max_level}`.
    pub fn lift(&self, base_subset: &VertexSubset, max_level: usize) -> Result<VertexSubset> {
        base_subset.check_graph(&self.base)?;
        let max_level = max_level.min(self.radius) as i64;
        let members: Vec<usize> = (0..self.product.vertex_count())
            .filter(|&v| {
                let (x0, z) = self.layer_index(v);
                base_subset.contains(x0) && z.abs() <= max_level
            })
            .collect();
        VertexSubset::new(&self.product, members)
    }
}
