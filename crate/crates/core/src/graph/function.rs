use rand::Rng;

use super::{VertexSubset, WeightedGraph};
use crate::error::{Error, Result};

/// A real-valued function on the vertex set of one graph.
#[derive(Debug, Clone, PartialEq)]
pub struct VertexFunction {
    graph_id: u64,
    values: Vec<f64>,
}

impl VertexFunction {
    pub fn new(graph: &WeightedGraph, values: Vec<f64>) -> Result<Self> {
        if values.len() != graph.vertex_count() {
            return Err(Error::Parameter(format!(
                "expected {} values, got {}",
                graph.vertex_count(),
                values.len()
            )));
        }
        Ok(Self::from_parts(graph.id(), values))
    }

    pub(crate) fn from_parts(graph_id: u64, values: Vec<f64>) -> Self {
        Self { graph_id, values }
    }

    pub fn zeros(graph: &WeightedGraph) -> Self {
        Self::constant(graph, 0.0)
    }

    pub fn constant(graph: &WeightedGraph, value: f64) -> Self {
        Self::from_parts(graph.id(), vec![value; graph.vertex_count()])
    }

    pub fn from_fn(graph: &WeightedGraph, f: impl FnMut(usize) -> f64) -> Self {
        Self::from_parts(graph.id(), (0..graph.vertex_count()).map(f).collect())
    }

    pub fn indicator(subset: &VertexSubset) -> Self {
        Self::from_parts(
            subset.graph_id(),
            subset.mask.iter().map(|&m| if m { 1.0 } else { 0.0 }).collect(),
        )
    }

    /// Uniform samples in `[-1, 1]`.
    pub fn random<R: Rng + ?Sized>(graph: &WeightedGraph, rng: &mut R) -> Self {
        Self::from_fn(graph, |_| rng.random_range(-1.0..=1.0))
    }

    /// Uniform samples in `[-1, 1]` on `subset`, zero elsewhere.
    pub fn random_supported<R: Rng + ?Sized>(subset: &VertexSubset, rng: &mut R) -> Self {
        let mut f = Self::indicator(subset);
        for x in subset.members() {
            f.values[*x] = rng.random_range(-1.0..=1.0);
        }
        f
    }

    pub fn graph_id(&self) -> u64 {
        self.graph_id
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self::from_parts(self.graph_id, self.values.iter().map(|v| v * factor).collect())
    }

    /// Largest absolute value at vertices outside `subset`.
    pub fn sup_off(&self, subset: &VertexSubset) -> f64 {
        self.values
            .iter()
            .enumerate()
            .filter(|(x, _)| !subset.contains(*x))
            .fold(0.0, |m, (_, v)| m.max(v.abs()))
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }
}
