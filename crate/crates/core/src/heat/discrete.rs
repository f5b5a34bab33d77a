use crate::error::Result;
use crate::graph::{VertexFunction, WeightedGraph};

/// One step of the discrete-time heat equation, `u ↦ u + Δu`, i.e.
/// `u_{n+1}(x) = Σ_{y∼x} (w_xy/μ(x)) u_n(y)`.
pub fn discrete_time_step(graph: &WeightedGraph, u: &VertexFunction) -> Result<VertexFunction> {
    let lap = graph.laplacian(u)?;
    let values = u
        .values()
        .iter()
        .zip(lap.values())
        .map(|(a, b)| a + b)
        .collect();
    VertexFunction::new(graph, values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete_graph, path_graph};

    #[test]
    fn constants_are_fixed() {
        let g = path_graph(5);
        let c = VertexFunction::constant(&g, -3.0);
        assert_eq!(discrete_time_step(&g, &c).unwrap(), c);
    }

    #[test]
    fn p3_state_vanishes_in_one_step() {
        let g = path_graph(3);
        let u = VertexFunction::new(&g, vec![1.0, 0.0, -1.0]).unwrap();
        let next = discrete_time_step(&g, &u).unwrap();
        assert_eq!(next.values(), &[0.0, 0.0, 0.0]);
    }

    #[test]
    fn k2_swaps_values() {
        let g = complete_graph(2);
        let u = VertexFunction::new(&g, vec![1.0, -1.0]).unwrap();
        assert_eq!(discrete_time_step(&g, &u).unwrap().values(), &[-1.0, 1.0]);
    }
}
