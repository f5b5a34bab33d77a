use super::{VertexFunction, VertexSubset, WeightedGraph};
use crate::error::{Error, Result};

/// The three sums of Green's formula on a finite vertex set `Ω`:
///
/// ```text
/// lhs      = Σ_{x∈Ω} Δf(x) h(x) μ(x)
/// interior = −½ Σ_{x,y∈Ω} (∇_xy f)(∇_xy h) w_xy        (ordered pairs)
/// boundary = Σ_{x∈Ω} Σ_{y∉Ω} (∇_xy f) h(x) w_xy
/// ```
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GreensTerms {
    pub lhs: f64,
    pub interior: f64,
    pub boundary: f64,
}

impl GreensTerms {
    pub fn residual(&self) -> f64 {
        (self.lhs - (self.interior + self.boundary)).abs()
    }
}

pub fn greens_terms(
    graph: &WeightedGraph,
    omega: &VertexSubset,
    f: &VertexFunction,
    h: &VertexFunction,
) -> Result<GreensTerms> {
    graph.check_function(f)?;
    graph.check_function(h)?;
    omega.check_graph(graph)?;
    if omega.is_empty() {
        return Err(Error::Subset("Green's formula needs a non-empty set".into()));
    }
    let (fv, hv) = (f.values(), h.values());
    let lap = graph.laplacian_values(fv);

    let mut lhs = 0.0;
    let mut interior = 0.0;
    let mut boundary = 0.0;
    for &x in omega.members() {
        lhs += lap[x] * hv[x] * graph.mu()[x];
        for &(y, w) in graph.neighbors(x) {
            let df = fv[y] - fv[x];
            if omega.contains(y) {
                interior += df * (hv[y] - hv[x]) * w;
            } else {
                boundary += df * hv[x] * w;
            }
        }
    }
    Ok(GreensTerms {
        lhs,
        interior: -0.5 * interior,
        boundary,
    })
}

/// `|LHS − RHS|` of Green's formula on `omega`.
pub fn greens_identity_residual(
    graph: &WeightedGraph,
    omega: &VertexSubset,
    f: &VertexFunction,
    h: &VertexFunction,
) -> Result<f64> {
    greens_terms(graph, omega, f, h).map(|t| t.residual())
}
