//! Dense spectral computations for the normalized Laplacian.
//!
//! `Δ = M⁻¹L` (with `M = diag(μ)` and `L` the weighted adjacency minus
//! `diag(μ)`) is self-adjoint for `⟨f, g⟩_μ = Σ f g μ`. The symmetric matrix
//! `S = M^{1/2}(M⁻¹L)M^{-1/2}` is diagonalized instead, and its eigenvectors
//! `v` are mapped back to `φ = M^{-1/2}v`, which are μ-orthonormal.
//! Restricting `S` to a vertex subset `W` (principal submatrix) gives the
//! Dirichlet operator on `W`; adding `diag(c)` gives `Δ + c` with the same
//! symmetry.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};
use crate::graph::{VertexFunction, VertexSubset, WeightedGraph};

/// Tolerance of the `[−2, 0]` spectrum check.
pub const SPECTRUM_TOL: f64 = 1e-9;

/// Eigenpairs `(λ_i, φ_i)` with `λ_1 ≥ … ≥ λ_n` and `Σ φ_i φ_j μ = δ_ij`.
///
/// Eigenvectors are stored on the full vertex set; for a restricted operator
/// they vanish outside the support.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    graph_id: u64,
    mu: Vec<f64>,
    support: VertexSubset,
    eigenvalues: Vec<f64>,
    eigenvectors: Vec<VertexFunction>,
}

/// Spectrum of `Δ` on the whole graph.
pub fn full_spectrum(graph: &WeightedGraph) -> Result<SpectralDecomposition> {
    restricted_spectrum(graph, &VertexSubset::all(graph), None)
}

/// Spectrum of `Δ + diag(c)` with Dirichlet condition outside `support`.
pub fn restricted_spectrum(
    graph: &WeightedGraph,
    support: &VertexSubset,
    coefficient: Option<&VertexFunction>,
) -> Result<SpectralDecomposition> {
    support.check_graph(graph)?;
    if support.is_empty() {
        return Err(Error::Subset("operator support is empty".into()));
    }
    if let Some(c) = coefficient {
        graph.check_function(c)?;
    }
    let members = support.members();
    let k = members.len();
    let mut local = vec![usize::MAX; graph.vertex_count()];
    for (i, &x) in members.iter().enumerate() {
        local[x] = i;
    }
    let mu = graph.mu();
    let mut s = DMatrix::<f64>::zeros(k, k);
    for (i, &x) in members.iter().enumerate() {
        s[(i, i)] = -1.0 + coefficient.map_or(0.0, |c| c.values()[x]);
        for &(y, w) in graph.neighbors(x) {
            if support.contains(y) {
                s[(i, local[y])] = w / (mu[x] * mu[y]).sqrt();
            }
        }
    }

    let eig = SymmetricEigen::try_new(s, f64::EPSILON, 100_000)
        .ok_or_else(|| Error::Numeric("symmetric eigensolver did not converge".into()))?;

    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));

    let n = graph.vertex_count();
    let mut eigenvalues = Vec::with_capacity(k);
    let mut eigenvectors = Vec::with_capacity(k);
    for &j in &order {
        let column = eig.eigenvectors.column(j);
        let mut values = vec![0.0; n];
        for (i, &x) in members.iter().enumerate() {
            values[x] = column[i] / mu[x].sqrt();
        }
        let scale = column.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let first = column.iter().find(|v| v.abs() > 1e-10 * scale).copied();
        if first.is_some_and(|v| v < 0.0) {
            values.iter_mut().for_each(|v| *v = -*v);
        }
        eigenvalues.push(eig.eigenvalues[j]);
        eigenvectors.push(VertexFunction::from_parts(graph.id(), values));
    }

    Ok(SpectralDecomposition {
        graph_id: graph.id(),
        mu: mu.to_vec(),
        support: support.clone(),
        eigenvalues,
        eigenvectors,
    })
}

impl SpectralDecomposition {
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenvectors(&self) -> &[VertexFunction] {
        &self.eigenvectors
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn graph_id(&self) -> u64 {
        self.graph_id
    }

    pub fn support(&self) -> &VertexSubset {
        &self.support
    }

    fn check(&self, f: &VertexFunction) -> Result<()> {
        if f.graph_id() == self.graph_id && f.len() == self.mu.len() {
            Ok(())
        } else {
            Err(Error::DomainMismatch {
                expected: self.graph_id,
                found: f.graph_id(),
            })
        }
    }

    /// Mode coefficients `⟨u, φ_i⟩_μ`.
    pub fn coefficients(&self, u: &VertexFunction) -> Result<Vec<f64>> {
        self.check(u)?;
        Ok(self
            .eigenvectors
            .iter()
            .map(|phi| {
                phi.values()
                    .iter()
                    .zip(u.values())
                    .zip(&self.mu)
                    .map(|((p, v), m)| p * v * m)
                    .sum()
            })
            .collect())
    }

    /// `Σ_i e^{λ_i t} a_i φ_i`.
    pub fn synthesize(&self, coefficients: &[f64], t: f64) -> VertexFunction {
        let mut out = vec![0.0; self.mu.len()];
        for ((a, lambda), phi) in coefficients
            .iter()
            .zip(&self.eigenvalues)
            .zip(&self.eigenvectors)
        {
            if *a == 0.0 {
                continue;
            }
            let scale = a * (lambda * t).exp();
            for (o, p) in out.iter_mut().zip(phi.values()) {
                *o += scale * p;
            }
        }
        VertexFunction::from_parts(self.graph_id, out)
    }

    /// Largest `‖Δφ_i − λ_iφ_i‖_∞` over all modes (pure Laplacian, no coefficient).
    pub fn max_residual(&self, graph: &WeightedGraph) -> Result<f64> {
        let mut worst = 0.0f64;
        for (lambda, phi) in self.eigenvalues.iter().zip(&self.eigenvectors) {
            let lap = graph.laplacian(phi)?;
            for (x, (l, p)) in lap.values().iter().zip(phi.values()).enumerate() {
                if self.support.contains(x) {
                    worst = worst.max((l - lambda * p).abs());
                }
            }
        }
        Ok(worst)
    }
}

/// `e^{At}u₀` through the eigen-expansion; negative `t` runs backward.
pub fn propagator_apply(
    dec: &SpectralDecomposition,
    u0: &VertexFunction,
    t: f64,
) -> Result<VertexFunction> {
    let coefficients = dec.coefficients(u0)?;
    Ok(dec.synthesize(&coefficients, t))
}

/// First Dirichlet eigenvalue of a proper subset and the constants derived from it.
#[derive(Debug, Clone)]
pub struct DirichletData {
    pub subset: VertexSubset,
    /// `min Σ_{x,y}|∇_xy f|² w_xy / Σ f² μ` over `f` supported on the subset.
    pub lambda1: f64,
    /// `C = 1/λ₁`.
    pub poincare_constant: f64,
    /// `ε = 1/(32C)`.
    pub epsilon_threshold: f64,
}

pub fn dirichlet_data(graph: &WeightedGraph, subset: &VertexSubset) -> Result<DirichletData> {
    subset.check_graph(graph)?;
    subset.require_proper()?;
    let dec = restricted_spectrum(graph, subset, None)?;
    // The ordered-pair sum is twice the edge sum, hence the factor 2.
    let lambda1 = -2.0 * dec.eigenvalues[0];
    if !(lambda1 > 0.0) {
        return Err(Error::Numeric(format!(
            "first Dirichlet eigenvalue is not positive: {lambda1}"
        )));
    }
    let poincare_constant = 1.0 / lambda1;
    Ok(DirichletData {
        subset: subset.clone(),
        lambda1,
        poincare_constant,
        epsilon_threshold: 1.0 / (32.0 * poincare_constant),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete_graph, path_graph, random_connected_graph, random_graph_up_to};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn k2_spectrum() {
        let dec = full_spectrum(&complete_graph(2)).unwrap();
        assert!(dec.eigenvalues()[0].abs() < 1e-14);
        assert!((dec.eigenvalues()[1] + 2.0).abs() < 1e-14);
    }

    #[test]
    fn k4_spectrum() {
        let dec = full_spectrum(&complete_graph(4)).unwrap();
        let expect = [0.0, -4.0 / 3.0, -4.0 / 3.0, -4.0 / 3.0];
        for (a, b) in dec.eigenvalues().iter().zip(expect) {
            assert!((a - b).abs() < 1e-12, "{a} vs {b}");
        }
    }

    #[test]
    fn top_mode_is_constant_and_sign_normalized() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let g = random_connected_graph(&mut rng, 10, 0.3);
        let dec = full_spectrum(&g).unwrap();
        let phi = &dec.eigenvectors()[0];
        assert!(dec.eigenvalues()[0].abs() < 1e-12);
        let first = phi.values()[0];
        assert!(first > 0.0);
        assert!(phi.values().iter().all(|v| (v - first).abs() < 1e-10));
        for phi in dec.eigenvectors() {
            let lead = phi.values().iter().find(|v| v.abs() > 1e-9).unwrap();
            assert!(*lead > 0.0);
        }
    }

    #[test]
    fn orthonormal_and_in_range() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..30 {
            let g = random_graph_up_to(&mut rng, 25);
            let dec = full_spectrum(&g).unwrap();
            for (i, a) in dec.eigenvectors().iter().enumerate() {
                for (j, b) in dec.eigenvectors().iter().enumerate() {
                    let ip = g.mu_inner(a, b).unwrap();
                    let expect = if i == j { 1.0 } else { 0.0 };
                    assert!((ip - expect).abs() < 1e-9);
                }
            }
            for &l in dec.eigenvalues() {
                assert!((-2.0 - SPECTRUM_TOL..=SPECTRUM_TOL).contains(&l));
            }
            assert!(dec.eigenvalues().windows(2).all(|w| w[0] >= w[1]));
            assert!(dec.max_residual(&g).unwrap() < 1e-9);
        }
    }

    #[test]
    fn propagator_examples() {
        let g = complete_graph(2);
        let dec = full_spectrum(&g).unwrap();
        let u0 = VertexFunction::new(&g, vec![1.0, -1.0]).unwrap();
        let same = propagator_apply(&dec, &u0, 0.0).unwrap();
        assert!(same.max_abs_diff(&u0) < 1e-12);
        for t in [-1.5, 0.3, 2.0] {
            let u = propagator_apply(&dec, &u0, t).unwrap();
            let e = (-2.0 * t).exp();
            assert!((u.values()[0] - e).abs() < 1e-12 * e.max(1.0));
            assert!((u.values()[1] + e).abs() < 1e-12 * e.max(1.0));
        }
        let c = VertexFunction::constant(&g, 3.0);
        let u = propagator_apply(&dec, &c, 17.0).unwrap();
        assert!(u.max_abs_diff(&c) < 1e-12);
    }

    #[test]
    fn semigroup_property() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let g = random_connected_graph(&mut rng, 12, 0.3);
        let dec = full_spectrum(&g).unwrap();
        let u0 = VertexFunction::random(&g, &mut rng);
        let (s, t) = (0.7, 1.9);
        let two_steps = propagator_apply(&dec, &propagator_apply(&dec, &u0, s).unwrap(), t).unwrap();
        let one_step = propagator_apply(&dec, &u0, s + t).unwrap();
        assert!(two_steps.max_abs_diff(&one_step) < 1e-9);
    }

    #[test]
    fn dirichlet_examples() {
        let k2 = complete_graph(2);
        let d = dirichlet_data(&k2, &VertexSubset::new(&k2, [0]).unwrap()).unwrap();
        assert!((d.lambda1 - 2.0).abs() < 1e-14);
        assert!((d.poincare_constant - 0.5).abs() < 1e-14);
        assert!((d.epsilon_threshold - 1.0 / 16.0).abs() < 1e-14);
        assert_eq!(d.poincare_constant * d.lambda1, 1.0);

        let p3 = path_graph(3);
        let d = dirichlet_data(&p3, &VertexSubset::new(&p3, [1]).unwrap()).unwrap();
        assert!((d.lambda1 - 2.0).abs() < 1e-14);

        assert!(matches!(
            dirichlet_data(&k2, &VertexSubset::all(&k2)),
            Err(Error::Subset(_))
        ));
        assert!(matches!(
            dirichlet_data(&k2, &VertexSubset::new(&k2, []).unwrap()),
            Err(Error::Subset(_))
        ));
    }

    #[test]
    fn poincare_inequality_on_random_functions() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let g = random_connected_graph(&mut rng, 14, 0.25);
        let w = VertexSubset::new(&g, (0..14).filter(|x| x % 3 != 0)).unwrap();
        let d = dirichlet_data(&g, &w).unwrap();
        for _ in 0..100 {
            let f = VertexFunction::random_supported(&w, &mut rng);
            let mass = g.mu_inner(&f, &f).unwrap();
            let energy = g.dirichlet_sum(&f).unwrap();
            assert!(mass <= d.poincare_constant * energy + 1e-10);
        }
    }

    #[test]
    fn dirichlet_eigenvalue_decreases_with_the_domain() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..10 {
            let g = random_connected_graph(&mut rng, 12, 0.3);
            let mut members = vec![rng.random_range(0..12)];
            let mut last = f64::INFINITY;
            while members.len() < 11 {
                let w = VertexSubset::new(&g, members.iter().copied()).unwrap();
                let l = dirichlet_data(&g, &w).unwrap().lambda1;
                assert!(l <= last + 1e-12);
                last = l;
                let next = (0..12).find(|x| !members.contains(x)).unwrap();
                members.push(next);
            }
        }
    }
}
