//! Seeded verification suites. Each returns one certificate per sample, in
//! sample order, so reports are reproducible byte for byte.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::certificate::Certificate;
use crate::error::Result;
use crate::frequency::{
    backward_uniqueness_certificate, calibrate_kappa, check_monotonicity, fmt, frequency_trace,
    harnack_certificate,
};
use crate::generators::random_graph_up_to;
use crate::graph::{greens_terms, VertexFunction, VertexSubset, WeightedGraph};
use crate::heat::{evolve, uniform_grid, HeatProblem, Trajectory};
use crate::spectral::dirichlet_data;

/// Default residual tolerance of the Green's formula suite.
pub const GREENS_TOL: f64 = 1e-10;

/// Default relative tolerance of the Poincaré suite.
pub const POINCARE_REL_TOL: f64 = 1e-9;

/// Largest `|c|` drawn for the perturbed half of the heat corpus.
pub const CORPUS_COEFFICIENT: f64 = 0.1;

/// Grid step of the heat corpus.
pub const CORPUS_STEP: f64 = 0.01;

/// Independent generator for sample `index` of a suite seeded with `seed`.
fn sample_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64 + 1);
    rng
}

fn random_nonempty_subset<R: Rng + ?Sized>(rng: &mut R, g: &WeightedGraph, proper: bool) -> Result<VertexSubset> {
    let n = g.vertex_count();
    loop {
        let members: Vec<usize> = (0..n).filter(|_| rng.random_bool(0.5)).collect();
        if !members.is_empty() && (!proper || members.len() < n) {
            return VertexSubset::new(g, members);
        }
    }
}

/// Green's formula on `count` random graphs with at most `max_n` vertices:
/// a random `Ω`, the whole vertex set, and the symmetric form
/// `Σ Δf·g·μ = Σ f·Δg·μ`. The observed value is the largest residual.
pub fn greens_suite(seed: u64, count: usize, max_n: usize, tol: Option<f64>) -> Result<Vec<Certificate>> {
    let tol = tol.unwrap_or(GREENS_TOL);
    (0..count)
        .into_par_iter()
        .map(|i| {
            let mut rng = sample_rng(seed, i);
            let g = random_graph_up_to(&mut rng, max_n);
            let f = VertexFunction::random(&g, &mut rng);
            let h = VertexFunction::random(&g, &mut rng);
            let omega = random_nonempty_subset(&mut rng, &g, false)?;
            let local = greens_terms(&g, &omega, &f, &h)?.residual();
            let whole = greens_terms(&g, &VertexSubset::all(&g), &f, &h)?.residual();
            let lf = g.laplacian(&f)?;
            let lh = g.laplacian(&h)?;
            let symmetric = (g.mu_inner(&lf, &h)? - g.mu_inner(&f, &lh)?).abs();
            let worst = local.max(whole).max(symmetric);
            Ok(Certificate::upper("greens_formula", 0.0, worst, tol)
                .with("sample", i)
                .with("n", g.vertex_count())
                .with("omega_size", omega.len())
                .with("residual_omega", fmt(local))
                .with("residual_whole", fmt(whole))
                .with("residual_symmetric", fmt(symmetric)))
        })
        .collect()
}

/// `Σ f²μ ≤ C(W)·Σ_{x,y}|∇_xy f|² w_xy` for random `f` supported on a random
/// proper subset `W`.
pub fn poincare_suite(seed: u64, count: usize, max_n: usize, tol: Option<f64>) -> Result<Vec<Certificate>> {
    let rel = tol.unwrap_or(POINCARE_REL_TOL);
    (0..count)
        .into_par_iter()
        .map(|i| {
            let mut rng = sample_rng(seed, i);
            let g = random_graph_up_to(&mut rng, max_n);
            let w = random_nonempty_subset(&mut rng, &g, true)?;
            let data = dirichlet_data(&g, &w)?;
            let f = VertexFunction::random_supported(&w, &mut rng);
            let lhs = g.mu_inner(&f, &f)?;
            let bound = data.poincare_constant * g.dirichlet_sum(&f)?;
            Ok(Certificate::upper("poincare", bound, lhs, rel * bound)
                .with("sample", i)
                .with("n", g.vertex_count())
                .with("subset_size", w.len())
                .with("C", fmt(data.poincare_constant)))
        })
        .collect()
}

/// One sample of the heat corpus, evolved at step `h` over `[0, 1]`.
#[derive(Debug, Clone)]
pub struct CorpusSample {
    pub problem: HeatProblem,
    pub initial: VertexFunction,
}

impl CorpusSample {
    pub fn trajectory(&self, step: f64) -> Result<Trajectory> {
        let n = (1.0 / step).round() as usize;
        evolve(&self.problem, &self.initial, &uniform_grid(0.0, 1.0, n))
    }
}

/// `count` solutions on random graphs with at most `max_n` vertices. Even
/// samples solve the pure heat equation; odd samples carry a static
/// coefficient drawn uniformly from `[−0.1, 0.1]`.
pub fn heat_corpus(seed: u64, count: usize, max_n: usize) -> Result<Vec<CorpusSample>> {
    (0..count)
        .map(|i| {
            let mut rng = sample_rng(seed, i);
            let g = Arc::new(random_graph_up_to(&mut rng, max_n));
            let initial = VertexFunction::random(&g, &mut rng);
            let problem = if i % 2 == 0 {
                HeatProblem::pure(g)
            } else {
                let c = VertexFunction::from_fn(&g, |_| rng.random_range(-CORPUS_COEFFICIENT..=CORPUS_COEFFICIENT));
                HeatProblem::with_potential(g, c)?
            };
            Ok(CorpusSample { problem, initial })
        })
        .collect()
}

/// Frequency monotonicity over the heat corpus, with `κ` calibrated by
/// halving the step.
pub fn monotonicity_suite(seed: u64, count: usize, max_n: usize) -> Result<Vec<Certificate>> {
    heat_corpus(seed, count, max_n)?
        .par_iter()
        .enumerate()
        .map(|(i, sample)| {
            let coarse = frequency_trace(&sample.trajectory(CORPUS_STEP)?)?;
            let fine = frequency_trace(&sample.trajectory(CORPUS_STEP / 2.0)?)?;
            let kappa = calibrate_kappa(&coarse, &fine)?;
            Ok(check_monotonicity(&coarse, Some(kappa))?
                .with("sample", i)
                .with("pure", sample.problem.is_pure_heat())
                .with("excursion_h", fmt(coarse.negative_excursion()))
                .with("excursion_h2", fmt(fine.negative_excursion())))
        })
        .collect()
}

/// The Harnack lower bound at every grid point of each corpus trajectory.
pub fn harnack_suite(seed: u64, count: usize, max_n: usize) -> Result<Vec<Certificate>> {
    heat_corpus(seed, count, max_n)?
        .par_iter()
        .enumerate()
        .map(|(i, sample)| Ok(harnack_certificate(&sample.trajectory(CORPUS_STEP)?)?.with("sample", i)))
        .collect()
}

/// `I(b)` against the Harnack bound at the final time of each corpus
/// trajectory.
pub fn backward_suite(seed: u64, count: usize, max_n: usize) -> Result<Vec<Certificate>> {
    heat_corpus(seed, count, max_n)?
        .par_iter()
        .enumerate()
        .map(|(i, sample)| {
            Ok(backward_uniqueness_certificate(&sample.trajectory(CORPUS_STEP)?)?.with("sample", i))
        })
        .collect()
}
