//! Parabolic frequency of a trajectory and the certificates derived from it.
//!
//! ```text
//! I(t) = Σ_x u² μ            D(t) = −Σ_x |∇u|² μ            U(t) = D/I
//! ```
//!
//! `U` is non-positive. Along a solution of `|(∂_t − Δ)u| ≤ C(t)(|u| + |∇u|)`
//! it satisfies `U' ≥ 2C²(U − 1)`, which integrates to a lower bound on
//! `I(b)` in terms of `I(a)`, `U(a)` and `K = sup C` (see [`harnack_bound`]).

use crate::certificate::Certificate;
use crate::error::{Error, Result};
use crate::heat::Trajectory;

/// Grid points with `I` below this fraction of the reference mass are degenerate.
pub const DEGENERATE_MASS_RATIO: f64 = 1e-14;

/// Constant part of the monotonicity tolerance `κh² + 1e−8`.
pub const MONOTONICITY_FLOOR: f64 = 1e-8;

/// Factor applied to the refinement estimate of the discretization error.
const KAPPA_SAFETY: f64 = 2.0;

/// Per-grid-point frequency data of a trajectory.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyTrace {
    pub time_grid: Vec<f64>,
    /// `I(t)`.
    pub mass: Vec<f64>,
    /// `D(t) = −Σ|∇u|²μ`.
    pub energy: Vec<f64>,
    /// `2Σ uΔu μ`, equal to `D` by Green's formula.
    pub energy_green: Vec<f64>,
    /// `U = D/I`; `None` at degenerate points.
    pub frequency: Vec<Option<f64>>,
    /// Central difference of `U`; `None` at the ends and next to degenerate points.
    pub frequency_derivative: Vec<Option<f64>>,
    /// Pointwise-feasible `C(t)`; infinite where no finite bound exists.
    pub perturbation: Vec<f64>,
    /// `K = sup C`.
    pub sup_perturbation: f64,
    pub degenerate: Vec<bool>,
}

impl FrequencyTrace {
    pub fn len(&self) -> usize {
        self.time_grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.time_grid.is_empty()
    }

    pub fn uniform_step(&self) -> Option<f64> {
        let t = &self.time_grid;
        if t.len() < 2 {
            return None;
        }
        let h = (t[t.len() - 1] - t[0]) / (t.len() - 1) as f64;
        t.windows(2)
            .all(|w| ((w[1] - w[0]) - h).abs() <= 1e-9 * h)
            .then_some(h)
    }

    /// Largest `|D − 2ΣuΔuμ|` over the grid.
    pub fn green_discrepancy(&self) -> f64 {
        self.energy
            .iter()
            .zip(&self.energy_green)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }

    /// `max(0, −min dU)`.
    pub fn negative_excursion(&self) -> f64 {
        self.frequency_derivative
            .iter()
            .flatten()
            .fold(0.0f64, |m, &d| m.max(-d))
    }

    pub fn degenerate_count(&self) -> usize {
        self.degenerate.iter().filter(|&&d| d).count()
    }
}

pub fn frequency_trace(traj: &Trajectory) -> Result<FrequencyTrace> {
    if traj.is_zero() {
        return Err(Error::DegenerateInput("trajectory is identically zero".into()));
    }
    let g = traj.graph();
    let n = traj.len();
    let mut mass = Vec::with_capacity(n);
    let mut energy = Vec::with_capacity(n);
    let mut energy_green = Vec::with_capacity(n);
    for slice in traj.slices() {
        let u = slice.values();
        mass.push(g.mu_inner_values(u, u));
        let grad: f64 = (0..u.len())
            .map(|x| g.gradient_inner_values(u, u, x) * g.mu()[x])
            .sum();
        energy.push(-grad);
        energy_green.push(2.0 * g.mu_inner_values(u, &g.laplacian_values(u)));
    }

    let reference = if mass[0] > 0.0 {
        mass[0]
    } else {
        mass.iter().copied().fold(0.0, f64::max)
    };
    let degenerate: Vec<bool> = mass
        .iter()
        .map(|&m| m < DEGENERATE_MASS_RATIO * reference || m == 0.0)
        .collect();
    let frequency: Vec<Option<f64>> = (0..n)
        .map(|i| (!degenerate[i]).then(|| energy[i] / mass[i]))
        .collect();
    let grid = traj.grid();
    let frequency_derivative = (0..n)
        .map(|i| {
            if i == 0 || i + 1 == n {
                return None;
            }
            let (a, b) = (frequency[i - 1]?, frequency[i + 1]?);
            frequency[i]?;
            Some((b - a) / (grid[i + 1] - grid[i - 1]))
        })
        .collect();

    let perturbation = if n >= 3 {
        pointwise_bounds(traj)?
            .into_iter()
            .map(|c| c.unwrap_or(f64::INFINITY))
            .collect()
    } else {
        vec![traj.problem().coefficient_bound(); n]
    };
    let sup_perturbation = perturbation.iter().copied().fold(0.0, f64::max);

    Ok(FrequencyTrace {
        time_grid: grid.to_vec(),
        mass,
        energy,
        energy_green,
        frequency,
        frequency_derivative,
        perturbation,
        sup_perturbation,
        degenerate,
    })
}

/// Pointwise-feasible `C(t)` at every grid point and `K = sup C`.
#[derive(Debug, Clone, PartialEq)]
pub struct PerturbationBound {
    pub per_point: Vec<f64>,
    pub sup: f64,
}

/// Smallest `C(t)` with `|∂_t u − Δu|(x) ≤ C(t)(|u|(x) + |∇u|(x))` at every
/// vertex, `∂_t u` taken from the grid by second-order differences.
pub fn perturbation_bound(traj: &Trajectory) -> Result<PerturbationBound> {
    let mut per_point = Vec::with_capacity(traj.len());
    for (i, c) in pointwise_bounds(traj)?.into_iter().enumerate() {
        match c {
            Some(c) => per_point.push(c),
            None => {
                let (vertex, residual) = worst_infeasible(traj, i)?;
                return Err(Error::InfeasibleBound {
                    time: traj.grid()[i],
                    vertex,
                    residual,
                });
            }
        }
    }
    let sup = per_point.iter().copied().fold(0.0, f64::max);
    Ok(PerturbationBound { per_point, sup })
}

/// Residual below this multiple of the slice scale counts as round-off.
const RESIDUAL_NOISE: f64 = 1e-12;

fn pointwise_bounds(traj: &Trajectory) -> Result<Vec<Option<f64>>> {
    let dt = traj.time_derivative()?;
    let g = traj.graph();
    Ok(traj
        .slices()
        .iter()
        .zip(&dt)
        .map(|(slice, dt)| {
            let u = slice.values();
            let lap = g.laplacian_values(u);
            let scale = slice.sup_norm().max(f64::MIN_POSITIVE);
            let mut worst = 0.0f64;
            for x in 0..u.len() {
                let residual = (dt[x] - lap[x]).abs();
                let size = u[x].abs() + g.gradient_inner_values(u, u, x).sqrt();
                if size > RESIDUAL_NOISE * scale {
                    worst = worst.max(residual / size);
                } else if residual > RESIDUAL_NOISE * scale {
                    return None;
                }
            }
            Some(worst)
        })
        .collect())
}

fn worst_infeasible(traj: &Trajectory, i: usize) -> Result<(usize, f64)> {
    let dt = traj.time_derivative()?;
    let g = traj.graph();
    let u = traj.slices()[i].values();
    let lap = g.laplacian_values(u);
    Ok((0..u.len())
        .map(|x| (x, (dt[i][x] - lap[x]).abs()))
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .unwrap_or((0, 0.0)))
}

/// Self-calibrated `κ`: compares the `h` and `2h` central differences
/// available on the trace's own grid.
pub fn self_calibrated_kappa(trace: &FrequencyTrace) -> Option<f64> {
    let h = trace.uniform_step()?;
    let u = &trace.frequency;
    let n = trace.len();
    let mut worst = 0.0f64;
    for i in 2..n.saturating_sub(2) {
        let (Some(a), Some(b), Some(c), Some(d)) = (u[i - 2], u[i - 1], u[i + 1], u[i + 2]) else {
            continue;
        };
        let fine = (c - b) / (2.0 * h);
        let coarse = (d - a) / (4.0 * h);
        // coarse error ≈ 4 × fine error, so the gap is ≈ 3 × the fine error
        worst = worst.max((coarse - fine).abs() / 3.0);
    }
    Some(KAPPA_SAFETY * worst / (h * h))
}

/// `κ` from a trace at step `h` and one at `h/2` over the same window.
pub fn calibrate_kappa(coarse: &FrequencyTrace, fine: &FrequencyTrace) -> Result<f64> {
    let h = coarse
        .uniform_step()
        .ok_or_else(|| Error::Parameter("coarse trace needs a uniform grid".into()))?;
    let hf = fine
        .uniform_step()
        .ok_or_else(|| Error::Parameter("fine trace needs a uniform grid".into()))?;
    if (2.0 * hf - h).abs() > 1e-9 * h || fine.len() != 2 * coarse.len() - 1 {
        return Err(Error::Parameter("fine trace must halve the coarse step".into()));
    }
    let mut worst = 0.0f64;
    for (i, d) in coarse.frequency_derivative.iter().enumerate() {
        if let (Some(a), Some(b)) = (d, fine.frequency_derivative[2 * i]) {
            worst = worst.max((a - b).abs());
        }
    }
    // err_h ≈ c h², err_{h/2} ≈ c h²/4, so the gap is ≈ (3/4) c h²
    Ok(KAPPA_SAFETY * 4.0 / 3.0 * worst / (h * h))
}

/// Certificate for `U' ≥ 2C²(U − 1)`: the minimum over interior points of
/// `dU − 2C²(U − 1)` must be at least `−(κh² + 1e−8)`. `kappa = None`
/// uses [`self_calibrated_kappa`].
pub fn check_monotonicity(trace: &FrequencyTrace, kappa: Option<f64>) -> Result<Certificate> {
    if trace.len() < 3 {
        return Err(Error::Parameter("monotonicity needs at least 3 grid points".into()));
    }
    let h = trace
        .uniform_step()
        .ok_or_else(|| Error::Parameter("monotonicity needs a uniform grid".into()))?;
    let kappa = match kappa {
        Some(k) => k,
        None => self_calibrated_kappa(trace).unwrap_or(0.0),
    };
    let mut observed = f64::INFINITY;
    let mut points = 0usize;
    let mut min_du = f64::INFINITY;
    for i in 0..trace.len() {
        let (Some(du), Some(u)) = (trace.frequency_derivative[i], trace.frequency[i]) else {
            continue;
        };
        let c = trace.perturbation[i];
        let slack = du - 2.0 * c * c * (u - 1.0);
        observed = observed.min(slack);
        min_du = min_du.min(du);
        points += 1;
    }
    if points == 0 {
        return Err(Error::DegenerateInput("no interior point with a defined dU".into()));
    }
    let tolerance = kappa * h * h + MONOTONICITY_FLOOR;
    let mut cert = Certificate::lower("frequency_monotonicity", 0.0, observed, tolerance)
        .with("kappa", fmt(kappa))
        .with("h", fmt(h))
        .with("points", points)
        .with("min_dU", fmt(min_du))
        .with("K", fmt(trace.sup_perturbation));
    if trace.degenerate_count() > 0 {
        cert = cert
            .with("window_restricted", "true")
            .with("degenerate_points", trace.degenerate_count());
    }
    Ok(cert)
}

/// Lower bound for `I(b)`:
/// `I(a)·exp(dt·((1+K)(U(a) − 1)·e^{2·dt·K²} − 3K))` with `dt = b − a`.
pub fn harnack_bound(i_a: f64, u_a: f64, k: f64, dt: f64) -> Result<f64> {
    if !(i_a > 0.0) {
        return Err(Error::Parameter(format!("I(a) must be positive, got {i_a}")));
    }
    if !(dt > 0.0) {
        return Err(Error::Parameter(format!("b − a must be positive, got {dt}")));
    }
    if !(k >= 0.0) {
        return Err(Error::Parameter(format!("K must be non-negative, got {k}")));
    }
    let exponent = dt * ((1.0 + k) * (u_a - 1.0) * (2.0 * dt * k * k).exp() - 3.0 * k);
    Ok(i_a * exponent.exp())
}

/// Relative tolerance of the Harnack comparison.
pub const HARNACK_REL_TOL: f64 = 1e-9;

/// Checks `I(b) ≥ harnack_bound(I(a), U(a), K, b − a)` over the whole grid.
/// A pass witnesses that the mass cannot vanish at the final time.
pub fn backward_uniqueness_certificate(traj: &Trajectory) -> Result<Certificate> {
    if traj.len() < 2 {
        return Err(Error::Parameter("need at least two grid points".into()));
    }
    if traj.slices()[0].values().iter().all(|&v| v == 0.0) {
        return Err(Error::VacuousInput("I(a) = 0".into()));
    }
    let trace = frequency_trace(traj)?;
    let n = trace.len();
    let i_a = trace.mass[0];
    let u_a = trace.frequency[0].ok_or_else(|| Error::VacuousInput("I(a) is degenerate".into()))?;
    let (k, source) = if n >= 3 {
        (trace.sup_perturbation, "pointwise")
    } else {
        (traj.problem().coefficient_bound(), "sup|c|")
    };
    let dt = trace.time_grid[n - 1] - trace.time_grid[0];
    let bound = harnack_bound(i_a, u_a, k, dt)?;
    let observed = trace.mass[n - 1];
    Ok(
        Certificate::lower("backward_uniqueness", bound, observed, HARNACK_REL_TOL * bound)
            .with("I_a", fmt(i_a))
            .with("U_a", fmt(u_a))
            .with("K", fmt(k))
            .with("K_source", source)
            .with("dt", fmt(dt)),
    )
}

/// Checks `I(t) ≥ harnack_bound(I(a), U(a), K, t − a)` at every grid point
/// after `a`, with `K` the supremum of the pointwise bounds. The observed
/// value is `min_t I(t)/bound(t)`, certified against 1.
pub fn harnack_certificate(traj: &Trajectory) -> Result<Certificate> {
    if traj.len() < 3 {
        return Err(Error::Parameter("need at least three grid points".into()));
    }
    let trace = frequency_trace(traj)?;
    let i_a = trace.mass[0];
    if !(i_a > 0.0) {
        return Err(Error::VacuousInput("I(a) = 0".into()));
    }
    let u_a = trace.frequency[0].ok_or_else(|| Error::VacuousInput("I(a) is degenerate".into()))?;
    let k = trace.sup_perturbation;
    let a = trace.time_grid[0];
    let mut worst = f64::INFINITY;
    let mut worst_t = a;
    for (t, mass) in trace.time_grid.iter().zip(&trace.mass).skip(1) {
        let ratio = mass / harnack_bound(i_a, u_a, k, t - a)?;
        if ratio < worst {
            worst = ratio;
            worst_t = *t;
        }
    }
    Ok(Certificate::lower("harnack", 1.0, worst, HARNACK_REL_TOL)
        .with("K", fmt(k))
        .with("U_a", fmt(u_a))
        .with("tightest_t", fmt(worst_t)))
}

/// Result of the equality-case check.
#[derive(Debug, Clone, PartialEq)]
pub enum EqualityOutcome {
    Checked(Certificate),
    /// `U` is not constant, so the equality case does not apply.
    NotApplicable { spread: f64 },
}

/// Spread of `U` (relative to `1 + |U(a)|`) below which it counts as constant.
pub const EQUALITY_U_TOL: f64 = 1e-8;

/// For a pure heat solution with constant `U`, checks `Δu = (U/2)u` on every
/// slice and `u(t) = e^{(U/2)(t − a)} u(a)`.
pub fn equality_case_certificate(traj: &Trajectory, tol: f64) -> Result<EqualityOutcome> {
    if !traj.problem().is_pure_heat() {
        return Err(Error::HypothesisViolation(
            "equality case needs a solution of the pure heat equation".into(),
        ));
    }
    let trace = frequency_trace(traj)?;
    let u_a = trace.frequency[0].ok_or_else(|| Error::VacuousInput("I(a) is degenerate".into()))?;
    let spread = trace
        .frequency
        .iter()
        .map(|u| u.map_or(f64::INFINITY, |u| (u - u_a).abs()))
        .fold(0.0, f64::max);
    if spread > EQUALITY_U_TOL * (1.0 + u_a.abs()) {
        return Ok(EqualityOutcome::NotApplicable { spread });
    }
    let g = traj.graph();
    let a = traj.grid()[0];
    let first = traj.slices()[0].values();
    let mut eigen_gap = 0.0f64;
    let mut flow_gap = 0.0f64;
    for ((t, slice), u_t) in traj.grid().iter().zip(traj.slices()).zip(&trace.frequency) {
        let u = slice.values();
        let half = u_t.unwrap_or(u_a) / 2.0;
        let lap = g.laplacian_values(u);
        let factor = (u_a / 2.0 * (t - a)).exp();
        for x in 0..u.len() {
            eigen_gap = eigen_gap.max((lap[x] - half * u[x]).abs());
            flow_gap = flow_gap.max((u[x] - factor * first[x]).abs());
        }
    }
    let observed = eigen_gap.max(flow_gap);
    Ok(EqualityOutcome::Checked(
        Certificate::upper("equality_case", 0.0, observed, tol)
            .with("U", fmt(u_a))
            .with("eigen_gap", fmt(eigen_gap))
            .with("flow_gap", fmt(flow_gap))
            .with("U_spread", fmt(spread)),
    ))
}

pub(crate) fn fmt(v: f64) -> String {
    format!("{v:.16e}")
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::generators::{complete_graph, random_connected_graph};
    use crate::graph::VertexFunction;
    use crate::heat::{ancient_from_modes, evolve, uniform_grid, HeatProblem, Method};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn k2_mode(grid: &[f64]) -> Trajectory {
        let g = Arc::new(complete_graph(2));
        let p = HeatProblem::pure(g.clone());
        let u0 = VertexFunction::new(&g, vec![1.0, -1.0]).unwrap();
        crate::heat::evolve_from(&p, &u0, 0.0, grid).unwrap()
    }

    #[test]
    fn k2_eigenmode_frequency() {
        let grid = uniform_grid(-1.0, 1.0, 40);
        let trace = frequency_trace(&k2_mode(&grid)).unwrap();
        for (i, t) in grid.iter().enumerate() {
            let e = (-4.0 * t).exp();
            assert!((trace.mass[i] - 2.0 * e).abs() < 1e-12 * e);
            assert!((trace.energy[i] + 8.0 * e).abs() < 1e-12 * e);
            assert!((trace.frequency[i].unwrap() + 4.0).abs() < 1e-12);
        }
        assert!(trace.green_discrepancy() < 1e-9);
    }

    #[test]
    fn harmonic_trace_is_flat() {
        let g = Arc::new(complete_graph(3));
        let traj = ancient_from_modes(g, &[(0, 1.0)], &uniform_grid(-2.0, 0.0, 10)).unwrap();
        let trace = frequency_trace(&traj).unwrap();
        assert!(trace.energy.iter().all(|d| d.abs() < 1e-14));
        assert!(trace.frequency.iter().all(|u| u.unwrap().abs() < 1e-14));
    }

    #[test]
    fn mixed_mode_frequency_increases() {
        let g = Arc::new(complete_graph(2));
        let traj = ancient_from_modes(g, &[(0, 1.0), (1, 1.0)], &uniform_grid(-3.0, 0.0, 60)).unwrap();
        let trace = frequency_trace(&traj).unwrap();
        let u: Vec<f64> = trace.frequency.iter().map(|u| u.unwrap()).collect();
        assert!(u.windows(2).all(|w| w[1] > w[0]));
        // closed form: U = −8e^{−4t} / (1 + e^{−4t}) with unit-norm modes
        for (t, v) in trace.time_grid.iter().zip(&u) {
            let e = (-4.0 * t).exp();
            assert!((v + 4.0 * e / (1.0 + e)).abs() < 1e-12);
        }
        assert!(check_monotonicity(&trace, None).unwrap().passed);
    }

    #[test]
    fn zero_trajectory_is_degenerate() {
        let g = Arc::new(complete_graph(2));
        let traj = ancient_from_modes(g, &[], &[-1.0, 0.0]).unwrap();
        assert!(matches!(frequency_trace(&traj), Err(Error::DegenerateInput(_))));
        assert!(matches!(
            backward_uniqueness_certificate(&traj),
            Err(Error::VacuousInput(_))
        ));
    }

    #[test]
    fn perturbation_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let g = Arc::new(random_connected_graph(&mut rng, 8, 0.4));
        let grid = uniform_grid(0.0, 1.0, 100);
        let u0 = VertexFunction::random(&g, &mut rng);

        let pure = evolve(&HeatProblem::pure(g.clone()), &u0, &grid).unwrap();
        assert!(perturbation_bound(&pure).unwrap().sup < 1e-3);

        let c = VertexFunction::constant(&g, 0.05);
        let p = HeatProblem::with_potential(g.clone(), c).unwrap();
        let traj = evolve(&p, &u0, &grid).unwrap();
        let bound = perturbation_bound(&traj).unwrap();
        assert!(bound.sup <= 0.05 + 1e-3);
        assert!(bound.sup > 0.0);

        let k2 = Arc::new(complete_graph(2));
        let c = VertexFunction::new(&k2, vec![0.1, -0.1]).unwrap();
        let p = HeatProblem::with_potential(k2.clone(), c).unwrap();
        let u0 = VertexFunction::new(&k2, vec![1.0, 0.3]).unwrap();
        let traj = evolve(&p, &u0, &grid).unwrap();
        assert!(perturbation_bound(&traj).unwrap().sup <= 0.1 + 1e-4);
    }

    #[test]
    fn infeasible_bound_is_reported() {
        let g = Arc::new(crate::generators::path_graph(3));
        let grid = vec![0.0, 0.1, 0.2];
        // u stays zero at a vertex whose neighbours vanish too, yet moves there.
        let slices = vec![
            VertexFunction::new(&g, vec![0.0, 0.0, 0.0]).unwrap(),
            VertexFunction::new(&g, vec![0.0, 0.0, 0.0]).unwrap(),
            VertexFunction::new(&g, vec![1.0, 0.0, 0.0]).unwrap(),
        ];
        let traj = Trajectory::new(HeatProblem::pure(g), grid, slices, Method::External).unwrap();
        assert!(matches!(
            perturbation_bound(&traj),
            Err(Error::InfeasibleBound { .. })
        ));
    }

    #[test]
    fn harnack_examples() {
        let e = std::f64::consts::E;
        let b = harnack_bound(2.0 * e.powi(4), -4.0, 0.0, 1.0).unwrap();
        assert!((b - 2.0 / e).abs() < 1e-12);
        let b = harnack_bound(3.0, 0.0, 0.0, 2.0).unwrap();
        assert!((b - 3.0 * (-2.0f64).exp()).abs() < 1e-12);
        let b = harnack_bound(1.0, -4.0, 0.05, 1.0).unwrap();
        let expect = (1.05 * -5.0 * 0.005f64.exp() - 0.15).exp();
        assert!((b - expect).abs() < 1e-15);
        assert!(harnack_bound(0.0, -1.0, 0.0, 1.0).is_err());
        assert!(harnack_bound(1.0, -1.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn harnack_monotone_in_arguments() {
        for &u in &[-6.0, -2.0, -0.5, 0.0] {
            for &dt in &[0.1, 1.0, 3.0] {
                let mut last = f64::INFINITY;
                for k in 0..20 {
                    let b = harnack_bound(1.0, u, k as f64 * 0.05, dt).unwrap();
                    assert!(b <= last);
                    last = b;
                }
            }
        }
        for &k in &[0.0, 0.1, 0.5] {
            let mut last = 0.0;
            for i in 0..20 {
                let b = harnack_bound(1.0, -8.0 + 0.4 * i as f64, k, 1.0).unwrap();
                assert!(b >= last);
                last = b;
            }
        }
    }

    #[test]
    fn k2_backward_uniqueness() {
        let traj = k2_mode(&[-1.0, 0.0]);
        let cert = backward_uniqueness_certificate(&traj).unwrap();
        let e = std::f64::consts::E;
        assert!(cert.passed);
        assert!((cert.observed - 2.0).abs() < 1e-12);
        assert!((cert.bound - 2.0 / e).abs() < 1e-12);

        let traj = k2_mode(&uniform_grid(-1.0, 0.0, 100));
        assert!(backward_uniqueness_certificate(&traj).unwrap().passed);
    }

    #[test]
    fn k2_harnack_profile() {
        let traj = k2_mode(&uniform_grid(-1.0, 0.0, 100));
        let cert = harnack_certificate(&traj).unwrap();
        assert!(cert.passed);
        // I(t)/bound(t) = e^{t + 1} at K = 0, smallest at the first step; the
        // differenced ∂_t u leaves K ≈ 1e-4
        assert!((cert.observed - (0.01f64).exp()).abs() < 1e-3, "{cert:?}");
    }

    #[test]
    fn equality_case_examples() {
        let traj = k2_mode(&uniform_grid(-1.0, 0.0, 20));
        match equality_case_certificate(&traj, 1e-9).unwrap() {
            EqualityOutcome::Checked(c) => assert!(c.passed, "{c:?}"),
            other => panic!("{other:?}"),
        }
        let g = Arc::new(complete_graph(2));
        let harmonic = ancient_from_modes(g.clone(), &[(0, 1.0)], &uniform_grid(-1.0, 0.0, 5)).unwrap();
        assert!(matches!(
            equality_case_certificate(&harmonic, 1e-9).unwrap(),
            EqualityOutcome::Checked(Certificate { passed: true, .. })
        ));
        let mixed = ancient_from_modes(g, &[(0, 1.0), (1, 1.0)], &uniform_grid(-1.0, 0.0, 5)).unwrap();
        assert!(matches!(
            equality_case_certificate(&mixed, 1e-9).unwrap(),
            EqualityOutcome::NotApplicable { .. }
        ));
    }

    #[test]
    fn random_slices_can_fail_monotonicity() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let g = Arc::new(random_connected_graph(&mut rng, 6, 0.5));
        let mut failures = 0;
        for _ in 0..10 {
            let grid = uniform_grid(0.0, 1.0, 20);
            let slices = grid.iter().map(|_| VertexFunction::random(&g, &mut rng)).collect();
            let traj = Trajectory::new(HeatProblem::pure(g.clone()), grid, slices, Method::External).unwrap();
            let mut trace = frequency_trace(&traj).unwrap();
            // judged against the declared equation, C ≡ 0
            trace.perturbation.iter_mut().for_each(|c| *c = 0.0);
            if !check_monotonicity(&trace, Some(0.0)).unwrap().passed {
                failures += 1;
            }
        }
        assert!(failures > 0);
    }

    #[test]
    fn scaling_leaves_frequency_unchanged() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let g = Arc::new(random_connected_graph(&mut rng, 9, 0.3));
        let u0 = VertexFunction::random(&g, &mut rng);
        let traj = evolve(&HeatProblem::pure(g), &u0, &uniform_grid(0.0, 1.0, 50)).unwrap();
        let base = frequency_trace(&traj).unwrap();
        let exact = frequency_trace(&traj.scaled(4.0)).unwrap();
        assert_eq!(base.frequency, exact.frequency);
        assert_eq!(base.frequency_derivative, exact.frequency_derivative);
        let five = frequency_trace(&traj.scaled(5.0)).unwrap();
        for (a, b) in base.frequency.iter().zip(&five.frequency) {
            assert!((a.unwrap() - b.unwrap()).abs() < 1e-13);
        }
        let c1 = check_monotonicity(&base, None).unwrap();
        let c2 = check_monotonicity(&five, None).unwrap();
        assert_eq!(c1.passed, c2.passed);
        let b1 = backward_uniqueness_certificate(&traj).unwrap();
        let b2 = backward_uniqueness_certificate(&traj.scaled(5.0)).unwrap();
        assert_eq!(b1.passed, b2.passed);
    }
}
