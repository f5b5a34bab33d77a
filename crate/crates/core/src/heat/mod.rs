//! Time evolution for `∂_t u = Δu + c·u` with a Dirichlet support `W`.
//!
//! Time-independent coefficients are propagated exactly through the
//! eigen-expansion of the restricted operator. A time-dependent coefficient
//! falls back to classical fourth-order Runge-Kutta.

mod ancient;
mod discrete;

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::{VertexFunction, VertexSubset, WeightedGraph};
use crate::spectral::restricted_spectrum;

pub use ancient::{ancient_from_modes, classify_growth, GrowthClass, GROWTH_THRESHOLD, MIN_BACKWARD_SPAN};
pub use discrete::discrete_time_step;

/// Baseline residual tolerance; the truncation term of the central
/// difference is added on top, see [`Trajectory::residual_tolerance`].
pub const RESIDUAL_TOL: f64 = 1e-6;

/// Upper bound on `h·(2 + sup|c|)` for the stepped integrator.
const STEP_BUDGET: f64 = 0.1;

type CoefficientFn = dyn Fn(f64, usize) -> f64 + Send + Sync;

#[derive(Clone)]
pub enum Coefficient {
    /// `c = c(x)`.
    Static(VertexFunction),
    /// `c = c(t, x)` with `|c| ≤ bound` everywhere.
    TimeDependent { bound: f64, func: Arc<CoefficientFn> },
}

impl fmt::Debug for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Static(c) => f.debug_tuple("Static").field(c).finish(),
            Self::TimeDependent { bound, .. } => f
                .debug_struct("TimeDependent")
                .field("bound", bound)
                .finish_non_exhaustive(),
        }
    }
}

impl Coefficient {
    pub fn sup_abs(&self) -> f64 {
        match self {
            Self::Static(c) => c.sup_norm(),
            Self::TimeDependent { bound, .. } => *bound,
        }
    }

    fn values_at(&self, t: f64, n: usize) -> Vec<f64> {
        match self {
            Self::Static(c) => c.values().to_vec(),
            Self::TimeDependent { func, .. } => (0..n).map(|x| func(t, x)).collect(),
        }
    }
}

/// `∂_t u = Δu + c u` on `W × [a, b]`, `u = 0` on `(V∖W) × [a, b]`.
#[derive(Debug, Clone)]
pub struct HeatProblem {
    graph: Arc<WeightedGraph>,
    support: VertexSubset,
    coefficient: Coefficient,
    interval: (f64, f64),
}

impl HeatProblem {
    pub fn new(
        graph: impl Into<Arc<WeightedGraph>>,
        support: VertexSubset,
        coefficient: Coefficient,
        interval: (f64, f64),
    ) -> Result<Self> {
        let graph = graph.into();
        support.check_graph(&graph)?;
        if support.is_empty() {
            return Err(Error::Subset("support of a heat problem is empty".into()));
        }
        match &coefficient {
            Coefficient::Static(c) => graph.check_function(c)?,
            Coefficient::TimeDependent { bound, .. } => {
                if !(bound.is_finite() && *bound >= 0.0) {
                    return Err(Error::Parameter(format!("invalid coefficient bound {bound}")));
                }
            }
        }
        let (a, b) = interval;
        if a.is_nan() || b.is_nan() || a > b {
            return Err(Error::Parameter(format!("invalid time interval [{a}, {b}]")));
        }
        Ok(Self {
            graph,
            support,
            coefficient,
            interval,
        })
    }

    /// Pure heat equation on the whole graph, unbounded in time.
    pub fn pure(graph: impl Into<Arc<WeightedGraph>>) -> Self {
        let graph = graph.into();
        let support = VertexSubset::all(&graph);
        let c = VertexFunction::zeros(&graph);
        Self {
            graph,
            support,
            coefficient: Coefficient::Static(c),
            interval: (f64::NEG_INFINITY, f64::INFINITY),
        }
    }

    /// Whole-graph problem with a static coefficient, unbounded in time.
    pub fn with_potential(graph: impl Into<Arc<WeightedGraph>>, c: VertexFunction) -> Result<Self> {
        let graph = graph.into();
        let support = VertexSubset::all(&graph);
        Self::new(
            graph,
            support,
            Coefficient::Static(c),
            (f64::NEG_INFINITY, f64::INFINITY),
        )
    }

    pub fn graph(&self) -> &WeightedGraph {
        &self.graph
    }

    pub fn graph_arc(&self) -> &Arc<WeightedGraph> {
        &self.graph
    }

    pub fn support(&self) -> &VertexSubset {
        &self.support
    }

    pub fn coefficient(&self) -> &Coefficient {
        &self.coefficient
    }

    pub fn interval(&self) -> (f64, f64) {
        self.interval
    }

    pub fn is_dirichlet(&self) -> bool {
        self.support.is_proper()
    }

    /// `K = sup |c|`.
    pub fn coefficient_bound(&self) -> f64 {
        self.coefficient.sup_abs()
    }

    pub fn is_pure_heat(&self) -> bool {
        match &self.coefficient {
            Coefficient::Static(c) => c.values().iter().all(|&v| v == 0.0),
            Coefficient::TimeDependent { bound, .. } => *bound == 0.0,
        }
    }

    /// `Δu + c(t) u` on the support, zero elsewhere.
    fn rhs(&self, u: &[f64], t: f64) -> Vec<f64> {
        let lap = self.graph.laplacian_values(u);
        let c = self.coefficient.values_at(t, u.len());
        (0..u.len())
            .map(|x| {
                if self.support.contains(x) {
                    lap[x] + c[x] * u[x]
                } else {
                    0.0
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    SpectralExact,
    Stepped,
    /// Slices supplied by the caller.
    External,
}

impl Method {
    pub fn tag(self) -> &'static str {
        match self {
            Self::SpectralExact => "spectral-exact",
            Self::Stepped => "stepped",
            Self::External => "external",
        }
    }
}

/// Sampled solution: one slice per grid time.
#[derive(Debug, Clone)]
pub struct Trajectory {
    problem: HeatProblem,
    grid: Vec<f64>,
    slices: Vec<VertexFunction>,
    method: Method,
}

impl Trajectory {
    pub fn new(
        problem: HeatProblem,
        grid: Vec<f64>,
        slices: Vec<VertexFunction>,
        method: Method,
    ) -> Result<Self> {
        check_grid(&grid)?;
        if slices.len() != grid.len() {
            return Err(Error::Parameter(format!(
                "{} slices for {} grid points",
                slices.len(),
                grid.len()
            )));
        }
        for s in &slices {
            problem.graph.check_function(s)?;
        }
        Ok(Self {
            problem,
            grid,
            slices,
            method,
        })
    }

    pub fn problem(&self) -> &HeatProblem {
        &self.problem
    }

    pub fn graph(&self) -> &WeightedGraph {
        &self.problem.graph
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn slices(&self) -> &[VertexFunction] {
        &self.slices
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.slices.iter().all(|s| s.values().iter().all(|&v| v == 0.0))
    }

    /// Same grid and problem, every slice multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            problem: self.problem.clone(),
            grid: self.grid.clone(),
            slices: self.slices.iter().map(|s| s.scaled(factor)).collect(),
            method: self.method,
        }
    }

    /// Largest `|u|` outside the support over all slices.
    pub fn off_support_sup(&self) -> f64 {
        self.slices
            .iter()
            .map(|s| s.sup_off(&self.problem.support))
            .fold(0.0, f64::max)
    }

    pub fn max_step(&self) -> f64 {
        self.grid.windows(2).map(|w| w[1] - w[0]).fold(0.0, f64::max)
    }

    /// Whether the grid steps agree to a relative `1e-9`.
    pub fn uniform_step(&self) -> Option<f64> {
        let steps: Vec<f64> = self.grid.windows(2).map(|w| w[1] - w[0]).collect();
        let h = *steps.first()?;
        steps
            .iter()
            .all(|s| (s - h).abs() <= 1e-9 * h)
            .then_some((self.grid[self.grid.len() - 1] - self.grid[0]) / steps.len() as f64)
    }

    /// Tolerance for [`residual_report`]: `1e-6` plus the a-priori truncation
    /// error of the central difference, `h²/6 · |∂_t³u|` with
    /// `|∂_t³u|_∞ ≤ (2 + K)³ e^{(2+K)h} |u|_∞`.
    pub fn residual_tolerance(&self) -> f64 {
        let h = self.max_step();
        let rate = 2.0 + self.problem.coefficient_bound();
        let peak = self.slices.iter().map(VertexFunction::sup_norm).fold(0.0, f64::max);
        RESIDUAL_TOL + h * h / 6.0 * rate.powi(3) * (rate * h).exp() * peak
    }

    pub fn residual_within_tolerance(&self) -> bool {
        residual_report(self) <= self.residual_tolerance()
    }

    /// Second-order estimate of `∂_t u` at every grid point: central
    /// differences inside, three-point one-sided differences at the ends.
    pub fn time_derivative(&self) -> Result<Vec<Vec<f64>>> {
        let n = self.grid.len();
        if n < 3 {
            return Err(Error::Parameter("time derivative needs at least 3 grid points".into()));
        }
        let t = &self.grid;
        let u = |i: usize| self.slices[i].values();
        let nv = self.graph().vertex_count();
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let (a, b, c, ia, ib, ic) = if i == 0 {
                let (h1, h2) = (t[1] - t[0], t[2] - t[1]);
                (
                    -(2.0 * h1 + h2) / (h1 * (h1 + h2)),
                    (h1 + h2) / (h1 * h2),
                    -h1 / (h2 * (h1 + h2)),
                    0,
                    1,
                    2,
                )
            } else if i == n - 1 {
                let (h1, h2) = (t[n - 2] - t[n - 3], t[n - 1] - t[n - 2]);
                (
                    h2 / (h1 * (h1 + h2)),
                    -(h1 + h2) / (h1 * h2),
                    (h1 + 2.0 * h2) / (h2 * (h1 + h2)),
                    n - 3,
                    n - 2,
                    n - 1,
                )
            } else {
                let span = t[i + 1] - t[i - 1];
                (-1.0 / span, 0.0, 1.0 / span, i - 1, i, i + 1)
            };
            out.push(
                (0..nv)
                    .map(|x| a * u(ia)[x] + b * u(ib)[x] + c * u(ic)[x])
                    .collect(),
            );
        }
        Ok(out)
    }
}

fn check_grid(grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::Parameter("time grid is empty".into()));
    }
    if grid.iter().any(|t| !t.is_finite()) {
        return Err(Error::Parameter("time grid has non-finite entries".into()));
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Parameter("time grid must be strictly increasing".into()));
    }
    Ok(())
}

/// `n + 1` equally spaced points from `start` to `end`.
pub fn uniform_grid(start: f64, end: f64, n: usize) -> Vec<f64> {
    let h = (end - start) / n as f64;
    (0..=n)
        .map(|i| if i == n { end } else { start + i as f64 * h })
        .collect()
}

/// Evolves `u0`, taken as the state at `grid[0]`.
pub fn evolve(problem: &HeatProblem, u0: &VertexFunction, grid: &[f64]) -> Result<Trajectory> {
    let t0 = *grid
        .first()
        .ok_or_else(|| Error::Parameter("time grid is empty".into()))?;
    match problem.coefficient {
        Coefficient::Static(_) => evolve_from(problem, u0, t0, grid),
        Coefficient::TimeDependent { .. } => evolve_stepped(problem, u0, grid),
    }
}

/// Exact evolution for a static coefficient with `u(t_ref) = u_ref`; grid
/// points before `t_ref` are reached through the backward extension
/// `e^{A(t − t_ref)}`.
pub fn evolve_from(
    problem: &HeatProblem,
    u_ref: &VertexFunction,
    t_ref: f64,
    grid: &[f64],
) -> Result<Trajectory> {
    let Coefficient::Static(c) = &problem.coefficient else {
        return Err(Error::Parameter(
            "exact propagation needs a time-independent coefficient".into(),
        ));
    };
    prepare(problem, u_ref, grid)?;
    let dec = restricted_spectrum(&problem.graph, &problem.support, Some(c))?;
    let coefficients = dec.coefficients(u_ref)?;
    let slices = grid
        .iter()
        .map(|&t| {
            if t == t_ref {
                u_ref.clone()
            } else {
                dec.synthesize(&coefficients, t - t_ref)
            }
        })
        .collect();
    Trajectory::new(problem.clone(), grid.to_vec(), slices, Method::SpectralExact)
}

fn prepare(problem: &HeatProblem, u0: &VertexFunction, grid: &[f64]) -> Result<()> {
    problem.graph.check_function(u0)?;
    check_grid(grid)?;
    if let Some((x, v)) = u0
        .values()
        .iter()
        .enumerate()
        .find(|&(x, &v)| v != 0.0 && !problem.support.contains(x))
    {
        return Err(Error::Support(format!("u0({x}) = {v} outside W")));
    }
    let (a, b) = problem.interval;
    if grid[0] < a || grid[grid.len() - 1] > b {
        return Err(Error::Coverage(format!(
            "grid [{}, {}] leaves the problem interval [{a}, {b}]",
            grid[0],
            grid[grid.len() - 1]
        )));
    }
    Ok(())
}

fn evolve_stepped(problem: &HeatProblem, u0: &VertexFunction, grid: &[f64]) -> Result<Trajectory> {
    prepare(problem, u0, grid)?;
    let max_h = STEP_BUDGET / (2.0 + problem.coefficient_bound());
    let mut state = u0.values().to_vec();
    let mut slices = vec![u0.clone()];
    for w in grid.windows(2) {
        let span = w[1] - w[0];
        let steps = (span / max_h).ceil().max(1.0) as usize;
        let h = span / steps as f64;
        for k in 0..steps {
            let t = w[0] + k as f64 * h;
            state = rk4_step(problem, &state, t, h);
        }
        slices.push(VertexFunction::from_parts(problem.graph.id(), state.clone()));
    }
    Trajectory::new(problem.clone(), grid.to_vec(), slices, Method::Stepped)
}

fn rk4_step(problem: &HeatProblem, u: &[f64], t: f64, h: f64) -> Vec<f64> {
    let shifted = |base: &[f64], k: &[f64], s: f64| -> Vec<f64> {
        base.iter().zip(k).map(|(a, b)| a + s * b).collect()
    };
    let k1 = problem.rhs(u, t);
    let k2 = problem.rhs(&shifted(u, &k1, h / 2.0), t + h / 2.0);
    let k3 = problem.rhs(&shifted(u, &k2, h / 2.0), t + h / 2.0);
    let k4 = problem.rhs(&shifted(u, &k3, h), t + h);
    (0..u.len())
        .map(|i| u[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]))
        .collect()
}

/// Largest `|∂_t u − Δu − c u|` over interior grid points and support
/// vertices, with `∂_t u` by central differences. Zero for grids with fewer
/// than 3 points.
pub fn residual_report(traj: &Trajectory) -> f64 {
    let n = traj.grid.len();
    let problem = &traj.problem;
    let mut worst = 0.0f64;
    for i in 1..n.saturating_sub(1) {
        let span = traj.grid[i + 1] - traj.grid[i - 1];
        let (prev, next) = (traj.slices[i - 1].values(), traj.slices[i + 1].values());
        let rhs = problem.rhs(traj.slices[i].values(), traj.grid[i]);
        for &x in problem.support.members() {
            let dt = (next[x] - prev[x]) / span;
            worst = worst.max((dt - rhs[x]).abs());
        }
    }
    worst
}
