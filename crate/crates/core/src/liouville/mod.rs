//! Experiments on truncated strip-type graphs `G₀ □ ℤ`: space-time integrals
//! over `Q_r = [−r², 0] × D_r`, the cutoff construction, reverse Poincaré and
//! iteration-growth certificates, and the vanishing dichotomy for solutions
//! supported on `W₀ × ℤ`.

mod cutoff;
mod dichotomy;

use std::f64::consts::E;
use std::sync::Arc;

use rayon::prelude::*;

use crate::certificate::Certificate;
use crate::error::{Error, Result};
use crate::frequency::fmt;
use crate::graph::{strip_truncation, StripGraph, VertexFunction, VertexSubset, WeightedGraph};
use crate::heat::{evolve_from, Coefficient, HeatProblem, Trajectory};
use crate::spectral::{dirichlet_data, restricted_spectrum, DirichletData};

pub use cutoff::{build_cutoff, CutoffFunction};
pub use dichotomy::{
    dichotomy_entry, strip_dichotomy_experiment, DichotomyConfig, DichotomyEntry, DichotomyReport,
};

/// Levels between the outer window `D_R` and the truncation boundary.
pub const TRUNCATION_MARGIN: usize = 4;

/// Safety factor applied to the calibrated reverse Poincaré constant.
pub const CALIBRATION_FACTOR: f64 = 1.1;

/// Relative quadrature tolerance of the space-time certificates.
pub const Q_REL_TOL: f64 = 1e-9;

/// `Q_r = [−r², 0] × D_r` on a truncated strip.
#[derive(Debug, Clone)]
pub struct SpaceTimeWindow<'a> {
    strip: &'a StripGraph,
    r: usize,
    members: VertexSubset,
}

impl<'a> SpaceTimeWindow<'a> {
    pub fn new(strip: &'a StripGraph, r: usize) -> Result<Self> {
        if r == 0 {
            return Err(Error::Parameter("window radius must be positive".into()));
        }
        let members = strip.ball(r)?;
        Ok(Self { strip, r, members })
    }

    pub fn strip(&self) -> &StripGraph {
        self.strip
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn start(&self) -> f64 {
        -((self.r * self.r) as f64)
    }

    pub fn end(&self) -> f64 {
        0.0
    }

    /// `D_r`.
    pub fn members(&self) -> &VertexSubset {
        &self.members
    }
}

/// Trapezoidal quadrature of `t ↦ Σ_{x∈D_r} integrand(x, t, u(x,t))·μ(x)`
/// over `[−r², 0]`. Window ends falling between grid points are handled by
/// linear interpolation of the spatial sums.
pub fn q_integral(
    traj: &Trajectory,
    window: &SpaceTimeWindow<'_>,
    integrand: impl Fn(usize, f64, f64) -> f64,
) -> Result<f64> {
    let g = window.strip.graph();
    if traj.graph().id() != g.id() {
        return Err(Error::DomainMismatch {
            expected: g.id(),
            found: traj.graph().id(),
        });
    }
    let (lo, hi) = (window.start(), window.end());
    let grid = traj.grid();
    let slack = 1e-9 * lo.abs().max(1.0);
    if grid[0] > lo + slack || grid[grid.len() - 1] < hi - slack {
        return Err(Error::Coverage(format!(
            "grid [{}, {}] does not cover Q_{} = [{lo}, {hi}]",
            grid[0],
            grid[grid.len() - 1],
            window.r
        )));
    }
    let mu = g.mu();
    let spatial = |i: usize| -> f64 {
        let t = grid[i];
        let u = traj.slices()[i].values();
        window
            .members
            .members()
            .iter()
            .map(|&x| integrand(x, t, u[x]) * mu[x])
            .sum()
    };
    let mut total = 0.0;
    let mut cached: Option<(usize, f64)> = None;
    let mut value_at = |i: usize| -> f64 {
        match cached {
            Some((j, v)) if j == i => v,
            _ => {
                let v = spatial(i);
                cached = Some((i, v));
                v
            }
        }
    };
    for i in 0..grid.len().saturating_sub(1) {
        let (t0, t1) = (grid[i], grid[i + 1]);
        let a = t0.max(lo);
        let b = t1.min(hi);
        if b <= a {
            continue;
        }
        let (g0, g1) = (value_at(i), value_at(i + 1));
        let at = |t: f64| g0 + (g1 - g0) * (t - t0) / (t1 - t0);
        total += (b - a) * (at(a) + at(b)) / 2.0;
    }
    Ok(total)
}

/// `∫_{Q_r} u²`.
pub fn q_mass(traj: &Trajectory, window: &SpaceTimeWindow<'_>) -> Result<f64> {
    q_integral(traj, window, |_, _, u| u * u)
}

/// Truncated strip over `G₀` with a proper base subset `W₀`. The support is
/// `W₀ × {|z| < radius}`, so solutions vanish on the truncation boundary.
#[derive(Debug, Clone)]
pub struct StripExperiment {
    strip: StripGraph,
    graph: Arc<WeightedGraph>,
    base_subset: VertexSubset,
    dirichlet: DirichletData,
    support: VertexSubset,
}

impl StripExperiment {
    pub fn new(base: &WeightedGraph, base_subset: &VertexSubset, radius: usize) -> Result<Self> {
        base_subset.check_graph(base)?;
        base_subset.require_proper()?;
        if base_subset.is_empty() {
            return Err(Error::Subset("W₀ is empty".into()));
        }
        if radius == 0 {
            return Err(Error::Parameter("strip radius must be positive".into()));
        }
        let dirichlet = dirichlet_data(base, base_subset)?;
        let strip = strip_truncation(base, radius)?;
        let support = strip.lift(base_subset, radius - 1)?;
        let graph = Arc::new(strip.graph().clone());
        Ok(Self {
            strip,
            graph,
            base_subset: base_subset.clone(),
            dirichlet,
            support,
        })
    }

    pub fn strip(&self) -> &StripGraph {
        &self.strip
    }

    pub fn graph(&self) -> &Arc<WeightedGraph> {
        &self.graph
    }

    pub fn base_subset(&self) -> &VertexSubset {
        &self.base_subset
    }

    pub fn dirichlet(&self) -> &DirichletData {
        &self.dirichlet
    }

    /// `ε = 1/(32·C(W₀))`.
    pub fn epsilon(&self) -> f64 {
        self.dirichlet.epsilon_threshold
    }

    pub fn support(&self) -> &VertexSubset {
        &self.support
    }

    pub fn window(&self, r: usize) -> Result<SpaceTimeWindow<'_>> {
        SpaceTimeWindow::new(&self.strip, r)
    }

    /// `∂_t u = Δu + c·u` on the support with a constant `c`, unbounded in time.
    pub fn problem(&self, c: f64) -> Result<HeatProblem> {
        if !c.is_finite() {
            return Err(Error::Parameter(format!("coefficient {c} is not finite")));
        }
        HeatProblem::new(
            self.graph.clone(),
            self.support.clone(),
            Coefficient::Static(VertexFunction::constant(&self.graph, c)),
            (f64::NEG_INFINITY, f64::INFINITY),
        )
    }

    /// Vertex `(x₀, z)` of the strip.
    pub fn vertex(&self, x0: usize, z: i64) -> Result<usize> {
        self.strip.vertex(x0, z)
    }

    /// Indicator of a single support vertex.
    pub fn point_source(&self, x0: usize, z: i64) -> Result<VertexFunction> {
        let v = self.vertex(x0, z)?;
        if !self.support.contains(v) {
            return Err(Error::Support(format!("({x0}, {z}) is outside the support")));
        }
        let mut f = VertexFunction::zeros(&self.graph);
        f.values_mut()[v] = 1.0;
        Ok(f)
    }

    /// Solution with `u(t_ref) = data` sampled on `grid`.
    pub fn solve(&self, c: f64, data: &VertexFunction, t_ref: f64, grid: &[f64]) -> Result<Trajectory> {
        evolve_from(&self.problem(c)?, data, t_ref, grid)
    }

    /// Every Dirichlet eigenmode `e^{λt}φ` of the restricted operator.
    pub fn eigenmodes(&self, c: f64, grid: &[f64]) -> Result<Vec<Trajectory>> {
        let problem = self.problem(c)?;
        let Coefficient::Static(cf) = problem.coefficient() else {
            unreachable!("strip problems have a static coefficient");
        };
        let dec = restricted_spectrum(&self.graph, &self.support, Some(cf))?;
        dec.eigenvectors()
            .iter()
            .map(|phi| evolve_from(&problem, phi, 0.0, grid))
            .collect()
    }

    /// Checks that `traj` lives on this strip, vanishes off `W₀ × ℤ` and has
    /// `sup c ≤ ε`.
    pub fn check_hypotheses(&self, traj: &Trajectory) -> Result<()> {
        if traj.graph().id() != self.graph.id() {
            return Err(Error::DomainMismatch {
                expected: self.graph.id(),
                found: traj.graph().id(),
            });
        }
        let c_sup = coefficient_sup(traj.problem());
        if c_sup > self.epsilon() {
            return Err(Error::HypothesisViolation(format!(
                "sup c = {c_sup} exceeds ε = {}",
                self.epsilon()
            )));
        }
        for (t, slice) in traj.grid().iter().zip(traj.slices()) {
            for (v, &value) in slice.values().iter().enumerate() {
                let (x0, _) = self.strip.layer_index(v);
                if value != 0.0 && !self.base_subset.contains(x0) {
                    return Err(Error::HypothesisViolation(format!(
                        "u({v}, {t}) = {value} outside W₀ × ℤ"
                    )));
                }
            }
        }
        Ok(())
    }

    fn check_margin(&self, big_r: usize) -> Result<()> {
        if self.strip.radius() < big_r + TRUNCATION_MARGIN {
            return Err(Error::Coverage(format!(
                "truncation radius {} is below R + {TRUNCATION_MARGIN} = {}",
                self.strip.radius(),
                big_r + TRUNCATION_MARGIN
            )));
        }
        Ok(())
    }

    /// `(R − r)²·∫_{Q_r}u² / (∫_{Q_R}u² − ∫_{Q_r}u²)`; `None` when the annulus
    /// carries no mass.
    pub fn observed_ratio(&self, traj: &Trajectory, r: usize, big_r: usize) -> Result<Option<f64>> {
        check_radii(r, big_r)?;
        let inner = q_mass(traj, &self.window(r)?)?;
        let outer = q_mass(traj, &self.window(big_r)?)?;
        let annulus = outer - inner;
        Ok((annulus > 0.0).then(|| ((big_r - r) * (big_r - r)) as f64 * inner / annulus))
    }

    /// Certifies `∫_{Q_r}u² ≤ C/(R − r)²·(∫_{Q_R}u² − ∫_{Q_r}u²)`.
    pub fn reverse_poincare_certificate(
        &self,
        traj: &Trajectory,
        r: usize,
        big_r: usize,
        constant: f64,
    ) -> Result<Certificate> {
        check_radii(r, big_r)?;
        if !(constant.is_finite() && constant > 0.0) {
            return Err(Error::Parameter(format!("constant must be positive, got {constant}")));
        }
        self.check_hypotheses(traj)?;
        self.check_margin(big_r)?;
        let inner = q_mass(traj, &self.window(r)?)?;
        let outer = q_mass(traj, &self.window(big_r)?)?;
        let gap = ((big_r - r) * (big_r - r)) as f64;
        let bound = constant / gap * (outer - inner);
        let proof_constant = 128.0 * self.dirichlet.poincare_constant;
        let ratio = if outer > inner { gap * inner / (outer - inner) } else { 0.0 };
        Ok(
            Certificate::upper("reverse_poincare", bound, inner, Q_REL_TOL * outer)
                .with("r", r)
                .with("R", big_r)
                .with("C", fmt(constant))
                .with("Q_r", fmt(inner))
                .with("Q_R", fmt(outer))
                .with("ratio", fmt(ratio))
                .with("proof_constant", fmt(proof_constant))
                .with("within_proof_constant", ratio <= proof_constant),
        )
    }

    /// Certifies `∫_{Q_{r+j·r₀}}u² ≥ e^j·∫_{Q_r}u²` for `j = 1..=k`.
    pub fn iteration_growth_certificate(
        &self,
        traj: &Trajectory,
        r: usize,
        r0: usize,
        k: usize,
    ) -> Result<Certificate> {
        if r == 0 || r0 == 0 || k == 0 {
            return Err(Error::Parameter(format!(
                "iteration needs positive r, r₀, k; got {r}, {r0}, {k}"
            )));
        }
        let reach = r + k * r0;
        if reach > self.strip.radius() {
            return Err(Error::Coverage(format!(
                "Q_{reach} exceeds truncation radius {}",
                self.strip.radius()
            )));
        }
        self.check_hypotheses(traj)?;
        let base = q_mass(traj, &self.window(r)?)?;
        let mut worst = f64::INFINITY;
        let mut worst_j = 0;
        let mut largest = base;
        for j in 1..=k {
            let q = q_mass(traj, &self.window(r + j * r0)?)?;
            largest = largest.max(q);
            let slack = q - E.powi(j as i32) * base;
            if slack < worst {
                worst = slack;
                worst_j = j;
            }
        }
        let mut cert = Certificate::lower("iteration_growth", 0.0, worst, Q_REL_TOL * largest)
            .with("r", r)
            .with("r0", r0)
            .with("k", k)
            .with("tightest_j", worst_j)
            .with("Q_r", fmt(base));
        if base == 0.0 {
            cert = cert.with("vacuous", "true");
        }
        Ok(cert)
    }
}

fn check_radii(r: usize, big_r: usize) -> Result<()> {
    if r == 0 || big_r <= r {
        return Err(Error::Parameter(format!("need R > r ≥ 1, got r = {r}, R = {big_r}")));
    }
    Ok(())
}

/// Largest value of `c` on the support (for a time-dependent coefficient,
/// its declared bound).
fn coefficient_sup(problem: &HeatProblem) -> f64 {
    match problem.coefficient() {
        Coefficient::Static(c) => problem
            .support()
            .members()
            .iter()
            .map(|&x| c.values()[x])
            .fold(f64::NEG_INFINITY, f64::max),
        Coefficient::TimeDependent { bound, .. } => *bound,
    }
}

/// `r₀ = ⌈√(C(e − 1))⌉`, at least 1.
pub fn iteration_step(constant: f64) -> usize {
    ((constant * (E - 1.0)).sqrt().ceil() as usize).max(1)
}

/// `(r, R)` with `1 ≤ r < R ≤ max_r` and `R − r ≥ min_gap`, in lexicographic order.
pub fn radius_pairs(max_r: usize, min_gap: usize) -> Vec<(usize, usize)> {
    (1..=max_r)
        .flat_map(|r| (r + min_gap.max(1)..=max_r).map(move |big_r| (r, big_r)))
        .collect()
}

/// Largest observed reverse Poincaré ratio over a family of solutions.
#[derive(Debug, Clone, PartialEq)]
pub struct Calibration {
    /// `max` of the observed ratios.
    pub observed_max: f64,
    /// `CALIBRATION_FACTOR × observed_max`, the constant certified against.
    pub constant: f64,
    /// Index into the family and the `(r, R)` pair attaining the maximum.
    pub argmax: (usize, usize, usize),
    pub samples: usize,
}

pub fn calibrate_constant(
    experiment: &StripExperiment,
    family: &[Trajectory],
    pairs: &[(usize, usize)],
) -> Result<Calibration> {
    let jobs: Vec<(usize, usize, usize)> = (0..family.len())
        .flat_map(|i| pairs.iter().map(move |&(r, big_r)| (i, r, big_r)))
        .collect();
    let ratios: Vec<Option<f64>> = jobs
        .par_iter()
        .map(|&(i, r, big_r)| {
            experiment.check_hypotheses(&family[i])?;
            experiment.observed_ratio(&family[i], r, big_r)
        })
        .collect::<Result<_>>()?;
    let mut best: Option<(f64, (usize, usize, usize))> = None;
    let mut samples = 0;
    for (job, ratio) in jobs.iter().zip(&ratios) {
        let Some(ratio) = *ratio else { continue };
        samples += 1;
        if best.is_none_or(|(b, _)| ratio > b) {
            best = Some((ratio, *job));
        }
    }
    let (observed_max, argmax) = best.ok_or_else(|| {
        Error::DegenerateInput("calibration family carries no annulus mass".into())
    })?;
    Ok(Calibration {
        observed_max,
        constant: CALIBRATION_FACTOR * observed_max,
        argmax,
        samples,
    })
}

/// The fixed calibration family: every Dirichlet eigenmode, plus the
/// solution started at `grid[0]` from a point source at `(w, 0)` for the
/// first vertex `w` of `W₀`.
pub fn calibration_family(experiment: &StripExperiment, c: f64, grid: &[f64]) -> Result<Vec<Trajectory>> {
    let mut family = experiment.eigenmodes(c, grid)?;
    let w = experiment.base_subset().members()[0];
    let source = experiment.point_source(w, 0)?;
    family.push(experiment.solve(c, &source, grid[0], grid)?);
    Ok(family)
}
