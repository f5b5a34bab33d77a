use rayon::prelude::*;

use super::{
    calibrate_constant, calibration_family, iteration_step, q_mass, radius_pairs, StripExperiment,
    TRUNCATION_MARGIN,
};
use crate::error::{Error, Result};
use crate::graph::{VertexSubset, WeightedGraph};
use crate::heat::{classify_growth, uniform_grid, GrowthClass, Trajectory};

/// Largest `j` searched for the crossover.
const MAX_CROSSOVER: usize = 100_000;

#[derive(Debug, Clone, PartialEq)]
pub struct DichotomyConfig {
    /// Constant coefficient `c`; must not exceed `ε`.
    pub c: f64,
    /// Assumed polynomial growth degree `d` of the envelope.
    pub degree: u32,
    /// Base window radius of the iteration.
    pub r: usize,
    /// Time step of the sampling grid.
    pub step: f64,
}

impl Default for DichotomyConfig {
    fn default() -> Self {
        Self {
            c: 0.0,
            degree: 2,
            r: 1,
            step: 0.05,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DichotomyEntry {
    pub label: String,
    pub growth: GrowthClass,
    pub trivial: bool,
    /// `∫_{Q_r} u²`.
    pub q_r: f64,
    /// Smallest `j ≥ 1` with `e^j·∫_{Q_r}u² > 2C(r + j·r₀)^{2d+3}`.
    pub crossover: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DichotomyReport {
    pub radius: usize,
    pub horizon: f64,
    pub c: f64,
    pub epsilon: f64,
    pub poincare_constant: f64,
    /// Calibrated reverse Poincaré constant.
    pub constant: f64,
    pub r0: usize,
    pub degree: u32,
    pub r: usize,
    pub entries: Vec<DichotomyEntry>,
}

/// Growth class and crossover index of one solution.
pub fn dichotomy_entry(
    experiment: &StripExperiment,
    label: impl Into<String>,
    traj: &Trajectory,
    constant: f64,
    r0: usize,
    r: usize,
    degree: u32,
) -> Result<DichotomyEntry> {
    experiment.check_hypotheses(traj)?;
    let label = label.into();
    let growth = classify_growth(traj)?;
    if traj.is_zero() {
        return Ok(DichotomyEntry {
            label,
            growth,
            trivial: true,
            q_r: 0.0,
            crossover: None,
        });
    }
    let q_r = q_mass(traj, &experiment.window(r)?)?;
    let crossover = if q_r > 0.0 {
        let power = f64::from(2 * degree + 3);
        let log_envelope = |j: usize| (2.0 * constant).ln() + power * ((r + j * r0) as f64).ln();
        (1..=MAX_CROSSOVER).find(|&j| j as f64 + q_r.ln() > log_envelope(j))
    } else {
        None
    };
    Ok(DichotomyEntry {
        label,
        growth,
        trivial: false,
        q_r,
        crossover,
    })
}

/// Evolves each support vertex indicator backward from `t = 0` over
/// `[−horizon, 0]` and reports growth class and crossover index for each.
/// The reverse Poincaré constant is calibrated on the fixed family of
/// [`calibration_family`] over all `(r, R)` with `R − r ≥ 2` that fit both
/// the horizon and the truncation margin.
pub fn strip_dichotomy_experiment(
    base: &WeightedGraph,
    base_subset: &VertexSubset,
    radius: usize,
    horizon: f64,
    config: &DichotomyConfig,
) -> Result<DichotomyReport> {
    let experiment = StripExperiment::new(base, base_subset, radius)?;
    if config.c > experiment.epsilon() {
        return Err(Error::HypothesisViolation(format!(
            "c = {} exceeds ε = {}",
            config.c,
            experiment.epsilon()
        )));
    }
    if !(horizon.is_finite() && horizon > 0.0) {
        return Err(Error::Parameter(format!("horizon must be positive, got {horizon}")));
    }
    if !(config.step > 0.0 && config.step <= 0.05) {
        return Err(Error::Parameter(format!(
            "time step must lie in (0, 0.05], got {}",
            config.step
        )));
    }
    let max_r = radius
        .saturating_sub(TRUNCATION_MARGIN)
        .min(horizon.sqrt().floor() as usize);
    if max_r < 3 {
        return Err(Error::Coverage(format!(
            "radius {radius} and horizon {horizon} leave no (r, R) pair with R − r ≥ 2"
        )));
    }
    if config.r == 0 || config.r > max_r {
        return Err(Error::Parameter(format!(
            "base window r = {} must lie in 1..={max_r}",
            config.r
        )));
    }
    let steps = (horizon / config.step).ceil() as usize;
    let grid = uniform_grid(-horizon, 0.0, steps);
    let family = calibration_family(&experiment, config.c, &grid)?;
    let calibration = calibrate_constant(&experiment, &family, &radius_pairs(max_r, 2))?;
    let r0 = iteration_step(calibration.constant);

    let entries = experiment
        .support()
        .members()
        .par_iter()
        .map(|&v| {
            let (x0, z) = experiment.strip().layer_index(v);
            let source = experiment.point_source(x0, z)?;
            let traj = experiment.solve(config.c, &source, 0.0, &grid)?;
            dichotomy_entry(
                &experiment,
                experiment.graph().label(v),
                &traj,
                calibration.constant,
                r0,
                config.r,
                config.degree,
            )
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(DichotomyReport {
        radius,
        horizon,
        c: config.c,
        epsilon: experiment.epsilon(),
        poincare_constant: experiment.dirichlet().poincare_constant,
        constant: calibration.constant,
        r0,
        degree: config.degree,
        r: config.r,
        entries,
    })
}
