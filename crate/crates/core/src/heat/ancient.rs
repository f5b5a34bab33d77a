use std::sync::Arc;

use nalgebra::{Matrix3, Vector3};

use super::{check_grid, HeatProblem, Method, Trajectory};
use crate::error::{Error, Result};
use crate::graph::{VertexFunction, WeightedGraph};
use crate::spectral::full_spectrum;

/// Linear-in-`|t|` growth rate above which a solution counts as exponential.
pub const GROWTH_THRESHOLD: f64 = 0.1;

/// Minimum backward time span required by [`classify_growth`].
pub const MIN_BACKWARD_SPAN: f64 = 10.0;

/// Ancient solution `u(t) = Σ a_i e^{λ_i t} φ_i` of the pure heat equation,
/// sampled on a grid of non-positive times. `modes` pairs an index into the
/// non-increasing spectrum with an amplitude.
pub fn ancient_from_modes(
    graph: impl Into<Arc<WeightedGraph>>,
    modes: &[(usize, f64)],
    grid: &[f64],
) -> Result<Trajectory> {
    let graph = graph.into();
    check_grid(grid)?;
    if grid[grid.len() - 1] > 0.0 {
        return Err(Error::Parameter(
            "ancient solutions are sampled at non-positive times".into(),
        ));
    }
    let dec = full_spectrum(&graph)?;
    let mut coefficients = vec![0.0; dec.len()];
    for &(index, amplitude) in modes {
        if index >= dec.len() {
            return Err(Error::IndexOutOfRange {
                index,
                len: dec.len(),
            });
        }
        coefficients[index] += amplitude;
    }
    let slices: Vec<VertexFunction> = grid.iter().map(|&t| dec.synthesize(&coefficients, t)).collect();
    let mut problem = HeatProblem::pure(graph);
    problem.interval = (grid[0], 0.0);
    Trajectory::new(problem, grid.to_vec(), slices, Method::SpectralExact)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GrowthClass {
    /// `max_x |u(x, t)| ≲ (1 + √|t|)^degree`; `zero` marks the trivial solution.
    Polynomial { degree: f64, zero: bool },
    /// `log max_x |u|` grows at least like `rate·|t|`.
    Exponential { rate: f64 },
}

impl GrowthClass {
    pub fn is_polynomial(&self) -> bool {
        matches!(self, Self::Polynomial { .. })
    }
}

/// Least-squares fit of `log max_x|u(x,t)| ≈ α + β|t| + γ log|t|` over grid
/// points with `|t| ≥ 1`. Exponential when `β > GROWTH_THRESHOLD`, otherwise
/// polynomial of degree `2γ` (a `√|t|` power of `d` contributes `d/2` to `γ`).
pub fn classify_growth(traj: &Trajectory) -> Result<GrowthClass> {
    let grid = traj.grid();
    let last = grid[grid.len() - 1];
    if !(-1e-12..=1e-12).contains(&last) {
        return Err(Error::Coverage(format!(
            "growth classification needs the grid to end at t = 0, got {last}"
        )));
    }
    if -grid[0] < MIN_BACKWARD_SPAN {
        return Err(Error::Coverage(format!(
            "growth classification needs at least {MIN_BACKWARD_SPAN} time units, got {}",
            -grid[0]
        )));
    }
    if traj.is_zero() {
        return Ok(GrowthClass::Polynomial {
            degree: 0.0,
            zero: true,
        });
    }

    let mut normal = Matrix3::<f64>::zeros();
    let mut rhs = Vector3::<f64>::zeros();
    let mut count = 0usize;
    for (t, slice) in grid.iter().zip(traj.slices()) {
        let s = -t;
        let peak = slice.sup_norm();
        if s < 1.0 || peak == 0.0 {
            continue;
        }
        let row = Vector3::new(1.0, s, s.ln());
        normal += row * row.transpose();
        rhs += row * peak.ln();
        count += 1;
    }
    if count < 3 {
        return Err(Error::DegenerateInput(
            "fewer than three non-zero samples with |t| ≥ 1".into(),
        ));
    }
    let fit = normal
        .lu()
        .solve(&rhs)
        .ok_or_else(|| Error::Numeric("growth fit is singular".into()))?;
    let (rate, log_slope) = (fit[1], fit[2]);
    Ok(if rate > GROWTH_THRESHOLD {
        GrowthClass::Exponential { rate }
    } else {
        GrowthClass::Polynomial {
            degree: (2.0 * log_slope).max(0.0),
            zero: false,
        }
    })
}
