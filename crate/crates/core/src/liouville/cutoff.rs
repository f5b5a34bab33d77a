use crate::error::{Error, Result};
use crate::graph::{StripGraph, VertexFunction};

/// Shape parameter of the temporal step `S(s) = f(s)/(f(s) + f(1 − s))`,
/// `f(s) = e^{−a/s}`. With `a = 1/2` the steepest slope is about `1.53`.
const STEP_SHAPE: f64 = 0.5;

/// Space-time cutoff equal to 1 on `Q_r` and 0 outside `Q_R`.
///
/// The spatial profile depends on the level `i` only:
/// `1` for `|i| ≤ r`, `(R − |i|)/(R − r)` in between, `0` for `|i| ≥ R`.
/// The temporal profile is a C^∞ step in `|t|`, equal to 1 for `|t| ≤ r²`
/// and 0 for `|t| ≥ R²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CutoffFunction {
    r: usize,
    big_r: usize,
}

pub fn build_cutoff(r: usize, big_r: usize) -> Result<CutoffFunction> {
    if r == 0 || big_r <= r {
        return Err(Error::Parameter(format!(
            "cutoff needs R > r ≥ 1, got r = {r}, R = {big_r}"
        )));
    }
    Ok(CutoffFunction { r, big_r })
}

fn smooth_step(s: f64) -> f64 {
    if s <= 0.0 {
        return 0.0;
    }
    if s >= 1.0 {
        return 1.0;
    }
    let f = (-STEP_SHAPE / s).exp();
    let g = (-STEP_SHAPE / (1.0 - s)).exp();
    f / (f + g)
}

fn smooth_step_derivative(s: f64) -> f64 {
    if s <= 0.0 || s >= 1.0 {
        return 0.0;
    }
    let v = smooth_step(s);
    v * (1.0 - v) * STEP_SHAPE * (1.0 / (s * s) + 1.0 / ((1.0 - s) * (1.0 - s)))
}

impl CutoffFunction {
    pub fn r(&self) -> usize {
        self.r
    }

    pub fn big_r(&self) -> usize {
        self.big_r
    }

    pub fn spatial(&self, level: i64) -> f64 {
        let i = level.unsigned_abs() as usize;
        if i <= self.r {
            1.0
        } else if i >= self.big_r {
            0.0
        } else {
            (self.big_r - i) as f64 / (self.big_r - self.r) as f64
        }
    }

    fn inner_time(&self) -> f64 {
        (self.r * self.r) as f64
    }

    fn outer_time(&self) -> f64 {
        (self.big_r * self.big_r) as f64
    }

    pub fn temporal(&self, t: f64) -> f64 {
        let s = (self.outer_time() - t.abs()) / (self.outer_time() - self.inner_time());
        smooth_step(s)
    }

    /// `∂_t φ`.
    pub fn temporal_derivative(&self, t: f64) -> f64 {
        let span = self.outer_time() - self.inner_time();
        let s = (self.outer_time() - t.abs()) / span;
        // ds/dt = sign(t)·(−1/span)
        let sign = if t < 0.0 { 1.0 } else { -1.0 };
        sign * smooth_step_derivative(s) / span
    }

    pub fn value(&self, level: i64, t: f64) -> f64 {
        self.spatial(level) * self.temporal(t)
    }

    /// `φ(·, t)` on the vertices of a strip.
    pub fn on_strip(&self, strip: &StripGraph, t: f64) -> VertexFunction {
        VertexFunction::from_fn(strip.graph(), |v| self.value(strip.level(v), t))
    }

    pub fn gradient_bound(&self) -> f64 {
        2.0 / (self.big_r - self.r) as f64
    }

    pub fn time_derivative_bound(&self) -> f64 {
        2.0 / (self.outer_time() - self.inner_time())
    }

    /// Largest profile jump between adjacent levels. Within a level the
    /// cutoff is constant and `0 ≤ temporal ≤ 1`, so this bounds `|∇_xy φ|`
    /// over all adjacent pairs.
    pub fn max_level_jump(&self) -> f64 {
        let reach = self.big_r as i64 + 1;
        (-reach..reach)
            .map(|i| (self.spatial(i + 1) - self.spatial(i)).abs())
            .fold(0.0, f64::max)
    }

    /// Largest `|∂_t φ|` over `samples + 1` equally spaced times in `[−R², 0]`.
    pub fn max_time_derivative(&self, samples: usize) -> f64 {
        let samples = samples.max(1);
        let span = self.outer_time();
        (0..=samples)
            .map(|k| self.temporal_derivative(-span * k as f64 / samples as f64).abs())
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spatial_profile_examples() {
        let phi = build_cutoff(2, 4).unwrap();
        assert_eq!(phi.spatial(3), 0.5);
        assert_eq!(phi.spatial(-3), 0.5);
        assert_eq!(phi.spatial(2), 1.0);
        assert_eq!(phi.spatial(4), 0.0);
        assert_eq!(phi.spatial(9), 0.0);
        assert_eq!((phi.spatial(2) - phi.spatial(3)).abs(), 0.5);
        assert!(phi.max_level_jump() <= phi.gradient_bound());
    }

    #[test]
    fn one_on_the_inner_cylinder() {
        for r in 1..6 {
            for big_r in r + 1..8 {
                let phi = build_cutoff(r, big_r).unwrap();
                for i in -(r as i64)..=r as i64 {
                    assert_eq!(phi.value(i, 0.0), 1.0);
                    assert_eq!(phi.value(i, -((r * r) as f64)), 1.0);
                }
                assert_eq!(phi.temporal(-((big_r * big_r) as f64)), 0.0);
                assert_eq!(phi.temporal(-((big_r * big_r) as f64) - 3.0), 0.0);
            }
        }
    }

    #[test]
    fn rejects_bad_radii() {
        assert!(build_cutoff(3, 3).is_err());
        assert!(build_cutoff(4, 2).is_err());
        assert!(build_cutoff(0, 2).is_err());
    }

    #[test]
    fn derivative_matches_finite_differences() {
        let phi = build_cutoff(2, 5).unwrap();
        for k in 1..200 {
            let t = -4.0 - 21.0 * k as f64 / 200.0;
            let h = 1e-6;
            let fd = (phi.temporal(t + h) - phi.temporal(t - h)) / (2.0 * h);
            assert!((fd - phi.temporal_derivative(t)).abs() < 1e-7);
        }
    }

    #[test]
    fn bounds_hold_exhaustively() {
        for big_r in 2..=20 {
            for r in 1..big_r {
                let phi = build_cutoff(r, big_r).unwrap();
                assert!(phi.max_level_jump() <= phi.gradient_bound());
                assert!(phi.max_time_derivative(4000) <= phi.time_derivative_bound());
                for k in 0..=100 {
                    let t = -((big_r * big_r) as f64) * k as f64 / 100.0;
                    let v = phi.temporal(t);
                    assert!((0.0..=1.0).contains(&v));
                }
            }
        }
    }
}
