//! Grid-search oracles for the perturbed loss and the convergence check on
//! `q_{α,ε}` as `ε ↓ 0`.
//!
//! The oracles only ever evaluate [`loss`]; they share no code path with the
//! derivative-based minimizer they are meant to check.

use std::fmt;

use crate::ecdf::{QuantileLevel, SampleSet};
use crate::epsloss::{epsilon_sweep, loss, Epsilon, SweepReport};
use crate::{Error, Result};

/// Largest grid either oracle will lay out.
pub const MAX_GRID_POINTS: u64 = 100_000_000;

/// Multiplier on `ε_final·spread` in the final-error criterion.
pub const FINAL_ERROR_FACTOR: f64 = 10.0;

/// The points `x_(1) + i·resolution` that fall below `x_(n)`, followed by
/// `x_(n)` itself.
#[derive(Debug, Clone, Copy)]
struct Grid {
    start: f64,
    end: f64,
    step: f64,
    len: u64,
}

impl Grid {
    fn new(s: &SampleSet, resolution: f64) -> Result<Self> {
        if !(resolution.is_finite() && resolution > 0.0) {
            return Err(Error::InvalidResolution(resolution));
        }
        let (start, end) = (s.min(), s.max());
        let steps = ((end - start) / resolution).ceil();
        if steps + 1.0 > MAX_GRID_POINTS as f64 {
            return Err(Error::GridTooFine {
                points: (steps + 1.0) as u64,
                limit: MAX_GRID_POINTS,
            });
        }
        Ok(Self {
            start,
            end,
            step: resolution,
            len: steps as u64 + 1,
        })
    }

    fn point(&self, i: u64) -> f64 {
        if i + 1 == self.len {
            self.end
        } else {
            self.start + i as f64 * self.step
        }
    }

    /// Index of the smallest value of `f` over `indices`, earliest on ties.
    fn argmin(&self, indices: impl Iterator<Item = u64>, f: impl Fn(f64) -> f64) -> (u64, f64) {
        let mut best = (u64::MAX, f64::INFINITY);
        for i in indices {
            let v = f(self.point(i));
            if v < best.1 || best.0 == u64::MAX {
                best = (i, v);
            }
        }
        best
    }
}

/// Exhaustive grid search for the minimizer of [`loss`] over
/// `[x_(1), x_(n)]`. Ties go to the smaller abscissa.
pub fn grid_minimize_loss(
    s: &SampleSet,
    level: &QuantileLevel,
    eps: Epsilon,
    resolution: f64,
) -> Result<f64> {
    let grid = Grid::new(s, resolution)?;
    let (i, _) = grid.argmin(0..grid.len, |q| loss(s, level, eps.get(), q));
    Ok(grid.point(i))
}

/// Two-pass grid search over the same points as [`grid_minimize_loss`]: a
/// scan of every `stride`-th point, then an exhaustive scan of the two
/// coarse cells either side of the coarse winner.
///
/// For a convex loss the answer is identical to the exhaustive scan, at a
/// cost of roughly `len/stride + 4·stride` loss evaluations.
pub fn grid_minimize_loss_two_pass(
    s: &SampleSet,
    level: &QuantileLevel,
    eps: Epsilon,
    resolution: f64,
    stride: u64,
) -> Result<f64> {
    let grid = Grid::new(s, resolution)?;
    let stride = stride.max(1);
    let f = |q: f64| loss(s, level, eps.get(), q);
    let last = grid.len - 1;
    let coarse = (0..=last)
        .step_by(stride as usize)
        .chain((last % stride != 0).then_some(last));
    let (c, _) = grid.argmin(coarse, f);
    let lo = c.saturating_sub(2 * stride);
    let hi = (c + 2 * stride).min(last);
    let (i, _) = grid.argmin(lo..=hi, f);
    Ok(grid.point(i))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Criterion {
    MonotoneErrors,
    FinalErrorBound,
}

impl Criterion {
    pub fn as_str(&self) -> &'static str {
        match self {
            Criterion::MonotoneErrors => "monotone_errors",
            Criterion::FinalErrorBound => "final_error_bound",
        }
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    pub sweep: SweepReport,
    pub passed: bool,
    /// The first criterion that failed, or the last one checked on a pass.
    pub criterion: Criterion,
    /// `10·ε_final·spread`.
    pub bound_used: f64,
    /// Increases in error up to this size are solver noise and do not break
    /// monotonicity.
    pub resolution: f64,
    pub monotone: bool,
    pub final_error: f64,
}

/// Runs the sweep and checks that the errors against the log quantile are
/// nonincreasing and end within `10·ε_final·spread`.
///
/// Both the minimizers and the limit are only known to within their solver
/// brackets, so consecutive errors are compared up to
/// `2·tol·spread + 4 ulp(max|x|)`.
pub fn check_lemma_convergence(
    s: &SampleSet,
    level: &QuantileLevel,
    schedule: &[f64],
    tol: f64,
) -> Result<ConvergenceReport> {
    let sweep = epsilon_sweep(s, level, schedule, tol)?;
    let eps_final = sweep.schedule.last().map_or(0.0, |e| e.get());
    let bound_used = FINAL_ERROR_FACTOR * eps_final * s.spread();
    let magnitude = s.min().abs().max(s.max().abs());
    let resolution = 2.0 * tol * s.spread() + 4.0 * f64::EPSILON * magnitude;
    let (monotone, final_error, criterion, passed) = judge(&sweep.errors, resolution, bound_used);
    Ok(ConvergenceReport {
        sweep,
        passed,
        criterion,
        bound_used,
        resolution,
        monotone,
        final_error,
    })
}

fn judge(errors: &[f64], resolution: f64, bound: f64) -> (bool, f64, Criterion, bool) {
    let monotone = errors.windows(2).all(|w| w[1] <= w[0] + resolution);
    let final_error = errors.last().copied().unwrap_or(0.0);
    let within = final_error <= bound;
    let criterion = if monotone {
        Criterion::FinalErrorBound
    } else {
        Criterion::MonotoneErrors
    };
    (monotone, final_error, criterion, monotone && within)
}
