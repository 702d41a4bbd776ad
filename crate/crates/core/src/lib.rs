//! Uniquely defined sample quantiles.
//!
//! When `α·n` is an integer the empirical CDF sits exactly at `α` on a whole
//! interval `[q_L, q_H)` and every point of it minimizes the check loss. This
//! crate picks the single point of that interval that balances the weighted
//! logarithmic moment
//!
//! ```text
//! (1-α) Σ_{x_i<q} ln(q-x_i) - α Σ_{x_i>q} ln(x_i-q) = 0
//! ```
//!
//! which is also the `ε ↓ 0` limit of the minimizer of the perturbed loss
//! `(1-α)(q-x)^{1+ε}` / `α(x-q)^{1+ε}`.
//!
//! The building blocks:
//!
//! - [`ecdf`]: sample ingestion, the empirical CDF, and tie classification.
//! - [`logmoment`]: the balance function and its bracketed root.
//! - [`epsloss`]: the perturbed loss, its minimizer, and the `ε` sweep.
//! - [`baselines`]: midpoint, linear interpolation and the sample mean.
//! - [`verify`]: grid-search oracles and the convergence checker.
//!
//! ```
//! use logquantile::{log_quantile, QuantileLevel, SampleSet, DEFAULT_TOL};
//!
//! let s = SampleSet::new(&[0.0, 1.0, 2.0, 10.0]).unwrap();
//! let half = QuantileLevel::ratio(1, 2).unwrap();
//! let est = log_quantile(&s, &half, DEFAULT_TOL).unwrap();
//! assert!((est.value - 20.0 / 11.0).abs() < 1e-12);
//! ```

pub mod baselines;
pub mod ecdf;
pub mod epsloss;
mod error;
pub mod logmoment;
pub mod numerics;
pub mod verify;

pub use baselines::{interpolated_quantile, midpoint_quantile, sample_mean};
pub use ecdf::{ecdf_at, locate_quantile, QuantileLevel, QuantileLocation, SampleSet, TieInterval};
pub use epsloss::{
    epsilon_sweep, loss, loss_derivative, minimize_eps_loss, Epsilon, SweepReport, MIN_EPSILON,
};
pub use error::{Error, Result};
pub use logmoment::{
    log_moment_balance, log_quantile, solve_log_quantile, BalanceValue, Estimate, Method,
    DEFAULT_TOL,
};
pub use verify::{check_lemma_convergence, grid_minimize_loss, ConvergenceReport, Criterion};

/// Decade schedule `10^-1, …, 10^-5`.
pub const DEFAULT_SCHEDULE: [f64; 5] = [1e-1, 1e-2, 1e-3, 1e-4, 1e-5];
