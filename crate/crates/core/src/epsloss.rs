//! The perturbed check loss `L_{α,ε}` and its minimizer `q_{α,ε}`.

use crate::ecdf::{QuantileLevel, SampleSet};
use crate::logmoment::{check_tol, log_quantile, Estimate, Method, MAX_ITERATIONS};
use crate::numerics::CompensatedSum;
use crate::{Error, Result};

/// Smallest `ε` the minimizer accepts. Below it `d^ε` is too close to 1 in
/// double precision for the minimizer to be identified.
pub const MIN_EPSILON: f64 = 1e-8;

/// The derivative is `O(ε)` across a tie interval, so its early-exit floor
/// scales with `ε`.
const DERIVATIVE_FLOOR: f64 = 1e-15;

/// A strictly positive, finite perturbation exponent.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Epsilon(f64);

impl Epsilon {
    pub fn new(eps: f64) -> Result<Self> {
        if eps.is_finite() && eps > 0.0 {
            Ok(Self(eps))
        } else {
            Err(Error::UnsupportedEpsilon {
                eps,
                min: MIN_EPSILON,
            })
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

/// `d^{1+ε}` for `d >= 0`.
#[inline]
fn pow_one_plus(d: f64, eps: f64) -> f64 {
    if d == 0.0 {
        0.0
    } else {
        d * (eps * d.ln()).exp()
    }
}

/// `d^ε - 1` for `d > 0`, accurate when `ε·ln d` is tiny.
#[inline]
fn pow_minus_one(d: f64, eps: f64) -> f64 {
    (eps * d.ln()).exp_m1()
}

/// The empirical expected loss
/// `(1-α)/n Σ_{x_i<=q} (q-x_i)^{1+ε} + α/n Σ_{x_i>q} (x_i-q)^{1+ε}`.
///
/// `eps = 0` gives the ordinary check loss.
pub fn loss(s: &SampleSet, level: &QuantileLevel, eps: f64, q: f64) -> f64 {
    debug_assert!(eps >= 0.0, "loss needs eps >= 0, got {eps}");
    let alpha = level.alpha();
    let split = s.count_le(q);
    let (below, above) = s.values().split_at(split);
    let lower: CompensatedSum = below.iter().map(|&x| pow_one_plus(q - x, eps)).collect();
    let upper: CompensatedSum = above.iter().map(|&x| pow_one_plus(x - q, eps)).collect();
    ((1.0 - alpha) * lower.value() + alpha * upper.value()) / s.len() as f64
}

/// `(1-α)/n Σ_{x_i<=q} (q-x_i)^ε - α/n Σ_{x_i>q} (x_i-q)^ε`, the derivative
/// of [`loss`] divided by `1+ε`. Terms at `x_i = q` contribute `0^ε = 0`.
pub fn loss_derivative(s: &SampleSet, level: &QuantileLevel, eps: Epsilon, q: f64) -> f64 {
    let (alpha, eps) = (level.alpha(), eps.get());
    let values = s.values();
    let lt = s.count_lt(q);
    let le = s.count_le(q);
    let gt = values.len() - le;
    // Each d^ε is written as 1 + (d^ε - 1) so the O(1) count part cancels
    // exactly and only the O(ε) remainder is subject to rounding.
    let mut acc = CompensatedSum::new();
    acc.add((1.0 - alpha) * lt as f64);
    acc.add(-alpha * gt as f64);
    for &x in &values[..lt] {
        acc.add((1.0 - alpha) * pow_minus_one(q - x, eps));
    }
    for &x in &values[le..] {
        acc.add(-alpha * pow_minus_one(x - q, eps));
    }
    acc.value() / values.len() as f64
}

/// Minimizes [`loss`] for `ε > 0` by bisecting the sign change of
/// [`loss_derivative`] over `[x_(1), x_(n)]`.
///
/// Stops once the bracket is at most `tol·spread` wide, the derivative is
/// within `1e-15·ε` of zero, or the bracket holds no interior float.
pub fn minimize_eps_loss(
    s: &SampleSet,
    level: &QuantileLevel,
    eps: Epsilon,
    tol: f64,
) -> Result<Estimate> {
    if eps.get() < MIN_EPSILON {
        return Err(Error::UnsupportedEpsilon {
            eps: eps.get(),
            min: MIN_EPSILON,
        });
    }
    check_tol(tol)?;
    let deriv = |q: f64| loss_derivative(s, level, eps, q);
    let floor = DERIVATIVE_FLOOR * eps.get();

    let (mut a, mut b) = (s.min(), s.max());
    let da = deriv(a);
    if da >= 0.0 {
        // only reachable when all samples coincide
        return Ok(Estimate {
            value: a,
            method: Method::EpsLoss,
            iterations: 0,
            residual: da.abs(),
            bracket_width: 0.0,
        });
    }
    let target = tol * s.spread();
    let mut iterations = 0;
    let (value, residual) = loop {
        if b - a <= target {
            let m = a + 0.5 * (b - a);
            break (m, deriv(m).abs());
        }
        if iterations == MAX_ITERATIONS {
            return Err(Error::ToleranceNotReached {
                iterations,
                bracket_width: b - a,
            });
        }
        let m = a + 0.5 * (b - a);
        if m <= a || m >= b {
            // no float strictly inside the bracket
            break (m, deriv(m).abs());
        }
        iterations += 1;
        let dm = deriv(m);
        if dm.abs() <= floor {
            break (m, dm.abs());
        }
        if dm < 0.0 {
            a = m;
        } else {
            b = m;
        }
    };
    Ok(Estimate {
        value,
        method: Method::EpsLoss,
        iterations,
        residual,
        bracket_width: b - a,
    })
}

/// Minimizers `q_{α,ε}` along a decreasing schedule, against the predicted
/// `ε ↓ 0` limit.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport {
    pub schedule: Vec<Epsilon>,
    pub minimizers: Vec<f64>,
    /// Full solver output per schedule entry, same order as `minimizers`.
    pub estimates: Vec<Estimate>,
    pub predicted_limit: f64,
    /// `|minimizers[i] - predicted_limit|`.
    pub errors: Vec<f64>,
}

/// Checks that `schedule` is nonempty, strictly decreasing and positive.
pub fn validate_schedule(schedule: &[f64]) -> Result<Vec<Epsilon>> {
    if schedule.is_empty() {
        return Err(Error::InvalidSchedule("schedule is empty".into()));
    }
    let eps = schedule
        .iter()
        .map(|&e| Epsilon::new(e))
        .collect::<Result<Vec<_>>>()?;
    if let Some(w) = schedule.windows(2).find(|w| w[1] >= w[0]) {
        return Err(Error::InvalidSchedule(format!(
            "not strictly decreasing: {:e} is followed by {:e}",
            w[0], w[1]
        )));
    }
    Ok(eps)
}

pub fn epsilon_sweep(
    s: &SampleSet,
    level: &QuantileLevel,
    schedule: &[f64],
    tol: f64,
) -> Result<SweepReport> {
    let schedule = validate_schedule(schedule)?;
    let predicted_limit = log_quantile(s, level, tol)?.value;
    let estimates = schedule
        .iter()
        .map(|&e| {
            minimize_eps_loss(s, level, e, tol).map_err(|err| Error::AtEpsilon {
                eps: e.get(),
                source: Box::new(err),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let minimizers: Vec<f64> = estimates.iter().map(|e| e.value).collect();
    let errors = minimizers
        .iter()
        .map(|m| (m - predicted_limit).abs())
        .collect();
    Ok(SweepReport {
        schedule,
        minimizers,
        estimates,
        predicted_limit,
        errors,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::DEFAULT_TOL;

    fn set(v: &[f64]) -> SampleSet {
        SampleSet::new(v).unwrap()
    }

    fn half() -> QuantileLevel {
        QuantileLevel::ratio(1, 2).unwrap()
    }

    fn eps(e: f64) -> Epsilon {
        Epsilon::new(e).unwrap()
    }

    #[test]
    fn loss_examples() {
        assert!((loss(&set(&[0.0, 2.0]), &half(), 1.0, 1.0) - 0.5).abs() < 1e-15);
        assert_eq!(loss(&set(&[5.0]), &half(), 0.3, 5.0), 0.0);
        assert!((loss(&set(&[0.0, 1.0, 2.0, 10.0]), &half(), 0.0, 1.5) - 1.375).abs() < 1e-15);
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(
            loss_derivative(&set(&[0.0, 2.0]), &half(), eps(1.0), 1.0),
            0.0
        );
        let s = set(&[0.0, 1.0, 2.0, 10.0]);
        assert!(loss_derivative(&s, &half(), eps(1.0), 3.25).abs() < 1e-15);
    }

    #[test]
    fn derivative_continuous_across_samples() {
        let s = set(&[0.0, 1.0, 2.0, 10.0]);
        let e = eps(0.5);
        let at = loss_derivative(&s, &half(), e, 2.0);
        let left = loss_derivative(&s, &half(), e, 2.0 - 1e-12);
        let right = loss_derivative(&s, &half(), e, 2.0 + 1e-12);
        assert!(left <= at && at <= right);
        assert!(right - left < 1e-5);
    }

    #[test]
    fn minimizer_matches_mean_at_eps_one() {
        let s = set(&[0.0, 1.0, 2.0, 10.0]);
        let est = minimize_eps_loss(&s, &half(), eps(1.0), DEFAULT_TOL).unwrap();
        assert_eq!(est.method, Method::EpsLoss);
        assert!((est.value - 3.25).abs() < 1e-10 * s.spread());
    }

    #[test]
    fn minimizer_is_stationary() {
        let s = set(&[0.0, 1.0, 2.0, 10.0]);
        let est = minimize_eps_loss(&s, &half(), eps(0.5), DEFAULT_TOL).unwrap();
        let d = loss_derivative(&s, &half(), eps(0.5), est.value);
        assert!(d.abs() <= 1e-12, "{d}");
    }

    #[test]
    fn small_eps_approaches_log_root() {
        let s = set(&[0.0, 1.0, 2.0, 10.0]);
        let est = minimize_eps_loss(&s, &half(), eps(1e-4), DEFAULT_TOL).unwrap();
        assert!((est.value - 20.0 / 11.0).abs() < 1e-3, "{}", est.value);
        let s = set(&[10.0, 20.0, 30.0, 40.0, 50.0]);
        let est = minimize_eps_loss(&s, &half(), eps(1e-4), DEFAULT_TOL).unwrap();
        assert!((est.value - 30.0).abs() < 0.5);
    }

    #[test]
    fn all_equal_samples() {
        let s = set(&[4.0, 4.0, 4.0]);
        let est = minimize_eps_loss(&s, &half(), eps(0.1), DEFAULT_TOL).unwrap();
        assert_eq!(est.value, 4.0);
        assert_eq!(est.iterations, 0);
    }

    #[test]
    fn rejects_tiny_and_non_positive_eps() {
        let s = set(&[0.0, 1.0]);
        assert!(matches!(
            minimize_eps_loss(&s, &half(), eps(1e-9), DEFAULT_TOL),
            Err(Error::UnsupportedEpsilon { .. })
        ));
        assert!(minimize_eps_loss(&s, &half(), eps(MIN_EPSILON), DEFAULT_TOL).is_ok());
        for bad in [0.0, -0.1, f64::NAN, f64::INFINITY] {
            assert!(Epsilon::new(bad).is_err());
        }
    }

    #[test]
    fn schedule_validation() {
        assert!(matches!(
            validate_schedule(&[]),
            Err(Error::InvalidSchedule(_))
        ));
        assert!(matches!(
            validate_schedule(&[1e-2, 1e-1]),
            Err(Error::InvalidSchedule(_))
        ));
        assert!(matches!(
            validate_schedule(&[1e-2, 1e-2]),
            Err(Error::InvalidSchedule(_))
        ));
        assert!(matches!(
            validate_schedule(&[1e-1, 0.0]),
            Err(Error::UnsupportedEpsilon { .. })
        ));
        assert_eq!(validate_schedule(&[0.5, 0.1]).unwrap().len(), 2);
    }

    #[test]
    fn sweep_annotates_failing_eps() {
        let s = set(&[0.0, 1.0, 2.0, 10.0]);
        let err = epsilon_sweep(&s, &half(), &[1e-1, 1e-9], DEFAULT_TOL).unwrap_err();
        match &err {
            Error::AtEpsilon { eps, .. } => assert_eq!(*eps, 1e-9),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(err.root(), Error::UnsupportedEpsilon { .. }));
    }

    #[test]
    fn sweep_symmetric_pair_stays_at_zero() {
        let s = set(&[-1.0, 1.0]);
        let r = epsilon_sweep(&s, &half(), &[0.5, 1e-2, 1e-4], DEFAULT_TOL).unwrap();
        assert_eq!(r.predicted_limit, 0.0);
        for (m, e) in r.minimizers.iter().zip(&r.errors) {
            assert!(m.abs() <= 1e-12 && *e <= 1e-12);
        }
    }

    #[test]
    fn sweep_unique_with_mass_approaches_from_above() {
        let s = set(&[1.0, 1.0, 1.0, 2.0]);
        let r = epsilon_sweep(&s, &half(), &[1e-1, 1e-2, 1e-3], DEFAULT_TOL).unwrap();
        assert_eq!(r.predicted_limit, 1.0);
        assert!(r.minimizers.iter().all(|&m| m >= 1.0));
        assert!(r.errors.windows(2).all(|w| w[1] <= w[0]));
        assert!(*r.errors.last().unwrap() < 1e-10);
    }
}
