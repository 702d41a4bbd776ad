//! The weighted log-moment balance function and its root inside a tie
//! interval.

use std::fmt;

use crate::ecdf::{locate_quantile, QuantileLevel, QuantileLocation, SampleSet, TieInterval};
use crate::numerics::CompensatedSum;
use crate::{Error, Result};

/// Default relative bracket tolerance for the bisection solvers.
pub const DEFAULT_TOL: f64 = 1e-13;

/// Bisection iteration cap shared by the solvers.
pub const MAX_ITERATIONS: u32 = 200;

/// Initial seed offset from each tie endpoint, as a fraction of its width.
const SEED_OFFSET: f64 = 1e-12;

/// Per-term absolute floor on `|balance|` that also ends the solve.
const RESIDUAL_FLOOR_PER_TERM: f64 = 1e-15;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Log,
    Midpoint,
    Interpolate,
    EpsLoss,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Log => "log",
            Method::Midpoint => "midpoint",
            Method::Interpolate => "interpolate",
            Method::EpsLoss => "eps_loss",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A quantile value with the diagnostics of the solve that produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub method: Method,
    pub iterations: u32,
    /// Absolute value of the solver's target function at `value`.
    pub residual: f64,
    /// Width of the final bracket, in data units.
    pub bracket_width: f64,
}

impl Estimate {
    /// An estimate read off directly, with no iterative solve.
    pub fn exact(value: f64, method: Method) -> Self {
        Self {
            value,
            method,
            iterations: 0,
            residual: 0.0,
            bracket_width: 0.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BalanceValue {
    pub value: f64,
    pub n_below: usize,
    pub n_above: usize,
}

/// `(1-α) Σ_{x_i<q} ln(q-x_i) - α Σ_{x_i>q} ln(x_i-q)`.
///
/// Undefined when `q` is itself a sample value.
pub fn log_moment_balance(s: &SampleSet, level: &QuantileLevel, q: f64) -> Result<BalanceValue> {
    if s.contains(q) {
        return Err(Error::QAtSample { q });
    }
    let split = s.count_lt(q);
    let (below, above) = s.values().split_at(split);
    Ok(BalanceValue {
        value: weighted_log_balance(below, above, level.alpha(), q),
        n_below: below.len(),
        n_above: above.len(),
    })
}

fn weighted_log_balance(below: &[f64], above: &[f64], alpha: f64, q: f64) -> f64 {
    let mut lower = CompensatedSum::new();
    for &x in below {
        lower.add((q - x).ln());
    }
    let mut upper = CompensatedSum::new();
    for &x in above {
        upper.add((x - q).ln());
    }
    (1.0 - alpha) * lower.value() - alpha * upper.value()
}

/// Bisects the balance function over the open tie interval.
///
/// The samples are first mapped affinely so that the interval becomes
/// `(0, 1)`; in a tie the count of log terms on each side makes the balance
/// invariant under that map, so the root maps back unchanged. `tol` bounds
/// the mapped bracket width relative to the interval width; the bracket is
/// then narrowed in sample coordinates until its ends are adjacent floats or
/// the residual floor is met, and the end with the smaller residual wins.
pub fn solve_log_quantile(
    s: &SampleSet,
    level: &QuantileLevel,
    tie: &TieInterval,
    tol: f64,
) -> Result<Estimate> {
    check_tol(tol)?;
    let (low, width) = (tie.low, tie.width());
    debug_assert!(width > 0.0);
    let mapped: Vec<f64> = s.values().iter().map(|&x| (x - low) / width).collect();
    let (below, above) = mapped.split_at(tie.k);
    let alpha = level.alpha();
    let balance = |t: f64| weighted_log_balance(below, above, alpha, t);
    let floor = RESIDUAL_FLOOR_PER_TERM * s.len() as f64;

    // The balance tends to -inf at 0 and +inf at 1. Seeds that land on the
    // wrong side of the root fall back to the corresponding endpoint.
    let (mut a, mut b) = (SEED_OFFSET, 1.0 - SEED_OFFSET);
    let fa = balance(a);
    let fb = balance(b);
    if fa >= 0.0 {
        (a, b) = (0.0, a);
    } else if fb <= 0.0 {
        (a, b) = (b, 1.0);
    }

    let mut iterations = 0;
    loop {
        if b - a <= tol {
            break;
        }
        if iterations == MAX_ITERATIONS {
            return Err(Error::ToleranceNotReached {
                iterations,
                bracket_width: (b - a) * width,
            });
        }
        let m = a + 0.5 * (b - a);
        if m <= a || m >= b {
            // no float strictly inside the bracket
            break;
        }
        iterations += 1;
        let fm = balance(m);
        if fm.abs() <= floor {
            break;
        }
        if fm < 0.0 {
            a = m;
        } else {
            b = m;
        }
    }

    // Near an endpoint the balance is steep enough that rounding in the map
    // back can cost more than the whole mapped bracket, so the bracket is
    // finished on adjacent floats in the sample coordinates.
    let (lower, upper) = s.values().split_at(tie.k);
    let f = |q: f64| weighted_log_balance(lower, upper, alpha, q);
    let p = refine(f, low + a * width, low + b * width, tie, floor);
    Ok(Estimate {
        value: p.value,
        method: Method::Log,
        iterations: iterations + p.steps,
        residual: p.residual,
        bracket_width: p.width,
    })
}

struct Refined {
    value: f64,
    residual: f64,
    steps: u32,
    width: f64,
}

/// Bisects `f` over floats in `[lo, hi]`, clamped to the open tie interval,
/// until no float lies strictly inside or `|f| <= floor`. Returns the end
/// with the smaller residual.
fn refine(f: impl Fn(f64) -> f64, lo: f64, hi: f64, tie: &TieInterval, floor: f64) -> Refined {
    let (first, last) = (tie.low.next_up(), tie.high.next_down());
    let mut a = lo.clamp(first, last);
    let mut b = hi.clamp(first, last);
    let mut fa = f(a);
    if fa >= 0.0 && a > first {
        a = first;
        fa = f(a);
    }
    let mut fb = f(b);
    if fb <= 0.0 && b < last {
        b = last;
        fb = f(b);
    }
    let done = |value: f64, fv: f64, steps, width| Refined {
        value,
        residual: fv.abs(),
        steps,
        width,
    };
    if fa >= 0.0 {
        return done(a, fa, 0, 0.0);
    }
    if fb <= 0.0 {
        return done(b, fb, 0, 0.0);
    }
    let mut steps = 0;
    loop {
        let m = a + 0.5 * (b - a);
        if m <= a || m >= b {
            break;
        }
        steps += 1;
        let fm = f(m);
        if fm.abs() <= floor {
            return done(m, fm, steps, b - a);
        }
        if fm < 0.0 {
            (a, fa) = (m, fm);
        } else {
            (b, fb) = (m, fm);
        }
    }
    if -fa <= fb {
        done(a, fa, steps, b - a)
    } else {
        done(b, fb, steps, b - a)
    }
}

/// The log-moment quantile: the unique quantile when there is one, and the
/// balance root inside the tie interval otherwise.
pub fn log_quantile(s: &SampleSet, level: &QuantileLevel, tol: f64) -> Result<Estimate> {
    match locate_quantile(s, level) {
        QuantileLocation::Unique { q, .. } => Ok(Estimate::exact(q, Method::Log)),
        QuantileLocation::Tie(tie) => solve_log_quantile(s, level, &tie, tol),
    }
}

pub(crate) fn check_tol(tol: f64) -> Result<()> {
    if tol.is_finite() && tol > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidTolerance(tol))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[f64]) -> SampleSet {
        SampleSet::new(v).unwrap()
    }

    fn half() -> QuantileLevel {
        QuantileLevel::ratio(1, 2).unwrap()
    }

    #[test]
    fn balance_vanishes_at_closed_form_root() {
        let s = set(&[0.0, 1.0, 2.0, 10.0]);
        let b = log_moment_balance(&s, &half(), 20.0 / 11.0).unwrap();
        assert!(b.value.abs() < 1e-15, "{}", b.value);
        assert_eq!((b.n_below, b.n_above), (2, 2));
    }

    #[test]
    fn balance_symmetric_pair() {
        let s = set(&[-1.0, 1.0]);
        assert_eq!(log_moment_balance(&s, &half(), 0.0).unwrap().value, 0.0);
    }

    #[test]
    fn balance_direct_evaluation() {
        let s = set(&[0.0, 1.0, 2.0, 10.0]);
        let b = log_moment_balance(&s, &half(), 1.5).unwrap();
        // ½[ln 1.5 + ln 0.5] − ½[ln 0.5 + ln 8.5]
        let hand = 0.5 * (1.5f64.ln() + 0.5f64.ln()) - 0.5 * (0.5f64.ln() + 8.5f64.ln());
        assert!((b.value - hand).abs() < 1e-15);
        assert!((b.value - (-0.867_300_5)).abs() < 1e-6);
    }

    #[test]
    fn balance_rejects_sample_points() {
        let s = set(&[0.0, 1.0, 2.0, 10.0]);
        assert_eq!(
            log_moment_balance(&s, &half(), 2.0),
            Err(Error::QAtSample { q: 2.0 })
        );
    }

    #[test]
    fn balance_outside_support() {
        let s = set(&[0.0, 1.0]);
        let b = log_moment_balance(&s, &half(), -1.0).unwrap();
        assert_eq!((b.n_below, b.n_above), (0, 2));
        assert!((b.value + 0.5 * 2f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn solves_closed_form_tie() {
        let s = set(&[0.0, 1.0, 2.0, 10.0]);
        let est = log_quantile(&s, &half(), DEFAULT_TOL).unwrap();
        assert_eq!(est.method, Method::Log);
        assert!(
            (est.value - 20.0 / 11.0).abs() <= DEFAULT_TOL * 2.0,
            "{}",
            est.value
        );
        assert!(est.iterations > 0);
        assert!(est.bracket_width >= 0.0 && est.residual >= 0.0);
    }

    #[test]
    fn symmetric_tie_balances_at_center() {
        let s = set(&[0.0, 1.0, 2.0, 3.0]);
        let est = log_quantile(&s, &half(), DEFAULT_TOL).unwrap();
        assert!((est.value - 1.5).abs() < 1e-12);
    }

    #[test]
    fn unique_cases_need_no_solve() {
        let est =
            log_quantile(&set(&[10.0, 20.0, 30.0, 40.0, 50.0]), &half(), DEFAULT_TOL).unwrap();
        assert_eq!(est, Estimate::exact(30.0, Method::Log));
        let est = log_quantile(&set(&[1.0, 1.0, 1.0, 2.0]), &half(), DEFAULT_TOL).unwrap();
        assert_eq!(est.value, 1.0);
    }

    #[test]
    fn seed_on_wrong_side_falls_back_to_endpoint() {
        // The far sample above pushes the root to within ~1e-30 of q_H.
        let s = set(&[-1.0, 0.0, 1.0, 1e30]);
        let tie = locate_quantile(&s, &half());
        let tie = tie.tie().unwrap();
        let est = solve_log_quantile(&s, &half(), tie, DEFAULT_TOL).unwrap();
        assert!(est.value > 0.0 && est.value < 1.0);
        assert!(est.value > 1.0 - 1e-12);
    }

    #[test]
    fn sub_ulp_tolerance_stops_at_machine_resolution() {
        // root within ~1e-30 of q_H, where floats are 1.1e-16 apart
        let s = set(&[-1.0, 0.0, 1.0, 1e30]);
        let tie = *locate_quantile(&s, &half()).tie().unwrap();
        let est = solve_log_quantile(&s, &half(), &tie, 1e-17).unwrap();
        assert!(est.value < 1.0 && est.bracket_width <= f64::EPSILON);
    }

    #[test]
    fn unreachable_tolerance_is_reported() {
        // root near 2e-300 above q_L: about a thousand halvings away from the seed
        let s = set(&[-1e300, 0.0, 1.0, 2.0]);
        let tie = *locate_quantile(&s, &half()).tie().unwrap();
        let err = solve_log_quantile(&s, &half(), &tie, 1e-200).unwrap_err();
        assert!(
            matches!(
                err,
                Error::ToleranceNotReached {
                    iterations: MAX_ITERATIONS,
                    ..
                }
            ),
            "{err:?}"
        );
        let est = solve_log_quantile(&s, &half(), &tie, DEFAULT_TOL).unwrap();
        assert!(est.value > 0.0 && est.value < 1e-12);
    }

    #[test]
    fn rejects_bad_tolerance() {
        let s = set(&[0.0, 1.0]);
        for tol in [0.0, -1.0, f64::NAN, f64::INFINITY] {
            assert!(matches!(
                log_quantile(&s, &half(), tol),
                Err(Error::InvalidTolerance(_))
            ));
        }
    }

    #[test]
    fn bit_identical_reruns() {
        let s = set(&[3.2, -1.5, 0.25, 7.0, 2.0, 2.5]);
        let a = log_quantile(&s, &half(), DEFAULT_TOL).unwrap();
        let b = log_quantile(&s, &half(), DEFAULT_TOL).unwrap();
        assert_eq!(a.value.to_bits(), b.value.to_bits());
        assert_eq!(a, b);
    }
}
