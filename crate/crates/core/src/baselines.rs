//! Conventional estimators to compare against.

use crate::ecdf::{locate_quantile, QuantileLevel, QuantileLocation, SampleSet};
use crate::logmoment::{Estimate, Method};
use crate::numerics::compensated_sum;

/// The textbook rule: the midpoint of the tie interval.
pub fn midpoint_quantile(s: &SampleSet, level: &QuantileLevel) -> Estimate {
    let value = match locate_quantile(s, level) {
        QuantileLocation::Unique { q, .. } => q,
        QuantileLocation::Tie(tie) => tie.midpoint(),
    };
    Estimate::exact(value, Method::Midpoint)
}

/// Linear interpolation at position `h = (n-1)α + 1` between the order
/// statistics `⌊h⌋` and `⌈h⌉`.
pub fn interpolated_quantile(s: &SampleSet, level: &QuantileLevel) -> Estimate {
    let h = (s.len() - 1) as f64 * level.alpha() + 1.0;
    let lo = h.floor();
    let x_lo = s.order_stat(lo as usize);
    let x_hi = s.order_stat(h.ceil() as usize);
    Estimate::exact(x_lo + (h - lo) * (x_hi - x_lo), Method::Interpolate)
}

pub fn sample_mean(s: &SampleSet) -> f64 {
    compensated_sum(s.values().iter().copied()) / s.len() as f64
}
