//! Sample ingestion, the empirical CDF `F_n`, and the split between unique
//! quantiles and tie intervals.

use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

/// Relative tolerance (per sample) for deciding that a decimal `α·n` is an
/// integer.
pub const INTEGER_POSITION_TOL: f64 = 1e-9;

/// Finite samples in ascending order.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleSet {
    values: Vec<f64>,
}

impl SampleSet {
    /// Validates and sorts a copy of `raw`.
    pub fn new(raw: &[f64]) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::EmptyInput);
        }
        if let Some((index, &value)) = raw.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(Error::NonFiniteInput { index, value });
        }
        let mut values = raw.to_vec();
        values.sort_by(f64::total_cmp);
        Ok(Self { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn min(&self) -> f64 {
        self.values[0]
    }

    pub fn max(&self) -> f64 {
        self.values[self.values.len() - 1]
    }

    /// `x_(n) - x_(1)`.
    pub fn spread(&self) -> f64 {
        self.max() - self.min()
    }

    /// The `k`-th smallest value, 1-based.
    ///
    /// # Panics
    /// If `k` is zero or exceeds `n`.
    pub fn order_stat(&self, k: usize) -> f64 {
        assert!(
            k >= 1 && k <= self.len(),
            "order statistic {k} out of range 1..={}",
            self.len()
        );
        self.values[k - 1]
    }

    /// Number of samples `<= x`.
    pub fn count_le(&self, x: f64) -> usize {
        self.values.partition_point(|&v| v <= x)
    }

    /// Number of samples `< x`.
    pub fn count_lt(&self, x: f64) -> usize {
        self.values.partition_point(|&v| v < x)
    }

    pub fn contains(&self, x: f64) -> bool {
        self.count_le(x) != self.count_lt(x)
    }
}

/// A quantile order `α ∈ (0, 1)`, optionally carrying an exact `p/q` form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuantileLevel {
    alpha: f64,
    exact: Option<(u64, u64)>,
}

impl QuantileLevel {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::InvalidLevel(alpha.to_string()));
        }
        Ok(Self { alpha, exact: None })
    }

    /// The exact level `p/q`, with `0 < p < q`.
    pub fn ratio(p: u64, q: u64) -> Result<Self> {
        if p == 0 || p >= q {
            return Err(Error::InvalidLevel(format!("{p}/{q}")));
        }
        Ok(Self {
            alpha: p as f64 / q as f64,
            exact: Some((p, q)),
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn exact(&self) -> Option<(u64, u64)> {
        self.exact
    }

    /// `Some(k)` when `α·n = k` is an integer with `1 <= k < n`.
    ///
    /// The exact form is decided in integer arithmetic; a decimal level is
    /// accepted as integral when `|α·n - round(α·n)| <= 1e-9·n`.
    pub fn integer_position(&self, n: usize) -> Option<usize> {
        let k = match self.exact {
            Some((p, q)) => {
                let pn = p as u128 * n as u128;
                if pn % q as u128 != 0 {
                    return None;
                }
                (pn / q as u128) as usize
            }
            None => {
                let pos = self.alpha * n as f64;
                let rounded = pos.round();
                if (pos - rounded).abs() > INTEGER_POSITION_TOL * n as f64 {
                    return None;
                }
                rounded as usize
            }
        };
        (k >= 1 && k < n).then_some(k)
    }
}

impl fmt::Display for QuantileLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exact {
            Some((p, q)) => write!(f, "{p}/{q}"),
            None => write!(f, "{}", self.alpha),
        }
    }
}

impl FromStr for QuantileLevel {
    type Err = Error;

    /// Accepts `p/q` or a decimal.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidLevel(s.to_string());
        match s.split_once('/') {
            Some((p, q)) => {
                let p = p.trim().parse::<u64>().map_err(|_| bad())?;
                let q = q.trim().parse::<u64>().map_err(|_| bad())?;
                Self::ratio(p, q).map_err(|_| bad())
            }
            None => {
                let alpha = s.parse::<f64>().map_err(|_| bad())?;
                Self::new(alpha).map_err(|_| bad())
            }
        }
    }
}

/// The nonempty interval `[low, high)` on which `F_n = α`, where `low` and
/// `high` are the `k`-th and `(k+1)`-th order statistics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TieInterval {
    pub low: f64,
    pub high: f64,
    pub k: usize,
}

impl TieInterval {
    pub fn width(&self) -> f64 {
        self.high - self.low
    }

    pub fn midpoint(&self) -> f64 {
        self.low + 0.5 * self.width()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum QuantileLocation {
    /// A sample value with `F_n(q-) < α < F_n(q)`.
    ///
    /// `coincident` is set when `α·n` is an integer but the two adjacent
    /// order statistics are equal, so the would-be tie interval is empty.
    Unique {
        q: f64,
        coincident: bool,
    },
    Tie(TieInterval),
}

impl QuantileLocation {
    pub fn tie(&self) -> Option<&TieInterval> {
        match self {
            QuantileLocation::Tie(t) => Some(t),
            QuantileLocation::Unique { .. } => None,
        }
    }

    pub fn is_tie(&self) -> bool {
        self.tie().is_some()
    }
}

/// `(F_n(x), F_n(x-))`.
pub fn ecdf_at(s: &SampleSet, x: f64) -> (f64, f64) {
    let n = s.len() as f64;
    (s.count_le(x) as f64 / n, s.count_lt(x) as f64 / n)
}

/// Classifies the `α`-quantile of `s` as unique or as a tie interval.
pub fn locate_quantile(s: &SampleSet, level: &QuantileLevel) -> QuantileLocation {
    let n = s.len();
    if let Some(k) = level.integer_position(n) {
        let low = s.order_stat(k);
        let high = s.order_stat(k + 1);
        if low < high {
            return QuantileLocation::Tie(TieInterval { low, high, k });
        }
        return QuantileLocation::Unique {
            q: low,
            coincident: true,
        };
    }
    let pos = level.alpha() * n as f64;
    let k = (pos.ceil() as usize).clamp(1, n);
    QuantileLocation::Unique {
        q: s.order_stat(k),
        coincident: false,
    }
}
