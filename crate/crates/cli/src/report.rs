use std::fmt::Write as _;

use logquantile::{
    check_lemma_convergence, epsilon_sweep, interpolated_quantile, locate_quantile, log_quantile,
    midpoint_quantile, minimize_eps_loss, Epsilon, Estimate, QuantileLevel, QuantileLocation,
    Result, SampleSet, SweepReport,
};
use serde::{Serialize, Serializer};
use serde_json::value::RawValue;

use crate::config::{Format, MethodChoice, RunConfig, Task};
use crate::number::format_g17;
use crate::VERSION;

/// A float rendered with [`format_g17`].
#[derive(Debug, Clone, Copy)]
struct Num(f64);

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let raw = RawValue::from_string(format_g17(self.0)).map_err(serde::ser::Error::custom)?;
        raw.serialize(serializer)
    }
}

fn nums(v: &[f64]) -> Vec<Num> {
    v.iter().copied().map(Num).collect()
}

#[derive(Serialize)]
struct AlphaJson {
    decimal: Num,
    #[serde(skip_serializing_if = "Option::is_none")]
    exact: Option<String>,
}

impl From<&QuantileLevel> for AlphaJson {
    fn from(level: &QuantileLevel) -> Self {
        Self {
            decimal: Num(level.alpha()),
            exact: level.exact().map(|(p, q)| format!("{p}/{q}")),
        }
    }
}

#[derive(Serialize)]
#[serde(tag = "type", rename_all = "lowercase")]
enum LocationJson {
    Unique { q: Num, coincident: bool },
    Tie { q_low: Num, q_high: Num, k: usize },
}

impl From<&QuantileLocation> for LocationJson {
    fn from(loc: &QuantileLocation) -> Self {
        match *loc {
            QuantileLocation::Unique { q, coincident } => LocationJson::Unique {
                q: Num(q),
                coincident,
            },
            QuantileLocation::Tie(t) => LocationJson::Tie {
                q_low: Num(t.low),
                q_high: Num(t.high),
                k: t.k,
            },
        }
    }
}

fn interval(loc: &QuantileLocation) -> Option<[Num; 2]> {
    loc.tie().map(|t| [Num(t.low), Num(t.high)])
}

#[derive(Serialize)]
struct Diagnostics {
    iterations: u32,
    residual: Num,
    bracket_width: Num,
}

impl From<&Estimate> for Diagnostics {
    fn from(e: &Estimate) -> Self {
        Self {
            iterations: e.iterations,
            residual: Num(e.residual),
            bracket_width: Num(e.bracket_width),
        }
    }
}

#[derive(Serialize)]
struct QuantileJson {
    command: &'static str,
    alpha: AlphaJson,
    n: usize,
    method: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    eps: Option<Num>,
    location: LocationJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    interval: Option<[Num; 2]>,
    estimate: Num,
    diagnostics: Diagnostics,
    version: &'static str,
}

#[derive(Serialize)]
struct SweepJson {
    command: &'static str,
    alpha: AlphaJson,
    n: usize,
    method: &'static str,
    location: LocationJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    interval: Option<[Num; 2]>,
    /// The predicted `ε ↓ 0` limit.
    estimate: Num,
    diagnostics: Diagnostics,
    predicted_limit: Num,
    schedule: Vec<Num>,
    minimizers: Vec<Num>,
    errors: Vec<Num>,
    iterations: Vec<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    verdict: Option<VerdictJson>,
    version: &'static str,
}

#[derive(Serialize)]
struct VerdictJson {
    passed: bool,
    criterion: &'static str,
    monotone: bool,
    final_error: Num,
    bound_used: Num,
}

fn estimate_for(
    s: &SampleSet,
    level: &QuantileLevel,
    method: MethodChoice,
    tol: f64,
) -> Result<Estimate> {
    Ok(match method {
        MethodChoice::Log => log_quantile(s, level, tol)?,
        MethodChoice::Midpoint => midpoint_quantile(s, level),
        MethodChoice::Interpolate => interpolated_quantile(s, level),
        MethodChoice::Eps(e) => minimize_eps_loss(s, level, Epsilon::new(e)?, tol)?,
    })
}

/// Computes the requested result and serializes it. Nothing is rendered
/// unless the whole computation succeeds.
pub(crate) fn render(config: &RunConfig, s: &SampleSet) -> Result<String> {
    let level = &config.alpha;
    let tol = config.tolerance;
    let location = locate_quantile(s, level);
    match &config.task {
        Task::Quantile { method } => {
            let est = estimate_for(s, level, *method, tol)?;
            let eps = match method {
                MethodChoice::Eps(e) => Some(*e),
                _ => None,
            };
            Ok(match config.format {
                Format::Json => to_json(&QuantileJson {
                    command: "quantile",
                    alpha: level.into(),
                    n: s.len(),
                    method: est.method.as_str(),
                    eps: eps.map(Num),
                    location: (&location).into(),
                    interval: interval(&location),
                    estimate: Num(est.value),
                    diagnostics: (&est).into(),
                    version: VERSION,
                }),
                Format::Csv => quantile_csv(level, s.len(), &location, &est, eps),
            })
        }
        Task::Sweep { schedule } => {
            let limit = log_quantile(s, level, tol)?;
            let sweep = epsilon_sweep(s, level, schedule, tol)?;
            Ok(match config.format {
                Format::Json => to_json(&sweep_json(
                    "sweep", level, s, &location, &limit, &sweep, None,
                )),
                Format::Csv => sweep_csv(&sweep, None),
            })
        }
        Task::Verify { schedule } => {
            let limit = log_quantile(s, level, tol)?;
            let report = check_lemma_convergence(s, level, schedule, tol)?;
            let verdict = VerdictJson {
                passed: report.passed,
                criterion: report.criterion.as_str(),
                monotone: report.monotone,
                final_error: Num(report.final_error),
                bound_used: Num(report.bound_used),
            };
            Ok(match config.format {
                Format::Json => to_json(&sweep_json(
                    "verify",
                    level,
                    s,
                    &location,
                    &limit,
                    &report.sweep,
                    Some(verdict),
                )),
                Format::Csv => sweep_csv(&report.sweep, Some(report.passed)),
            })
        }
    }
}

fn sweep_json(
    command: &'static str,
    level: &QuantileLevel,
    s: &SampleSet,
    location: &QuantileLocation,
    limit: &Estimate,
    sweep: &SweepReport,
    verdict: Option<VerdictJson>,
) -> SweepJson {
    let schedule: Vec<f64> = sweep.schedule.iter().map(|e| e.get()).collect();
    SweepJson {
        command,
        alpha: level.into(),
        n: s.len(),
        method: "eps_loss",
        location: location.into(),
        interval: interval(location),
        estimate: Num(limit.value),
        diagnostics: limit.into(),
        predicted_limit: Num(sweep.predicted_limit),
        schedule: nums(&schedule),
        minimizers: nums(&sweep.minimizers),
        errors: nums(&sweep.errors),
        iterations: sweep.estimates.iter().map(|e| e.iterations).collect(),
        verdict,
        version: VERSION,
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("report serializes");
    out.push('\n');
    out
}

fn quantile_csv(
    level: &QuantileLevel,
    n: usize,
    location: &QuantileLocation,
    est: &Estimate,
    eps: Option<f64>,
) -> String {
    let g = format_g17;
    let (kind, low, high) = match location {
        QuantileLocation::Unique { q, .. } => ("unique", g(*q), g(*q)),
        QuantileLocation::Tie(t) => ("tie", g(t.low), g(t.high)),
    };
    let mut out = String::from(
        "command,alpha,n,method,eps,location,q_low,q_high,estimate,iterations,residual,bracket_width,version\n",
    );
    let _ = writeln!(
        out,
        "quantile,{},{n},{},{},{kind},{low},{high},{},{},{},{},{VERSION}",
        level,
        est.method.as_str(),
        eps.map(g).unwrap_or_default(),
        g(est.value),
        est.iterations,
        g(est.residual),
        g(est.bracket_width),
    );
    out
}

fn sweep_csv(sweep: &SweepReport, passed: Option<bool>) -> String {
    let g = format_g17;
    let mut out =
        String::from("eps,minimizer,predicted_limit,error,iterations,residual,bracket_width");
    if passed.is_some() {
        out.push_str(",passed");
    }
    out.push('\n');
    for ((eps, est), err) in sweep
        .schedule
        .iter()
        .zip(&sweep.estimates)
        .zip(&sweep.errors)
    {
        let _ = write!(
            out,
            "{},{},{},{},{},{},{}",
            g(eps.get()),
            g(est.value),
            g(sweep.predicted_limit),
            g(*err),
            est.iterations,
            g(est.residual),
            g(est.bracket_width),
        );
        if let Some(p) = passed {
            let _ = write!(out, ",{p}");
        }
        out.push('\n');
    }
    out
}
