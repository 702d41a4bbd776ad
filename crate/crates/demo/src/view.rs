//! Plain functions behind the wasm exports, usable and testable natively.

use logquantile::{
    check_lemma_convergence, interpolated_quantile, locate_quantile, log_moment_balance,
    log_quantile, loss, midpoint_quantile, minimize_eps_loss, Epsilon, QuantileLevel,
    QuantileLocation, SampleSet, DEFAULT_SCHEDULE, DEFAULT_TOL,
};
use serde_json::{json, Value};

pub const MAX_POINTS: usize = 4096;

type Result<T> = std::result::Result<T, String>;

fn parse(data: &str, alpha: &str) -> Result<(SampleSet, QuantileLevel)> {
    let mut values = Vec::new();
    for line in data.lines().filter(|l| !l.trim_start().starts_with('#')) {
        for tok in line
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
        {
            values.push(
                tok.parse::<f64>()
                    .map_err(|_| format!("not a number: {tok:?}"))?,
            );
        }
    }
    let s = SampleSet::new(&values).map_err(|e| e.to_string())?;
    let level: QuantileLevel = alpha
        .trim()
        .parse()
        .map_err(|e: logquantile::Error| e.to_string())?;
    Ok((s, level))
}

fn check_points(points: usize) -> Result<usize> {
    if (2..=MAX_POINTS).contains(&points) {
        Ok(points)
    } else {
        Err(format!("points must be in 2..={MAX_POINTS}, got {points}"))
    }
}

fn location_json(loc: &QuantileLocation) -> Value {
    match loc {
        QuantileLocation::Unique { q, coincident } => {
            json!({"type": "unique", "q": q, "coincident": coincident})
        }
        QuantileLocation::Tie(t) => {
            json!({"type": "tie", "q_low": t.low, "q_high": t.high, "k": t.k})
        }
    }
}

pub fn estimate(data: &str, alpha: &str) -> Result<String> {
    let (s, level) = parse(data, alpha)?;
    let loc = locate_quantile(&s, &level);
    let log = log_quantile(&s, &level, DEFAULT_TOL).map_err(|e| e.to_string())?;
    Ok(json!({
        "n": s.len(),
        "alpha": level.alpha(),
        "samples": s.values(),
        "location": location_json(&loc),
        "log": log.value,
        "iterations": log.iterations,
        "midpoint": midpoint_quantile(&s, &level).value,
        "interpolate": interpolated_quantile(&s, &level).value,
    })
    .to_string())
}

pub fn balance_curve(data: &str, alpha: &str, points: usize) -> Result<String> {
    let (s, level) = parse(data, alpha)?;
    let points = check_points(points)?;
    let Some(tie) = locate_quantile(&s, &level).tie().copied() else {
        return Ok(json!({"tie": false}).to_string());
    };
    let mut xs = Vec::with_capacity(points);
    let mut ys = Vec::with_capacity(points);
    for i in 1..=points {
        let q = tie.low + tie.width() * i as f64 / (points + 1) as f64;
        if let Ok(b) = log_moment_balance(&s, &level, q) {
            xs.push(q);
            ys.push(b.value);
        }
    }
    let root = log_quantile(&s, &level, DEFAULT_TOL)
        .map_err(|e| e.to_string())?
        .value;
    Ok(json!({"tie": true, "q_low": tie.low, "q_high": tie.high, "q": xs, "balance": ys, "root": root}).to_string())
}

pub fn loss_curve(data: &str, alpha: &str, eps: f64, points: usize) -> Result<String> {
    let (s, level) = parse(data, alpha)?;
    let points = check_points(points)?;
    let e = Epsilon::new(eps).map_err(|e| e.to_string())?;
    let minimizer = minimize_eps_loss(&s, &level, e, DEFAULT_TOL)
        .map_err(|e| e.to_string())?
        .value;
    let (lo, hi) = (s.min(), s.max());
    let xs: Vec<f64> = (0..points)
        .map(|i| lo + (hi - lo) * i as f64 / (points - 1) as f64)
        .collect();
    let ys: Vec<f64> = xs.iter().map(|&q| loss(&s, &level, eps, q)).collect();
    let limit = log_quantile(&s, &level, DEFAULT_TOL)
        .map_err(|e| e.to_string())?
        .value;
    Ok(
        json!({"eps": eps, "q": xs, "loss": ys, "minimizer": minimizer, "limit": limit})
            .to_string(),
    )
}

pub fn sweep(data: &str, alpha: &str) -> Result<String> {
    let (s, level) = parse(data, alpha)?;
    let r = check_lemma_convergence(&s, &level, &DEFAULT_SCHEDULE, DEFAULT_TOL)
        .map_err(|e| e.to_string())?;
    Ok(json!({
        "schedule": r.sweep.schedule.iter().map(|e| e.get()).collect::<Vec<_>>(),
        "minimizers": r.sweep.minimizers,
        "errors": r.sweep.errors,
        "limit": r.sweep.predicted_limit,
        "passed": r.passed,
    })
    .to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parsed(s: &str) -> Value {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn estimate_on_tie() {
        let v = parsed(&estimate("0 1 2 10", "1/2").unwrap());
        assert!((v["log"].as_f64().unwrap() - 20.0 / 11.0).abs() < 1e-12);
        assert_eq!(v["midpoint"].as_f64(), Some(1.5));
        assert_eq!(v["location"]["type"], "tie");
        assert_eq!(v["n"], 4);
    }

    #[test]
    fn estimate_accepts_commas_and_comments() {
        let v = parsed(&estimate("# header\n10, 20,30\n40 50", "0.5").unwrap());
        assert_eq!(v["log"].as_f64(), Some(30.0));
        assert_eq!(v["location"]["type"], "unique");
    }

    #[test]
    fn bad_inputs_are_errors() {
        assert!(estimate("1 two", "1/2").unwrap_err().contains("two"));
        assert!(estimate("", "1/2").is_err());
        assert!(estimate("1 2", "1.5").is_err());
        assert!(loss_curve("1 2", "1/2", 0.0, 10).is_err());
        assert!(loss_curve("1 2", "1/2", 0.1, 1).is_err());
        assert!(balance_curve("1 2", "1/2", MAX_POINTS + 1).is_err());
    }

    #[test]
    fn balance_curve_increases_through_zero() {
        let v = parsed(&balance_curve("0 1 2 10", "1/2", 50).unwrap());
        let ys: Vec<f64> = v["balance"]
            .as_array()
            .unwrap()
            .iter()
            .map(|y| y.as_f64().unwrap())
            .collect();
        assert_eq!(ys.len(), 50);
        assert!(ys.windows(2).all(|w| w[0] < w[1]));
        assert!(ys[0] < 0.0 && ys[49] > 0.0);
        assert!((v["root"].as_f64().unwrap() - 20.0 / 11.0).abs() < 1e-12);
    }

    #[test]
    fn balance_curve_without_tie() {
        let v = parsed(&balance_curve("1 2 3", "1/2", 10).unwrap());
        assert_eq!(v["tie"], false);
    }

    #[test]
    fn loss_curve_minimizer_is_lowest() {
        let v = parsed(&loss_curve("0 1 2 10", "1/2", 0.1, 200).unwrap());
        let ys: Vec<f64> = v["loss"]
            .as_array()
            .unwrap()
            .iter()
            .map(|y| y.as_f64().unwrap())
            .collect();
        let xs: Vec<f64> = v["q"]
            .as_array()
            .unwrap()
            .iter()
            .map(|y| y.as_f64().unwrap())
            .collect();
        assert_eq!((xs[0], xs[199]), (0.0, 10.0));
        let best = (0..200).min_by(|&a, &b| ys[a].total_cmp(&ys[b])).unwrap();
        let m = v["minimizer"].as_f64().unwrap();
        assert!((xs[best] - m).abs() <= 10.0 / 199.0);
    }

    #[test]
    fn sweep_converges() {
        let v = parsed(&sweep("0 1 2 10", "1/2").unwrap());
        assert_eq!(v["passed"], true);
        assert_eq!(v["errors"].as_array().unwrap().len(), 5);
    }
}
