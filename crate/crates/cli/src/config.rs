use std::fmt;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use logquantile::{QuantileLevel, DEFAULT_SCHEDULE, DEFAULT_TOL};

#[derive(Debug, Parser)]
#[command(
    name = "logquantile",
    version,
    about = "Tie-free sample quantiles via log-moment balance"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Estimate one quantile.
    Quantile {
        /// Quantile level, as `p/q` or a decimal in (0, 1).
        #[arg(long)]
        alpha: QuantileLevel,
        #[arg(long, value_enum, default_value_t = MethodArg::Log)]
        method: MethodArg,
        /// Perturbation exponent for `--method eps`.
        #[arg(long)]
        eps: Option<f64>,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        /// Input file; standard input when absent or `-`.
        file: Option<PathBuf>,
    },
    /// Minimize the perturbed loss along a decreasing ε schedule.
    Sweep {
        #[arg(long)]
        alpha: QuantileLevel,
        /// Comma-separated, strictly decreasing ε values.
        #[arg(long, value_delimiter = ',')]
        schedule: Option<Vec<f64>>,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        file: Option<PathBuf>,
    },
    /// Check that the sweep converges to the log-moment quantile.
    Verify {
        #[arg(long)]
        alpha: QuantileLevel,
        #[arg(long, value_delimiter = ',')]
        schedule: Option<Vec<f64>>,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        file: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Log,
    Midpoint,
    Interpolate,
    Eps,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MethodChoice {
    Log,
    Midpoint,
    Interpolate,
    Eps(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Task {
    Quantile { method: MethodChoice },
    Sweep { schedule: Vec<f64> },
    Verify { schedule: Vec<f64> },
}

impl Task {
    pub fn name(&self) -> &'static str {
        match self {
            Task::Quantile { .. } => "quantile",
            Task::Sweep { .. } => "sweep",
            Task::Verify { .. } => "verify",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InputSource {
    Stdin,
    File(PathBuf),
}

impl fmt::Display for InputSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InputSource::Stdin => f.write_str("standard input"),
            InputSource::File(p) => write!(f, "{}", p.display()),
        }
    }
}

impl From<Option<PathBuf>> for InputSource {
    fn from(p: Option<PathBuf>) -> Self {
        match p {
            Some(p) if p.as_os_str() != "-" => InputSource::File(p),
            _ => InputSource::Stdin,
        }
    }
}

/// A validated invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub task: Task,
    pub alpha: QuantileLevel,
    pub tolerance: f64,
    pub format: Format,
    pub input: InputSource,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConfigError {
    #[error("--method eps requires --eps")]
    MissingEps,
    #[error("--eps is only used with --method eps")]
    UnusedEps,
    #[error("--tol must be finite and positive, got {0}")]
    BadTolerance(f64),
}

impl Cli {
    pub fn into_config(self) -> Result<RunConfig, ConfigError> {
        let format = self.format;
        let (task, alpha, tolerance, file) = match self.command {
            Command::Quantile {
                alpha,
                method,
                eps,
                tol,
                file,
            } => {
                let method = match (method, eps) {
                    (MethodArg::Eps, Some(e)) => MethodChoice::Eps(e),
                    (MethodArg::Eps, None) => return Err(ConfigError::MissingEps),
                    (_, Some(_)) => return Err(ConfigError::UnusedEps),
                    (MethodArg::Log, None) => MethodChoice::Log,
                    (MethodArg::Midpoint, None) => MethodChoice::Midpoint,
                    (MethodArg::Interpolate, None) => MethodChoice::Interpolate,
                };
                (Task::Quantile { method }, alpha, tol, file)
            }
            Command::Sweep {
                alpha,
                schedule,
                tol,
                file,
            } => {
                let schedule = schedule.unwrap_or_else(|| DEFAULT_SCHEDULE.to_vec());
                (Task::Sweep { schedule }, alpha, tol, file)
            }
            Command::Verify {
                alpha,
                schedule,
                tol,
                file,
            } => {
                let schedule = schedule.unwrap_or_else(|| DEFAULT_SCHEDULE.to_vec());
                (Task::Verify { schedule }, alpha, tol, file)
            }
        };
        if !(tolerance.is_finite() && tolerance > 0.0) {
            return Err(ConfigError::BadTolerance(tolerance));
        }
        Ok(RunConfig {
            task,
            alpha,
            tolerance,
            format,
            input: file.into(),
        })
    }
}
