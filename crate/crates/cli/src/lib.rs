//! Command-line front end: reads samples, runs an estimator, sweep or
//! convergence check, and writes a JSON or CSV report.
//!
//! Exit codes: `0` success, `2` parse or validation failure, `3` a solver
//! hit its iteration cap, `4` unsupported `ε`.

mod config;
mod input;
mod number;
mod report;

pub use config::{Cli, ConfigError, Format, InputSource, MethodChoice, RunConfig, Task};
pub use input::{parse_samples, InputError, MAX_SAMPLES};
pub use number::format_g17;

use logquantile::{Error, SampleSet};

pub const EXIT_OK: u8 = 0;
pub const EXIT_INVALID: u8 = 2;
pub const EXIT_TOLERANCE: u8 = 3;
pub const EXIT_EPSILON: u8 = 4;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Exit code plus what goes to each stream. On failure `stdout` is empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn failure(code: u8, message: impl std::fmt::Display) -> Self {
        Self {
            code,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        }
    }
}

pub fn exit_code_for(err: &Error) -> u8 {
    match err.root() {
        Error::ToleranceNotReached { .. } => EXIT_TOLERANCE,
        Error::UnsupportedEpsilon { .. } => EXIT_EPSILON,
        _ => EXIT_INVALID,
    }
}

/// Runs one invocation against the raw bytes of the input.
pub fn run(config: &RunConfig, input: &[u8]) -> Outcome {
    let raw = match parse_samples(input) {
        Ok(v) => v,
        Err(e) => return Outcome::failure(EXIT_INVALID, e),
    };
    let samples = match SampleSet::new(&raw) {
        Ok(s) => s,
        Err(e) => return Outcome::failure(EXIT_INVALID, e),
    };
    match report::render(config, &samples) {
        Ok(stdout) => Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        },
        Err(e) => Outcome::failure(exit_code_for(&e), e),
    }
}
