use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::Parser;

use logquantile_cli::{run, Cli, InputSource, EXIT_INVALID};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = match cli.into_config() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_INVALID);
        }
    };

    let input = match &config.input {
        InputSource::Stdin => {
            let mut buf = Vec::new();
            io::stdin().read_to_end(&mut buf).map(|_| buf)
        }
        InputSource::File(path) => std::fs::read(path),
    };
    let input = match input {
        Ok(bytes) => bytes,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", config.input);
            return ExitCode::from(EXIT_INVALID);
        }
    };

    let outcome = run(&config, &input);
    if !outcome.stderr.is_empty() {
        eprint!("{}", outcome.stderr);
    }
    if !outcome.stdout.is_empty() {
        let mut out = io::stdout().lock();
        if out
            .write_all(outcome.stdout.as_bytes())
            .and_then(|_| out.flush())
            .is_err()
        {
            return ExitCode::from(EXIT_INVALID);
        }
    }
    ExitCode::from(outcome.code)
}
