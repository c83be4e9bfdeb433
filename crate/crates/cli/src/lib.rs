//! Front end for `toeplitz-spectra`: one subcommand per family of checks,
//! CSV for grid data and JSON for reports.
//!
//! Exit codes are a stable contract: 0 when every check passes, 1 when a
//! mathematical check fails (or the run itself fails), 2 for usage errors.

// `!(x > 0.0)` deliberately rejects NaN; quadrature nodes keep full published digits.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod args;
pub mod commands;
pub mod output;

use std::path::Path;

use toeplitz_spectra::SpectraError;

use args::{Cli, Command};
use output::{timestamp, write_manifest, RunManifest, Versions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Passed,
    Failed,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Runtime(anyhow::Error),
}

impl From<SpectraError> for CliError {
    fn from(e: SpectraError) -> Self {
        match e {
            SpectraError::InvalidParameter(_)
            | SpectraError::ZeroSize
            | SpectraError::IndexOutOfRange { .. }
            | SpectraError::InvalidBandwidth(_)
            | SpectraError::NotUpperHalfPlane { .. }
            | SpectraError::InvalidDeltaLadder => CliError::Usage(e.to_string()),
            other => CliError::Runtime(other.into()),
        }
    }
}

impl From<anyhow::Error> for CliError {
    fn from(e: anyhow::Error) -> Self {
        CliError::Runtime(e)
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Runtime(_) => EXIT_CHECK_FAILED,
        }
    }
}

fn out_and_params(command: &Command) -> (&'static str, Option<&Path>, serde_json::Value) {
    use commands::parameters;
    match command {
        Command::Verify(a) => ("verify", a.out.as_deref(), parameters(a)),
        Command::Stieltjes(a) => ("stieltjes", a.out.as_deref(), parameters(a)),
        Command::Density(a) => ("density", a.out.as_deref(), parameters(a)),
        Command::Wegner(a) => ("wegner", a.out.as_deref(), parameters(a)),
        Command::Hw(a) => ("hw", a.out.as_deref(), parameters(a)),
        Command::Moments(a) => ("moments", a.out.as_deref(), parameters(a)),
    }
}

/// Runs a parsed command line and returns the process exit code.
pub fn run(cli: &Cli) -> i32 {
    let started = timestamp();
    let threads = cli.threads;
    let result = match &cli.command {
        Command::Verify(a) => commands::verify(a, threads),
        Command::Stieltjes(a) => commands::stieltjes(a, threads),
        Command::Density(a) => commands::density(a, threads),
        Command::Wegner(a) => commands::wegner(a, threads),
        Command::Hw(a) => commands::hw(a, threads),
        Command::Moments(a) => commands::moments(a, threads),
    };
    let (name, out, parameters) = out_and_params(&cli.command);
    let (code, seed) = match result {
        Ok(done) => (if done.outcome == Outcome::Passed { EXIT_OK } else { EXIT_CHECK_FAILED }, done.seed),
        Err(e) => {
            match &e {
                CliError::Usage(msg) => eprintln!("error: {msg}"),
                CliError::Runtime(err) => eprintln!("error: {err:#}"),
            }
            return e.exit_code();
        }
    };
    if let Some(out) = out {
        let manifest = RunManifest {
            command: name.to_string(),
            parameters,
            versions: Versions::current(),
            started,
            finished: timestamp(),
            seed,
            threads,
            exit_code: code,
        };
        if let Err(e) = write_manifest(out, &manifest) {
            eprintln!("error: {e:#}");
            return EXIT_CHECK_FAILED;
        }
    }
    code
}
