//! `center-focus --spec job.json --out results/`
//!
//! Exit status: 0 on success, 2 when the job or flags fail validation, 3 when a
//! solver gives up (the error's name is printed on stderr).

mod commands;
mod job;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use thiserror::Error;

use crate::commands::Options;
use crate::job::JobSpec;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid job: {0}")]
    Validation(String),
    #[error("{0}")]
    Io(String),
    #[error("{name}: {message}")]
    Solver { name: &'static str, message: String },
}

impl CliError {
    pub fn solver(name: &'static str, err: &dyn std::fmt::Display) -> Self {
        CliError::Solver { name, message: err.to_string() }
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::Validation(_) | CliError::Io(_) => 2,
            CliError::Solver { .. } => 3,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "center-focus", version, about = "Decide center or focus for planar systems and Abel equations")]
struct Args {
    /// Job file (JSON).
    #[arg(long)]
    spec: PathBuf,
    /// Output directory, created if missing.
    #[arg(long, default_value = "out")]
    out: PathBuf,
    #[arg(long)]
    rel_tol: Option<f64>,
    #[arg(long)]
    abs_tol: Option<f64>,
    /// Comma-separated initial values for `scan`.
    #[arg(long, value_delimiter = ',')]
    rho_grid: Option<Vec<f64>>,
    /// Radius of the ball the Picard operator acts on.
    #[arg(long)]
    m: Option<f64>,
    /// Seed for the random samples drawn by `picard`.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn run(args: Args) -> Result<Vec<String>, CliError> {
    let text = fs::read_to_string(&args.spec)
        .map_err(|e| CliError::Validation(format!("cannot read {}: {e}", args.spec.display())))?;
    let mut job = JobSpec::parse(&text)?;
    if let Some(v) = args.rel_tol {
        job.config.rel_tol = v;
    }
    if let Some(v) = args.abs_tol {
        job.config.abs_tol = v;
    }
    if let Some(v) = args.m {
        job.config.ball_radius = v;
    }
    if let Some(grid) = args.rho_grid {
        job.rho_grid = Some(grid);
    }
    let payload = job.payload()?;
    commands::run(&job, &payload, &job.config, &args.out, &Options { seed: args.seed })
}

fn main() -> ExitCode {
    let args = Args::parse();
    let out = args.out.clone();
    match run(args) {
        Ok(files) => {
            for f in files {
                println!("{}", out.join(f).display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
