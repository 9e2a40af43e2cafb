//! Command-line front end: `solve` and `bench`.

pub mod bench;
pub mod config;
pub mod report;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use thiserror::Error;

use crate::error::Error;
use crate::plate::{self, AssembledSystem, SolutionReport};
use crate::quadrature::apply_boundary_conditions;
use config::{ConfigError, Problem, ProblemConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_SOLVER: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "dqplate", version, about = "DQ/HDQ analysis of anisotropic rectangular plates")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the analysis described by a config file.
    Solve {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Time the full and reduced paths over a sweep of grid sizes.
    Bench {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        min: usize,
        #[arg(long)]
        max: usize,
        #[arg(long)]
        step: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(#[from] ConfigError),
    #[error("solver error: {0}")]
    Solver(#[from] Error),
    #[error("solver error: ReducedPathMismatch: paths differ by {0:.3e}")]
    PathMismatch(f64),
    #[error("io error: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => EXIT_CONFIG,
            CliError::Solver(_) | CliError::PathMismatch(_) => EXIT_SOLVER,
            CliError::Io(_) => EXIT_IO,
        }
    }
}

fn io_err(path: &Path, e: std::io::Error) -> CliError {
    CliError::Io(format!("{}: {e}", path.display()))
}

pub fn load_config(path: &Path) -> Result<ProblemConfig, CliError> {
    let text = fs::read_to_string(path).map_err(|e| {
        CliError::Config(ConfigError { field: String::new(), message: format!("{}: {e}", path.display()) })
    })?;
    Ok(config::parse_config(&text)?)
}

/// Builds the directional weights and assembles the plate operators.
pub fn build_system(problem: &Problem) -> Result<AssembledSystem, Error> {
    let wx = apply_boundary_conditions(&problem.grid_x, problem.basis, problem.bc_x)?;
    let wy = apply_boundary_conditions(&problem.grid_y, problem.basis, problem.bc_y)?;
    plate::assemble(&wx, &wy, &problem.stiffness, &problem.geometry)
}

/// Output of a `solve` run.
pub struct SolveOutput {
    pub config: ProblemConfig,
    pub system: AssembledSystem,
    pub report: SolutionReport,
    pub text: String,
}

pub fn run_solve(config_path: &Path, out: Option<&Path>) -> Result<SolveOutput, CliError> {
    let cfg = load_config(config_path)?;
    let problem = cfg.validate()?;
    let system = build_system(&problem)?;
    let report = plate::solve(&system, problem.analysis, &problem.geometry, problem.path)?;
    let text = report::text_report(&cfg, &system, &report);
    if let Some(dir) = out {
        fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
        let write = |name: &str, body: &str| {
            let p = dir.join(name);
            fs::write(&p, body).map_err(|e| io_err(&p, e))
        };
        write("report.txt", &text)?;
        let json = report::results_json(&cfg, &system, &report);
        write("results.json", &serde_json::to_string_pretty(&json).expect("json value"))?;
        if let Some(d) = &report.deflection {
            write("field.csv", &report::field_csv(&d.full))?;
        }
    }
    Ok(SolveOutput { config: cfg, system, report, text })
}

/// Returns the bench CSV. Fails after writing it when any row exceeds
/// [`bench::MAX_REL_DIFF`].
pub fn run_bench(
    config_path: &Path,
    min: usize,
    max: usize,
    step: usize,
    out: Option<&Path>,
) -> Result<String, CliError> {
    let cfg = load_config(config_path)?;
    let rows = bench::run_bench(&cfg, min, max, step)?;
    let csv = bench::bench_csv(&rows);
    if let Some(dir) = out {
        fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
        let p = dir.join("bench.csv");
        fs::write(&p, &csv).map_err(|e| io_err(&p, e))?;
    }
    let worst = rows.iter().map(|r| r.max_rel_diff).fold(0.0, f64::max);
    if !(worst <= bench::MAX_REL_DIFF) {
        print!("{csv}");
        return Err(CliError::PathMismatch(worst));
    }
    Ok(csv)
}

/// Runs a parsed command line and returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    let result = match cli.command {
        Command::Solve { config, out } => run_solve(&config, out.as_deref()).map(|o| o.text),
        Command::Bench { config, min, max, step, out } => run_bench(&config, min, max, step, out.as_deref()),
    };
    match result {
        Ok(text) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(text.as_bytes());
            EXIT_OK
        }
        Err(e) => {
            eprintln!("{e}");
            e.exit_code()
        }
    }
}
