//! `toric-kahler`: JSON front end for the toric Kähler toolkit.

mod commands;
mod demo;
mod input;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use toric_kahler::schema::SCHEMA_VERSION;
use toric_kahler::Exec;

const THREADS_ENV: &str = "TORIC_KAHLER_THREADS";

#[derive(Parser, Debug)]
#[command(name = "toric-kahler", version, about = "Toric Kähler metrics from symplectic potentials")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Seed for sample placement.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Report path; stdout when absent.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    /// Evaluate sample points on one thread.
    #[arg(long, global = true)]
    pub sequential: bool,
}

impl Global {
    pub fn exec(&self) -> Exec {
        if self.sequential {
            Exec::Sequential
        } else {
            Exec::Parallel
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve for (A, B, C, D) on P^n_m(a) or P^n_m(a, b).
    Solve(commands::SolveArgs),
    /// Sample Sc by the general route and test for extremality.
    Curvature(commands::CurvatureArgs),
    /// Check positivity and the boundary determinant law.
    Validate(commands::ValidateArgs),
    /// Classify a constant curvature surface s'' = −1/(kx² − 2bx − c).
    Dim2(commands::Dim2Args),
    /// Pull a potential back by a linear change of coordinates.
    Transform(commands::TransformArgs),
    /// Parameter table of the Calabi family and the surface catalogue.
    Demo(demo::DemoArgs),
}

#[derive(Debug)]
pub enum CliError {
    /// Malformed input: exit 2.
    Schema(String),
    /// The computation failed: exit 3.
    Math(String),
    /// A validation report with verdict fail was written: exit 4.
    Validation,
    Io(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Io(_) => 1,
            CliError::Schema(_) => 2,
            CliError::Math(_) => 3,
            CliError::Validation => 4,
        }
    }
}

impl From<toric_kahler::Error> for CliError {
    fn from(e: toric_kahler::Error) -> Self {
        use toric_kahler::Error as E;
        match e {
            E::Parse(_) | E::DimensionMismatch { .. } => CliError::Schema(e.to_string()),
            other => CliError::Math(other.to_string()),
        }
    }
}

/// Report envelope shared by every command.
#[derive(Serialize)]
pub struct Envelope<'a, T: Serialize> {
    pub schema: u32,
    pub command: &'a str,
    #[serde(flatten)]
    pub body: T,
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    error: ErrorDetail<'a>,
}

#[derive(Serialize)]
struct ErrorDetail<'a> {
    kind: &'a str,
    message: &'a str,
}

pub fn write_report<T: Serialize>(global: &Global, command: &str, body: T) -> Result<(), CliError> {
    let env = Envelope {
        schema: SCHEMA_VERSION,
        command,
        body,
    };
    let mut text = serde_json::to_string_pretty(&env).map_err(|e| CliError::Io(e.to_string()))?;
    text.push('\n');
    match &global.output {
        Some(path) => fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Io(e.to_string())),
    }
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(value) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| CliError::Schema(format!("{THREADS_ENV} must be a positive integer, got {value:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Io(e.to_string()))
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Solve(_) => "solve",
        Command::Curvature(_) => "curvature",
        Command::Validate(_) => "validate",
        Command::Dim2(_) => "dim2",
        Command::Transform(_) => "transform",
        Command::Demo(_) => "demo",
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    configure_threads()?;
    let g = &cli.global;
    match &cli.command {
        Command::Solve(a) => commands::solve(g, a),
        Command::Curvature(a) => commands::curvature(g, a),
        Command::Validate(a) => commands::validate(g, a),
        Command::Dim2(a) => commands::dim2(g, a),
        Command::Transform(a) => commands::transform(g, a),
        Command::Demo(a) => demo::demo(g, a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            match &err {
                CliError::Math(msg) => {
                    eprintln!("error: {msg}");
                    let body = ErrorBody {
                        error: ErrorDetail {
                            kind: "math",
                            message: msg,
                        },
                    };
                    let _ = write_report(&cli.global, command_name(&cli.command), body);
                }
                CliError::Schema(msg) => eprintln!("schema error: {msg}"),
                CliError::Io(msg) => eprintln!("error: {msg}"),
                CliError::Validation => eprintln!("validation failed"),
            }
            ExitCode::from(err.code())
        }
    }
}
