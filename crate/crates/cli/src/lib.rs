//! Command-line front end: every command prints one table as CSV or JSON.

mod commands;
pub mod table;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{Map, Value};
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use thiserror::Error;

pub use table::{Cell, Table};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Compute(#[from] nlosc::Error),
    #[error("column {column} holds a non-finite value")]
    NonFinite { column: &'static str },
    #[error("cannot write {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "Usage",
            CliError::Compute(e) => e.kind(),
            CliError::NonFinite { .. } => "NonFiniteValue",
            CliError::Io { .. } => "Io",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "nlosc",
    version,
    about = "Spectrum, eigenstates and classical orbits of the nonlinear oscillator with position-dependent mass"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Energies e(n, L, Λ) for n = 0..=n-max with an admissibility flag.
    Spectrum(SpectrumArgs),
    /// Normalized radial eigenfunction and weight on a grid in y.
    States(StatesArgs),
    /// Gram matrix of the normalized states, truncated to the admissible ones.
    Gram(GramArgs),
    /// Shooting eigenvalues next to the closed form.
    Shoot(ShootArgs),
    /// Deviation from the harmonic-oscillator states at small Λ.
    Limit(LimitArgs),
    /// Integrated classical trajectory (1D, or planar with --ang-mom).
    Classical(ClassicalArgs),
    /// Effective radial potential on a grid in r.
    Veff(VeffArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Spectrum(_) => "spectrum",
            Command::States(_) => "states",
            Command::Gram(_) => "gram",
            Command::Shoot(_) => "shoot",
            Command::Limit(_) => "limit",
            Command::Classical(_) => "classical",
            Command::Veff(_) => "veff",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct Output {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// `min:max:points` with `min < max` and at least two points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub min: f64,
    pub max: f64,
    pub points: usize,
}

impl Grid {
    pub fn values(&self) -> Vec<f64> {
        let steps = (self.points - 1) as f64;
        (0..self.points)
            .map(|i| {
                if i + 1 == self.points {
                    self.max
                } else {
                    self.min + (self.max - self.min) * i as f64 / steps
                }
            })
            .collect()
    }
}

fn parse_grid(s: &str) -> Result<Grid, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [min, max, points] = parts[..] else {
        return Err("expected min:max:points".into());
    };
    let min = parse_finite(min)?;
    let max = parse_finite(max)?;
    let points: usize = points
        .parse()
        .map_err(|_| format!("invalid point count {points:?}"))?;
    if points < 2 {
        return Err("a grid needs at least 2 points".into());
    }
    if min >= max {
        return Err("grid min must be below max".into());
    }
    Ok(Grid { min, max, points })
}

fn parse_finite(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(format!("expected a finite number, got {s:?}")),
    }
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    /// Dimensionless nonlinearity Λ.
    #[arg(long, allow_negative_numbers = true, value_parser = parse_finite)]
    pub lambda: f64,
    #[arg(long = "L", default_value_t = 0)]
    pub l: usize,
    #[arg(long, default_value_t = 10)]
    pub n_max: usize,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct StatesArgs {
    #[arg(long, allow_negative_numbers = true, value_parser = parse_finite)]
    pub lambda: f64,
    #[arg(long = "L", default_value_t = 0)]
    pub l: usize,
    #[arg(long, default_value_t = 0)]
    pub n: usize,
    /// Defaults to 0.01 up to the endpoint minus 1e-9 (Λ < 0) or to 10, 200 points.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_grid)]
    pub grid: Option<Grid>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct GramArgs {
    #[arg(long, allow_negative_numbers = true, value_parser = parse_finite)]
    pub lambda: f64,
    #[arg(long = "L", default_value_t = 0)]
    pub l: usize,
    #[arg(long, default_value_t = 5)]
    pub n_max: usize,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct ShootArgs {
    #[arg(long, allow_negative_numbers = true, value_parser = parse_finite)]
    pub lambda: f64,
    #[arg(long = "L", default_value_t = 0)]
    pub l: usize,
    /// A single state; without it, all admissible states up to --n-max.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 2)]
    pub n_max: usize,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct LimitArgs {
    /// Small Λ, 0 < |Λ| ≤ 1e-2.
    #[arg(long, allow_negative_numbers = true, value_parser = parse_finite)]
    pub lambda: f64,
    #[arg(long = "L", default_value_t = 0)]
    pub l: usize,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 2)]
    pub n_max: usize,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct ClassicalArgs {
    /// Physical λ.
    #[arg(long, allow_negative_numbers = true, value_parser = parse_finite)]
    pub lambda: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true, value_parser = parse_finite)]
    pub alpha: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true, value_parser = parse_finite)]
    pub mass: f64,
    /// Start at rest at this position (1D) or radius (planar).
    #[arg(long, allow_negative_numbers = true, value_parser = parse_finite)]
    pub amplitude: f64,
    /// Angular momentum r²θ̇; switches to planar motion.
    #[arg(long, allow_negative_numbers = true, value_parser = parse_finite)]
    pub ang_mom: Option<f64>,
    /// Defaults to ten periods of the analytic 1D solution.
    #[arg(long, allow_negative_numbers = true, value_parser = parse_finite)]
    pub t_end: Option<f64>,
    #[arg(long, default_value_t = 1e-10, allow_negative_numbers = true, value_parser = parse_finite)]
    pub tol: f64,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct VeffArgs {
    /// Physical λ.
    #[arg(long, allow_negative_numbers = true, value_parser = parse_finite)]
    pub lambda: f64,
    #[arg(long = "L", default_value_t = 0)]
    pub l: usize,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true, value_parser = parse_finite)]
    pub alpha: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true, value_parser = parse_finite)]
    pub mass: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true, value_parser = parse_finite)]
    pub hbar: f64,
    /// Defaults to 0.05 up to the edge minus 1e-9 (λ < 0) or to 5, 200 points.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_grid)]
    pub grid: Option<Grid>,
    #[command(flatten)]
    pub output: Output,
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, S>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{}", e.render());
                return 0;
            }
            let text = e.render().to_string();
            let first = text
                .lines()
                .next()
                .unwrap_or("")
                .trim_start_matches("error: ");
            return report(&CliError::Usage(first.to_string()), stderr);
        }
    };
    match execute(&cli.command, stdout) {
        Ok(()) => 0,
        Err(e) => report(&e, stderr),
    }
}

fn report(err: &CliError, stderr: &mut dyn Write) -> i32 {
    let message = err.to_string().replace('\n', " ");
    let _ = writeln!(stderr, "error: kind={} message={}", err.kind(), message);
    err.exit_code()
}

fn execute(command: &Command, stdout: &mut dyn Write) -> Result<(), CliError> {
    let (table, params, output) = commands::dispatch(command)?;
    table.check_finite()?;
    let text = match output.format {
        Format::Csv => table.to_csv(),
        Format::Json => table.to_json(command.name(), params),
    };
    match &output.out {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        }),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Io {
                path: "stdout".into(),
                source,
            }),
    }
}

pub(crate) fn param_map(pairs: &[(&str, Value)]) -> Map<String, Value> {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect()
}
