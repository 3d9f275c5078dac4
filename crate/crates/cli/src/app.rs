use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::config::{parse_number_list, parse_params, parse_sweep, read_source};
use crate::error::CliError;
use crate::report::run_report;
use crate::sweep::{run_sweep, Output, SweepSpec, DEFAULT_R};
use crate::validate::run_validate;

#[derive(Debug, Parser)]
#[command(name = "sideband", version, about = "Sideband entanglement via radiation pressure on a vibrating mirror")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Derive couplings from laboratory parameters.
    Params(ParamsArgs),
    /// Tabulate marker, EPR variances and coefficients over scaled time.
    Sweep(SweepArgs),
    /// Sweep restricted to the EPR variances.
    Epr(SweepArgs),
    /// Cross-check closed forms against propagated second moments.
    Validate(ValidateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Destination file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Args)]
pub struct ParamsArgs {
    /// Parameter file; `-` or absent reads stdin.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct GridArgs {
    #[arg(long)]
    pub points: Option<usize>,
    #[arg(long, allow_negative_numbers = true)]
    pub r: Option<f64>,
    /// Comma-separated occupations.
    #[arg(long, allow_negative_numbers = true)]
    pub nbar: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    pub tau_min: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub tau_max: Option<f64>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Sweep settings file; `-` reads stdin.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[command(flatten)]
    pub grid: GridArgs,
    /// Comma-separated subset of T_raw, T_norm, delta_minus, delta_plus, coefficients.
    #[arg(long)]
    pub outputs: Option<String>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

/// Exit status of a successful command and an optional note for stderr.
#[derive(Debug)]
pub struct Outcome {
    pub status: i32,
    pub message: Option<String>,
}

pub fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Params(a) => {
            let text = read_source(a.config.as_deref())?;
            let report = run_report(&parse_params(&text)?)?;
            let body = match a.output.format.unwrap_or(Format::Json) {
                Format::Json => report.to_json(),
                Format::Csv => report.to_csv(),
            };
            emit(a.output.out.as_deref(), &body)?;
            Ok(Outcome {
                status: 0,
                message: (!report.warnings.is_empty()).then(|| format!("warning: {}", report.warnings.join("; "))),
            })
        }
        Command::Sweep(a) => sweep(a, SweepSpec::default()),
        Command::Epr(a) => sweep(
            a,
            SweepSpec {
                outputs: vec![Output::DeltaMinus, Output::DeltaPlus],
                ..SweepSpec::default()
            },
        ),
        Command::Validate(a) => {
            let g = &a.grid;
            let nbar = match &g.nbar {
                Some(s) => parse_list_flag(s)?,
                None => vec![0.0, 10.0, 1e5],
            };
            let report = run_validate(
                g.r.unwrap_or(DEFAULT_R),
                &nbar,
                g.points.unwrap_or(200),
                g.tau_min.unwrap_or(0.0),
                g.tau_max.unwrap_or(2.0 * std::f64::consts::PI),
            )?;
            let body = match a.output.format.unwrap_or(Format::Json) {
                Format::Json => report.to_json(),
                Format::Csv => report.to_csv(),
            };
            emit(a.output.out.as_deref(), &body)?;
            match report.breach_message() {
                Some(m) => Err(CliError::Validation(m)),
                None => Ok(Outcome { status: 0, message: None }),
            }
        }
    }
}

fn parse_list_flag(s: &str) -> Result<Vec<f64>, CliError> {
    parse_number_list(s).map_err(|m| CliError::Config(format!("--nbar: {m}")))
}

fn sweep(a: SweepArgs, base: SweepSpec) -> Result<Outcome, CliError> {
    let mut spec = match &a.config {
        Some(p) => parse_sweep(&read_source(Some(p))?, base)?,
        None => base,
    };
    let g = &a.grid;
    if let Some(v) = g.points {
        spec.points = v;
    }
    if let Some(v) = g.r {
        spec.r = v;
    }
    if let Some(v) = g.tau_min {
        spec.tau_min = v;
    }
    if let Some(v) = g.tau_max {
        spec.tau_max = v;
    }
    if let Some(s) = &g.nbar {
        spec.nbar = parse_list_flag(s)?;
    }
    if let Some(s) = &a.outputs {
        spec.outputs = Output::parse_list(s).map_err(|m| CliError::Config(format!("--outputs: {m}")))?;
    }
    let data = run_sweep(&spec)?;
    let body = match a.output.format.unwrap_or(Format::Csv) {
        Format::Csv => data.to_csv(),
        Format::Json => data.to_json(),
    };
    emit(a.output.out.as_deref(), &body)?;
    Ok(Outcome { status: 0, message: None })
}

fn emit(path: Option<&Path>, body: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, body).map_err(|e| CliError::Io(format!("cannot write {}: {e}", p.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(body.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| CliError::Io(format!("cannot write to stdout: {e}")))
        }
    }
}
