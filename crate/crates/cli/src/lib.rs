//! Batch front end for `ciperiod-core`: a JSON job file plus a subcommand.
//!
//! Exit codes: 0 success, 2 input error, 3 failed mathematical assumption
//! (smoothness guard, independence of the deformed basis), 4 invariant
//! violation, including a failing `verify` run.

pub mod commands;
pub mod config;
pub mod error;
pub mod report;

use clap::{Parser, Subcommand, ValueEnum};
use std::io::Write;
use std::path::{Path, PathBuf};

use ciperiod_core::verify::Fault;

pub use config::{JobConfig, Outputs, Problem};
pub use error::{CliError, ErrorKind};
pub use report::Report;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FaultArg {
    None,
    CorruptK,
}

#[derive(Debug, Parser)]
#[command(
    name = "ciperiod",
    version,
    about = "Exact cohomology and deformation series of complete intersections"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Truncation order, overriding `truncationOrder`.
    #[arg(long, global = true)]
    order: Option<u32>,
    /// Seed for `verify`.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the report here instead of the configured output or stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Load a stored presentation document instead of rebuilding it.
    #[arg(long, global = true)]
    presentation: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = FaultArg::None, hide = true)]
    fault: FaultArg,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Quotient basis by weight, Hodge numbers and background charge.
    Basis { config: PathBuf },
    /// Reduce one element to basis coefficients with a certificate.
    Reduce { config: PathBuf, polynomial: String },
    /// Deformed basis, series coefficients and the D-matrix ladder.
    Deform { config: PathBuf },
    /// Period matrix transported along the D-matrix ladder.
    Transport {
        config: PathBuf,
        /// JSON square matrix; rows index basis elements, columns cycles.
        #[arg(long)]
        omega: PathBuf,
        /// JSON integral base change; identity when absent.
        #[arg(long)]
        base: Option<PathBuf>,
    },
    /// Seeded invariant suites.
    Verify {
        config: PathBuf,
        #[arg(long, default_value_t = 200)]
        iterations: usize,
    },
}

impl Command {
    fn config(&self) -> &Path {
        match self {
            Command::Basis { config }
            | Command::Reduce { config, .. }
            | Command::Deform { config }
            | Command::Transport { config, .. }
            | Command::Verify { config, .. } => config,
        }
    }

    fn configured_output<'a>(&self, o: &'a Outputs) -> Option<&'a PathBuf> {
        match self {
            Command::Basis { .. } => o.basis.as_ref(),
            Command::Reduce { .. } => o.reduce.as_ref(),
            Command::Deform { .. } => o.deform.as_ref(),
            Command::Transport { .. } => o.transport.as_ref(),
            Command::Verify { .. } => o.verify.as_ref(),
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::new(ErrorKind::Io, format!("{}: {e}", path.display())))
}

fn execute(cli: &Cli, stdout: &mut dyn Write) -> Result<Report, CliError> {
    let job = JobConfig::from_json(&commands::read_file(cli.command.config())?)?;
    let mut problem = job.problem()?;
    if let Some(order) = cli.order {
        if order == 0 {
            return Err(CliError::usage("--order must be at least 1"));
        }
        problem.order = order;
    }
    let p = commands::presentation(&problem, cli.presentation.as_deref())?;
    let report = match &cli.command {
        Command::Basis { .. } => {
            if let Some(path) = &job.outputs.presentation {
                write_file(path, &p.to_json())?;
            }
            Report::Basis(commands::basis(&p))
        }
        Command::Reduce { polynomial, .. } => Report::Reduce(commands::reduce(&p, polynomial)?),
        Command::Deform { .. } => Report::Deform(commands::deform(&problem, &p)?),
        Command::Transport { omega, base, .. } => {
            let omega = commands::read_file(omega)?;
            let base = base.as_deref().map(commands::read_file).transpose()?;
            Report::Transport(commands::transport(&problem, &p, &omega, base.as_deref())?)
        }
        Command::Verify { iterations, .. } => {
            let fault = match cli.fault {
                FaultArg::None => Fault::None,
                FaultArg::CorruptK => Fault::CorruptK,
            };
            Report::Verify(commands::verify(&problem, &p, cli.seed, *iterations, fault)?)
        }
    };
    let text = match cli.format {
        Format::Text => report.to_text(),
        Format::Json => report.to_json(),
    };
    match cli.out.as_ref().or_else(|| cli.command.configured_output(&job.outputs)) {
        Some(path) => write_file(path, &text)?,
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| CliError::new(ErrorKind::Io, e.to_string()))?,
    }
    Ok(report)
}

/// Runs one invocation and returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let out: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(out, "{}", e.render());
            return code;
        }
    };
    match execute(&cli, stdout) {
        Ok(report) if report.failed() => 4,
        Ok(_) => 0,
        Err(e) => {
            let _ = match cli.format {
                Format::Json => writeln!(stderr, "{}", serde_json::json!({ "error": e })),
                Format::Text => writeln!(stderr, "error ({}): {e}", e.kind.name()),
            };
            e.exit_code()
        }
    }
}
