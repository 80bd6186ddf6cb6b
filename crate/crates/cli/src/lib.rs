//! `su2w`: figure tables, per-state reports and a self-check for the
//! `su2w-core` nonclassicality toolkit.

pub mod check;
pub mod commands;
pub mod format;
pub mod state;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use su2w_core::SpinJ;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_FAILURE: i32 = 2;

/// Largest `j` accepted by commands that build `(2j+1)`-dimensional matrices.
pub const MAX_MATRIX_TWICE_J: u32 = 400;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Core(#[from] su2w_core::Error),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use su2w_core::Error as E;
        match self {
            CliError::Invalid(_) => EXIT_INVALID,
            CliError::Core(E::Internal(_) | E::NegativeBeyondRoundoff { .. }) => EXIT_FAILURE,
            CliError::Core(_) => EXIT_INVALID,
            CliError::Io(_) | CliError::Failed(_) => EXIT_FAILURE,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "su2w", version, about = "Nonclassicality tests for spin-j states")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Phase-averaged equatorial coherent state: j₃ statistics vs the classical measurement bound.
    Fig1(FigArgs),
    /// Classical state bound next to the quadrature-derived bound.
    Fig2(PlainArgs),
    /// Cat state: j₁ statistics vs the classical state bound.
    Fig3(FigArgs),
    /// Intelligent state: j₁ statistics vs the classical state bound.
    Fig4(Fig4Args),
    /// Intelligent state: p(m = 0) across a grid of η.
    Fig5(Fig5Args),
    /// Classical state and quadrature bounds with their rescaled large-j form.
    Bound(PlainArgs),
    /// Bound comparison and squeezing verdict for a user-supplied state.
    Report(ReportArgs),
    /// Run the structural invariant suite; exits 2 on any failure.
    Check(CheckArgs),
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TolArg {
    /// Margin a probability must exceed its bound by to count as a violation.
    #[arg(long, env = "SU2W_TOL", default_value_t = su2w_core::bounds::DEFAULT_TOL_REPORT)]
    pub tol: f64,
}

/// `j` as a decimal (`10`, `2.5`) or as `N/2`.
#[derive(Debug, Args)]
pub struct SpinArg {
    #[arg(long, default_value = "10")]
    pub j: SpinJ,
}

#[derive(Debug, Args)]
pub struct PlainArgs {
    #[command(flatten)]
    pub spin: SpinArg,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct FigArgs {
    #[command(flatten)]
    pub spin: SpinArg,
    #[command(flatten)]
    pub tol: TolArg,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct Fig4Args {
    #[command(flatten)]
    pub spin: SpinArg,
    #[arg(long, default_value_t = 0.5)]
    pub eta: f64,
    #[command(flatten)]
    pub tol: TolArg,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct Fig5Args {
    #[command(flatten)]
    pub spin: SpinArg,
    /// Single η instead of the default grid 0.05, 0.10, …, 1.00.
    #[arg(long, conflicts_with = "eta_grid")]
    pub eta: Option<f64>,
    /// Comma-separated η values; emitted in ascending order.
    #[arg(long, value_delimiter = ',')]
    pub eta_grid: Option<Vec<f64>>,
    #[command(flatten)]
    pub tol: TolArg,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    #[command(flatten)]
    pub spin: SpinArg,
    /// Inline JSON: a gallery family or an explicit density matrix.
    #[arg(long)]
    pub state: String,
    /// Measured component `x,y,z`; normalized before use.
    #[arg(long, default_value = "0,0,1", value_delimiter = ',', allow_negative_numbers = true)]
    pub direction: Vec<f64>,
    /// η for the intelligent family when the JSON omits it.
    #[arg(long, default_value_t = 0.5)]
    pub eta: f64,
    /// |α|² for the superposition family when the JSON omits it.
    #[arg(long, default_value_t = 0.5)]
    pub alpha_sq: f64,
    #[command(flatten)]
    pub tol: TolArg,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    /// Seed for the randomized sections.
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Text to emit and whether the command succeeded.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub text: String,
    pub ok: bool,
}

/// Runs a parsed command and returns its output without writing it.
pub fn execute(command: &Command) -> Result<Outcome, CliError> {
    let done = |text: String| Ok(Outcome { text, ok: true });
    match command {
        Command::Fig1(a) => done(commands::render(
            &commands::fig1(a.spin.j, tol(&a.tol)?)?,
            a.output.format,
        )),
        Command::Fig2(a) => done(commands::render(&commands::fig2(a.spin.j)?, a.output.format)),
        Command::Fig3(a) => done(commands::render(
            &commands::fig3(a.spin.j, tol(&a.tol)?)?,
            a.output.format,
        )),
        Command::Fig4(a) => done(commands::render(
            &commands::fig4(a.spin.j, a.eta, tol(&a.tol)?)?,
            a.output.format,
        )),
        Command::Fig5(a) => {
            let grid = match (&a.eta, &a.eta_grid) {
                (Some(eta), _) => vec![*eta],
                (None, Some(g)) => g.clone(),
                (None, None) => commands::default_eta_grid(),
            };
            done(commands::render(
                &commands::fig5(a.spin.j, &grid, tol(&a.tol)?)?,
                a.output.format,
            ))
        }
        Command::Bound(a) => done(commands::render(&commands::bound_table(a.spin.j)?, a.output.format)),
        Command::Report(a) => {
            let defaults = state::FamilyDefaults {
                eta: a.eta,
                alpha_sq: a.alpha_sq,
            };
            done(commands::report(
                a.spin.j,
                &a.state,
                &a.direction,
                defaults,
                tol(&a.tol)?,
                a.output.format,
            )?)
        }
        Command::Check(a) => {
            let (text, ok) = check::run_checks(a.seed);
            Ok(Outcome { text, ok })
        }
    }
}

pub fn output_path(command: &Command) -> Option<&PathBuf> {
    match command {
        Command::Fig1(a) | Command::Fig3(a) => a.output.out.as_ref(),
        Command::Fig2(a) | Command::Bound(a) => a.output.out.as_ref(),
        Command::Fig4(a) => a.output.out.as_ref(),
        Command::Fig5(a) => a.output.out.as_ref(),
        Command::Report(a) => a.output.out.as_ref(),
        Command::Check(a) => a.out.as_ref(),
    }
}

fn tol(arg: &TolArg) -> Result<f64, CliError> {
    if arg.tol.is_finite() && arg.tol >= 0.0 {
        Ok(arg.tol)
    } else {
        Err(CliError::Invalid(format!(
            "--tol must be a finite non-negative number, got {}",
            arg.tol
        )))
    }
}
