//! Command-line front end: argument handling, command dispatch and the JSON,
//! text and SVG renderings of the results.

pub mod parse;
pub mod report;
pub mod svg;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use strebel_core::{ComplexValue, ErrorKind, GridPoint, RationalSlope, Tolerances};

use parse::Scale;

#[derive(Debug, Parser)]
#[command(name = "strebel", version, about = "Jenkins-Strebel differentials on the four-punctured sphere")]
pub struct Cli {
    /// Base numerical tolerance; every tolerance scales with it.
    #[arg(long, global = true, default_value = "1e-10", value_parser = parse::positive)]
    pub tolerance: f64,
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Svg,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve lambda(tau) = mu.
    LambdaInv {
        #[arg(long, allow_hyphen_values = true, value_parser = parse::complex)]
        mu: ComplexValue,
    },
    /// Branch values of the Weierstrass function, optionally wp(w) and wp'(w).
    Elliptic {
        #[arg(long, allow_hyphen_values = true, value_parser = parse::complex)]
        tau: ComplexValue,
        #[arg(long, allow_hyphen_values = true, value_parser = parse::complex)]
        w: Option<ComplexValue>,
    },
    /// Coefficient a of the Jenkins-Strebel differential a dz^2 / (z (z-1)(z-mu)).
    Coeff {
        #[arg(long, allow_hyphen_values = true, value_parser = parse::complex)]
        mu: ComplexValue,
        #[arg(long, allow_hyphen_values = true, value_parser = parse::slope)]
        q: RationalSlope,
        /// Positive scale, or `unit-length` for closed trajectories of length one.
        #[arg(long, default_value = "unit-length", value_parser = parse::scale)]
        k: Scale,
    },
    /// Free-group word and curve class of the slope q.
    Word {
        #[arg(long, allow_hyphen_values = true, value_parser = parse::slope)]
        q: RationalSlope,
        /// Start point `s,t` in a white tile, e.g. `1/4,1/5`.
        #[arg(long, allow_hyphen_values = true, value_parser = parse::grid_point)]
        start: Option<GridPoint>,
        /// Traverse the line backwards.
        #[arg(long)]
        reverse: bool,
    },
    /// Separation class of a slope, or of a coefficient after recovering its slope.
    Classify {
        #[arg(long, allow_hyphen_values = true, value_parser = parse::slope)]
        q: Option<RationalSlope>,
        #[arg(long, allow_hyphen_values = true, value_parser = parse::complex, requires = "a")]
        mu: Option<ComplexValue>,
        #[arg(long, allow_hyphen_values = true, value_parser = parse::complex, requires = "mu")]
        a: Option<ComplexValue>,
        #[arg(long, default_value_t = 64)]
        max_den: u64,
    },
    /// Sample a closed trajectory and the critical graph.
    Trace {
        #[arg(long, allow_hyphen_values = true, value_parser = parse::complex)]
        mu: ComplexValue,
        #[arg(long, allow_hyphen_values = true, value_parser = parse::slope)]
        q: RationalSlope,
        #[arg(long, default_value_t = 512)]
        samples: usize,
        #[arg(long, allow_hyphen_values = true, value_parser = parse::grid_point)]
        start: Option<GridPoint>,
    },
    /// Numerical consistency checks for one (mu, q).
    Check {
        #[arg(long, allow_hyphen_values = true, value_parser = parse::complex)]
        mu: ComplexValue,
        #[arg(long, allow_hyphen_values = true, value_parser = parse::slope)]
        q: RationalSlope,
        #[arg(long, default_value_t = 256)]
        samples: usize,
    },
    /// Table of classes for all reduced slopes with |m|, n <= max-den.
    Enumerate {
        #[arg(long)]
        max_den: u32,
    },
}

/// Options shared by all commands.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub tolerances: Tolerances,
    pub format: Format,
    pub output: Option<PathBuf>,
}

impl RunConfig {
    pub fn from_cli(cli: &Cli) -> RunConfig {
        RunConfig {
            tolerances: Tolerances::from_base(cli.tolerance),
            format: cli.format,
            output: cli.output.clone(),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] strebel_core::Error),
    #[error("{0}")]
    Usage(String),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
    #[error("cannot serialize output: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) => match e.kind() {
                ErrorKind::Domain => 2,
                ErrorKind::Numerical => 3,
                ErrorKind::Internal => 4,
            },
            CliError::Usage(_) | CliError::Io(_) => 2,
            CliError::Json(_) => 4,
        }
    }
}

/// Rendered result and the exit code to report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub body: String,
    pub exit_code: i32,
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let config = RunConfig::from_cli(cli);
    report::dispatch(&cli.command, &config)
}

/// Parses `args` (program name first) and runs the command.
pub fn run_args<I, T>(args: I) -> Result<Outcome, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(|e| CliError::Usage(e.to_string()))?;
    run(&cli)
}
