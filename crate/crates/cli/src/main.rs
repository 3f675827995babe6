//! `planarop`: polynomials, zeros, curves, asymptotic checks and special
//! functions from the command line.

mod commands;
mod config;
mod output;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use planarop::ErrorKind;
use thiserror::Error;

use config::{Overrides, RunConfig, PREC_ENV};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] planarop::Error),
    #[error("{0}")]
    Usage(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) => match e.kind() {
                ErrorKind::Domain => 2,
                ErrorKind::Precision => 3,
                ErrorKind::NonConvergence => 4,
                ErrorKind::Io => 1,
            },
            CliError::Usage(_) => 2,
            CliError::Io(_) => 1,
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "planarop",
    version,
    about = "Planar orthogonal polynomials with a point charge"
)]
#[command(allow_negative_numbers = true)]
struct Cli {
    /// key=value file; flags win over it
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(flatten)]
    flags: Overrides,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Coefficients of P_n (CSV) and the recurrence trace
    Poly,
    /// Zeros of P_n (CSV) with an optional SVG overlay
    Zeros,
    /// Limiting curves (CSV)
    Curves {
        #[arg(value_enum)]
        kind: CurveKind,
    },
    /// Strong-asymptotics check at one point (JSON)
    Validate,
    /// Special-function values (JSON)
    Specialfn {
        #[arg(value_enum)]
        func: SpecialFn,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum CurveKind {
    Skeleton,
    Eta,
    Attraction,
    /// 𝒮_γ together with ∂K_γ
    Gamma,
    /// distances of the γ family to its limit, one row per γ
    Hausdorff,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum SpecialFn {
    /// parabolic cylinder integral
    #[value(name = "D")]
    D,
    Fhat,
    Ck,
}

fn run(cli: Cli) -> Result<(), CliError> {
    let file = match &cli.config {
        Some(p) => Overrides::from_config_file(p)?,
        None => Overrides::default(),
    };
    let env_bits = std::env::var(PREC_ENV).ok();
    let cfg = RunConfig::resolve(cli.flags.or(file), env_bits.as_deref())?;
    log::debug!("{cfg:?}");
    match cli.cmd {
        Cmd::Poly => commands::poly(&cfg),
        Cmd::Zeros => commands::zeros(&cfg),
        Cmd::Curves { kind } => commands::curves(&cfg, kind),
        Cmd::Validate => commands::validate(&cfg),
        Cmd::Specialfn { func } => commands::specialfn(&cfg, func),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("planarop: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
