//! Command line front end: `classify`, `minimize`, `scan`, `verify`.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 bad input (parse, closure, grid,
//! schema, checksum), 3 not coercive, 4 descent did not converge, 5 a verified
//! inequality failed.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
pub mod config;
pub mod orbit;

pub use orbit::{trajectory_csv, Orbit, OrbitPayload, TRAJECTORY_HEADER};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NOT_COERCIVE: i32 = 3;
pub const EXIT_NOT_CONVERGED: i32 = 4;
pub const EXIT_VERIFY_FAILED: i32 = 5;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] symorb::Error),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("checksum mismatch: stored {stored}, computed {computed}")]
    ChecksumMismatch { stored: String, computed: String },
    #[error("{0}")]
    Input(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("descent stopped after {iterations} iterations with gradient norm {gradient_norm:e}")]
    NotConverged { iterations: usize, gradient_norm: f64 },
    #[error("{0} verification rows failed")]
    VerifyFailed(usize),
}

impl CliError {
    pub fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io { path: path.to_path_buf(), source }
    }

    pub fn exit_code(&self) -> i32 {
        use symorb::Error as E;
        match self {
            CliError::Core(E::NotCoercive(_)) => EXIT_NOT_COERCIVE,
            CliError::Core(E::MaxIterations { .. }) | CliError::NotConverged { .. } => EXIT_NOT_CONVERGED,
            CliError::Core(_) | CliError::Schema(_) | CliError::ChecksumMismatch { .. } | CliError::Input(_) => EXIT_INPUT,
            CliError::Io { .. } => EXIT_IO,
            CliError::VerifyFailed(_) => EXIT_VERIFY_FAILED,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "symorb", version, about = "Symmetric periodic orbits of the planar three-body problem")]
pub struct Cli {
    /// key = value file; keys are flag names without dashes, flags on the command line win
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Classify a symmetry group, or print the catalog table
    #[command(args_override_self = true)]
    Classify(ClassifyArgs),
    /// Minimize the action over equivariant loops
    #[command(args_override_self = true)]
    Minimize(MinimizeArgs),
    /// Action levels of closed-form test paths along an omega grid
    #[command(args_override_self = true)]
    Scan(ScanArgs),
    /// Run the collision-variation inequality suite
    #[command(args_override_self = true)]
    Verify(VerifyArgs),
}

#[derive(Args, Debug, Clone)]
pub struct GroupArgs {
    /// Catalog name
    #[arg(short = 'g', long, conflicts_with = "group_file")]
    pub group: Option<String>,
    /// One generator per line: `tau=rot 1/3 rho=ref 0 sigma=(12)`
    #[arg(long)]
    pub group_file: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Kv,
    Csv,
}

#[derive(Args, Debug)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub group: GroupArgs,
    /// All ten trivial-core catalog groups as CSV
    #[arg(long)]
    pub table: bool,
    #[arg(long, default_value = "1,1,1")]
    pub masses: String,
    #[arg(long, value_enum, default_value = "kv")]
    pub format: ReportFormat,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct MinimizeArgs {
    #[command(flatten)]
    pub group: GroupArgs,
    #[arg(long, default_value = "1,1,1")]
    pub masses: String,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub omega: f64,
    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
    /// Highest Fourier mode N
    #[arg(long, default_value_t = 32)]
    pub modes: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value = "orbit.json")]
    pub out: PathBuf,
    /// Also write the sampled trajectory as CSV
    #[arg(long)]
    pub trajectory: Option<PathBuf>,
    #[arg(long, default_value_t = 512)]
    pub samples: usize,
    #[arg(long)]
    pub tol_grad: Option<f64>,
    #[arg(long)]
    pub quad_points: Option<usize>,
    #[arg(long)]
    pub max_iter: Option<usize>,
    #[arg(long)]
    pub restarts: Option<usize>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ScanSymmetry {
    Line,
    Choreo21,
}

#[derive(Args, Debug)]
pub struct ScanArgs {
    #[arg(long, value_enum)]
    pub symmetry: ScanSymmetry,
    /// `start:stop:step`, a comma list, or one value
    #[arg(long, allow_hyphen_values = true)]
    pub omega: String,
    /// Add a descent branch at every grid point
    #[arg(long)]
    pub with_minimizer: bool,
    #[arg(long, default_value_t = 24)]
    pub modes: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub tol_grad: Option<f64>,
    #[arg(long)]
    pub quad_points: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Directory for the per-check CSV files
    #[arg(long, default_value = "verify")]
    pub out: PathBuf,
    /// Extra exponent added to every alpha sweep (repeatable)
    #[arg(long)]
    pub alpha: Vec<f64>,
    /// Flip the sign of one row to exercise the failure path
    #[arg(long, hide = true)]
    pub inject_failure: bool,
}

/// Parse, dispatch, print errors, and return the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let args = match config::merge_config(args) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return e.exit_code();
        }
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match commands::dispatch(cli.command, &mut out) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

/// Write `text` to `path`, or to `out` when no path is given.
pub(crate) fn emit(path: Option<&Path>, text: &str, out: &mut dyn Write) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::io(p, e)),
        None => out.write_all(text.as_bytes()).map_err(|e| CliError::io(Path::new("<stdout>"), e)),
    }
}
