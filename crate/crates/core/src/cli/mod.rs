//! The `pnk` command line.
//!
//! Every subcommand accepts the same flag set; flags a command does not use
//! are ignored. `--config FILE` reads flat `key = value` lines with the same
//! names as the long flags; flags given on the command line win.
//!
//! Exit codes: 0 success, 1 usage error, 2 verification failure, 3 resource
//! cap abort.

mod campaign;
mod commands;
mod config;

pub use campaign::{evaluate_campaign, run_campaign, CampaignConfig, CampaignSummary, Check, CheckResult};
pub use commands::{cmd_density, cmd_period, cmd_runs, cmd_stream, cmd_table, reference_densities};

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::engines::Caps;
use crate::error::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VERIFY_FAILED: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
    Raw,
}

#[derive(Debug, Parser)]
#[command(
    name = "pnk",
    version,
    about = "Restricted partition function p(n, k) modulo m: periods, certificates, parity analysis",
    args_override_self = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Odd-density table for k = 1..k-max, checked against the published row.
    Table(Opts),
    /// Minimal period of p(n, k) mod m with a certificate.
    Period(Opts),
    /// Exact odd density (nonzero-residue density for m > 2).
    Density(Opts),
    /// Longest run of even values over one period.
    Runs(Opts),
    /// Dump parities (or residues with --mod) of a window.
    Stream(Opts),
    /// Run every enabled check over a range of k and moduli.
    Verify(Opts),
}

#[derive(Debug, Clone, Args)]
pub struct Opts {
    /// Largest part size (lower end of the range for `verify`).
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long)]
    pub k_max: Option<u32>,
    /// Modulus; `verify` accepts a comma-separated list.
    #[arg(long = "mod")]
    pub modulus: Option<String>,
    #[arg(long)]
    pub start: Option<u64>,
    #[arg(long)]
    pub count: Option<u64>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Directory for written artifacts.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Strip timings and paths so repeated runs are byte-identical.
    #[arg(long)]
    pub canonical: bool,
    #[arg(long)]
    pub jobs: Option<usize>,
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// `period`: re-load the written certificate and verify it.
    #[arg(long)]
    pub verify: bool,
    /// `verify`: comma-separated subset of
    /// table,period,density,runs,lemma31,thm12,thm13,residual.
    #[arg(long)]
    pub checks: Option<String>,
    /// `verify`: certificate files to re-check.
    #[arg(long)]
    pub cert: Vec<PathBuf>,
    /// Override the published density row (comma-separated fractions, k = 1..).
    #[arg(long, hide = true)]
    pub reference_table: Option<String>,
    #[arg(long)]
    pub cap_residues: Option<u64>,
    #[arg(long)]
    pub cap_exact: Option<u64>,
}

impl Opts {
    pub fn caps(&self) -> Caps {
        let d = Caps::default();
        Caps {
            max_residues: self.cap_residues.unwrap_or(d.max_residues),
            max_exact: self.cap_exact.unwrap_or(d.max_exact),
        }
    }

    pub fn moduli(&self) -> crate::Result<Vec<u64>> {
        match &self.modulus {
            None => Ok(vec![2]),
            Some(s) => s
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<u64>()
                        .map_err(|_| Error::InvalidParams(format!("bad modulus {t:?}")))
                })
                .collect(),
        }
    }

    pub fn modulus(&self) -> crate::Result<u64> {
        let all = self.moduli()?;
        match all.as_slice() {
            [m] => Ok(*m),
            _ => Err(Error::InvalidParams("expected a single modulus".into())),
        }
    }

    pub fn require_k(&self) -> crate::Result<u32> {
        self.k
            .ok_or_else(|| Error::InvalidParams("--k is required".into()))
    }
}

/// Maps a library error to an exit code, reporting it on `err`.
pub(crate) fn exit_code_for(e: &Error, err: &mut dyn Write) -> i32 {
    // Reader went away (`pnk stream ... | head`); nothing left to report.
    if matches!(e, Error::Io(io) if io.kind() == std::io::ErrorKind::BrokenPipe) {
        return EXIT_OK;
    }
    let _ = writeln!(err, "error: {e}");
    match e {
        Error::ResourceLimit { .. } => EXIT_RESOURCE,
        Error::Internal(_) => EXIT_VERIFY_FAILED,
        _ => EXIT_USAGE,
    }
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let args = match config::merge_config_file(args) {
        Ok(a) => a,
        Err(e) => return exit_code_for(&e, err),
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };

    let result = match &cli.command {
        Command::Table(o) => cmd_table(o, out),
        Command::Period(o) => cmd_period(o, out),
        Command::Density(o) => cmd_density(o, out),
        Command::Runs(o) => cmd_runs(o, out),
        Command::Stream(o) => cmd_stream(o, out),
        Command::Verify(o) => CampaignConfig::from_opts(o).and_then(|c| run_campaign(&c, out)),
    };
    match result {
        Ok(code) => code,
        Err(e) => exit_code_for(&e, err),
    }
}
