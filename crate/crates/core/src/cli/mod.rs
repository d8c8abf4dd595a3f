//! The `deligne` command line: subcommands build a [`Report`] that is
//! printed as JSON or as a fixed-width table.
//!
//! Exit codes: 0 when every check passes, 1 when a mathematical check fails
//! (the report carries a witness), 2 for usage and input errors.

mod cat;
mod daha;
pub mod input;
pub mod report;
mod wreath;

use std::ffi::OsString;

use clap::{Parser, Subcommand, ValueEnum};

pub use report::{Check, Report};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("input: {0}")]
    Input(String),
}

macro_rules! input_error {
    ($($t:ty),*) => {
        $(impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Input(e.to_string())
            }
        })*
    };
}

input_error!(
    crate::delcat::CatError,
    crate::daha::DahaError,
    crate::wreath::WreathError,
    crate::oracle::OracleError,
    crate::exactalg::ExactError,
    crate::recollement::RecError
);

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "deligne", version, about = "Exact computations in Rep(S_t) and its relatives")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "json", global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Debug, Subcommand)]
pub enum Cmd {
    /// Recollements (diagram bases).
    #[command(subcommand)]
    Rec(cat::RecCmd),
    /// Morphisms, Gram determinants and Jucys-Murphy maps in Rep(S_T).
    #[command(subcommand)]
    Cat(cat::CatCmd),
    /// Brute-force checks in honest permutation modules.
    #[command(subcommand)]
    Oracle(cat::OracleCmd),
    /// Objects with a y-map (degenerate affine Hecke algebra modules).
    #[command(subcommand)]
    Daha(daha::DahaCmd),
    /// Wreath objects over a finite-dimensional algebra.
    #[command(subcommand)]
    Wreath(wreath::WreathCmd),
    /// Knop's category for a finite group and the comparison functor.
    #[command(subcommand)]
    Knop(wreath::KnopCmd),
}

/// What a run prints and returns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn execute(cmd: &Cmd) -> Result<Report, CliError> {
    match cmd {
        Cmd::Rec(c) => cat::run_rec(c),
        Cmd::Cat(c) => cat::run_cat(c),
        Cmd::Oracle(c) => cat::run_oracle(c),
        Cmd::Daha(c) => daha::run(c),
        Cmd::Wreath(c) => wreath::run_wreath(c),
        Cmd::Knop(c) => wreath::run_knop(c),
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match execute(&cli.cmd) {
        Ok(report) => {
            let stdout = match cli.format {
                Format::Json => {
                    serde_json::to_string_pretty(&report.to_json()).expect("report serializes") + "\n"
                }
                Format::Text => report.to_text(),
            };
            Outcome { code: if report.passed() { 0 } else { 1 }, stdout, stderr: String::new() }
        }
        Err(e) => Outcome { code: 2, stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}
