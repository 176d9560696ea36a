//! Library side of the `ckbundle` command. [`run`] takes an argument list
//! and a stdin reader and returns what the process should print and its
//! exit status, so the whole command surface is testable in-process.

use std::ffi::OsString;
use std::io::Read;
use std::path::PathBuf;

use ckbundle_core::IntMatrix;
use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

mod parse;
pub mod report;

pub use parse::{parse_matrix, ParseError};
pub use report::{
    CompareReport, ConjSearchReport, DilationReport, InvariantReport, Render, SeSearchReport,
    SnfReport, EXIT_DISTINCT, EXIT_ERROR, EXIT_INCONCLUSIVE, EXIT_OK,
};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{source_name}: {error}")]
    Parse {
        source_name: String,
        error: ParseError,
    },
    #[error("{path}: {error}")]
    Io { path: String, error: std::io::Error },
    #[error(transparent)]
    Core(#[from] ckbundle_core::Error),
    #[error("{0}")]
    Usage(String),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    #[value(alias = "json-like")]
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "ckbundle",
    version,
    about = "Exact invariants of torus bundles and Cuntz-Krieger algebras"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

/// One matrix, from `--input`, a positional path, or stdin.
#[derive(Debug, Args)]
pub struct Single {
    /// Matrix file, or `-` for stdin.
    #[arg(long, value_name = "FILE|-", conflicts_with = "file")]
    pub input: Option<PathBuf>,
    #[arg(value_name = "FILE")]
    pub file: Option<PathBuf>,
}

/// Two matrix files; at most one may be `-`.
#[derive(Debug, Args)]
pub struct Pair {
    #[arg(value_name = "A")]
    pub a: PathBuf,
    #[arg(value_name = "B")]
    pub b: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Report K-theory, Bowen-Franks, homology and Alexander polynomial.
    Invariants(Single),
    /// Decide whether two torus bundles are homeomorphic.
    /// Exit status: 0 homeomorphic, 1 distinct, 2 inconclusive.
    Compare {
        #[command(flatten)]
        pair: Pair,
        /// Conjugacy search depth, in elementary generators.
        #[arg(long, default_value_t = 4)]
        depth: usize,
    },
    /// Smith normal form `U A V = D`.
    Snf(Single),
    /// Bounded search for a shift equivalence between nonnegative matrices.
    /// Exit status: 0 found, 1 ruled out by an invariant, 2 inconclusive.
    SeSearch {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, default_value_t = 3)]
        max_lag: u64,
        #[arg(long, default_value_t = 6)]
        entry_bound: u64,
    },
    /// Bounded search for `U` in `GL_n(Z)` with `U A U^-1 = B`.
    /// Exit status: 0 found, 1 ruled out by an invariant, 2 inconclusive.
    ConjSearch {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, default_value_t = 4)]
        depth: usize,
    },
    /// Edge dilation of a nonnegative matrix to a 0/1 matrix.
    Dilate(Single),
}

/// What one invocation prints, and its exit status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

struct Inputs<'a> {
    stdin: &'a mut dyn Read,
    stdin_used: bool,
}

impl Inputs<'_> {
    fn load(&mut self, path: Option<&PathBuf>) -> Result<IntMatrix, CliError> {
        let (name, text) = match path {
            Some(p) if p.as_os_str() != "-" => {
                let name = p.display().to_string();
                let text = std::fs::read_to_string(p).map_err(|error| CliError::Io {
                    path: name.clone(),
                    error,
                })?;
                (name, text)
            }
            _ => {
                if self.stdin_used {
                    return Err(CliError::Usage(
                        "stdin can supply only one matrix".to_string(),
                    ));
                }
                self.stdin_used = true;
                let mut text = String::new();
                self.stdin
                    .read_to_string(&mut text)
                    .map_err(|error| CliError::Io {
                        path: "<stdin>".to_string(),
                        error,
                    })?;
                ("<stdin>".to_string(), text)
            }
        };
        parse_matrix(&text).map_err(|error| CliError::Parse {
            source_name: name,
            error,
        })
    }

    fn single(&mut self, s: &Single) -> Result<IntMatrix, CliError> {
        self.load(s.input.as_ref().or(s.file.as_ref()))
    }

    fn pair(&mut self, p: &Pair) -> Result<(IntMatrix, IntMatrix), CliError> {
        Ok((self.load(Some(&p.a))?, self.load(Some(&p.b))?))
    }
}

fn emit<R: Render>(report: &R, format: Format, warnings: &[String], code: i32) -> Output {
    let stdout = match format {
        Format::Text => report.text(),
        Format::Json => report.json(),
    };
    let stderr = warnings.iter().map(|w| format!("warning: {w}\n")).collect();
    Output {
        stdout,
        stderr,
        code,
    }
}

fn execute(cli: &Cli, stdin: &mut dyn Read) -> Result<Output, CliError> {
    let mut inputs = Inputs {
        stdin,
        stdin_used: false,
    };
    let f = cli.format;
    Ok(match &cli.command {
        Command::Invariants(s) => {
            let r = InvariantReport::new(&inputs.single(s)?)?;
            emit(&r, f, &r.warnings, EXIT_OK)
        }
        Command::Compare { pair, depth } => {
            let (a, b) = inputs.pair(pair)?;
            let r = CompareReport::new(&a, &b, *depth)?;
            emit(&r, f, &r.warnings, r.exit_code())
        }
        Command::Snf(s) => {
            let r = SnfReport::new(&inputs.single(s)?);
            emit(&r, f, &r.warnings, EXIT_OK)
        }
        Command::SeSearch {
            pair,
            max_lag,
            entry_bound,
        } => {
            let (a, b) = inputs.pair(pair)?;
            let r = SeSearchReport::new(&a, &b, *max_lag, *entry_bound)?;
            emit(&r, f, &r.warnings, r.exit_code())
        }
        Command::ConjSearch { pair, depth } => {
            let (a, b) = inputs.pair(pair)?;
            let r = ConjSearchReport::new(&a, &b, *depth)?;
            emit(&r, f, &r.warnings, r.exit_code())
        }
        Command::Dilate(s) => emit(&DilationReport::new(&inputs.single(s)?)?, f, &[], EXIT_OK),
    })
}

/// Parses `args` (including the program name) and runs the command.
/// Usage and validation errors exit with [`EXIT_ERROR`], which no command
/// uses for a result.
pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                Output {
                    stdout: String::new(),
                    stderr: rendered,
                    code: EXIT_ERROR,
                }
            } else {
                Output {
                    stdout: rendered,
                    stderr: String::new(),
                    code: EXIT_OK,
                }
            };
        }
    };
    execute(&cli, stdin).unwrap_or_else(|e| Output {
        stdout: String::new(),
        stderr: format!("error: {e}\n"),
        code: EXIT_ERROR,
    })
}
