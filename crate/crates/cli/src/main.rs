mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use crate::report::Report;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// Workbench for unrolled categories of finite generalized Reedy categories.
///
/// Inputs are text documents of named blocks (`-` reads standard input).
/// HOM_BOUND and LIFT_CAP in the environment override the search bounds.
#[derive(Debug, Parser)]
#[command(name = "unrolling", version)]
pub struct Cli {
    /// Report rendering.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Where to write the produced document (or directory, for `unroll`).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Where to dump the first failing witness as a category file.
    #[arg(long, global = true)]
    pub witness: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate a category: identifiers, identities, composition, laws.
    CheckCat {
        /// Input document; standard input when omitted or `-`.
        #[arg(default_value = "-")]
        input: String,
        #[arg(long)]
        name: Option<String>,
    },
    /// Validate a functor and report its properties.
    CheckFunctor {
        /// Input document; standard input when omitted or `-`.
        #[arg(default_value = "-")]
        input: String,
        #[arg(long)]
        name: Option<String>,
    },
    /// Check Reedy annotations (all in the input, or the named one).
    CheckReedy {
        /// Input document; standard input when omitted or `-`.
        #[arg(default_value = "-")]
        input: String,
        #[arg(long)]
        reedy: Option<String>,
        /// Also require a strict structure with unique factorizations.
        #[arg(long)]
        strict: bool,
        /// Also require a generalized direct structure.
        #[arg(long)]
        direct: bool,
    },
    /// Check the lifting condition of a presentation `c: R_0 → R`.
    CheckLifting {
        /// Input document; standard input when omitted or `-`.
        #[arg(default_value = "-")]
        input: String,
        #[arg(long)]
        presentation: Option<String>,
    },
    /// Build D_R, its Reedy structure and the projection p.
    Unroll {
        /// Input document; standard input when omitted or `-`.
        #[arg(default_value = "-")]
        input: String,
        #[arg(long)]
        presentation: Option<String>,
    },
    /// Check absolute density of a functor (or of p for a presentation).
    CheckDensity {
        /// Input document; standard input when omitted or `-`.
        #[arg(default_value = "-")]
        input: String,
        #[arg(long)]
        functor: Option<String>,
        /// Check p: D_R → R for this presentation instead.
        #[arg(long)]
        presentation: Option<String>,
    },
    /// Check that a Reedy functor is cofibering; `--pi0` checks π_0: p↓p → D_R.
    CheckCofibering {
        /// Input document; standard input when omitted or `-`.
        #[arg(default_value = "-")]
        input: String,
        #[arg(long)]
        functor: Option<String>,
        #[arg(long)]
        source_reedy: Option<String>,
        #[arg(long)]
        target_reedy: Option<String>,
        #[arg(long)]
        pi0: bool,
        #[arg(long)]
        presentation: Option<String>,
    },
    /// Diagrams of categories: fibrancy, factorization, Kan extension.
    Tribe {
        #[command(subcommand)]
        command: TribeCommand,
    },
    /// Generate example inputs.
    Zoo {
        #[command(subcommand)]
        command: ZooCommand,
    },
    /// Run the acceptance suite.
    VerifyPaper {
        /// Run only these criteria.
        #[arg(long)]
        criterion: Vec<usize>,
    },
}

#[derive(Debug, Subcommand)]
pub enum TribeCommand {
    /// Reedy fibrancy over a direct shape, or p-fibrancy over R.
    CheckFibrant {
        /// Input document; standard input when omitted or `-`.
        #[arg(default_value = "-")]
        input: String,
        #[arg(long)]
        diagram: Option<String>,
        #[arg(long)]
        presentation: Option<String>,
    },
    /// Factor a map into a pointwise anodyne map and a (p- or Reedy) fibration.
    Factorize {
        /// Input document; standard input when omitted or `-`.
        #[arg(default_value = "-")]
        input: String,
        #[arg(long)]
        map: Option<String>,
        #[arg(long)]
        presentation: Option<String>,
    },
    /// p^* and p_* of a diagram, with the unit comparison.
    Kan {
        /// Input document; standard input when omitted or `-`.
        #[arg(default_value = "-")]
        input: String,
        #[arg(long)]
        diagram: Option<String>,
        #[arg(long)]
        presentation: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum ZooCommand {
    /// A finite group as a one-object category with R_0 terminal.
    Group { name: String },
    /// Truncated cube category.
    Cube {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        symmetries: bool,
        #[arg(long)]
        degeneracies: bool,
    },
    /// Shipped counterexamples: non-dense, non-cofibering, non-fibrant.
    Fixture { name: String },
}

/// Exit status with a message for the failure modes that are not verdicts.
#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError { code: 2, message: message.into() }
    }

    pub fn internal(message: impl Into<String>) -> Self {
        CliError { code: 3, message: message.into() }
    }
}

impl From<unrolling::Error> for CliError {
    fn from(e: unrolling::Error) -> Self {
        use unrolling::Error as E;
        match e {
            E::Io { .. } | E::Parse { .. } | E::Precondition(_) | E::UnknownObject(_) | E::UnknownArrow(_) => {
                CliError::usage(e.to_string())
            }
            other => CliError::internal(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(out) => {
            let rendered = match cli.format {
                Format::Text => out.report.text(),
                Format::Json => out.report.json(),
            };
            if out.report_to_stderr {
                eprint!("{rendered}");
            } else {
                print!("{rendered}");
            }
            if let Some(doc) = out.document {
                print!("{doc}");
            }
            ExitCode::from(if out.report.passed { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

/// A finished command: the report, plus a document for standard output
/// when no `--out` was given.
pub struct Outcome {
    pub report: Report,
    pub document: Option<String>,
    pub report_to_stderr: bool,
}
