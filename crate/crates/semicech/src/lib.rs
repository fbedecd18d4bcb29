//! Command-line front end for `semicech-core`: JSON formats, run reports and
//! the commands behind the `semicech` binary.

pub mod commands;
pub mod formats;
pub mod report;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::report::{digest_inputs, RunReport};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Human,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "semicech", version, about = "Čech cohomology with paired differentials over semirings")]
pub struct Cli {
    #[command(flatten)]
    pub opts: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Debug, Args)]
pub struct GlobalOpts {
    /// Semiring tag: qmax, zmax, nat, boolean, chain3, boolean2, z<k>, nat<cap>.
    #[arg(long, global = true)]
    pub semiring: Option<String>,
    /// Dimension of projective space.
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// A degree `d` or an inclusive range `a..b`.
    #[arg(long, global = true)]
    pub degree: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    pub format: Format,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Bound on exhaustive enumerations.
    #[arg(long, global = true, default_value_t = 1 << 20)]
    pub bound: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Cohomology of a finite complex, of sheaf data on a cover, or of O on ℙⁿ.
    Cohomology {
        #[arg(long, conflicts_with_all = ["cover", "symbolic"])]
        complex: Option<PathBuf>,
        #[arg(long, conflicts_with = "symbolic")]
        cover: Option<PathBuf>,
        /// Structure sheaf of ℙⁿ on the standard cover.
        #[arg(long)]
        symbolic: bool,
    },
    /// Classify a unit cocycle on ℙⁿ, or tabulate Pic(ℙⁿ) ≅ ℤ.
    Picard {
        #[arg(long)]
        cocycle: Option<PathBuf>,
    },
    #[command(subcommand)]
    Affine(AffineCommand),
    #[command(subcommand)]
    Tensor(TensorCommand),
    #[command(subcommand)]
    Check(CheckCommand),
}

#[derive(Debug, Subcommand)]
pub enum AffineCommand {
    /// Prime ideals of a finite semiring.
    Primes {
        #[arg(long)]
        table: Option<PathBuf>,
    },
    /// Decide whether a family generates the unit ideal of a monomial localization.
    Cover {
        #[arg(long)]
        input: PathBuf,
    },
    /// Contract a generated unit coboundary through a full chart.
    Contract {
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
pub enum TensorCommand {
    /// The cancellation quotient that collapses idempotent modules.
    Golan {
        #[arg(long)]
        module: Option<PathBuf>,
    },
    /// The tensor product as a quotient of the free module on pairs.
    Pr {
        #[arg(long)]
        left: Option<PathBuf>,
        #[arg(long)]
        right: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum CheckCommand {
    /// Verify the chain identity of a finite complex in every degree.
    Complex {
        #[arg(long)]
        complex: PathBuf,
    },
}

impl Command {
    fn input_paths(&self) -> Vec<&PathBuf> {
        let v: Vec<Option<&PathBuf>> = match self {
            Command::Cohomology { complex, cover, .. } => vec![complex.as_ref(), cover.as_ref()],
            Command::Picard { cocycle } => vec![cocycle.as_ref()],
            Command::Affine(AffineCommand::Primes { table }) => vec![table.as_ref()],
            Command::Affine(AffineCommand::Cover { input } | AffineCommand::Contract { input }) => vec![Some(input)],
            Command::Tensor(TensorCommand::Golan { module }) => vec![module.as_ref()],
            Command::Tensor(TensorCommand::Pr { left, right }) => vec![left.as_ref(), right.as_ref()],
            Command::Check(CheckCommand::Complex { complex }) => vec![Some(complex)],
        };
        v.into_iter().flatten().collect()
    }
}

/// Outcome of a run: the rendered report (if any), the text for standard
/// error, and the exit code.
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

/// Reads inputs, runs the command and renders the report.
pub fn run(cli: &Cli, argv: &[String]) -> Outcome {
    let mut files = Vec::new();
    for path in cli.command.input_paths() {
        match std::fs::read(path) {
            Ok(bytes) => files.push((path.clone(), bytes)),
            Err(e) => {
                return Outcome {
                    stdout: String::new(),
                    stderr: format!("error: cannot read {}: {e}\n", path.display()),
                    code: EXIT_INPUT,
                }
            }
        }
    }
    let digest = digest_inputs(argv, files.iter().map(|(_, b)| b.as_slice()));
    let mut report = RunReport::new(argv.to_vec(), digest);
    let inputs = commands::Inputs::new(files);
    match commands::dispatch(&cli.opts, &cli.command, &inputs, &mut report) {
        Ok(()) => {}
        Err(commands::Failure::Input(msg)) => {
            return Outcome {
                stdout: String::new(),
                stderr: format!("error: {msg}\n"),
                code: EXIT_INPUT,
            }
        }
        Err(commands::Failure::Math(msg)) => {
            report.check("computation", false, msg);
        }
    }
    report.seal();
    let stdout = match cli.opts.format {
        Format::Human => report.to_human(),
        Format::Json => report.to_json(),
    };
    let code = if report.passed() { EXIT_OK } else { EXIT_CHECK_FAILED };
    Outcome {
        stdout,
        stderr: String::new(),
        code,
    }
}
