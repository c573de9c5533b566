//! `cotriple` — quasi-free models for presented differential graded
//! algebras, with exhaustive checks of the structure they are built on.
//!
//! Reports are plain text on standard output (or `--output`), written
//! deterministically so repeated runs are byte-identical.  Exit code 0
//! means every check passed, 1 means a check failed, and 2 means the
//! input or invocation was invalid.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cotriple_core::presentation::AlgebraPresentation;
use cotriple_core::realization::{build_model, compare_model_coend, verify_resolution, OperadMode};
use cotriple_core::scalar::FieldSpec;
use cotriple_core::{Error, Result};

mod parse;
mod suites;

#[derive(Parser)]
#[command(
    name = "cotriple",
    version,
    about = "Build quasi-free models of presented dg-algebras and verify them degree by degree"
)]
struct Cli {
    /// Write the report to this file instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Replay the defining relations of one structural layer.
    #[command(subcommand)]
    Check(CheckCommand),
    /// Build the quasi-free model and print its generators and differential.
    Resolve(ModelArgs),
    /// Compare model homology against the input, degree by degree.
    Homology(ModelArgs),
    /// Independent cross-checks of the model construction.
    #[command(subcommand)]
    Oracle(OracleCommand),
}

#[derive(Subcommand)]
enum CheckCommand {
    /// Operad relations: boundary, translation, unit, associativity.
    Operad {
        /// Largest composite arity exercised.
        #[arg(long, default_value_t = 4, value_name = "R")]
        max_arity: usize,
        /// Largest total simplicial degree exercised.
        #[arg(long, default_value_t = 3, value_name = "D")]
        max_degree: usize,
    },
    /// Coaction of simplex chains under the operad.
    Coaction {
        /// Largest simplex dimension exercised.
        #[arg(long, default_value_t = 3, value_name = "N")]
        max_dim: usize,
        /// Largest composite arity exercised.
        #[arg(long, default_value_t = 3, value_name = "R")]
        max_arity: usize,
        /// Largest operad degree exercised.
        #[arg(long, default_value_t = 2, value_name = "D")]
        max_degree: usize,
    },
    /// Cosimplicial framing of decorated generators.
    Framing {
        /// Largest simplex dimension exercised.
        #[arg(long, default_value_t = 2, value_name = "N")]
        max_dim: usize,
        /// Largest generator degree exercised.
        #[arg(long, default_value_t = 3, value_name = "D")]
        max_degree: i64,
    },
}

#[derive(Args)]
struct ModelArgs {
    /// Presentation file to read.
    #[arg(long, value_name = "FILE")]
    input: PathBuf,
    /// Operad flavour for the model.
    #[arg(long, value_enum, default_value_t = OperadArg::E)]
    operad: OperadArg,
    /// Truncation window; degrees above it are not represented.
    #[arg(long, value_name = "D")]
    max_degree: i64,
    /// Override the field declared in the input (0 or a prime).
    #[arg(long, value_name = "CHAR")]
    field: Option<u64>,
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Rebuild the model from a finite skeleton by independent means and
    /// compare dimensions and round trips.
    Coend(CoendArgs),
}

#[derive(Args)]
struct CoendArgs {
    /// Presentation file to read.
    #[arg(long, value_name = "FILE")]
    input: PathBuf,
    /// Skeletal dimension of the rebuild.
    #[arg(long, value_name = "N")]
    max_dim: usize,
    /// Truncation window for the comparison.
    #[arg(long, value_name = "D")]
    max_degree: i64,
    /// Override the field declared in the input (0 or a prime).
    #[arg(long, value_name = "CHAR")]
    field: Option<u64>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum OperadArg {
    E,
    EUnitary,
    Com,
}

impl From<OperadArg> for OperadMode {
    fn from(a: OperadArg) -> OperadMode {
        match a {
            OperadArg::E => OperadMode::E,
            OperadArg::EUnitary => OperadMode::EUnitary,
            OperadArg::Com => OperadMode::Com,
        }
    }
}

fn load(input: &PathBuf, field: Option<u64>) -> Result<AlgebraPresentation> {
    let text = fs::read_to_string(input)
        .map_err(|e| Error::Validation(format!("cannot read {}: {e}", input.display())))?;
    let field_override = field.map(FieldSpec::from_characteristic).transpose()?;
    parse::parse_presentation(&text, field_override)
}

/// Runs one subcommand into `out`; `Ok(false)` is a failed check.
fn run(command: &Command, out: &mut String) -> Result<bool> {
    match command {
        Command::Check(check) => {
            let suite = match check {
                CheckCommand::Operad {
                    max_arity,
                    max_degree,
                } => suites::operad_suite(*max_arity, *max_degree),
                CheckCommand::Coaction {
                    max_dim,
                    max_arity,
                    max_degree,
                } => suites::coaction_suite(*max_dim, *max_arity, *max_degree),
                CheckCommand::Framing {
                    max_dim,
                    max_degree,
                } => suites::framing_suite(*max_dim, *max_degree),
            };
            out.push_str(&suite.render());
            Ok(suite.is_ok())
        }
        Command::Resolve(args) => {
            let a = load(&args.input, args.field)?;
            let model = build_model(&a, args.operad.into(), args.max_degree)?;
            out.push_str(&model.dump());
            Ok(true)
        }
        Command::Homology(args) => {
            let a = load(&args.input, args.field)?;
            let report = verify_resolution(&a, args.operad.into(), args.max_degree)?;
            for (d, (model, target)) in &report.rows {
                let verdict = if model == target { "OK" } else { "FAIL" };
                out.push_str(&format!("H_{d} model={model} target={target} {verdict}\n"));
            }
            Ok(report.is_ok())
        }
        Command::Oracle(OracleCommand::Coend(args)) => {
            let a = load(&args.input, args.field)?;
            let cmp = compare_model_coend(&a, args.max_dim, args.max_degree)?;
            out.push_str(&format!(
                "skeleton {} compared through degree {}\n",
                cmp.skeleton, cmp.window
            ));
            for (d, (model, quotient)) in &cmp.dims {
                out.push_str(&format!(
                    "degree {d}: model={model} skeleton={quotient}\n"
                ));
            }
            out.push_str(&format!("round trips: {}\n", cmp.round_trips));
            for note in &cmp.notes {
                out.push_str(&format!("FAIL {note}\n"));
            }
            out.push_str(if cmp.is_ok() { "PASS\n" } else { "FAIL\n" });
            Ok(cmp.is_ok())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let code = match run(&cli.command, &mut out) {
        Ok(true) => 0u8,
        Ok(false) => 1,
        Err(Error::CheckFailed(msg)) => {
            out.push_str(&format!("FAIL {msg}\n"));
            1
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    };
    match &cli.output {
        Some(path) => {
            if let Err(e) = fs::write(path, &out) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{out}"),
    }
    ExitCode::from(code)
}
