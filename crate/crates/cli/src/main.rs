//! `tsh`: batch front end for checking TSH-algebras and frames, moving
//! between them, and testing formulas of the tense calculus.
//!
//! Exit status is 0 on success, 1 when a check finds a violation, 2 when an
//! input cannot be read or parsed and 3 when a size bound would be exceeded
//! without `--force`.

mod commands;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use commands::{Bounds, Direction, Mode, Outcome};

#[derive(Debug, Parser)]
#[command(
    name = "tsh",
    version,
    about = "Tense symmetric Heyting algebras and their frames"
)]
struct Cli {
    /// Report style: prose, or tab-separated `code<TAB>witness` records.
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    format: Format,

    /// Write the constructed structure (frame, algebra, model, frame list)
    /// here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Records,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check an algebra file against the TSH-algebra axioms.
    CheckAlgebra { path: PathBuf },

    /// Check a frame file against the TSH-frame conditions.
    CheckFrame { path: PathBuf },

    /// Build the canonical frame of an algebra or the complex algebra of a
    /// frame, and verify the embedding back.
    Dualize {
        path: PathBuf,
        #[arg(long, value_enum)]
        direction: Direction,
    },

    /// Print formulas in canonical form, or generate random ones.
    Parse {
        formulas: Vec<String>,
        /// Generate this many random formulas instead.
        #[arg(long, conflicts_with = "formulas")]
        random: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        depth: usize,
        /// Comma-separated variable names for random formulas.
        #[arg(long, default_value = "p,q,r", value_delimiter = ',')]
        vars: Vec<String>,
    },

    /// Check a proof file.
    CheckProof { path: PathBuf },

    /// Test a formula on all small frames, search for a countermodel, or
    /// evaluate it in an algebra.
    Validity {
        formula: String,
        /// `frames`, `countermodel`, or `algebra:PATH`.
        #[arg(long, default_value = "frames")]
        mode: Mode,
        #[arg(long, default_value_t = 3)]
        max_size: usize,
        /// Lift the size and variable bounds.
        #[arg(long)]
        force: bool,
    },

    /// List TSH-frames up to a size, one per isomorphism class.
    EnumerateFrames {
        #[arg(long, default_value_t = 2)]
        max_size: usize,
        /// Every labeled frame rather than one per isomorphism class.
        #[arg(long)]
        labeled: bool,
        #[arg(long)]
        force: bool,
    },
}

fn run(cli: &Cli) -> Outcome {
    let bounds = |force: bool| Bounds {
        max_states: commands::MAX_STATES,
        max_vars: commands::MAX_VARS,
        force,
    };
    match &cli.command {
        Command::CheckAlgebra { path } => commands::check_algebra(path),
        Command::CheckFrame { path } => commands::check_frame(path),
        Command::Dualize { path, direction } => commands::dualize(path, *direction),
        Command::Parse {
            formulas,
            random,
            seed,
            depth,
            vars,
        } => match random {
            Some(count) => commands::random_formulas(*count, *seed, *depth, vars),
            None => commands::parse_formulas(formulas),
        },
        Command::CheckProof { path } => commands::check_proof(path),
        Command::Validity {
            formula,
            mode,
            max_size,
            force,
        } => commands::validity(formula, mode, *max_size, bounds(*force)),
        Command::EnumerateFrames {
            max_size,
            labeled,
            force,
        } => commands::enumerate(*max_size, *labeled, bounds(*force)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = run(&cli);

    if let Some(artifact) = &outcome.artifact {
        match &cli.output {
            Some(path) => {
                if let Err(e) = fs::write(path, artifact) {
                    eprintln!("tsh: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            None if cli.format == Format::Human => print!("{artifact}"),
            None => {}
        }
    }
    match cli.format {
        Format::Human => print!("{}", outcome.human),
        Format::Records => print!("{}", outcome.records),
    }
    for line in &outcome.diagnostics {
        eprintln!("tsh: {line}");
    }
    ExitCode::from(outcome.status as u8)
}
