//! `sp4`: classification of rank-four integral symplectic monodromy with maximal unipotent monodromy.

mod commands;
mod report;
mod verify;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{Failure, Outcome, PolytopeOp, SeriesKind};
use report::Format;

#[derive(Parser, Debug)]
#[command(name = "sp4", version, about = "Integral Sp(4) monodromy classification and checks")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "tsv")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the real classes with their exponents and cyclotomic factors.
    Classify,
    /// List the invariant unimodular lattices of one real class.
    Lattices {
        #[arg(long, allow_negative_numbers = true)]
        m: i64,
        #[arg(long, allow_negative_numbers = true)]
        a: i64,
        /// Keep only mirror-consistent lattices.
        #[arg(long)]
        mirror_consistent: bool,
    },
    /// Lattice and mirror-consistent counts for every class, against expectations.
    Table1 {
        /// Expectation file replacing the bundled one.
        #[arg(long)]
        expected: Option<PathBuf>,
    },
    /// Period series coefficients.
    Series {
        #[arg(value_enum)]
        kind: SeriesKind,
        #[arg(long, default_value_t = 10)]
        order: usize,
        /// Four exponents for `hypergeom`, e.g. 1/5,2/5,3/5,4/5.
        #[arg(long)]
        exponents: Option<String>,
    },
    /// Polytope operations on a polytope file.
    Polytope {
        #[arg(value_enum)]
        op: PolytopeOp,
        file: PathBuf,
    },
    /// Run every acceptance check.
    Verify {
        /// Expectation file replacing the bundled one.
        #[arg(long)]
        expected: Option<PathBuf>,
    },
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(raw) = std::env::var("SP4_THREADS") else { return Ok(()) };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::usage(format!("SP4_THREADS must be a positive integer, got {raw:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::usage(format!("cannot configure threads: {e}")))
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    configure_threads()?;
    match &cli.command {
        Command::Classify => commands::classify(),
        Command::Lattices { m, a, mirror_consistent } => commands::lattices(*m, *a, *mirror_consistent),
        Command::Table1 { expected } => commands::table1(expected.as_deref()),
        Command::Series { kind, order, exponents } => commands::series(*kind, *order, exponents.as_deref()),
        Command::Polytope { op, file } => commands::polytope(*op, file),
        Command::Verify { expected } => verify::verify(expected.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            let mut out = std::io::stdout().lock();
            if out.write_all(outcome.report.render(cli.format).as_bytes()).is_err() {
                return ExitCode::from(1);
            }
            match outcome.failure {
                Some(f) => {
                    eprintln!("sp4: {f}");
                    ExitCode::from(f.code)
                }
                None => ExitCode::SUCCESS,
            }
        }
        Err(f) => {
            eprintln!("sp4: {f}");
            ExitCode::from(f.code)
        }
    }
}
