//! `artin3`: command-line access to the group, character, cohomology,
//! conductor and counting routines, plus the acceptance verifier.
//!
//! Exit status: 0 on success, 1 when `verify` finds a failing criterion or a
//! computation fails, 2 for usage errors and bad input, 3 when a size or
//! memory budget is exceeded.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use artin3_core::Error;
use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(
    name = "artin3",
    version,
    about = "Finite-group and conductor computations for solvable 3-dimensional Artin representations"
)]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Memory cap for cohomology computations, in MiB.
    #[arg(long, global = true, value_name = "MB", default_value_t = 2048)]
    pub budget_mb: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a named group, print invariants, or dump/load the table format.
    #[command(args_conflicts_with_subcommands = true, subcommand_required = false)]
    Group {
        #[command(flatten)]
        select: Option<GroupSelect>,
        /// Print center, derived subgroup, abelianization and exponent.
        #[arg(long)]
        invariants: bool,
        #[command(subcommand)]
        action: Option<GroupAction>,
    },
    /// Character table of a group.
    Chartable {
        #[command(flatten)]
        select: GroupSelect,
        /// Print only the multiset of degrees.
        #[arg(long)]
        degrees: bool,
    },
    /// Conductor exponents against a tame chain or an explicit filtration.
    Conductor(ConductorArgs),
    /// Second cohomology with F3 coefficients and central extensions by C3.
    H2 {
        #[command(flatten)]
        select: GroupSelect,
        /// Build every central extension and classify up to isomorphism.
        #[arg(long)]
        enumerate: bool,
    },
    /// Counting formulas and bounds for a prime `p` and exponent `m`.
    Bounds {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        m: u32,
        /// key=value file overriding h_L and n_p/3.
        #[arg(long, value_name = "FILE")]
        config: Option<PathBuf>,
    },
    /// Run the acceptance criteria.
    Verify {
        /// Skip the order-648 extension work.
        #[arg(long)]
        fast: bool,
        /// Run only these criteria.
        #[arg(long = "criterion", value_name = "N", value_parser = clap::value_parser!(u8).range(1..=8))]
        criteria: Vec<u8>,
    },
}

#[derive(Debug, Subcommand)]
pub enum GroupAction {
    /// Write the multiplication table in text form.
    Dump {
        #[command(flatten)]
        select: GroupSelect,
        /// Write to a file instead of stdout.
        #[arg(long, short, value_name = "FILE")]
        output: Option<PathBuf>,
    },
    /// Read a table file, validate it and print a summary.
    Load {
        file: PathBuf,
        #[arg(long)]
        invariants: bool,
    },
}

#[derive(Debug, Clone, Args)]
pub struct GroupSelect {
    /// Group name: Cn, C3xC3, Q8, SL2F3, Heis3, P1, P2, P3, J, B, C9sC3,
    /// C7sC3, C3sC2, or shorthands like C12 and B1.
    #[arg(long)]
    pub name: String,
    /// Parameters for Cn (n) and B (a).
    #[arg(
        long = "param",
        value_name = "N",
        allow_negative_numbers = true,
        value_delimiter = ','
    )]
    pub params: Vec<i64>,
}

#[derive(Debug, Args)]
pub struct ConductorArgs {
    /// Group whose irreducibles are measured.
    #[arg(long)]
    pub name: Option<String>,
    #[arg(
        long = "param",
        value_name = "N",
        allow_negative_numbers = true,
        value_delimiter = ','
    )]
    pub params: Vec<i64>,
    /// Tame inertia: `Ck` for the subgroup generated by the first element
    /// of order k, or `1`.
    #[arg(long, value_name = "Ck", requires = "name", conflicts_with_all = ["orders", "filtration"])]
    pub tame: Option<String>,
    /// Character degree.
    #[arg(long, default_value_t = 3)]
    pub degree: i64,
    /// Order list `g0 g1 g2 ...`; uses the central-element rule.
    #[arg(
        long,
        value_name = "LIST",
        requires = "p",
        conflicts_with = "filtration"
    )]
    pub orders: Option<String>,
    /// Filtration file: an order list line, optionally followed by
    /// `G<i>: members...` lines (which require `--name`).
    #[arg(long, value_name = "FILE")]
    pub filtration: Option<PathBuf>,
    /// Residue characteristic for order lists.
    #[arg(long)]
    pub p: Option<u64>,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Budget(_) => 3,
        Error::UnknownGroup(_)
        | Error::InvalidParams { .. }
        | Error::Parse { .. }
        | Error::Io(_) => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
