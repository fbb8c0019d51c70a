//! Command-line front end: Ext and Hochschild computations, product and
//! coproduct constructions, and the named theorem checks, with
//! content-addressed caching of reports.

mod dispatch;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

/// Exit codes: 0 all invoked checks pass, 1 a check failed, 2 unknown check
/// or bad usage, 3 malformed algebra input, 4 cutoff too small, 5 algebra
/// axioms violated.
pub const EXIT_CHECK_FAILED: u8 = 1;
pub const EXIT_UNKNOWN_CHECK: u8 = 2;
pub const EXIT_BAD_INPUT: u8 = 3;
pub const EXIT_CUTOFF: u8 = 4;
pub const EXIT_AXIOMS: u8 = 5;

#[derive(Parser)]
#[command(
    name = "augcoh",
    version,
    about = "Exact cohomology of augmented algebras: products, coproducts, Ext and Hochschild rings, and theorem checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Ground field: omit for the rationals, or a prime p for GF(p)
    #[arg(long, global = true)]
    field: Option<u64>,
    /// Write the JSON report here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Disable the content-addressed cache
    #[arg(long, global = true)]
    no_cache: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Ext ring of an algebra: dims and multiplication table
    Ext {
        #[arg(long)]
        algebra: String,
        #[arg(long, default_value_t = 4)]
        nmax: usize,
    },
    /// Hochschild cohomology ring of an algebra
    Hh {
        #[arg(long)]
        algebra: String,
        #[arg(long, default_value_t = 4)]
        nmax: usize,
    },
    /// Product of two algebras; emits the algebra JSON document
    Product {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Truncated coproduct of two algebras; emits the algebra JSON document
    Coproduct {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long)]
        cutoff: Option<usize>,
    },
    /// Run a named theorem check
    Check {
        /// one of: axioms, ordinary-coprod, omega-lem, main-theo, les-exact,
        /// additive-decomp, hoch-prod, nilp-hh, gr-centre, phi-k-centre,
        /// ss-nilpotence, chinese-remainder, hoch-coprod-heuristic
        name: String,
        #[arg(long)]
        algebra: Option<String>,
        #[arg(long)]
        left: Option<String>,
        #[arg(long)]
        right: Option<String>,
        #[arg(long)]
        nmax: Option<usize>,
        #[arg(long)]
        cutoff: Option<usize>,
    },
    /// List the built-in example registry
    Examples,
    /// Run every check over the built-in registry and report pass/fail
    ReportAll {
        #[arg(long, default_value_t = 4)]
        nmax: usize,
        /// Worker threads for independent checks
        #[arg(long)]
        jobs: Option<usize>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch::run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(dispatch::exit_code_for(&e))
        }
    }
}
