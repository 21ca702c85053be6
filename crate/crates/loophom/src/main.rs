//! Command-line front end: named verification suites, cobar homology of an
//! input coalgebra, and 2-adic torsion exponents.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 when the
//! input is unusable (unknown suite, unreadable or malformed file, bad
//! arguments).

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use loophom::arith::TorsionExponents;
use loophom::cobar;
use loophom::hopf::CoalgebraData;
use loophom::parse::{load_fixture, FixtureFile};
use loophom::suite::{default_cap, run_suite_with, SUITES};

#[derive(Parser)]
#[command(
    name = "loophom",
    about = "Exact mod-2 verification of loop-space homology computations",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a named verification suite and report each check.
    Verify {
        /// Suite name; see `--suite help` for the list.
        #[arg(long)]
        suite: String,
        /// Largest degree to verify (default: the suite's own cap).
        #[arg(long)]
        maxdeg: Option<usize>,
        /// Worker threads for independent checks.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Report style.
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Replace the suite's primary input with this file.
        #[arg(long)]
        fixture: Option<PathBuf>,
    },
    /// Compute the cobar homology dimensions of a coalgebra input file.
    Cotor {
        /// Presented algebra with coproduct, or quotient ring taken as dual.
        #[arg(long)]
        coalgebra: PathBuf,
        /// Largest degree to compute.
        #[arg(long)]
        maxdeg: usize,
    },
    /// Print the 2-adic valuations of q^2-1, q^4-1, q^6-1, q^14-1.
    Nu2 {
        /// An odd integer at least 3.
        #[arg(long)]
        q: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Machine,
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Verify {
            suite,
            maxdeg,
            jobs,
            format,
            fixture,
        } => verify(&suite, maxdeg, jobs, format, fixture.as_deref()),
        Command::Cotor { coalgebra, maxdeg } => cotor(&coalgebra, maxdeg),
        Command::Nu2 { q } => nu2(q),
    }
}

fn read_fixture_file(path: &Path) -> Result<FixtureFile, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    load_fixture(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn verify(
    suite: &str,
    maxdeg: Option<usize>,
    jobs: usize,
    format: Format,
    fixture: Option<&Path>,
) -> ExitCode {
    if suite == "help" {
        println!("available suites (with default maxdeg):");
        for (name, cap) in SUITES {
            println!("  {name} ({cap})");
        }
        return ExitCode::SUCCESS;
    }
    let cap = match maxdeg.or_else(|| default_cap(suite)) {
        Some(cap) => cap,
        // Unknown suite: let the runner produce the full error message.
        None => 0,
    };
    let override_file = match fixture.map(read_fixture_file) {
        None => None,
        Some(Ok(file)) => Some(file),
        Some(Err(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let report = match run_suite_with(suite, cap, jobs, override_file) {
        Ok(report) => report,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match format {
        Format::Text => print!("{}", report.render_text()),
        Format::Machine => print!("{}", report.render_machine()),
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn cotor(path: &Path, maxdeg: usize) -> ExitCode {
    let file = match read_fixture_file(path) {
        Ok(file) => file,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    // The cobar differential in degree <= maxdeg consults the coalgebra two
    // degrees higher, so build with that margin.
    let built = match &file {
        FixtureFile::Algebra(a) => {
            CoalgebraData::from_presented(&a.presentation, &a.coproduct, maxdeg + 2)
                .map_err(|e| e.to_string())
        }
        FixtureFile::Ring(r) => {
            let gb = r.ring.groebner_basis(maxdeg + 2);
            CoalgebraData::dual_of_ring(&gb, maxdeg + 2).map_err(|e| e.to_string())
        }
    };
    let coalg = match built {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("error: {}: {msg}", path.display());
            return ExitCode::from(2);
        }
    };
    let dims = match cobar::cotor(&coalg, maxdeg) {
        Ok(d) => d,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    println!("cobar homology of {} through degree {maxdeg}:", file.name());
    for n in 0..=maxdeg {
        println!("{n}\t{}", dims.get(n));
    }
    ExitCode::SUCCESS
}

fn nu2(q: u64) -> ExitCode {
    let exps = match TorsionExponents::new(q) {
        Ok(e) => e,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    println!("q = {q}");
    println!("r2  = nu2(q^2 - 1)  = {}", exps.r2);
    println!("r4  = nu2(q^4 - 1)  = {}", exps.r4);
    println!("r6  = nu2(q^6 - 1)  = {}", exps.r6);
    println!("r14 = nu2(q^14 - 1) = {}", exps.r14);
    match exps.verify_identities() {
        Ok(()) => {
            println!("identities hold: r2 = r6 = r14, r4 = r2 + 1");
            ExitCode::SUCCESS
        }
        Err(msg) => {
            eprintln!("identity failure: {msg}");
            ExitCode::from(1)
        }
    }
}
