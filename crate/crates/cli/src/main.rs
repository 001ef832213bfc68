mod commands;
mod input;
mod locate;
mod report;

use clap::{Parser, Subcommand};
use input::InputError;
use peirce::finring::{Side, DEFAULT_LATTICE_CAP};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

/// Check Peirce decompositions, hom-set strong categories and skew category algebras over Z/m.
#[derive(Parser)]
#[command(name = "peirce", version)]
struct Cli {
    /// Leave the timings block out of the report.
    #[arg(long, global = true)]
    no_timings: bool,
    /// Print `verdict: bool` lines instead of the JSON report.
    #[arg(long, short, global = true)]
    quiet: bool,
    /// Upper bound on the number of ideals or submodules enumerated.
    #[arg(long, global = true, default_value_t = DEFAULT_LATTICE_CAP)]
    max_lattice: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a ring file.
    CheckRing { ring: PathBuf },
    /// Check the complete-set axioms and print the Peirce components.
    Peirce {
        /// A ring file followed by an idempotent file, or one idempotent file with a `ring` field.
        ring: PathBuf,
        idempotents: Option<PathBuf>,
    },
    /// Evaluate the three strongness conditions of a complete set of idempotents.
    CheckStrong { ring: PathBuf, idempotents: Option<PathBuf> },
    /// Enumerate the one-sided ideals of a ring.
    IdealLattice {
        ring: PathBuf,
        #[arg(long, default_value = "left")]
        side: Side,
        /// Include every ideal's canonical basis.
        #[arg(long)]
        members: bool,
    },
    /// Evaluate hom-set strongness of a category.
    CheckCategory { category: PathBuf },
    /// Build the category MX from a monoid and check it.
    BuildMx {
        /// trivial, zero-one, klein, cyclic:N, full-transformation:N, symmetric:N, or a monoid file.
        monoid: String,
        #[arg(short, long)]
        s: usize,
    },
    /// Check a category grading of a ring.
    CheckGrading { grading: PathBuf },
    /// Build a skew category algebra from a system and check its gradings.
    BuildSkew { system: PathBuf },
    /// Generate and verify a named suite.
    VerifyProp { suite: String },
    /// Generate a named suite and print its instances.
    GenSuite { suite: String },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::CheckRing { .. } => "check-ring",
            Command::Peirce { .. } => "peirce",
            Command::CheckStrong { .. } => "check-strong",
            Command::IdealLattice { .. } => "ideal-lattice",
            Command::CheckCategory { .. } => "check-category",
            Command::BuildMx { .. } => "build-mx",
            Command::CheckGrading { .. } => "check-grading",
            Command::BuildSkew { .. } => "build-skew",
            Command::VerifyProp { .. } => "verify-prop",
            Command::GenSuite { .. } => "gen-suite",
        }
    }

    fn run(&self, cap: usize) -> Result<report::Report, InputError> {
        match self {
            Command::CheckRing { ring } => commands::check_ring(ring),
            Command::Peirce { ring, idempotents } => commands::peirce(ring, idempotents.as_deref()),
            Command::CheckStrong { ring, idempotents } => commands::check_strong(ring, idempotents.as_deref()),
            Command::IdealLattice { ring, side, members } => commands::ideal_lattice(ring, *side, *members, cap),
            Command::CheckCategory { category } => commands::check_category(category),
            Command::BuildMx { monoid, s } => commands::build_mx_report(monoid, *s),
            Command::CheckGrading { grading } => commands::check_grading(grading),
            Command::BuildSkew { system } => commands::build_skew(system),
            Command::VerifyProp { suite } => commands::verify_prop(suite, cap),
            Command::GenSuite { suite } => commands::gen_suite(suite),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = cli.command.name();
    let start = Instant::now();
    let result = cli.command.run(cli.max_lattice);
    let mut out = std::io::stdout().lock();
    let code = match result {
        Ok(r) => {
            let text = if cli.quiet {
                r.verdict_lines()
            } else {
                let elapsed = (!cli.no_timings).then(|| start.elapsed());
                report::render(&r.to_json(name, elapsed))
            };
            let _ = out.write_all(text.as_bytes());
            r.exit_code()
        }
        Err(e) => {
            if !cli.quiet {
                let _ = out.write_all(report::render(&report::error_json(name, &e)).as_bytes());
            }
            eprintln!("peirce {name}: {}: {e}", e.kind());
            2
        }
    };
    ExitCode::from(code)
}
