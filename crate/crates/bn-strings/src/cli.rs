//! The command-line front end: `construct` writes generator files,
//! `verify` checks a family instance or a generator file, `unravel`
//! reports the per-normal-subgroup quotient verdicts, and `oracle` runs
//! the brute-force cross-checks.
//!
//! Exit codes are a stable contract: 0 success, 1 I/O failure, 2 usage
//! error, 3 verification failure.

use std::fmt::Display;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::families::{thm12_candidate, thm13_candidate, CStringCandidate, Family, FamilyError};
use crate::genfile::{self, GenFileError};
use crate::oracle::{self, OracleError};
use crate::report::{ReportDocument, UnravelDocument};
use crate::verify::{
    verify_candidate_with, verify_theorem_with, MethodSelection, VerificationReport, VerifyError,
    VerifyOptions,
};

pub const EXIT_OK: u8 = 0;
pub const EXIT_IO: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_VERIFICATION: u8 = 3;

/// Ranks above this default to the inductive method when `--method` is not
/// given; the all-pairs scan is still available explicitly.
const FULL_DEFAULT_MAX_RANK: usize = 8;

#[derive(Parser)]
#[command(
    name = "bn-strings",
    version,
    about = "Constructs and verifies string C-groups in the hyperoctahedral groups B_n"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a family instance's generators to a file.
    Construct {
        /// Family to construct (thm12 or thm13).
        family: String,
        /// Family parameter (thm12: odd and ≥ 5; thm13: ≥ 8).
        #[arg(long)]
        n: usize,
        /// Output path for the generator file.
        #[arg(long)]
        out: PathBuf,
    },
    /// Verify a family instance (by name) or a generator file (by path).
    Verify {
        /// thm12, thm13, or a path to a generator file.
        target: String,
        /// Family parameter (required with a family name).
        #[arg(long)]
        n: Option<usize>,
        #[command(flatten)]
        run: RunFlags,
    },
    /// Decide the unravelled property for a family instance.
    Unravel {
        /// Family to check (thm12 or thm13).
        family: String,
        /// Family parameter.
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        run: RunFlags,
    },
    /// Re-check the fast machinery against brute force over B_n.
    Oracle {
        /// Ambient parameter; the whole of B_n is enumerated.
        #[arg(long, default_value_t = 5)]
        n: usize,
        /// Seed for the random subgroup draws.
        #[arg(long, default_value_t = oracle::DEFAULT_ORACLE_SEED)]
        seed: u64,
    },
}

#[derive(Args)]
struct RunFlags {
    /// Output format.
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    /// C-string check method; defaults to both, or inductive above rank 8.
    #[arg(long, value_enum)]
    method: Option<MethodArg>,
    /// Worker threads for the pair scans (affects time only, never output).
    #[arg(long)]
    threads: Option<usize>,
    /// Skip the per-normal-subgroup quotient checks.
    #[arg(long)]
    skip_unravel: bool,
    /// Attach wall-clock phase timings to the report.
    #[arg(long)]
    timing: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Text,
    #[value(alias = "json-like-structured")]
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Full,
    Inductive,
    Both,
}

impl MethodArg {
    fn selection(self) -> MethodSelection {
        match self {
            MethodArg::Full => MethodSelection::Full,
            MethodArg::Inductive => MethodSelection::Inductive,
            MethodArg::Both => MethodSelection::Both,
        }
    }
}

fn usage(message: impl Display) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(EXIT_USAGE)
}

fn io_failure(message: impl Display) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(EXIT_IO)
}

fn verification_failure(message: impl Display) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(EXIT_VERIFICATION)
}

/// Parses the process arguments and runs the selected command.
pub fn run() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Construct { family, n, out } => cmd_construct(&family, n, &out),
        Command::Verify { target, n, run } => cmd_verify(&target, n, &run),
        Command::Unravel { family, n, run } => cmd_unravel(&family, n, &run),
        Command::Oracle { n, seed } => cmd_oracle(n, seed),
    }
}

fn family_candidate(family: Family, n: usize) -> Result<CStringCandidate, FamilyError> {
    match family {
        Family::Thm12 => thm12_candidate(n),
        Family::Thm13 => thm13_candidate(n),
        Family::Custom => Err(FamilyError::UnknownFamily(
            "custom (custom tuples are read from generator files)".to_owned(),
        )),
    }
}

fn cmd_construct(family_token: &str, n: usize, out: &Path) -> ExitCode {
    let family = match family_token.parse::<Family>() {
        Ok(f) => f,
        Err(e) => return usage(e),
    };
    let candidate = match family_candidate(family, n) {
        Ok(c) => c,
        Err(e) => return usage(e),
    };
    if let Err(e) = fs::write(out, genfile::write_candidate(&candidate)) {
        return io_failure(format_args!("cannot write {}: {e}", out.display()));
    }
    println!(
        "wrote {} generators of degree {} ({} n={}) to {}",
        candidate.rank,
        candidate.degree(),
        candidate.family,
        candidate.n,
        out.display()
    );
    ExitCode::from(EXIT_OK)
}

fn configure_threads(threads: Option<usize>) {
    if let Some(count) = threads {
        let outcome = rayon::ThreadPoolBuilder::new()
            .num_threads(count)
            .build_global();
        if let Err(e) = outcome {
            eprintln!("warning: thread pool already configured ({e}); continuing");
        }
    }
}

fn options_for(run: &RunFlags, rank: usize) -> VerifyOptions {
    let method = match run.method {
        Some(arg) => arg.selection(),
        None if rank > FULL_DEFAULT_MAX_RANK => MethodSelection::Inductive,
        None => MethodSelection::Both,
    };
    VerifyOptions {
        method,
        skip_unravel: run.skip_unravel,
    }
}

fn emit_report(report: &VerificationReport, run: &RunFlags) -> ExitCode {
    let doc = ReportDocument::from_report(report, run.timing);
    match run.format {
        FormatArg::Text => print!("{}", doc.render_text()),
        FormatArg::Json => print!("{}", doc.to_json()),
    }
    if doc.all_passed {
        ExitCode::from(EXIT_OK)
    } else {
        ExitCode::from(EXIT_VERIFICATION)
    }
}

fn cmd_verify(target: &str, n: Option<usize>, run: &RunFlags) -> ExitCode {
    configure_threads(run.threads);
    if let Ok(family) = target.parse::<Family>() {
        let Some(n) = n else {
            return usage("--n is required when verifying a family by name");
        };
        let rank = match family {
            Family::Thm12 => 4,
            Family::Thm13 => n.saturating_sub(4),
            Family::Custom => {
                return usage("custom tuples are verified from a generator file path")
            }
        };
        let options = options_for(run, rank);
        return match verify_theorem_with(family, n, &options) {
            Ok(report) => emit_report(&report, run),
            Err(VerifyError::Family(e)) => usage(e),
            Err(VerifyError::RankTooLargeForPairScan { rank, max }) => {
                usage(VerifyError::RankTooLargeForPairScan { rank, max })
            }
            Err(e) => verification_failure(e),
        };
    }
    let text = match fs::read_to_string(target) {
        Ok(text) => text,
        Err(e) => return io_failure(format_args!("cannot read {target}: {e}")),
    };
    let candidate = match genfile::parse_candidate(&text) {
        Ok(c) => c,
        Err(GenFileError::Family(e)) => {
            return verification_failure(format_args!("the tuple fails a required property: {e}"))
        }
        Err(e) => return usage(e),
    };
    let options = options_for(run, candidate.rank);
    match verify_candidate_with(&candidate, &options) {
        Ok(report) => emit_report(&report, run),
        Err(VerifyError::RankTooLargeForPairScan { rank, max }) => {
            usage(VerifyError::RankTooLargeForPairScan { rank, max })
        }
        Err(e) => verification_failure(e),
    }
}

fn cmd_unravel(family_token: &str, n: usize, run: &RunFlags) -> ExitCode {
    configure_threads(run.threads);
    let family = match family_token.parse::<Family>() {
        Ok(f) => f,
        Err(e) => return usage(e),
    };
    let options = VerifyOptions {
        method: MethodSelection::Inductive,
        skip_unravel: false,
    };
    let report = match verify_theorem_with(family, n, &options) {
        Ok(report) => report,
        Err(VerifyError::Family(e)) => return usage(e),
        Err(VerifyError::UnsupportedFamily(f)) => return usage(VerifyError::UnsupportedFamily(f)),
        Err(e) => return verification_failure(e),
    };
    let doc = UnravelDocument::from_report(&report);
    match run.format {
        FormatArg::Text => print!("{}", doc.render_text()),
        FormatArg::Json => print!("{}", doc.to_json()),
    }
    let consistent = report
        .expected_unravelled
        .map_or(true, |expected| {
            report
                .unravelled
                .as_ref()
                .is_some_and(|u| u.unravelled == expected)
        });
    if consistent {
        ExitCode::from(EXIT_OK)
    } else {
        ExitCode::from(EXIT_VERIFICATION)
    }
}

fn cmd_oracle(n: usize, seed: u64) -> ExitCode {
    if n < 5 {
        return usage("the oracle suite needs n ≥ 5 (the catalog is defined from there)");
    }
    let comparisons = match oracle::run_oracle_suite(n, seed) {
        Ok(c) => c,
        Err(OracleError::TooLarge { n, order, cap }) => {
            return usage(OracleError::TooLarge { n, order, cap })
        }
        Err(e) => return verification_failure(e),
    };
    for c in &comparisons {
        println!(
            "{} {} — {}",
            if c.matches { "ok  " } else { "FAIL" },
            c.name,
            c.detail
        );
    }
    let failed = comparisons.iter().filter(|c| !c.matches).count();
    if failed == 0 {
        println!("oracle: all {} comparisons match", comparisons.len());
        ExitCode::from(EXIT_OK)
    } else {
        println!(
            "oracle: {failed} of {} comparisons FAILED",
            comparisons.len()
        );
        ExitCode::from(EXIT_VERIFICATION)
    }
}
