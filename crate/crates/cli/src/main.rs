//! `lensform`: lens-space spectra, isospectrality certificates, lattice
//! invariants, and toric counts, with deterministic machine-readable
//! output.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand};

use lensform_cli::commands::*;
use lensform_cli::output::Format;
use lensform_core::isospectral::SearchOptions;
use lensform_core::LensSpace;

/// Default guard rails; `--unsafe-limits` lifts them.
const MAX_Q: u64 = 500;
const MAX_N: usize = 4;
const MAX_SEARCH_CANDIDATES: u64 = 10_000_000;

#[derive(Parser)]
#[command(
    name = "lensform",
    version,
    about = "Lens-space spectra and isospectrality through exact lattice-point counting"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Lift the built-in q/n/k guard rails.
    #[arg(long, global = true)]
    unsafe_limits: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Eigenvalues and multiplicities for k = 0..=max-k.
    Spectrum {
        /// Lens-space literal "q:p1,p2,...,pn".
        lens: String,
        #[arg(long = "max-k")]
        max_k: u64,
    },
    /// Rigorous isospectrality verdict for two spaces.
    Isospectral { lens_a: String, lens_b: String },
    /// Exhaustive search for isospectral non-isometric families.
    Search {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: usize,
        /// Write a CSV report to this path.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Lattice basis, dual data, Stanley invariants, and the series report.
    Invariants {
        lens: String,
        /// Comparison horizon for the series report; defaults to 20 clamped
        /// into [2n, 10q].
        #[arg(long = "max-k")]
        max_k: Option<u64>,
    },
    /// Polytope vertices, Ehrhart data, section dimensions, and degree.
    Toric {
        lens: String,
        #[arg(long = "max-k", default_value_t = 5)]
        max_k: u64,
    },
    /// Harmonic-kernel spot check of the multiplicity formula.
    Oracle {
        lens: String,
        #[arg(long)]
        k: u64,
    },
}

enum CliError {
    Validation(String),
    Unwritable(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Unwritable(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Validation(m) | CliError::Unwritable(m) => m,
        }
    }
}

fn validation<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Validation(e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {}", e.message());
        return ExitCode::from(e.code());
    }
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}

/// LENSFORM_THREADS caps internal parallelism; output is byte-identical
/// for any setting.
fn configure_threads() -> Result<(), CliError> {
    if let Ok(raw) = std::env::var("LENSFORM_THREADS") {
        let threads: usize = raw.trim().parse().ok().filter(|&t| t >= 1).ok_or_else(|| {
            CliError::Validation(format!(
                "LENSFORM_THREADS must be a positive integer, got '{raw}'"
            ))
        })?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| CliError::Validation(format!("thread pool: {e}")))?;
    }
    Ok(())
}

fn parse_lens(cli: &Cli, literal: &str, spectral: bool) -> Result<LensSpace, CliError> {
    let lens = LensSpace::from_str(literal).map_err(validation)?;
    if !cli.unsafe_limits {
        if lens.q() > MAX_Q {
            return Err(CliError::Validation(format!(
                "q = {} exceeds the guard q <= {MAX_Q} (use --unsafe-limits to override)",
                lens.q()
            )));
        }
        if lens.n() > MAX_N {
            return Err(CliError::Validation(format!(
                "n = {} exceeds the guard n <= {MAX_N} (use --unsafe-limits to override)",
                lens.n()
            )));
        }
    }
    if spectral && lens.low_dimensional() {
        return Err(CliError::Validation(format!(
            "'{literal}' has n = 1; spectral commands need at least two parameters"
        )));
    }
    Ok(lens)
}

fn check_k(cli: &Cli, k: u64, q: u64) -> Result<(), CliError> {
    if !cli.unsafe_limits && k > 10 * q {
        return Err(CliError::Validation(format!(
            "k = {k} exceeds the guard k <= 10q = {} (use --unsafe-limits to override)",
            10 * q
        )));
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<String, CliError> {
    match &cli.command {
        Command::Spectrum { lens, max_k } => {
            let lens = parse_lens(cli, lens, true)?;
            check_k(cli, *max_k, lens.q())?;
            Ok(render_spectrum(&cmd_spectrum(&lens, *max_k), cli.format))
        }
        Command::Isospectral { lens_a, lens_b } => {
            let a = parse_lens(cli, lens_a, true)?;
            let b = parse_lens(cli, lens_b, true)?;
            Ok(render_isospectral(&cmd_isospectral(&a, &b), cli.format))
        }
        Command::Search { q, n, report } => {
            if *q < 1 || *n < 2 {
                return Err(CliError::Validation(
                    "search needs q >= 1 and n >= 2".to_string(),
                ));
            }
            if !cli.unsafe_limits && (*q > MAX_Q || *n > MAX_N) {
                return Err(CliError::Validation(format!(
                    "search range q = {q}, n = {n} exceeds the guards q <= {MAX_Q}, n <= {MAX_N}"
                )));
            }
            let options = SearchOptions {
                max_candidates: (!cli.unsafe_limits).then_some(MAX_SEARCH_CANDIDATES),
            };
            let report_str = report.as_ref().map(|p| p.display().to_string());
            let doc = cmd_search(*q, *n, report_str.as_deref(), &options).map_err(validation)?;
            if let Some(path) = report {
                fs::write(path, search_csv(&doc)).map_err(|e| {
                    CliError::Unwritable(format!("cannot write report to {}: {e}", path.display()))
                })?;
            }
            Ok(render_search(&doc, cli.format))
        }
        Command::Invariants { lens, max_k } => {
            let lens = parse_lens(cli, lens, false)?;
            let floor = 2 * lens.n() as u64;
            let max_k = max_k.unwrap_or_else(|| 20.min(10 * lens.q()).max(floor));
            check_k(cli, max_k, lens.q())?;
            if max_k < floor {
                return Err(CliError::Validation(format!(
                    "--max-k must be at least 2n = {floor}"
                )));
            }
            let doc = cmd_invariants(&lens, max_k).map_err(validation)?;
            Ok(render_invariants(&doc, cli.format))
        }
        Command::Toric { lens, max_k } => {
            let lens = parse_lens(cli, lens, false)?;
            check_k(cli, *max_k, lens.q())?;
            if *max_k < 1 {
                return Err(CliError::Validation("--max-k must be at least 1".into()));
            }
            Ok(render_toric(&cmd_toric(&lens, *max_k), cli.format))
        }
        Command::Oracle { lens, k } => {
            let lens = parse_lens(cli, lens, true)?;
            check_k(cli, *k, lens.q())?;
            let doc = cmd_oracle(&lens, *k).map_err(validation)?;
            Ok(render_oracle(&doc, cli.format))
        }
    }
}
