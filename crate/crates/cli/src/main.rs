//! Command-line front end for the five-qubit code simulator.
//!
//! Five subcommands expose the library as reproducible, scriptable runs:
//!
//! * `verify` — run the seeded self-check suites and report PASS/FAIL.
//! * `table`  — emit the 16-row error/syndrome/recovery table.
//! * `fidelity` — sweep coupling strengths and report both channel
//!   fidelities plus the fitted scaling law.
//! * `search` — rediscover the codeword sign patterns by exhaustion.
//! * `bound`  — tabulate the redundancy bound 2(3n+1) ≤ 2ⁿ.
//!
//! Exit codes: 0 on success, 1 when a verification suite fails (the first
//! failing suite is named on stderr), 2 for unusable flags or values.
//! Identical flags (and seed) always produce byte-identical output; every
//! random draw comes from a ChaCha12 generator derived from `--seed`.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use fiveq::code5::syndrome_table;
use fiveq::codesearch::{min_code_length, search_signs, CodeCandidate};
use fiveq::noise::{
    default_input_states, default_theta_grid, fidelity_sweep, fit_scaling, GeneratorConfig,
    ScalingFit, SweepRecord, FIT_WINDOW,
};
use fiveq::verify::run_all_suites;

#[derive(Parser)]
#[command(name = "fiveq", version, about = "Five-qubit code simulator and verifier")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the randomized self-verification suites.
    Verify {
        /// Seed for all random draws.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random trials per suite.
        #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u32).range(1..))]
        trials: u32,
        /// Output format (csv is not defined for verify).
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Write the report to a file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit the 16-row error/syndrome/recovery table.
    Table {
        /// Output format.
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Write the table to a file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sweep coupling strengths and report fidelities plus the scaling fit.
    Fidelity {
        /// Comma-separated coupling strengths (default: 16 log-spaced
        /// values in [1e-2, 0.5]).
        #[arg(long, value_delimiter = ',')]
        theta_grid: Option<Vec<f64>>,
        /// Output format.
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Write the sweep records to a file; the fit summary then goes to
        /// stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exhaustively search the codeword supports for valid sign patterns.
    Search {
        /// Output format (csv is not defined for search).
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Write the candidates to a file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tabulate the redundancy bound 2(3n+1) <= 2^n.
    Bound {
        /// Largest register size to tabulate.
        #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u32).range(1..=62))]
        max_n: u32,
        /// Output format.
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Write the table to a file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

/// Fixed-precision float rendering (12 significant digits) so that equal
/// configurations emit byte-identical reports.
fn fmt_f(x: f64) -> String {
    format!("{x:.11e}")
}

/// Sends a finished report to `--out` or stdout.
fn emit(out: &Option<PathBuf>, content: &str) -> Result<(), String> {
    match out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify {
            seed,
            trials,
            format,
            out,
        } => run_verify(seed, trials as usize, format, &out),
        Command::Table { format, out } => run_table(format, &out),
        Command::Fidelity {
            theta_grid,
            format,
            out,
        } => run_fidelity(theta_grid, format, &out),
        Command::Search { format, out } => run_search(format, &out),
        Command::Bound { max_n, format, out } => run_bound(max_n, format, &out),
    };
    match result {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run_verify(
    seed: u64,
    trials: usize,
    format: Format,
    out: &Option<PathBuf>,
) -> Result<ExitCode, String> {
    let outcomes = run_all_suites(seed, trials);
    let report = match format {
        Format::Text => {
            let mut text = String::new();
            for o in &outcomes {
                let status = if o.passed { "PASS" } else { "FAIL" };
                writeln!(text, "{status} {} ({})", o.name, o.detail).unwrap();
            }
            text
        }
        Format::Json => to_json_pretty(&outcomes)?,
        Format::Csv => return Err("csv output is not defined for verify".into()),
    };
    emit(out, &report)?;
    if let Some(failed) = outcomes.iter().find(|o| !o.passed) {
        eprintln!("verification failed: {}", failed.name);
        return Ok(ExitCode::FAILURE);
    }
    Ok(ExitCode::SUCCESS)
}

fn run_table(format: Format, out: &Option<PathBuf>) -> Result<ExitCode, String> {
    let report = match format {
        Format::Text => {
            let mut text = String::new();
            for row in syndrome_table() {
                writeln!(text, "{} {} {}", row.error, row.syndrome, row.resulting_state).unwrap();
            }
            text
        }
        Format::Csv => {
            let mut text = String::from("error,syndrome,transform\n");
            for row in fiveq::code5::CodeTable::standard().export_rows() {
                writeln!(text, "{},{},{}", row.error, row.syndrome, row.transform).unwrap();
            }
            text
        }
        Format::Json => to_json_pretty(&fiveq::code5::CodeTable::standard().export_rows())?,
    };
    emit(out, &report)?;
    Ok(ExitCode::SUCCESS)
}

fn run_fidelity(
    theta_grid: Option<Vec<f64>>,
    format: Format,
    out: &Option<PathBuf>,
) -> Result<ExitCode, String> {
    let grid = theta_grid.unwrap_or_else(default_theta_grid);
    if grid.iter().any(|t| !t.is_finite() || *t < 0.0) {
        return Err("theta grid values must be finite and nonnegative".into());
    }
    let records = fidelity_sweep(&grid, GeneratorConfig::Isotropic, &default_input_states())
        .map_err(|e| e.to_string())?;
    let fit = fit_scaling(&records, FIT_WINDOW.0, FIT_WINDOW.1);

    match format {
        Format::Text => {
            let mut text = String::from("theta p f_unencoded f_corrected\n");
            for r in &records {
                writeln!(
                    text,
                    "{} {} {} {}",
                    fmt_f(r.theta),
                    fmt_f(r.p),
                    fmt_f(r.f_unencoded),
                    fmt_f(r.f_corrected)
                )
                .unwrap();
            }
            emit(out, &text)?;
            // With --out the records leave stdout free for the summary.
            print!("{}", fit_summary(&fit));
        }
        Format::Csv => {
            let mut text = String::from("theta,p,f_unencoded,f_corrected\n");
            for r in &records {
                writeln!(
                    text,
                    "{},{},{},{}",
                    fmt_f(r.theta),
                    fmt_f(r.p),
                    fmt_f(r.f_unencoded),
                    fmt_f(r.f_corrected)
                )
                .unwrap();
            }
            emit(out, &text)?;
            if out.is_some() {
                print!("{}", fit_summary(&fit));
            }
        }
        Format::Json => {
            emit(out, &fidelity_json(&records, &fit))?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

/// Human-readable fit block, one `fit:` record per line.
fn fit_summary(fit: &Option<ScalingFit>) -> String {
    match fit {
        Some(f) => {
            let mut text = String::new();
            writeln!(
                text,
                "fit: window p in [{}, {}] using {} records",
                fmt_f(FIT_WINDOW.0),
                fmt_f(FIT_WINDOW.1),
                f.window_points
            )
            .unwrap();
            writeln!(text, "fit: slope_corrected {}", fmt_f(f.slope_corrected)).unwrap();
            writeln!(text, "fit: slope_unencoded {}", fmt_f(f.slope_unencoded)).unwrap();
            writeln!(text, "fit: c {}", fmt_f(f.c)).unwrap();
            writeln!(text, "fit: p_star {}", fmt_f(f.p_star)).unwrap();
            text
        }
        None => "fit: unavailable (fewer than 2 records in the window)\n".to_string(),
    }
}

/// Hand-rendered JSON so the floats keep the fixed 12-digit form.
fn fidelity_json(records: &[SweepRecord], fit: &Option<ScalingFit>) -> String {
    let mut text = String::from("{\n  \"records\": [\n");
    for (i, r) in records.iter().enumerate() {
        let comma = if i + 1 < records.len() { "," } else { "" };
        writeln!(
            text,
            "    {{\"theta\": {}, \"p\": {}, \"f_unencoded\": {}, \"f_corrected\": {}}}{comma}",
            fmt_f(r.theta),
            fmt_f(r.p),
            fmt_f(r.f_unencoded),
            fmt_f(r.f_corrected)
        )
        .unwrap();
    }
    text.push_str("  ],\n");
    match fit {
        Some(f) => {
            text.push_str("  \"fit\": {\n");
            writeln!(text, "    \"window_p_lo\": {},", fmt_f(FIT_WINDOW.0)).unwrap();
            writeln!(text, "    \"window_p_hi\": {},", fmt_f(FIT_WINDOW.1)).unwrap();
            writeln!(text, "    \"window_points\": {},", f.window_points).unwrap();
            writeln!(text, "    \"slope_corrected\": {},", fmt_f(f.slope_corrected)).unwrap();
            writeln!(text, "    \"slope_unencoded\": {},", fmt_f(f.slope_unencoded)).unwrap();
            writeln!(text, "    \"c\": {},", fmt_f(f.c)).unwrap();
            writeln!(text, "    \"p_star\": {}", fmt_f(f.p_star)).unwrap();
            text.push_str("  }\n");
        }
        None => text.push_str("  \"fit\": null\n"),
    }
    text.push_str("}\n");
    text
}

fn run_search(format: Format, out: &Option<PathBuf>) -> Result<ExitCode, String> {
    let canonical = CodeCandidate::canonical();
    let hits = search_signs(canonical.support0(), canonical.support1())
        .map_err(|e| e.to_string())?;
    let report = match format {
        Format::Text => {
            let mut text = format!("found {} sign patterns\n", hits.len());
            for (i, hit) in hits.iter().enumerate() {
                let (n0, n1) = hit.negative_sign_counts();
                writeln!(
                    text,
                    "candidate {:02}: support0={} signs0={} support1={} signs1={} negatives={},{}",
                    i + 1,
                    join_indices(hit.support0()),
                    sign_string(hit.signs0()),
                    join_indices(hit.support1()),
                    sign_string(hit.signs1()),
                    n0,
                    n1
                )
                .unwrap();
            }
            text
        }
        Format::Json => {
            let exports: Vec<_> = hits.iter().map(CodeCandidate::export).collect();
            to_json_pretty(&exports)?
        }
        Format::Csv => return Err("csv output is not defined for search".into()),
    };
    emit(out, &report)?;
    Ok(ExitCode::SUCCESS)
}

fn join_indices(indices: &[usize]) -> String {
    indices
        .iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

fn sign_string(signs: &[i8]) -> String {
    signs.iter().map(|s| if *s > 0 { '+' } else { '-' }).collect()
}

fn run_bound(max_n: u32, format: Format, out: &Option<PathBuf>) -> Result<ExitCode, String> {
    let rows = min_code_length(max_n).map_err(|e| e.to_string())?;
    let report = match format {
        Format::Text => {
            let mut text = String::new();
            for row in &rows {
                let status = match (row.feasible, row.saturates) {
                    (true, true) => "feasible(saturates)",
                    (true, false) => "feasible",
                    _ => "infeasible",
                };
                writeln!(
                    text,
                    "n={} {} {} {}",
                    row.n, row.subspaces_needed, row.dimension, status
                )
                .unwrap();
            }
            text
        }
        Format::Csv => {
            let mut text = String::from("n,subspaces_needed,dimension,feasible,saturates\n");
            for row in &rows {
                writeln!(
                    text,
                    "{},{},{},{},{}",
                    row.n, row.subspaces_needed, row.dimension, row.feasible, row.saturates
                )
                .unwrap();
            }
            text
        }
        Format::Json => to_json_pretty(&rows)?,
    };
    emit(out, &report)?;
    Ok(ExitCode::SUCCESS)
}

fn to_json_pretty<T: serde::Serialize>(value: &T) -> Result<String, String> {
    serde_json::to_string_pretty(value)
        .map(|s| s + "\n")
        .map_err(|e| format!("JSON encoding failed: {e}"))
}
