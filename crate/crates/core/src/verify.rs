//! Randomized self-verification suites.
//!
//! Each suite exercises one load-bearing invariant of the library with
//! freshly drawn random inputs and reports a pass/fail outcome plus a short
//! human-readable detail (typically the worst deviation observed). The
//! suites draw from independent, deterministic random streams derived from
//! a single seed, so a given (seed, trials) configuration always examines
//! exactly the same inputs and produces byte-identical reports.

use serde::Serialize;

use crate::cmatrix::TOL;
use crate::code5::{decode_and_diagnose, encode, recover, CodeTable};
use crate::codesearch::{check_balance, check_qec, CodeCandidate};
use crate::noise::{corrected_fidelity, env_decomposition, env_interaction, EnvChannel};
use crate::random::{random_amplitude_pair, random_hermitian4, rng_stream, SeededRng};

/// Result of one verification suite.
#[derive(Debug, Clone, Serialize)]
pub struct SuiteOutcome {
    /// Stable suite identifier.
    pub name: &'static str,
    /// Whether every trial stayed within tolerance.
    pub passed: bool,
    /// Worst-case deviation or a short summary of what was checked.
    pub detail: String,
}

/// Runs all verification suites with `trials` random trials each where
/// applicable, returning their outcomes in a fixed order.
pub fn run_all_suites(seed: u64, trials: usize) -> Vec<SuiteOutcome> {
    vec![
        round_trip_suite(rng_stream(seed, 0), trials),
        error_correction_suite(rng_stream(seed, 1), trials),
        gram_identity_suite(),
        parity_balance_suite(),
        env_decomposition_suite(rng_stream(seed, 4), trials),
        single_interaction_suite(rng_stream(seed, 5), trials),
    ]
}

fn outcome(name: &'static str, passed: bool, detail: String) -> SuiteOutcome {
    SuiteOutcome {
        name,
        passed,
        detail,
    }
}

/// Encode → decode with no noise: one branch, zero syndrome, exact state.
fn round_trip_suite(mut rng: SeededRng, trials: usize) -> SuiteOutcome {
    let mut worst = 0.0f64;
    for _ in 0..trials {
        let (alpha, beta) = random_amplitude_pair(&mut rng);
        let encoded = match encode(alpha, beta) {
            Ok(state) => state,
            Err(e) => return outcome("round-trip", false, format!("encode failed: {e}")),
        };
        let branches = match decode_and_diagnose(&encoded) {
            Ok(b) => b,
            Err(e) => return outcome("round-trip", false, format!("decode failed: {e}")),
        };
        for branch in &branches {
            if branch.syndrome == 0 {
                worst = worst.max((branch.probability - 1.0).abs());
                let dev = (branch.q_state.amplitude(0) - alpha)
                    .norm()
                    .max((branch.q_state.amplitude(1) - beta).norm());
                worst = worst.max(dev);
            } else {
                worst = worst.max(branch.probability);
            }
        }
    }
    outcome(
        "round-trip",
        worst < TOL,
        format!("{trials} random states, max deviation {worst:.3e}"),
    )
}

/// Every tabulated error on every random state is diagnosed and undone
/// exactly, global sign included.
fn error_correction_suite(mut rng: SeededRng, trials: usize) -> SuiteOutcome {
    let table = CodeTable::standard();
    let mut worst = 0.0f64;
    for _ in 0..trials {
        let (alpha, beta) = random_amplitude_pair(&mut rng);
        let encoded = encode(alpha, beta).expect("normalized pair encodes");
        for row in table.rows() {
            let corrupted = crate::noise::pauli_error(row.error, &encoded)
                .expect("tabulated errors act on the code register");
            let branches = decode_and_diagnose(&corrupted).expect("decode succeeds");
            for branch in &branches {
                if branch.syndrome == row.syndrome {
                    worst = worst.max((branch.probability - 1.0).abs());
                    let fixed = recover(&branch.q_state, branch.syndrome, table)
                        .expect("tabulated syndrome recovers");
                    let dev = (fixed.amplitude(0) - alpha)
                        .norm()
                        .max((fixed.amplitude(1) - beta).norm());
                    worst = worst.max(dev);
                } else {
                    worst = worst.max(branch.probability);
                }
            }
        }
    }
    outcome(
        "error-correction",
        worst < TOL,
        format!("16 errors x {trials} random states, max deviation {worst:.3e}"),
    )
}

/// The 32 error images of the codewords form an orthonormal set.
fn gram_identity_suite() -> SuiteOutcome {
    match check_qec(&CodeCandidate::canonical()) {
        Ok(report) => outcome(
            "gram-identity",
            report.verdict,
            format!(
                "max off-diagonal {:.3e}, max diagonal deviation {:.3e}",
                report.max_off_diagonal, report.max_diagonal_deviation
            ),
        ),
        Err(e) => outcome("gram-identity", false, format!("oracle failed: {e}")),
    }
}

/// Both codeword supports split evenly across every bit-pair parity class.
fn parity_balance_suite() -> SuiteOutcome {
    let report = check_balance(&CodeCandidate::canonical());
    outcome(
        "parity-balance",
        report.pass,
        if report.pass {
            "25 label pairs x 2 codewords, all class counts equal".to_string()
        } else {
            format!("{} violated label pairs", report.violations.len())
        },
    )
}

/// Random joint unitaries decompose into error amplitudes that satisfy the
/// unitarity relations and rebuild the observed columns.
fn env_decomposition_suite(mut rng: SeededRng, trials: usize) -> SuiteOutcome {
    let mut worst = 0.0f64;
    for _ in 0..trials {
        let generator = random_hermitian4(&mut rng);
        let channel = match EnvChannel::with_generator(0.7, generator) {
            Ok(c) => c,
            Err(e) => return outcome("env-decomposition", false, format!("channel: {e}")),
        };
        let joint = match env_interaction(&channel) {
            Ok(u) => u,
            Err(e) => return outcome("env-decomposition", false, format!("interaction: {e}")),
        };
        let decomposition = match env_decomposition(&joint) {
            Ok(d) => d,
            Err(e) => return outcome("env-decomposition", false, format!("decompose: {e}")),
        };
        worst = worst.max(decomposition.unitarity_deviation());
        let (col0, col1) = decomposition.reference_columns();
        for row in 0..4 {
            worst = worst.max((col0[row] - joint[(row, 0)]).norm());
            worst = worst.max((col1[row] - joint[(row, 2)]).norm());
        }
    }
    outcome(
        "env-decomposition",
        worst < TOL,
        format!("{trials} random couplings, max deviation {worst:.3e}"),
    )
}

/// A single environment coupling of any strength on any one code qubit is
/// corrected perfectly.
fn single_interaction_suite(mut rng: SeededRng, trials: usize) -> SuiteOutcome {
    use rand::Rng;
    let mut worst = 0.0f64;
    for _ in 0..trials {
        let theta = rng.gen_range(0.0..std::f64::consts::PI);
        let position = rng.gen_range(0..5usize);
        let generator = random_hermitian4(&mut rng);
        let (alpha, beta) = random_amplitude_pair(&mut rng);

        let channel = match EnvChannel::with_generator(theta, generator) {
            Ok(c) => c,
            Err(e) => return outcome("single-interaction", false, format!("channel: {e}")),
        };
        let mut channels = vec![EnvChannel::idle(); 5];
        channels[position] = channel;

        let fidelity = match corrected_fidelity(alpha, beta, &channels) {
            Ok(f) => f,
            Err(e) => return outcome("single-interaction", false, format!("fidelity: {e}")),
        };
        worst = worst.max((fidelity - 1.0).abs());
    }
    outcome(
        "single-interaction",
        worst < TOL,
        format!("{trials} random single couplings, max fidelity deficit {worst:.3e}"),
    )
}
