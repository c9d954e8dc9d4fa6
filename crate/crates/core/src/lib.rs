//! Simulation and verification of the five-qubit perfect quantum
//! error-correcting code.
//!
//! One qubit of information is spread over five so that any single-qubit
//! fault — a bit flip, a sign flip, or both at once — moves the state into
//! one of 16 mutually orthogonal subspaces. Decoding reads off which one
//! (a four-bit syndrome) and applies a fixed single-qubit recovery, restoring
//! the message exactly, global sign included. The crate provides:
//!
//! * [`statevec`] — a dense state-vector simulator for up to 12 qubits with
//!   controlled gates and multi-qubit block unitaries.
//! * [`code5`] — the codewords, the encoder/decoder circuit as an explicit
//!   unitary, the 16-row syndrome table, and the recovery operators.
//! * [`noise`] — continuous system–environment couplings `exp(-iθH)`, exact
//!   corrected/unencoded fidelities, and the fidelity-scaling sweep showing
//!   the corrected channel's quadratic error suppression.
//! * [`codesearch`] — the structural conditions that pin the code down
//!   (parity balance, orthogonality of all error images, the counting bound
//!   2(3n+1) ≤ 2ⁿ) and a brute-force rediscovery of the codeword signs.
//! * [`verify`] — seeded, deterministic self-check suites used by the CLI.
//!
//! # Conventions
//!
//! Basis states of an n-qubit register are indexed so that qubit 0 is the
//! least-significant bit of the amplitude index. Code bits carry the
//! conventional labels 1..=5 with bit 1 the most significant; label k lives
//! on qubit 5 − k, so `|b₁b₂b₃b₄b₅⟩` reads left-to-right as the binary
//! index. The unencoded message enters and leaves on bit 1.
//!
//! # Example
//!
//! ```
//! use fiveq::code5::{decode_and_diagnose, encode, recover, CodeTable};
//! use fiveq::noise::{pauli_error, PauliError};
//! use num_complex::Complex64;
//!
//! let alpha = Complex64::new(0.6, 0.0);
//! let beta = Complex64::new(0.0, 0.8);
//! let encoded = encode(alpha, beta)?;
//!
//! // Flip bit 2 of the register, then diagnose and undo it.
//! let corrupted = pauli_error(PauliError::Bit(2), &encoded)?;
//! let branches = decode_and_diagnose(&corrupted)?;
//! let hit = branches.iter().find(|b| b.probability > 0.5).unwrap();
//! assert_eq!(hit.syndrome, 0b0001);
//!
//! let fixed = recover(&hit.q_state, hit.syndrome, CodeTable::standard())?;
//! assert!((fixed.amplitude(0) - alpha).norm() < 1e-12);
//! assert!((fixed.amplitude(1) - beta).norm() < 1e-12);
//! # Ok::<(), fiveq::Error>(())
//! ```

pub mod cmatrix;
pub mod code5;
pub mod codesearch;
pub mod error;
pub mod noise;
pub mod random;
pub mod statevec;
pub mod verify;

pub use cmatrix::{CMatrix, TOL};
pub use error::{Error, Result};
pub use statevec::StateVector;
