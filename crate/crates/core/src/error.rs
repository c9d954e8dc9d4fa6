//! Error type shared by every module in the crate.

use thiserror::Error;

/// Errors raised by state construction, gate application, code assembly,
/// noise channels, and the sign search.
#[derive(Debug, Error)]
pub enum Error {
    /// A qubit index addressed a register that does not contain it.
    #[error("qubit index {index} out of range for a {num_qubits}-qubit register")]
    QubitOutOfRange { index: usize, num_qubits: usize },

    /// A register size outside the supported 1..=12 range.
    #[error("unsupported qubit count {num_qubits} (supported range is 1..=12)")]
    UnsupportedQubitCount { num_qubits: usize },

    /// The same qubit appeared twice in one gate or register list.
    #[error("qubit index {index} listed more than once")]
    DuplicateQubit { index: usize },

    /// A vector or matrix had the wrong dimension for the operation.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// A matrix failed its unitarity check.
    #[error("matrix is not unitary (max deviation {deviation:.3e})")]
    NotUnitary { deviation: f64 },

    /// A matrix failed its Hermiticity check.
    #[error("matrix is not Hermitian (max deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    /// A state that must be normalized was not.
    #[error("state is not normalized (squared norm {norm_sq})")]
    NotNormalized { norm_sq: f64 },

    /// A code-bit label outside the 1..=5 range used by the five-qubit code.
    #[error("code bit label {label} out of range 1..=5")]
    BitLabelOutOfRange { label: u8 },

    /// A syndrome value with no row in the code table.
    #[error("syndrome {syndrome:04b} not present in the code table")]
    UnknownSyndrome { syndrome: u8 },

    /// A code candidate that violates its structural constraints.
    #[error("invalid code candidate: {reason}")]
    InvalidCandidate { reason: String },

    /// A coupling strength, grid, or count that violates an operation's
    /// preconditions.
    #[error("invalid argument: {reason}")]
    InvalidArgument { reason: String },
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
