//! The five-qubit perfect code: codewords, syndrome table, encoder/decoder.
//!
//! # Register and labeling conventions
//!
//! The five code qubits carry **bit labels 1..=5**, where bit 1 is the wire
//! holding the data qubit |Q⟩ at the encoder input and bits 2–5 are the four
//! ancilla wires (a, b, c, d). Bit labels count from the most-significant
//! side: bit k lives at qubit index `5 − k`, so bit 1 is amplitude-index
//! bit 4 and bit 5 is amplitude-index bit 0.
//!
//! Each codeword is a sum of eight basis states with amplitudes ±1/√8. It is
//! assembled from three-qubit Bell-type states on bits 1–3 (the three
//! most-significant qubits) tensored with two-qubit tags on bits 4–5, so a
//! basis index decomposes as `trio·4 + pair`.
//!
//! The syndrome is the four ancilla bits (a′b′c′d′) read after decoding,
//! most-significant first: syndrome value = 8a′ + 4b′ + 2c′ + d′, which is
//! simply the low four bits of the amplitude index. Each of the 16 syndromes
//! identifies one error alternative — no error, or a bit flip `B_k`, sign
//! flip `S_k`, or combined flip `BS_k = σx·σz` on one of the five qubits —
//! and the table records the residual transform left on the data qubit,
//! global sign included. The decoder is the encoder run backwards (its
//! conjugate transpose); recovery is the inverse of the residual transform.

use std::sync::OnceLock;

use num_complex::Complex64;
use serde::Serialize;

use crate::cmatrix::{CMatrix, TOL};
use crate::error::{Error, Result};
use crate::noise::PauliError;
use crate::statevec::StateVector;

/// Dimension of the five-qubit code space's ambient Hilbert space.
pub const CODE_DIM: usize = 32;

/// Number of code qubits.
pub const CODE_QUBITS: usize = 5;

/// Amplitude magnitude of every codeword entry: 1/√8.
pub const CODE_AMP: f64 = 0.353_553_390_593_273_76;

/// Maps a code bit label (1..=5, most-significant first) to its qubit index.
pub fn qubit_index_for_label(label: u8) -> Result<usize> {
    if !(1..=5).contains(&label) {
        return Err(Error::BitLabelOutOfRange { label });
    }
    Ok(5 - label as usize)
}

/// The two logical codewords as 32-entry amplitude vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct LogicalPair {
    zero_l: Vec<Complex64>,
    one_l: Vec<Complex64>,
}

impl LogicalPair {
    /// Amplitudes of |0_L⟩.
    pub fn zero_l(&self) -> &[Complex64] {
        &self.zero_l
    }

    /// Amplitudes of |1_L⟩.
    pub fn one_l(&self) -> &[Complex64] {
        &self.one_l
    }

    /// |0_L⟩ as a five-qubit state.
    pub fn zero_state(&self) -> StateVector {
        StateVector::from_amplitudes(CODE_QUBITS, self.zero_l.clone())
            .expect("codeword is normalized by construction")
    }

    /// |1_L⟩ as a five-qubit state.
    pub fn one_state(&self) -> StateVector {
        StateVector::from_amplitudes(CODE_QUBITS, self.one_l.clone())
            .expect("codeword is normalized by construction")
    }
}

/// One Bell-form term: (trio bits, relative sign inside the Bell pair,
/// overall coefficient, two-bit tag).
///
/// The term contributes `coeff·(|trio⟩ + bell_sign·|trio̅⟩) ⊗ |pair⟩`, where
/// trio̅ is the bitwise complement of the three trio bits.
type BellTerm = (u8, i8, i8, u8);

const ZERO_L_TERMS: [BellTerm; 4] = [
    (0b000, 1, 1, 0b00),
    (0b100, 1, -1, 0b11),
    (0b110, 1, 1, 0b10),
    (0b010, 1, 1, 0b01),
];

const ONE_L_TERMS: [BellTerm; 4] = [
    (0b000, -1, -1, 0b11),
    (0b100, -1, -1, 0b00),
    (0b110, -1, 1, 0b01),
    (0b010, -1, -1, 0b10),
];

fn expand_terms(terms: &[BellTerm]) -> Vec<Complex64> {
    let mut amps = vec![Complex64::new(0.0, 0.0); CODE_DIM];
    for &(trio, bell_sign, coeff, pair) in terms {
        let base = (trio as usize) * 4 + pair as usize;
        let partner = ((trio ^ 0b111) as usize) * 4 + pair as usize;
        amps[base] += Complex64::new(f64::from(coeff) * CODE_AMP, 0.0);
        amps[partner] += Complex64::new(f64::from(coeff * bell_sign) * CODE_AMP, 0.0);
    }
    amps
}

/// The codewords of the five-qubit code, expanded under the register
/// convention above.
pub fn logical_states() -> LogicalPair {
    LogicalPair {
        zero_l: expand_terms(&ZERO_L_TERMS),
        one_l: expand_terms(&ONE_L_TERMS),
    }
}

/// The residual transform a corrected error leaves on the data qubit.
///
/// Exactly six distinct transforms occur in the table. Entries are all in
/// {0, ±1}; every transform is real orthogonal, so its inverse (the recovery
/// operation) is its transpose.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Transform {
    /// α|0⟩+β|1⟩ — untouched.
    Identity,
    /// −α|1⟩+β|0⟩ — the iσy rotation.
    IY,
    /// −α|0⟩+β|1⟩.
    MinusZ,
    /// α|0⟩−β|1⟩.
    Z,
    /// −α|0⟩−β|1⟩ — a pure global sign.
    MinusI,
    /// −α|1⟩−β|0⟩.
    MinusX,
}

impl Transform {
    /// The 2×2 matrix acting on the coefficient column (α, β)ᵀ.
    pub fn matrix(self) -> [[i8; 2]; 2] {
        match self {
            Transform::Identity => [[1, 0], [0, 1]],
            Transform::IY => [[0, 1], [-1, 0]],
            Transform::MinusZ => [[-1, 0], [0, 1]],
            Transform::Z => [[1, 0], [0, -1]],
            Transform::MinusI => [[-1, 0], [0, -1]],
            Transform::MinusX => [[0, -1], [-1, 0]],
        }
    }

    /// The recovery matrix (the inverse = transpose of [`Transform::matrix`]).
    pub fn recovery(self) -> [[i8; 2]; 2] {
        let m = self.matrix();
        [[m[0][0], m[1][0]], [m[0][1], m[1][1]]]
    }

    /// Short name used in machine-readable output.
    pub fn label(self) -> &'static str {
        match self {
            Transform::Identity => "I",
            Transform::IY => "iY",
            Transform::MinusZ => "-Z",
            Transform::Z => "Z",
            Transform::MinusI => "-I",
            Transform::MinusX => "-X",
        }
    }

    /// The transformed data-qubit state, written out for table rendering.
    pub fn state_expression(self) -> &'static str {
        match self {
            Transform::Identity => "α|0⟩+β|1⟩",
            Transform::IY => "-α|1⟩+β|0⟩",
            Transform::MinusZ => "-α|0⟩+β|1⟩",
            Transform::Z => "α|0⟩-β|1⟩",
            Transform::MinusI => "-α|0⟩-β|1⟩",
            Transform::MinusX => "-α|1⟩-β|0⟩",
        }
    }

    /// Applies the transform to a coefficient pair.
    pub fn apply(self, alpha: Complex64, beta: Complex64) -> (Complex64, Complex64) {
        let m = self.matrix();
        (
            Complex64::new(f64::from(m[0][0]), 0.0) * alpha
                + Complex64::new(f64::from(m[0][1]), 0.0) * beta,
            Complex64::new(f64::from(m[1][0]), 0.0) * alpha
                + Complex64::new(f64::from(m[1][1]), 0.0) * beta,
        )
    }
}

/// One row of the code table.
#[derive(Debug, Clone, Copy)]
pub struct TableRow {
    /// Which error this syndrome identifies.
    pub error: PauliError,
    /// Syndrome value, the four ancilla bits a′b′c′d′ most-significant first.
    pub syndrome: u8,
    /// Residual transform on the data qubit after decoding.
    pub transform: Transform,
}

impl TableRow {
    /// The syndrome as a four-character bitstring "a′b′c′d′".
    pub fn syndrome_bits(&self) -> String {
        format!("{:04b}", self.syndrome)
    }
}

/// A machine-readable table row.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct TableRowExport {
    /// Error label: "None", "B1".."B5", "S1".."S5", or "BS1".."BS5".
    pub error: String,
    /// Four-character syndrome bitstring.
    pub syndrome: String,
    /// Residual-transform label: one of "I", "-I", "Z", "-Z", "iY", "-X".
    pub transform: String,
}

/// The complete 16-row syndrome table, stored in display (grouping) order:
/// the no-error row first, then rows grouped by residual transform.
#[derive(Debug, Clone)]
pub struct CodeTable {
    rows: [TableRow; 16],
}

impl CodeTable {
    /// The table of the five-qubit code.
    pub fn standard() -> &'static CodeTable {
        static TABLE: OnceLock<CodeTable> = OnceLock::new();
        TABLE.get_or_init(|| {
            use PauliError::{Bit, BitSign, Sign};
            use Transform::{Identity, IY, MinusI, MinusX, MinusZ, Z};
            let rows = [
                (PauliError::None, 0b0000, Identity),
                (BitSign(3), 0b1101, IY),
                (BitSign(5), 0b1111, MinusZ),
                (Bit(2), 0b0001, Z),
                (Sign(3), 0b1010, Z),
                (Sign(5), 0b1100, Z),
                (BitSign(2), 0b0101, Z),
                (Bit(5), 0b0011, MinusI),
                (Sign(1), 0b1000, MinusI),
                (Sign(2), 0b0100, MinusI),
                (Sign(4), 0b0010, MinusI),
                (Bit(1), 0b0110, MinusX),
                (Bit(3), 0b0111, MinusX),
                (Bit(4), 0b1011, MinusX),
                (BitSign(1), 0b1110, MinusX),
                (BitSign(4), 0b1001, MinusX),
            ];
            let table = CodeTable {
                rows: rows.map(|(error, syndrome, transform)| TableRow {
                    error,
                    syndrome,
                    transform,
                }),
            };
            table
                .validate()
                .expect("the built-in code table satisfies its invariants");
            table
        })
    }

    /// All 16 rows in display order.
    pub fn rows(&self) -> &[TableRow; 16] {
        &self.rows
    }

    /// The row diagnosing `syndrome`.
    pub fn row_for_syndrome(&self, syndrome: u8) -> Result<&TableRow> {
        self.rows
            .iter()
            .find(|row| row.syndrome == syndrome)
            .ok_or(Error::UnknownSyndrome { syndrome })
    }

    /// The row for a specific error.
    pub fn row_for_error(&self, error: PauliError) -> Option<&TableRow> {
        self.rows.iter().find(|row| row.error == error)
    }

    /// Checks the table's structural invariants: all 16 syndromes distinct,
    /// errors exactly {None} ∪ {Bₖ, Sₖ, BSₖ}, the zero syndrome on the
    /// no-error row with identity transform, and residual-transform
    /// multiplicities {1, 1, 1, 4, 4, 5}.
    pub fn validate(&self) -> Result<()> {
        let mut syndrome_mask = 0u16;
        for row in &self.rows {
            if row.syndrome > 15 {
                return Err(Error::UnknownSyndrome {
                    syndrome: row.syndrome,
                });
            }
            syndrome_mask |= 1 << row.syndrome;
        }
        if syndrome_mask != 0xffff {
            return Err(Error::InvalidArgument {
                reason: "code table does not cover all 16 syndromes".into(),
            });
        }
        for expected in PauliError::all() {
            if self.row_for_error(expected).is_none() {
                return Err(Error::InvalidArgument {
                    reason: format!("code table is missing error {}", expected.label()),
                });
            }
        }
        let zero_row = self.row_for_syndrome(0)?;
        if zero_row.error != PauliError::None || zero_row.transform != Transform::Identity {
            return Err(Error::InvalidArgument {
                reason: "zero syndrome must carry the no-error row with identity transform".into(),
            });
        }
        let mut counts = std::collections::BTreeMap::new();
        for row in &self.rows {
            *counts.entry(row.transform.label()).or_insert(0usize) += 1;
        }
        let mut multiplicities: Vec<usize> = counts.values().copied().collect();
        multiplicities.sort_unstable();
        if multiplicities != [1, 1, 1, 4, 4, 5] {
            return Err(Error::InvalidArgument {
                reason: format!("unexpected residual-transform multiplicities {multiplicities:?}"),
            });
        }
        Ok(())
    }

    /// The rows as machine-readable exports, in display order.
    pub fn export_rows(&self) -> Vec<TableRowExport> {
        self.rows
            .iter()
            .map(|row| TableRowExport {
                error: row.error.label(),
                syndrome: row.syndrome_bits(),
                transform: row.transform.label().to_string(),
            })
            .collect()
    }
}

/// One rendered syndrome-table row for display.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RenderedRow {
    /// Error label.
    pub error: String,
    /// Four-character syndrome bitstring.
    pub syndrome: String,
    /// Residual-transform label.
    pub transform: String,
    /// Residual data-qubit state, e.g. "-α|1⟩+β|0⟩".
    pub resulting_state: String,
}

/// Renders the 16-row syndrome table in display order.
pub fn syndrome_table() -> Vec<RenderedRow> {
    CodeTable::standard()
        .rows()
        .iter()
        .map(|row| RenderedRow {
            error: row.error.label(),
            syndrome: row.syndrome_bits(),
            transform: row.transform.label().to_string(),
            resulting_state: row.transform.state_expression().to_string(),
        })
        .collect()
}

/// The 32×32 encoding unitary together with its adjoint (the decoder).
#[derive(Debug, Clone)]
pub struct EncoderUnitary {
    matrix: CMatrix,
    decoder: CMatrix,
}

impl EncoderUnitary {
    /// The encoder matrix U.
    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    /// The decoder U† — the same circuit run backwards.
    pub fn decoder(&self) -> &CMatrix {
        &self.decoder
    }
}

/// Applies an error operator to a 32-entry amplitude vector.
fn apply_error_to_amplitudes(error: PauliError, amps: &[Complex64]) -> Result<Vec<Complex64>> {
    let (flip_mask, sign_mask) = error.action_masks()?;
    let mut out = vec![Complex64::new(0.0, 0.0); amps.len()];
    for (i, &a) in amps.iter().enumerate() {
        let j = i ^ flip_mask;
        let sign = if (i & sign_mask).count_ones() % 2 == 1 {
            -1.0
        } else {
            1.0
        };
        out[j] += a * sign;
    }
    Ok(out)
}

/// Assembles the encoder from the code table.
///
/// Column `q·16 + s` of U is defined as `E_s |(R_s† q)_L⟩`: the syndrome-`s`
/// error applied to the logical embedding of the recovery-rotated basis
/// state. This is the unique unitary extension of "|q⟩|0000⟩ encodes to the
/// q-th codeword" under which decoding an `E_s`-corrupted codeword yields
/// the ancillas in |s⟩ exactly and leaves the data qubit in `R_s(α,β)`,
/// global sign included.
pub fn build_encoder(table: &CodeTable) -> Result<EncoderUnitary> {
    let pair = logical_states();
    let mut u = CMatrix::zeros(CODE_DIM);
    for row in table.rows() {
        let r = row.transform.matrix();
        for q in 0..2usize {
            // R† = Rᵀ for these real matrices, so R†|q⟩ has coefficients
            // (R[q][0], R[q][1]).
            let c0 = f64::from(r[q][0]);
            let c1 = f64::from(r[q][1]);
            let mut logical = vec![Complex64::new(0.0, 0.0); CODE_DIM];
            for i in 0..CODE_DIM {
                logical[i] = pair.zero_l[i] * c0 + pair.one_l[i] * c1;
            }
            let column = apply_error_to_amplitudes(row.error, &logical)?;
            let col_index = q * 16 + row.syndrome as usize;
            for (i, &v) in column.iter().enumerate() {
                u[(i, col_index)] = v;
            }
        }
    }
    u.require_unitary(TOL)?;
    let decoder = u.adjoint();
    Ok(EncoderUnitary { matrix: u, decoder })
}

/// The shared encoder built from [`CodeTable::standard`].
pub fn standard_encoder() -> &'static EncoderUnitary {
    static ENCODER: OnceLock<EncoderUnitary> = OnceLock::new();
    ENCODER.get_or_init(|| {
        build_encoder(CodeTable::standard())
            .expect("the standard table assembles to a unitary encoder")
    })
}

fn check_coefficients(alpha: Complex64, beta: Complex64) -> Result<()> {
    let norm_sq = alpha.norm_sqr() + beta.norm_sqr();
    if (norm_sq - 1.0).abs() > 1e-9 {
        return Err(Error::NotNormalized { norm_sq });
    }
    Ok(())
}

/// Encodes a data qubit α|0⟩+β|1⟩ into α|0_L⟩+β|1_L⟩.
pub fn encode(alpha: Complex64, beta: Complex64) -> Result<StateVector> {
    check_coefficients(alpha, beta)?;
    let pair = logical_states();
    let mut amps = vec![Complex64::new(0.0, 0.0); CODE_DIM];
    for i in 0..CODE_DIM {
        amps[i] = pair.zero_l[i] * alpha + pair.one_l[i] * beta;
    }
    let raw = StateVector::unnormalized(CODE_QUBITS, amps)?;
    raw.normalize()
}

/// One projective branch of the decoded ancilla readout.
#[derive(Debug, Clone)]
pub struct DiagnosedBranch {
    /// Ancilla readout a′b′c′d′, most-significant first.
    pub syndrome: u8,
    /// Probability of this readout.
    pub probability: f64,
    /// The data-qubit state conditioned on the readout (normalized when the
    /// branch has nonzero probability).
    pub q_state: StateVector,
}

/// Runs the decoder and enumerates all 16 ancilla readouts with their
/// probabilities and conditional data-qubit states.
///
/// For an input of the form `E_s(α|0_L⟩+β|1_L⟩)` exactly one branch has
/// probability 1, its syndrome is `s`, and its data-qubit state is
/// `R_s(α|0⟩+β|1⟩)` including the global sign.
pub fn decode_and_diagnose(state: &StateVector) -> Result<Vec<DiagnosedBranch>> {
    if state.num_qubits() != CODE_QUBITS {
        return Err(Error::DimensionMismatch {
            expected: CODE_DIM,
            got: state.amplitudes().len(),
        });
    }
    let norm_sq = state.norm_sq();
    if (norm_sq - 1.0).abs() > 1e-9 {
        return Err(Error::NotNormalized { norm_sq });
    }
    let decoded = state.apply_block_unitary(standard_encoder().decoder(), &[4, 3, 2, 1, 0])?;
    let mut branches = Vec::with_capacity(16);
    for syndrome in 0..16u8 {
        let v0 = decoded.amplitude(syndrome as usize);
        let v1 = decoded.amplitude(16 + syndrome as usize);
        let probability = v0.norm_sqr() + v1.norm_sqr();
        let raw = StateVector::unnormalized(1, vec![v0, v1])?;
        let q_state = if probability > 1e-300 {
            raw.normalize()?
        } else {
            raw
        };
        branches.push(DiagnosedBranch {
            syndrome,
            probability,
            q_state,
        });
    }
    Ok(branches)
}

/// Applies the recovery operation for `syndrome` to a one-qubit state.
pub fn recover(q_state: &StateVector, syndrome: u8, table: &CodeTable) -> Result<StateVector> {
    if q_state.num_qubits() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: q_state.amplitudes().len(),
        });
    }
    let row = table.row_for_syndrome(syndrome)?;
    let recovery = CMatrix::from_real_2x2(row.transform.recovery());
    q_state.apply_block_unitary(&recovery, &[0])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_amplitude_pair, rng};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// The codeword supports and sign patterns, written out as (index, sign)
    /// pairs for direct comparison with the Bell-form expansion.
    const ZERO_L_EXPECTED: [(usize, f64); 8] = [
        (0, 1.0),
        (6, 1.0),
        (9, 1.0),
        (15, -1.0),
        (19, -1.0),
        (21, 1.0),
        (26, 1.0),
        (28, 1.0),
    ];
    const ONE_L_EXPECTED: [(usize, f64); 8] = [
        (3, -1.0),
        (5, -1.0),
        (10, -1.0),
        (12, 1.0),
        (16, -1.0),
        (22, 1.0),
        (25, 1.0),
        (31, 1.0),
    ];

    #[test]
    fn codeword_expansion_matches_expected_supports_and_signs() {
        let pair = logical_states();
        for (expected, amps) in [
            (&ZERO_L_EXPECTED, pair.zero_l()),
            (&ONE_L_EXPECTED, pair.one_l()),
        ] {
            let mut nonzero = 0;
            for i in 0..CODE_DIM {
                let a = amps[i];
                if a.norm() > 1e-15 {
                    nonzero += 1;
                    let sign = expected
                        .iter()
                        .find(|(idx, _)| *idx == i)
                        .map(|(_, s)| *s)
                        .unwrap_or_else(|| panic!("unexpected support index {i}"));
                    assert!((a - c(sign * CODE_AMP, 0.0)).norm() < 1e-15);
                }
            }
            assert_eq!(nonzero, 8);
        }
    }

    #[test]
    fn all_zero_basis_amplitude_is_positive() {
        let pair = logical_states();
        assert!((pair.zero_l()[0] - c(CODE_AMP, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn negative_amplitude_counts_are_two_and_four() {
        let pair = logical_states();
        let count_neg = |amps: &[Complex64]| amps.iter().filter(|a| a.re < -1e-15).count();
        assert_eq!(count_neg(pair.zero_l()), 2);
        assert_eq!(count_neg(pair.one_l()), 4);
    }

    #[test]
    fn codewords_are_normalized_and_orthogonal() {
        let pair = logical_states();
        let zero = pair.zero_state();
        let one = pair.one_state();
        assert!((zero.norm_sq() - 1.0).abs() < 1e-12);
        assert!((one.norm_sq() - 1.0).abs() < 1e-12);
        assert!(zero.inner_product(&one).unwrap().norm() < 1e-12);
    }

    #[test]
    fn table_satisfies_structural_invariants() {
        CodeTable::standard().validate().unwrap();
    }

    #[test]
    fn table_rows_carry_the_expected_triples() {
        let expected: [(&str, &str, &str); 16] = [
            ("None", "0000", "I"),
            ("BS3", "1101", "iY"),
            ("BS5", "1111", "-Z"),
            ("B2", "0001", "Z"),
            ("S3", "1010", "Z"),
            ("S5", "1100", "Z"),
            ("BS2", "0101", "Z"),
            ("B5", "0011", "-I"),
            ("S1", "1000", "-I"),
            ("S2", "0100", "-I"),
            ("S4", "0010", "-I"),
            ("B1", "0110", "-X"),
            ("B3", "0111", "-X"),
            ("B4", "1011", "-X"),
            ("BS1", "1110", "-X"),
            ("BS4", "1001", "-X"),
        ];
        let rows = CodeTable::standard().export_rows();
        assert_eq!(rows.len(), 16);
        for (row, (error, syndrome, transform)) in rows.iter().zip(expected) {
            assert_eq!(row.error, error);
            assert_eq!(row.syndrome, syndrome);
            assert_eq!(row.transform, transform);
        }
    }

    #[test]
    fn rendered_table_includes_state_expressions() {
        let rendered = syndrome_table();
        assert_eq!(rendered.len(), 16);
        let s3 = rendered.iter().find(|r| r.error == "S3").unwrap();
        assert_eq!(s3.syndrome, "1010");
        assert_eq!(s3.resulting_state, "α|0⟩-β|1⟩");
        let bs5 = rendered.iter().find(|r| r.error == "BS5").unwrap();
        assert_eq!(bs5.syndrome, "1111");
        assert_eq!(bs5.resulting_state, "-α|0⟩+β|1⟩");
        let mut syndromes: Vec<&str> = rendered.iter().map(|r| r.syndrome.as_str()).collect();
        syndromes.sort_unstable();
        syndromes.dedup();
        assert_eq!(syndromes.len(), 16);
    }

    #[test]
    fn encoder_is_unitary_and_fixes_the_codeword_columns() {
        let enc = standard_encoder();
        assert!(enc.matrix().unitarity_deviation() < 1e-12);
        let pair = logical_states();
        // Column for (q=0, s=0000) is |0_L⟩; for (q=1, s=0000) it is |1_L⟩.
        for i in 0..CODE_DIM {
            assert!((enc.matrix()[(i, 0)] - pair.zero_l()[i]).norm() < 1e-12);
            assert!((enc.matrix()[(i, 16)] - pair.one_l()[i]).norm() < 1e-12);
        }
    }

    #[test]
    fn decoder_is_the_adjoint_of_the_encoder() {
        let enc = standard_encoder();
        assert!(enc.decoder().max_abs_diff(&enc.matrix().adjoint()) < 1e-15);
        let product = enc.decoder().mul(enc.matrix()).unwrap();
        assert!(product.max_abs_diff(&CMatrix::identity(CODE_DIM)) < 1e-12);
    }

    #[test]
    fn encoder_linearly_extends_to_superpositions() {
        // U on (α|0⟩+β|1⟩)|0000⟩ = α|0_L⟩+β|1_L⟩.
        let (alpha, beta) = (c(0.6, 0.0), c(0.0, 0.8));
        let mut input = vec![Complex64::new(0.0, 0.0); CODE_DIM];
        input[0] = alpha;
        input[16] = beta;
        let product = standard_encoder()
            .matrix()
            .matvec(&input)
            .unwrap();
        let direct = encode(alpha, beta).unwrap();
        for i in 0..CODE_DIM {
            assert!((product[i] - direct.amplitude(i)).norm() < 1e-12);
        }
    }

    #[test]
    fn encode_basis_cases_give_the_codewords() {
        let pair = logical_states();
        let zero = encode(c(1.0, 0.0), c(0.0, 0.0)).unwrap();
        let one = encode(c(0.0, 0.0), c(1.0, 0.0)).unwrap();
        for i in 0..CODE_DIM {
            assert!((zero.amplitude(i) - pair.zero_l()[i]).norm() < 1e-12);
            assert!((one.amplitude(i) - pair.one_l()[i]).norm() < 1e-12);
        }
    }

    #[test]
    fn encode_superposition_has_unit_norm_and_equal_overlaps() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let encoded = encode(c(s, 0.0), c(s, 0.0)).unwrap();
        assert!((encoded.norm_sq() - 1.0).abs() < 1e-12);
        let pair = logical_states();
        let o0 = pair.zero_state().inner_product(&encoded).unwrap();
        let o1 = pair.one_state().inner_product(&encoded).unwrap();
        assert!((o0 - c(s, 0.0)).norm() < 1e-12);
        assert!((o1 - c(s, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn encode_rejects_unnormalized_coefficients() {
        assert!(encode(c(1.0, 0.0), c(1.0, 0.0)).is_err());
    }

    #[test]
    fn clean_decode_lands_on_the_zero_syndrome() {
        let mut r = rng(11);
        for _ in 0..20 {
            let (alpha, beta) = random_amplitude_pair(&mut r);
            let branches = decode_and_diagnose(&encode(alpha, beta).unwrap()).unwrap();
            assert_eq!(branches.len(), 16);
            let zero_branch = &branches[0];
            assert_eq!(zero_branch.syndrome, 0);
            assert!((zero_branch.probability - 1.0).abs() < 1e-12);
            assert!((zero_branch.q_state.amplitude(0) - alpha).norm() < 1e-12);
            assert!((zero_branch.q_state.amplitude(1) - beta).norm() < 1e-12);
            for branch in &branches[1..] {
                assert!(branch.probability < 1e-12);
            }
        }
    }

    #[test]
    fn combined_flip_on_bit_three_gives_its_syndrome_and_residual() {
        let (alpha, beta) = (c(0.6, 0.0), c(0.8, 0.0));
        let encoded = encode(alpha, beta).unwrap();
        let corrupted = crate::noise::pauli_error(PauliError::BitSign(3), &encoded).unwrap();
        let branches = decode_and_diagnose(&corrupted).unwrap();
        let hit = branches
            .iter()
            .find(|b| b.probability > 0.5)
            .expect("a certain branch");
        assert_eq!(hit.syndrome, 0b1101);
        assert!((hit.probability - 1.0).abs() < 1e-12);
        // Residual iY: −α|1⟩+β|0⟩.
        assert!((hit.q_state.amplitude(0) - beta).norm() < 1e-12);
        assert!((hit.q_state.amplitude(1) + alpha).norm() < 1e-12);
    }

    #[test]
    fn bit_flip_on_bit_two_gives_its_syndrome_and_residual() {
        let (alpha, beta) = (c(0.0, 0.6), c(0.8, 0.0));
        let encoded = encode(alpha, beta).unwrap();
        let corrupted = crate::noise::pauli_error(PauliError::Bit(2), &encoded).unwrap();
        let branches = decode_and_diagnose(&corrupted).unwrap();
        let hit = &branches[0b0001];
        assert_eq!(hit.syndrome, 0b0001);
        assert!((hit.probability - 1.0).abs() < 1e-12);
        // Residual Z: α|0⟩−β|1⟩.
        assert!((hit.q_state.amplitude(0) - alpha).norm() < 1e-12);
        assert!((hit.q_state.amplitude(1) + beta).norm() < 1e-12);
    }

    #[test]
    fn recover_inverts_each_tabulated_residual() {
        let table = CodeTable::standard();
        let (alpha, beta) = (c(0.48, 0.36), c(-0.6, 0.52));
        let norm = (alpha.norm_sqr() + beta.norm_sqr()).sqrt();
        let (alpha, beta) = (alpha / norm, beta / norm);
        for row in table.rows() {
            let (ra, rb) = row.transform.apply(alpha, beta);
            let residual = StateVector::from_amplitudes(1, vec![ra, rb]).unwrap();
            let recovered = recover(&residual, row.syndrome, table).unwrap();
            assert!(
                (recovered.amplitude(0) - alpha).norm() < 1e-12
                    && (recovered.amplitude(1) - beta).norm() < 1e-12,
                "recovery failed for {}",
                row.error.label()
            );
        }
    }

    #[test]
    fn recover_examples_from_the_table() {
        let table = CodeTable::standard();
        let (alpha, beta) = (c(0.6, 0.0), c(0.8, 0.0));

        // Identity syndrome: untouched.
        let plain = StateVector::from_amplitudes(1, vec![alpha, beta]).unwrap();
        let out = recover(&plain, 0b0000, table).unwrap();
        assert!((out.amplitude(0) - alpha).norm() < 1e-15);

        // Syndrome 1101 undoes −α|1⟩+β|0⟩.
        let residual = StateVector::from_amplitudes(1, vec![beta, -alpha]).unwrap();
        let out = recover(&residual, 0b1101, table).unwrap();
        assert!((out.amplitude(0) - alpha).norm() < 1e-15);
        assert!((out.amplitude(1) - beta).norm() < 1e-15);

        // Syndrome 1000 undoes the pure global sign −α|0⟩−β|1⟩.
        let residual = StateVector::from_amplitudes(1, vec![-alpha, -beta]).unwrap();
        let out = recover(&residual, 0b1000, table).unwrap();
        assert!((out.amplitude(0) - alpha).norm() < 1e-15);
        assert!((out.amplitude(1) - beta).norm() < 1e-15);
    }

    #[test]
    fn recover_rejects_unknown_syndromes() {
        let table = CodeTable::standard();
        let state = StateVector::basis_state(1, 0).unwrap();
        assert!(matches!(
            recover(&state, 16, table),
            Err(Error::UnknownSyndrome { syndrome: 16 })
        ));
    }

    #[test]
    fn bit_labels_map_to_qubit_indices_most_significant_first() {
        assert_eq!(qubit_index_for_label(1).unwrap(), 4);
        assert_eq!(qubit_index_for_label(5).unwrap(), 0);
        assert!(qubit_index_for_label(0).is_err());
        assert!(qubit_index_for_label(6).is_err());
    }
}
