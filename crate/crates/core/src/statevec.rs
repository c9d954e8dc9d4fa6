//! Dense state-vector simulation core.
//!
//! A [`StateVector`] over `n` qubits stores `2^n` complex amplitudes indexed
//! so that **qubit `j` is bit `j` of the amplitude index** — qubit 0 is the
//! least-significant bit. Wherever an operation takes an ordered list of
//! qubits, the **first listed qubit supplies the most-significant bit** of
//! the operator's local index; register lists therefore read in the same
//! big-endian order as ket labels like |q₄q₃q₂q₁q₀⟩.
//!
//! States are immutable: every operation returns a fresh value. All states
//! are normalized except the branches returned by [`StateVector::project_qubit`],
//! which are deliberately left unnormalized (their squared norm *is* the
//! branch probability) and carry a flag saying so.

use num_complex::Complex64;

use crate::cmatrix::{CMatrix, TOL};
use crate::error::{Error, Result};

/// Largest register size the dense representation accepts.
pub const MAX_QUBITS: usize = 12;

/// Control polarity of a controlled gate: fire when the control qubit is
/// |0⟩ (empty circle) or when it is |1⟩ (filled circle).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ControlPolarity {
    /// Apply the gate on the |0⟩ branch of the control qubit.
    OnZero,
    /// Apply the gate on the |1⟩ branch of the control qubit.
    OnOne,
}

/// A gate: a 2×2 or 4×4 unitary, its target qubits, and optional controls.
#[derive(Debug, Clone)]
pub struct GateSpec {
    matrix: CMatrix,
    targets: Vec<usize>,
    controls: Vec<(usize, ControlPolarity)>,
}

impl GateSpec {
    /// Builds a gate, checking that the matrix is 2×2 or 4×4 and unitary,
    /// that the target count matches the matrix dimension, and that targets
    /// and controls are mutually disjoint.
    pub fn new(
        matrix: CMatrix,
        targets: Vec<usize>,
        controls: Vec<(usize, ControlPolarity)>,
    ) -> Result<Self> {
        let dim = matrix.dim();
        if dim != 2 && dim != 4 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                got: dim,
            });
        }
        if 1 << targets.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: 1 << targets.len(),
            });
        }
        matrix.require_unitary(TOL)?;
        let mut seen = Vec::new();
        for &q in targets.iter().chain(controls.iter().map(|(q, _)| q)) {
            if seen.contains(&q) {
                return Err(Error::DuplicateQubit { index: q });
            }
            seen.push(q);
        }
        Ok(GateSpec {
            matrix,
            targets,
            controls,
        })
    }

    /// Convenience constructor for an uncontrolled single-qubit gate.
    pub fn single(matrix: CMatrix, target: usize) -> Result<Self> {
        GateSpec::new(matrix, vec![target], vec![])
    }

    /// The gate matrix.
    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    /// Target qubits, most-significant first.
    pub fn targets(&self) -> &[usize] {
        &self.targets
    }

    /// Control qubits with their polarities.
    pub fn controls(&self) -> &[(usize, ControlPolarity)] {
        &self.controls
    }
}

/// A pure state of `num_qubits` qubits as a dense amplitude vector.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amplitudes: Vec<Complex64>,
    normalized: bool,
}

impl StateVector {
    /// The computational basis state |index⟩ on `num_qubits` qubits.
    pub fn basis_state(num_qubits: usize, index: usize) -> Result<Self> {
        check_qubit_count(num_qubits)?;
        let dim = 1usize << num_qubits;
        if index >= dim {
            return Err(Error::QubitOutOfRange {
                index,
                num_qubits,
            });
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(StateVector {
            num_qubits,
            amplitudes,
            normalized: true,
        })
    }

    /// Builds a state from explicit amplitudes, requiring unit norm within
    /// the crate tolerance.
    pub fn from_amplitudes(num_qubits: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        let state = StateVector::unnormalized(num_qubits, amplitudes)?;
        let norm_sq = state.norm_sq();
        if (norm_sq - 1.0).abs() > TOL {
            return Err(Error::NotNormalized { norm_sq });
        }
        Ok(StateVector {
            normalized: true,
            ..state
        })
    }

    /// Builds an explicitly unnormalized state (e.g. a projection branch).
    pub fn unnormalized(num_qubits: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        check_qubit_count(num_qubits)?;
        let dim = 1usize << num_qubits;
        if amplitudes.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: amplitudes.len(),
            });
        }
        Ok(StateVector {
            num_qubits,
            amplitudes,
            normalized: false,
        })
    }

    /// Number of qubits.
    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    /// The full amplitude slice, indexed with qubit 0 as the least-significant
    /// bit.
    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// Amplitude of basis state |index⟩.
    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amplitudes[index]
    }

    /// Whether this value is flagged as normalized (false only for
    /// projection branches and explicitly unnormalized constructions).
    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    /// Squared Euclidean norm Σ|aᵢ|².
    pub fn norm_sq(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Rescales to unit norm; errors on a (numerically) zero vector.
    pub fn normalize(&self) -> Result<StateVector> {
        let norm_sq = self.norm_sq();
        if norm_sq < 1e-300 {
            return Err(Error::NotNormalized { norm_sq });
        }
        let inv = 1.0 / norm_sq.sqrt();
        let amplitudes = self.amplitudes.iter().map(|a| a * inv).collect();
        Ok(StateVector {
            num_qubits: self.num_qubits,
            amplitudes,
            normalized: true,
        })
    }

    /// Appends `count` fresh qubits in |0⟩ **above** the existing ones (they
    /// become the most-significant index bits), leaving amplitudes of the
    /// original basis states in place.
    pub fn append_qubits(&self, count: usize) -> Result<StateVector> {
        let num_qubits = self.num_qubits + count;
        check_qubit_count(num_qubits)?;
        let mut amplitudes = self.amplitudes.clone();
        amplitudes.resize(1 << num_qubits, Complex64::new(0.0, 0.0));
        Ok(StateVector {
            num_qubits,
            amplitudes,
            normalized: self.normalized,
        })
    }

    /// Inner product ⟨self|other⟩, conjugating `self`.
    pub fn inner_product(&self, other: &StateVector) -> Result<Complex64> {
        if self.num_qubits != other.num_qubits {
            return Err(Error::DimensionMismatch {
                expected: self.amplitudes.len(),
                got: other.amplitudes.len(),
            });
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Applies a gate (with any controls) and returns the new state.
    pub fn apply_gate(&self, gate: &GateSpec) -> Result<StateVector> {
        for &q in gate
            .targets
            .iter()
            .chain(gate.controls.iter().map(|(q, _)| q))
        {
            if q >= self.num_qubits {
                return Err(Error::QubitOutOfRange {
                    index: q,
                    num_qubits: self.num_qubits,
                });
            }
        }
        let dim = self.amplitudes.len();
        let k = gate.targets.len();
        let block = 1usize << k;
        let mut out = self.amplitudes.clone();
        let mut idx = [0usize; 4];
        for base in 0..dim {
            if gate.targets.iter().any(|&t| base >> t & 1 == 1) {
                continue;
            }
            let fire = gate.controls.iter().all(|&(q, polarity)| {
                let bit = base >> q & 1;
                match polarity {
                    ControlPolarity::OnZero => bit == 0,
                    ControlPolarity::OnOne => bit == 1,
                }
            });
            if !fire {
                continue;
            }
            for (local, slot) in idx.iter_mut().enumerate().take(block) {
                let mut i = base;
                for (pos, &t) in gate.targets.iter().enumerate() {
                    if local >> (k - 1 - pos) & 1 == 1 {
                        i |= 1 << t;
                    }
                }
                *slot = i;
            }
            for r in 0..block {
                let mut acc = Complex64::new(0.0, 0.0);
                for c in 0..block {
                    acc += gate.matrix[(r, c)] * self.amplitudes[idx[c]];
                }
                out[idx[r]] = acc;
            }
        }
        Ok(StateVector {
            num_qubits: self.num_qubits,
            amplitudes: out,
            normalized: self.normalized,
        })
    }

    /// Applies a `2^k × 2^k` unitary on the `k` listed qubits (first listed =
    /// most-significant local bit), acting as the identity elsewhere.
    pub fn apply_block_unitary(&self, matrix: &CMatrix, registers: &[usize]) -> Result<StateVector> {
        let k = registers.len();
        if matrix.dim() != 1 << k {
            return Err(Error::DimensionMismatch {
                expected: 1 << k,
                got: matrix.dim(),
            });
        }
        let mut seen = Vec::new();
        for &q in registers {
            if q >= self.num_qubits {
                return Err(Error::QubitOutOfRange {
                    index: q,
                    num_qubits: self.num_qubits,
                });
            }
            if seen.contains(&q) {
                return Err(Error::DuplicateQubit { index: q });
            }
            seen.push(q);
        }
        matrix.require_unitary(TOL)?;

        let dim = self.amplitudes.len();
        let block = 1usize << k;
        let mut out = self.amplitudes.clone();
        let mut idx = vec![0usize; block];
        for base in 0..dim {
            if registers.iter().any(|&q| base >> q & 1 == 1) {
                continue;
            }
            for (local, slot) in idx.iter_mut().enumerate() {
                let mut i = base;
                for (pos, &q) in registers.iter().enumerate() {
                    if local >> (k - 1 - pos) & 1 == 1 {
                        i |= 1 << q;
                    }
                }
                *slot = i;
            }
            for r in 0..block {
                let mut acc = Complex64::new(0.0, 0.0);
                for c in 0..block {
                    acc += matrix[(r, c)] * self.amplitudes[idx[c]];
                }
                out[idx[r]] = acc;
            }
        }
        Ok(StateVector {
            num_qubits: self.num_qubits,
            amplitudes: out,
            normalized: self.normalized,
        })
    }

    /// Projects one qubit onto `outcome`, returning the **unnormalized**
    /// branch Π|ψ⟩ together with its probability (the branch's squared norm).
    /// The probabilities of the two outcomes sum to the input's squared norm.
    pub fn project_qubit(&self, qubit: usize, outcome: u8) -> Result<(StateVector, f64)> {
        if qubit >= self.num_qubits {
            return Err(Error::QubitOutOfRange {
                index: qubit,
                num_qubits: self.num_qubits,
            });
        }
        if outcome > 1 {
            return Err(Error::InvalidArgument {
                reason: format!("projection outcome must be 0 or 1, got {outcome}"),
            });
        }
        let mut amplitudes = self.amplitudes.clone();
        let mut probability = 0.0;
        for (i, a) in amplitudes.iter_mut().enumerate() {
            if (i >> qubit & 1) as u8 == outcome {
                probability += a.norm_sqr();
            } else {
                *a = Complex64::new(0.0, 0.0);
            }
        }
        Ok((
            StateVector {
                num_qubits: self.num_qubits,
                amplitudes,
                normalized: false,
            },
            probability,
        ))
    }
}

fn check_qubit_count(num_qubits: usize) -> Result<()> {
    if num_qubits == 0 || num_qubits > MAX_QUBITS {
        return Err(Error::UnsupportedQubitCount { num_qubits });
    }
    Ok(())
}
