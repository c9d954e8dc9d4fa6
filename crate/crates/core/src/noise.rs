//! Error injection and fidelity evaluation.
//!
//! Two error models share this module. The discrete model applies one of the
//! 16 operators the code corrects: nothing, or a bit flip `B_k = σx`, sign
//! flip `S_k = σz`, or combined flip `BS_k = σx·σz = −iσy` on code bit `k`
//! (labels 1..=5, most-significant first, as in [`crate::code5`]).
//!
//! The continuous model entangles a code qubit with a private environment
//! qubit through a joint unitary `exp(−iθG)` for a Hermitian generator `G`
//! on (system ⊗ environment). Restricted to the environment's reference
//! state |0⟩, any such unitary decomposes over {I, σz, σx, −iσy} with
//! environment-vector coefficients — which is exactly why correcting the
//! four discrete operators corrects *every* one-qubit interaction.
//!
//! Fidelities are computed by exact branch summation over computational
//! basis outcomes of the ancillas and environments — no sampling anywhere,
//! so every number here is deterministic to machine precision.

use num_complex::Complex64;

use crate::cmatrix::{pauli, CMatrix, TOL};
use crate::code5::{self, qubit_index_for_label, CodeTable};
use crate::error::{Error, Result};
use crate::random::{random_hermitian4, rng};
use crate::statevec::StateVector;

/// One of the 16 discrete error alternatives of the five-qubit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PauliError {
    /// No error.
    None,
    /// Bit flip σx on the labeled code bit.
    Bit(u8),
    /// Sign flip σz on the labeled code bit.
    Sign(u8),
    /// Combined flip σx·σz = −iσy on the labeled code bit.
    BitSign(u8),
}

impl PauliError {
    /// All 16 error alternatives in canonical enumeration order: the
    /// identity, then bit flips, sign flips, and combined flips by label.
    pub fn all() -> Vec<PauliError> {
        let mut v = vec![PauliError::None];
        v.extend((1..=5).map(PauliError::Bit));
        v.extend((1..=5).map(PauliError::Sign));
        v.extend((1..=5).map(PauliError::BitSign));
        v
    }

    /// The label used in tables and reports: "None", "B3", "S1", "BS5", …
    pub fn label(&self) -> String {
        match self {
            PauliError::None => "None".to_string(),
            PauliError::Bit(k) => format!("B{k}"),
            PauliError::Sign(k) => format!("S{k}"),
            PauliError::BitSign(k) => format!("BS{k}"),
        }
    }

    /// The code bit label this error acts on, if any.
    pub fn bit_label(&self) -> Option<u8> {
        match self {
            PauliError::None => None,
            PauliError::Bit(k) | PauliError::Sign(k) | PauliError::BitSign(k) => Some(*k),
        }
    }

    /// The error's action on basis indices as a pair of masks:
    /// `i ↦ ± (i XOR flip_mask)`, with the sign negative on odd parity of
    /// `i AND sign_mask`. (For the combined flip the sign is read from the
    /// *pre-flip* bit, matching σx·σz with σz acting first.)
    pub fn action_masks(&self) -> Result<(usize, usize)> {
        Ok(match self {
            PauliError::None => (0, 0),
            PauliError::Bit(k) => (1 << qubit_index_for_label(*k)?, 0),
            PauliError::Sign(k) => (0, 1 << qubit_index_for_label(*k)?),
            PauliError::BitSign(k) => {
                let m = 1 << qubit_index_for_label(*k)?;
                (m, m)
            }
        })
    }

    /// Image of basis index `i` under the operator: `(new_index, sign)`.
    pub fn basis_action(&self, index: usize) -> Result<(usize, i8)> {
        let (flip_mask, sign_mask) = self.action_masks()?;
        let sign = if (index & sign_mask).count_ones() % 2 == 1 {
            -1
        } else {
            1
        };
        Ok((index ^ flip_mask, sign))
    }
}

/// Applies a discrete error operator to a five-qubit state.
pub fn pauli_error(error: PauliError, state: &StateVector) -> Result<StateVector> {
    if state.num_qubits() != code5::CODE_QUBITS {
        return Err(Error::DimensionMismatch {
            expected: code5::CODE_DIM,
            got: state.amplitudes().len(),
        });
    }
    let (flip_mask, sign_mask) = error.action_masks()?;
    let mut out = vec![Complex64::new(0.0, 0.0); code5::CODE_DIM];
    for (i, &a) in state.amplitudes().iter().enumerate() {
        let sign = if (i & sign_mask).count_ones() % 2 == 1 {
            -1.0
        } else {
            1.0
        };
        out[i ^ flip_mask] += a * sign;
    }
    if state.is_normalized() {
        StateVector::from_amplitudes(code5::CODE_QUBITS, out)
    } else {
        StateVector::unnormalized(code5::CODE_QUBITS, out)
    }
}

/// A single qubit–environment coupling: the joint unitary is
/// `exp(−iθ·generator)` on (system qubit ⊗ environment qubit), with the
/// system on the more significant index bit.
#[derive(Debug, Clone)]
pub struct EnvChannel {
    theta: f64,
    generator: CMatrix,
    seed: Option<u64>,
}

impl EnvChannel {
    /// A channel with the isotropic generator σx⊗σx + σy⊗σy + σz⊗σz.
    pub fn isotropic(theta: f64) -> Result<Self> {
        EnvChannel::with_generator(theta, isotropic_generator())
    }

    /// A channel whose generator is a seeded random 4×4 Hermitian matrix
    /// (entries of order one, drawn from ChaCha12 with the given seed).
    pub fn random_hermitian(theta: f64, seed: u64) -> Result<Self> {
        let mut channel = EnvChannel::with_generator(theta, random_hermitian4(&mut rng(seed)))?;
        channel.seed = Some(seed);
        Ok(channel)
    }

    /// A channel with an explicit Hermitian generator.
    pub fn with_generator(theta: f64, generator: CMatrix) -> Result<Self> {
        if !theta.is_finite() || theta < 0.0 {
            return Err(Error::InvalidArgument {
                reason: format!("coupling strength must be finite and nonnegative, got {theta}"),
            });
        }
        if generator.dim() != 4 {
            return Err(Error::DimensionMismatch {
                expected: 4,
                got: generator.dim(),
            });
        }
        generator.require_hermitian(TOL)?;
        Ok(EnvChannel {
            theta,
            generator,
            seed: None,
        })
    }

    /// A switched-off channel (θ = 0).
    pub fn idle() -> Self {
        EnvChannel::isotropic(0.0).expect("zero coupling is always valid")
    }

    /// Coupling strength θ.
    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// The Hermitian generator.
    pub fn generator(&self) -> &CMatrix {
        &self.generator
    }

    /// The seed the generator was drawn from, when it was drawn randomly.
    pub fn seed(&self) -> Option<u64> {
        self.seed
    }
}

/// The isotropic coupling generator σx⊗σx + σy⊗σy + σz⊗σz.
pub fn isotropic_generator() -> CMatrix {
    let xx = pauli::sigma_x().kron(&pauli::sigma_x());
    let yy = pauli::sigma_y().kron(&pauli::sigma_y());
    let zz = pauli::sigma_z().kron(&pauli::sigma_z());
    xx.add(&yy)
        .expect("static shape")
        .add(&zz)
        .expect("static shape")
}

/// The joint unitary `exp(−iθ·generator)` of a channel.
pub fn env_interaction(channel: &EnvChannel) -> Result<CMatrix> {
    let exponent = channel
        .generator
        .scaled(Complex64::new(0.0, -channel.theta));
    let unitary = exponent.expm();
    unitary.require_unitary(TOL)?;
    Ok(unitary)
}

/// Entangles each code qubit with its own fresh environment qubit.
///
/// The five environment qubits are appended above the code register:
/// code qubit `q` (index 0..=4) couples to environment qubit `q + 5`, with
/// `channels[q]` supplying the joint unitary. With all couplings at θ = 0
/// the result is exactly `encoded ⊗ |00000⟩`.
pub fn apply_env_noise(encoded: &StateVector, channels: &[EnvChannel]) -> Result<StateVector> {
    if encoded.num_qubits() != code5::CODE_QUBITS {
        return Err(Error::DimensionMismatch {
            expected: code5::CODE_DIM,
            got: encoded.amplitudes().len(),
        });
    }
    if channels.len() != code5::CODE_QUBITS {
        return Err(Error::InvalidArgument {
            reason: format!(
                "expected one channel per code qubit (5), got {}",
                channels.len()
            ),
        });
    }
    let mut state = encoded.append_qubits(code5::CODE_QUBITS)?;
    for (q, channel) in channels.iter().enumerate() {
        let joint = env_interaction(channel)?;
        state = state.apply_block_unitary(&joint, &[q, q + code5::CODE_QUBITS])?;
    }
    Ok(state)
}

fn check_coefficients(alpha: Complex64, beta: Complex64) -> Result<()> {
    let norm_sq = alpha.norm_sqr() + beta.norm_sqr();
    if (norm_sq - 1.0).abs() > 1e-9 {
        return Err(Error::NotNormalized { norm_sq });
    }
    Ok(())
}

/// Fidelity of the full encode → noise → decode → recover cycle.
///
/// The data qubit α|0⟩+β|1⟩ is encoded, every code qubit is coupled to its
/// environment by `channels`, and the decoder is applied. The fidelity is
/// then accumulated exactly over all 16 ancilla syndromes and all 32
/// environment basis outcomes: each branch's data-qubit amplitudes are run
/// through the tabulated recovery for its syndrome and projected onto the
/// intended state. With at most one channel active the result is 1 to
/// machine precision, whatever the generator and strength.
pub fn corrected_fidelity(
    alpha: Complex64,
    beta: Complex64,
    channels: &[EnvChannel],
) -> Result<f64> {
    check_coefficients(alpha, beta)?;
    let encoded = code5::encode(alpha, beta)?;
    let noisy = apply_env_noise(&encoded, channels)?;
    let decoded = noisy.apply_block_unitary(code5::standard_encoder().decoder(), &[4, 3, 2, 1, 0])?;

    let table = CodeTable::standard();
    let amps = decoded.amplitudes();
    let mut fidelity = 0.0;
    for syndrome in 0..16usize {
        let recovery = table
            .row_for_syndrome(syndrome as u8)?
            .transform
            .recovery();
        let r00 = f64::from(recovery[0][0]);
        let r01 = f64::from(recovery[0][1]);
        let r10 = f64::from(recovery[1][0]);
        let r11 = f64::from(recovery[1][1]);
        for env in 0..32usize {
            let a0 = amps[env * 32 + syndrome];
            let a1 = amps[env * 32 + 16 + syndrome];
            let w0 = a0 * r00 + a1 * r01;
            let w1 = a0 * r10 + a1 * r11;
            fidelity += (alpha.conj() * w0 + beta.conj() * w1).norm_sqr();
        }
    }
    Ok(fidelity)
}

/// Fidelity of a bare, unencoded qubit under one environment coupling,
/// traced over the environment by branch summation. `1 −` this value is the
/// error probability `p` used by the scaling sweep.
pub fn unencoded_fidelity(alpha: Complex64, beta: Complex64, channel: &EnvChannel) -> Result<f64> {
    check_coefficients(alpha, beta)?;
    let raw = StateVector::unnormalized(1, vec![alpha, beta])?;
    let state = raw.normalize()?.append_qubits(1)?;
    let joint = env_interaction(channel)?;
    let out = state.apply_block_unitary(&joint, &[0, 1])?;
    let amps = out.amplitudes();
    let mut fidelity = 0.0;
    for env in 0..2usize {
        fidelity += (alpha.conj() * amps[2 * env] + beta.conj() * amps[2 * env + 1]).norm_sqr();
    }
    Ok(fidelity)
}

/// How sweep generators are chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorConfig {
    /// The isotropic generator σx⊗σx + σy⊗σy + σz⊗σz at every grid point.
    Isotropic,
    /// One random Hermitian generator drawn from the seed and reused across
    /// the whole sweep (all grid points, all five channels).
    RandomHermitian {
        /// ChaCha12 seed for the draw.
        seed: u64,
    },
}

/// One sweep record: coupling strength, single-qubit error probability, and
/// the two fidelities, each averaged over the sweep's input states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRecord {
    /// Coupling strength θ.
    pub theta: f64,
    /// p = 1 − mean unencoded fidelity at this θ.
    pub p: f64,
    /// Mean fidelity of the bare qubit.
    pub f_unencoded: f64,
    /// Mean fidelity of the encoded-and-corrected qubit.
    pub f_corrected: f64,
}

/// The default sweep grid: 16 logarithmically spaced θ in [1e-2, 0.5].
pub fn default_theta_grid() -> Vec<f64> {
    let (lo, hi, n) = (1e-2f64, 0.5f64, 16usize);
    let step = (hi.ln() - lo.ln()) / (n as f64 - 1.0);
    (0..n).map(|i| (lo.ln() + step * i as f64).exp()).collect()
}

/// The default sweep inputs: |0⟩, (|0⟩+|1⟩)/√2, and (|0⟩+i|1⟩)/√2.
pub fn default_input_states() -> Vec<(Complex64, Complex64)> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    vec![
        (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)),
        (Complex64::new(s, 0.0), Complex64::new(s, 0.0)),
        (Complex64::new(s, 0.0), Complex64::new(0.0, s)),
    ]
}

/// Runs the fidelity sweep: one record per grid point, fidelities averaged
/// over `inputs`, all channels carrying the same coupling.
pub fn fidelity_sweep(
    theta_grid: &[f64],
    generator: GeneratorConfig,
    inputs: &[(Complex64, Complex64)],
) -> Result<Vec<SweepRecord>> {
    if theta_grid.is_empty() {
        return Err(Error::InvalidArgument {
            reason: "theta grid must not be empty".into(),
        });
    }
    if theta_grid
        .windows(2)
        .any(|w| w[1] < w[0])
    {
        return Err(Error::InvalidArgument {
            reason: "theta grid must be sorted in ascending order".into(),
        });
    }
    if inputs.is_empty() {
        return Err(Error::InvalidArgument {
            reason: "input state list must not be empty".into(),
        });
    }
    let drawn = match generator {
        GeneratorConfig::Isotropic => None,
        GeneratorConfig::RandomHermitian { seed } => Some(random_hermitian4(&mut rng(seed))),
    };
    let mut records = Vec::with_capacity(theta_grid.len());
    for &theta in theta_grid {
        let channel = match &drawn {
            None => EnvChannel::isotropic(theta)?,
            Some(g) => EnvChannel::with_generator(theta, g.clone())?,
        };
        let channels = vec![channel.clone(); code5::CODE_QUBITS];
        let mut f_unencoded = 0.0;
        let mut f_corrected = 0.0;
        for &(alpha, beta) in inputs {
            f_unencoded += unencoded_fidelity(alpha, beta, &channel)?;
            f_corrected += corrected_fidelity(alpha, beta, &channels)?;
        }
        f_unencoded /= inputs.len() as f64;
        f_corrected /= inputs.len() as f64;
        records.push(SweepRecord {
            theta,
            p: 1.0 - f_unencoded,
            f_unencoded,
            f_corrected,
        });
    }
    Ok(records)
}

/// Result of the log-log scaling fit over a window of sweep records.
#[derive(Debug, Clone, Copy)]
pub struct ScalingFit {
    /// Least-squares slope of ln(1−F_corrected) against ln p.
    pub slope_corrected: f64,
    /// Least-squares slope of ln(1−F_unencoded) against ln p.
    pub slope_unencoded: f64,
    /// Quadratic-law constant: geometric mean of (1−F_corrected)/p².
    pub c: f64,
    /// Crossover 1/c — the p below which correction wins under the
    /// quadratic law.
    pub p_star: f64,
    /// Number of records inside the fit window.
    pub window_points: usize,
}

/// The default fit window for `p`.
pub const FIT_WINDOW: (f64, f64) = (1e-4, 1e-2);

fn least_squares_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let x_mean = xs.iter().sum::<f64>() / n;
    let y_mean = ys.iter().sum::<f64>() / n;
    let mut num = 0.0;
    let mut den = 0.0;
    for (&x, &y) in xs.iter().zip(ys) {
        num += (x - x_mean) * (y - y_mean);
        den += (x - x_mean) * (x - x_mean);
    }
    num / den
}

/// Fits the scaling law on records whose `p` lies in `[p_lo, p_hi]` (and
/// whose fidelity deficits are strictly positive, so logarithms exist).
/// Returns `None` when fewer than two usable records fall in the window.
pub fn fit_scaling(records: &[SweepRecord], p_lo: f64, p_hi: f64) -> Option<ScalingFit> {
    let window: Vec<&SweepRecord> = records
        .iter()
        .filter(|r| {
            r.p >= p_lo && r.p <= p_hi && 1.0 - r.f_corrected > 0.0 && 1.0 - r.f_unencoded > 0.0
        })
        .collect();
    if window.len() < 2 {
        return None;
    }
    let xs: Vec<f64> = window.iter().map(|r| r.p.ln()).collect();
    let y_corr: Vec<f64> = window.iter().map(|r| (1.0 - r.f_corrected).ln()).collect();
    let y_un: Vec<f64> = window.iter().map(|r| (1.0 - r.f_unencoded).ln()).collect();
    let log_c = xs
        .iter()
        .zip(&y_corr)
        .map(|(x, y)| y - 2.0 * x)
        .sum::<f64>()
        / xs.len() as f64;
    let c = log_c.exp();
    Some(ScalingFit {
        slope_corrected: least_squares_slope(&xs, &y_corr),
        slope_unencoded: least_squares_slope(&xs, &y_un),
        c,
        p_star: 1.0 / c,
        window_points: window.len(),
    })
}

/// The environment vectors of a joint unitary restricted to the reference
/// environment state |0⟩.
///
/// Writing the action on (system ⊗ environment) inputs with the environment
/// in |0⟩ as
///
/// ```text
/// |0⟩|0_env⟩ → |0⟩|e₀⟩ + |1⟩|e₀ᴮ⟩        |1⟩|0_env⟩ → |1⟩|e₁⟩ + |0⟩|e₁ᴮ⟩
/// ```
///
/// the same action regrouped over system operators is
/// `I⊗e₊ + σz⊗e₋ + σx⊗eᴮ₊ + (−iσy)⊗eᴮ₋` with `e± = (e₀ ± e₁)/2` and
/// `eᴮ± = (e₀ᴮ ± e₁ᴮ)/2` — the four-operator form whose every term the code
/// corrects.
#[derive(Debug, Clone)]
pub struct EnvDecomposition {
    /// Environment vector on the system-preserving |0⟩ branch.
    pub e0: [Complex64; 2],
    /// Environment vector on the |0⟩→|1⟩ flip branch.
    pub e0_b: [Complex64; 2],
    /// Environment vector on the system-preserving |1⟩ branch.
    pub e1: [Complex64; 2],
    /// Environment vector on the |1⟩→|0⟩ flip branch.
    pub e1_b: [Complex64; 2],
    /// Coefficient of the identity term.
    pub e_plus: [Complex64; 2],
    /// Coefficient of the σz term.
    pub e_minus: [Complex64; 2],
    /// Coefficient of the σx term.
    pub eb_plus: [Complex64; 2],
    /// Coefficient of the −iσy term.
    pub eb_minus: [Complex64; 2],
}

impl EnvDecomposition {
    /// Maximum deviation from the unitarity relations the vectors inherit
    /// from the joint unitary: ‖e₀‖²+‖e₀ᴮ‖² = 1, ‖e₁‖²+‖e₁ᴮ‖² = 1, and
    /// ⟨e₀|e₁ᴮ⟩ + ⟨e₀ᴮ|e₁⟩ = 0.
    pub fn unitarity_deviation(&self) -> f64 {
        let norm2 = |v: &[Complex64; 2]| v[0].norm_sqr() + v[1].norm_sqr();
        let dot = |a: &[Complex64; 2], b: &[Complex64; 2]| {
            a[0].conj() * b[0] + a[1].conj() * b[1]
        };
        let r1 = (norm2(&self.e0) + norm2(&self.e0_b) - 1.0).abs();
        let r2 = (norm2(&self.e1) + norm2(&self.e1_b) - 1.0).abs();
        let r3 = (dot(&self.e0, &self.e1_b) + dot(&self.e0_b, &self.e1)).norm();
        r1.max(r2).max(r3)
    }

    /// Rebuilds the joint unitary's two reference-environment columns (the
    /// images of |0⟩|0_env⟩ and |1⟩|0_env⟩, as length-4 amplitude vectors
    /// indexed by 2·system + environment) from the four operator
    /// coefficients. Matches the original unitary's columns exactly.
    pub fn reference_columns(&self) -> ([Complex64; 4], [Complex64; 4]) {
        let mut col0 = [Complex64::new(0.0, 0.0); 4];
        let mut col1 = [Complex64::new(0.0, 0.0); 4];
        for env in 0..2 {
            // Input |0⟩: I and σz keep |0⟩ with +; σx and −iσy flip to |1⟩
            // with +.
            col0[env] = self.e_plus[env] + self.e_minus[env];
            col0[2 + env] = self.eb_plus[env] + self.eb_minus[env];
            // Input |1⟩: I keeps with +, σz keeps with −; σx flips with +,
            // −iσy flips with −.
            col1[2 + env] = self.e_plus[env] - self.e_minus[env];
            col1[env] = self.eb_plus[env] - self.eb_minus[env];
        }
        (col0, col1)
    }
}

/// Extracts the environment vectors of a 4×4 joint unitary (system on the
/// more significant index bit, environment starting in |0⟩).
pub fn env_decomposition(joint: &CMatrix) -> Result<EnvDecomposition> {
    if joint.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            got: joint.dim(),
        });
    }
    joint.require_unitary(TOL)?;
    let e0 = [joint[(0, 0)], joint[(1, 0)]];
    let e0_b = [joint[(2, 0)], joint[(3, 0)]];
    let e1_b = [joint[(0, 2)], joint[(1, 2)]];
    let e1 = [joint[(2, 2)], joint[(3, 2)]];
    let half = Complex64::new(0.5, 0.0);
    let combine = |a: &[Complex64; 2], b: &[Complex64; 2], sign: f64| {
        [
            (a[0] + b[0] * sign) * half,
            (a[1] + b[1] * sign) * half,
        ]
    };
    Ok(EnvDecomposition {
        e_plus: combine(&e0, &e1, 1.0),
        e_minus: combine(&e0, &e1, -1.0),
        eb_plus: combine(&e0_b, &e1_b, 1.0),
        eb_minus: combine(&e0_b, &e1_b, -1.0),
        e0,
        e0_b,
        e1,
        e1_b,
    })
}
