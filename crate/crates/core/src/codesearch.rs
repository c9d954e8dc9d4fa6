//! Constraint verification and rediscovery of the five-qubit code.
//!
//! Three independent checks certify a candidate code, all over supports of
//! basis states with amplitudes of equal magnitude and signs ±1:
//!
//! * **Balance** ([`check_balance`]): for every pair of bit labels (k, l),
//!   the support weight must split evenly across the four (bit_k, bit_l)
//!   parity classes. Amplitudes are ±1/√m on an m-element support, so the
//!   class sums are exact integer counts — no floating point involved.
//!   When k = l the two mixed classes are structurally empty and the check
//!   compares the two diagonal classes instead (an even split on bit k).
//! * **Orthogonality** ([`check_qec`]): the 32 images of the two codewords
//!   under all 16 error operators must form an orthonormal set — their Gram
//!   matrix must be the identity. This is the defining condition for the
//!   code to map errors into distinguishable, coherence-preserving
//!   subspaces, and the core oracle of this module.
//! * **Counting** ([`min_code_length`]): 16 error alternatives on a
//!   one-qubit message need 2(3n+1) orthogonal dimensions inside 2ⁿ, so
//!   n = 5 is the smallest workable register — and it saturates the bound.
//!
//! [`search_signs`] rediscovers the codeword sign pattern by brute force
//! over all sign assignments on the two 8-element supports, quotienting the
//! physically irrelevant global sign of each codeword by forcing the first
//! (lowest-index) support member positive, i.e. 2⁷ × 2⁷ canonical
//! candidates out of 2⁸ × 2⁸ raw assignments.

use num_complex::Complex64;
use serde::Serialize;

use crate::cmatrix::{CMatrix, TOL};
use crate::code5::{logical_states, qubit_index_for_label, CODE_DIM};
use crate::error::{Error, Result};
use crate::noise::PauliError;

/// A candidate code: two supports with ±1 signs, representing codewords
/// with amplitudes ±1/√m on an m-element support.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeCandidate {
    support0: Vec<usize>,
    signs0: Vec<i8>,
    support1: Vec<usize>,
    signs1: Vec<i8>,
}

impl CodeCandidate {
    /// Builds a candidate, checking that each support consists of distinct
    /// basis indices below 32 and that each sign list matches its support in
    /// length with entries ±1.
    pub fn new(
        support0: Vec<usize>,
        signs0: Vec<i8>,
        support1: Vec<usize>,
        signs1: Vec<i8>,
    ) -> Result<Self> {
        for (support, signs) in [(&support0, &signs0), (&support1, &signs1)] {
            if support.is_empty() {
                return Err(Error::InvalidCandidate {
                    reason: "support must not be empty".into(),
                });
            }
            if support.len() != signs.len() {
                return Err(Error::InvalidCandidate {
                    reason: format!(
                        "support has {} members but {} signs",
                        support.len(),
                        signs.len()
                    ),
                });
            }
            let mut seen = 0u32;
            for &i in support.iter() {
                if i >= CODE_DIM {
                    return Err(Error::InvalidCandidate {
                        reason: format!("basis index {i} out of range 0..32"),
                    });
                }
                if seen >> i & 1 == 1 {
                    return Err(Error::InvalidCandidate {
                        reason: format!("basis index {i} repeated in support"),
                    });
                }
                seen |= 1 << i;
            }
            if signs.iter().any(|&s| s != 1 && s != -1) {
                return Err(Error::InvalidCandidate {
                    reason: "signs must be +1 or -1".into(),
                });
            }
        }
        Ok(CodeCandidate {
            support0,
            signs0,
            support1,
            signs1,
        })
    }

    /// The candidate matching the built-in codewords of [`crate::code5`].
    pub fn canonical() -> Self {
        let pair = logical_states();
        let mut words = Vec::new();
        for amps in [pair.zero_l(), pair.one_l()] {
            let mut support = Vec::new();
            let mut signs = Vec::new();
            for (i, a) in amps.iter().enumerate() {
                if a.norm() > 1e-15 {
                    support.push(i);
                    signs.push(if a.re > 0.0 { 1 } else { -1 });
                }
            }
            words.push((support, signs));
        }
        let (support1, signs1) = words.pop().expect("two codewords");
        let (support0, signs0) = words.pop().expect("two codewords");
        CodeCandidate::new(support0, signs0, support1, signs1)
            .expect("built-in codewords form a valid candidate")
    }

    /// Support of the first codeword.
    pub fn support0(&self) -> &[usize] {
        &self.support0
    }

    /// Signs of the first codeword, aligned with [`Self::support0`].
    pub fn signs0(&self) -> &[i8] {
        &self.signs0
    }

    /// Support of the second codeword.
    pub fn support1(&self) -> &[usize] {
        &self.support1
    }

    /// Signs of the second codeword, aligned with [`Self::support1`].
    pub fn signs1(&self) -> &[i8] {
        &self.signs1
    }

    /// The two codewords as dense amplitude vectors (±1/√m entries).
    pub fn amplitude_vectors(&self) -> (Vec<Complex64>, Vec<Complex64>) {
        let expand = |support: &[usize], signs: &[i8]| {
            let amp = 1.0 / (support.len() as f64).sqrt();
            let mut v = vec![Complex64::new(0.0, 0.0); CODE_DIM];
            for (&i, &s) in support.iter().zip(signs) {
                v[i] = Complex64::new(f64::from(s) * amp, 0.0);
            }
            v
        };
        (
            expand(&self.support0, &self.signs0),
            expand(&self.support1, &self.signs1),
        )
    }

    /// Negative-sign count per codeword, reduced by the global-sign gauge:
    /// a codeword with c negatives among m members is the same physical
    /// state as one with m − c, so the reported count is min(c, m − c).
    pub fn negative_sign_counts(&self) -> (usize, usize) {
        let reduced = |signs: &[i8]| {
            let c = signs.iter().filter(|&&s| s == -1).count();
            c.min(signs.len() - c)
        };
        (reduced(&self.signs0), reduced(&self.signs1))
    }

    /// Machine-readable form of the candidate.
    pub fn export(&self) -> CandidateExport {
        let (neg0, neg1) = self.negative_sign_counts();
        CandidateExport {
            support0: self.support0.clone(),
            signs0: self.signs0.clone(),
            support1: self.support1.clone(),
            signs1: self.signs1.clone(),
            negative_sign_counts: [neg0, neg1],
        }
    }
}

/// JSON-exportable candidate: supports as integer lists, signs as ±1 lists,
/// and the gauge-reduced negative-sign count of each codeword.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct CandidateExport {
    /// Basis indices of the first codeword's support.
    pub support0: Vec<usize>,
    /// Signs aligned with `support0`.
    pub signs0: Vec<i8>,
    /// Basis indices of the second codeword's support.
    pub support1: Vec<usize>,
    /// Signs aligned with `support1`.
    pub signs1: Vec<i8>,
    /// Gauge-reduced negative-sign counts (first codeword, second codeword).
    pub negative_sign_counts: [usize; 2],
}

/// One failed parity-class comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BalanceViolation {
    /// Which codeword (0 or 1).
    pub word: u8,
    /// First bit label of the pair.
    pub k: u8,
    /// Second bit label of the pair.
    pub l: u8,
    /// Support-member counts of the four (bit_k, bit_l) classes in the
    /// order (0,0), (0,1), (1,0), (1,1).
    pub class_counts: [usize; 4],
}

/// Outcome of the balance check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BalanceReport {
    /// True when no pair of bit labels produced a violation.
    pub pass: bool,
    /// Every failed (word, k, l) combination with its class counts.
    pub violations: Vec<BalanceViolation>,
}

/// Checks the parity-balance conditions on both codewords for every ordered
/// pair of bit labels (k, l), using exact integer counts.
///
/// Because all support amplitudes share one magnitude, the squared-amplitude
/// class sums are proportional to plain member counts. For k ≠ l all four
/// class counts must be equal; for k = l the two realizable (diagonal)
/// classes must be equal.
pub fn check_balance(candidate: &CodeCandidate) -> BalanceReport {
    let mut violations = Vec::new();
    for (word, support) in [(0u8, &candidate.support0), (1u8, &candidate.support1)] {
        for k in 1..=5u8 {
            for l in 1..=5u8 {
                let kq = qubit_index_for_label(k).expect("label in range");
                let lq = qubit_index_for_label(l).expect("label in range");
                let mut counts = [0usize; 4];
                for &i in support.iter() {
                    let bk = i >> kq & 1;
                    let bl = i >> lq & 1;
                    counts[bk * 2 + bl] += 1;
                }
                let balanced = if k == l {
                    counts[0b00] == counts[0b11]
                } else {
                    counts.iter().all(|&c| c == counts[0])
                };
                if !balanced {
                    violations.push(BalanceViolation {
                        word,
                        k,
                        l,
                        class_counts: counts,
                    });
                }
            }
        }
    }
    BalanceReport {
        pass: violations.is_empty(),
        violations,
    }
}

/// Gram matrix of the 32 error images of a candidate's codewords.
#[derive(Debug, Clone)]
pub struct GramReport {
    /// Inner products among the vectors {E_t|w⟩}, indexed 2·t + w with the
    /// errors in canonical enumeration order.
    pub gram: CMatrix,
    /// Largest |off-diagonal| entry.
    pub max_off_diagonal: f64,
    /// Largest |diagonal − 1| entry.
    pub max_diagonal_deviation: f64,
    /// True when the Gram matrix is the identity within tolerance.
    pub verdict: bool,
}

/// Builds the 32 error-image vectors of a candidate and reports their Gram
/// matrix. The verdict is true exactly when the images are orthonormal
/// within the crate tolerance — the condition for all 16 error alternatives
/// to be distinguishable without disturbing the encoded coherence.
pub fn check_qec(candidate: &CodeCandidate) -> Result<GramReport> {
    let (zero, one) = candidate.amplitude_vectors();
    let errors = PauliError::all();
    let mut images: Vec<Vec<Complex64>> = Vec::with_capacity(32);
    for error in &errors {
        let (flip_mask, sign_mask) = error.action_masks()?;
        for word in [&zero, &one] {
            let mut image = vec![Complex64::new(0.0, 0.0); CODE_DIM];
            for (i, &a) in word.iter().enumerate() {
                let sign = if (i & sign_mask).count_ones() % 2 == 1 {
                    -1.0
                } else {
                    1.0
                };
                image[i ^ flip_mask] += a * sign;
            }
            images.push(image);
        }
    }

    let mut gram = CMatrix::zeros(32);
    let mut max_off = 0.0f64;
    let mut max_diag = 0.0f64;
    for r in 0..32 {
        for c in 0..32 {
            let entry: Complex64 = images[r]
                .iter()
                .zip(&images[c])
                .map(|(a, b)| a.conj() * b)
                .sum();
            gram[(r, c)] = entry;
            if r == c {
                max_diag = max_diag.max((entry - Complex64::new(1.0, 0.0)).norm());
            } else {
                max_off = max_off.max(entry.norm());
            }
        }
    }
    Ok(GramReport {
        gram,
        max_off_diagonal: max_off,
        max_diagonal_deviation: max_diag,
        verdict: max_off < TOL && max_diag < TOL,
    })
}

/// The 16 error actions as (flip mask, sign mask) pairs, canonical order.
fn error_masks() -> [(usize, usize); 16] {
    let mut masks = [(0usize, 0usize); 16];
    for (slot, error) in masks.iter_mut().zip(PauliError::all()) {
        *slot = error.action_masks().expect("canonical labels are in range");
    }
    masks
}

/// Exact integer orthogonality test for one sign assignment.
///
/// Every error image has entries in {0, ±1} (up to the common 1/√8), so all
/// Gram entries are integers after rescaling; the identity test is exact.
/// Returns early on the first nonzero off-diagonal entry.
fn signed_images_orthonormal(
    supports: [&[usize]; 2],
    signs: [&[i8]; 2],
    masks: &[(usize, usize); 16],
) -> bool {
    let mut images = [[0i8; CODE_DIM]; 32];
    for (t, &(flip_mask, sign_mask)) in masks.iter().enumerate() {
        for w in 0..2 {
            let image = &mut images[2 * t + w];
            for (&i, &s) in supports[w].iter().zip(signs[w]) {
                let parity = (i & sign_mask).count_ones() % 2 == 1;
                image[i ^ flip_mask] = if parity { -s } else { s };
            }
        }
    }
    for r in 0..32 {
        for c in (r + 1)..32 {
            let mut dot = 0i32;
            for i in 0..CODE_DIM {
                dot += i32::from(images[r][i]) * i32::from(images[c][i]);
            }
            if dot != 0 {
                return false;
            }
        }
    }
    true
}

/// Exhaustively searches the sign assignments on two 8-element supports,
/// returning every candidate whose error images are orthonormal.
///
/// The two global signs are quotiented away by forcing the lowest-index
/// member of each (sorted) support positive, leaving 2⁷ × 2⁷ = 16 384
/// canonical assignments, enumerated in ascending order of the two sign
/// bitmasks (bit j of a mask flips the sign of the j-th support member).
/// Balance is checked once up front — it depends only on the supports, not
/// the signs — so unbalanced supports return an empty result immediately.
pub fn search_signs(support0: &[usize], support1: &[usize]) -> Result<Vec<CodeCandidate>> {
    let mut s0 = support0.to_vec();
    let mut s1 = support1.to_vec();
    for support in [&mut s0, &mut s1] {
        if support.len() != 8 {
            return Err(Error::InvalidCandidate {
                reason: format!(
                    "sign search requires 8-element supports, got {}",
                    support.len()
                ),
            });
        }
        support.sort_unstable();
    }

    // Balance is sign-independent; test it on the all-plus assignment.
    let probe = CodeCandidate::new(s0.clone(), vec![1; 8], s1.clone(), vec![1; 8])?;
    if !check_balance(&probe).pass {
        return Ok(Vec::new());
    }

    let masks = error_masks();
    let mut found = Vec::new();
    let mut signs0 = [0i8; 8];
    let mut signs1 = [0i8; 8];
    for mask0 in (0..256usize).step_by(2) {
        for (j, slot) in signs0.iter_mut().enumerate() {
            *slot = if mask0 >> j & 1 == 1 { -1 } else { 1 };
        }
        for mask1 in (0..256usize).step_by(2) {
            for (j, slot) in signs1.iter_mut().enumerate() {
                *slot = if mask1 >> j & 1 == 1 { -1 } else { 1 };
            }
            if !signed_images_orthonormal([&s0, &s1], [&signs0, &signs1], &masks) {
                continue;
            }
            let candidate = CodeCandidate::new(
                s0.clone(),
                signs0.to_vec(),
                s1.clone(),
                signs1.to_vec(),
            )?;
            // The integer test is exact; the floating-point oracle is run as
            // the authoritative confirmation on the few survivors.
            if check_qec(&candidate)?.verdict {
                found.push(candidate);
            }
        }
    }
    Ok(found)
}

/// One row of the redundancy feasibility table.
#[derive(Debug, Clone, Copy, Serialize, PartialEq, Eq)]
pub struct BoundRow {
    /// Register size.
    pub n: u32,
    /// Orthogonal dimensions needed to distinguish all one-qubit error
    /// alternatives on a one-qubit message: 2(3n+1).
    pub subspaces_needed: u64,
    /// Available Hilbert-space dimension 2ⁿ.
    pub dimension: u64,
    /// Whether the needed subspaces fit.
    pub feasible: bool,
    /// Whether the bound is met with equality.
    pub saturates: bool,
}

/// Tabulates the feasibility bound 2(3n+1) ≤ 2ⁿ for n = 1..=max_n.
///
/// A register of n qubits holding one logical qubit must host 3n+1 error
/// alternatives (no error, or one of three flips on each qubit), each
/// needing a two-dimensional coherent subspace. n = 4 falls short
/// (26 > 16); n = 5 fits exactly (32 = 32), which is why the perfect code
/// has five qubits.
pub fn min_code_length(max_n: u32) -> Result<Vec<BoundRow>> {
    if max_n == 0 || max_n > 62 {
        return Err(Error::InvalidArgument {
            reason: format!("max_n must be in 1..=62, got {max_n}"),
        });
    }
    Ok((1..=max_n)
        .map(|n| {
            let subspaces_needed = 2 * (3 * u64::from(n) + 1);
            let dimension = 1u64 << n;
            BoundRow {
                n,
                subspaces_needed,
                dimension,
                feasible: subspaces_needed <= dimension,
                saturates: subspaces_needed == dimension,
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_candidate_matches_the_codewords() {
        let candidate = CodeCandidate::canonical();
        assert_eq!(candidate.support0(), &[0, 6, 9, 15, 19, 21, 26, 28]);
        assert_eq!(candidate.signs0(), &[1, 1, 1, -1, -1, 1, 1, 1]);
        assert_eq!(candidate.support1(), &[3, 5, 10, 12, 16, 22, 25, 31]);
        assert_eq!(candidate.signs1(), &[-1, -1, -1, 1, -1, 1, 1, 1]);
    }

    #[test]
    fn canonical_candidate_is_balanced() {
        let report = check_balance(&CodeCandidate::canonical());
        assert!(report.pass);
        assert!(report.violations.is_empty());
    }

    #[test]
    fn uniform_support_is_balanced() {
        let all: Vec<usize> = (0..32).collect();
        let candidate =
            CodeCandidate::new(all.clone(), vec![1; 32], all, vec![1; 32]).unwrap();
        assert!(check_balance(&candidate).pass);
    }

    #[test]
    fn low_block_support_fails_balance_on_the_last_bit() {
        // Indices 0..8 never excite bits 1 and 2, and pair unevenly with
        // bit 5; the violations must include comparisons naming label 5.
        let canonical = CodeCandidate::canonical();
        let candidate = CodeCandidate::new(
            (0..8).collect(),
            vec![1; 8],
            canonical.support1().to_vec(),
            vec![1; 8],
        )
        .unwrap();
        let report = check_balance(&candidate);
        assert!(!report.pass);
        assert!(report
            .violations
            .iter()
            .all(|v| v.word == 0));
        assert!(report
            .violations
            .iter()
            .any(|v| v.k == 5 || v.l == 5));
        let kl51 = report
            .violations
            .iter()
            .find(|v| v.k == 5 && v.l == 1)
            .expect("bit pair (5,1) is unbalanced");
        assert_eq!(kl51.class_counts, [4, 0, 4, 0]);
    }

    #[test]
    fn canonical_candidate_passes_the_orthogonality_oracle() {
        let report = check_qec(&CodeCandidate::canonical()).unwrap();
        assert!(report.verdict);
        assert!(report.max_off_diagonal < 1e-12);
        assert!(report.max_diagonal_deviation < 1e-12);
    }

    #[test]
    fn one_flipped_sign_breaks_orthogonality() {
        let canonical = CodeCandidate::canonical();
        let mut signs0 = canonical.signs0().to_vec();
        signs0[3] = -signs0[3];
        let candidate = CodeCandidate::new(
            canonical.support0().to_vec(),
            signs0,
            canonical.support1().to_vec(),
            canonical.signs1().to_vec(),
        )
        .unwrap();
        assert!(!check_qec(&candidate).unwrap().verdict);
    }

    #[test]
    fn all_plus_signs_break_orthogonality() {
        let canonical = CodeCandidate::canonical();
        let candidate = CodeCandidate::new(
            canonical.support0().to_vec(),
            vec![1; 8],
            canonical.support1().to_vec(),
            vec![1; 8],
        )
        .unwrap();
        assert!(!check_qec(&candidate).unwrap().verdict);
    }

    #[test]
    fn integer_and_float_oracles_agree_on_spot_checks() {
        let masks = error_masks();
        let canonical = CodeCandidate::canonical();
        let ok = signed_images_orthonormal(
            [canonical.support0(), canonical.support1()],
            [canonical.signs0(), canonical.signs1()],
            &masks,
        );
        assert!(ok);

        let mut flipped = canonical.signs0().to_vec();
        flipped[0] = -flipped[0];
        let bad = signed_images_orthonormal(
            [canonical.support0(), canonical.support1()],
            [&flipped, canonical.signs1()],
            &masks,
        );
        assert!(!bad);
    }

    #[test]
    fn unbalanced_supports_search_empty() {
        let canonical = CodeCandidate::canonical();
        let hits = search_signs(&(0..8).collect::<Vec<_>>(), canonical.support1()).unwrap();
        assert!(hits.is_empty());
    }

    #[test]
    fn search_rejects_wrong_support_sizes() {
        assert!(search_signs(&[0, 1, 2], &[3, 4, 5]).is_err());
    }

    #[test]
    fn negative_counts_are_gauge_reduced() {
        let canonical = CodeCandidate::canonical();
        assert_eq!(canonical.negative_sign_counts(), (2, 4));

        // Flipping every sign of a codeword is the same physical state, so
        // the reported count must not change.
        let flipped0: Vec<i8> = canonical.signs0().iter().map(|s| -s).collect();
        let flipped = CodeCandidate::new(
            canonical.support0().to_vec(),
            flipped0,
            canonical.support1().to_vec(),
            canonical.signs1().to_vec(),
        )
        .unwrap();
        assert_eq!(flipped.negative_sign_counts(), (2, 4));
    }

    #[test]
    fn candidate_validation_rejects_malformed_input() {
        assert!(CodeCandidate::new(vec![], vec![], vec![0], vec![1]).is_err());
        assert!(CodeCandidate::new(vec![0, 0], vec![1, 1], vec![1], vec![1]).is_err());
        assert!(CodeCandidate::new(vec![32], vec![1], vec![0], vec![1]).is_err());
        assert!(CodeCandidate::new(vec![0], vec![2], vec![1], vec![1]).is_err());
        assert!(CodeCandidate::new(vec![0, 1], vec![1], vec![2], vec![1]).is_err());
    }

    #[test]
    fn feasibility_table_matches_the_counting_bound() {
        let rows = min_code_length(7).unwrap();
        assert_eq!(rows.len(), 7);

        let n4 = rows[3];
        assert_eq!(n4.subspaces_needed, 26);
        assert_eq!(n4.dimension, 16);
        assert!(!n4.feasible);

        let n5 = rows[4];
        assert_eq!(n5.subspaces_needed, 32);
        assert_eq!(n5.dimension, 32);
        assert!(n5.feasible);
        assert!(n5.saturates);

        let n7 = rows[6];
        assert_eq!(n7.subspaces_needed, 44);
        assert_eq!(n7.dimension, 128);
        assert!(n7.feasible);
        assert!(!n7.saturates);
    }

    #[test]
    fn feasibility_table_rejects_degenerate_ranges() {
        assert!(min_code_length(0).is_err());
        assert!(min_code_length(63).is_err());
    }
}
