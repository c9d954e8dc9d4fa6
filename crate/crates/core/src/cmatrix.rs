//! Small dense complex matrices.
//!
//! Everything this crate multiplies is a square complex matrix of dimension
//! at most 32 (single-qubit operators, 4×4 qubit–environment couplings, the
//! 32×32 encoder), so a plain row-major `Vec<Complex64>` with `O(n³)` kernels
//! is the right tool: no BLAS, no sparsity, no surprises in the tolerances.
//!
//! The one nontrivial routine is [`CMatrix::expm`], the matrix exponential
//! used to turn Hermitian coupling generators into joint unitaries. It uses
//! scaling-and-squaring with a Taylor series on the scaled matrix; for the
//! operator norms that arise here (≤ a few units) the series is short and
//! the result is unitary to well below the crate-wide 1e-12 tolerance.

use std::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Absolute tolerance for unitarity, Hermiticity, and normalization checks.
pub const TOL: f64 = 1e-12;

/// A dense, row-major, square complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    /// The `dim`×`dim` zero matrix.
    pub fn zeros(dim: usize) -> Self {
        CMatrix {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    /// The `dim`×`dim` identity matrix.
    pub fn identity(dim: usize) -> Self {
        let mut m = CMatrix::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Builds a matrix from rows; every row must have the same length as the
    /// number of rows.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let dim = rows.len();
        let mut m = CMatrix::zeros(dim);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: row.len(),
                });
            }
            for (c, &v) in row.iter().enumerate() {
                m[(r, c)] = v;
            }
        }
        Ok(m)
    }

    /// Builds a matrix entry-wise from a closure over `(row, col)`.
    pub fn from_fn<F: FnMut(usize, usize) -> Complex64>(dim: usize, mut f: F) -> Self {
        let mut m = CMatrix::zeros(dim);
        for r in 0..dim {
            for c in 0..dim {
                m[(r, c)] = f(r, c);
            }
        }
        m
    }

    /// A 2×2 matrix from real integer entries (enough for the code table's
    /// recovery operations, whose entries are all in {0, ±1}).
    pub fn from_real_2x2(entries: [[i8; 2]; 2]) -> Self {
        CMatrix::from_fn(2, |r, c| Complex64::new(f64::from(entries[r][c]), 0.0))
    }

    /// Matrix dimension (number of rows = number of columns).
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Matrix product `self · rhs`.
    pub fn mul(&self, rhs: &CMatrix) -> Result<CMatrix> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: rhs.dim,
            });
        }
        let n = self.dim;
        let mut out = CMatrix::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let a = self[(r, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for c in 0..n {
                    out[(r, c)] += a * rhs[(k, c)];
                }
            }
        }
        Ok(out)
    }

    /// Matrix–vector product `self · v`.
    pub fn matvec(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: v.len(),
            });
        }
        let n = self.dim;
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        for r in 0..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for c in 0..n {
                acc += self[(r, c)] * v[c];
            }
            out[r] = acc;
        }
        Ok(out)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> CMatrix {
        CMatrix::from_fn(self.dim, |r, c| self[(c, r)].conj())
    }

    /// Entry-wise sum.
    pub fn add(&self, rhs: &CMatrix) -> Result<CMatrix> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: rhs.dim,
            });
        }
        let mut out = self.clone();
        for i in 0..out.data.len() {
            out.data[i] += rhs.data[i];
        }
        Ok(out)
    }

    /// Entry-wise scaling by a complex factor.
    pub fn scaled(&self, factor: Complex64) -> CMatrix {
        let mut out = self.clone();
        for v in &mut out.data {
            *v *= factor;
        }
        out
    }

    /// Kronecker product `self ⊗ rhs`; the left factor supplies the
    /// most-significant index bits of the result.
    pub fn kron(&self, rhs: &CMatrix) -> CMatrix {
        let n = self.dim;
        let m = rhs.dim;
        CMatrix::from_fn(n * m, |r, c| self[(r / m, c / m)] * rhs[(r % m, c % m)])
    }

    /// Maximum absolute entry-wise difference from another matrix.
    pub fn max_abs_diff(&self, rhs: &CMatrix) -> f64 {
        assert_eq!(self.dim, rhs.dim, "max_abs_diff on mismatched dimensions");
        self.data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Maximum absolute entry of `self† · self − I`; zero for a unitary.
    pub fn unitarity_deviation(&self) -> f64 {
        let gram = self.adjoint().mul(self).expect("square by construction");
        gram.max_abs_diff(&CMatrix::identity(self.dim))
    }

    /// Maximum absolute entry of `self − self†`; zero for a Hermitian matrix.
    pub fn hermiticity_deviation(&self) -> f64 {
        self.max_abs_diff(&self.adjoint())
    }

    /// Errors unless the matrix is unitary within `tol`.
    pub fn require_unitary(&self, tol: f64) -> Result<()> {
        let deviation = self.unitarity_deviation();
        if deviation > tol {
            return Err(Error::NotUnitary { deviation });
        }
        Ok(())
    }

    /// Errors unless the matrix is Hermitian within `tol`.
    pub fn require_hermitian(&self, tol: f64) -> Result<()> {
        let deviation = self.hermiticity_deviation();
        if deviation > tol {
            return Err(Error::NotHermitian { deviation });
        }
        Ok(())
    }

    /// Infinity norm (maximum absolute row sum).
    pub fn inf_norm(&self) -> f64 {
        (0..self.dim)
            .map(|r| (0..self.dim).map(|c| self[(r, c)].norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Matrix exponential `exp(self)` by scaling-and-squaring.
    ///
    /// The matrix is scaled by `2^-s` until its infinity norm is at most
    /// `0.5`, exponentiated by a truncated Taylor series (terms are added
    /// until they fall below 1e-22 in norm), and squared back `s` times.
    pub fn expm(&self) -> CMatrix {
        let norm = self.inf_norm();
        let s = if norm > 0.5 {
            (norm / 0.5).log2().ceil() as u32
        } else {
            0
        };
        let scale = Complex64::new(0.5f64.powi(s as i32), 0.0);
        let b = self.scaled(scale);

        let mut result = CMatrix::identity(self.dim);
        let mut term = CMatrix::identity(self.dim);
        for k in 1..=40u32 {
            term = term
                .mul(&b)
                .expect("square by construction")
                .scaled(Complex64::new(1.0 / f64::from(k), 0.0));
            result = result.add(&term).expect("square by construction");
            if term.inf_norm() < 1e-22 {
                break;
            }
        }

        for _ in 0..s {
            result = result.mul(&result).expect("square by construction");
        }
        result
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex64;

    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        &self.data[r * self.dim + c]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        &mut self.data[r * self.dim + c]
    }
}

/// The 2×2 Pauli matrices and the identity, used throughout the crate.
pub mod pauli {
    use num_complex::Complex64;

    use super::CMatrix;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// 2×2 identity.
    pub fn id2() -> CMatrix {
        CMatrix::identity(2)
    }

    /// σx (bit flip).
    pub fn sigma_x() -> CMatrix {
        CMatrix::from_rows(&[vec![c(0.0, 0.0), c(1.0, 0.0)], vec![c(1.0, 0.0), c(0.0, 0.0)]])
            .expect("static shape")
    }

    /// σy.
    pub fn sigma_y() -> CMatrix {
        CMatrix::from_rows(&[vec![c(0.0, 0.0), c(0.0, -1.0)], vec![c(0.0, 1.0), c(0.0, 0.0)]])
            .expect("static shape")
    }

    /// σz (sign flip).
    pub fn sigma_z() -> CMatrix {
        CMatrix::from_rows(&[vec![c(1.0, 0.0), c(0.0, 0.0)], vec![c(0.0, 0.0), c(-1.0, 0.0)]])
            .expect("static shape")
    }
}

#[cfg(test)]
mod tests {
    use super::pauli::{sigma_x, sigma_y, sigma_z};
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn identity_is_unitary_and_hermitian() {
        let m = CMatrix::identity(4);
        assert!(m.unitarity_deviation() < 1e-15);
        assert!(m.hermiticity_deviation() < 1e-15);
    }

    #[test]
    fn pauli_products_follow_the_algebra() {
        // σx·σz = −iσy, the combined-flip convention used by the code table.
        let xz = sigma_x().mul(&sigma_z()).unwrap();
        let minus_i_sy = sigma_y().scaled(c(0.0, -1.0));
        assert!(xz.max_abs_diff(&minus_i_sy) < 1e-15);
    }

    #[test]
    fn adjoint_conjugates_and_transposes() {
        let m = CMatrix::from_rows(&[
            vec![c(1.0, 2.0), c(3.0, -1.0)],
            vec![c(0.0, 4.0), c(-2.0, 0.5)],
        ])
        .unwrap();
        let a = m.adjoint();
        assert_eq!(a[(0, 1)], c(0.0, -4.0));
        assert_eq!(a[(1, 0)], c(3.0, 1.0));
    }

    #[test]
    fn kron_places_left_factor_on_high_bits() {
        let zx = sigma_z().kron(&sigma_x());
        // Row 0 ⊗-index (0,0): σz[0,0]·σx[0,·] → entry at column 1.
        assert_eq!(zx[(0, 1)], c(1.0, 0.0));
        // High block carries σz's −1.
        assert_eq!(zx[(2, 3)], c(-1.0, 0.0));
        assert_eq!(zx[(3, 2)], c(-1.0, 0.0));
    }

    #[test]
    fn expm_of_zero_is_identity() {
        let z = CMatrix::zeros(4);
        assert!(z.expm().max_abs_diff(&CMatrix::identity(4)) < 1e-15);
    }

    #[test]
    fn expm_matches_closed_form_for_involutions() {
        // exp(−iθA) = cosθ·I − i·sinθ·A whenever A² = I.
        let theta = 0.37f64;
        let a = sigma_x().kron(&sigma_x());
        let exact = CMatrix::identity(4)
            .scaled(c(theta.cos(), 0.0))
            .add(&a.scaled(c(0.0, -theta.sin())))
            .unwrap();
        let computed = a.scaled(c(0.0, -theta)).expm();
        assert!(computed.max_abs_diff(&exact) < 1e-14);
    }

    #[test]
    fn expm_of_anti_hermitian_is_unitary() {
        // A Hermitian generator with norm well above the scaling threshold.
        let g = sigma_x()
            .kron(&sigma_x())
            .add(&sigma_y().kron(&sigma_y()))
            .unwrap()
            .add(&sigma_z().kron(&sigma_z()))
            .unwrap();
        let u = g.scaled(c(0.0, -2.3)).expm();
        assert!(u.unitarity_deviation() < 1e-13);
    }

    #[test]
    fn matvec_applies_rows() {
        let m = sigma_x();
        let v = vec![c(0.25, 0.0), c(0.75, 0.0)];
        let out = m.matvec(&v).unwrap();
        assert_eq!(out, vec![c(0.75, 0.0), c(0.25, 0.0)]);
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let m = CMatrix::identity(2);
        let err = m.matvec(&[c(1.0, 0.0)]).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { expected: 2, got: 1 }));
    }
}
