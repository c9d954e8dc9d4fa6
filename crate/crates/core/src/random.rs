//! Seeded randomness for generators, inputs, and randomized checks.
//!
//! Every randomized path in the crate draws from ChaCha12
//! ([`rand_chacha::ChaCha12Rng`]) seeded explicitly, so identical seeds give
//! identical runs on every platform. Distinct consumers that share one seed
//! use distinct ChaCha streams instead of partitioning one draw sequence.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use crate::cmatrix::CMatrix;

/// The crate's pseudorandom generator (ChaCha12, explicitly seeded).
pub type SeededRng = ChaCha12Rng;

/// A generator for `seed`, stream 0.
pub fn rng(seed: u64) -> SeededRng {
    ChaCha12Rng::seed_from_u64(seed)
}

/// A generator for `seed` on an independent stream, so several consumers of
/// one seed draw non-overlapping sequences.
pub fn rng_stream(seed: u64, stream: u64) -> SeededRng {
    let mut r = ChaCha12Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

fn random_complex(rng: &mut SeededRng) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0))
}

/// A random normalized qubit state (α, β): complex components drawn uniformly
/// from the square and rescaled to unit norm. Not Haar-uniform — uniform
/// coverage is irrelevant for the checks this feeds — but never degenerate.
pub fn random_amplitude_pair(rng: &mut SeededRng) -> (Complex64, Complex64) {
    loop {
        let a = random_complex(rng);
        let b = random_complex(rng);
        let norm_sq = a.norm_sqr() + b.norm_sqr();
        if norm_sq > 1e-3 {
            let inv = 1.0 / norm_sq.sqrt();
            return (a * inv, b * inv);
        }
    }
}

/// A random 4×4 Hermitian matrix with entries of order one: a uniform complex
/// matrix symmetrized as (A + A†)/2.
pub fn random_hermitian4(rng: &mut SeededRng) -> CMatrix {
    let a = CMatrix::from_fn(4, |_, _| random_complex(rng));
    a.add(&a.adjoint())
        .expect("square by construction")
        .scaled(Complex64::new(0.5, 0.0))
}

/// A random 2×2 unitary, built by Gram–Schmidt on two random complex columns.
pub fn random_unitary2(rng: &mut SeededRng) -> CMatrix {
    loop {
        let c0 = [random_complex(rng), random_complex(rng)];
        let c1 = [random_complex(rng), random_complex(rng)];
        let n0 = (c0[0].norm_sqr() + c0[1].norm_sqr()).sqrt();
        if n0 < 1e-2 {
            continue;
        }
        let u0 = [c0[0] / n0, c0[1] / n0];
        let overlap = u0[0].conj() * c1[0] + u0[1].conj() * c1[1];
        let v1 = [c1[0] - overlap * u0[0], c1[1] - overlap * u0[1]];
        let n1 = (v1[0].norm_sqr() + v1[1].norm_sqr()).sqrt();
        if n1 < 1e-2 {
            continue;
        }
        let u1 = [v1[0] / n1, v1[1] / n1];
        return CMatrix::from_rows(&[vec![u0[0], u1[0]], vec![u0[1], u1[1]]])
            .expect("static shape");
    }
}
