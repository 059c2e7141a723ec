//! Seeded random sampling of states, unitaries, and density operators.
//!
//! Every sampler is a pure function of a 64-bit seed driving a ChaCha8
//! stream, so results are reproducible bit for bit and batches can derive
//! per-item seeds with [`derive_seed`] without caring about evaluation order.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::decomp::qr;
use crate::matrix::{vec_norm, ComplexMatrix};
use crate::state::{DensityOperator, PureState};

/// The generator behind all sampling in this workspace.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Stateless per-index seed derivation (SplitMix64 finalizer over the base
/// seed and index), used to keep parallel batches order-independent.
pub fn derive_seed(base: u64, index: u64) -> u64 {
    let mut z = base ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn standard_complex(rng: &mut ChaCha8Rng) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im)
}

/// Ginibre matrix: independent standard complex Gaussian entries.
pub fn ginibre(rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| standard_complex(rng))
}

fn haar_state_with(dim: usize, rng: &mut ChaCha8Rng) -> PureState {
    loop {
        let v: Vec<Complex64> = (0..dim).map(|_| standard_complex(rng)).collect();
        let norm = vec_norm(&v);
        if norm > 1e-6 {
            let amplitudes = v.iter().map(|z| z / norm).collect();
            return PureState::new(vec![dim], amplitudes).expect("normalized by construction");
        }
    }
}

/// Haar-distributed unit vector on a single factor of the given dimension.
pub fn random_pure_state(dim: usize, seed: u64) -> PureState {
    assert!(dim >= 1, "dimension must be positive");
    haar_state_with(dim, &mut rng_from_seed(seed))
}

/// Haar-distributed state over two factors.
pub fn random_bipartite_state(dim_a: usize, dim_b: usize, seed: u64) -> PureState {
    let flat = random_pure_state(dim_a * dim_b, seed);
    PureState::new(vec![dim_a, dim_b], flat.amplitudes().to_vec()).expect("same amplitudes")
}

fn haar_unitary_with(dim: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    let g = ginibre(dim, dim, rng);
    let (q, r) = qr(&g);
    // Fixing the phases of the R diagonal makes the distribution Haar.
    let phases: Vec<Complex64> = (0..dim)
        .map(|i| {
            let d = r.get(i, i);
            if d.norm() > 1e-300 {
                d / d.norm()
            } else {
                Complex64::new(1.0, 0.0)
            }
        })
        .collect();
    q.matmul(&ComplexMatrix::diagonal(&phases))
}

/// Haar-distributed unitary matrix.
pub fn random_unitary(dim: usize, seed: u64) -> ComplexMatrix {
    assert!(dim >= 1, "dimension must be positive");
    haar_unitary_with(dim, &mut rng_from_seed(seed))
}

/// Full-rank random density operator `G G† / tr(G G†)` on a single factor.
pub fn random_density_operator(dim: usize, seed: u64) -> DensityOperator {
    assert!(dim >= 1, "dimension must be positive");
    let mut rng = rng_from_seed(seed);
    let g = ginibre(dim, dim, &mut rng);
    let m = g.matmul(&g.adjoint());
    let trace = m.trace().re;
    let rho = m.scale(Complex64::new(1.0 / trace, 0.0));
    DensityOperator::new(vec![dim], rho).expect("Gram construction is positive")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_dimensional_state_is_a_phase() {
        let s = random_pure_state(1, 3);
        assert!((s.amplitudes()[0].norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn seeded_sampling_is_deterministic() {
        let a = random_pure_state(4, 7);
        let b = random_pure_state(4, 7);
        assert_eq!(a.amplitudes(), b.amplitudes());

        let u = random_unitary(3, 11);
        let v = random_unitary(3, 11);
        assert_eq!(u.entries(), v.entries());
    }

    #[test]
    fn haar_moment_monte_carlo() {
        // E |⟨0|ψ⟩|² = 1/2 for Haar qubit states.
        let n = 10_000;
        let mean: f64 = (0..n)
            .map(|i| random_pure_state(2, derive_seed(42, i)).amplitudes()[0].norm_sqr())
            .sum::<f64>()
            / n as f64;
        assert!((mean - 0.5).abs() < 0.02, "mean = {mean}");
    }

    #[test]
    fn unitary_round_trip_and_determinant() {
        for dim in 2..=5 {
            let u = random_unitary(dim, 100 + dim as u64);
            assert!(u
                .matmul(&u.adjoint())
                .approx_eq(&ComplexMatrix::identity(dim), 1e-12));
            let det = crate::decomp::determinant(&u);
            assert!((det.norm() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn unitary_dim_one_is_phase() {
        let u = random_unitary(1, 5);
        assert!((u.get(0, 0).norm() - 1.0).abs() < 1e-13);
    }

    #[test]
    fn random_density_is_valid() {
        let rho = random_density_operator(3, 9);
        assert!((rho.matrix().trace().re - 1.0).abs() < 1e-12);
        assert!(rho.eigenvalues().iter().all(|&x| x > 0.0));
    }

    #[test]
    fn derived_seeds_differ() {
        let s: Vec<u64> = (0..100).map(|i| derive_seed(1, i)).collect();
        let mut uniq = s.clone();
        uniq.sort_unstable();
        uniq.dedup();
        assert_eq!(uniq.len(), s.len());
    }
}
