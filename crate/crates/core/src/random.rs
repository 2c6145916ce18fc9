//! Seeded random states and observables for property checks.
//!
//! Spectra are drawn uniformly from the probability simplex and eigenvectors
//! from the Haar measure (QR of a complex Ginibre matrix with the phase of
//! `R`'s diagonal divided out).

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1, StandardNormal};

use crate::linalg::{ComplexMatrix, HermitianOperator, C64};
use crate::states::{BlochVector, DensityMatrix};

pub type StateRng = ChaCha8Rng;

pub const DEFAULT_SEED: u64 = 20_170_601;

pub fn rng(seed: u64) -> StateRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn normal(r: &mut StateRng) -> f64 {
    StandardNormal.sample(r)
}

fn ginibre(dim: usize, r: &mut StateRng) -> DMatrix<C64> {
    DMatrix::from_fn(dim, dim, |_, _| C64::new(normal(r), normal(r)))
}

/// GUE-distributed Hermitian matrix.
pub fn random_hermitian(dim: usize, r: &mut StateRng) -> HermitianOperator {
    let g = ginibre(dim, r);
    let h = (&g + g.adjoint()) * C64::new(0.5, 0.0);
    HermitianOperator::from_hermitian_part(&ComplexMatrix::from_matrix_unchecked(h)).expect("finite by construction")
}

pub fn haar_unitary(dim: usize, r: &mut StateRng) -> ComplexMatrix {
    let qr = ginibre(dim, r).qr();
    let mut q = qr.q();
    let rr = qr.r();
    for j in 0..dim {
        let d = rr[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { C64::new(1.0, 0.0) };
        for i in 0..dim {
            q[(i, j)] *= phase;
        }
    }
    ComplexMatrix::from_matrix_unchecked(q)
}

/// Uniform point on the probability simplex.
pub fn random_simplex(dim: usize, r: &mut StateRng) -> Vec<f64> {
    let e: Vec<f64> = (0..dim).map(|_| Exp1.sample(r)).collect();
    let s: f64 = e.iter().sum();
    e.into_iter().map(|x| x / s).collect()
}

fn from_spectrum(weights: &[f64], u: &ComplexMatrix) -> DensityMatrix {
    let d = ComplexMatrix::from_diagonal(&weights.iter().map(|&w| C64::new(w, 0.0)).collect::<Vec<_>>());
    let m = u.mul(&d).and_then(|x| x.mul(&u.adjoint())).expect("square factors");
    let h = HermitianOperator::from_hermitian_part(&m).expect("finite");
    DensityMatrix::from_psd_unchecked(h).expect("unit trace")
}

/// Full-rank (almost surely) mixed state with simplex spectrum and Haar eigenvectors.
pub fn random_psd_unit_trace(dim: usize, r: &mut StateRng) -> DensityMatrix {
    let w = random_simplex(dim, r);
    let u = haar_unitary(dim, r);
    from_spectrum(&w, &u)
}

pub fn random_pure(dim: usize, r: &mut StateRng) -> DensityMatrix {
    let mut w = vec![0.0; dim];
    w[0] = 1.0;
    from_spectrum(&w, &haar_unitary(dim, r))
}

/// A state and an observable diagonal in the same random basis.
pub fn random_commuting_pair(dim: usize, r: &mut StateRng) -> (DensityMatrix, HermitianOperator) {
    let u = haar_unitary(dim, r);
    let w = random_simplex(dim, r);
    let rho = from_spectrum(&w, &u);
    let e: Vec<C64> = (0..dim).map(|_| C64::new(normal(r), 0.0)).collect();
    let h = u.mul(&ComplexMatrix::from_diagonal(&e)).and_then(|x| x.mul(&u.adjoint())).expect("square");
    (rho, HermitianOperator::from_hermitian_part(&h).expect("finite"))
}

/// Bloch vector uniform in the unit ball.
pub fn random_bloch(r: &mut StateRng) -> BlochVector {
    let v: [f64; 3] = [normal(r), normal(r), normal(r)];
    let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    let radius = r.random::<f64>().cbrt();
    BlochVector::new(radius * v[0] / n, radius * v[1] / n, radius * v[2] / n).expect("inside unit ball")
}

pub fn random_dim(lo: usize, hi: usize, r: &mut StateRng) -> usize {
    r.random_range(lo..=hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::eig_hermitian;

    #[test]
    fn haar_unitary_is_unitary() {
        let mut r = rng(3);
        for dim in [1, 2, 5, 12] {
            let u = haar_unitary(dim, &mut r);
            let e = u.adjoint().mul(&u).unwrap();
            assert!(e.max_abs_diff(&ComplexMatrix::identity(dim)) < 1e-12);
        }
    }

    #[test]
    fn random_states_are_valid() {
        let mut r = rng(4);
        for dim in 2..10 {
            for rho in [random_psd_unit_trace(dim, &mut r), random_pure(dim, &mut r)] {
                DensityMatrix::new(rho.operator().clone()).unwrap();
            }
        }
        let p = random_pure(6, &mut r);
        assert!((p.purity() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn commuting_pair_commutes() {
        let mut r = rng(5);
        let (rho, h) = random_commuting_pair(7, &mut r);
        let c = crate::linalg::commutator(rho.matrix(), h.as_matrix()).unwrap();
        assert!(c.max_abs() < 1e-12);
    }

    #[test]
    fn simplex_and_bloch() {
        let mut r = rng(6);
        let w = random_simplex(9, &mut r);
        assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-14);
        assert!(w.iter().all(|&x| x >= 0.0));
        for _ in 0..100 {
            assert!(random_bloch(&mut r).norm() <= 1.0);
        }
    }

    #[test]
    fn seeded_streams_repeat() {
        let a = random_hermitian(4, &mut rng(9));
        let b = random_hermitian(4, &mut rng(9));
        assert_eq!(a, b);
        let s = eig_hermitian(&a).unwrap();
        assert_eq!(s.eigenvalues.len(), 4);
    }
}
