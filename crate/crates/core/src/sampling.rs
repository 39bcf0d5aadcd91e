//! Seeded random states and operators.
//!
//! Haar pure states are normalized vectors of i.i.d. standard complex
//! Gaussians; random mixed states are `G G^dag / Tr(G G^dag)` for a square
//! complex Gaussian `G`.

use std::f64::consts::TAU;

use rand::Rng;
use rand_distr::StandardNormal;

use crate::linalg::{hermitian_eig_unchecked, ComplexMatrix, DensityOperator, PureState, C64};

fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

pub fn gaussian_matrix<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> ComplexMatrix {
    let data = (0..dim * dim).map(|_| complex_gaussian(rng)).collect();
    ComplexMatrix::from_vec(dim, data).expect("valid dimension")
}

pub fn haar_pure_state<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> PureState {
    loop {
        let amps = (0..dim).map(|_| complex_gaussian(rng)).collect();
        let s = PureState::new(amps).expect("valid dimension");
        if let Ok(n) = s.normalized() {
            return n;
        }
    }
}

pub fn random_mixed_state<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> DensityOperator {
    let g = gaussian_matrix(dim, rng);
    let gg = &g * &g.adjoint();
    let tr = gg.trace().re;
    // G G^dag is Hermitian PSD by construction; symmetrize away round-off.
    let m = &gg + &gg.adjoint();
    DensityOperator::from_matrix_unchecked(m.scale(0.5 / tr))
}

/// Phases uniform in `[0, 2π)`.
pub fn random_phases<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Vec<f64> {
    (0..dim).map(|_| rng.random::<f64>() * TAU).collect()
}

/// Random unitary from the eigenvectors of a Gaussian Hermitian matrix.
pub fn random_unitary<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> ComplexMatrix {
    let g = gaussian_matrix(dim, rng);
    let h = &g + &g.adjoint();
    let eig = hermitian_eig_unchecked(&h);
    let mut u = ComplexMatrix::zeros(dim);
    for (col, v) in eig.eigenvectors.iter().enumerate() {
        for (row, z) in v.iter().enumerate() {
            u[(row, col)] = *z;
        }
    }
    u
}

/// Hermitian operator with spectrum uniform in `[0, 1]`, i.e. a valid POVM effect.
pub fn random_effect<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> ComplexMatrix {
    let u = random_unitary(dim, rng);
    let spectrum: Vec<f64> = (0..dim).map(|_| rng.random::<f64>()).collect();
    let e = &(&u * &ComplexMatrix::from_real_diag(&spectrum)) * &u.adjoint();
    (&e + &e.adjoint()).scale(0.5)
}
