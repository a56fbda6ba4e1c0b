//! Random states for tests.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::linalg::{ComplexMatrix, ComplexVector, C64};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_pure(rng: &mut impl Rng, dim: usize) -> ComplexVector {
    let v: Vec<C64> = (0..dim)
        .map(|_| C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect();
    ComplexVector::new(v).unwrap().normalized().unwrap()
}

/// Mixture of up to four random pure states with random weights.
pub fn random_density(rng: &mut impl Rng, dim: usize) -> ComplexMatrix {
    let k = rng.gen_range(1..=4);
    let weights: Vec<f64> = (0..k).map(|_| rng.gen::<f64>() + 1e-3).collect();
    let total: f64 = weights.iter().sum();
    let mut rho = ComplexMatrix::zeros(dim, dim);
    for w in weights {
        rho = &rho + &random_pure(rng, dim).projector().scale_real(w / total);
    }
    // Re-symmetrize so Hermiticity holds to the last bit.
    let adj = rho.adjoint();
    (&rho + &adj).scale_real(0.5)
}

pub fn random_product3(rng: &mut impl Rng) -> ComplexVector {
    random_pure(rng, 2)
        .tensor(&random_pure(rng, 2))
        .tensor(&random_pure(rng, 2))
}

/// `(|+++> + |--->) / sqrt2`.
pub fn ghz_x() -> ComplexVector {
    let plus = ComplexVector::from_real(&[1.0, 1.0])
        .unwrap()
        .normalized()
        .unwrap();
    let minus = ComplexVector::from_real(&[1.0, -1.0])
        .unwrap()
        .normalized()
        .unwrap();
    let a = plus.tensor(&plus).tensor(&plus);
    let b = minus.tensor(&minus).tensor(&minus);
    let sum: Vec<C64> = a
        .entries()
        .iter()
        .zip(b.entries())
        .map(|(x, y)| x + y)
        .collect();
    ComplexVector::new(sum).unwrap().normalized().unwrap()
}

/// `sqrt2 (1 + 6 (a0 + 1) / (3 + a0^2))`, the magnitude of the four-correlator
/// Svetlichny value on the three-spin ground state, expanded by hand.
pub fn s3_closed_form(a0: f64) -> f64 {
    std::f64::consts::SQRT_2 * (1.0 + 6.0 * (a0 + 1.0) / (3.0 + a0 * a0))
}
