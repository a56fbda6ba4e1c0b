//! Concurrence, negativity, the pure-state three-tangle, and the closed-form
//! inversions from a Svetlichny value to three-tangle and tripartite
//! negativity.

use std::f64::consts::SQRT_2;

use serde::{Deserialize, Serialize};

use crate::correlations::svetlichny_s3;
use crate::error::{out_of_domain, Error, Result};
use crate::ising::{analytic_ground_state_n3, BETA_MIN, BETA_NEAR_ZERO};
use crate::linalg::{
    ensure_qubit_density, hermitian_eig, partial_trace, partial_transpose, pauli_string, Axis,
    ComplexMatrix, ComplexVector, C64,
};
use crate::photonics::{p_of_beta, werner, NoiseModel};

const CLAMP_TOL: f64 = 1e-9;
const S3_MAX: f64 = 4.0 * SQRT_2;

/// One spin against the other two. Spins are numbered 1 to 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BipartitionLabel {
    solo: usize,
}

impl BipartitionLabel {
    pub const ALL: [BipartitionLabel; 3] = [
        BipartitionLabel { solo: 1 },
        BipartitionLabel { solo: 2 },
        BipartitionLabel { solo: 3 },
    ];

    pub fn new(solo: usize) -> Result<Self> {
        if !(1..=3).contains(&solo) {
            return Err(out_of_domain("solo spin", solo as f64, "{1, 2, 3}"));
        }
        Ok(Self { solo })
    }

    pub fn solo(&self) -> usize {
        self.solo
    }

    pub fn pair(&self) -> (usize, usize) {
        match self.solo {
            1 => (2, 3),
            2 => (1, 3),
            _ => (1, 2),
        }
    }
}

fn clamp_unit(what: &str, v: f64) -> Result<f64> {
    if (0.0..=1.0).contains(&v) {
        return Ok(v);
    }
    let excess = if v < 0.0 { -v } else { v - 1.0 };
    if excess <= CLAMP_TOL {
        if excess > 1e-12 {
            log::warn!("{what} = {v:e} clamped to [0, 1]");
        }
        return Ok(v.clamp(0.0, 1.0));
    }
    Err(Error::Numeric(format!("{what} = {v} lies outside [0, 1]")))
}

/// Eigenvalues of a density matrix below this are treated as exact zeros.
const RANK_TOL: f64 = 1e-14;

/// Wootters concurrence `max(0, l1 - l2 - l3 - l4)`, with `l_i` the
/// descending square roots of the spectrum of `rho (YY) rho* (YY)`.
///
/// With `rho = X X^dag`, the `l_i` are the singular values of the complex
/// symmetric `A = X^T (YY) X`. They are read off as the positive eigenvalues
/// of the Hermitian dilation `[[0, A], [A^dag, 0]]`, which keeps small `l_i`
/// accurate instead of taking square roots of rounding noise.
pub fn concurrence(rho2: &ComplexMatrix) -> Result<f64> {
    ensure_qubit_density(rho2, 2)?;
    let eig = hermitian_eig(rho2)?;
    let cols: Vec<Vec<C64>> = eig
        .eigenvalues
        .iter()
        .zip(&eig.eigenvectors)
        .filter(|(lambda, _)| **lambda > RANK_TOL)
        .map(|(lambda, v)| v.entries().iter().map(|z| z * lambda.sqrt()).collect())
        .collect();
    let r = cols.len();
    let yy = pauli_string(&[Axis::Y, Axis::Y]);
    let a = ComplexMatrix::from_fn(r, r, |i, j| {
        let mut acc = C64::new(0.0, 0.0);
        for p in 0..4 {
            for q in 0..4 {
                acc += cols[i][p] * yy[(p, q)] * cols[j][q];
            }
        }
        acc
    });
    let dilation = ComplexMatrix::from_fn(2 * r, 2 * r, |i, j| match (i < r, j < r) {
        (true, false) => a[(i, j - r)],
        (false, true) => a[(j, i - r)].conj(),
        _ => C64::new(0.0, 0.0),
    });
    let mut l = [0.0; 4];
    if r > 0 {
        let spectrum = hermitian_eig(&dilation)?.eigenvalues;
        for (k, s) in spectrum.iter().rev().take(r).enumerate() {
            l[k] = s.max(0.0);
        }
    }
    Ok((l[0] - l[1] - l[2] - l[3]).clamp(0.0, 1.0))
}

/// `||rho^pt||_1 - 1` with the transpose on the solo spin, evaluated as
/// twice the mass of the negative eigenvalues.
pub fn negativity(rho: &ComplexMatrix, cut: BipartitionLabel) -> Result<f64> {
    ensure_qubit_density(rho, 3)?;
    let pt = partial_transpose(rho, &[2, 2, 2], cut.solo - 1)?;
    let neg: f64 = hermitian_eig(&pt)?
        .eigenvalues
        .iter()
        .filter(|&&x| x < 0.0)
        .map(|x| -x)
        .sum();
    Ok(2.0 * neg)
}

/// Geometric mean of the three one-versus-two negativities.
pub fn tripartite_negativity(rho: &ComplexMatrix) -> Result<f64> {
    let mut prod = 1.0;
    for cut in BipartitionLabel::ALL {
        prod *= negativity(rho, cut)?;
    }
    Ok(prod.cbrt())
}

/// `C_{1|23}^2 - C_{12}^2 - C_{13}^2` with `C_{1|23} = 2 sqrt(det rho_1)`.
pub fn three_tangle_pure(psi: &ComplexVector) -> Result<f64> {
    if psi.dim() != 8 {
        return Err(Error::Dimension(format!(
            "expected a three-qubit state vector, got dimension {}",
            psi.dim()
        )));
    }
    psi.ensure_normalized(1e-10)?;
    let rho = psi.projector();
    let dims = [2, 2, 2];
    let r1 = partial_trace(&rho, &dims, &[0])?;
    let det: C64 = r1[(0, 0)] * r1[(1, 1)] - r1[(0, 1)] * r1[(1, 0)];
    let c1_23_sq = 4.0 * det.re.max(0.0);
    let c12 = concurrence(&partial_trace(&rho, &dims, &[0, 1])?)?;
    let c13 = concurrence(&partial_trace(&rho, &dims, &[0, 2])?)?;
    clamp_unit("three-tangle", c1_23_sq - c12 * c12 - c13 * c13)
}

/// Accepts `s3` in `(sqrt2, 4 sqrt2]`; values above the maximum by less than
/// the clamp tolerance are pulled back onto it.
fn check_s3(s3: f64) -> Result<f64> {
    if s3.is_finite() && s3 > S3_MAX && s3 - S3_MAX <= CLAMP_TOL {
        return Ok(S3_MAX);
    }
    if !(s3.is_finite() && s3 > SQRT_2 && s3 <= S3_MAX) {
        return Err(out_of_domain("|S3|", s3, "(sqrt2, 4 sqrt2]"));
    }
    Ok(s3)
}

/// Three-tangle of the ground state with Svetlichny value `s3`:
/// `(3 (s^2 - 2 sqrt2 s - 4) + sqrt(3 s) (4 sqrt2 - s)^(3/2)) / 36`.
pub fn tau3_from_s3(s3: f64) -> Result<f64> {
    let s = check_s3(s3)?;
    let tau =
        (3.0 * (s * s - 2.0 * SQRT_2 * s - 4.0) + (3.0 * s).sqrt() * (S3_MAX - s).powf(1.5)) / 36.0;
    clamp_unit("three-tangle", tau)
}

/// `a0 = (3 sqrt2 + sqrt(12 sqrt2 s - 3 s^2)) / (s - sqrt2)`.
pub fn a0_from_s3(s3: f64) -> Result<f64> {
    let s = check_s3(s3)?;
    let disc = (12.0 * SQRT_2 * s - 3.0 * s * s).max(0.0);
    Ok((3.0 * SQRT_2 + disc.sqrt()) / (s - SQRT_2))
}

/// `2 sqrt(2 (1 + a0^2)) / (3 + a0^2)`.
pub fn n3_from_a0(a0: f64) -> f64 {
    2.0 * (2.0 * (1.0 + a0 * a0)).sqrt() / (3.0 + a0 * a0)
}

pub fn n3_from_s3(s3: f64) -> Result<f64> {
    Ok(n3_from_a0(a0_from_s3(s3)?).min(1.0))
}

/// `|S3|` of the noiseless ground state and of its Werner mixture at `beta`.
fn noisy_s3(beta: f64, noise: &NoiseModel) -> Result<(f64, f64, f64)> {
    let psi = analytic_ground_state_n3(beta)?;
    let pure = svetlichny_s3(&psi.projector())?.abs();
    let p = p_of_beta(noise, beta)?;
    Ok((pure, p, p * pure))
}

/// Smallest and largest `p(beta) |S3|_pure(beta)` over `[-2, -1e-6]`, read
/// at the endpoints. Both factors grow towards zero field for a
/// non-negative noise slope, so the curve is monotone there.
pub fn attainable_s3_range(noise: &NoiseModel) -> Result<(f64, f64)> {
    let a = noisy_s3(BETA_MIN, noise)?.2;
    let b = noisy_s3(BETA_NEAR_ZERO, noise)?.2;
    Ok((a.min(b), a.max(b)))
}

/// Solves `p(beta) |S3|_pure(beta) = s3_exp` on `[-2, -1e-6]` by bisection.
/// The white-noise part has no Pauli correlations, so the Werner value
/// factorizes; this is checked on the solution.
pub fn infer_beta_from_measured_s3(s3_exp: f64, noise: &NoiseModel) -> Result<f64> {
    noise.validate()?;
    if !(s3_exp.is_finite() && s3_exp > 0.0) {
        return Err(out_of_domain("measured |S3|", s3_exp, "(0, inf)"));
    }
    let (lo_val, hi_val) = (
        noisy_s3(BETA_MIN, noise)?.2,
        noisy_s3(BETA_NEAR_ZERO, noise)?.2,
    );
    let increasing = hi_val >= lo_val;
    let (min, max) = attainable_s3_range(noise)?;
    if s3_exp < min || s3_exp > max {
        return Err(Error::Unsolvable {
            what: "measured |S3|",
            value: s3_exp,
            min,
            max,
        });
    }

    let (mut a, mut b) = (BETA_MIN, BETA_NEAR_ZERO);
    while b - a > 1e-10 {
        let mid = 0.5 * (a + b);
        let v = noisy_s3(mid, noise)?.2;
        if (v < s3_exp) == increasing {
            a = mid;
        } else {
            b = mid;
        }
    }
    let beta = 0.5 * (a + b);

    let (pure, p, product) = noisy_s3(beta, noise)?;
    let psi = analytic_ground_state_n3(beta)?;
    let direct = svetlichny_s3(&werner(&psi, p)?)?.abs();
    if (direct - product).abs() > 1e-12 * pure.max(1.0) {
        return Err(Error::Numeric(format!(
            "Werner value {direct} does not factorize as {p} * {pure}"
        )));
    }
    Ok(beta)
}
