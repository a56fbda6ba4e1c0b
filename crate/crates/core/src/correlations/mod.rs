//! Pauli correlators of the three-spin ring: the two-spin entanglement
//! witness, the Svetlichny function in its four-correlator form and as the
//! Mermin sum `M3 + M3'`, angle optimization, and finite-difference slopes.

mod optimize;

use std::f64::consts::{FRAC_PI_4, SQRT_2};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ising::analytic_ground_state_n3;
use crate::linalg::{
    ensure_density, ensure_qubit_density, hermitian_eig, partial_trace, partial_transpose, pauli,
    pauli_string, Axis, ComplexMatrix, Tolerances,
};

pub use optimize::{optimize_svetlichny_angles, AngleOptimum};

/// Dichotomic observable `cos(theta) Y + sin(theta) Z` in the y-z plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeasurementSetting {
    pub theta: f64,
}

impl MeasurementSetting {
    pub fn new(theta: f64) -> Self {
        Self { theta }
    }

    /// `(y, z)` components of the measurement direction.
    pub fn direction(&self) -> [f64; 2] {
        [self.theta.cos(), self.theta.sin()]
    }

    pub fn observable(&self) -> ComplexMatrix {
        let [y, z] = self.direction();
        &pauli(Axis::Y).scale_real(y) + &pauli(Axis::Z).scale_real(z)
    }
}

/// Two settings per site for the Svetlichny test.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SvetlichnyAngles {
    pub a1: f64,
    pub a2: f64,
    pub b1: f64,
    pub b2: f64,
    pub c1: f64,
    pub c2: f64,
}

impl Default for SvetlichnyAngles {
    /// Settings for which `M3 + M3'` reduces to the four-correlator form.
    fn default() -> Self {
        Self {
            a1: 3.0 * FRAC_PI_4,
            a2: FRAC_PI_4,
            b1: FRAC_PI_4,
            b2: -FRAC_PI_4,
            c1: FRAC_PI_4,
            c2: -FRAC_PI_4,
        }
    }
}

impl SvetlichnyAngles {
    pub fn as_array(&self) -> [f64; 6] {
        [self.a1, self.a2, self.b1, self.b2, self.c1, self.c2]
    }
}

/// `Re Tr(rho obs)`; errors if the imaginary part is not negligible.
pub fn expectation(rho: &ComplexMatrix, obs: &ComplexMatrix) -> Result<f64> {
    if rho.rows() != obs.rows() || rho.cols() != obs.cols() || !rho.is_square() {
        return Err(Error::Dimension(format!(
            "state is {}x{}, observable is {}x{}",
            rho.rows(),
            rho.cols(),
            obs.rows(),
            obs.cols()
        )));
    }
    let tol = Tolerances::DEFAULT;
    obs.ensure_hermitian(tol.hermitian * obs.max_abs().max(1.0))?;
    let v = rho.trace_product(obs);
    if v.im.abs() > tol.imag_residue {
        return Err(Error::Numeric(format!(
            "expectation has imaginary residue {:.3e}",
            v.im
        )));
    }
    Ok(v.re)
}

fn pauli_expectation(rho: &ComplexMatrix, axes: &[Axis]) -> Result<f64> {
    expectation(rho, &pauli_string(axes))
}

/// Value and operator of the two-spin witness built from the partial
/// transpose of the pair state.
#[derive(Debug, Clone)]
pub struct Witness {
    pub value: f64,
    pub operator: ComplexMatrix,
}

/// `W = (|v><v|)^pt` with `|v>` the lowest eigenvector of `rho2^pt`; the
/// transpose acts on the second spin of the pair. `Tr(rho2 W)` equals the
/// smallest eigenvalue of `rho2^pt`, negative only for entangled pairs.
pub fn witness_w2(rho2: &ComplexMatrix) -> Result<Witness> {
    ensure_qubit_density(rho2, 2)?;
    let pt = partial_transpose(rho2, &[2, 2], 1)?;
    let eig = hermitian_eig(&pt)?;
    let operator = partial_transpose(&eig.eigenvectors[0].projector(), &[2, 2], 1)?;
    let value = expectation(rho2, &operator)?;
    Ok(Witness { value, operator })
}

/// `(II - XX + YY - ZZ) / 4`, the singlet projector after partial transpose.
pub fn singlet_witness() -> ComplexMatrix {
    let mut w = pauli_string(&[Axis::I, Axis::I]);
    w = &w - &pauli_string(&[Axis::X, Axis::X]);
    w = &w + &pauli_string(&[Axis::Y, Axis::Y]);
    w = &w - &pauli_string(&[Axis::Z, Axis::Z]);
    w.scale_real(0.25)
}

/// Pair state of spins 2 and 3 (spin 1 traced out) of a three-spin state.
pub fn pair_state_23(rho: &ComplexMatrix) -> Result<ComplexMatrix> {
    partial_trace(rho, &[2, 2, 2], &[1, 2])
}

/// Whether the witness built for the ground state at `beta` is the fixed
/// local decomposition [`singlet_witness`], entrywise within 1e-9.
pub fn witness_pauli_decomposition_check(beta: f64) -> bool {
    let Ok(psi) = analytic_ground_state_n3(beta) else {
        return false;
    };
    let Ok(rho2) = pair_state_23(&psi.projector()) else {
        return false;
    };
    match witness_w2(&rho2) {
        Ok(w) => w.operator.max_abs_diff(&singlet_witness()) <= 1e-9,
        Err(_) => false,
    }
}

/// Signed Svetlichny value `sqrt2 (<YZY> + <ZYY> + <YYZ> - <ZZZ>)`.
pub fn svetlichny_s3(rho: &ComplexMatrix) -> Result<f64> {
    ensure_qubit_density(rho, 3)?;
    svetlichny_s3_unchecked(rho)
}

pub(crate) fn svetlichny_s3_unchecked(rho: &ComplexMatrix) -> Result<f64> {
    use Axis::{Y, Z};
    let sum = pauli_expectation(rho, &[Y, Z, Y])?
        + pauli_expectation(rho, &[Z, Y, Y])?
        + pauli_expectation(rho, &[Y, Y, Z])?
        - pauli_expectation(rho, &[Z, Z, Z])?;
    Ok(SQRT_2 * sum)
}

/// Three-site correlator `E(a, b, c) = <O(a) O(b) O(c)>`.
pub fn mermin_correlator(rho: &ComplexMatrix, a: f64, b: f64, c: f64) -> Result<f64> {
    let op = MeasurementSetting::new(a)
        .observable()
        .tensor(&MeasurementSetting::new(b).observable())
        .tensor(&MeasurementSetting::new(c).observable());
    expectation(rho, &op)
}

/// `(M3, M3')` at the given settings.
pub fn mermin_functions(rho: &ComplexMatrix, angles: &SvetlichnyAngles) -> Result<(f64, f64)> {
    let SvetlichnyAngles {
        a1,
        a2,
        b1,
        b2,
        c1,
        c2,
    } = *angles;
    let e = |a, b, c| mermin_correlator(rho, a, b, c);
    let m3 = e(a1, b1, c2)? + e(a1, b2, c1)? + e(a2, b1, c1)? - e(a2, b2, c2)?;
    let m3p = e(a2, b2, c1)? + e(a2, b1, c2)? + e(a1, b2, c2)? - e(a1, b1, c1)?;
    Ok((m3, m3p))
}

/// `|M3 + M3'|` from the eight three-site correlators.
pub fn svetlichny_from_mermin(rho: &ComplexMatrix, angles: &SvetlichnyAngles) -> Result<f64> {
    ensure_density(rho, &Tolerances::DEFAULT)?;
    if rho.rows() != 8 {
        return Err(Error::Dimension(format!(
            "expected a three-qubit state, got dimension {}",
            rho.rows()
        )));
    }
    let (m3, m3p) = mermin_functions(rho, angles)?;
    Ok((m3 + m3p).abs())
}

/// First derivative of sampled `values` on an ascending, possibly
/// non-uniform `grid`: three-point central differences inside, three-point
/// one-sided differences at both ends (all second order).
pub fn derivative(grid: &[f64], values: &[f64]) -> Result<Vec<f64>> {
    let n = grid.len();
    if n < 3 {
        return Err(Error::Dimension(format!(
            "derivative needs at least 3 points, got {n}"
        )));
    }
    if values.len() != n {
        return Err(Error::Dimension(format!(
            "grid has {n} points but {} values",
            values.len()
        )));
    }
    if grid
        .windows(2)
        .any(|w| w[1].partial_cmp(&w[0]) != Some(std::cmp::Ordering::Greater))
    {
        return Err(Error::Dimension("grid must be strictly ascending".into()));
    }

    let mut out = vec![0.0; n];
    let (h1, h2) = (grid[1] - grid[0], grid[2] - grid[1]);
    out[0] = -(2.0 * h1 + h2) / (h1 * (h1 + h2)) * values[0] + (h1 + h2) / (h1 * h2) * values[1]
        - h1 / (h2 * (h1 + h2)) * values[2];
    for i in 1..n - 1 {
        let (h1, h2) = (grid[i] - grid[i - 1], grid[i + 1] - grid[i]);
        out[i] = -h2 / (h1 * (h1 + h2)) * values[i - 1]
            + (h2 - h1) / (h1 * h2) * values[i]
            + h1 / (h2 * (h1 + h2)) * values[i + 1];
    }
    let (h1, h2) = (grid[n - 2] - grid[n - 3], grid[n - 1] - grid[n - 2]);
    out[n - 1] = h2 / (h1 * (h1 + h2)) * values[n - 3] - (h1 + h2) / (h1 * h2) * values[n - 2]
        + (2.0 * h2 + h1) / (h2 * (h1 + h2)) * values[n - 1];
    Ok(out)
}
