//! Transverse-field Ising ring `H = -J sum_n X_n X_{n+1} + B sum_n Z_n` with
//! periodic boundary, its numerical ground state, and the closed-form
//! three-spin ground state.

use serde::{Deserialize, Serialize};

use crate::error::{out_of_domain, Result};
use crate::linalg::{hermitian_eig, ComplexMatrix, ComplexVector, Tolerances, C64};

pub const MIN_SPINS: usize = 2;
pub const MAX_SPINS: usize = 10;

/// Lower end of the field range covered by the three-spin closed form.
pub const BETA_MIN: f64 = -2.0;
/// Sweeps stop just short of the degenerate zero-field point.
pub const BETA_NEAR_ZERO: f64 = -1e-6;

/// Ring size, coupling and transverse field. `beta = field / coupling`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RingSpec {
    n_spins: usize,
    coupling: f64,
    field: f64,
}

impl RingSpec {
    pub fn new(n_spins: usize, coupling: f64, field: f64) -> Result<Self> {
        if !(MIN_SPINS..=MAX_SPINS).contains(&n_spins) {
            return Err(out_of_domain(
                "n_spins",
                n_spins as f64,
                format!("[{MIN_SPINS}, {MAX_SPINS}]"),
            ));
        }
        if !(coupling.is_finite() && coupling > 0.0) {
            return Err(out_of_domain("coupling", coupling, "(0, inf)"));
        }
        if !field.is_finite() {
            return Err(out_of_domain("field", field, "finite reals"));
        }
        Ok(Self {
            n_spins,
            coupling,
            field,
        })
    }

    /// Unit coupling with `field = beta`.
    pub fn with_beta(n_spins: usize, beta: f64) -> Result<Self> {
        Self::new(n_spins, 1.0, beta)
    }

    pub fn n_spins(&self) -> usize {
        self.n_spins
    }

    pub fn coupling(&self) -> f64 {
        self.coupling
    }

    pub fn field(&self) -> f64 {
        self.field
    }

    pub fn beta(&self) -> f64 {
        self.field / self.coupling
    }

    pub fn dim(&self) -> usize {
        1 << self.n_spins
    }
}

/// Bit mask of spin `site` (0-based) in a basis index; spin 0 is the most
/// significant bit.
fn site_mask(n_spins: usize, site: usize) -> usize {
    1 << (n_spins - 1 - site)
}

/// Dense Hamiltonian in the computational basis. Every site couples to its
/// successor, so a two-spin ring carries the same bond twice.
pub fn build_hamiltonian(spec: &RingSpec) -> Result<ComplexMatrix> {
    let n = spec.n_spins;
    if !(MIN_SPINS..=MAX_SPINS).contains(&n) {
        return Err(out_of_domain(
            "n_spins",
            n as f64,
            format!("[{MIN_SPINS}, {MAX_SPINS}]"),
        ));
    }
    let dim = spec.dim();
    let mut h = ComplexMatrix::zeros(dim, dim);
    for s in 0..dim {
        let up = n as f64 - 2.0 * s.count_ones() as f64;
        h[(s, s)] += C64::new(spec.field * up, 0.0);
        for site in 0..n {
            let flip = site_mask(n, site) | site_mask(n, (site + 1) % n);
            h[(s ^ flip, s)] -= C64::new(spec.coupling, 0.0);
        }
    }
    Ok(h)
}

/// Lowest eigenvector of the ring Hamiltonian.
#[derive(Debug, Clone)]
pub struct GroundState {
    pub state: ComplexVector,
    pub energy: f64,
    pub beta: f64,
    /// Set when the ground state is not unique.
    pub degenerate: bool,
    /// Eigenvalue of `prod_n Z_n` on the returned state.
    pub parity: i8,
}

struct Sector {
    parity: i8,
    indices: Vec<usize>,
    energy: f64,
    gap: f64,
    vector: ComplexVector,
}

fn solve_sector(h: &ComplexMatrix, parity: i8) -> Result<Sector> {
    let want_odd = parity < 0;
    let indices: Vec<usize> = (0..h.rows())
        .filter(|s| (s.count_ones() % 2 == 1) == want_odd)
        .collect();
    let block = ComplexMatrix::from_fn(indices.len(), indices.len(), |r, c| {
        h[(indices[r], indices[c])]
    });
    let eig = hermitian_eig(&block)?;
    Ok(Sector {
        parity,
        energy: eig.eigenvalues[0],
        gap: eig.spectral_gap(),
        vector: eig.eigenvectors[0].clone(),
        indices,
    })
}

/// Ground state by exact diagonalization.
///
/// The Hamiltonian commutes with the parity `prod_n Z_n`, so each parity
/// sector is diagonalized separately. The two sector minima become
/// exponentially close near zero field (for three spins the splitting is
/// `3|beta|^3/4`), far below floating-point resolution at `beta = -1e-6`.
/// When they cannot be resolved numerically the sector is chosen by the sign
/// of the field: a negative field favours `|0...0>` and hence even parity,
/// and the spin-flip symmetry maps this to parity `(-1)^N` for a positive
/// field. Only a zero field leaves the ground state genuinely degenerate.
pub fn ground_state(spec: &RingSpec) -> Result<GroundState> {
    let tol = Tolerances::DEFAULT;
    let h = build_hamiltonian(spec)?;
    let even = solve_sector(&h, 1)?;
    let odd = solve_sector(&h, -1)?;
    let scale = h.max_abs().max(1.0);
    let split = (even.energy - odd.energy).abs();

    let (chosen, degenerate) = if split >= tol.degeneracy * scale {
        let lower = if even.energy < odd.energy { even } else { odd };
        let degenerate = lower.gap < tol.degeneracy * scale;
        (lower, degenerate)
    } else if spec.field == 0.0 {
        (even, true)
    } else {
        let favoured = if spec.field < 0.0 || spec.n_spins.is_multiple_of(2) {
            1
        } else {
            -1
        };
        let s = if favoured == 1 { even } else { odd };
        let degenerate = s.gap < tol.degeneracy * scale;
        (s, degenerate)
    };

    let mut full = vec![C64::new(0.0, 0.0); spec.dim()];
    for (k, &idx) in chosen.indices.iter().enumerate() {
        full[idx] = chosen.vector[k];
    }
    let state = fix_global_phase(ComplexVector::new(full)?).normalized()?;
    Ok(GroundState {
        state,
        energy: chosen.energy,
        beta: spec.beta(),
        degenerate,
        parity: chosen.parity,
    })
}

/// Rotates the global phase so the largest-magnitude amplitude (first one on
/// ties) is real and positive.
pub fn fix_global_phase(v: ComplexVector) -> ComplexVector {
    let mut best = 0;
    let mut best_mag = -1.0;
    for (i, z) in v.entries().iter().enumerate() {
        let m = z.norm();
        if m > best_mag * (1.0 + 1e-12) {
            best = i;
            best_mag = m;
        }
    }
    if best_mag <= 0.0 {
        return v;
    }
    let z = v[best];
    v.scale(z.conj() / z.norm())
}

/// Amplitude ratio `a0 = -1 - 2 beta + 2 sqrt(1 + beta + beta^2)` of `|000>`
/// in the three-spin ground state, for `beta <= 0`.
pub fn a0_of_beta(beta: f64) -> Result<f64> {
    if !(beta.is_finite() && beta <= 0.0) {
        return Err(out_of_domain("beta", beta, "(-inf, 0]"));
    }
    Ok(-1.0 - 2.0 * beta + 2.0 * (1.0 + beta + beta * beta).sqrt())
}

/// Inverse of [`a0_of_beta`]. `a0` solves `a0^2 + (4 beta + 2) a0 - 3 = 0`,
/// which is linear in `beta`.
pub fn beta_of_a0(a0: f64) -> Result<f64> {
    if !(a0.is_finite() && a0 >= 1.0) {
        return Err(out_of_domain("a0", a0, "[1, inf)"));
    }
    Ok((3.0 - a0 * a0 - 2.0 * a0) / (4.0 * a0))
}

/// `(a0|000> + |011> + |101> + |110>) / sqrt(3 + a0^2)` for a given `a0 >= 1`.
pub fn ground_state_n3_from_a0(a0: f64) -> Result<ComplexVector> {
    if !(a0.is_finite() && a0 >= 1.0) {
        return Err(out_of_domain("a0", a0, "[1, inf)"));
    }
    let norm = (3.0 + a0 * a0).sqrt();
    let mut amps = [0.0; 8];
    amps[0b000] = a0 / norm;
    amps[0b011] = 1.0 / norm;
    amps[0b101] = 1.0 / norm;
    amps[0b110] = 1.0 / norm;
    ComplexVector::from_real(&amps)
}

/// Closed-form three-spin ground state for `beta` in `[-2, 0)`.
pub fn analytic_ground_state_n3(beta: f64) -> Result<ComplexVector> {
    if !(beta.is_finite() && (BETA_MIN..0.0).contains(&beta)) {
        return Err(out_of_domain("beta", beta, "[-2, 0)"));
    }
    ground_state_n3_from_a0(a0_of_beta(beta)?)
}

/// Ground-state energy as a convenience for sweeps.
pub fn ground_energy(spec: &RingSpec) -> Result<f64> {
    Ok(ground_state(spec)?.energy)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{partial_trace, pauli_string, Axis};

    fn rayleigh(h: &ComplexMatrix, v: &ComplexVector) -> f64 {
        v.inner(&h.mul_vec(v)).re
    }

    #[test]
    fn two_spin_ring_doubles_its_bond() {
        let h = build_hamiltonian(&RingSpec::with_beta(2, 0.0).unwrap()).unwrap();
        let expect = pauli_string(&[Axis::X, Axis::X]).scale_real(-2.0);
        assert_eq!(h, expect);
        let eig = hermitian_eig(&h).unwrap();
        for (got, want) in eig.eigenvalues.iter().zip([-2.0, -2.0, 2.0, 2.0]) {
            assert!((got - want).abs() < 1e-14);
        }
    }

    #[test]
    fn hamiltonian_matches_pauli_sum() {
        let spec = RingSpec::new(3, 0.7, -0.4).unwrap();
        let mut expect = ComplexMatrix::zeros(8, 8);
        for (xx, z) in [
            ([Axis::X, Axis::X, Axis::I], [Axis::Z, Axis::I, Axis::I]),
            ([Axis::I, Axis::X, Axis::X], [Axis::I, Axis::Z, Axis::I]),
            ([Axis::X, Axis::I, Axis::X], [Axis::I, Axis::I, Axis::Z]),
        ] {
            expect = &expect - &pauli_string(&xx).scale_real(0.7);
            expect = &expect + &pauli_string(&z).scale_real(-0.4);
        }
        assert!(build_hamiltonian(&spec).unwrap().max_abs_diff(&expect) < 1e-15);
    }

    #[test]
    fn zero_field_three_spin_energy() {
        let g = ground_state(&RingSpec::with_beta(3, 0.0).unwrap()).unwrap();
        assert!((g.energy + 3.0).abs() < 1e-12);
        assert!(g.degenerate);
    }

    #[test]
    fn beta_minus_one_energy_matches_rayleigh_quotient() {
        let spec = RingSpec::with_beta(3, -1.0).unwrap();
        let h = build_hamiltonian(&spec).unwrap();
        let analytic = ground_state_n3_from_a0(3.0).unwrap();
        let g = ground_state(&spec).unwrap();
        assert!((g.energy - rayleigh(&h, &analytic)).abs() < 1e-9);
        // -a0 - beta - 2 from the even-sector eigen-equation.
        assert!((g.energy + 4.0).abs() < 1e-12);
    }

    #[test]
    fn numeric_matches_closed_form() {
        let g = ground_state(&RingSpec::with_beta(3, -0.5).unwrap()).unwrap();
        let a = analytic_ground_state_n3(-0.5).unwrap();
        assert!(g.state.fidelity(&a) >= 1.0 - 1e-10);
        assert!(!g.degenerate);
    }

    #[test]
    fn near_zero_field_is_ghz_like() {
        let g = ground_state(&RingSpec::with_beta(3, -1e-6).unwrap()).unwrap();
        assert!(!g.degenerate);
        assert_eq!(g.parity, 1);
        let expect = ComplexVector::from_real(&[0.5, 0.0, 0.0, 0.5, 0.0, 0.5, 0.5, 0.0]).unwrap();
        assert!(g.state.fidelity(&expect) > 1.0 - 1e-11);
        assert!((g.state[0].re - 0.5).abs() < 1e-6);
    }

    #[test]
    fn global_phase_convention() {
        let g = ground_state(&RingSpec::with_beta(4, -0.8).unwrap()).unwrap();
        let (idx, _) = g
            .state
            .entries()
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.norm().total_cmp(&b.1.norm()))
            .unwrap();
        assert!(g.state[idx].re > 0.0);
        assert_eq!(g.state[idx].im, 0.0);
    }

    #[test]
    fn favoured_sector_is_lower_where_resolvable() {
        // Checks the sector rule used for unresolvable splittings.
        for n in 2..=8 {
            for beta in [-0.6f64, -0.3, 0.3, 0.6] {
                let h = build_hamiltonian(&RingSpec::with_beta(n, beta).unwrap()).unwrap();
                let even = solve_sector(&h, 1).unwrap().energy;
                let odd = solve_sector(&h, -1).unwrap().energy;
                let favoured_even = beta < 0.0 || n % 2 == 0;
                if favoured_even {
                    assert!(even < odd, "n={n} beta={beta}");
                } else {
                    assert!(odd < even, "n={n} beta={beta}");
                }
            }
        }
    }

    #[test]
    fn energy_non_increasing_in_field_magnitude() {
        let mut prev = f64::INFINITY;
        for k in 0..=40 {
            let beta = -2.0 * k as f64 / 40.0;
            let e = ground_energy(&RingSpec::with_beta(3, beta).unwrap()).unwrap();
            assert!(e <= prev + 1e-12);
            prev = e;
        }
    }

    #[test]
    fn a0_examples() {
        assert_eq!(a0_of_beta(0.0).unwrap(), 1.0);
        assert!((a0_of_beta(-1.0).unwrap() - 3.0).abs() < 1e-15);
        assert!((a0_of_beta(-2.0).unwrap() - (3.0 + 2.0 * 3f64.sqrt())).abs() < 1e-14);
        assert!((beta_of_a0(3.0).unwrap() + 1.0).abs() < 1e-15);
        assert_eq!(beta_of_a0(1.0).unwrap(), 0.0);
        assert!(a0_of_beta(0.1).is_err());
        assert!(beta_of_a0(0.99).is_err());
        assert!(analytic_ground_state_n3(0.0).is_err());
        assert!(analytic_ground_state_n3(-2.1).is_err());
        assert!(RingSpec::with_beta(11, -1.0).is_err());
        assert!(RingSpec::with_beta(1, -1.0).is_err());
        assert!(RingSpec::new(3, 0.0, -1.0).is_err());
    }

    #[test]
    fn analytic_examples() {
        let s = analytic_ground_state_n3(-1.0).unwrap();
        let n = 12f64.sqrt();
        for (idx, amp) in [
            (0b000, 3.0 / n),
            (0b011, 1.0 / n),
            (0b101, 1.0 / n),
            (0b110, 1.0 / n),
        ] {
            assert!((s[idx].re - amp).abs() < 1e-15);
        }
        let near0 = analytic_ground_state_n3(-1e-12).unwrap();
        for idx in [0b000, 0b011, 0b101, 0b110] {
            assert!((near0[idx].re - 0.5).abs() < 1e-11);
        }
    }

    #[test]
    fn a0_monotone_and_round_trip() {
        let mut prev = a0_of_beta(0.0).unwrap();
        for k in 1..=200 {
            let beta = -2.0 * k as f64 / 200.0;
            let a = a0_of_beta(beta).unwrap();
            assert!(a > prev);
            prev = a;
            assert!((beta_of_a0(a).unwrap() - beta).abs() < 1e-10);
            assert!((a0_of_beta(beta_of_a0(a).unwrap()).unwrap() - a).abs() < 1e-10);
        }
    }

    #[test]
    fn reduced_pairs_are_translation_invariant() {
        let g = ground_state(&RingSpec::with_beta(3, -0.73).unwrap()).unwrap();
        let rho = g.state.projector();
        let r12 = partial_trace(&rho, &[2, 2, 2], &[0, 1]).unwrap();
        let r23 = partial_trace(&rho, &[2, 2, 2], &[1, 2]).unwrap();
        let r13 = partial_trace(&rho, &[2, 2, 2], &[0, 2]).unwrap();
        assert!(r12.max_abs_diff(&r23) < 1e-10);
        assert!(r12.max_abs_diff(&r13) < 1e-10);
    }

    #[test]
    fn reduced_pair_at_zero_field_matches_closed_form() {
        // Closed-form pair state at a0 = 1, traced by hand.
        let rho = analytic_ground_state_n3(-1e-15).unwrap().projector();
        let r23 = partial_trace(&rho, &[2, 2, 2], &[1, 2]).unwrap();
        let q = 0.25;
        let expect = ComplexMatrix::from_real_rows(&[
            &[q, 0.0, 0.0, q],
            &[0.0, q, q, 0.0],
            &[0.0, q, q, 0.0],
            &[q, 0.0, 0.0, q],
        ])
        .unwrap();
        assert!(r23.max_abs_diff(&expect) < 1e-12);
    }

    #[test]
    fn larger_rings_solve() {
        let spec = RingSpec::with_beta(8, -1.0).unwrap();
        let h = build_hamiltonian(&spec).unwrap();
        let g = ground_state(&spec).unwrap();
        assert!((rayleigh(&h, &g.state) - g.energy).abs() < 1e-9);
        assert!((g.state.norm() - 1.0).abs() < 1e-12);
        let full = hermitian_eig(&h).unwrap();
        assert!((full.eigenvalues[0] - g.energy).abs() < 1e-9);
    }
}
