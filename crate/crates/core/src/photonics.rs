//! Emulation of the photonic preparation: imbalanced source and beam
//! splitter, attenuation, white noise, and Poissonian coincidence counts.

use std::f64::consts::{FRAC_PI_2, SQRT_2};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson};
use serde::{Deserialize, Serialize};

use crate::correlations::MeasurementSetting;
use crate::error::{out_of_domain, Error, Result};
use crate::ising::BETA_MIN;
use crate::linalg::{ensure_qubit_density, ComplexMatrix, ComplexVector, C64};

const SUM_TOL: f64 = 1e-12;

/// Emission probabilities of the two cones and path probabilities of the
/// beam splitter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SourceParams {
    pub eta_hh: f64,
    pub eta_vv: f64,
    pub eta_t: f64,
    pub eta_r: f64,
}

impl SourceParams {
    pub const MEASURED: SourceParams = SourceParams {
        eta_hh: 0.58,
        eta_vv: 0.42,
        eta_t: 0.66,
        eta_r: 0.34,
    };

    pub const BALANCED: SourceParams = SourceParams {
        eta_hh: 0.5,
        eta_vv: 0.5,
        eta_t: 0.5,
        eta_r: 0.5,
    };

    pub fn new(eta_hh: f64, eta_vv: f64, eta_t: f64, eta_r: f64) -> Result<Self> {
        let src = Self {
            eta_hh,
            eta_vv,
            eta_t,
            eta_r,
        };
        src.validate()?;
        Ok(src)
    }

    pub fn validate(&self) -> Result<()> {
        for (what, v) in [
            ("eta_hh", self.eta_hh),
            ("eta_vv", self.eta_vv),
            ("eta_t", self.eta_t),
            ("eta_r", self.eta_r),
        ] {
            if !(v.is_finite() && v > 0.0 && v < 1.0) {
                return Err(out_of_domain(what, v, "(0, 1)"));
            }
        }
        if (self.eta_hh + self.eta_vv - 1.0).abs() > SUM_TOL {
            return Err(out_of_domain(
                "eta_hh + eta_vv",
                self.eta_hh + self.eta_vv,
                "{1}",
            ));
        }
        if (self.eta_t + self.eta_r - 1.0).abs() > SUM_TOL {
            return Err(out_of_domain(
                "eta_t + eta_r",
                self.eta_t + self.eta_r,
                "{1}",
            ));
        }
        Ok(())
    }

    /// `K = (eta_vv eta_t + eta_hh eta_t + eta_vv eta_r) / (eta_hh eta_r)`, so
    /// that `alpha = K / a0^2`.
    pub fn k_ratio(&self) -> f64 {
        (self.eta_vv * self.eta_t + self.eta_hh * self.eta_t + self.eta_vv * self.eta_r)
            / (self.eta_hh * self.eta_r)
    }
}

impl Default for SourceParams {
    fn default() -> Self {
        Self::MEASURED
    }
}

/// Affine white-noise weight `p(beta) = slope beta + intercept`, clamped to
/// `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoiseModel {
    pub slope: f64,
    pub intercept: f64,
}

impl NoiseModel {
    pub const MEASURED: NoiseModel = NoiseModel {
        slope: 0.128,
        intercept: 0.927,
    };

    /// No noise: `p = 1` everywhere.
    pub const NONE: NoiseModel = NoiseModel {
        slope: 0.0,
        intercept: 1.0,
    };

    pub fn validate(&self) -> Result<()> {
        if !self.slope.is_finite() {
            return Err(out_of_domain("noise slope", self.slope, "finite reals"));
        }
        if !self.intercept.is_finite() {
            return Err(out_of_domain(
                "noise intercept",
                self.intercept,
                "finite reals",
            ));
        }
        Ok(())
    }

    pub fn p(&self, beta: f64) -> Result<f64> {
        p_of_beta(self, beta)
    }
}

impl Default for NoiseModel {
    fn default() -> Self {
        Self::MEASURED
    }
}

pub fn p_of_beta(noise: &NoiseModel, beta: f64) -> Result<f64> {
    noise.validate()?;
    if !(beta.is_finite() && (BETA_MIN..=0.0).contains(&beta)) {
        return Err(out_of_domain("beta", beta, "[-2, 0]"));
    }
    Ok((noise.slope * beta + noise.intercept).clamp(0.0, 1.0))
}

/// `R = 2p / (1 - p)`.
pub fn rsnr_of_p(p: f64) -> Result<f64> {
    if !(p.is_finite() && (0.0..1.0).contains(&p)) {
        return Err(out_of_domain("p", p, "[0, 1)"));
    }
    Ok(2.0 * p / (1.0 - p))
}

/// `p = R / (2 + R)`.
pub fn p_of_rsnr(rsnr: f64) -> Result<f64> {
    if !(rsnr.is_finite() && rsnr >= 0.0) {
        return Err(out_of_domain("R_SNR", rsnr, "[0, inf)"));
    }
    Ok(rsnr / (2.0 + rsnr))
}

fn check_a0(a0: f64) -> Result<()> {
    if !(a0.is_finite() && a0 >= 1.0) {
        return Err(out_of_domain("a0", a0, "[1, inf)"));
    }
    Ok(())
}

/// Normalized state with amplitudes proportional to
/// `sqrt(eta_hh eta_r) a0`, `sqrt(eta_vv eta_t)`, `sqrt(eta_hh eta_t)`,
/// `sqrt(eta_vv eta_r)` on `|000>`, `|011>`, `|101>`, `|110>`.
pub fn experimental_state(src: &SourceParams, a0: f64) -> Result<ComplexVector> {
    src.validate()?;
    check_a0(a0)?;
    let mut amps = [0.0; 8];
    amps[0b000] = (src.eta_hh * src.eta_r).sqrt() * a0;
    amps[0b011] = (src.eta_vv * src.eta_t).sqrt();
    amps[0b101] = (src.eta_hh * src.eta_t).sqrt();
    amps[0b110] = (src.eta_vv * src.eta_r).sqrt();
    ComplexVector::from_real(&amps)?.normalized()
}

/// Ratio of the three one-excitation probabilities to `P(000)`.
pub fn alpha_of_a0(src: &SourceParams, a0: f64) -> Result<f64> {
    src.validate()?;
    check_a0(a0)?;
    Ok(src.k_ratio() / (a0 * a0))
}

/// Inverse of [`alpha_of_a0`]: `a0 = sqrt(K / alpha)`. Fails when the result
/// would fall below 1, i.e. for `alpha > K`.
pub fn a0_of_alpha(src: &SourceParams, alpha: f64) -> Result<f64> {
    src.validate()?;
    if !(alpha.is_finite() && alpha > 0.0) {
        return Err(out_of_domain("alpha", alpha, "(0, inf)"));
    }
    let k = src.k_ratio();
    let a0 = (k / alpha).sqrt();
    if a0 < 1.0 {
        return Err(out_of_domain("alpha", alpha, format!("(0, {k}]")));
    }
    Ok(a0)
}

/// `p |psi><psi| + (1 - p) I / d`.
pub fn werner(psi: &ComplexVector, p: f64) -> Result<ComplexMatrix> {
    if !(p.is_finite() && (0.0..=1.0).contains(&p)) {
        return Err(out_of_domain("p", p, "[0, 1]"));
    }
    psi.ensure_normalized(1e-12)?;
    let d = psi.dim();
    let mut rho = psi.projector().scale_real(p);
    let diag = (1.0 - p) / d as f64;
    for k in 0..d {
        rho[(k, k)] += C64::new(diag, 0.0);
    }
    let adj = rho.adjoint();
    Ok((&rho + &adj).scale_real(0.5))
}

/// One correlator of the Svetlichny sum: three measurement angles and the
/// sign it enters with.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelatorSetting {
    pub label: &'static str,
    pub angles: [f64; 3],
    pub sign: f64,
}

const Y: f64 = 0.0;
const Z: f64 = FRAC_PI_2;

pub const SVETLICHNY_SETTINGS: [CorrelatorSetting; 4] = [
    CorrelatorSetting {
        label: "YZY",
        angles: [Y, Z, Y],
        sign: 1.0,
    },
    CorrelatorSetting {
        label: "ZYY",
        angles: [Z, Y, Y],
        sign: 1.0,
    },
    CorrelatorSetting {
        label: "YYZ",
        angles: [Y, Y, Z],
        sign: 1.0,
    },
    CorrelatorSetting {
        label: "ZZZ",
        angles: [Z, Z, Z],
        sign: -1.0,
    },
];

/// Coincidences for one setting. Outcome `k` has bit `2 - j` set when spin
/// `j` gave `-1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CountRecord {
    pub angles: [f64; 3],
    pub counts: [u64; 8],
    pub total: u64,
}

impl CountRecord {
    pub fn new(angles: [f64; 3], counts: [u64; 8]) -> Self {
        Self {
            angles,
            counts,
            total: counts.iter().sum(),
        }
    }
}

fn outcome_sign(k: usize) -> f64 {
    if k.count_ones().is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// Probabilities of the eight joint outcomes of `O(a) O(b) O(c)`.
pub fn outcome_probabilities(rho: &ComplexMatrix, angles: [f64; 3]) -> Result<[f64; 8]> {
    ensure_qubit_density(rho, 3)?;
    let eye = ComplexMatrix::identity(2);
    let projectors: Vec<[ComplexMatrix; 2]> = angles
        .iter()
        .map(|&theta| {
            let o = MeasurementSetting::new(theta).observable();
            [(&eye + &o).scale_real(0.5), (&eye - &o).scale_real(0.5)]
        })
        .collect();
    let mut probs = [0.0; 8];
    for (k, pk) in probs.iter_mut().enumerate() {
        let bit = |j: usize| (k >> (2 - j)) & 1;
        let proj = projectors[0][bit(0)]
            .tensor(&projectors[1][bit(1)])
            .tensor(&projectors[2][bit(2)]);
        *pk = rho.trace_product(&proj).re.max(0.0);
    }
    Ok(probs)
}

/// Independent Poisson counts with means `mean_total P(k)`.
pub fn simulate_counts(
    rho: &ComplexMatrix,
    angles: [f64; 3],
    mean_total: f64,
    seed: u64,
) -> Result<CountRecord> {
    if !(mean_total.is_finite() && mean_total > 0.0) {
        return Err(out_of_domain("mean_total", mean_total, "(0, inf)"));
    }
    let probs = outcome_probabilities(rho, angles)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts = [0u64; 8];
    for (n, p) in counts.iter_mut().zip(probs) {
        let mean = mean_total * p;
        if mean > 0.0 {
            let dist = Poisson::new(mean).map_err(|e| Error::Numeric(e.to_string()))?;
            *n = dist.sample(&mut rng) as u64;
        }
    }
    Ok(CountRecord::new(angles, counts))
}

/// splitmix64 finalizer folded over `parts`; distinct index tuples give
/// independent seeds.
pub fn derive_seed(seed: u64, parts: &[u64]) -> u64 {
    fn mix(mut z: u64) -> u64 {
        z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }
    parts.iter().fold(mix(seed), |acc, &p| mix(acc ^ mix(p)))
}

/// Correlator estimate `sum s_k w_k / W` and its first-order Poisson
/// variance `sum (s_k - E)^2 w_k / W^2`.
fn correlator_from_weights(weights: &[f64; 8]) -> Result<(f64, f64)> {
    let total: f64 = weights.iter().sum();
    if total.is_nan() || total <= 0.0 {
        return Err(Error::Undefined("setting has zero total counts".into()));
    }
    let e = weights
        .iter()
        .enumerate()
        .map(|(k, w)| outcome_sign(k) * w)
        .sum::<f64>()
        / total;
    let var = weights
        .iter()
        .enumerate()
        .map(|(k, w)| (outcome_sign(k) - e).powi(2) * w)
        .sum::<f64>()
        / (total * total);
    Ok((e, var))
}

/// Plug-in `|S3|` and its propagated standard error from per-outcome weights
/// of the four settings in [`SVETLICHNY_SETTINGS`] order. Weights may be
/// counts or exact probabilities.
pub fn estimate_from_weights(weights: &[[f64; 8]]) -> Result<(f64, f64)> {
    if weights.len() != SVETLICHNY_SETTINGS.len() {
        return Err(Error::Dimension(format!(
            "expected {} settings, got {}",
            SVETLICHNY_SETTINGS.len(),
            weights.len()
        )));
    }
    let mut sum = 0.0;
    let mut var = 0.0;
    for (w, setting) in weights.iter().zip(SVETLICHNY_SETTINGS.iter()) {
        let (e, v) = correlator_from_weights(w)?;
        sum += setting.sign * e;
        var += v;
    }
    Ok(((SQRT_2 * sum).abs(), SQRT_2 * var.sqrt()))
}

/// [`estimate_from_weights`] on count records, which must follow
/// [`SVETLICHNY_SETTINGS`] in order and angles.
pub fn estimate_with_errors(records: &[CountRecord]) -> Result<(f64, f64)> {
    if records.len() != SVETLICHNY_SETTINGS.len() {
        return Err(Error::Dimension(format!(
            "expected {} count records, got {}",
            SVETLICHNY_SETTINGS.len(),
            records.len()
        )));
    }
    for (r, s) in records.iter().zip(SVETLICHNY_SETTINGS.iter()) {
        let mismatch = r
            .angles
            .iter()
            .zip(s.angles)
            .any(|(a, b)| (a - b).abs() > 1e-12);
        if mismatch {
            return Err(Error::Dimension(format!(
                "record angles {:?} do not match setting {}",
                r.angles, s.label
            )));
        }
        if r.counts.iter().sum::<u64>() != r.total {
            return Err(Error::Numeric(format!(
                "counts of setting {} do not sum to their total",
                s.label
            )));
        }
    }
    let weights: Vec<[f64; 8]> = records.iter().map(|r| r.counts.map(|n| n as f64)).collect();
    estimate_from_weights(&weights)
}

/// Counts for all four settings, each drawn with its own derived seed.
pub fn simulate_svetlichny_counts(
    rho: &ComplexMatrix,
    mean_total: f64,
    seed: u64,
) -> Result<Vec<CountRecord>> {
    SVETLICHNY_SETTINGS
        .iter()
        .enumerate()
        .map(|(k, s)| simulate_counts(rho, s.angles, mean_total, derive_seed(seed, &[k as u64])))
        .collect()
}

/// Spread of the count-level estimator over repeated trials.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloSummary {
    pub trials: usize,
    pub mean: f64,
    /// Sample standard deviation of the estimates.
    pub std: f64,
    /// Mean of the per-trial propagated errors.
    pub sigma: f64,
}

/// Per-trial `(s3_hat, sigma)`; trial `t` uses `derive_seed(seed, [t])`.
pub fn monte_carlo_trials(
    rho: &ComplexMatrix,
    mean_total: f64,
    trials: usize,
    seed: u64,
) -> Result<Vec<(f64, f64)>> {
    ensure_qubit_density(rho, 3)?;
    (0..trials)
        .map(|t| {
            let records =
                simulate_svetlichny_counts(rho, mean_total, derive_seed(seed, &[t as u64]))?;
            estimate_with_errors(&records)
        })
        .collect()
}

pub fn summarize(estimates: &[(f64, f64)]) -> Result<MonteCarloSummary> {
    let n = estimates.len();
    if n == 0 {
        return Err(Error::Undefined("no trials".into()));
    }
    let mean = estimates.iter().map(|e| e.0).sum::<f64>() / n as f64;
    let std = if n > 1 {
        (estimates.iter().map(|e| (e.0 - mean).powi(2)).sum::<f64>() / (n - 1) as f64).sqrt()
    } else {
        0.0
    };
    let sigma = estimates.iter().map(|e| e.1).sum::<f64>() / n as f64;
    Ok(MonteCarloSummary {
        trials: n,
        mean,
        std,
        sigma,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correlations::svetlichny_s3;
    use crate::ising::{analytic_ground_state_n3, beta_of_a0};
    use crate::linalg::{ensure_density, Tolerances};
    use crate::testutil::{random_density, random_pure, rng};
    use proptest::prelude::*;
    use rand::Rng;

    #[test]
    fn noise_examples() {
        let n = NoiseModel::default();
        assert_eq!(p_of_beta(&n, 0.0).unwrap(), 0.927);
        assert!((p_of_beta(&n, -2.0).unwrap() - 0.671).abs() < 1e-15);
        assert!(p_of_beta(&n, 0.5).is_err());
        assert_eq!(rsnr_of_p(0.5).unwrap(), 2.0);
        assert!(rsnr_of_p(1.0).is_err());
        let steep = NoiseModel {
            slope: 1.0,
            intercept: 1.5,
        };
        assert_eq!(p_of_beta(&steep, -0.1).unwrap(), 1.0);
        assert_eq!(p_of_beta(&steep, -2.0).unwrap(), 0.0);
    }

    #[test]
    fn experimental_state_examples() {
        let g0 = analytic_ground_state_n3(-1e-15).unwrap();
        let s = experimental_state(&SourceParams::BALANCED, 1.0).unwrap();
        assert!(s.fidelity(&g0) > 1.0 - 1e-12);

        let s = experimental_state(&SourceParams::MEASURED, 1.0).unwrap();
        let expect = [0.1972f64, 0.2772, 0.3828, 0.1428].map(f64::sqrt);
        let norm = expect.iter().map(|x| x * x).sum::<f64>().sqrt();
        for (idx, e) in [0b000, 0b011, 0b101, 0b110].into_iter().zip(expect) {
            assert!((s[idx].re - e / norm).abs() < 1e-12);
        }

        let s = experimental_state(&SourceParams::MEASURED, 1e8).unwrap();
        assert!(s[0].re > 1.0 - 1e-12);
        assert!(experimental_state(&SourceParams::MEASURED, 0.9).is_err());
    }

    #[test]
    fn balanced_state_is_the_ground_state() {
        for a0 in [1.0, 1.3, 2.0, 3.0, 5.5, 6.3] {
            let s = experimental_state(&SourceParams::BALANCED, a0).unwrap();
            let beta = beta_of_a0(a0).unwrap();
            let g = analytic_ground_state_n3(beta.min(-1e-300)).unwrap();
            let diff = s
                .entries()
                .iter()
                .zip(g.entries())
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max);
            assert!(diff < 1e-12, "a0={a0}");
        }
    }

    #[test]
    fn alpha_examples() {
        assert!((alpha_of_a0(&SourceParams::BALANCED, 1.0).unwrap() - 3.0).abs() < 1e-15);
        let k = alpha_of_a0(&SourceParams::MEASURED, 1.0).unwrap();
        assert!((k - 0.8028 / 0.1972).abs() < 1e-12);
        assert!((k - 4.071).abs() < 1e-3);
        assert!(a0_of_alpha(&SourceParams::MEASURED, 4.1).is_err());
        assert!(a0_of_alpha(&SourceParams::MEASURED, 0.0).is_err());
        assert!(SourceParams::new(0.6, 0.5, 0.5, 0.5).is_err());
    }

    #[test]
    fn werner_examples() {
        let psi = analytic_ground_state_n3(-0.4).unwrap();
        assert!(werner(&psi, 1.0).unwrap().max_abs_diff(&psi.projector()) < 1e-15);
        let mixed = ComplexMatrix::identity(8).scale_real(0.125);
        assert!(werner(&psi, 0.0).unwrap().max_abs_diff(&mixed) < 1e-15);
        assert!(werner(&psi, 1.1).is_err());

        let g = analytic_ground_state_n3(-1e-9).unwrap();
        let s = svetlichny_s3(&werner(&g, 0.927).unwrap()).unwrap().abs();
        assert!((s - 0.927 * 4.0 * SQRT_2).abs() < 1e-7);
    }

    #[test]
    fn counts_on_basis_state_hit_one_outcome() {
        let rho = ComplexVector::basis(8, 0).projector();
        let rec = simulate_counts(&rho, [Z, Z, Z], 1000.0, 3).unwrap();
        assert!(rec.counts[1..].iter().all(|&n| n == 0));
        assert!(rec.counts[0] > 0);
        assert_eq!(rec.total, rec.counts[0]);
    }

    #[test]
    fn tiny_mean_gives_undefined_estimate() {
        let rho = ComplexMatrix::identity(8).scale_real(0.125);
        let recs = simulate_svetlichny_counts(&rho, 1e-3, 1).unwrap();
        assert!(recs.iter().any(|r| r.total == 0));
        assert!(matches!(
            estimate_with_errors(&recs),
            Err(Error::Undefined(_))
        ));
    }

    #[test]
    fn exact_weights_reproduce_svetlichny() {
        let mut r = rng(41);
        for _ in 0..30 {
            let rho = random_density(&mut r, 8);
            let w: Vec<[f64; 8]> = SVETLICHNY_SETTINGS
                .iter()
                .map(|s| outcome_probabilities(&rho, s.angles).unwrap())
                .collect();
            let (s3, _) = estimate_from_weights(&w).unwrap();
            assert!((s3 - svetlichny_s3(&rho).unwrap().abs()).abs() < 1e-12);
        }
    }

    #[test]
    fn large_counts_match_exact_correlator() {
        let rho = werner(&analytic_ground_state_n3(-0.35).unwrap(), 0.88).unwrap();
        let exact = svetlichny_s3(&rho).unwrap().abs();
        for seed in 0..5 {
            let recs = simulate_svetlichny_counts(&rho, 1e6, seed).unwrap();
            let (s3, sigma) = estimate_with_errors(&recs).unwrap();
            assert!((s3 - exact).abs() < 5.0 * sigma);
        }
    }

    #[test]
    fn counts_are_deterministic() {
        let rho = werner(&analytic_ground_state_n3(-1.2).unwrap(), 0.8).unwrap();
        let a = simulate_svetlichny_counts(&rho, 1e4, 99).unwrap();
        let b = simulate_svetlichny_counts(&rho, 1e4, 99).unwrap();
        let c = simulate_svetlichny_counts(&rho, 1e4, 100).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn sigma_scales_with_counts() {
        let rho = werner(&analytic_ground_state_n3(-0.35).unwrap(), 0.88).unwrap();
        let s1 = summarize(&monte_carlo_trials(&rho, 1e4, 100, 5).unwrap()).unwrap();
        let s2 = summarize(&monte_carlo_trials(&rho, 2e4, 100, 6).unwrap()).unwrap();
        let ratio = s1.sigma / s2.sigma;
        assert!((ratio / SQRT_2 - 1.0).abs() < 0.1, "ratio {ratio}");
    }

    #[test]
    fn estimator_is_unbiased() {
        let rho = werner(&analytic_ground_state_n3(-0.8).unwrap(), 0.83).unwrap();
        let exact = svetlichny_s3(&rho).unwrap().abs();
        let s = summarize(&monte_carlo_trials(&rho, 1e4, 1000, 8).unwrap()).unwrap();
        assert!((s.mean - exact).abs() < 3.0 * s.sigma / (1000f64).sqrt());
    }

    #[test]
    fn derived_seeds_differ() {
        let mut seen = std::collections::HashSet::new();
        for p in 0..50u64 {
            for t in 0..50u64 {
                assert!(seen.insert(derive_seed(7, &[p, t])));
            }
        }
        assert_eq!(derive_seed(7, &[1, 2]), derive_seed(7, &[1, 2]));
        assert_ne!(derive_seed(7, &[1, 2]), derive_seed(7, &[2, 1]));
    }

    #[test]
    fn werner_is_density_on_random_states() {
        let mut r = rng(43);
        for _ in 0..100 {
            let psi = random_pure(&mut r, 8);
            let p: f64 = r.gen();
            ensure_density(&werner(&psi, p).unwrap(), &Tolerances::DEFAULT).unwrap();
        }
    }

    proptest! {
        #[test]
        fn alpha_round_trip(a0 in 1.0f64..50.0) {
            let src = SourceParams::MEASURED;
            let back = a0_of_alpha(&src, alpha_of_a0(&src, a0).unwrap()).unwrap();
            prop_assert!((back - a0).abs() <= 1e-12 * a0);
        }

        #[test]
        fn rsnr_round_trip(p in 0.0f64..0.999) {
            prop_assert!((p_of_rsnr(rsnr_of_p(p).unwrap()).unwrap() - p).abs() < 1e-12);
        }

        #[test]
        fn p_is_affine(b1 in -2.0f64..0.0, b2 in -2.0f64..0.0) {
            let n = NoiseModel::default();
            let mid = p_of_beta(&n, 0.5 * (b1 + b2)).unwrap();
            let avg = 0.5 * (p_of_beta(&n, b1).unwrap() + p_of_beta(&n, b2).unwrap());
            prop_assert!((mid - avg).abs() < 1e-15);
        }
    }
}
