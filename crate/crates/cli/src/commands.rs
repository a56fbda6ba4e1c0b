use rayon::prelude::*;
use serde::Serialize;
use spinring::correlations::{
    derivative, optimize_svetlichny_angles, pair_state_23, svetlichny_from_mermin, svetlichny_s3,
    witness_w2, SvetlichnyAngles,
};
use spinring::entanglement::{
    attainable_s3_range, infer_beta_from_measured_s3, n3_from_s3, tau3_from_s3, three_tangle_pure,
    tripartite_negativity,
};
use spinring::ising::{a0_of_beta, analytic_ground_state_n3, ground_state, RingSpec};
use spinring::linalg::ComplexVector;
use spinring::photonics::{
    derive_seed, estimate_with_errors, monte_carlo_trials, p_of_beta, simulate_svetlichny_counts,
    summarize, werner, NoiseModel,
};
use spinring::Error;

use crate::config::{RunConfig, DEFAULT_COUNTS};
use crate::error::CliError;
use crate::output::{Cell, Record};

fn ground(beta: f64) -> Result<ComplexVector, CliError> {
    Ok(ground_state(&RingSpec::with_beta(3, beta)?)?.state)
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepRecord {
    pub beta: f64,
    pub a0: f64,
    pub p: f64,
    pub w2: f64,
    pub s3_pure: f64,
    pub s3_noisy: f64,
    /// Slope of `s3_noisy`; equals the pure slope with noise off.
    pub ds3_dbeta: f64,
    pub ds3_pure_dbeta: f64,
    pub tau3: f64,
    pub n3_pure: f64,
    pub n3_noisy: f64,
    pub s3_hat: Option<f64>,
    pub sigma: Option<f64>,
}

impl Record for SweepRecord {
    const COLUMNS: &'static [&'static str] = &[
        "beta",
        "a0",
        "p",
        "w2",
        "s3_pure",
        "s3_noisy",
        "ds3_dbeta",
        "ds3_pure_dbeta",
        "tau3",
        "n3_pure",
        "n3_noisy",
        "s3_hat",
        "sigma",
    ];

    fn cells(&self) -> Vec<Cell> {
        vec![
            self.beta.into(),
            self.a0.into(),
            self.p.into(),
            self.w2.into(),
            self.s3_pure.into(),
            self.s3_noisy.into(),
            self.ds3_dbeta.into(),
            self.ds3_pure_dbeta.into(),
            self.tau3.into(),
            self.n3_pure.into(),
            self.n3_noisy.into(),
            self.s3_hat.into(),
            self.sigma.into(),
        ]
    }
}

fn sweep_point(
    cfg: &RunConfig,
    noise: &NoiseModel,
    index: usize,
    beta: f64,
) -> Result<SweepRecord, CliError> {
    let psi = ground(beta)?;
    let rho = psi.projector();
    let p = p_of_beta(noise, beta)?;
    let noisy = werner(&psi, p)?;
    let (s3_hat, sigma) = match cfg.counts {
        Some(mean) => {
            let records =
                simulate_svetlichny_counts(&noisy, mean, derive_seed(cfg.seed, &[index as u64]))?;
            let (s, e) = estimate_with_errors(&records)?;
            (Some(s), Some(e))
        }
        None => (None, None),
    };
    Ok(SweepRecord {
        beta,
        a0: a0_of_beta(beta)?,
        p,
        w2: witness_w2(&pair_state_23(&rho)?)?.value,
        s3_pure: svetlichny_s3(&rho)?.abs(),
        s3_noisy: svetlichny_s3(&noisy)?.abs(),
        ds3_dbeta: 0.0,
        ds3_pure_dbeta: 0.0,
        tau3: three_tangle_pure(&psi)?,
        n3_pure: tripartite_negativity(&rho)?,
        n3_noisy: tripartite_negativity(&noisy)?,
        s3_hat,
        sigma,
    })
}

pub fn sweep(cfg: &RunConfig) -> Result<Vec<SweepRecord>, CliError> {
    let grid = cfg.grid();
    let noise = cfg.active_noise();
    let mut records = grid
        .par_iter()
        .enumerate()
        .map(|(i, &beta)| sweep_point(cfg, &noise, i, beta))
        .collect::<Result<Vec<_>, _>>()?;
    let noisy: Vec<f64> = records.iter().map(|r| r.s3_noisy).collect();
    let pure: Vec<f64> = records.iter().map(|r| r.s3_pure).collect();
    let d_noisy = derivative(&grid, &noisy)?;
    let d_pure = derivative(&grid, &pure)?;
    for ((r, dn), dp) in records.iter_mut().zip(d_noisy).zip(d_pure) {
        r.ds3_dbeta = dn;
        r.ds3_pure_dbeta = dp;
    }
    Ok(records)
}

#[derive(Debug, Clone, Serialize)]
pub struct TableRecord {
    pub s3: f64,
    pub s3_error: f64,
    pub beta: Option<f64>,
    pub p: Option<f64>,
    pub n3: Option<f64>,
    /// `n3` at `s3 - s3_error` and `s3 + s3_error`, each clamped to the
    /// attainable range.
    pub n3_low: Option<f64>,
    pub n3_high: Option<f64>,
    /// Pure-state closed forms evaluated on the measured value.
    pub n3_closed_form: Option<f64>,
    pub tau3_closed_form: Option<f64>,
    pub flagged: bool,
    pub note: String,
}

impl Record for TableRecord {
    const COLUMNS: &'static [&'static str] = &[
        "s3",
        "s3_error",
        "beta",
        "p",
        "n3",
        "n3_low",
        "n3_high",
        "n3_closed_form",
        "tau3_closed_form",
        "flagged",
        "note",
    ];

    fn cells(&self) -> Vec<Cell> {
        vec![
            self.s3.into(),
            self.s3_error.into(),
            self.beta.into(),
            self.p.into(),
            self.n3.into(),
            self.n3_low.into(),
            self.n3_high.into(),
            self.n3_closed_form.into(),
            self.tau3_closed_form.into(),
            Cell::Bool(self.flagged),
            Cell::Text(self.note.clone()),
        ]
    }
}

/// Tripartite negativity of the Werner state whose Svetlichny value is `s3`.
pub fn werner_n3_for_s3(s3: f64, noise: &NoiseModel) -> Result<(f64, f64, f64), Error> {
    let beta = infer_beta_from_measured_s3(s3, noise)?;
    let p = p_of_beta(noise, beta)?;
    let n3 = tripartite_negativity(&werner(&analytic_ground_state_n3(beta)?, p)?)?;
    Ok((beta, p, n3))
}

pub fn table(cfg: &RunConfig) -> Result<Vec<TableRecord>, CliError> {
    let noise = cfg.active_noise();
    let (min, max) = attainable_s3_range(&noise)?;
    cfg.table
        .par_iter()
        .map(|input| {
            let (s3, err) = (input.s3, input.error);
            let mut rec = TableRecord {
                s3,
                s3_error: err,
                beta: None,
                p: None,
                n3: None,
                n3_low: None,
                n3_high: None,
                n3_closed_form: n3_from_s3(s3).ok(),
                tau3_closed_form: tau3_from_s3(s3).ok(),
                flagged: false,
                note: String::new(),
            };
            match werner_n3_for_s3(s3, &noise) {
                Ok((beta, p, n3)) => {
                    rec.beta = Some(beta);
                    rec.p = Some(p);
                    rec.n3 = Some(n3);
                }
                Err(Error::Unsolvable { .. }) => {
                    rec.flagged = true;
                    rec.note = format!("unsolvable: attainable range is [{min:.6}, {max:.6}]");
                    return Ok(rec);
                }
                Err(e) => return Err(e.into()),
            }
            let clamp = |s: f64| s.clamp(min, max);
            rec.n3_low = Some(werner_n3_for_s3(clamp(s3 - err), &noise)?.2);
            rec.n3_high = Some(werner_n3_for_s3(clamp(s3 + err), &noise)?.2);
            if s3 + 2.0 * err > max {
                rec.flagged = true;
                rec.note = format!(
                    "two-sigma band exceeds the attainable maximum {max:.6}; upper end clamped to beta -> 0-"
                );
            }
            Ok(rec)
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct OptimizeRecord {
    pub beta: f64,
    pub s3_default: f64,
    pub s3_optimized: f64,
    pub a1: f64,
    pub a2: f64,
    pub b1: f64,
    pub b2: f64,
    pub c1: f64,
    pub c2: f64,
}

impl Record for OptimizeRecord {
    const COLUMNS: &'static [&'static str] = &[
        "beta",
        "s3_default",
        "s3_optimized",
        "a1",
        "a2",
        "b1",
        "b2",
        "c1",
        "c2",
    ];

    fn cells(&self) -> Vec<Cell> {
        [
            self.beta,
            self.s3_default,
            self.s3_optimized,
            self.a1,
            self.a2,
            self.b1,
            self.b2,
            self.c1,
            self.c2,
        ]
        .into_iter()
        .map(Cell::Num)
        .collect()
    }
}

pub fn optimize(cfg: &RunConfig) -> Result<Vec<OptimizeRecord>, CliError> {
    let points = match cfg.beta {
        Some(b) => vec![b],
        None => cfg.grid(),
    };
    let noise = cfg.active_noise();
    points
        .par_iter()
        .map(|&beta| {
            let rho = werner(&ground(beta)?, p_of_beta(&noise, beta)?)?;
            let s3_default = svetlichny_from_mermin(&rho, &SvetlichnyAngles::default())?;
            let opt = optimize_svetlichny_angles(&rho)?;
            let SvetlichnyAngles {
                a1,
                a2,
                b1,
                b2,
                c1,
                c2,
            } = opt.angles;
            Ok(OptimizeRecord {
                beta,
                s3_default,
                s3_optimized: opt.value,
                a1,
                a2,
                b1,
                b2,
                c1,
                c2,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct MonteCarloRecord {
    pub beta: f64,
    pub p: f64,
    pub counts: f64,
    pub trials: u64,
    pub s3_exact: f64,
    pub s3_mean: f64,
    pub s3_std: f64,
    /// Mean propagated error of a single trial.
    pub sigma: f64,
    /// Fraction of trials within three propagated errors of `s3_exact`.
    pub coverage: f64,
}

impl Record for MonteCarloRecord {
    const COLUMNS: &'static [&'static str] = &[
        "beta", "p", "counts", "trials", "s3_exact", "s3_mean", "s3_std", "sigma", "coverage",
    ];

    fn cells(&self) -> Vec<Cell> {
        vec![
            self.beta.into(),
            self.p.into(),
            self.counts.into(),
            Cell::Int(self.trials),
            self.s3_exact.into(),
            self.s3_mean.into(),
            self.s3_std.into(),
            self.sigma.into(),
            self.coverage.into(),
        ]
    }
}

pub fn montecarlo(cfg: &RunConfig) -> Result<Vec<MonteCarloRecord>, CliError> {
    let noise = cfg.active_noise();
    let counts = cfg.counts.unwrap_or(DEFAULT_COUNTS);
    cfg.grid()
        .par_iter()
        .enumerate()
        .map(|(i, &beta)| {
            let p = p_of_beta(&noise, beta)?;
            let rho = werner(&ground(beta)?, p)?;
            let exact = svetlichny_s3(&rho)?.abs();
            let estimates =
                monte_carlo_trials(&rho, counts, cfg.trials, derive_seed(cfg.seed, &[i as u64]))?;
            let summary = summarize(&estimates)?;
            let covered = estimates
                .iter()
                .filter(|(s, e)| (s - exact).abs() <= 3.0 * e)
                .count();
            Ok(MonteCarloRecord {
                beta,
                p,
                counts,
                trials: cfg.trials as u64,
                s3_exact: exact,
                s3_mean: summary.mean,
                s3_std: summary.std,
                sigma: summary.sigma,
                coverage: covered as f64 / estimates.len() as f64,
            })
        })
        .collect()
}
