//! Runs every acceptance criterion and prints one PASS/FAIL line each.
//! Exits non-zero when any criterion fails.

use std::f64::consts::SQRT_2;
use std::process::ExitCode;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use spinring::correlations::{
    pair_state_23, svetlichny_from_mermin, svetlichny_s3, witness_w2, SvetlichnyAngles,
};
use spinring::entanglement::{n3_from_s3, tau3_from_s3, three_tangle_pure, tripartite_negativity};
use spinring::ising::{analytic_ground_state_n3, beta_of_a0, ground_state, RingSpec};
use spinring::linalg::{ComplexMatrix, ComplexVector, C64};
use spinring::photonics::{a0_of_alpha, p_of_beta, werner, NoiseModel, SourceParams};
use spinring_cli::commands::{montecarlo, optimize, sweep, table};
use spinring_cli::RunConfig;

type Outcome = Result<(bool, String), String>;
type Criterion = (&'static str, fn() -> Outcome);

const S3_MAX: f64 = 4.0 * SQRT_2;

fn grid(n: usize) -> Vec<f64> {
    (0..n)
        .map(|k| -2.0 + k as f64 * (2.0 - 1e-6) / (n - 1) as f64)
        .collect()
}

fn random_pure(rng: &mut impl Rng, dim: usize) -> ComplexVector {
    let v: Vec<C64> = (0..dim)
        .map(|_| C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect();
    ComplexVector::new(v).unwrap().normalized().unwrap()
}

fn random_density(rng: &mut impl Rng) -> ComplexMatrix {
    let k = rng.gen_range(1..=4);
    let w: Vec<f64> = (0..k).map(|_| rng.gen::<f64>() + 1e-3).collect();
    let total: f64 = w.iter().sum();
    let mut rho = ComplexMatrix::zeros(8, 8);
    for wi in w {
        rho = &rho + &random_pure(rng, 8).projector().scale_real(wi / total);
    }
    let adj = rho.adjoint();
    (&rho + &adj).scale_real(0.5)
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn noiseless() -> RunConfig {
    RunConfig {
        noise: false,
        ..RunConfig::default()
    }
}

fn c1_ground_state_equivalence() -> Outcome {
    let mut worst: f64 = 1.0;
    for beta in grid(100) {
        let gs = ground_state(&RingSpec::with_beta(3, beta).map_err(err)?).map_err(err)?;
        let exact = analytic_ground_state_n3(beta).map_err(err)?;
        worst = worst.min(gs.state.fidelity(&exact));
    }
    Ok((worst >= 1.0 - 1e-9, format!("min fidelity {worst:.15}")))
}

fn c2_ghz_limit() -> Outcome {
    let gs = ground_state(&RingSpec::with_beta(3, -1e-6).map_err(err)?).map_err(err)?;
    let s = svetlichny_s3(&gs.state.projector()).map_err(err)?.abs();
    let dev = (s - S3_MAX).abs();
    Ok((dev <= 1e-5, format!("|S3| = {s:.12}, deviation {dev:.3e}")))
}

fn witness_at(beta: f64) -> Result<f64, String> {
    let rho = analytic_ground_state_n3(beta).map_err(err)?.projector();
    Ok(witness_w2(&pair_state_23(&rho).map_err(err)?)
        .map_err(err)?
        .value)
}

/// Golden-section minimization of the witness on `[a, b]`.
fn refine_witness_minimum(mut a: f64, mut b: f64) -> Result<(f64, f64), String> {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    while b - a > 1e-9 {
        let (x1, x2) = (b - g * (b - a), a + g * (b - a));
        if witness_at(x1)? < witness_at(x2)? {
            b = x2;
        } else {
            a = x1;
        }
    }
    let x = 0.5 * (a + b);
    Ok((x, witness_at(x)?))
}

/// The sampled minimum lies on the sweep grid; the value the curve attains
/// is refined within one grid step of it.
fn c3_witness_minimum() -> Outcome {
    let recs = sweep(&noiseless()).map_err(err)?;
    let step = recs[1].beta - recs[0].beta;
    let min = recs.iter().min_by(|a, b| a.w2.total_cmp(&b.w2)).unwrap();
    let lo = (min.beta - step).max(-2.0);
    let hi = (min.beta + step).min(-1e-6);
    let (beta, value) = refine_witness_minimum(lo, hi)?;
    let ok = (value + 1.0 / 6.0).abs() <= 1e-6
        && (min.beta + 1.0).abs() <= step
        && (beta + 1.0).abs() <= step;
    Ok((
        ok,
        format!(
            "grid minimum {:.9} at beta = {:.6}; refined minimum {value:.12} at beta = {beta:.6} (grid step {step:.4})",
            min.w2, min.beta
        ),
    ))
}

fn c4_derivative_peak() -> Outcome {
    let recs = sweep(&noiseless()).map_err(err)?;
    let peak = recs
        .iter()
        .max_by(|a, b| a.ds3_pure_dbeta.total_cmp(&b.ds3_pure_dbeta))
        .unwrap();
    let ok = (-1.1..=-0.9).contains(&peak.beta);
    Ok((
        ok,
        format!(
            "argmax of d|S3|/dbeta at beta = {:.4}, required [-1.1, -0.9]",
            peak.beta
        ),
    ))
}

fn c5_threshold_crossing() -> Outcome {
    let recs = sweep(&noiseless()).map_err(err)?;
    let k = recs
        .windows(2)
        .position(|w| w[0].s3_pure < 4.0 && w[1].s3_pure >= 4.0)
        .ok_or("no crossing of 4 on the grid")?;
    let (a, b) = (&recs[k], &recs[k + 1]);
    let beta = a.beta + (4.0 - a.s3_pure) * (b.beta - a.beta) / (b.s3_pure - a.s3_pure);
    Ok((
        (beta + 1.118).abs() <= 0.01,
        format!("crossing at beta = {beta:.5}"),
    ))
}

fn c6_closed_form_consistency() -> Outcome {
    let mut worst: f64 = 0.0;
    for beta in grid(50) {
        let psi = analytic_ground_state_n3(beta).map_err(err)?;
        let rho = psi.projector();
        let s = svetlichny_s3(&rho).map_err(err)?.abs();
        let d_tau = (tau3_from_s3(s).map_err(err)? - three_tangle_pure(&psi).map_err(err)?).abs();
        let d_n3 = (n3_from_s3(s).map_err(err)? - tripartite_negativity(&rho).map_err(err)?).abs();
        worst = worst.max(d_tau).max(d_n3);
    }
    let t = (tau3_from_s3(S3_MAX).map_err(err)? - 1.0).abs();
    let n = (n3_from_s3(S3_MAX).map_err(err)? - 1.0).abs();
    let ok = worst <= 1e-8 && t <= 1e-10 && n <= 1e-10;
    Ok((
        ok,
        format!("max deviation {worst:.3e}; endpoint errors tau3 {t:.1e}, N3 {n:.1e}"),
    ))
}

fn c7_table() -> Outcome {
    const REFERENCE: [(f64, f64); 7] = [
        (4.83, 0.90),
        (4.89, 0.88),
        (4.47, 0.82),
        (4.32, 0.71),
        (3.64, 0.59),
        (2.98, 0.41),
        (2.18, 0.26),
    ];
    let recs = table(&RunConfig::default()).map_err(err)?;
    let mut ok = true;
    let mut parts = Vec::new();
    for (rec, (s3, reference)) in recs.iter().zip(REFERENCE) {
        if (rec.s3 - s3).abs() > 1e-12 {
            return Err(format!("unexpected table row {}", rec.s3));
        }
        let n3 = rec.n3.ok_or(format!("row {s3} unsolved"))?;
        let good = (n3 - reference).abs() <= 0.05;
        ok &= good;
        let flag = if rec.flagged { " flagged" } else { "" };
        parts.push(format!(
            "{s3}: {n3:.3} vs {reference}{}{flag}",
            if good { "" } else { " (off)" }
        ));
    }
    let flagged: Vec<f64> = recs.iter().filter(|r| r.flagged).map(|r| r.s3).collect();
    ok &= flagged == [4.89];
    Ok((ok, parts.join("; ")))
}

fn c8_svetlichny_identity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let angles = SvetlichnyAngles::default();
    let mut worst: f64 = 0.0;
    for k in 0..1000 {
        let rho = if k % 2 == 0 {
            random_pure(&mut rng, 8).projector()
        } else {
            random_density(&mut rng)
        };
        let a = svetlichny_from_mermin(&rho, &angles).map_err(err)?;
        let b = svetlichny_s3(&rho).map_err(err)?.abs();
        worst = worst.max((a - b).abs());
    }
    Ok((
        worst <= 1e-10,
        format!("max |M3 + M3'| deviation {worst:.3e} over 1000 states"),
    ))
}

fn c9_angle_optimization() -> Outcome {
    let near_zero = optimize(&RunConfig {
        beta: Some(-1e-6),
        ..noiseless()
    })
    .map_err(err)?;
    let dev = (near_zero[0].s3_optimized - S3_MAX).abs();
    let recs = optimize(&noiseless()).map_err(err)?;
    let worst = recs
        .iter()
        .map(|r| r.s3_optimized - r.s3_default)
        .fold(f64::INFINITY, f64::min);
    let ok = dev <= 1e-6 && worst >= -1e-12;
    Ok((
        ok,
        format!(
            "GHZ-limit deviation {dev:.3e}; min (optimized - default) over {} points {worst:.3e}",
            recs.len()
        ),
    ))
}

fn c10_noise_factorization() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let psi = random_pure(&mut rng, 8);
        let p: f64 = rng.gen();
        let noisy = svetlichny_s3(&werner(&psi, p).map_err(err)?)
            .map_err(err)?
            .abs();
        let pure = svetlichny_s3(&psi.projector()).map_err(err)?.abs();
        worst = worst.max((noisy - p * pure).abs());
    }
    let noise = NoiseModel::default();
    let p0 = p_of_beta(&noise, 0.0).map_err(err)?;
    let p2 = p_of_beta(&noise, -2.0).map_err(err)?;
    let ok = worst <= 1e-12 && p0 == 0.927 && p2 == 0.671;
    Ok((
        ok,
        format!("max deviation {worst:.3e}; p(0) = {p0}, p(-2) = {p2}"),
    ))
}

fn c11_monte_carlo() -> Outcome {
    let cfg = RunConfig {
        steps: 20,
        counts: Some(1e4),
        trials: 1000,
        seed: 11,
        ..RunConfig::default()
    };
    let recs = montecarlo(&cfg).map_err(err)?;
    let min_cov = recs
        .iter()
        .map(|r| r.coverage)
        .fold(f64::INFINITY, f64::min);
    let (lo, hi) = recs
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), r| {
            (lo.min(r.sigma), hi.max(r.sigma))
        });
    let ok = min_cov >= 0.99 && lo >= 0.05 && hi <= 0.2;
    Ok((
        ok,
        format!(
            "min 3-sigma coverage {min_cov:.3} over {} field values; sigma in [{lo:.4}, {hi:.4}], required [0.05, 0.2]",
            recs.len()
        ),
    ))
}

fn c12_photonic_mapping() -> Outcome {
    let src = SourceParams::MEASURED;
    let top = beta_of_a0(a0_of_alpha(&src, 4.0).map_err(err)?).map_err(err)?;
    let bottom = beta_of_a0(a0_of_alpha(&src, 0.1).map_err(err)?).map_err(err)?;
    let ok = top.abs() <= 0.05 && (bottom + 2.0).abs() <= 0.05;
    Ok((
        ok,
        format!("alpha = 4 -> beta = {top:.4}; alpha = 0.1 -> beta = {bottom:.4}"),
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("ground-state equivalence", c1_ground_state_equivalence),
        ("GHZ limit", c2_ghz_limit),
        ("witness criticality", c3_witness_minimum),
        ("derivative peak", c4_derivative_peak),
        ("nonlocality threshold crossing", c5_threshold_crossing),
        ("closed-form consistency", c6_closed_form_consistency),
        ("table reproduction", c7_table),
        ("Svetlichny identity", c8_svetlichny_identity),
        ("angle optimization", c9_angle_optimization),
        ("noise factorization", c10_noise_factorization),
        ("Monte Carlo statistics", c11_monte_carlo),
        ("photonic mapping", c12_photonic_mapping),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let (ok, detail) = match check() {
            Ok(r) => r,
            Err(e) => (false, format!("error: {e}")),
        };
        if !ok {
            failed += 1;
        }
        println!(
            "{} criterion {:>2} {name}: {detail}",
            if ok { "PASS" } else { "FAIL" },
            k + 1
        );
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
