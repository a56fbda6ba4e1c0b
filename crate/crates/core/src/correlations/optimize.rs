//! Maximization of `|M3 + M3'|` over the six measurement angles.
//!
//! `M3 + M3'` is linear in the site-1 directions: it equals
//! `u(a1).X + u(a2).Y` with `X`, `Y` depending only on the site-2/3 angles,
//! so the site-1 maximum is `|X| + |Y|` and only four angles are searched.

use std::f64::consts::{PI, TAU};

use crate::error::Result;
use crate::linalg::{ensure_qubit_density, pauli_string, Axis, ComplexMatrix};

use super::{expectation, svetlichny_from_mermin, SvetlichnyAngles};

const GRID_STEP: f64 = PI / 24.0;
const VALUE_TOL: f64 = 1e-12;
const MAX_SIMPLEX_ITERS: usize = 20_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngleOptimum {
    pub angles: SvetlichnyAngles,
    pub value: f64,
}

/// `t[j][k][l] = <S_j S_k S_l>` with `S_0 = Y`, `S_1 = Z`.
struct CorrelationTensor {
    t: [[[f64; 2]; 2]; 2],
}

impl CorrelationTensor {
    fn new(rho: &ComplexMatrix) -> Result<Self> {
        let axes = [Axis::Y, Axis::Z];
        let mut t = [[[0.0; 2]; 2]; 2];
        for (j, &aj) in axes.iter().enumerate() {
            for (k, &ak) in axes.iter().enumerate() {
                for (l, &al) in axes.iter().enumerate() {
                    t[j][k][l] = expectation(rho, &pauli_string(&[aj, ak, al]))?;
                }
            }
        }
        Ok(Self { t })
    }

    /// Contracts the site-2 index with direction `b`: `r[j][l]`.
    fn contract_site2(&self, b: [f64; 2]) -> [[f64; 2]; 2] {
        let mut r = [[0.0; 2]; 2];
        for (j, rj) in r.iter_mut().enumerate() {
            for (l, rjl) in rj.iter_mut().enumerate() {
                *rjl = self.t[j][0][l] * b[0] + self.t[j][1][l] * b[1];
            }
        }
        r
    }
}

fn dir(theta: f64) -> [f64; 2] {
    [theta.cos(), theta.sin()]
}

fn apply(r: &[[f64; 2]; 2], v: [f64; 2]) -> [f64; 2] {
    [
        r[0][0] * v[0] + r[0][1] * v[1],
        r[1][0] * v[0] + r[1][1] * v[1],
    ]
}

/// Site-1 coefficient vectors `(X, Y)` for given site-2/3 contractions.
fn site1_vectors(
    r1: &[[f64; 2]; 2],
    r2: &[[f64; 2]; 2],
    c1: [f64; 2],
    c2: [f64; 2],
) -> ([f64; 2], [f64; 2]) {
    let diff = [c2[0] - c1[0], c2[1] - c1[1]];
    let sum = [c1[0] + c2[0], c1[1] + c2[1]];
    let neg = [-diff[0], -diff[1]];
    let x1 = apply(r1, diff);
    let x2 = apply(r2, sum);
    let y1 = apply(r1, sum);
    let y2 = apply(r2, neg);
    (
        [x1[0] + x2[0], x1[1] + x2[1]],
        [y1[0] + y2[0], y1[1] + y2[1]],
    )
}

fn norm2(v: [f64; 2]) -> f64 {
    v[0].hypot(v[1])
}

fn reduced_value(t: &CorrelationTensor, p: &[f64; 4]) -> f64 {
    let r1 = t.contract_site2(dir(p[0]));
    let r2 = t.contract_site2(dir(p[1]));
    let (x, y) = site1_vectors(&r1, &r2, dir(p[2]), dir(p[3]));
    norm2(x) + norm2(y)
}

fn best_site1(t: &CorrelationTensor, p: &[f64; 4]) -> (f64, f64) {
    let r1 = t.contract_site2(dir(p[0]));
    let r2 = t.contract_site2(dir(p[1]));
    let (x, y) = site1_vectors(&r1, &r2, dir(p[2]), dir(p[3]));
    (x[1].atan2(x[0]), y[1].atan2(y[0]))
}

/// Exhaustive search on a `pi/24` lattice. Shifting both site-2 angles by
/// `pi` only flips the sign of `(X, Y)`, so `b1` is restricted to `[0, pi)`.
fn grid_search(t: &CorrelationTensor) -> ([f64; 4], f64) {
    let full = (TAU / GRID_STEP).round() as usize;
    let half = full / 2;
    let angles: Vec<f64> = (0..full).map(|k| k as f64 * GRID_STEP).collect();
    let dirs: Vec<[f64; 2]> = angles.iter().map(|&a| dir(a)).collect();
    let contractions: Vec<[[f64; 2]; 2]> = dirs.iter().map(|&d| t.contract_site2(d)).collect();

    let mut best = ([0.0; 4], f64::NEG_INFINITY);
    for i1 in 0..half {
        for i2 in 0..full {
            for j1 in 0..full {
                for j2 in 0..full {
                    let (x, y) =
                        site1_vectors(&contractions[i1], &contractions[i2], dirs[j1], dirs[j2]);
                    let v = norm2(x) + norm2(y);
                    if v > best.1 {
                        best = ([angles[i1], angles[i2], angles[j1], angles[j2]], v);
                    }
                }
            }
        }
    }
    best
}

/// Nelder-Mead minimization of `f` from `x0` with initial edge `step`.
fn nelder_mead<const D: usize>(
    f: impl Fn(&[f64; D]) -> f64,
    x0: [f64; D],
    step: f64,
    tol: f64,
) -> ([f64; D], f64) {
    let mut simplex: Vec<([f64; D], f64)> = Vec::with_capacity(D + 1);
    simplex.push((x0, f(&x0)));
    for i in 0..D {
        let mut x = x0;
        x[i] += step;
        simplex.push((x, f(&x)));
    }

    for _ in 0..MAX_SIMPLEX_ITERS {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let (best, worst) = (simplex[0].1, simplex[D].1);
        if (worst - best).abs() <= tol {
            break;
        }
        let mut centroid = [0.0; D];
        for (x, _) in &simplex[..D] {
            for k in 0..D {
                centroid[k] += x[k] / D as f64;
            }
        }
        let towards = |coef: f64| {
            let mut p = [0.0; D];
            for k in 0..D {
                p[k] = centroid[k] + coef * (simplex[D].0[k] - centroid[k]);
            }
            p
        };

        let xr = towards(-1.0);
        let fr = f(&xr);
        if fr < simplex[0].1 {
            let xe = towards(-2.0);
            let fe = f(&xe);
            simplex[D] = if fe < fr { (xe, fe) } else { (xr, fr) };
            continue;
        }
        if fr < simplex[D - 1].1 {
            simplex[D] = (xr, fr);
            continue;
        }
        let (xc, fc) = if fr < simplex[D].1 {
            let xc = towards(-0.5);
            (xc, f(&xc))
        } else {
            let xc = towards(0.5);
            (xc, f(&xc))
        };
        if fc < simplex[D].1.min(fr) {
            simplex[D] = (xc, fc);
            continue;
        }
        let x_best = simplex[0].0;
        for (x, fx) in simplex.iter_mut().skip(1) {
            for k in 0..D {
                x[k] = x_best[k] + 0.5 * (x[k] - x_best[k]);
            }
            *fx = f(x);
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    simplex[0]
}

/// Maximizes `|M3 + M3'|` over the six y-z plane angles: lattice search with
/// step `pi/24`, then simplex refinement. The result is never below the
/// value at [`SvetlichnyAngles::default`].
pub fn optimize_svetlichny_angles(rho: &ComplexMatrix) -> Result<AngleOptimum> {
    ensure_qubit_density(rho, 3)?;
    let t = CorrelationTensor::new(rho)?;

    let (mut point, mut value) = grid_search(&t);
    // Restart the simplex until it stops improving.
    for _ in 0..4 {
        let (p, neg) = nelder_mead(|p| -reduced_value(&t, p), point, GRID_STEP / 2.0, VALUE_TOL);
        let improved = -neg > value + VALUE_TOL;
        if -neg > value {
            point = p;
            value = -neg;
        }
        if !improved {
            break;
        }
    }

    let (a1, a2) = best_site1(&t, &point);
    let angles = SvetlichnyAngles {
        a1,
        a2,
        b1: point[0],
        b2: point[1],
        c1: point[2],
        c2: point[3],
    };
    let found = svetlichny_from_mermin(rho, &angles)?;
    let default_angles = SvetlichnyAngles::default();
    let at_default = svetlichny_from_mermin(rho, &default_angles)?;
    Ok(if found >= at_default {
        AngleOptimum {
            angles,
            value: found,
        }
    } else {
        AngleOptimum {
            angles: default_angles,
            value: at_default,
        }
    })
}
