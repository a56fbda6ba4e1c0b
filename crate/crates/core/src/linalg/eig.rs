//! Hermitian eigensolver: Householder reduction to a real symmetric
//! tridiagonal matrix followed by implicit-shift QL iteration.

use super::{ComplexMatrix, ComplexVector, Tolerances, C64, ONE, ZERO};
use crate::error::{Error, Result};

const MAX_QL_SWEEPS: usize = 60;

/// Full spectrum of a Hermitian matrix, eigenvalues ascending.
#[derive(Debug, Clone)]
pub struct EigenResult {
    pub eigenvalues: Vec<f64>,
    /// `eigenvectors[i]` pairs with `eigenvalues[i]`.
    pub eigenvectors: Vec<ComplexVector>,
    /// `degenerate[i]` is set when eigenvalue `i` lies within the degeneracy
    /// tolerance of a neighbour, in which case its eigenvector is not unique.
    pub degenerate: Vec<bool>,
}

impl EigenResult {
    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// Gap between the two lowest eigenvalues, infinite for a 1x1 matrix.
    pub fn spectral_gap(&self) -> f64 {
        match self.eigenvalues.as_slice() {
            [a, b, ..] => b - a,
            _ => f64::INFINITY,
        }
    }
}

pub fn hermitian_eig(h: &ComplexMatrix) -> Result<EigenResult> {
    hermitian_eig_with(h, &Tolerances::DEFAULT)
}

pub fn hermitian_eig_with(h: &ComplexMatrix, tol: &Tolerances) -> Result<EigenResult> {
    let scale = h.max_abs().max(1.0);
    h.ensure_hermitian(tol.eig_input * scale)?;
    let n = h.rows();
    if h.data()
        .iter()
        .any(|z| !z.re.is_finite() || !z.im.is_finite())
    {
        return Err(Error::Numeric("non-finite matrix entry".into()));
    }

    let (diag, offdiag, mut basis) = tridiagonalize(h);
    let mut d = diag;
    let mut e: Vec<f64> = offdiag.iter().map(|z| z.norm()).collect();
    e.push(0.0);

    // Rotate the complex sub-diagonal onto the positive real axis.
    let mut phase = ONE;
    for k in 0..n {
        if k > 0 {
            let z = offdiag[k - 1];
            if z.norm() > 0.0 {
                phase *= z / z.norm();
            }
        }
        if phase != ONE {
            for r in 0..n {
                basis[(r, k)] *= phase;
            }
        }
    }

    tql2(&mut d, &mut e, &mut basis)?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[a].total_cmp(&d[b]));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| d[i]).collect();
    let eigenvectors = order.iter().map(|&i| basis.column(i)).collect();
    let gap_tol = tol.degeneracy * scale;
    let degenerate = (0..n)
        .map(|i| {
            (i > 0 && eigenvalues[i] - eigenvalues[i - 1] < gap_tol)
                || (i + 1 < n && eigenvalues[i + 1] - eigenvalues[i] < gap_tol)
        })
        .collect();
    Ok(EigenResult {
        eigenvalues,
        eigenvectors,
        degenerate,
    })
}

/// Reduces `h` to tridiagonal form `Q^dagger h Q`. Returns the real diagonal,
/// the complex sub-diagonal and the accumulated unitary `Q`.
fn tridiagonalize(h: &ComplexMatrix) -> (Vec<f64>, Vec<C64>, ComplexMatrix) {
    let n = h.rows();
    let mut a = h.clone();
    let mut q = ComplexMatrix::identity(n);

    for k in 0..n.saturating_sub(2) {
        let m = n - k - 1;
        let x: Vec<C64> = (k + 1..n).map(|r| a[(r, k)]).collect();
        let xnorm = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let tail = x[1..].iter().map(|z| z.norm_sqr()).sum::<f64>();
        if xnorm == 0.0 || tail == 0.0 {
            continue;
        }
        let phase = if x[0].norm() > 0.0 {
            x[0] / x[0].norm()
        } else {
            ONE
        };
        let alpha = -phase * xnorm;
        let mut v = x.clone();
        v[0] -= alpha;
        let vnorm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for z in &mut v {
            *z /= vnorm;
        }

        // Trailing block update A <- H A H with H = I - 2 v v^dagger.
        let mut p = vec![ZERO; m];
        for (i, pi) in p.iter_mut().enumerate() {
            for (j, vj) in v.iter().enumerate() {
                *pi += a[(k + 1 + i, k + 1 + j)] * vj;
            }
        }
        let kk: C64 = v.iter().zip(&p).map(|(vi, pi)| vi.conj() * pi).sum();
        let w: Vec<C64> = p.iter().zip(&v).map(|(pi, vi)| pi - kk * vi).collect();
        for i in 0..m {
            for j in 0..m {
                let upd = v[i] * w[j].conj() + w[i] * v[j].conj();
                a[(k + 1 + i, k + 1 + j)] -= upd * 2.0;
            }
        }
        a[(k + 1, k)] = alpha;
        a[(k, k + 1)] = alpha.conj();
        for i in 1..m {
            a[(k + 1 + i, k)] = ZERO;
            a[(k, k + 1 + i)] = ZERO;
        }

        // Q <- Q H.
        for r in 0..n {
            let qv: C64 = (0..m).map(|j| q[(r, k + 1 + j)] * v[j]).sum();
            for j in 0..m {
                q[(r, k + 1 + j)] -= qv * v[j].conj() * 2.0;
            }
        }
    }

    let diag = (0..n).map(|i| a[(i, i)].re).collect();
    let offdiag = (1..n).map(|i| a[(i, i - 1)]).collect();
    (diag, offdiag, q)
}

/// Implicit QL on the symmetric tridiagonal (`d`, `e`), `e[i]` coupling
/// `i` and `i + 1`. Rotations are applied to the columns of `v`.
fn tql2(d: &mut [f64], e: &mut [f64], v: &mut ComplexMatrix) -> Result<()> {
    let n = d.len();
    let rows = v.rows();
    let eps = f64::EPSILON;
    let mut f = 0.0;
    let mut tst1: f64 = 0.0;

    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n - 1 && e[m].abs() > eps * tst1 {
            m += 1;
        }

        if m > l {
            let mut sweeps = 0;
            loop {
                sweeps += 1;
                if sweeps > MAX_QL_SWEEPS {
                    return Err(Error::NoConvergence("tridiagonal QL iteration"));
                }
                let mut g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for di in d.iter_mut().skip(l + 2) {
                    *di -= h;
                }
                f += h;

                p = d[m];
                let mut c = 1.0;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0;
                let mut s2 = 0.0;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    for k in 0..rows {
                        let hk = v[(k, i + 1)];
                        let vk = v[(k, i)];
                        v[(k, i + 1)] = vk * s + hk * c;
                        v[(k, i)] = vk * c - hk * s;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }
    Ok(())
}
