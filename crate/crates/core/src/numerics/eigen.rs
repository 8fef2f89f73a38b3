use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::fmath;
use crate::matrix::{c64, ComplexMatrix};

const MAX_SWEEPS: usize = 100;

/// Eigendecomposition `M = V Λ V†` of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct HermEigen {
    /// Eigenvalues in ascending order.
    pub values: Vec<f64>,
    /// Orthonormal eigenvectors, column `k` belongs to `values[k]`.
    pub vectors: ComplexMatrix,
}

impl HermEigen {
    pub fn min(&self) -> f64 {
        self.values[0]
    }

    pub fn max(&self) -> f64 {
        self.values[self.values.len() - 1]
    }

    pub fn vector(&self, k: usize) -> Vec<c64> {
        self.vectors.column(k)
    }

    /// Largest eigenvalue modulus, i.e. the operator norm of the source matrix.
    pub fn spectral_radius(&self) -> f64 {
        fmath::abs(self.min()).max(fmath::abs(self.max()))
    }

    /// Rebuilds `V f(Λ) V†`.
    pub fn reconstruct_with(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.values.len();
        let mut out = ComplexMatrix::zeros(n, n);
        for (k, &lam) in self.values.iter().enumerate() {
            let w = f(lam);
            if w == 0.0 {
                continue;
            }
            for r in 0..n {
                let vr = self.vectors[(r, k)] * w;
                for c in 0..n {
                    out[(r, c)] += vr * self.vectors[(c, k)].conj();
                }
            }
        }
        out
    }
}

/// Hermitian eigensolver (cyclic complex Jacobi).
///
/// Rejects input whose Hermitian defect exceeds `eps_eig · ‖M‖_F`. Each
/// rotation first removes the phase of the pivot `m_pq` with a diagonal
/// unitary and then applies a real Givens rotation, so the iterate stays
/// exactly Hermitian up to rounding. Sweeps stop once the off-diagonal mass
/// drops below `n · ε · ‖M‖_F`.
pub fn herm_eigs(m: &ComplexMatrix, eps_eig: f64) -> Result<HermEigen> {
    let n = m.ensure_square()?;
    m.ensure_hermitian(eps_eig)?;

    // symmetrize so rounding noise in the input cannot bias the result
    let mut a = ComplexMatrix::from_fn(n, n, |r, c| {
        if r == c {
            c64::new(m[(r, r)].re, 0.0)
        } else {
            (m[(r, c)] + m[(c, r)].conj()) * 0.5
        }
    });
    let mut v = ComplexMatrix::identity(n);
    let scale = a.frobenius_norm();
    let stop = (n as f64) * f64::EPSILON * scale;

    let mut converged = n < 2 || scale == 0.0;
    let mut sweep = 0;
    while !converged {
        if sweep == MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps: MAX_SWEEPS });
        }
        sweep += 1;
        let mut rotated = false;
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let r = apq.norm();
                if r <= f64::MIN_POSITIVE {
                    continue;
                }
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                // negligible against both diagonal entries
                if r < 0.5 * f64::EPSILON * f64::EPSILON * (fmath::abs(app) + fmath::abs(aqq)) {
                    a[(p, q)] = c64::new(0.0, 0.0);
                    a[(q, p)] = c64::new(0.0, 0.0);
                    continue;
                }
                rotated = true;
                rotate(&mut a, &mut v, p, q, apq / r, r, app, aqq);
            }
        }
        converged = !rotated || off_norm(&a) <= stop;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |r, c| v[(r, order[c])]);
    Ok(HermEigen { values, vectors })
}

#[allow(clippy::too_many_arguments)]
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize, phase: c64, r: f64, app: f64, aqq: f64) {
    let n = a.rows();
    // D = diag(.., conj(phase) at q, ..); A <- D† A D makes a_pq = r real
    let d = phase.conj();
    for k in 0..n {
        a[(k, q)] *= d;
    }
    for k in 0..n {
        a[(q, k)] *= phase;
    }
    for k in 0..n {
        v[(k, q)] *= d;
    }

    let theta = (aqq - app) / (2.0 * r);
    let t = {
        let t = 1.0 / (fmath::abs(theta) + fmath::hypot(theta, 1.0));
        if theta < 0.0 {
            -t
        } else {
            t
        }
    };
    let c = 1.0 / fmath::hypot(t, 1.0);
    let s = t * c;

    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * c - akq * s;
        a[(k, q)] = akp * s + akq * c;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = apk * c - aqk * s;
        a[(q, k)] = apk * s + aqk * c;
    }
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * c - vkq * s;
        v[(k, q)] = vkp * s + vkq * c;
    }
    a[(p, q)] = c64::new(0.0, 0.0);
    a[(q, p)] = c64::new(0.0, 0.0);
    a[(p, p)] = c64::new(app - t * r, 0.0);
    a[(q, q)] = c64::new(aqq + t * r, 0.0);
}

fn off_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut acc = 0.0;
    for r in 0..n {
        for c in 0..n {
            if r != c {
                acc += a[(r, c)].norm_sqr();
            }
        }
    }
    fmath::sqrt(acc)
}
