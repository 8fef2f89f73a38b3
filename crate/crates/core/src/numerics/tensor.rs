use alloc::format;

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;

use super::norms::trace_norm;

/// Tensor factor of a bipartite operator on `C^{d1} ⊗ C^{d2}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Subsystem {
    First,
    Second,
}

/// Kronecker product `A ⊗ B`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (br, bc) = (b.rows(), b.cols());
    ComplexMatrix::from_fn(a.rows() * br, a.cols() * bc, |r, c| {
        a[(r / br, c / bc)] * b[(r % br, c % bc)]
    })
}

fn check_bipartite(m: &ComplexMatrix, d1: usize, d2: usize) -> Result<()> {
    if d1 == 0 || d2 == 0 || m.rows() != d1 * d2 || m.cols() != d1 * d2 {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} matrix is not an operator on C^{d1} ⊗ C^{d2}",
            m.rows(),
            m.cols()
        )));
    }
    Ok(())
}

/// Partial transpose on one tensor factor.
///
/// Row and column indices are split as `(i, k)` with `i < d1`, `k < d2`.
/// Transposing the second factor maps `M[(i,k),(j,l)]` to position
/// `[(i,l),(j,k)]`; the first factor maps it to `[(j,k),(i,l)]`.
pub fn partial_transpose(m: &ComplexMatrix, d1: usize, d2: usize, subsystem: Subsystem) -> Result<ComplexMatrix> {
    check_bipartite(m, d1, d2)?;
    let n = d1 * d2;
    Ok(ComplexMatrix::from_fn(n, n, |r, c| {
        let (i, k) = (r / d2, r % d2);
        let (j, l) = (c / d2, c % d2);
        match subsystem {
            Subsystem::Second => m[(i * d2 + l, j * d2 + k)],
            Subsystem::First => m[(j * d2 + k, i * d2 + l)],
        }
    }))
}

/// Realignment `R(M)[(i,k),(j,l)] = M[(i,j),(k,l)]`, a `d1² × d2²` matrix.
pub fn realign(m: &ComplexMatrix, d1: usize, d2: usize) -> Result<ComplexMatrix> {
    check_bipartite(m, d1, d2)?;
    Ok(ComplexMatrix::from_fn(d1 * d1, d2 * d2, |r, c| {
        let (i, k) = (r / d1, r % d1);
        let (j, l) = (c / d2, c % d2);
        m[(i * d2 + j, k * d2 + l)]
    }))
}

/// Trace norm of the realigned matrix (the CCNR quantity).
pub fn realign_trace_norm(m: &ComplexMatrix, d1: usize, d2: usize) -> Result<f64> {
    trace_norm(&realign(m, d1, d2)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::c64;

    fn bell_projector() -> ComplexMatrix {
        ComplexMatrix::from_real_rows(&[
            [0.5, 0.0, 0.0, 0.5],
            [0.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, 0.0],
            [0.5, 0.0, 0.0, 0.5],
        ])
    }

    #[test]
    fn kron_examples() {
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(kron(&i2, &i2), ComplexMatrix::identity(4));
        let d = ComplexMatrix::from_real_rows(&[[1.0, 0.0], [0.0, 2.0]]);
        assert_eq!(kron(&d, &i2), ComplexMatrix::from_real_diagonal(&[1.0, 1.0, 2.0, 2.0]));

        let up = ComplexMatrix::from_real_rows(&[[0.0, 1.0], [0.0, 0.0]]);
        let down = ComplexMatrix::from_real_rows(&[[0.0, 0.0], [1.0, 0.0]]);
        let k = kron(&up, &down);
        for r in 0..4 {
            for c in 0..4 {
                // single 1 at 1-based (2,3)
                let want = if (r, c) == (1, 2) { 1.0 } else { 0.0 };
                assert_eq!(k[(r, c)], c64::new(want, 0.0));
            }
        }
    }

    #[test]
    fn partial_transpose_of_bell_is_half_swap() {
        let swap_half = ComplexMatrix::from_real_rows(&[
            [0.5, 0.0, 0.0, 0.0],
            [0.0, 0.0, 0.5, 0.0],
            [0.0, 0.5, 0.0, 0.0],
            [0.0, 0.0, 0.0, 0.5],
        ]);
        for sub in [Subsystem::First, Subsystem::Second] {
            assert_eq!(partial_transpose(&bell_projector(), 2, 2, sub).unwrap(), swap_half);
        }
    }

    #[test]
    fn partial_transpose_leaves_diagonal_alone() {
        let d = ComplexMatrix::from_real_diagonal(&[1.0, 2.0, 3.0, 4.0, 5.0, 6.0]);
        assert_eq!(partial_transpose(&d, 2, 3, Subsystem::Second).unwrap(), d);
        assert_eq!(partial_transpose(&d, 2, 3, Subsystem::First).unwrap(), d);
    }

    #[test]
    fn partial_transpose_dimension_errors() {
        let m = ComplexMatrix::identity(6);
        assert!(partial_transpose(&m, 2, 4, Subsystem::First).is_err());
        assert!(realign(&m, 4, 2).is_err());
    }

    #[test]
    fn realignment_trace_norms() {
        let mut prod = ComplexMatrix::zeros(4, 4);
        prod[(0, 0)] = c64::new(1.0, 0.0);
        assert!((realign_trace_norm(&prod, 2, 2).unwrap() - 1.0).abs() < 1e-14);
        assert!((realign_trace_norm(&bell_projector(), 2, 2).unwrap() - 2.0).abs() < 1e-14);
        let mixed = ComplexMatrix::identity(4).scale(0.25);
        assert!((realign_trace_norm(&mixed, 2, 2).unwrap() - 0.5).abs() < 1e-14);
    }
}
