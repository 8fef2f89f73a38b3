use alloc::vec::Vec;

use crate::error::Result;
use crate::matrix::ComplexMatrix;

use super::eigen::herm_eigs;

// Singular values come from the Hermitian dilation [[0, M], [M†, 0]], whose
// spectrum is {±σ_k} plus |rows − cols| zeros. Unlike eigenvalues of M†M this
// keeps small singular values accurate to ε‖M‖ instead of √ε‖M‖.
fn dilation(m: &ComplexMatrix) -> ComplexMatrix {
    let (p, q) = (m.rows(), m.cols());
    ComplexMatrix::from_fn(p + q, p + q, |r, c| match (r < p, c < p) {
        (true, false) => m[(r, c - p)],
        (false, true) => m[(c, r - p)].conj(),
        _ => Default::default(),
    })
}

/// Singular values in descending order, `min(rows, cols)` of them.
pub fn singular_values(m: &ComplexMatrix) -> Result<Vec<f64>> {
    let k = m.rows().min(m.cols());
    let eig = herm_eigs(&dilation(m), f64::EPSILON)?;
    Ok(eig.values.iter().rev().take(k).map(|&s| s.max(0.0)).collect())
}

/// Operator (spectral) norm: the largest singular value.
pub fn operator_norm(m: &ComplexMatrix) -> Result<f64> {
    Ok(singular_values(m)?[0])
}

/// Trace norm: the sum of singular values.
pub fn trace_norm(m: &ComplexMatrix) -> Result<f64> {
    Ok(singular_values(m)?.iter().sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn norm_examples() {
        assert!((operator_norm(&ComplexMatrix::identity(3)).unwrap() - 1.0).abs() < 1e-15);
        let m = ComplexMatrix::from_real_rows(&[[0.0, 2.0], [0.0, 0.0]]);
        assert!((operator_norm(&m).unwrap() - 2.0).abs() < 1e-15);
        assert!((trace_norm(&m).unwrap() - 2.0).abs() < 1e-15);
        assert_eq!(operator_norm(&ComplexMatrix::zeros(2, 3)).unwrap(), 0.0);
    }

    #[test]
    fn rectangular_singular_values() {
        // rows are orthogonal with lengths 3 and 5
        let m = ComplexMatrix::from_real_rows(&[[3.0, 0.0, 0.0], [0.0, 3.0, 4.0]]);
        let s = singular_values(&m).unwrap();
        assert_eq!(s.len(), 2);
        assert!((s[0] - 5.0).abs() < 1e-14 && (s[1] - 3.0).abs() < 1e-14);
    }
}
