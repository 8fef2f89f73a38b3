use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::fmath;
use crate::matrix::{c64, ComplexMatrix};

use super::eigen::herm_eigs;
use super::Tolerances;

/// Outcome of a positive-semidefiniteness test.
#[derive(Debug, Clone)]
pub struct PsdVerdict {
    pub is_psd: bool,
    pub min_eigenvalue: f64,
    /// Unit eigenvector for `min_eigenvalue`; a certificate when `is_psd` is false.
    pub witness_vector: Vec<c64>,
    /// Operator norm the tolerance was scaled by.
    pub norm: f64,
}

/// PSD test: `λ_min ≥ −eps_psd · ‖M‖`.
pub fn is_psd(m: &ComplexMatrix, tol: &Tolerances) -> Result<PsdVerdict> {
    let eig = herm_eigs(m, tol.eps_eig)?;
    let norm = eig.spectral_radius();
    let min_eigenvalue = eig.min();
    Ok(PsdVerdict {
        is_psd: min_eigenvalue >= -tol.eps_psd * norm,
        min_eigenvalue,
        witness_vector: eig.vector(0),
        norm,
    })
}

/// Square root of a PSD matrix together with the inverse square root on its
/// support.
#[derive(Debug, Clone)]
pub struct PsdRoots {
    pub sqrt: ComplexMatrix,
    /// `M^{-1/2}` restricted to eigenvalues above `eps_psd · ‖M‖`; zero elsewhere.
    pub inv_sqrt: ComplexMatrix,
    /// Set when some eigenvalue was dropped from the inverse.
    pub singular: bool,
}

pub fn psd_sqrt_inv(m: &ComplexMatrix, tol: &Tolerances) -> Result<PsdRoots> {
    let eig = herm_eigs(m, tol.eps_eig)?;
    let cutoff = tol.eps_psd * eig.spectral_radius();
    if eig.min() < -cutoff {
        return Err(Error::NotPsd {
            min_eigenvalue: eig.min(),
        });
    }
    let singular = eig.values.iter().any(|&l| l <= cutoff);
    let sqrt = eig.reconstruct_with(|l| fmath::sqrt(l.max(0.0)));
    let inv_sqrt = eig.reconstruct_with(|l| if l > cutoff { 1.0 / fmath::sqrt(l) } else { 0.0 });
    Ok(PsdRoots {
        sqrt,
        inv_sqrt,
        singular,
    })
}

/// Moore–Penrose inverse of a Hermitian matrix; eigenvalues with modulus at
/// most `eps_psd · ‖M‖` are treated as zero.
pub fn pseudo_inverse_hermitian(m: &ComplexMatrix, tol: &Tolerances) -> Result<ComplexMatrix> {
    let eig = herm_eigs(m, tol.eps_eig)?;
    let cutoff = tol.eps_psd * eig.spectral_radius();
    Ok(eig.reconstruct_with(|l| if fmath::abs(l) > cutoff { 1.0 / l } else { 0.0 }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_is_psd() {
        let v = is_psd(&ComplexMatrix::identity(4), &Tolerances::default()).unwrap();
        assert!(v.is_psd);
        assert!((v.min_eigenvalue - 1.0).abs() < 1e-15);
    }

    #[test]
    fn negative_determinant_minor_is_not_psd() {
        // det = −1/324
        let m = ComplexMatrix::from_real_rows(&[[0.75, 1.0 / 18.0], [1.0 / 18.0, 0.0]]);
        let v = is_psd(&m, &Tolerances::default()).unwrap();
        assert!(!v.is_psd);
        let q = m.quadratic_form(&v.witness_vector);
        assert!(q.re < 0.0);
        assert!((crate::matrix::vec_norm(&v.witness_vector) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rank_two_boundary_is_psd() {
        let m = ComplexMatrix::from_real_rows(&[
            [2.0, 0.0, 2.0, 0.0],
            [0.0, 2.0, 0.0, 2.0],
            [2.0, 0.0, 2.0, 0.0],
            [0.0, 2.0, 0.0, 2.0],
        ]);
        let v = is_psd(&m, &Tolerances::default()).unwrap();
        assert!(v.is_psd);
        assert!(v.min_eigenvalue.abs() < 1e-14);
    }

    #[test]
    fn square_roots() {
        let tol = Tolerances::default();
        let r = psd_sqrt_inv(&ComplexMatrix::from_real_diagonal(&[4.0, 9.0]), &tol).unwrap();
        assert!(r.sqrt.max_abs_diff(&ComplexMatrix::from_real_diagonal(&[2.0, 3.0])) < 1e-15);
        assert!(
            r.inv_sqrt
                .max_abs_diff(&ComplexMatrix::from_real_diagonal(&[0.5, 1.0 / 3.0]))
                < 1e-15
        );
        assert!(!r.singular);

        let r = psd_sqrt_inv(&ComplexMatrix::identity(3), &tol).unwrap();
        assert_eq!(r.sqrt, ComplexMatrix::identity(3));
        assert_eq!(r.inv_sqrt, ComplexMatrix::identity(3));

        let r = psd_sqrt_inv(&ComplexMatrix::from_real_diagonal(&[2.0, 0.0]), &tol).unwrap();
        let s = 2f64.sqrt();
        assert!(r.sqrt.max_abs_diff(&ComplexMatrix::from_real_diagonal(&[s, 0.0])) < 1e-15);
        assert!(
            r.inv_sqrt
                .max_abs_diff(&ComplexMatrix::from_real_diagonal(&[1.0 / s, 0.0]))
                < 1e-15
        );
        assert!(r.singular);

        let bad = ComplexMatrix::from_real_diagonal(&[1.0, -1.0]);
        assert!(matches!(psd_sqrt_inv(&bad, &tol), Err(Error::NotPsd { .. })));
    }

    #[test]
    fn pseudo_inverse_of_singular_diagonal() {
        let m = ComplexMatrix::from_real_diagonal(&[0.0, -2.0, 4.0]);
        let p = pseudo_inverse_hermitian(&m, &Tolerances::default()).unwrap();
        assert!(p.max_abs_diff(&ComplexMatrix::from_real_diagonal(&[0.0, -0.5, 0.25])) < 1e-15);
    }
}
