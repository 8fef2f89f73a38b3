//! Spectral primitives shared by every other module.
//!
//! All results here are treated as ground truth by the map, Choi and witness
//! code, so each primitive carries an explicit accuracy contract and a test
//! against an independent construction.

mod eigen;
mod norms;
mod psd;
mod tensor;

pub use eigen::{herm_eigs, HermEigen};
pub use norms::{operator_norm, singular_values, trace_norm};
pub use psd::{is_psd, psd_sqrt_inv, pseudo_inverse_hermitian, PsdRoots, PsdVerdict};
pub use tensor::{kron, partial_transpose, realign, realign_trace_norm, Subsystem};

/// Numeric tolerances used throughout the crate.
///
/// `eps_psd` is relative to the operator norm of the matrix under test,
/// `eps_eig` bounds eigen-residuals relative to the norm, and `eps_match`
/// is the absolute entrywise tolerance for golden comparisons.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Tolerances {
    pub eps_psd: f64,
    pub eps_eig: f64,
    pub eps_match: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            eps_psd: 1e-9,
            eps_eig: 1e-10,
            eps_match: 1e-12,
        }
    }
}

impl Tolerances {
    /// Returns `None` unless every tolerance is strictly positive and finite.
    pub fn new(eps_psd: f64, eps_eig: f64, eps_match: f64) -> Option<Self> {
        let ok = |x: f64| x.is_finite() && x > 0.0;
        (ok(eps_psd) && ok(eps_eig) && ok(eps_match)).then_some(Self {
            eps_psd,
            eps_eig,
            eps_match,
        })
    }
}
