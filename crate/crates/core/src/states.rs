//! Test states on `C² ⊗ C⁴`: the Horodecki PPT family `ρ_b` and an NPT state.

use alloc::format;
use alloc::string::String;

use crate::error::{Error, Result};
use crate::fmath;
use crate::matrix::ComplexMatrix;
use crate::numerics::{is_psd, partial_transpose, realign_trace_norm, Subsystem, Tolerances};

/// Density matrix on `C^{d1} ⊗ C^{d2}`.
#[derive(Debug, Clone)]
pub struct BipartiteState {
    pub matrix: ComplexMatrix,
    pub d1: usize,
    pub d2: usize,
    pub label: String,
    /// Family parameter, e.g. `b` for the Horodecki state.
    pub parameter: Option<f64>,
}

impl BipartiteState {
    /// Validates Hermiticity, unit trace (within `eps_match`) and PSD-ness.
    pub fn new(
        matrix: ComplexMatrix,
        d1: usize,
        d2: usize,
        label: impl Into<String>,
        parameter: Option<f64>,
        tol: &Tolerances,
    ) -> Result<Self> {
        if d1 == 0 || d2 == 0 || matrix.rows() != d1 * d2 || matrix.cols() != d1 * d2 {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix is not a state on C^{d1} ⊗ C^{d2}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        if matrix.ensure_hermitian(tol.eps_eig).is_err() {
            return Err(Error::InvalidState(String::from("matrix is not Hermitian")));
        }
        let tr = matrix.trace();
        if fmath::abs(tr.re - 1.0) > tol.eps_match || fmath::abs(tr.im) > tol.eps_match {
            return Err(Error::InvalidState(format!(
                "trace is {} + {}i, expected 1",
                tr.re, tr.im
            )));
        }
        let v = is_psd(&matrix, tol)?;
        if !v.is_psd {
            return Err(Error::InvalidState(format!(
                "not positive semidefinite (min eigenvalue {:e})",
                v.min_eigenvalue
            )));
        }
        Ok(Self {
            matrix,
            d1,
            d2,
            label: label.into(),
            parameter,
        })
    }
}

/// Horodecki's 2⊗4 family, PPT for every `b ∈ [0, 1]`.
///
/// Each entry is formed with a single division of its exact numerator by
/// `1 + 7b`.
pub fn horodecki_state(b: f64) -> Result<BipartiteState> {
    if !(0.0..=1.0).contains(&b) {
        return Err(Error::ParameterOutOfRange(format!("b must lie in [0, 1], got {b}")));
    }
    let norm = 1.0 + 7.0 * b;
    let p = b / norm;
    let diag_tail = (1.0 + b) / (2.0 * norm);
    let corner = fmath::sqrt(1.0 - b * b) / (2.0 * norm);
    let matrix = ComplexMatrix::from_real_rows(&[
        [p, 0.0, 0.0, 0.0, 0.0, p, 0.0, 0.0],
        [0.0, p, 0.0, 0.0, 0.0, 0.0, p, 0.0],
        [0.0, 0.0, p, 0.0, 0.0, 0.0, 0.0, p],
        [0.0, 0.0, 0.0, p, 0.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0, diag_tail, 0.0, 0.0, corner],
        [p, 0.0, 0.0, 0.0, 0.0, p, 0.0, 0.0],
        [0.0, p, 0.0, 0.0, 0.0, 0.0, p, 0.0],
        [0.0, 0.0, p, 0.0, corner, 0.0, 0.0, diag_tail],
    ]);
    Ok(BipartiteState {
        matrix,
        d1: 2,
        d2: 4,
        label: String::from("horodecki"),
        parameter: Some(b),
    })
}

/// `(|v⟩⟨v| + |1,3⟩⟨1,3|)/3` with `v = |0,0⟩ + |1,1⟩` on `C² ⊗ C⁴`.
pub fn npt_state() -> BipartiteState {
    let t = 1.0 / 3.0;
    let mut m = [[0.0; 8]; 8];
    for (r, c) in [(0, 0), (0, 5), (5, 0), (5, 5), (7, 7)] {
        m[r][c] = t;
    }
    BipartiteState {
        matrix: ComplexMatrix::from_real_rows(&m),
        d1: 2,
        d2: 4,
        label: String::from("npt"),
        parameter: None,
    }
}

/// The maximally mixed state `I/(d1·d2)`.
pub fn maximally_mixed(d1: usize, d2: usize) -> BipartiteState {
    let n = d1 * d2;
    BipartiteState {
        matrix: ComplexMatrix::identity(n).scale(1.0 / n as f64),
        d1,
        d2,
        label: String::from("maximally-mixed"),
        parameter: None,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PptVerdict {
    pub ppt: bool,
    pub min_pt_eigenvalue: f64,
}

/// Peres test with the chosen factor transposed.
pub fn is_ppt_on(rho: &BipartiteState, subsystem: Subsystem, tol: &Tolerances) -> Result<PptVerdict> {
    let pt = partial_transpose(&rho.matrix, rho.d1, rho.d2, subsystem)?;
    let v = is_psd(&pt, tol)?;
    Ok(PptVerdict {
        ppt: v.is_psd,
        min_pt_eigenvalue: v.min_eigenvalue,
    })
}

/// Peres test transposing the first factor; the verdict does not depend on
/// the choice.
pub fn is_ppt(rho: &BipartiteState, tol: &Tolerances) -> Result<PptVerdict> {
    is_ppt_on(rho, Subsystem::First, tol)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RealignmentProbe {
    pub value: f64,
    /// True certifies entanglement; false is inconclusive.
    pub entangled: bool,
}

pub fn realignment_value(rho: &BipartiteState, tol: &Tolerances) -> Result<RealignmentProbe> {
    let value = realign_trace_norm(&rho.matrix, rho.d1, rho.d2)?;
    Ok(RealignmentProbe {
        value,
        entangled: value > 1.0 + tol.eps_match,
    })
}
