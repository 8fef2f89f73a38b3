//! The map family `Φ_{α,β}(A) = α((A + Aᵀ) ⊗ I_n) + β (|ψ₊⟩⟨ψ₊|)^Γ`.
//!
//! Besides evaluating the map, this module carries the block analysis of the
//! `n = 2` output: the `X, Y, Z` split, the contraction `V = X^{-1/2} Y Z^{-1/2}`,
//! the published closed forms for `V`, the characteristic coefficients of
//! `VᵀV` and the published positivity inequalities. The published formulas are
//! evaluated verbatim so they can be compared against the eigensolver; none of
//! them is used to decide positivity.

use alloc::format;
use alloc::string::String;

use crate::error::{Error, Result};
use crate::fmath;
use crate::matrix::{c64, ComplexMatrix};
use crate::numerics::{herm_eigs, is_psd, kron, operator_norm, partial_transpose, psd_sqrt_inv, Subsystem, Tolerances};

/// Parameters `(n, α, β)` of one member of the family.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MapParams {
    pub n: usize,
    pub alpha: f64,
    pub beta: f64,
}

impl MapParams {
    pub fn new(n: usize, alpha: f64, beta: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::BadDimension(format!("map dimension n must be ≥ 2, got {n}")));
        }
        if !alpha.is_finite() || !beta.is_finite() {
            return Err(Error::ParameterOutOfRange(format!(
                "alpha and beta must be finite, got ({alpha}, {beta})"
            )));
        }
        Ok(Self { n, alpha, beta })
    }

    /// The `n = 2` member.
    pub fn qubit(alpha: f64, beta: f64) -> Result<Self> {
        Self::new(2, alpha, beta)
    }
}

/// Real 2×2 input `[[a, b], [c, d]]` with `a, d ≥ 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Input2x2 {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl Input2x2 {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        if !(a >= 0.0 && d >= 0.0) || !b.is_finite() || !c.is_finite() || !a.is_finite() || !d.is_finite() {
            return Err(Error::ParameterOutOfRange(format!(
                "need finite entries with a, d ≥ 0, got a={a}, d={d}"
            )));
        }
        Ok(Self { a, b, c, d })
    }

    pub fn to_matrix(&self) -> ComplexMatrix {
        ComplexMatrix::from_real_rows(&[[self.a, self.b], [self.c, self.d]])
    }
}

/// `|ψ₊⟩⟨ψ₊|` with `|ψ₊⟩ = n^{-1/2} Σ|ii⟩`, an `n² × n²` projector.
///
/// Entries are written as `1/n` directly rather than squared amplitudes so the
/// projector is exact whenever `1/n` is.
pub fn max_entangled_projector(n: usize) -> Result<ComplexMatrix> {
    if n < 2 {
        return Err(Error::BadDimension(format!("projector dimension must be ≥ 2, got {n}")));
    }
    let w = c64::new(1.0 / n as f64, 0.0);
    let mut p = ComplexMatrix::zeros(n * n, n * n);
    for i in 0..n {
        for j in 0..n {
            p[(i * n + i, j * n + j)] = w;
        }
    }
    Ok(p)
}

/// `Φ_{α,β}(A)` for an `n × n` input.
pub fn apply_map(params: &MapParams, input: &ComplexMatrix) -> Result<ComplexMatrix> {
    let n = params.n;
    if input.rows() != n || input.cols() != n {
        return Err(Error::DimensionMismatch(format!(
            "map with n={n} applied to a {}x{} input",
            input.rows(),
            input.cols()
        )));
    }
    let sym = input + &input.transpose();
    let left = kron(&sym, &ComplexMatrix::identity(n)).scale(params.alpha);
    let pt = partial_transpose(&max_entangled_projector(n)?, n, n, Subsystem::Second)?;
    Ok(&left + &pt.scale(params.beta))
}

/// The `n = 2` output written out entrywise.
pub fn closed_form_2x2(alpha: f64, beta: f64, inp: &Input2x2) -> ComplexMatrix {
    let Input2x2 { a, b, c, d } = *inp;
    let off = alpha * (b + c);
    let h = beta / 2.0;
    ComplexMatrix::from_real_rows(&[
        [2.0 * a * alpha + h, 0.0, off, 0.0],
        [0.0, 2.0 * a * alpha, h, off],
        [off, h, 2.0 * d * alpha, 0.0],
        [0.0, off, 0.0, 2.0 * d * alpha + h],
    ])
}

/// Why `V = X^{-1/2} Y Z^{-1/2}` could not be formed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum ContractionAbsence {
    SingularX,
    SingularZ,
    SingularBoth,
}

/// `[[X, Y], [Y†, Z]]` split of a 4×4 output.
#[derive(Debug, Clone)]
pub struct BlockSplit {
    pub x: ComplexMatrix,
    pub y: ComplexMatrix,
    pub z: ComplexMatrix,
    /// `X^{-1/2} Y Z^{-1/2}` when both diagonal blocks are invertible.
    pub v_numeric: core::result::Result<ComplexMatrix, ContractionAbsence>,
}

impl BlockSplit {
    pub fn reassemble(&self) -> ComplexMatrix {
        ComplexMatrix::from_blocks(&self.x, &self.y, &self.y.adjoint(), &self.z).expect("2x2 blocks always fit")
    }
}

/// Splits a Hermitian 4×4 matrix into 2×2 blocks and forms the contraction.
///
/// Fails with [`Error::BlocksNotPsd`] when `X` or `Z` is not PSD, since the
/// block criterion then has nothing to say.
pub fn block_split(out4: &ComplexMatrix, tol: &Tolerances) -> Result<BlockSplit> {
    if out4.rows() != 4 || out4.cols() != 4 {
        return Err(Error::DimensionMismatch(format!(
            "block_split expects 4x4, got {}x{}",
            out4.rows(),
            out4.cols()
        )));
    }
    out4.ensure_hermitian(tol.eps_eig)?;
    let x = out4.block(0, 0, 2, 2);
    let y = out4.block(0, 2, 2, 2);
    let z = out4.block(2, 2, 2, 2);
    let rx = psd_sqrt_inv(&x, tol).map_err(|_| Error::BlocksNotPsd(String::from("X is not PSD")))?;
    let rz = psd_sqrt_inv(&z, tol).map_err(|_| Error::BlocksNotPsd(String::from("Z is not PSD")))?;
    let v_numeric = match (rx.singular, rz.singular) {
        (false, false) => Ok(&(&rx.inv_sqrt * &y) * &rz.inv_sqrt),
        (true, false) => Err(ContractionAbsence::SingularX),
        (false, true) => Err(ContractionAbsence::SingularZ),
        (true, true) => Err(ContractionAbsence::SingularBoth),
    };
    Ok(BlockSplit { x, y, z, v_numeric })
}

fn require_positive_blocks(inp: &Input2x2, alpha: f64, beta: f64) -> Result<()> {
    let Input2x2 { a, d, .. } = *inp;
    let checks = [
        (a > 0.0, "a > 0"),
        (d > 0.0, "d > 0"),
        (alpha > 0.0, "alpha > 0"),
        (4.0 * a * alpha + beta > 0.0, "4aα + β > 0"),
        (4.0 * d * alpha + beta > 0.0, "4dα + β > 0"),
    ];
    match checks.iter().find(|(ok, _)| !ok) {
        Some((_, what)) => Err(Error::SingularBlock(format!("requires {what}"))),
        None => Ok(()),
    }
}

/// The published closed form of `V`:
/// `[[α(b+c)/√(dα(4aα+β)), 0], [β/(4α√(ad)), α(b+c)/√(aα(4dα+β))]]`.
pub fn paper_contraction_entries(inp: &Input2x2, alpha: f64, beta: f64) -> Result<ComplexMatrix> {
    require_positive_blocks(inp, alpha, beta)?;
    let Input2x2 { a, b, c, d } = *inp;
    let s = alpha * (b + c);
    Ok(ComplexMatrix::from_real_rows(&[
        [s / fmath::sqrt(d * alpha * (4.0 * a * alpha + beta)), 0.0],
        [
            beta / (4.0 * alpha * fmath::sqrt(a * d)),
            s / fmath::sqrt(a * alpha * (4.0 * d * alpha + beta)),
        ],
    ]))
}

/// Published characteristic coefficients of `VᵀV` next to the numeric Gram
/// invariants of `V`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CharCoeffs {
    pub k1_paper: f64,
    pub k2_paper: f64,
    /// Larger root of `λ² − k₁λ + k₂/4`; `None` when the roots are complex.
    pub lambda1_paper: Option<f64>,
    pub lambda2_paper: Option<f64>,
    /// `tr(V†V)` from the numeric contraction, when it exists.
    pub gram_trace: Option<f64>,
    /// `det(V†V)` from the numeric contraction, when it exists.
    pub gram_det: Option<f64>,
}

impl CharCoeffs {
    /// Whether the published polynomial `λ² − k₁λ + k₂/4` coincides with the
    /// characteristic polynomial `λ² − tr(V†V)λ + det(V†V)` within `tol`.
    pub fn agrees(&self, tol: f64) -> Option<bool> {
        let (t, d) = (self.gram_trace?, self.gram_det?);
        Some(fmath::abs(self.k1_paper - t) <= tol && fmath::abs(self.k2_paper / 4.0 - d) <= tol)
    }
}

pub fn paper_char_coeffs(inp: &Input2x2, alpha: f64, beta: f64, tol: &Tolerances) -> Result<CharCoeffs> {
    let Input2x2 { a, b, c, d } = *inp;
    if !(a > 0.0 && d > 0.0 && alpha > 0.0 && 4.0 * a * alpha + beta > 0.0) {
        return Err(Error::SingularBlock(String::from(
            "requires a, d, alpha > 0 and 4aα + β > 0",
        )));
    }
    let bc2 = (b + c) * (b + c);
    let k1 = alpha * bc2 / ((4.0 * a * alpha + beta) * d)
        + beta / (4.0 * a * alpha)
        + beta * beta / (16.0 * a * d * alpha * alpha)
        + d / a;
    let k2 = bc2 * (beta + 4.0 * d * alpha) / (a * d * (4.0 * a * alpha + beta));
    let disc = k1 * k1 - k2;
    let (lambda1_paper, lambda2_paper) = if disc >= 0.0 {
        let r = fmath::sqrt(disc);
        (Some(0.5 * (k1 + r)), Some(0.5 * (k1 - r)))
    } else {
        (None, None)
    };

    let out = closed_form_2x2(alpha, beta, inp);
    let gram = block_split(&out, tol).ok().and_then(|s| s.v_numeric.ok()).map(|v| {
        let g = &v.adjoint() * &v;
        let det = g[(0, 0)] * g[(1, 1)] - g[(0, 1)] * g[(1, 0)];
        (g.trace().re, det.re)
    });
    Ok(CharCoeffs {
        k1_paper: k1,
        k2_paper: k2,
        lambda1_paper,
        lambda2_paper,
        gram_trace: gram.map(|g| g.0),
        gram_det: gram.map(|g| g.1),
    })
}

/// The published positivity inequalities evaluated verbatim, alongside the
/// eigensolver's verdict on the actual output.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PositivityConditions {
    /// `2aα ≥ 0 and 4aα + β ≥ 0`.
    pub cond_x: bool,
    /// `2dα ≥ 0 and 4dα + β ≥ 0`.
    pub cond_z: bool,
    /// Aggregate `2α(a+d) + β ≥ 0 and α ≥ 0`.
    pub aggregate: bool,
    /// `4(1 + √(k₁² − k₂) − k₂) ≥ 1`; `None` when `k₁, k₂` are undefined or
    /// the radicand is negative.
    pub printed_contraction: Option<bool>,
    /// `λ₁ ≤ 1` from the published roots.
    pub lambda1_at_most_one: Option<bool>,
    /// `‖V_numeric‖ ≤ 1 + eps_psd`; `None` when `V` does not exist.
    pub numeric_contraction: Option<bool>,
    /// What the published conditions conclude: aggregate and printed contraction.
    pub paper_verdict: Option<bool>,
    /// `is_psd` of the closed-form output.
    pub ground_truth_psd: bool,
}

pub fn paper_positivity_conditions(
    inp: &Input2x2,
    alpha: f64,
    beta: f64,
    tol: &Tolerances,
) -> Result<PositivityConditions> {
    let Input2x2 { a, d, .. } = *inp;
    let cond_x = 2.0 * a * alpha >= 0.0 && 4.0 * a * alpha + beta >= 0.0;
    let cond_z = 2.0 * d * alpha >= 0.0 && 4.0 * d * alpha + beta >= 0.0;
    let aggregate = 2.0 * alpha * (a + d) + beta >= 0.0 && alpha >= 0.0;

    let coeffs = paper_char_coeffs(inp, alpha, beta, tol).ok();
    let printed_contraction = coeffs.and_then(|k| {
        let disc = k.k1_paper * k.k1_paper - k.k2_paper;
        (disc >= 0.0).then(|| 4.0 * (1.0 + fmath::sqrt(disc) - k.k2_paper) >= 1.0)
    });
    let lambda1_at_most_one = coeffs.and_then(|k| k.lambda1_paper).map(|l| l <= 1.0);

    let out = closed_form_2x2(alpha, beta, inp);
    let numeric_contraction = match block_split(&out, tol) {
        Ok(BlockSplit { v_numeric: Ok(v), .. }) => Some(operator_norm(&v)? <= 1.0 + tol.eps_psd),
        _ => None,
    };
    let paper_verdict = printed_contraction.map(|p| p && aggregate);
    let ground_truth_psd = is_psd(&out, tol)?.is_psd;
    Ok(PositivityConditions {
        cond_x,
        cond_z,
        aggregate,
        printed_contraction,
        lambda1_at_most_one,
        numeric_contraction,
        paper_verdict,
        ground_truth_psd,
    })
}

const BISECTION_MAX_ITERS: usize = 200;
// The PSD test is relative to the operator norm, so for large enough α the
// fixed β-term falls below tolerance; the bracket stops growing well before.
const BRACKET_DOUBLINGS: usize = 20;

/// Smallest `α` for which `Φ_{α,−γ}(A)` is PSD, bracketed by bisection.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct AlphaThreshold {
    /// Output is PSD here.
    pub alpha: f64,
    /// Output is not PSD here; `alpha − below ≤ tol` on normal exit.
    pub below: f64,
    pub iterations: usize,
}

/// Bisection for the PSD threshold in `α` at fixed `β = −γ`.
///
/// Requires `A + Aᵀ ⪰ 0`, which makes PSD-ness of the output monotone in `α`.
/// The upper end starts at `max(1, γ)` and doubles until PSD.
pub fn min_alpha_threshold(
    input: &ComplexMatrix,
    gamma: f64,
    alpha_tol: f64,
    tol: &Tolerances,
) -> Result<AlphaThreshold> {
    if input.rows() != 2 || input.cols() != 2 {
        return Err(Error::DimensionMismatch(format!(
            "threshold search needs a 2x2 input, got {}x{}",
            input.rows(),
            input.cols()
        )));
    }
    if gamma <= 0.0 || !gamma.is_finite() || alpha_tol.is_nan() || alpha_tol <= 0.0 {
        return Err(Error::ParameterOutOfRange(format!(
            "need gamma > 0 and tol > 0, got gamma={gamma}, tol={alpha_tol}"
        )));
    }
    let sym = input + &input.transpose();
    let sym_eig = herm_eigs(&sym, tol.eps_eig)?;
    if sym_eig.min() < -tol.eps_psd * sym_eig.spectral_radius() {
        return Err(Error::NotPsd {
            min_eigenvalue: sym_eig.min(),
        });
    }

    let psd_at = |alpha: f64| -> Result<bool> {
        let params = MapParams::qubit(alpha, -gamma)?;
        Ok(is_psd(&apply_map(&params, input)?, tol)?.is_psd)
    };

    let mut lo = 0.0;
    if psd_at(lo)? {
        return Ok(AlphaThreshold {
            alpha: 0.0,
            below: 0.0,
            iterations: 0,
        });
    }
    let mut hi = gamma.max(1.0);
    let mut doublings = 0;
    while !psd_at(hi)? {
        lo = hi;
        hi *= 2.0;
        doublings += 1;
        if doublings > BRACKET_DOUBLINGS {
            return Err(Error::NoUpperBracket { limit: hi });
        }
    }
    let mut iterations = 0;
    while hi - lo > alpha_tol && iterations < BISECTION_MAX_ITERS {
        let mid = 0.5 * (lo + hi);
        if psd_at(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
        iterations += 1;
    }
    Ok(AlphaThreshold {
        alpha: hi,
        below: lo,
        iterations,
    })
}
