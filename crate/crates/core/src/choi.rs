//! Choi operators `C_Φ = Σ |i⟩⟨j| ⊗ Φ(|i⟩⟨j|)` of the map family.
//!
//! The first tensor factor is the 2-dimensional input index and the second
//! is the 4-dimensional output space, so every Choi operator here lives on
//! `C² ⊗ C⁴`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::fmath;
use crate::matrix::{c64, ComplexMatrix};
use crate::numerics::{herm_eigs, is_psd, operator_norm, pseudo_inverse_hermitian, Tolerances};
use crate::pmap::{apply_map, MapParams};

/// Subsystem dimensions of every Choi operator in the family.
pub const CHOI_DIMS: (usize, usize) = (2, 4);

/// Choi matrix of a map given as a callable on `n × n` matrices.
///
/// Block `(i, j)` of the result is `map(|i⟩⟨j|)`. Every output must be square
/// and all outputs must share one size.
pub fn choi_from_map<F>(map: F, n: usize) -> Result<ComplexMatrix>
where
    F: Fn(&ComplexMatrix) -> Result<ComplexMatrix>,
{
    if n == 0 {
        return Err(Error::BadDimension(String::from("input dimension must be positive")));
    }
    let mut blocks = Vec::with_capacity(n * n);
    let mut m = None;
    for i in 0..n {
        for j in 0..n {
            let mut unit = ComplexMatrix::zeros(n, n);
            unit[(i, j)] = c64::new(1.0, 0.0);
            let out = map(&unit)?;
            let expected = *m.get_or_insert(out.rows());
            if out.rows() != expected || out.cols() != expected {
                return Err(Error::CallableDimensionMismatch {
                    expected,
                    got_rows: out.rows(),
                    got_cols: out.cols(),
                });
            }
            blocks.push(out);
        }
    }
    let m = m.unwrap_or(0);
    Ok(ComplexMatrix::from_fn(n * m, n * m, |r, c| {
        blocks[(r / m) * n + c / m][(r % m, c % m)]
    }))
}

/// Choi operator of `Φ_{α,β}` (n = 2) on `C² ⊗ C⁴`.
#[derive(Debug, Clone)]
pub struct ChoiOperator {
    pub matrix: ComplexMatrix,
    pub dims: (usize, usize),
    pub params: MapParams,
}

/// Entrywise closed form of the 8×8 Choi matrix.
pub fn choi_closed_form(alpha: f64, beta: f64) -> ChoiOperator {
    let t = 2.0 * alpha;
    let h = beta / 2.0;
    let a = alpha;
    let matrix = ComplexMatrix::from_real_rows(&[
        [t + h, 0.0, 0.0, 0.0, h, 0.0, a, 0.0],
        [0.0, t, h, 0.0, 0.0, 0.0, h, a],
        [0.0, h, 0.0, 0.0, a, h, 0.0, 0.0],
        [0.0, 0.0, 0.0, h, 0.0, a, 0.0, h],
        [h, 0.0, a, 0.0, h, 0.0, 0.0, 0.0],
        [0.0, 0.0, h, a, 0.0, 0.0, h, 0.0],
        [a, h, 0.0, 0.0, 0.0, h, t, 0.0],
        [0.0, a, 0.0, h, 0.0, 0.0, 0.0, t + h],
    ]);
    ChoiOperator {
        matrix,
        dims: CHOI_DIMS,
        params: MapParams { n: 2, alpha, beta },
    }
}

/// Choi matrix of `Φ_{α,β}` built from the map definition.
pub fn choi_of_family(params: &MapParams) -> Result<ComplexMatrix> {
    choi_from_map(|unit| apply_map(params, unit), params.n)
}

/// 2×2 principal minor with negative determinant (0-based indices).
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct NegativeMinor {
    pub rows: (usize, usize),
    pub det: f64,
}

/// Finds a 2×2 principal minor with `det < 0`. `preferred` pairs are tried
/// first, then all pairs in lexicographic order.
pub fn negative_principal_minor(m: &ComplexMatrix, preferred: &[(usize, usize)]) -> Option<NegativeMinor> {
    let n = m.rows().min(m.cols());
    let det = |i: usize, j: usize| (m[(i, i)] * m[(j, j)] - m[(i, j)] * m[(j, i)]).re;
    let all = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
    preferred
        .iter()
        .copied()
        .filter(|&(i, j)| i < n && j < n && i != j)
        .chain(all)
        .map(|(i, j)| NegativeMinor {
            rows: (i, j),
            det: det(i, j),
        })
        .find(|minor| minor.det < 0.0)
}

/// Evidence that a Choi matrix is not PSD.
#[derive(Debug, Clone)]
pub struct CpCertificate {
    /// Unit vector with `⟨v|C|v⟩ < 0`.
    pub vector: Vec<c64>,
    pub quadratic_form: f64,
    pub minor: Option<NegativeMinor>,
}

#[derive(Debug, Clone)]
pub struct CpVerdict {
    pub completely_positive: bool,
    pub min_eigenvalue: f64,
    pub certificate: Option<CpCertificate>,
}

// Minors read off the closed form: rows {1,2} give det −β²/4 and rows {2,4}
// give det −α².
const STRUCTURAL_MINORS: [(usize, usize); 2] = [(1, 2), (2, 4)];

/// Complete positivity via PSD-ness of the Choi matrix.
pub fn is_completely_positive(alpha: f64, beta: f64, tol: &Tolerances) -> Result<CpVerdict> {
    choi_cp_verdict(&choi_closed_form(alpha, beta).matrix, tol)
}

/// CP verdict for an arbitrary Choi matrix.
pub fn choi_cp_verdict(choi: &ComplexMatrix, tol: &Tolerances) -> Result<CpVerdict> {
    let v = is_psd(choi, tol)?;
    let certificate = (!v.is_psd).then(|| CpCertificate {
        quadratic_form: choi.quadratic_form(&v.witness_vector).re,
        vector: v.witness_vector.clone(),
        minor: negative_principal_minor(choi, &STRUCTURAL_MINORS),
    });
    Ok(CpVerdict {
        completely_positive: v.is_psd,
        min_eigenvalue: v.min_eigenvalue,
        certificate,
    })
}

/// `[[P, Q], [Q†, R]]` split of an 8×8 Choi matrix into 4×4 blocks.
#[derive(Debug, Clone)]
pub struct ChoiBlocks {
    pub p: ComplexMatrix,
    pub q: ComplexMatrix,
    pub r: ComplexMatrix,
}

impl ChoiBlocks {
    pub fn split(c: &ComplexMatrix) -> Result<Self> {
        if c.rows() != 8 || c.cols() != 8 {
            return Err(Error::DimensionMismatch(format!(
                "Choi block split expects 8x8, got {}x{}",
                c.rows(),
                c.cols()
            )));
        }
        Ok(Self {
            p: c.block(0, 0, 4, 4),
            q: c.block(0, 4, 4, 4),
            r: c.block(4, 4, 4, 4),
        })
    }

    pub fn reassemble(&self) -> ComplexMatrix {
        ComplexMatrix::from_blocks(&self.p, &self.q, &self.q.adjoint(), &self.r).expect("4x4 blocks always fit")
    }
}

/// Generalized Schur-complement evaluation of `[[P, Q], [Q†, R]] ⪰ 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SchurEvaluation {
    /// `R ⪰ 0`.
    pub r_psd: bool,
    /// `(I − R R⁺) Q† = 0`.
    pub range_condition: bool,
    /// `P − Q R⁺ Q† ⪰ 0`.
    pub complement_psd: bool,
    /// Conjunction of the three clauses.
    pub psd: bool,
    /// `P − Q R⁻¹ Q† ⪰ 0` with the ordinary inverse; `None` when `R` is singular.
    pub strict_complement_psd: Option<bool>,
}

pub fn schur_evaluation(blocks: &ChoiBlocks, tol: &Tolerances) -> Result<SchurEvaluation> {
    let r_eig = herm_eigs(&blocks.r, tol.eps_eig)?;
    let r_norm = r_eig.spectral_radius();
    let r_psd = r_eig.min() >= -tol.eps_psd * r_norm;

    let r_pinv = pseudo_inverse_hermitian(&blocks.r, tol)?;
    let qh = blocks.q.adjoint();
    let proj = &ComplexMatrix::identity(4) - &(&blocks.r * &r_pinv);
    let leak = operator_norm(&(&proj * &qh))?;
    let scale = blocks.p.frobenius_norm().max(blocks.q.frobenius_norm()).max(r_norm);
    let range_condition = leak <= tol.eps_psd * scale.max(f64::MIN_POSITIVE);

    let complement = &blocks.p - &(&(&blocks.q * &r_pinv) * &qh);
    let complement_psd = is_psd(&complement, tol)?.is_psd;

    let invertible = r_eig.values.iter().all(|&l| fmath::abs(l) > tol.eps_psd * r_norm);
    let strict_complement_psd = if invertible { Some(complement_psd) } else { None };

    Ok(SchurEvaluation {
        r_psd,
        range_condition,
        complement_psd,
        psd: r_psd && range_condition && complement_psd,
        strict_complement_psd,
    })
}

/// Blocks of the closed-form Choi matrix together with their Schur evaluation.
pub fn choi_blocks(choi: &ChoiOperator, tol: &Tolerances) -> Result<(ChoiBlocks, SchurEvaluation)> {
    let blocks = ChoiBlocks::split(&choi.matrix)?;
    let eval = schur_evaluation(&blocks, tol)?;
    Ok((blocks, eval))
}

/// Published regions where each Schur clause is claimed to hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PrintedSchurRegions {
    /// `β = 0 and α ≥ 0`.
    pub p_psd: bool,
    /// `β = 0 and α ≥ 0`.
    pub r_psd: bool,
    /// `(α = 0, β ≠ 0)` or `(α > 0, 4α + β < 0)` or `(α > 0, 3α + 2β ≥ 0, β ≠ 0)`.
    pub complement_psd: bool,
}

pub fn printed_schur_regions(alpha: f64, beta: f64) -> PrintedSchurRegions {
    let diag = beta == 0.0 && alpha >= 0.0;
    let complement_psd = (alpha == 0.0 && beta != 0.0)
        || (alpha > 0.0 && 4.0 * alpha + beta < 0.0)
        || (alpha > 0.0 && 3.0 * alpha + 2.0 * beta >= 0.0 && beta != 0.0);
    PrintedSchurRegions {
        p_psd: diag,
        r_psd: diag,
        complement_psd,
    }
}

/// Published eigenvalue formulas for `C_{Φ_{α,−γ}}`.
///
/// `mu_1_4` are the four square-root-of-`4α²+γ²` expressions. The remaining
/// four share the inner radical `√(16α² + 4α²γ² + γ⁴)`; `mu_5_8_printed` uses
/// it as printed and `mu_5_8_quartic` reads the first term as `16α⁴`. An entry
/// is `None` when its outer radicand is negative.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct AnalyticSpectrum {
    pub mu_1_4: [f64; 4],
    pub mu_5_8_printed: [Option<f64>; 4],
    pub mu_5_8_quartic: [Option<f64>; 4],
}

pub fn analytic_choi_eigs(alpha: f64, gamma: f64) -> AnalyticSpectrum {
    let root = fmath::sqrt(4.0 * alpha * alpha + gamma * gamma);
    let mu_1_4 = [
        (-gamma + root) / 2.0,
        (-gamma - root) / 2.0,
        (4.0 * alpha - gamma + root) / 2.0,
        (4.0 * alpha - gamma - root) / 2.0,
    ];
    let a2 = alpha * alpha;
    let g2 = gamma * gamma;
    let outer = |inner_first: f64| -> [Option<f64>; 4] {
        let inner = fmath::sqrt(inner_first + 4.0 * a2 * g2 + g2 * g2);
        let plus = (4.0 * a2 + g2 + inner) / 2.0;
        let minus = (4.0 * a2 + g2 - inner) / 2.0;
        let r = |x: f64| (x >= 0.0).then(|| fmath::sqrt(x));
        [
            r(plus).map(|s| alpha + s),
            r(minus).map(|s| alpha + s),
            r(plus).map(|s| alpha - s),
            r(minus).map(|s| alpha - s),
        ]
    };
    AnalyticSpectrum {
        mu_1_4,
        mu_5_8_printed: outer(16.0 * a2),
        mu_5_8_quartic: outer(16.0 * a2 * a2),
    }
}

/// Analytic formulas compared with the eigensolver at one `(α, γ)`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SpectrumAudit {
    pub alpha: f64,
    pub gamma: f64,
    /// Ascending eigenvalues of `C_{Φ_{α,−γ}}`.
    pub numeric: Vec<f64>,
    pub analytic: AnalyticSpectrum,
    /// `|μ_k − λ|` for μ₁..μ₄ against distinct numeric eigenvalues.
    pub mu_1_4_residuals: [f64; 4],
    /// Largest deviation of the full sorted multiset under the printed reading;
    /// `None` if a printed eigenvalue is not real.
    pub printed_max_deviation: Option<f64>,
    /// Same under the `16α⁴` reading.
    pub quartic_max_deviation: Option<f64>,
}

impl SpectrumAudit {
    pub fn mu_1_4_max_residual(&self) -> f64 {
        self.mu_1_4_residuals.iter().copied().fold(0.0, f64::max)
    }
}

/// Greedy nearest-unused assignment of `targets` to `pool`.
fn match_residuals(targets: &[f64], pool: &[f64]) -> Vec<f64> {
    let mut used = alloc::vec![false; pool.len()];
    targets
        .iter()
        .map(|&t| {
            let (k, d) = pool
                .iter()
                .enumerate()
                .filter(|(k, _)| !used[*k])
                .map(|(k, &p)| (k, fmath::abs(p - t)))
                .min_by(|a, b| a.1.total_cmp(&b.1))
                .expect("pool larger than target set");
            used[k] = true;
            d
        })
        .collect()
}

fn sorted_deviation(first: &[f64; 4], rest: &[Option<f64>; 4], numeric: &[f64]) -> Option<f64> {
    let mut all: Vec<f64> = first.to_vec();
    for x in rest {
        all.push((*x)?);
    }
    all.sort_by(f64::total_cmp);
    Some(
        all.iter()
            .zip(numeric)
            .map(|(a, b)| fmath::abs(a - b))
            .fold(0.0, f64::max),
    )
}

pub fn audit_analytic_spectrum(alpha: f64, gamma: f64, tol: &Tolerances) -> Result<SpectrumAudit> {
    let choi = choi_closed_form(alpha, -gamma);
    let numeric = herm_eigs(&choi.matrix, tol.eps_eig)?.values;
    let analytic = analytic_choi_eigs(alpha, gamma);
    let res = match_residuals(&analytic.mu_1_4, &numeric);
    Ok(SpectrumAudit {
        alpha,
        gamma,
        mu_1_4_residuals: [res[0], res[1], res[2], res[3]],
        printed_max_deviation: sorted_deviation(&analytic.mu_1_4, &analytic.mu_5_8_printed, &numeric),
        quartic_max_deviation: sorted_deviation(&analytic.mu_1_4, &analytic.mu_5_8_quartic, &numeric),
        numeric,
        analytic,
    })
}
