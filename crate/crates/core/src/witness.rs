//! Witness evaluation: expectation values, detection verdicts and a see-saw
//! search for product states on which a candidate witness is negative.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::choi::{is_completely_positive, ChoiOperator, CpVerdict};
use crate::error::{Error, Result};
use crate::fmath;
use crate::matrix::{basis_vector, c64, kron_vec, normalized, ComplexMatrix};
use crate::numerics::{herm_eigs, Tolerances};
use crate::pmap::MapParams;
use crate::states::{horodecki_state, BipartiteState};

/// Where a witness operator came from.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Provenance {
    Map(MapParams),
    External,
}

/// Hermitian operator on `C^{d1} ⊗ C^{d2}` proposed as an entanglement witness.
#[derive(Debug, Clone)]
pub struct WitnessCandidate {
    pub operator: ComplexMatrix,
    pub d1: usize,
    pub d2: usize,
    pub provenance: Provenance,
}

impl WitnessCandidate {
    pub fn new(operator: ComplexMatrix, d1: usize, d2: usize, tol: &Tolerances) -> Result<Self> {
        if operator.rows() != d1 * d2 || operator.cols() != d1 * d2 {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} witness on C^{d1} ⊗ C^{d2}",
                operator.rows(),
                operator.cols()
            )));
        }
        operator.ensure_hermitian(tol.eps_eig)?;
        Ok(Self {
            operator,
            d1,
            d2,
            provenance: Provenance::External,
        })
    }

    pub fn from_choi(choi: ChoiOperator) -> Self {
        Self {
            operator: choi.matrix,
            d1: choi.dims.0,
            d2: choi.dims.1,
            provenance: Provenance::Map(choi.params),
        }
    }

    pub fn label(&self) -> String {
        match self.provenance {
            Provenance::Map(p) => format!("choi({},{})", p.alpha, p.beta),
            Provenance::External => String::from("external"),
        }
    }

    /// Operator norm (largest eigenvalue modulus).
    pub fn norm(&self, tol: &Tolerances) -> Result<f64> {
        Ok(herm_eigs(&self.operator, tol.eps_eig)?.spectral_radius())
    }

    /// `⟨a⊗b|W|a⊗b⟩`.
    pub fn product_value(&self, a: &[c64], b: &[c64]) -> f64 {
        self.operator.quadratic_form(&kron_vec(a, b)).re
    }
}

/// `Tr(W ρ)`; errors when the imaginary part exceeds `eps_match`.
pub fn expectation(w: &WitnessCandidate, rho: &BipartiteState, tol: &Tolerances) -> Result<f64> {
    if (w.d1, w.d2) != (rho.d1, rho.d2) {
        return Err(Error::DimensionMismatch(format!(
            "witness on {}⊗{} paired with state on {}⊗{}",
            w.d1, w.d2, rho.d1, rho.d2
        )));
    }
    let n = w.operator.rows();
    let mut tr = c64::new(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            tr += w.operator[(i, j)] * rho.matrix[(j, i)];
        }
    }
    if fmath::abs(tr.im) > tol.eps_match {
        return Err(Error::NonRealTrace { imag: tr.im });
    }
    Ok(tr.re)
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DetectionReport {
    pub witness: String,
    pub state: String,
    pub parameter: Option<f64>,
    pub expectation: f64,
    pub detected: bool,
}

/// Detection verdict: `Tr(Wρ) < −eps_psd · ‖W‖`.
pub fn detect(w: &WitnessCandidate, rho: &BipartiteState, tol: &Tolerances) -> Result<DetectionReport> {
    let value = expectation(w, rho, tol)?;
    let threshold = -tol.eps_psd * w.norm(tol)?;
    Ok(DetectionReport {
        witness: w.label(),
        state: rho.label.clone(),
        parameter: rho.parameter,
        expectation: value,
        detected: value < threshold,
    })
}

/// Pointwise detection over Horodecki states `ρ_b` for each `b` in `grid`.
pub fn detection_curve(w: &WitnessCandidate, grid: &[f64], tol: &Tolerances) -> Result<Vec<DetectionReport>> {
    grid.iter().map(|&b| detect(w, &horodecki_state(b)?, tol)).collect()
}

/// Evenly spaced grid of `points` values covering `[0, 1]`.
pub fn unit_grid(points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => alloc::vec![0.0],
        _ => (0..points).map(|k| k as f64 / (points - 1) as f64).collect(),
    }
}

/// Outcome class of a block-positivity search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "SCREAMING_SNAKE_CASE"))]
pub enum BlockPositivityStatus {
    CertifiedNonnegative,
    CounterexampleFound,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SeeSawOptions {
    pub restarts: usize,
    pub seed: u64,
    pub max_iters: usize,
}

impl Default for SeeSawOptions {
    fn default() -> Self {
        Self {
            restarts: 64,
            seed: 0,
            max_iters: 500,
        }
    }
}

/// Smallest diagonal entry of `W`, i.e. the best computational product state.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BasisProductValue {
    pub a_index: usize,
    pub b_index: usize,
    pub value: f64,
}

#[derive(Debug, Clone)]
pub struct BlockPositivityResult {
    pub min_value: f64,
    pub argmin_a: Vec<c64>,
    pub argmin_b: Vec<c64>,
    pub status: BlockPositivityStatus,
    pub best_basis: BasisProductValue,
    pub options: SeeSawOptions,
}

// W contracted with b on the second factor: (W_b)_{ij} = Σ conj(b_k) W_{(i,k),(j,l)} b_l.
fn contract_second(w: &ComplexMatrix, d1: usize, d2: usize, b: &[c64]) -> ComplexMatrix {
    ComplexMatrix::from_fn(d1, d1, |i, j| {
        let mut acc = c64::new(0.0, 0.0);
        for k in 0..d2 {
            for l in 0..d2 {
                acc += b[k].conj() * w[(i * d2 + k, j * d2 + l)] * b[l];
            }
        }
        acc
    })
}

fn contract_first(w: &ComplexMatrix, d1: usize, d2: usize, a: &[c64]) -> ComplexMatrix {
    ComplexMatrix::from_fn(d2, d2, |k, l| {
        let mut acc = c64::new(0.0, 0.0);
        for i in 0..d1 {
            for j in 0..d1 {
                acc += a[i].conj() * w[(i * d2 + k, j * d2 + l)] * a[j];
            }
        }
        acc
    })
}

fn random_unit(rng: &mut ChaCha8Rng, dim: usize) -> Vec<c64> {
    loop {
        let v: Vec<c64> = (0..dim)
            .map(|_| c64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        if let Some(u) = normalized(&v) {
            return u;
        }
    }
}

struct Descent {
    value: f64,
    a: Vec<c64>,
    b: Vec<c64>,
}

fn see_saw(
    w: &WitnessCandidate,
    mut a: Vec<c64>,
    mut b: Vec<c64>,
    max_iters: usize,
    tol: &Tolerances,
) -> Result<Descent> {
    let mut value = w.product_value(&a, &b);
    for _ in 0..max_iters {
        let ea = herm_eigs(&contract_second(&w.operator, w.d1, w.d2, &b), tol.eps_eig)?;
        a = ea.vector(0);
        let eb = herm_eigs(&contract_first(&w.operator, w.d1, w.d2, &a), tol.eps_eig)?;
        b = eb.vector(0);
        let next = eb.min();
        let change = value - next;
        value = next.min(value);
        if fmath::abs(change) < tol.eps_match {
            break;
        }
    }
    Ok(Descent {
        value: w.product_value(&a, &b).min(value),
        a,
        b,
    })
}

/// Minimizes `⟨a⊗b|W|a⊗b⟩` over unit product vectors by alternating
/// smallest-eigenvector updates.
///
/// Starts are every computational product basis state, then `restarts`
/// random product vectors from a ChaCha8 stream seeded with `seed`. The
/// reported minimum is a feasible value, hence an upper bound on the true
/// minimum. `CertifiedNonnegative` additionally requires both contracted
/// forms at the best point to be PSD.
pub fn block_positivity_min(
    w: &WitnessCandidate,
    options: SeeSawOptions,
    tol: &Tolerances,
) -> Result<BlockPositivityResult> {
    let (d1, d2) = (w.d1, w.d2);
    let norm = w.norm(tol)?;
    let floor = -tol.eps_psd * norm;

    let mut best_basis = BasisProductValue {
        a_index: 0,
        b_index: 0,
        value: f64::INFINITY,
    };
    let mut starts = Vec::with_capacity(d1 * d2 + options.restarts);
    for i in 0..d1 {
        for k in 0..d2 {
            let value = w.operator[(i * d2 + k, i * d2 + k)].re;
            if value < best_basis.value {
                best_basis = BasisProductValue {
                    a_index: i,
                    b_index: k,
                    value,
                };
            }
            starts.push((basis_vector(d1, i), basis_vector(d2, k)));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    for _ in 0..options.restarts {
        let a = random_unit(&mut rng, d1);
        let b = random_unit(&mut rng, d2);
        starts.push((a, b));
    }

    let mut best: Option<Descent> = None;
    for (a, b) in starts {
        let start_value = w.product_value(&a, &b);
        let run = see_saw(w, a.clone(), b.clone(), options.max_iters, tol)?;
        let run = if start_value < run.value {
            Descent {
                value: start_value,
                a,
                b,
            }
        } else {
            run
        };
        if best.as_ref().is_none_or(|cur| run.value < cur.value) {
            best = Some(run);
        }
    }
    let best = best.expect("at least one start");

    let status = if best.value < floor {
        BlockPositivityStatus::CounterexampleFound
    } else {
        let wa = herm_eigs(&contract_second(&w.operator, d1, d2, &best.b), tol.eps_eig)?;
        let wb = herm_eigs(&contract_first(&w.operator, d1, d2, &best.a), tol.eps_eig)?;
        if wa.min() >= floor && wb.min() >= floor {
            BlockPositivityStatus::CertifiedNonnegative
        } else {
            BlockPositivityStatus::Inconclusive
        }
    };
    Ok(BlockPositivityResult {
        min_value: best.value,
        argmin_a: best.a,
        argmin_b: best.b,
        status,
        best_basis,
        options,
    })
}

/// Verdict on whether a Choi operator qualifies as a witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "SCREAMING_SNAKE_CASE"))]
pub enum WitnessVerdict {
    /// Not CP and no product counterexample found.
    ValidCandidate,
    /// A product state with negative expectation was found.
    Refuted,
    /// CP (hence detects nothing) or otherwise undecided.
    Inconclusive,
}

#[derive(Debug, Clone)]
pub struct WitnessAudit {
    pub params: MapParams,
    pub cp: CpVerdict,
    pub block: BlockPositivityResult,
    pub verdict: WitnessVerdict,
}

/// Checks both witness conditions for the Choi operator of `Φ_{α,β}`.
pub fn witness_audit(alpha: f64, beta: f64, options: SeeSawOptions, tol: &Tolerances) -> Result<WitnessAudit> {
    let choi = crate::choi::choi_closed_form(alpha, beta);
    let params = choi.params;
    let cp = is_completely_positive(alpha, beta, tol)?;
    let block = block_positivity_min(&WitnessCandidate::from_choi(choi), options, tol)?;
    let verdict = if block.status == BlockPositivityStatus::CounterexampleFound {
        WitnessVerdict::Refuted
    } else if cp.completely_positive {
        WitnessVerdict::Inconclusive
    } else {
        WitnessVerdict::ValidCandidate
    };
    Ok(WitnessAudit {
        params,
        cp,
        block,
        verdict,
    })
}
