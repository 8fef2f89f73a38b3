//! Claim-by-claim audit records.

use alloc::string::String;
use alloc::vec::Vec;

use crate::choi::NegativeMinor;
use crate::matrix::c64;
use crate::witness::BasisProductValue;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "SCREAMING_SNAKE_CASE"))]
pub enum Verdict {
    Confirmed,
    Refuted,
    Inapplicable,
}

/// Residuals of an analytic formula at one parameter point.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ResidualPoint {
    pub alpha: f64,
    pub gamma: f64,
    /// `None` when the formula is not real at this point.
    pub residual: Option<f64>,
}

/// Supporting data attached to a record.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "kind", rename_all = "snake_case"))]
pub enum Certificate {
    /// Unit vector with a negative quadratic form.
    NegativeVector { vector: Vec<c64>, quadratic_form: f64 },
    /// 2×2 principal minor with negative determinant.
    PrincipalMinor(NegativeMinor),
    /// Product vector `a ⊗ b` with a negative witness expectation.
    ProductState {
        a: Vec<c64>,
        b: Vec<c64>,
        value: f64,
        best_basis: BasisProductValue,
    },
    /// Bisection bracket of a PSD threshold.
    ThresholdBracket {
        alpha_psd: f64,
        alpha_not_psd: f64,
        paper_alpha: f64,
        min_eigenvalue_at_paper_alpha: f64,
    },
    /// Entries where a printed matrix differs from the computed one.
    EntryMismatch { entries: Vec<EntryDiff> },
    /// Per-point residuals of an analytic formula.
    Residuals { points: Vec<ResidualPoint> },
    /// Two quantities that should coincide but do not.
    Pair { expected: f64, computed: f64 },
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EntryDiff {
    pub row: usize,
    pub col: usize,
    pub printed: f64,
    pub computed: f64,
}

/// One audited claim.
///
/// A `Refuted` record always carries a certificate; the constructors enforce it.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct AuditRecord {
    pub claim_id: String,
    pub paper_location: String,
    pub paper_value: String,
    pub computed_value: String,
    pub verdict: Verdict,
    pub certificate: Option<Certificate>,
}

impl AuditRecord {
    fn build(
        claim_id: &str,
        location: &str,
        paper_value: String,
        computed_value: String,
        verdict: Verdict,
        certificate: Option<Certificate>,
    ) -> Self {
        Self {
            claim_id: claim_id.into(),
            paper_location: location.into(),
            paper_value,
            computed_value,
            verdict,
            certificate,
        }
    }

    pub fn confirmed(
        claim_id: &str,
        location: &str,
        paper_value: impl Into<String>,
        computed_value: impl Into<String>,
    ) -> Self {
        Self::build(
            claim_id,
            location,
            paper_value.into(),
            computed_value.into(),
            Verdict::Confirmed,
            None,
        )
    }

    pub fn refuted(
        claim_id: &str,
        location: &str,
        paper_value: impl Into<String>,
        computed_value: impl Into<String>,
        certificate: Certificate,
    ) -> Self {
        Self::build(
            claim_id,
            location,
            paper_value.into(),
            computed_value.into(),
            Verdict::Refuted,
            Some(certificate),
        )
    }

    pub fn inapplicable(
        claim_id: &str,
        location: &str,
        paper_value: impl Into<String>,
        computed_value: impl Into<String>,
        certificate: Option<Certificate>,
    ) -> Self {
        Self::build(
            claim_id,
            location,
            paper_value.into(),
            computed_value.into(),
            Verdict::Inapplicable,
            certificate,
        )
    }

    /// Attaches supporting data to a confirmed or inapplicable record.
    pub fn with_certificate(mut self, certificate: Certificate) -> Self {
        self.certificate = Some(certificate);
        self
    }
}
