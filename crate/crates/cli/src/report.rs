use posmap_core::audit::{AuditRecord, Verdict};
use posmap_core::reproduce::ReproConfig;
use posmap_core::Tolerances;
use serde::Serialize;

use crate::error::CliError;

#[derive(Debug, Default, Serialize)]
pub struct Summary {
    pub confirmed: usize,
    pub refuted: usize,
    pub inapplicable: usize,
}

/// The full reproduction report as written to disk.
#[derive(Debug, Serialize)]
pub struct Report {
    pub config: ReproConfig,
    pub tolerances: Tolerances,
    pub summary: Summary,
    pub records: Vec<AuditRecord>,
}

impl Report {
    pub fn new(config: ReproConfig, tolerances: Tolerances, records: Vec<AuditRecord>) -> Self {
        let mut summary = Summary::default();
        for r in &records {
            match r.verdict {
                Verdict::Confirmed => summary.confirmed += 1,
                Verdict::Refuted => summary.refuted += 1,
                Verdict::Inapplicable => summary.inapplicable += 1,
            }
        }
        Self {
            config,
            tolerances,
            summary,
            records,
        }
    }

    pub fn to_json(&self) -> Result<String, CliError> {
        let mut s = serde_json::to_string_pretty(self).map_err(|e| CliError::Usage(e.to_string()))?;
        s.push('\n');
        Ok(s)
    }
}
