//! Runs both characterization checks over every enumerated algebra.

use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{enumerate_effect_algebras, CanonicalAlgebra, SizeLimit};
use crate::effectlaw::{table_to_ortho, verify_prop_eff, PropEffRecord};
use crate::error::{Error, Result};
use crate::frobmod::{verify_corollary_with_table, CorollaryRecord};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub n: usize,
    pub algebra: CanonicalAlgebra,
    pub prop_eff: PropEffRecord,
    /// Present for superspecial algebras only.
    pub corollary: Option<CorollaryRecord>,
}

impl SweepRecord {
    /// Number of failed equivalences on this algebra (0, 1 or 2).
    pub fn disagreements(&self) -> usize {
        usize::from(!self.prop_eff.agree)
            + usize::from(self.corollary.as_ref().is_some_and(|c| !c.agree))
    }
}

/// One line of the summary table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SizeSummary {
    pub n: usize,
    pub count: usize,
    #[serde(rename = "modular-count")]
    pub modular_count: usize,
    #[serde(rename = "frobenius-count")]
    pub frobenius_count: usize,
    pub disagreements: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepOutcome {
    pub summaries: Vec<SizeSummary>,
    pub records: Vec<SweepRecord>,
}

impl SweepOutcome {
    pub fn disagreements(&self) -> usize {
        self.summaries.iter().map(|s| s.disagreements).sum()
    }

    pub fn algebras(&self) -> impl Iterator<Item = &CanonicalAlgebra> {
        self.records.iter().map(|r| &r.algebra)
    }
}

fn record(n: usize, algebra: CanonicalAlgebra) -> Result<SweepRecord> {
    let alg = table_to_ortho(&algebra.table)?;
    let prop_eff = verify_prop_eff(&alg);
    let corollary = if prop_eff.superspecial {
        Some(verify_corollary_with_table(&alg, &algebra.table)?)
    } else {
        None
    };
    Ok(SweepRecord {
        n,
        algebra,
        prop_eff,
        corollary,
    })
}

/// Enumerates sizes `1..=max_n` and checks both equivalences on each algebra.
pub fn sweep_verify(max_n: usize, limit: SizeLimit) -> Result<SweepOutcome> {
    limit.check(max_n)?;
    let mut summaries = Vec::new();
    let mut records = Vec::new();
    for n in 1..=max_n {
        let batch: Vec<SweepRecord> = enumerate_effect_algebras(n, limit)?
            .into_par_iter()
            .map(|a| record(n, a))
            .collect::<Result<_>>()?;
        summaries.push(SizeSummary {
            n,
            count: batch.len(),
            modular_count: batch
                .iter()
                .filter(|r| r.algebra.attributes.modular)
                .count(),
            frobenius_count: batch
                .iter()
                .filter(|r| r.algebra.attributes.frobenius)
                .count(),
            disagreements: batch.iter().map(SweepRecord::disagreements).sum(),
        });
        records.extend(batch);
    }
    Ok(SweepOutcome { summaries, records })
}

/// One JSON object per line.
pub fn write_catalog<'a, W: Write>(
    mut out: W,
    algebras: impl IntoIterator<Item = &'a CanonicalAlgebra>,
) -> Result<()> {
    for a in algebras {
        let line = serde_json::to_string(a).map_err(|e| Error::InvalidTable(e.to_string()))?;
        writeln!(out, "{line}").map_err(|e| Error::Precondition(format!("write failed: {e}")))?;
    }
    Ok(())
}
