use logeuler_core::diagnostics::RunRecord;
use logeuler_core::dynamics::{gronwall_report, GronwallReport};
use serde::Serialize;

use crate::error::CliError;

#[derive(Debug, Clone, Serialize)]
pub struct RecordSummary {
    pub rows: usize,
    pub t_final: f64,
    pub l1_drift: f64,
    pub l2_drift: f64,
    pub linf_drift: f64,
    /// Worst `‖ω‖₂² / (‖ω‖₁‖ω‖∞)` over rows; at most 1.
    pub interpolation_ratio: f64,
    pub empirical_c0: f64,
    pub max_supp_r: f64,
    pub max_dphi: f64,
    pub gronwall: Option<GronwallReport>,
}

/// Summary of a persisted record; the Gronwall table needs `G`.
pub fn summarize(record: &RunRecord, g: Option<f64>) -> Result<RecordSummary, CliError> {
    let (Some(first), Some(last)) = (record.rows.first(), record.rows.last()) else {
        return Err(CliError::Validation("record has no rows".into()));
    };
    let drift = |a: f64, b: f64| if a > 0.0 { b / a - 1.0 } else { 0.0 };
    let interpolation_ratio = record
        .rows
        .iter()
        .filter(|r| r.l1 * r.linf > 0.0)
        .map(|r| r.l2 * r.l2 / (r.l1 * r.linf))
        .fold(0.0, f64::max);
    let gronwall = match g {
        Some(g) => Some(gronwall_report(record, g).map_err(|e| CliError::Validation(e.to_string()))?),
        None => None,
    };
    Ok(RecordSummary {
        rows: record.rows.len(),
        t_final: last.t,
        l1_drift: drift(first.l1, last.l1),
        l2_drift: drift(first.l2, last.l2),
        linf_drift: drift(first.linf, last.linf),
        interpolation_ratio,
        empirical_c0: record.empirical_c0().last().copied().unwrap_or(0.0),
        max_supp_r: record.rows.iter().map(|r| r.supp_r).fold(0.0, f64::max),
        max_dphi: record
            .rows
            .iter()
            .flat_map(|r| r.dphi.iter().copied())
            .fold(0.0, f64::max),
        gronwall,
    })
}
