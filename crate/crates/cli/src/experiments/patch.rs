//! Interaction of separated blobs.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use logeuler_core::diagnostics::{format_float, interaction_decay, InteractionOptions, InteractionReport};
use logeuler_core::dynamics::Solver;
use logeuler_core::RegKind;
use serde::{Deserialize, Serialize};

use crate::config::{regularization, DataSpec, GridSpec, TimeSpec};
use crate::error::CliError;
use crate::output::{create_dir, write_json, write_text};

/// Geometric separations `first · ratio^i`, `i < count`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Schedule {
    pub first: f64,
    #[serde(default = "two")]
    pub ratio: f64,
    pub count: usize,
}

fn two() -> f64 {
    2.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PatchConfig {
    pub name: String,
    pub grid: GridSpec,
    pub kind: RegKind,
    pub gamma: f64,
    /// The observed blob `f`, centred at the origin.
    pub blob: DataSpec,
    /// The remaining blobs; defaults to copies of `blob`.
    #[serde(default)]
    pub other: Option<DataSpec>,
    /// Total number of blobs, 1 to 4.
    #[serde(default = "two_blobs")]
    pub blobs: usize,
    #[serde(default)]
    pub separations: Option<Vec<f64>>,
    #[serde(default)]
    pub schedule: Option<Schedule>,
    pub horizon: f64,
    #[serde(default)]
    pub time: TimeSpec,
    #[serde(default = "one_step")]
    pub record_every: usize,
    #[serde(default)]
    pub output: Option<PathBuf>,
}

fn two_blobs() -> usize {
    2
}

fn one_step() -> usize {
    1
}

impl PatchConfig {
    pub fn separations(&self) -> Result<Vec<f64>, CliError> {
        let list = match (&self.separations, &self.schedule) {
            (Some(s), None) => s.clone(),
            (None, Some(g)) => (0..g.count).map(|i| g.first * g.ratio.powi(i as i32)).collect(),
            (None, None) => return Err(CliError::Validation("give separations or schedule".into())),
            (Some(_), Some(_)) => {
                return Err(CliError::Validation("give separations or schedule, not both".into()))
            }
        };
        if list.is_empty() || list.iter().any(|r| !(*r > 0.0)) {
            return Err(CliError::Validation("separations must be positive".into()));
        }
        Ok(list)
    }
}

pub fn cmd_patch(cfg: &PatchConfig, base: &Path, out: Option<&Path>) -> Result<InteractionReport, CliError> {
    if !(1..=4).contains(&cfg.blobs) {
        return Err(CliError::Validation(format!("blobs = {} must be between 1 and 4", cfg.blobs)));
    }
    if !(cfg.horizon > 0.0) {
        return Err(CliError::Validation("horizon must be positive".into()));
    }
    let grid = cfg.grid.build()?;
    let reg = regularization(cfg.kind, cfg.gamma)?;
    let solver = Solver::new(grid, reg, cfg.time.policy()?);
    let f = cfg.blob.build(&grid, base)?;
    let g = cfg.other.as_ref().unwrap_or(&cfg.blob).build(&grid, base)?;
    let others = vec![g; cfg.blobs - 1];
    let options = InteractionOptions {
        horizon: cfg.horizon,
        separations: cfg.separations()?,
        record_every: cfg.record_every,
    };
    let report = interaction_decay(&solver, &f, &others, &options)?;
    if let Some(dir) = out {
        create_dir(dir)?;
        write_json(&dir.join("patch.json"), &report)?;
        write_text(&dir.join("decay.csv"), &decay_csv(&report))?;
    }
    Ok(report)
}

pub fn decay_csv(r: &InteractionReport) -> String {
    let mut out = String::from("R,l2_diff,h2_diff\n");
    for i in 0..r.separations.len() {
        let _ = writeln!(
            out,
            "{},{},{}",
            format_float(r.separations[i]),
            format_float(r.l2_diff[i]),
            format_float(r.h2_diff[i])
        );
    }
    out
}
