//! Cartesian parameter sweeps over a base scenario.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::config::Scenario;
use crate::error::CliError;
use crate::output::{create_dir, write_json};
use crate::parallel::map_isolated;
use crate::scenario::execute_scenario;

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    /// A complete scenario table.
    pub base: toml::Table,
    /// Dotted keys into `base` (e.g. `"data.A"`) and the values to try.
    pub parameters: BTreeMap<String, Vec<toml::Value>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointSummary {
    pub final_t: f64,
    pub rows: usize,
    pub l2_drift: f64,
    pub linf_drift: f64,
    pub max_dphi: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepPoint {
    pub index: usize,
    pub dir: String,
    pub params: BTreeMap<String, serde_json::Value>,
    pub status: &'static str,
    pub error: Option<String>,
    pub summary: Option<PointSummary>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepIndex {
    pub points: Vec<SweepPoint>,
    pub failures: usize,
}

fn set_dotted(table: &mut toml::Table, key: &str, value: toml::Value) -> Result<(), CliError> {
    let mut parts: Vec<&str> = key.split('.').collect();
    let last = parts.pop().filter(|s| !s.is_empty()).ok_or_else(|| CliError::Validation(format!("bad key {key:?}")))?;
    let mut cur = table;
    for p in parts {
        cur = cur
            .entry(p.to_string())
            .or_insert_with(|| toml::Value::Table(toml::Table::new()))
            .as_table_mut()
            .ok_or_else(|| CliError::Validation(format!("{key}: {p} is not a table")))?;
    }
    cur.insert(last.to_string(), value);
    Ok(())
}

/// Every combination, last key varying fastest.
pub fn expand(cfg: &SweepConfig) -> Vec<BTreeMap<String, toml::Value>> {
    let mut points = vec![BTreeMap::new()];
    for (key, values) in &cfg.parameters {
        let mut next = Vec::with_capacity(points.len() * values.len());
        for p in &points {
            for v in values {
                let mut q = p.clone();
                q.insert(key.clone(), v.clone());
                next.push(q);
            }
        }
        points = next;
    }
    points
}

pub fn cmd_sweep(cfg: &SweepConfig, base: &Path, out: &Path) -> Result<SweepIndex, CliError> {
    if cfg.parameters.values().any(|v| v.is_empty()) {
        return Err(CliError::Validation("every sweep parameter needs at least one value".into()));
    }
    create_dir(out)?;
    let points = expand(cfg);
    let results = map_isolated(&points, |i, params| -> Result<PointSummary, CliError> {
        let mut table = cfg.base.clone();
        for (k, v) in params {
            set_dotted(&mut table, k, v.clone())?;
        }
        let text = toml::to_string(&table).map_err(|e| CliError::Validation(e.to_string()))?;
        let mut s = Scenario::from_toml(&text, Path::new("<sweep>"))?;
        s.name = format!("{}_{i:03}", s.name);
        let record = execute_scenario(&s, base, &out.join(format!("point_{i:03}")))?;
        let first = &record.rows[0];
        let last = record.rows.last().unwrap();
        Ok(PointSummary {
            final_t: last.t,
            rows: record.rows.len(),
            l2_drift: last.l2 / first.l2 - 1.0,
            linf_drift: last.linf / first.linf - 1.0,
            max_dphi: record
                .rows
                .iter()
                .flat_map(|r| r.dphi.iter().copied())
                .fold(0.0, f64::max),
        })
    });
    let mut index = SweepIndex {
        points: Vec::new(),
        failures: 0,
    };
    for (i, (params, r)) in points.iter().zip(results).enumerate() {
        let params = params
            .iter()
            .map(|(k, v)| (k.clone(), serde_json::to_value(v).unwrap_or(serde_json::Value::Null)))
            .collect();
        let (status, error, summary) = match r {
            Ok(Ok(s)) => ("ok", None, Some(s)),
            Ok(Err(e)) => ("failed", Some(e.to_string()), None),
            Err(panic) => ("failed", Some(format!("panic: {panic}")), None),
        };
        if status != "ok" {
            index.failures += 1;
        }
        index.points.push(SweepPoint {
            index: i,
            dir: format!("point_{i:03}"),
            params,
            status,
            error,
            summary,
        });
    }
    write_json(&out.join("index.json"), &index)?;
    Ok(index)
}
