//! Large Lagrangian deformation driven by the dyadic families `g_A`.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use logeuler_core::diagnostics::{format_float, RunRecord};
use logeuler_core::dynamics::{gronwall_report, GronwallReport};
use logeuler_core::initial_data::{functional_g, make_ga, GaSpec, GaVariant};
use logeuler_core::{Gamma, RegKind};
use serde::{Deserialize, Serialize};

use super::{dyadic_coords, lattice_seeds};
use crate::config::{DataSpec, GridSpec, ParityDecl, Scenario, TimeSpec};
use crate::error::CliError;
use crate::output::{create_dir, write_json, write_text};
use crate::parallel::map_isolated;
use crate::scenario::{execute_scenario, prepare, run_prepared};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LldConfig {
    pub name: String,
    pub grid: GridSpec,
    #[serde(default = "log_laplacian")]
    pub kind: RegKind,
    pub gamma: f64,
    #[serde(default = "section3")]
    pub variant: GaVariant,
    #[serde(default = "quarter")]
    pub sigma: f64,
    pub a_values: Vec<f64>,
    pub horizon: f64,
    #[serde(default)]
    pub time: TimeSpec,
    /// Defaults to the origin plus a dyadic first-quadrant lattice.
    #[serde(default)]
    pub seeds: Option<Vec<[f64; 2]>>,
    #[serde(default = "one")]
    pub record_every: u64,
    #[serde(default)]
    pub output: Option<PathBuf>,
}

fn log_laplacian() -> RegKind {
    RegKind::LogLaplacian
}

fn section3() -> GaVariant {
    GaVariant::Section3
}

fn quarter() -> f64 {
    0.25
}

fn one() -> u64 {
    1
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LldEntry {
    #[serde(rename = "A")]
    pub a: f64,
    pub levels: Vec<i64>,
    pub amplitude: f64,
    #[serde(rename = "G")]
    pub g_functional: f64,
    pub lambda0: f64,
    /// `max_i ‖Dφ(x_i, T)‖` at the horizon.
    pub max_dphi_at_t: f64,
    /// `max_{τ ≤ T} max_i ‖Dφ(x_i, τ)‖`.
    pub max_dphi: f64,
    pub c_emp: f64,
    /// Whether `lhs ≤ rhs(c_emp)` holds at every recorded time.
    pub gronwall_holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LldReport {
    pub t: f64,
    pub entries: Vec<LldEntry>,
    /// `max_dphi_at_t` strictly increasing in `A`.
    pub monotone_in_a: bool,
}

pub struct LldRun {
    pub entry: LldEntry,
    pub record: RunRecord,
    pub gronwall: GronwallReport,
}

impl LldConfig {
    pub fn scenario(&self, a: f64) -> Result<Scenario, CliError> {
        let grid = self.grid.build()?;
        let seeds = self.seeds.clone().unwrap_or_else(|| {
            lattice_seeds(&dyadic_coords(&grid, 8.0 * grid.spacing()), true)
        });
        let mut spec = GaSpec::new(Gamma::new(self.gamma)?, a, self.variant);
        spec.sigma = self.sigma;
        Ok(Scenario {
            name: format!("{}_A{}", self.name, format_float(a)),
            grid: self.grid,
            kind: self.kind,
            gamma: self.gamma,
            data: DataSpec::GA(spec),
            horizon: self.horizon,
            time: self.time,
            seeds,
            snapshot_every: 0,
            record_every: self.record_every,
            parity: Some(ParityDecl::OddOdd),
            output: None,
        })
    }
}

/// Runs one `g_A` scenario per `A` (concurrently) and builds the Gronwall
/// tables. With `out`, each run is persisted under `out/A_<A>/`.
pub fn cmd_lld(cfg: &LldConfig, base: &Path, out: Option<&Path>) -> Result<(LldReport, Vec<LldRun>), CliError> {
    if cfg.a_values.is_empty() {
        return Err(CliError::Validation("a_values is empty".into()));
    }
    let mut a_values = cfg.a_values.clone();
    a_values.sort_by(f64::total_cmp);
    a_values.dedup();
    let grid = cfg.grid.build()?;
    let gamma = Gamma::new(cfg.gamma)?;
    // Validate every point before any compute.
    let mut prepared = Vec::new();
    for &a in &a_values {
        let s = cfg.scenario(a)?;
        let DataSpec::GA(spec) = &s.data else { unreachable!() };
        let levels = spec.levels(&grid)?;
        let p = prepare(&s, base)?;
        prepared.push((a, s, levels));
        drop(p);
    }
    let results = map_isolated(&prepared, |_, (a, s, levels)| -> Result<LldRun, CliError> {
        let record = match out {
            Some(dir) => execute_scenario(s, base, &dir.join(format!("A_{}", format_float(*a))))?,
            None => {
                let p = prepare(s, base)?;
                run_prepared(s, &p, None)?
            }
        };
        let DataSpec::GA(spec) = &s.data else { unreachable!() };
        let g_field = make_ga(spec, &grid)?;
        let g_functional = functional_g(&g_field, gamma)?;
        let gronwall = gronwall_report(&record, g_functional)?;
        let last = record.rows.last().expect("at least one row");
        let holds = gronwall
            .lhs
            .iter()
            .zip(&gronwall.rhs_at_c_emp)
            .all(|(l, r)| *l <= r * (1.0 + 1e-12));
        let entry = LldEntry {
            a: *a,
            levels: levels.levels.iter().map(|l| l.0).collect(),
            amplitude: levels.amplitude,
            g_functional,
            lambda0: record.rows[0].lambda0,
            max_dphi_at_t: last.dphi.iter().cloned().fold(0.0, f64::max),
            max_dphi: gronwall.max_dphi,
            c_emp: gronwall.c_emp,
            gronwall_holds: holds && gronwall.c_emp > 0.0,
        };
        Ok(LldRun {
            entry,
            record,
            gronwall,
        })
    });
    let mut runs = Vec::new();
    for r in results {
        runs.push(r.map_err(|p| CliError::Validation(format!("worker panicked: {p}")))??);
    }
    let entries: Vec<LldEntry> = runs.iter().map(|r| r.entry.clone()).collect();
    let monotone_in_a = entries.windows(2).all(|w| w[1].max_dphi_at_t > w[0].max_dphi_at_t);
    let report = LldReport {
        t: cfg.horizon,
        entries,
        monotone_in_a,
    };
    if let Some(dir) = out {
        create_dir(dir)?;
        write_json(&dir.join("lld.json"), &report)?;
        write_text(&dir.join("growth.csv"), &growth_csv(&report))?;
        for r in &runs {
            write_text(
                &dir.join(format!("A_{}", format_float(r.entry.a))).join("gronwall.csv"),
                &gronwall_csv(&r.gronwall),
            )?;
        }
    }
    Ok((report, runs))
}

pub fn growth_csv(r: &LldReport) -> String {
    let mut out = String::from("A,max_dphi_at_t,max_dphi,G,c_emp,lambda0\n");
    for e in &r.entries {
        let cells = [e.a, e.max_dphi_at_t, e.max_dphi, e.g_functional, e.c_emp, e.lambda0];
        let cells: Vec<String> = cells.iter().map(|v| format_float(*v)).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

pub fn gronwall_csv(g: &GronwallReport) -> String {
    let mut out = String::from("t,lhs,rhs_c_emp,dphi_max,predicted_floor\n");
    for i in 0..g.t.len() {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            format_float(g.t[i]),
            format_float(g.lhs[i]),
            format_float(g.rhs_at_c_emp[i]),
            format_float(g.dphi_max[i]),
            format_float(g.predicted_floor[i])
        );
    }
    out
}
