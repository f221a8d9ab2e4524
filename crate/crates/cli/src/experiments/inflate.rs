//! `Ḣ¹` inflation by a high-frequency perturbation riding a strong deformation.

use std::path::{Path, PathBuf};

use logeuler_core::diagnostics::{
    inflation_report, lagrangian_lobe_h1, measure_row, InflationReport, RowOptions, RunRecord,
};
use logeuler_core::dynamics::{op_norm, FlowState, SimState};
use logeuler_core::initial_data::{make_eta0, Eta0Spec, OscAxis, MIN_LOBE_CELLS};
use logeuler_core::RegKind;
use serde::{Deserialize, Serialize};

use super::{dyadic_coords, lattice_seeds};
use crate::config::{check_seeds, check_support, regularization, DataSpec, GridSpec, TimeSpec};
use crate::error::CliError;
use crate::output::{create_dir, write_json, write_record};

/// Smallest deformation entry for which a perturbation is placed.
pub const DEFORMATION_THRESHOLD: f64 = 1.05;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InflateConfig {
    pub name: String,
    pub grid: GridSpec,
    pub kind: RegKind,
    pub gamma: f64,
    /// Odd-odd reference data.
    pub base: DataSpec,
    pub k: f64,
    /// One setting per horizon; `t₀` is chosen inside `[0, horizon]`.
    pub horizons: Vec<f64>,
    /// Factor on the perturbation amplitude; 0 switches it off.
    #[serde(default = "one")]
    pub amplitude: f64,
    #[serde(default = "five")]
    pub lattice_side: usize,
    /// Candidate locations for `x_L`; a dyadic lattice by default.
    #[serde(default)]
    pub candidates: Option<Vec<[f64; 2]>>,
    #[serde(default)]
    pub time: TimeSpec,
    #[serde(default = "one_step")]
    pub record_every: u64,
    #[serde(default)]
    pub output: Option<PathBuf>,
}

fn one() -> f64 {
    1.0
}

fn five() -> usize {
    5
}

fn one_step() -> u64 {
    1
}

/// Largest entry `|∂_b φ_a|` over tracked seeds and times.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DeformationPeak {
    pub value: f64,
    pub seed: [f64; 2],
    /// `(a, b)`, zero-based: the entry is `∂_{b+1} φ_{a+1}`.
    pub entry: [usize; 2],
    pub t: f64,
    /// `‖Dφ(x_L, t₀)‖`.
    pub norm: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InflationSetting {
    pub horizon: f64,
    pub peak: DeformationPeak,
    pub eta0: Eta0Spec,
    pub k0: f64,
    pub report: InflationReport,
    /// `lagrangian ≤ 1.1 · eulerian_sq`.
    pub reconstruction_ok: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InflateReport {
    pub settings: Vec<InflationSetting>,
    /// Ratios non-decreasing when settings are ordered by measured `L`.
    pub ratio_nondecreasing: bool,
    pub all_exceed_one: bool,
}

fn peak_of(flow: &FlowState, t: f64, best: &mut Option<DeformationPeak>) {
    for (i, d) in flow.deforms.iter().enumerate() {
        for a in 0..2 {
            for b in 0..2 {
                let v = d[a][b].abs();
                if best.is_none_or(|p| v > p.value) {
                    *best = Some(DeformationPeak {
                        value: v,
                        seed: flow.seeds[i],
                        entry: [a, b],
                        t,
                        norm: op_norm(d),
                    });
                }
            }
        }
    }
}

/// Runs the reference data once, then one perturbed run per horizon that
/// replays the reference time grid up to `t₀`.
pub fn cmd_inflate(cfg: &InflateConfig, base: &Path, out: Option<&Path>) -> Result<InflateReport, CliError> {
    let grid = cfg.grid.build()?;
    let reg = regularization(cfg.kind, cfg.gamma)?;
    let policy = cfg.time.policy()?;
    if cfg.horizons.is_empty() || cfg.horizons.iter().any(|h| !(*h > 0.0)) {
        return Err(CliError::Validation("horizons must be a non-empty list of positive times".into()));
    }
    if cfg.lattice_side < 2 {
        return Err(CliError::Validation("lattice_side must be at least 2".into()));
    }
    if cfg.record_every == 0 {
        return Err(CliError::Validation("record_every must be at least 1".into()));
    }
    let mut horizons = cfg.horizons.clone();
    horizons.sort_by(f64::total_cmp);
    horizons.dedup();
    let omega0 = cfg.base.build(&grid, base)?;
    check_support(&omega0)?;
    if !omega0.is_odd_odd(1e-12) {
        return Err(CliError::Validation("inflation needs odd-odd reference data".into()));
    }
    // δ = min(x_L)/4 must span MIN_LOBE_CELLS cells.
    let candidates = cfg.candidates.clone().unwrap_or_else(|| {
        lattice_seeds(&dyadic_coords(&grid, 4.0 * MIN_LOBE_CELLS * grid.spacing()), false)
    });
    if candidates.is_empty() || candidates.iter().any(|c| !(c[0] > 0.0 && c[1] > 0.0)) {
        return Err(CliError::Validation("candidates must lie in the open first quadrant".into()));
    }
    check_seeds(&grid, &candidates)?;
    let solver = logeuler_core::dynamics::Solver::new(grid, reg, policy);
    let options = RowOptions::default();

    // Reference run, segment by segment.
    let mut reference = RunRecord::new(format!("{}_reference", cfg.name), Vec::new());
    let mut times = Vec::new();
    let mut best: Option<DeformationPeak> = None;
    let mut peaks = Vec::new();
    let mut state = SimState::new(reg, &[omega0.clone()])?;
    let mut flow = Some(FlowState::new(candidates.clone()));
    for (seg, &h) in horizons.iter().enumerate() {
        let (s, f) = solver.run(state, flow, h, |st, fl, last| {
            if seg > 0 && st.t() <= times.last().copied().unwrap_or(0.0) {
                return Ok(());
            }
            if st.step_count() > 0 {
                times.push(st.t());
            }
            if last || st.step_count() % cfg.record_every == 0 {
                if let Some(fl) = fl {
                    peak_of(fl, st.t(), &mut best);
                }
                let row = measure_row(st, None, &options, &mut reference.flags)
                    .map_err(|_| logeuler_core::dynamics::DynamicsError::NanDetected { t: st.t(), step: st.step_count() })?;
                reference.rows.push(row);
            }
            Ok(())
        })?;
        state = s;
        flow = f;
        peaks.push((h, best.expect("candidates are tracked")));
    }
    reference.complete = true;

    let mut settings = Vec::new();
    for (h, peak) in peaks {
        if peak.value < DEFORMATION_THRESHOLD {
            return Err(CliError::NoDeformation {
                peak: peak.value,
                threshold: DEFORMATION_THRESHOLD,
            });
        }
        let x_l = peak.seed;
        let delta = x_l[0].min(x_l[1]) / 4.0;
        let eta0 = Eta0Spec {
            center: x_l,
            delta,
            k: cfg.k,
            l: peak.norm,
            // The entry ∂_b φ_a multiplies ∂_{3-b} of the initial vorticity.
            axis: if peak.entry[1] == 0 { OscAxis::X2 } else { OscAxis::X1 },
            amplitude: cfg.amplitude,
        };
        let eta = make_eta0(&eta0, &grid)?;
        let perturbed0 = omega0.add(&eta)?;
        let side = cfg.lattice_side;
        let lattice: Vec<[f64; 2]> = (0..side * side)
            .map(|i| {
                let step = 2.0 * delta / (side - 1) as f64;
                [x_l[0] - delta + step * (i / side) as f64, x_l[1] - delta + step * (i % side) as f64]
            })
            .collect();
        let grid_times: Vec<f64> = times.iter().copied().take_while(|t| *t <= peak.t).collect();
        let mut perturbed = RunRecord::new(format!("{}_perturbed_T{}", cfg.name, h), lattice.clone());
        let keep_rows: Vec<f64> = reference.rows.iter().map(|r| r.t).filter(|t| *t <= peak.t).collect();
        let (_, final_flow) = solver.follow(
            SimState::new(reg, &[perturbed0.clone()])?,
            Some(FlowState::new(lattice.clone())),
            &grid_times,
            |st, fl, _| {
                if keep_rows.contains(&st.t()) {
                    let row = measure_row(st, fl, &options, &mut perturbed.flags).map_err(|_| {
                        logeuler_core::dynamics::DynamicsError::NanDetected { t: st.t(), step: st.step_count() }
                    })?;
                    perturbed.rows.push(row);
                }
                Ok(())
            },
        )?;
        perturbed.complete = true;
        let mut reference_cut = reference.clone();
        reference_cut.rows.retain(|r| r.t <= peak.t);
        let lagrangian = lagrangian_lobe_h1(
            &perturbed0,
            &final_flow.expect("lattice is tracked"),
            side,
            x_l,
            delta,
            peak.entry[0],
            4.0,
        )?;
        let report = inflation_report(&perturbed, &reference_cut, lagrangian)?;
        if let Some(dir) = out {
            write_record(&dir.join(format!("perturbed_T{h}")), &perturbed, &eta0)?;
        }
        settings.push(InflationSetting {
            horizon: h,
            peak,
            k0: eta0.k0(),
            eta0,
            reconstruction_ok: report.lagrangian <= 1.1 * report.eulerian_sq,
            report,
        });
    }
    let mut order: Vec<&InflationSetting> = settings.iter().collect();
    order.sort_by(|a, b| a.peak.norm.total_cmp(&b.peak.norm));
    let ratio_nondecreasing = order.windows(2).all(|w| w[1].report.ratio >= w[0].report.ratio);
    let all_exceed_one = settings.iter().all(|s| s.report.ratio > 1.0);
    let report = InflateReport {
        settings,
        ratio_nondecreasing,
        all_exceed_one,
    };
    if let Some(dir) = out {
        create_dir(dir)?;
        write_record(&dir.join("reference"), &reference, ())?;
        write_json(&dir.join("inflate.json"), &report)?;
    }
    Ok(report)
}
