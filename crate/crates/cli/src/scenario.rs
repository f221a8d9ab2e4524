use std::path::Path;

use logeuler_core::diagnostics::{measure_row, RowOptions, RunRecord};
use logeuler_core::dynamics::{DynamicsError, FlowState, SimState, Solver};
use logeuler_core::{Field, Grid, Regularization};
use serde::Serialize;

use crate::config::{check_seeds, check_support, ParityDecl, Scenario};
use crate::error::CliError;
use crate::output::{create_dir, encode_snapshot, snapshot_path, write_record};

/// A validated scenario ready to run.
pub struct Prepared {
    pub grid: Grid,
    pub reg: Regularization,
    pub solver: Solver,
    pub initial: Field,
    pub odd_odd: bool,
}

/// Every check that can fail without time stepping.
pub fn prepare(s: &Scenario, base: &Path) -> Result<Prepared, CliError> {
    if s.name.is_empty() {
        return Err(CliError::Validation("scenario name is empty".into()));
    }
    if !(s.horizon > 0.0 && s.horizon.is_finite()) {
        return Err(CliError::Validation(format!("horizon = {} must be positive", s.horizon)));
    }
    if s.record_every == 0 {
        return Err(CliError::Validation("record_every must be at least 1".into()));
    }
    let grid = s.grid.build()?;
    let reg = s.regularization()?;
    let policy = s.time.policy()?;
    check_seeds(&grid, &s.seeds)?;
    let initial = s.data.build(&grid, base)?;
    check_support(&initial)?;
    initial.check_zero_mean()?;
    let detected = initial.is_odd_odd(1e-12);
    let odd_odd = match s.parity {
        Some(ParityDecl::OddOdd) if !detected => {
            return Err(CliError::Validation("data declared odd-odd is not".into()))
        }
        Some(ParityDecl::OddOdd) => true,
        Some(ParityDecl::None) => false,
        None => detected,
    };
    Ok(Prepared {
        grid,
        reg,
        solver: Solver::new(grid, reg, policy),
        initial,
        odd_odd,
    })
}

/// Integrates a prepared scenario, writing snapshots under `snapshots` when given.
pub fn run_prepared(
    s: &Scenario,
    p: &Prepared,
    snapshots: Option<&Path>,
) -> Result<RunRecord, CliError> {
    let mut record = RunRecord::new(s.name.clone(), s.seeds.clone());
    let state = SimState::new(p.reg, &[p.initial.clone()])?;
    let flow = (!s.seeds.is_empty()).then(|| FlowState::new(s.seeds.clone()));
    let options = RowOptions {
        odd_odd: p.odd_odd,
        ..RowOptions::default()
    };
    if let (Some(dir), true) = (snapshots, s.snapshot_every > 0) {
        create_dir(&dir.join("snapshots"))?;
    }
    let mut io_error = None;
    let result = p.solver.run(state, flow, s.horizon, |st, fl, last| {
        let step = st.step_count();
        if last || step % s.record_every == 0 {
            let row = measure_row(st, fl, &options, &mut record.flags).map_err(|e| match e {
                logeuler_core::diagnostics::DiagnosticsError::Dynamics(d) => d,
                _ => DynamicsError::NanDetected { t: st.t(), step },
            })?;
            record.rows.push(row);
        }
        if let (Some(dir), true) = (snapshots, s.snapshot_every > 0 && step % s.snapshot_every.max(1) == 0) {
            let path = snapshot_path(dir, step);
            if let Err(e) = std::fs::write(&path, encode_snapshot(&st.vorticity(), st.t(), p.reg)) {
                io_error.get_or_insert(CliError::io(path, e));
            }
        }
        Ok(())
    });
    if let Some(e) = io_error {
        return Err(e);
    }
    match result {
        Ok(_) => {
            record.complete = true;
            Ok(record)
        }
        Err(source) => {
            record.flag(format!("aborted: {source}"));
            Err(match CliError::from(source) {
                CliError::Numerical { source, .. } => CliError::Numerical {
                    source,
                    partial: Some(Box::new(record)),
                },
                other => other,
            })
        }
    }
}

/// Runs a scenario without touching the filesystem beyond data files.
pub fn run_scenario(s: &Scenario, base: &Path) -> Result<RunRecord, CliError> {
    let p = prepare(s, base)?;
    run_prepared(s, &p, None)
}

#[derive(Serialize)]
struct ScenarioMeta<'a> {
    scenario: &'a Scenario,
    empirical_c0: Vec<f64>,
    odd_odd: bool,
}

/// Runs a scenario and persists `record.csv`, `record.json` and snapshots in
/// `out`. Partial records of failed runs are written with `complete = false`.
pub fn execute_scenario(s: &Scenario, base: &Path, out: &Path) -> Result<RunRecord, CliError> {
    let p = prepare(s, base)?;
    create_dir(out)?;
    let result = run_prepared(s, &p, Some(out));
    let record = match &result {
        Ok(r) => Some(r),
        Err(CliError::Numerical { partial, .. }) => partial.as_deref(),
        Err(_) => None,
    };
    if let Some(record) = record {
        write_record(
            out,
            record,
            ScenarioMeta {
                scenario: s,
                empirical_c0: record.empirical_c0(),
                odd_odd: p.odd_odd,
            },
        )?;
    }
    result
}
