mod common;

use logeuler_core::diagnostics::*;
use logeuler_core::dynamics::{FlowState, SimState, Solver, TimePolicy};
use logeuler_core::initial_data::{make_gaussian, make_rho, RhoSpec};
use logeuler_core::spectral::{biot_savart, lebesgue_norm, Lp};
use logeuler_core::{Field, Gamma, Grid, RegKind, Regularization};

fn log_lap() -> Regularization {
    Regularization::new(RegKind::LogLaplacian, Gamma::new(0.5).unwrap())
}

#[test]
fn support_radius_of_rho() {
    let grid = Grid::new(256, 2.0).unwrap();
    let rho = make_rho(&RhoSpec::default(), &grid).unwrap();
    let r = support_radius(&rho, SUPPORT_THRESHOLD).unwrap();
    assert!((r - (2f64.sqrt() + 0.125)).abs() <= grid.spacing(), "{r}");
    let mut prev = f64::INFINITY;
    for k in 0..20 {
        let thr = SUPPORT_THRESHOLD * 2f64.powi(k);
        let rk = support_radius(&rho, thr).unwrap();
        assert!(rk <= prev);
        prev = rk;
    }
    assert!(matches!(support_radius(&rho, 2.0), Err(DiagnosticsError::EmptySupport)));
}

#[test]
fn support_spreads_no_faster_than_the_velocity_bound() {
    let grid = Grid::new(128, 1.0).unwrap();
    let rho = make_rho(&RhoSpec { sigma: 0.25, contraction: 4.0 }, &grid).unwrap();
    let solver = Solver::new(grid, log_lap(), TimePolicy::default());
    let mut record = RunRecord::new("support", vec![[0.0, 0.0]]);
    let mut flags = Vec::new();
    solver
        .run(
            SimState::new(log_lap(), &[rho]).unwrap(),
            Some(FlowState::new(vec![[0.0, 0.0]])),
            0.5,
            |s, f, _| {
                record.rows.push(measure_row(s, f, &RowOptions::default(), &mut flags).unwrap());
                Ok(())
            },
        )
        .unwrap();
    let c0 = record.empirical_c0();
    assert!(c0.windows(2).all(|w| w[1] >= w[0]));
    let r0 = record.rows[0].supp_r;
    let m = record.rows.iter().map(|r| r.l1 + r.linf).fold(0.0, f64::max);
    let c0_max = *c0.last().unwrap();
    for row in &record.rows {
        let bound = r0 + 2.0 * c0_max * m * row.t + grid.spacing();
        assert!(row.supp_r <= bound, "t = {}: {} > {bound}", row.t, row.supp_r);
    }
}

#[test]
fn rows_satisfy_interpolation_and_flag_nonzero_mean() {
    let grid = Grid::new(64, 1.0).unwrap();
    let g = make_gaussian(&grid, 1.0, [0.0, 0.0], 0.1);
    let odd = Field::from_fn(grid, |x1, x2| x1 * x2 * (-(x1 * x1 + x2 * x2) / 0.02).exp());
    let s = SimState::new(log_lap(), &[odd]).unwrap();
    let mut flags = Vec::new();
    let row = measure_row(&s, None, &RowOptions::default(), &mut flags).unwrap();
    assert!(row.l2 * row.l2 <= row.l1 * row.linf);
    assert!(row.hneg1.is_finite() && row.lambda0.is_finite());
    assert!(flags.is_empty());
    // A Gaussian has a mean, so the solver refuses it; its H⁻¹ is undefined.
    assert!(SimState::new(log_lap(), &[g.clone()]).is_err());
    assert!(logeuler_core::spectral::sobolev_norm(&g, -1.0).is_err());
}

#[test]
fn velocity_bound_for_a_blob_and_under_translation() {
    let grid = Grid::new(128, 4.0).unwrap();
    let h = grid.spacing();
    let blob = |c: [f64; 2]| {
        // Odd in x₁ about the blob centre so the mean vanishes.
        let a = make_gaussian(&grid, 1.0, [c[0] - 0.25, c[1]], 0.15);
        let b = make_gaussian(&grid, 1.0, [c[0] + 0.25, c[1]], 0.15);
        b.sub(&a).unwrap()
    };
    let ratio = |f: &Field| {
        let (u1, u2) = biot_savart(f, log_lap()).unwrap();
        velocity_bound_check(f, (&u1, &u2))
    };
    let base = ratio(&blob([0.0, 0.0]));
    assert!(base.ratio < 1.0 && base.ratio > 0.0, "{base:?}");
    let moved = ratio(&blob([16.0 * h, -8.0 * h]));
    assert!((moved.ratio - base.ratio).abs() <= 1e-10 * base.ratio);
    let zero = ratio(&Field::zeros(grid));
    assert_eq!((zero.lhs, zero.rhs, zero.ratio), (0.0, 0.0, 0.0));
}

fn patch_setup() -> (Solver, Field) {
    let grid = Grid::new(256, 8.0).unwrap();
    let f = make_rho(&RhoSpec { sigma: 0.25, contraction: 1.0 }, &grid).unwrap();
    (Solver::new(grid, log_lap(), TimePolicy::default()), f)
}

#[test]
fn interaction_with_nothing_is_zero() {
    let (solver, f) = patch_setup();
    let zero = Field::zeros(*solver.grid());
    let options = InteractionOptions {
        horizon: 0.25,
        separations: vec![3.5, 4.0],
        record_every: 1,
    };
    let rep = interaction_decay(&solver, &f, &[zero], &options).unwrap();
    assert!(rep.l2_diff.iter().chain(&rep.h2_diff).all(|d| *d <= 1e-8), "{rep:?}");
    let alone = interaction_decay(&solver, &f, &[], &options).unwrap();
    assert!(alone.l2_diff.iter().all(|d| *d == 0.0));
}

#[test]
fn interaction_report_ignores_separation_order() {
    let (solver, f) = patch_setup();
    let g = f.scaled(0.5);
    let run = |seps: Vec<f64>| {
        let options = InteractionOptions {
            horizon: 0.25,
            separations: seps,
            record_every: 1,
        };
        interaction_decay(&solver, &f, &[g.clone()], &options).unwrap()
    };
    let a = run(vec![3.5, 4.0]);
    let b = run(vec![4.0, 3.5]);
    assert_eq!(a, b);
    assert!(a.l2_diff[0] > a.l2_diff[1], "{a:?}");
}

#[test]
fn interaction_rejects_bad_geometry() {
    let (solver, f) = patch_setup();
    let options = |r: f64| InteractionOptions {
        horizon: 0.25,
        separations: vec![r, 2.0 * r],
        record_every: 1,
    };
    assert!(matches!(
        interaction_decay(&solver, &f, &[f.clone()], &options(2.0)),
        Err(DiagnosticsError::Overlap)
    ));
    assert!(matches!(
        interaction_decay(&solver, &f, &[f.clone()], &options(4.0)),
        Err(DiagnosticsError::OutOfBox(_))
    ));
}

#[test]
fn power_fit_recovers_exponent() {
    let x = [4.0, 8.0, 16.0];
    let y: Vec<f64> = x.iter().map(|r: &f64| 3.0 * r.powf(-1.3)).collect();
    let fit = fit_power_law(&x, &y).unwrap();
    assert!((fit.exponent + 1.3).abs() < 1e-12 && (fit.prefactor - 3.0).abs() < 1e-12);
    assert!(lebesgue_norm(&Field::zeros(Grid::new(16, 1.0).unwrap()), Lp::Two) == 0.0);
}
