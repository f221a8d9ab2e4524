mod common;

use logeuler_core::diagnostics::{measure_row, RowOptions, RunRecord};
use logeuler_core::dynamics::*;
use logeuler_core::initial_data::{make_eta0, make_rho, rho_at, Eta0Spec, OscAxis, RhoSpec};
use logeuler_core::kernels::{eval_k12, KernelQuery, QuadratureBudget};
use logeuler_core::spectral::{lebesgue_norm, Lp};
use logeuler_core::{Field, Gamma, Grid, RegKind, Regularization};

fn half() -> Gamma {
    Gamma::new(0.5).unwrap()
}

fn log_lap() -> Regularization {
    Regularization::new(RegKind::LogLaplacian, half())
}

/// ρ contracted by 4: lobes of radius 1/16 centred at (±1/4, ±1/4).
fn small_rho(grid: &Grid) -> Field {
    make_rho(&RhoSpec { sigma: 0.25, contraction: 4.0 }, grid).unwrap()
}

/// A smooth odd-odd quadrupole, `c·x₁x₂·e^{-|x|²/w²}`.
fn quadrupole(grid: &Grid) -> Field {
    let w2 = 0.15f64 * 0.15;
    Field::from_fn(*grid, |x1, x2| 40.0 * x1 * x2 * (-(x1 * x1 + x2 * x2) / w2).exp())
}

fn seeds() -> Vec<[f64; 2]> {
    vec![[0.0, 0.0], [0.25, 0.25], [0.2, 0.3], [-0.26, 0.21], [0.125, -0.0625]]
}

#[test]
fn odd_odd_run_keeps_its_invariants() {
    let grid = Grid::new(128, 1.0).unwrap();
    let omega0 = quadrupole(&grid);
    let solver = Solver::new(grid, log_lap(), TimePolicy::default());
    let state = SimState::new(log_lap(), &[omega0.clone()]).unwrap();
    let norms0 = [Lp::One, Lp::Two, Lp::Infinity].map(|p| lebesgue_norm(&omega0, p));

    let mut record = RunRecord::new("invariants", seeds());
    let mut flags = Vec::new();
    let mut lambdas: Vec<(f64, f64)> = Vec::new();
    let mut worst = [0.0f64; 6];
    let (last, flow) = solver
        .run(state, Some(FlowState::new(seeds())), 1.0, |s, flow, _| {
            let flow = flow.unwrap();
            let omega = s.vorticity();
            for (k, p) in [Lp::One, Lp::Two, Lp::Infinity].into_iter().enumerate() {
                worst[k] = worst[k].max((lebesgue_norm(&omega, p) / norms0[k] - 1.0).abs());
            }
            worst[3] = worst[3].max(parity_defect_odd_odd(&omega));
            for d in flow.determinants() {
                worst[4] = worst[4].max((d - 1.0).abs());
            }
            let d0 = flow.deforms[0];
            worst[5] = worst[5].max(d0[0][1].abs().max(d0[1][0].abs()));
            assert!(flow.positions[0][0].hypot(flow.positions[0][1]) <= 1e-10);
            assert!((d0[0][0] * d0[1][1] - 1.0).abs() <= 1e-4);
            lambdas.push((s.t(), lambda_at_origin(s)?));
            record.rows.push(measure_row(s, Some(flow), &RowOptions::default(), &mut flags).unwrap());
            Ok(())
        })
        .unwrap();
    assert!((last.t() - 1.0).abs() < 1e-15);
    for w in &worst[..3] {
        assert!(*w <= 1e-3, "norm drift {worst:?}");
    }
    assert!(worst[3] <= 1e-8 && worst[4] <= 1e-4 && worst[5] <= 1e-8, "{worst:?}");

    // Dφ₁₁(0, t) against exp(∫λ) by the trapezoidal rule.
    let integral: f64 = lambdas.windows(2).map(|w| 0.5 * (w[1].0 - w[0].0) * (w[0].1 + w[1].1)).sum();
    let flow = flow.unwrap();
    assert!(lambdas[0].1 > 0.0);
    assert!((flow.deforms[0][0][0] / integral.exp() - 1.0).abs() <= 1e-4);

    // Characteristics carry the vorticity.
    let omega = last.vorticity();
    for (x0, x) in seeds().iter().zip(&flow.positions) {
        let carried = omega.eval_at(*x);
        assert!((carried - omega0.eval_at(*x0)).abs() <= 1e-3 * norms0[2], "{x0:?}");
    }

    // The Gronwall inequality admits a positive constant.
    let report = gronwall_report(&record, 1.0).unwrap();
    assert!(report.c_emp > 0.0 && report.c_emp.is_finite());
    for (l, r) in report.lhs.iter().zip(&report.rhs_at_c_emp) {
        assert!(l <= &(r * (1.0 + 1e-12)));
    }
    assert!(flags.is_empty(), "{flags:?}");
}

#[test]
fn gronwall_rhs_tends_to_t_as_c_vanishes() {
    for t in [0.1, 1.0, 7.0] {
        assert!((gronwall_rhs(1e-15, 2.0, t) - t).abs() <= 1e-12 * t);
        assert!(gronwall_rhs(1.0, 2.0, t) < t);
    }
}

#[test]
fn strain_at_origin_matches_kernel_quadrature() {
    let grid = Grid::new(256, 1.0).unwrap();
    let omega = small_rho(&grid);
    let state = SimState::new(log_lap(), &[omega.clone()]).unwrap();
    let lambda = lambda_at_origin(&state).unwrap();
    let b = QuadratureBudget::default();
    let h2 = grid.spacing().powi(2);
    let o = grid.origin_index();
    let mut quad = 0.0;
    for i in o + 1..grid.n() {
        for j in o + 1..grid.n() {
            let v = omega.value(i, j);
            if v != 0.0 {
                let q = KernelQuery { x: grid.point(i, j), gamma: half(), kind: RegKind::LogLaplacian };
                quad += eval_k12(&q, &b).unwrap().value * v * h2;
            }
        }
    }
    let quad = 4.0 * quad;
    assert!(common::rel_err(lambda, quad) < 0.05, "{lambda} vs {quad}");
    // The odd-odd field is also recovered from the closed form of ρ.
    assert_eq!(omega.value(o + 32, o + 32), rho_at(0.25, [1.0, 1.0]));
}

fn eta(k: f64, amplitude: f64) -> Eta0Spec {
    Eta0Spec {
        center: [0.125, 0.125],
        delta: 0.0625,
        k,
        l: 1.0,
        axis: OscAxis::X1,
        amplitude,
    }
}

fn perturbation_report(grid: Grid, k: f64, amplitude: f64) -> FlowPerturbationReport {
    let base = small_rho(&grid);
    let pert = base.add(&make_eta0(&eta(k, amplitude), &grid).unwrap()).unwrap();
    let solver = Solver::new(grid, log_lap(), TimePolicy::default());
    solver
        .flow_perturbation_check(
            SimState::new(log_lap(), &[base]).unwrap(),
            SimState::new(log_lap(), &[pert]).unwrap(),
            &seeds(),
            0.5,
        )
        .unwrap()
}

#[test]
fn flow_perturbation_is_linear_and_vanishes_with_v() {
    let grid = Grid::new(128, 1.0).unwrap();
    let zero = perturbation_report(grid, 32.0, 0.0);
    assert!(zero.max_flow_diff <= 1e-10);
    assert_eq!(zero.ratio, 0.0);
    let one = perturbation_report(grid, 32.0, 1.0);
    let two = perturbation_report(grid, 32.0, 2.0);
    let scale = two.max_flow_diff / one.max_flow_diff;
    assert!((scale - 2.0).abs() <= 0.3 * 2.0, "{scale}");
    assert!(one.ratio > 0.0 && one.ratio.is_finite());
}

#[test]
fn flow_perturbation_shrinks_with_k() {
    let grid = Grid::new(256, 1.0).unwrap();
    let k32 = perturbation_report(grid, 32.0, 1.0);
    let k64 = perturbation_report(grid, 64.0, 1.0);
    assert!(k64.max_flow_diff < k32.max_flow_diff);
    assert!(k64.max_dv_inf < k32.max_dv_inf);
}

#[test]
fn nonzero_mean_and_wrong_parity_are_rejected() {
    let grid = Grid::new(64, 1.0).unwrap();
    let even = Field::from_fn(grid, |x1, x2| (-(x1 * x1 + x2 * x2) * 50.0).exp());
    assert!(SimState::new(log_lap(), &[even]).is_err());
    let odd_x1 = Field::from_fn(grid, |x1, x2| x1 * (-(x1 * x1 + x2 * x2) * 50.0).exp());
    let s = SimState::new(log_lap(), &[odd_x1]).unwrap();
    assert!(matches!(lambda_at_origin(&s), Err(DynamicsError::ParityPrecondition(_))));
}
