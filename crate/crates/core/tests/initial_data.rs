mod common;

use std::f64::consts::PI;

use common::rel_err;
use logeuler_core::initial_data::*;
use logeuler_core::spectral::{gradient, lebesgue_norm, Lp, Parity};
use logeuler_core::{Field, Gamma, Grid};

fn half() -> Gamma {
    Gamma::new(0.5).unwrap()
}

/// `∫φ(|y|)dy` by a fine radial midpoint rule, independent of the library's quadrature.
fn bump_mass() -> f64 {
    let m = 200_000;
    (0..m)
        .map(|i| {
            let r = (i as f64 + 0.5) / m as f64;
            2.0 * PI * r * BumpProfile.value(r) / m as f64
        })
        .sum()
}

fn ga16(j_cap: Option<i64>) -> GaSpec {
    GaSpec {
        j_cap,
        ..GaSpec::new(half(), 16.0, GaVariant::Section3)
    }
}

#[test]
fn rho_values_mean_and_moment() {
    let grid = Grid::new(256, 2.0).unwrap();
    let rho = make_rho(&RhoSpec::default(), &grid).unwrap();
    let (i, j) = (grid.node_index(1.0).unwrap(), grid.node_index(1.0).unwrap());
    assert_eq!(rho.value(i, j), 1.0);
    assert!(rho.integral().abs() < 1e-12);
    assert!(rho.is_odd_odd(0.0));
    let h2 = grid.spacing().powi(2);
    let o = grid.origin_index();
    let mut moment = 0.0;
    for a in o + 1..grid.n() {
        for b in o + 1..grid.n() {
            let [x1, x2] = grid.point(a, b);
            let r2 = x1 * x1 + x2 * x2;
            moment += rho.value(a, b) * x1 * x2 / (r2 * r2) * (-r2 * r2).exp() * h2;
        }
    }
    assert!(moment > 0.0);
    assert!(functional_g(&rho, half()).unwrap() > 0.0);
}

#[test]
fn rho_rejects_unresolved_sigma() {
    let grid = Grid::new(32, 2.0).unwrap();
    assert!(matches!(
        make_rho(&RhoSpec { sigma: 0.125, contraction: 1.0 }, &grid),
        Err(DataError::Unresolvable { .. })
    ));
}

#[test]
fn ga_sup_and_l1_norms_follow_the_dyadic_sum() {
    let grid = Grid::new(1024, 0.5).unwrap();
    let spec = ga16(Some(5));
    let levels = spec.levels(&grid).unwrap();
    let js: Vec<i64> = levels.levels.iter().map(|l| l.0).collect();
    assert_eq!(js, vec![3, 4, 5]);
    let g = make_ga(&spec, &grid).unwrap();
    let c = 1.0 / (16f64.ln().sqrt() * 16f64.ln().ln());
    assert!(rel_err(g.max_abs(), c * 3f64.powf(-0.5)) < 1e-12);
    let rho_l1 = 4.0 * spec.sigma.powi(2) * bump_mass();
    let expect: f64 = js
        .iter()
        .map(|&j| c * (j as f64).powf(-0.5) * 4f64.powi(-(j as i32)) * rho_l1)
        .sum();
    assert!(rel_err(lebesgue_norm(&g, Lp::One), expect) < 1e-3);
    assert!(g.is_odd_odd(0.0));
}

#[test]
fn ga_levels_have_disjoint_supports() {
    let grid = Grid::new(512, 0.5).unwrap();
    let spec = ga16(None);
    let levels = spec.levels(&grid).unwrap();
    let single = |k: usize| {
        let mut l = levels.clone();
        l.levels = vec![levels.levels[k]];
        Field::from_fn(grid, move |x1, x2| l.value(spec.sigma, [x1, x2]))
    };
    let parts: Vec<Field> = (0..levels.levels.len()).map(single).collect();
    for a in 0..parts.len() {
        for b in a + 1..parts.len() {
            assert!(parts[a].values().iter().zip(parts[b].values()).all(|(x, y)| x * y == 0.0));
        }
    }
    let total = make_ga(&spec, &grid).unwrap();
    let sum = parts.iter().skip(1).fold(parts[0].clone(), |acc, p| acc.add(p).unwrap());
    assert!(total.sub(&sum).unwrap().max_abs() < 1e-15);
}

#[test]
fn ga_functional_matches_per_level_reduction() {
    let grid = Grid::new(1024, 0.5).unwrap();
    let spec = ga16(Some(5));
    let levels = spec.levels(&grid).unwrap();
    let g = make_ga(&spec, &grid).unwrap();
    let got = functional_g(&g, half()).unwrap();
    // Single lobe moment ∫ρ(y) y₁y₂|y|⁻⁴ over the first quadrant, on a fine
    // midpoint grid around (1, 1).
    let s = spec.sigma;
    let m = 800;
    let d = 2.0 * s / m as f64;
    let mut lobe = 0.0;
    for a in 0..m {
        for b in 0..m {
            let y1 = 1.0 - s + (a as f64 + 0.5) * d;
            let y2 = 1.0 - s + (b as f64 + 0.5) * d;
            let r2 = y1 * y1 + y2 * y2;
            lobe += rho_at(s, [y1, y2]) * y1 * y2 / (r2 * r2) * d * d;
        }
    }
    let expect: f64 = levels
        .levels
        .iter()
        .map(|&(j, _)| levels.amplitude * (j as f64).powf(-1.0) * 2f64.ln().powf(-0.5) * lobe)
        .sum();
    assert!(rel_err(got, expect) < 0.1, "{got} vs {expect}");
    let doubled = functional_g(&g.scaled(2.0), half()).unwrap();
    assert!(rel_err(doubled, 2.0 * got) < 1e-14);
}

#[test]
fn functional_rejects_negative_first_quadrant() {
    let grid = Grid::new(256, 2.0).unwrap();
    let rho = make_rho(&RhoSpec::default(), &grid).unwrap();
    assert!(matches!(
        functional_g(&rho.scaled(-1.0), half()),
        Err(DataError::NegativeOnQuadrant { .. })
    ));
}

#[test]
fn section7_variant_needs_large_a() {
    let grid = Grid::new(1024, 0.5).unwrap();
    let s7 = |a| GaSpec::new(half(), a, GaVariant::Section7);
    assert!(matches!(s7(8.0).levels(&grid), Err(DataError::BadRange { .. })));
    assert!(s7(32.0).levels(&grid).is_err());
}

fn eta(k: f64) -> Eta0Spec {
    Eta0Spec {
        center: [0.25, 0.25],
        delta: 0.0625,
        k,
        l: 2.0,
        axis: OscAxis::X1,
        amplitude: 1.0,
    }
}

#[test]
fn eta0_sup_parity_and_gradient_bound() {
    let grid = Grid::new(512, 0.5).unwrap();
    let spec = eta(96.0);
    let f = make_eta0(&spec, &grid).unwrap();
    assert!(f.parity_defect(Parity::OddX2) == 0.0 && f.parity_defect(Parity::OddX1) == 0.0);
    let exact = 1.0 / (20.0 * spec.k * spec.delta * spec.l.sqrt());
    assert!(f.max_abs() <= exact * (1.0 + 1e-12));
    assert!(rel_err(f.max_abs(), exact) <= 2.0 / spec.k);
    let (g1, g2) = gradient(&f);
    let grad = (lebesgue_norm(&g1, Lp::Two).powi(2) + lebesgue_norm(&g2, Lp::Two).powi(2)).sqrt();
    assert!(grad <= spec.gradient_bound() * (1.0 + 1e-6));
    let resolved = eta(spec.k0().max(96.0));
    assert!(resolved.gradient_bound() <= resolved.l.powf(-0.5) * (1.0 + 1e-12));
}

#[test]
fn eta0_doubling_k_halves_l2() {
    let grid = Grid::new(512, 0.5).unwrap();
    let a = lebesgue_norm(&make_eta0(&eta(48.0), &grid).unwrap(), Lp::Two);
    let b = lebesgue_norm(&make_eta0(&eta(96.0), &grid).unwrap(), Lp::Two);
    assert!((b / a - 0.5).abs() < 0.05 * 0.5, "{}", b / a);
}

#[test]
fn eta0_rejects_unresolvable_k() {
    let grid = Grid::new(128, 0.5).unwrap();
    assert!(make_eta0(&eta(200.0), &grid).is_err());
}

#[test]
fn translate_sum_geometry() {
    let grid = Grid::new(1024, 32.0).unwrap();
    let rho = make_rho(&RhoSpec { sigma: 0.25, contraction: 1.0 }, &grid).unwrap();
    let one = translate_sum(&[(rho.clone(), [0.0, 0.0])]).unwrap();
    assert_eq!(one.field, rho);
    assert!(!one.overlap);
    let two = translate_sum(&[(rho.clone(), [-4.0, 0.0]), (rho.clone(), [4.0, 0.0])]).unwrap();
    assert!(!two.overlap);
    let l1 = lebesgue_norm(&rho, Lp::One);
    assert!((lebesgue_norm(&two.field, Lp::One) - 2.0 * l1).abs() < 1e-12 * l1);
    assert_eq!(two.field.max_abs(), rho.max_abs());

    let small = Grid::new(128, 4.0).unwrap();
    let rho = make_rho(&RhoSpec { sigma: 0.25, contraction: 1.0 }, &small).unwrap();
    assert!(matches!(
        translate_sum(&[(rho.clone(), [-4.0, 0.0]), (rho, [4.0, 0.0])]),
        Err(DataError::OutOfBox)
    ));
}
