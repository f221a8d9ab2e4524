#![allow(dead_code)]

use std::f64::consts::{E, PI};

use logeuler_core::{Field, Grid, RegKind};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Inverse Fourier transform of `-k₁k₂|k|⁻² m(k)` evaluated pointwise.
///
/// The integral over the dual of a periodic box `[-ℓ, ℓ)²` is replaced by the
/// Riemann sum on its lattice `(π/ℓ)ℤ²`, truncated at `|k_i| < nπ/(2ℓ)` and
/// damped by `exp(-36 (|k|/k_max)⁴)`. The symbol is odd in each variable, so
/// only the sine-sine part of `e^{ik·x}` survives and the sum runs over the
/// positive quadrant.
pub struct StrainOracle {
    n_half: usize,
    dk: f64,
    weights: Vec<f64>,
}

impl StrainOracle {
    pub fn new(n: usize, ell: f64, kind: RegKind, gamma: f64) -> Self {
        let n_half = n / 2;
        let dk = PI / ell;
        let k_max = dk * n_half as f64;
        let mut weights = vec![0.0; n_half * n_half];
        for a in 1..n_half {
            let k1 = a as f64 * dk;
            for b in 1..n_half {
                let k2 = b as f64 * dk;
                let k2sum = k1 * k1 + k2 * k2;
                let m = match kind {
                    RegKind::Identity => 1.0,
                    RegKind::LogLaplacian => (E + k2sum).ln().powf(-gamma),
                    RegKind::LogGradient => (E + k2sum.sqrt()).ln().powf(-gamma),
                };
                let filter = (-36.0 * (k2sum.sqrt() / k_max).powi(4)).exp();
                weights[a * n_half + b] = k1 * k2 / k2sum * m * filter;
            }
        }
        StrainOracle { n_half, dk, weights }
    }

    pub fn eval(&self, x: [f64; 2]) -> f64 {
        let nh = self.n_half;
        let s1: Vec<f64> = (0..nh).map(|a| (a as f64 * self.dk * x[0]).sin()).collect();
        let s2: Vec<f64> = (0..nh).map(|b| (b as f64 * self.dk * x[1]).sin()).collect();
        let mut total = 0.0;
        for a in 1..nh {
            let row = &self.weights[a * nh..(a + 1) * nh];
            let inner: f64 = row.iter().zip(&s2).map(|(w, s)| w * s).sum();
            total += s1[a] * inner;
        }
        // 4 quadrants, (dk/2π)² measure; the minus signs of the symbol and of
        // i² cancel.
        4.0 * total * (self.dk / (2.0 * PI)).powi(2)
    }
}

/// Deterministic points on the annulus `r_min ≤ |x| ≤ r_max`, away from the axes.
pub fn annulus_points(count: usize, r_min: f64, r_max: f64, seed: u64) -> Vec<[f64; 2]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let r = r_min * (r_max / r_min).powf(rng.gen::<f64>());
            let th = rng.gen_range(0.15..(PI / 2.0 - 0.15));
            [r * th.cos(), r * th.sin()]
        })
        .collect()
}

/// A smooth random field, band-limited to a few modes, with zero mean.
pub fn random_field(grid: Grid, rng: &mut ChaCha8Rng) -> Field {
    let ell = grid.box_half();
    let modes: Vec<(f64, f64, f64, f64)> = (0..6)
        .map(|_| {
            let k1 = rng.gen_range(-6i32..=6) as f64 * PI / ell;
            let k2 = rng.gen_range(-6i32..=6) as f64 * PI / ell;
            (k1, k2, rng.gen_range(-1.0..1.0), rng.gen_range(0.0..2.0 * PI))
        })
        .collect();
    let base = Field::from_fn(grid, |x1, x2| {
        modes
            .iter()
            .map(|&(k1, k2, a, p)| a * (k1 * x1 + k2 * x2 + p).cos())
            .sum()
    });
    // Add a localized spike so that the sup and L¹ norms are not trivial.
    let c = [rng.gen_range(-0.5..0.5) * ell, rng.gen_range(-0.5..0.5) * ell];
    let w = 0.1 * ell;
    let amp = rng.gen_range(-3.0..3.0);
    let spike = Field::from_fn(grid, |x1, x2| {
        amp * (-((x1 - c[0]).powi(2) + (x2 - c[1]).powi(2)) / (w * w)).exp()
    });
    let f = base.add(&spike).unwrap();
    let mean = f.integral() / (2.0 * ell).powi(2);
    Field::from_values(grid, f.values().iter().map(|v| v - mean).collect())
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}
