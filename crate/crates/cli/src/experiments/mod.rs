//! Drivers for the canonical studies.

pub mod inflate;
pub mod kernels;
pub mod lld;
pub mod patch;
pub mod report;
pub mod sweep;

use logeuler_core::Grid;

/// `{2^{-j}}` coordinates strictly inside the inner half of the box and no
/// finer than `min`.
pub(crate) fn dyadic_coords(grid: &Grid, min: f64) -> Vec<f64> {
    let inner = 0.5 * grid.box_half();
    let mut v: Vec<f64> = (0..40)
        .map(|j| 2f64.powi(-j))
        .filter(|&c| c < inner && c >= min)
        .collect();
    v.sort_by(f64::total_cmp);
    v
}

/// The origin (when `with_origin`) plus the first-quadrant product lattice of `coords`.
pub(crate) fn lattice_seeds(coords: &[f64], with_origin: bool) -> Vec<[f64; 2]> {
    let mut seeds = Vec::new();
    if with_origin {
        seeds.push([0.0, 0.0]);
    }
    for &a in coords {
        for &b in coords {
            seeds.push([a, b]);
        }
    }
    seeds
}
