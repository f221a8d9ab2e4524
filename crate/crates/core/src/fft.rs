//! Square 2D complex FFTs over row-major buffers.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

/// Number of columns gathered per batch in the column pass.
const COLUMN_BATCH: usize = 16;

pub(crate) struct Fft2 {
    n: usize,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl Fft2 {
    /// Shared plan for an `n × n` transform.
    pub(crate) fn shared(n: usize) -> Arc<Fft2> {
        static PLANS: OnceLock<Mutex<HashMap<usize, Arc<Fft2>>>> = OnceLock::new();
        let plans = PLANS.get_or_init(|| Mutex::new(HashMap::new()));
        let mut plans = plans.lock().unwrap_or_else(|e| e.into_inner());
        plans
            .entry(n)
            .or_insert_with(|| {
                let mut planner = FftPlanner::new();
                Arc::new(Fft2 {
                    n,
                    forward: planner.plan_fft_forward(n),
                    inverse: planner.plan_fft_inverse(n),
                })
            })
            .clone()
    }

    /// Unnormalized forward DFT, `F[m] = Σ f[j] e^{-2πi m·j/n}`.
    pub(crate) fn forward(&self, data: &mut [Complex64]) {
        self.run(&*self.forward, data);
    }

    /// Normalized inverse, so that `inverse(forward(f)) = f`.
    pub(crate) fn inverse(&self, data: &mut [Complex64]) {
        self.run(&*self.inverse, data);
        let scale = 1.0 / (self.n * self.n) as f64;
        for z in data.iter_mut() {
            *z *= scale;
        }
    }

    fn run(&self, plan: &dyn Fft<f64>, data: &mut [Complex64]) {
        let n = self.n;
        assert_eq!(data.len(), n * n, "buffer does not match the plan size");
        let mut scratch = vec![Complex64::new(0.0, 0.0); plan.get_inplace_scratch_len()];
        plan.process_with_scratch(data, &mut scratch);

        let mut block = vec![Complex64::new(0.0, 0.0); COLUMN_BATCH * n];
        let mut c0 = 0;
        while c0 < n {
            let width = COLUMN_BATCH.min(n - c0);
            for i in 0..n {
                let row = &data[i * n + c0..i * n + c0 + width];
                for (b, &z) in row.iter().enumerate() {
                    block[b * n + i] = z;
                }
            }
            plan.process_with_scratch(&mut block[..width * n], &mut scratch);
            for i in 0..n {
                let row = &mut data[i * n + c0..i * n + c0 + width];
                for (b, z) in row.iter_mut().enumerate() {
                    *z = block[b * n + i];
                }
            }
            c0 += width;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_single_mode() {
        let n = 16;
        let plan = Fft2::shared(n);
        let mut data: Vec<Complex64> = (0..n * n)
            .map(|j| Complex64::new((j as f64 * 0.37).sin(), 0.0))
            .collect();
        let original = data.clone();
        plan.forward(&mut data);
        plan.inverse(&mut data);
        for (a, b) in data.iter().zip(&original) {
            assert!((a - b).norm() < 1e-13);
        }

        // e^{2πi (2 i + 3 j)/n} has all its energy in mode (2, 3).
        let mut wave: Vec<Complex64> = (0..n * n)
            .map(|idx| {
                let (i, j) = (idx / n, idx % n);
                let phase = 2.0 * std::f64::consts::PI * (2 * i + 3 * j) as f64 / n as f64;
                Complex64::from_polar(1.0, phase)
            })
            .collect();
        plan.forward(&mut wave);
        for (idx, z) in wave.iter().enumerate() {
            let expected = if idx == 2 * n + 3 { (n * n) as f64 } else { 0.0 };
            assert!((z.re - expected).abs() < 1e-9 && z.im.abs() < 1e-9);
        }
    }
}
