//! Periodic pseudo-spectral fields on `[-ℓ, ℓ)²` and the regularized
//! Biot–Savart operator.
//!
//! Spectral data is the raw DFT `F` of the samples. The continuum Fourier
//! transform `f̂(k) = ∫ f e^{-ik·x} dx` is recovered as `h² (-1)^{m₁+m₂} F[m]`
//! because the first node sits at `-ℓ`. Multipliers are real and even, so the
//! phase factor never matters for them; it only enters point evaluation.

use std::f64::consts::{E, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fft::Fft2;

/// Mean-mode tolerance relative to `‖ω‖₂`.
pub const MEAN_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectralError {
    #[error("grid size {0} must be a power of two and at least 16")]
    BadGridSize(usize),
    #[error("box half-width {0} must be positive and finite")]
    BadBox(f64),
    #[error("gamma must be positive and finite, got {0}")]
    BadGamma(f64),
    #[error("field has nonzero mean mode |ω̂(0)| = {mean:e} (‖ω‖₂ = {l2:e})")]
    NonZeroMean { mean: f64, l2: f64 },
    #[error("negative-order Sobolev norm of a field with nonzero mean")]
    NegativeOrderOnMean,
    #[error("fields live on different grids")]
    GridMismatch,
}

/// Which regularizing multiplier `T_γ` is active.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RegKind {
    /// `ln^{-γ}(e + |k|²)`
    LogLaplacian,
    /// `ln^{-γ}(e + |k|)`
    LogGradient,
    /// `T = I`, i.e. the Euler equations.
    Identity,
}

impl RegKind {
    pub fn code(self) -> u8 {
        match self {
            RegKind::LogLaplacian => 0,
            RegKind::LogGradient => 1,
            RegKind::Identity => 2,
        }
    }

    pub fn from_code(code: u8) -> Option<Self> {
        match code {
            0 => Some(RegKind::LogLaplacian),
            1 => Some(RegKind::LogGradient),
            2 => Some(RegKind::Identity),
            _ => None,
        }
    }
}

/// Exponent `γ > 0` of the multiplier.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Gamma(f64);

impl Gamma {
    pub fn new(value: f64) -> Result<Self, SpectralError> {
        if value > 0.0 && value.is_finite() {
            Ok(Gamma(value))
        } else {
            Err(SpectralError::BadGamma(value))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// True outside the regime `γ ≤ 1/2` where ill-posedness is expected.
    pub fn outside_critical_regime(self) -> bool {
        self.0 > 0.5
    }
}

impl TryFrom<f64> for Gamma {
    type Error = SpectralError;
    fn try_from(value: f64) -> Result<Self, Self::Error> {
        Gamma::new(value)
    }
}

impl From<Gamma> for f64 {
    fn from(g: Gamma) -> f64 {
        g.0
    }
}

/// A multiplier kind together with its exponent.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Regularization {
    pub kind: RegKind,
    pub gamma: Gamma,
}

impl Regularization {
    pub fn new(kind: RegKind, gamma: Gamma) -> Self {
        Regularization { kind, gamma }
    }

    pub fn euler() -> Self {
        Regularization {
            kind: RegKind::Identity,
            gamma: Gamma(1.0),
        }
    }

    /// Symbol `m` as a function of `|k|²`.
    pub fn symbol(&self, k2: f64) -> f64 {
        match self.kind {
            RegKind::LogLaplacian => (E + k2).ln().powf(-self.gamma.0),
            RegKind::LogGradient => (E + k2.sqrt()).ln().powf(-self.gamma.0),
            RegKind::Identity => 1.0,
        }
    }
}

/// Square periodic grid with `n` nodes per side on `[-ℓ, ℓ)²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    n: usize,
    box_half: f64,
}

impl Grid {
    pub fn new(n: usize, box_half: f64) -> Result<Self, SpectralError> {
        if n < 16 || !n.is_power_of_two() {
            return Err(SpectralError::BadGridSize(n));
        }
        if !(box_half > 0.0 && box_half.is_finite()) {
            return Err(SpectralError::BadBox(box_half));
        }
        Ok(Grid { n, box_half })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn box_half(&self) -> f64 {
        self.box_half
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.box_half / self.n as f64
    }

    pub fn len(&self) -> usize {
        self.n * self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Node coordinate `x_i = (i - n/2) h`, exactly antisymmetric under
    /// `i ↦ n - i`.
    pub fn coord(&self, i: usize) -> f64 {
        (i as f64 - (self.n / 2) as f64) * self.spacing()
    }

    pub fn point(&self, i: usize, j: usize) -> [f64; 2] {
        [self.coord(i), self.coord(j)]
    }

    /// Index of the origin.
    pub fn origin_index(&self) -> usize {
        self.n / 2
    }

    /// Index of `-x_i`.
    pub fn mirror(&self, i: usize) -> usize {
        (self.n - i) % self.n
    }

    /// Signed frequency index in `[-n/2, n/2)`.
    pub fn signed_index(&self, m: usize) -> i64 {
        let n = self.n as i64;
        let m = m as i64;
        if m >= n / 2 {
            m - n
        } else {
            m
        }
    }

    pub fn wavenumber(&self, m: usize) -> f64 {
        self.signed_index(m) as f64 * PI / self.box_half
    }

    /// Wavenumber used inside odd (derivative) symbols: zero at Nyquist.
    pub fn deriv_wavenumber(&self, m: usize) -> f64 {
        if m == self.n / 2 {
            0.0
        } else {
            self.wavenumber(m)
        }
    }

    /// Whether mode `m` survives the 2/3 dealiasing rule.
    pub fn dealias_keep(&self, m: usize) -> bool {
        3 * self.signed_index(m).unsigned_abs() < self.n as u64
    }

    /// Largest retained `|m̃|` under the 2/3 rule.
    pub fn dealias_band(&self) -> usize {
        (self.n - 1) / 3
    }

    /// Index of the node nearest to `x`, if `x` is (to round-off) a node.
    pub fn node_index(&self, x: f64) -> Option<usize> {
        let s = x / self.spacing() + (self.n / 2) as f64;
        let r = s.round();
        if (s - r).abs() > 1e-9 || r < 0.0 || r >= self.n as f64 {
            None
        } else {
            Some(r as usize)
        }
    }
}

/// Real scalar field sampled on a grid, with its spectral coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct Field {
    grid: Grid,
    values: Vec<f64>,
    spectral: Vec<Complex64>,
}

impl Field {
    pub fn zeros(grid: Grid) -> Self {
        Field {
            grid,
            values: vec![0.0; grid.len()],
            spectral: vec![Complex64::new(0.0, 0.0); grid.len()],
        }
    }

    /// Builds a field from row-major samples (`values[i*n + j]` at `(x_i, x_j)`).
    pub fn from_values(grid: Grid, values: Vec<f64>) -> Self {
        assert_eq!(values.len(), grid.len(), "sample count does not match grid");
        let mut spectral: Vec<Complex64> =
            values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        Fft2::shared(grid.n()).forward(&mut spectral);
        Field {
            grid,
            values,
            spectral,
        }
    }

    pub fn from_fn(grid: Grid, f: impl Fn(f64, f64) -> f64) -> Self {
        let n = grid.n();
        let mut values = Vec::with_capacity(grid.len());
        for i in 0..n {
            let x1 = grid.coord(i);
            for j in 0..n {
                values.push(f(x1, grid.coord(j)));
            }
        }
        Field::from_values(grid, values)
    }

    /// Builds a field from DFT coefficients of a real function.
    pub fn from_spectral(grid: Grid, spectral: Vec<Complex64>) -> Self {
        assert_eq!(spectral.len(), grid.len(), "coefficient count does not match grid");
        let mut buf = spectral.clone();
        Fft2::shared(grid.n()).inverse(&mut buf);
        let values = buf.iter().map(|z| z.re).collect();
        Field {
            grid,
            values,
            spectral,
        }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn spectral(&self) -> &[Complex64] {
        &self.spectral
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.grid.n() + j]
    }

    /// `∫ f dx`, i.e. the continuum mean mode `f̂(0)`.
    pub fn integral(&self) -> f64 {
        let h = self.grid.spacing();
        h * h * self.spectral[0].re
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn scaled(&self, c: f64) -> Field {
        Field {
            grid: self.grid,
            values: self.values.iter().map(|v| c * v).collect(),
            spectral: self.spectral.iter().map(|z| z * c).collect(),
        }
    }

    pub fn add(&self, other: &Field) -> Result<Field, SpectralError> {
        if self.grid != other.grid {
            return Err(SpectralError::GridMismatch);
        }
        Ok(Field {
            grid: self.grid,
            values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(),
            spectral: self
                .spectral
                .iter()
                .zip(&other.spectral)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Field) -> Result<Field, SpectralError> {
        self.add(&other.scaled(-1.0))
    }

    /// Projection onto the modes kept by the 2/3 rule.
    pub fn dealiased(&self) -> Field {
        let grid = self.grid;
        let n = grid.n();
        let mut spec = self.spectral.clone();
        for m1 in 0..n {
            for m2 in 0..n {
                if !(grid.dealias_keep(m1) && grid.dealias_keep(m2)) {
                    spec[m1 * n + m2] = Complex64::new(0.0, 0.0);
                }
            }
        }
        Field::from_spectral(grid, spec)
    }

    /// Largest `|f(s(x)) - σ f(x)|` relative to `‖f‖∞` for a reflection `s`
    /// and expected sign `σ`.
    pub fn parity_defect(&self, parity: Parity) -> f64 {
        let n = self.grid.n();
        let scale = self.max_abs();
        if scale == 0.0 {
            return 0.0;
        }
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                let (ri, rj, sign) = match parity {
                    Parity::OddX1 => (self.grid.mirror(i), j, -1.0),
                    Parity::OddX2 => (i, self.grid.mirror(j), -1.0),
                    Parity::EvenX1 => (self.grid.mirror(i), j, 1.0),
                    Parity::EvenX2 => (i, self.grid.mirror(j), 1.0),
                };
                let d = self.value(ri, rj) - sign * self.value(i, j);
                worst = worst.max(d.abs());
            }
        }
        worst / scale
    }

    /// Odd in both coordinates to relative tolerance `tol`.
    pub fn is_odd_odd(&self, tol: f64) -> bool {
        self.parity_defect(Parity::OddX1) <= tol && self.parity_defect(Parity::OddX2) <= tol
    }

    /// Checks the mean-mode precondition of `∇⊥Δ⁻¹`.
    pub fn check_zero_mean(&self) -> Result<(), SpectralError> {
        let mean = self.integral().abs();
        let l2 = lebesgue_norm(self, Lp::Two);
        if mean > MEAN_TOLERANCE * l2 {
            Err(SpectralError::NonZeroMean { mean, l2 })
        } else {
            Ok(())
        }
    }

    /// Point value of the trigonometric interpolant at an arbitrary `x`.
    pub fn eval_at(&self, x: [f64; 2]) -> f64 {
        SpectralPoint::new(&self.grid, x, (self.grid.n() / 2).saturating_sub(1))
            .eval(&self.spectral, [0, 0])
    }
}

/// Reflection symmetry classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    OddX1,
    OddX2,
    EvenX1,
    EvenX2,
}

/// Lebesgue exponents supported by [`lebesgue_norm`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Lp {
    One,
    Two,
    Four,
    Infinity,
}

/// Grid quadrature of `‖f‖_p`, or the sample maximum for `p = ∞`.
pub fn lebesgue_norm(f: &Field, p: Lp) -> f64 {
    let h2 = f.grid.spacing().powi(2);
    let v = f.values();
    match p {
        Lp::One => h2 * v.iter().map(|x| x.abs()).sum::<f64>(),
        Lp::Two => (h2 * v.iter().map(|x| x * x).sum::<f64>()).sqrt(),
        Lp::Four => (h2 * v.iter().map(|x| x.powi(4)).sum::<f64>()).powf(0.25),
        Lp::Infinity => f.max_abs(),
    }
}

/// Discrete homogeneous `Ḣ^s` norm, `(h²/n²) Σ |k|^{2s} |F|²`.
pub fn sobolev_norm(f: &Field, s: f64) -> Result<f64, SpectralError> {
    let grid = f.grid;
    let n = grid.n();
    if s < 0.0 && f.integral().abs() > MEAN_TOLERANCE * lebesgue_norm(f, Lp::Two) {
        return Err(SpectralError::NegativeOrderOnMean);
    }
    let k2 = squared_wavenumbers(&grid);
    let mut sum = 0.0;
    for (idx, z) in f.spectral.iter().enumerate() {
        let weight = if s == 0.0 {
            1.0
        } else if idx == 0 {
            0.0
        } else {
            k2[idx].powf(s)
        };
        sum += weight * z.norm_sqr();
    }
    let h = grid.spacing();
    Ok((h * h * sum).sqrt() / n as f64)
}

/// `|k|²` for every mode, row-major.
pub fn squared_wavenumbers(grid: &Grid) -> Vec<f64> {
    let n = grid.n();
    let k: Vec<f64> = (0..n).map(|m| grid.wavenumber(m)).collect();
    let mut out = Vec::with_capacity(n * n);
    for &k1 in &k {
        for &k2 in &k {
            out.push(k1 * k1 + k2 * k2);
        }
    }
    out
}

/// `T_γ f`, the even real symbol applied to every mode including Nyquist.
pub fn apply_multiplier(f: &Field, reg: Regularization) -> Field {
    if reg.kind == RegKind::Identity {
        return f.clone();
    }
    let k2 = squared_wavenumbers(&f.grid);
    let spec = f
        .spectral
        .iter()
        .zip(&k2)
        .map(|(z, &q)| z * reg.symbol(q))
        .collect();
    Field::from_spectral(f.grid, spec)
}

/// Spectral coefficients of the stream function `ψ = Δ⁻¹T_γω` (zero mean).
pub fn stream_function_spectrum(omega: &Field, reg: Regularization) -> Vec<Complex64> {
    let symbols = stream_symbols(&omega.grid, reg);
    omega
        .spectral
        .iter()
        .zip(&symbols)
        .map(|(z, s)| z * *s)
        .collect()
}

/// `-m(k)/|k|²` per mode, zero at `k = 0`.
pub fn stream_symbols(grid: &Grid, reg: Regularization) -> Vec<f64> {
    squared_wavenumbers(grid)
        .into_iter()
        .map(|q| if q == 0.0 { 0.0 } else { -reg.symbol(q) / q })
        .collect()
}

/// `u = ∇⊥Δ⁻¹T_γω` with `∇⊥ = (-∂₂, ∂₁)`.
pub fn biot_savart(omega: &Field, reg: Regularization) -> Result<(Field, Field), SpectralError> {
    omega.check_zero_mean()?;
    let psi = stream_function_spectrum(omega, reg);
    let grid = omega.grid;
    let u1 = derivative_spectrum(&grid, &psi, [0, 1]).map(|z| -z);
    let u2 = derivative_spectrum(&grid, &psi, [1, 0]);
    Ok((
        Field::from_spectral(grid, u1.collect()),
        Field::from_spectral(grid, u2.collect()),
    ))
}

/// The four entries `∂_j u_i` of the velocity gradient, as
/// `[[∂₁u₁, ∂₂u₁], [∂₁u₂, ∂₂u₂]]`.
pub fn velocity_gradient(
    omega: &Field,
    reg: Regularization,
) -> Result<[[Field; 2]; 2], SpectralError> {
    omega.check_zero_mean()?;
    let psi = stream_function_spectrum(omega, reg);
    let grid = omega.grid;
    let d = |order: [u32; 2], sign: f64| {
        Field::from_spectral(
            grid,
            derivative_spectrum(&grid, &psi, order).map(|z| z * sign).collect(),
        )
    };
    let a = d([1, 1], -1.0);
    let b = d([0, 2], -1.0);
    let c = d([2, 0], 1.0);
    let minus_a = a.scaled(-1.0);
    Ok([[a, b], [c, minus_a]])
}

/// `∂₁^{α₁}∂₂^{α₂}` applied to spectral data, Nyquist zeroed in odd factors.
pub fn derivative_spectrum<'a>(
    grid: &'a Grid,
    spec: &'a [Complex64],
    order: [u32; 2],
) -> impl Iterator<Item = Complex64> + 'a {
    let n = grid.n();
    spec.iter().enumerate().map(move |(idx, z)| {
        let (m1, m2) = (idx / n, idx % n);
        z * derivative_factor(grid, m1, order[0]) * derivative_factor(grid, m2, order[1])
    })
}

fn derivative_factor(grid: &Grid, m: usize, order: u32) -> Complex64 {
    let k = if order % 2 == 1 {
        grid.deriv_wavenumber(m)
    } else {
        grid.wavenumber(m)
    };
    Complex64::new(0.0, k).powu(order)
}

/// Gradient `(∂₁f, ∂₂f)`.
pub fn gradient(f: &Field) -> (Field, Field) {
    let grid = f.grid;
    (
        Field::from_spectral(grid, derivative_spectrum(&grid, &f.spectral, [1, 0]).collect()),
        Field::from_spectral(grid, derivative_spectrum(&grid, &f.spectral, [0, 1]).collect()),
    )
}

/// Axis of a second-order Riesz transform.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X1,
    X2,
}

/// Spectral symbols of `R_ij T_γ`, i.e. `-k_i k_j |k|^{-2} m(k)`.
pub fn riesz_symbols(grid: &Grid, i: Axis, j: Axis, reg: Regularization) -> Vec<f64> {
    let n = grid.n();
    let mut out = Vec::with_capacity(n * n);
    for m1 in 0..n {
        for m2 in 0..n {
            let q = grid.wavenumber(m1).powi(2) + grid.wavenumber(m2).powi(2);
            if q == 0.0 {
                out.push(0.0);
                continue;
            }
            let num = match (i, j) {
                (Axis::X1, Axis::X1) => grid.wavenumber(m1).powi(2),
                (Axis::X2, Axis::X2) => grid.wavenumber(m2).powi(2),
                _ => grid.deriv_wavenumber(m1) * grid.deriv_wavenumber(m2),
            };
            out.push(-num / q * reg.symbol(q));
        }
    }
    out
}

/// `R_ij T_γ ω` for zero-mean `ω`.
pub fn riesz_second(
    omega: &Field,
    i: Axis,
    j: Axis,
    reg: Regularization,
) -> Result<Field, SpectralError> {
    omega.check_zero_mean()?;
    let symbols = riesz_symbols(&omega.grid, i, j, reg);
    let spec = omega
        .spectral
        .iter()
        .zip(&symbols)
        .map(|(z, s)| z * *s)
        .collect();
    Ok(Field::from_spectral(omega.grid, spec))
}

/// Phase tables for summing a Fourier series at one off-grid point.
///
/// Only modes with `|m̃| ≤ band` in each direction enter the sum.
pub struct SpectralPoint {
    n: usize,
    rows: Vec<(usize, Complex64, f64)>,
    cols: Vec<(usize, Complex64, f64)>,
}

impl SpectralPoint {
    pub fn new(grid: &Grid, x: [f64; 2], band: usize) -> Self {
        let n = grid.n();
        let ell = grid.box_half();
        let table = |xc: f64| {
            let mut out = Vec::with_capacity(2 * band + 1);
            for m in 0..n {
                let s = grid.signed_index(m);
                if s.unsigned_abs() as usize > band {
                    continue;
                }
                let k = grid.wavenumber(m);
                let phase = PI * s as f64 * (xc + ell) / ell;
                out.push((m, Complex64::from_polar(1.0, phase), k));
            }
            out
        };
        SpectralPoint {
            n,
            rows: table(x[0]),
            cols: table(x[1]),
        }
    }

    /// Value of `∂^α f` at the point from DFT coefficients `spec`.
    pub fn eval(&self, spec: &[Complex64], order: [u32; 2]) -> f64 {
        self.eval_many(spec, &[order])[0]
    }

    /// Several derivatives at once, sharing the row sums.
    pub fn eval_many(&self, spec: &[Complex64], orders: &[[u32; 2]]) -> Vec<f64> {
        let n = self.n;
        let max_col = orders.iter().map(|o| o[1]).max().unwrap_or(0) as usize;
        let mut out = vec![0.0; orders.len()];
        let mut col_sums = vec![Complex64::new(0.0, 0.0); max_col + 1];
        for &(m1, e1, k1) in &self.rows {
            col_sums.iter_mut().for_each(|z| *z = Complex64::new(0.0, 0.0));
            let row = &spec[m1 * n..(m1 + 1) * n];
            for &(m2, e2, k2) in &self.cols {
                let base = row[m2] * e2;
                let mut factor = Complex64::new(1.0, 0.0);
                for s in col_sums.iter_mut() {
                    *s += base * factor;
                    factor *= Complex64::new(0.0, k2);
                }
            }
            for (o, order) in out.iter_mut().zip(orders) {
                let f1 = Complex64::new(0.0, k1).powu(order[0]);
                *o += (e1 * f1 * col_sums[order[1] as usize]).re;
            }
        }
        let scale = 1.0 / (n * n) as f64;
        out.iter_mut().for_each(|v| *v *= scale);
        out
    }
}
