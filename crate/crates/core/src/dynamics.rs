//! RK4 pseudo-spectral integration of `∂_t ω + u·∇ω = 0` with Lagrangian
//! tracking.
//!
//! Characteristics `φ(x_i, t)` and their Jacobians `Dφ` are advanced inside the
//! same Runge–Kutta stages as the vorticity, so every stage evaluates the
//! velocity of exactly the stage vorticity. Velocities at particles come from
//! direct summation of the (dealiased) Fourier series of `ψ`.

use std::sync::Arc;

use num_complex::Complex64;
use thiserror::Error;

use crate::diagnostics::RunRecord;
use crate::fft::Fft2;
use crate::spectral::{
    riesz_symbols, stream_symbols, Axis, Field, Grid, Regularization, SpectralError, SpectralPoint,
};

type Mat2 = [[f64; 2]; 2];

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DynamicsError {
    #[error("time step {dt:e} exceeds the CFL limit {limit:e}")]
    CflViolation { dt: f64, limit: f64 },
    #[error("non-finite values at t = {t} (step {step})")]
    NanDetected { t: f64, step: u64 },
    #[error("seed {seed} reached ({x}, {y}), outside the inner half of the box")]
    ParticleEscaped { seed: usize, x: f64, y: f64 },
    #[error("vorticity is not odd in both variables (defect {0:e})")]
    ParityPrecondition(f64),
    #[error("states live on different grids or regularizations")]
    GridMismatch,
    #[error("not enough data: {0}")]
    InsufficientData(&'static str),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

/// Step-size policy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimePolicy {
    pub cfl: f64,
    pub dt_max: f64,
}

impl Default for TimePolicy {
    fn default() -> Self {
        TimePolicy {
            cfl: 0.5,
            dt_max: 0.05,
        }
    }
}

/// Vorticity at time `t`, possibly split into co-moving pieces whose sum
/// drives the velocity.
#[derive(Debug, Clone, PartialEq)]
pub struct SimState {
    grid: Grid,
    reg: Regularization,
    t: f64,
    step_count: u64,
    pieces: Vec<Vec<Complex64>>,
}

impl SimState {
    /// Initial state from one or more pieces, projected onto the dealiased band.
    pub fn new(reg: Regularization, pieces: &[Field]) -> Result<Self, DynamicsError> {
        let first = pieces.first().ok_or(DynamicsError::InsufficientData("no vorticity"))?;
        let grid = *first.grid();
        let keep: Vec<bool> = (0..grid.n()).map(|m| grid.dealias_keep(m)).collect();
        let n = grid.n();
        let mut total = Field::zeros(grid);
        let mut out = Vec::with_capacity(pieces.len());
        for p in pieces {
            if *p.grid() != grid {
                return Err(DynamicsError::GridMismatch);
            }
            total = total.add(p)?;
            let mut spec = p.spectral().to_vec();
            for (idx, z) in spec.iter_mut().enumerate() {
                if !(keep[idx / n] && keep[idx % n]) {
                    *z = ZERO;
                }
            }
            out.push(spec);
        }
        total.check_zero_mean()?;
        Ok(SimState {
            grid,
            reg,
            t: 0.0,
            step_count: 0,
            pieces: out,
        })
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn step_count(&self) -> u64 {
        self.step_count
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn reg(&self) -> Regularization {
        self.reg
    }

    pub fn n_pieces(&self) -> usize {
        self.pieces.len()
    }

    /// DFT coefficients of the total vorticity.
    pub fn spectrum(&self) -> Vec<Complex64> {
        let mut total = self.pieces[0].clone();
        for p in &self.pieces[1..] {
            for (a, b) in total.iter_mut().zip(p) {
                *a += b;
            }
        }
        total
    }

    pub fn vorticity(&self) -> Field {
        Field::from_spectral(self.grid, self.spectrum())
    }

    pub fn piece(&self, i: usize) -> Field {
        Field::from_spectral(self.grid, self.pieces[i].clone())
    }
}

/// Tracked characteristics and deformation matrices.
#[derive(Debug, Clone, PartialEq)]
pub struct FlowState {
    pub seeds: Vec<[f64; 2]>,
    pub positions: Vec<[f64; 2]>,
    pub deforms: Vec<Mat2>,
}

impl FlowState {
    pub fn new(seeds: Vec<[f64; 2]>) -> Self {
        let n = seeds.len();
        FlowState {
            positions: seeds.clone(),
            seeds,
            deforms: vec![[[1.0, 0.0], [0.0, 1.0]]; n],
        }
    }

    pub fn len(&self) -> usize {
        self.seeds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seeds.is_empty()
    }

    /// Operator 2-norm of each `Dφ`.
    pub fn deform_norms(&self) -> Vec<f64> {
        self.deforms.iter().map(op_norm).collect()
    }

    pub fn determinants(&self) -> Vec<f64> {
        self.deforms
            .iter()
            .map(|d| d[0][0] * d[1][1] - d[0][1] * d[1][0])
            .collect()
    }
}

/// Largest singular value of a 2×2 matrix.
pub fn op_norm(m: &Mat2) -> f64 {
    let [[a, b], [c, d]] = *m;
    let s = a * a + b * b + c * c + d * d;
    let det = a * d - b * c;
    let disc = (s * s - 4.0 * det * det).max(0.0).sqrt();
    ((s + disc) / 2.0).sqrt()
}

fn mat_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    [
        [
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
        ],
        [
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        ],
    ]
}

/// Velocity and velocity gradient at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    pub u: [f64; 2],
    pub du: Mat2,
}

struct Stage {
    psi: Vec<Complex64>,
    rates: Vec<Vec<Complex64>>,
    speed_max: f64,
}

/// Time stepper for one grid and regularization.
pub struct Solver {
    grid: Grid,
    reg: Regularization,
    policy: TimePolicy,
    psi: Vec<f64>,
    k: Vec<f64>,
    keep: Vec<bool>,
    plan: Arc<Fft2>,
}

impl Solver {
    pub fn new(grid: Grid, reg: Regularization, policy: TimePolicy) -> Self {
        let n = grid.n();
        Solver {
            grid,
            reg,
            policy,
            psi: stream_symbols(&grid, reg),
            k: (0..n).map(|m| grid.deriv_wavenumber(m)).collect(),
            keep: (0..n).map(|m| grid.dealias_keep(m)).collect(),
            plan: Fft2::shared(n),
        }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn reg(&self) -> Regularization {
        self.reg
    }

    pub fn policy(&self) -> TimePolicy {
        self.policy
    }

    fn check(&self, s: &SimState) -> Result<(), DynamicsError> {
        if s.grid != self.grid || s.reg != self.reg {
            Err(DynamicsError::GridMismatch)
        } else {
            Ok(())
        }
    }

    fn stream(&self, total: &[Complex64]) -> Vec<Complex64> {
        total.iter().zip(&self.psi).map(|(z, s)| z * *s).collect()
    }

    /// `u₁ + i u₂` on the grid.
    fn velocity_packed(&self, psi: &[Complex64]) -> Vec<Complex64> {
        let n = self.grid.n();
        let mut vel: Vec<Complex64> = psi
            .iter()
            .enumerate()
            .map(|(idx, z)| -z * Complex64::new(self.k[idx / n], self.k[idx % n]))
            .collect();
        self.plan.inverse(&mut vel);
        vel
    }

    fn rhs(&self, pieces: &[Vec<Complex64>]) -> Stage {
        let n = self.grid.n();
        let mut total = pieces[0].clone();
        for p in &pieces[1..] {
            for (a, b) in total.iter_mut().zip(p) {
                *a += b;
            }
        }
        let psi = self.stream(&total);
        let vel = self.velocity_packed(&psi);
        let speed_max = vel.iter().fold(0.0f64, |m, z| m.max(z.norm()));
        let rates = pieces
            .iter()
            .map(|p| {
                let mut grad: Vec<Complex64> = p
                    .iter()
                    .enumerate()
                    .map(|(idx, z)| z * Complex64::new(-self.k[idx % n], self.k[idx / n]))
                    .collect();
                self.plan.inverse(&mut grad);
                let mut adv: Vec<Complex64> = vel
                    .iter()
                    .zip(&grad)
                    .map(|(u, g)| Complex64::new(u.re * g.re + u.im * g.im, 0.0))
                    .collect();
                self.plan.forward(&mut adv);
                for (idx, z) in adv.iter_mut().enumerate() {
                    *z = if self.keep[idx / n] && self.keep[idx % n] {
                        -*z
                    } else {
                        ZERO
                    };
                }
                adv[0] = ZERO;
                adv
            })
            .collect();
        Stage {
            psi,
            rates,
            speed_max,
        }
    }

    /// Velocity and its gradient at `x` from stream-function coefficients.
    pub fn jet_from_stream(&self, psi: &[Complex64], x: [f64; 2]) -> Jet {
        let p = SpectralPoint::new(&self.grid, x, self.grid.dealias_band());
        let v = p.eval_many(psi, &[[1, 0], [0, 1], [2, 0], [1, 1], [0, 2]]);
        Jet {
            u: [-v[1], v[0]],
            du: [[-v[3], -v[4]], [v[2], v[3]]],
        }
    }

    /// Velocity and its gradient at `x` for the given state.
    pub fn jet(&self, s: &SimState, x: [f64; 2]) -> Jet {
        self.jet_from_stream(&self.stream(&s.spectrum()), x)
    }

    /// `max |u|` over the grid.
    pub fn max_speed(&self, s: &SimState) -> f64 {
        let vel = self.velocity_packed(&self.stream(&s.spectrum()));
        vel.iter().fold(0.0f64, |m, z| m.max(z.norm()))
    }

    /// Largest step allowed by the policy.
    pub fn stable_dt(&self, s: &SimState) -> f64 {
        self.dt_limit(self.max_speed(s)).min(self.policy.dt_max)
    }

    fn dt_limit(&self, speed: f64) -> f64 {
        self.policy.cfl * self.grid.spacing() / speed.max(1e-300)
    }

    /// One RK4 step of the vorticity alone.
    pub fn step(&self, s: &SimState, dt: f64) -> Result<SimState, DynamicsError> {
        self.step_with_flow(s, None, dt).map(|(s, _)| s)
    }

    /// Advances the tracked characteristics over one step; the vorticity
    /// stages are recomputed from `s`.
    pub fn advect_flow(
        &self,
        s: &SimState,
        flow: &FlowState,
        dt: f64,
    ) -> Result<FlowState, DynamicsError> {
        let (_, f) = self.step_with_flow(s, Some(flow), dt)?;
        Ok(f.expect("flow requested"))
    }

    /// One coupled RK4 step of vorticity and (optionally) flow map.
    pub fn step_with_flow(
        &self,
        s: &SimState,
        flow: Option<&FlowState>,
        dt: f64,
    ) -> Result<(SimState, Option<FlowState>), DynamicsError> {
        self.check(s)?;
        let axpy = |base: &[Vec<Complex64>], k: &[Vec<Complex64>], c: f64| -> Vec<Vec<Complex64>> {
            base.iter()
                .zip(k)
                .map(|(b, r)| b.iter().zip(r).map(|(x, y)| x + y * c).collect())
                .collect()
        };
        let flow_rates = |psi: &[Complex64], pos: &[[f64; 2]], def: &[Mat2]| {
            pos.iter()
                .zip(def)
                .map(|(&x, d)| {
                    let j = self.jet_from_stream(psi, x);
                    (j.u, mat_mul(&j.du, d))
                })
                .collect::<Vec<_>>()
        };
        let flow_axpy = |f: &FlowState, r: &[([f64; 2], Mat2)], c: f64| {
            let pos: Vec<[f64; 2]> = f
                .positions
                .iter()
                .zip(r)
                .map(|(x, (v, _))| [x[0] + c * v[0], x[1] + c * v[1]])
                .collect();
            let def: Vec<Mat2> = f
                .deforms
                .iter()
                .zip(r)
                .map(|(d, (_, m))| {
                    [
                        [d[0][0] + c * m[0][0], d[0][1] + c * m[0][1]],
                        [d[1][0] + c * m[1][0], d[1][1] + c * m[1][1]],
                    ]
                })
                .collect();
            (pos, def)
        };

        let s1 = self.rhs(&s.pieces);
        let limit = self.dt_limit(s1.speed_max);
        if dt > limit * (1.0 + 1e-12) {
            return Err(DynamicsError::CflViolation { dt, limit });
        }
        let f1 = flow.map(|f| flow_rates(&s1.psi, &f.positions, &f.deforms));

        let y2 = axpy(&s.pieces, &s1.rates, 0.5 * dt);
        let s2 = self.rhs(&y2);
        let f2 = flow.map(|f| {
            let (p, d) = flow_axpy(f, f1.as_ref().unwrap(), 0.5 * dt);
            flow_rates(&s2.psi, &p, &d)
        });
        drop(y2);

        let y3 = axpy(&s.pieces, &s2.rates, 0.5 * dt);
        let s3 = self.rhs(&y3);
        let f3 = flow.map(|f| {
            let (p, d) = flow_axpy(f, f2.as_ref().unwrap(), 0.5 * dt);
            flow_rates(&s3.psi, &p, &d)
        });
        drop(y3);

        let y4 = axpy(&s.pieces, &s3.rates, dt);
        let s4 = self.rhs(&y4);
        let f4 = flow.map(|f| {
            let (p, d) = flow_axpy(f, f3.as_ref().unwrap(), dt);
            flow_rates(&s4.psi, &p, &d)
        });
        drop(y4);

        let c = dt / 6.0;
        let pieces: Vec<Vec<Complex64>> = s
            .pieces
            .iter()
            .enumerate()
            .map(|(p, base)| {
                base.iter()
                    .enumerate()
                    .map(|(i, z)| {
                        z + (s1.rates[p][i]
                            + (s2.rates[p][i] + s3.rates[p][i]) * 2.0
                            + s4.rates[p][i])
                            * c
                    })
                    .collect()
            })
            .collect();
        let next = SimState {
            grid: s.grid,
            reg: s.reg,
            t: s.t + dt,
            step_count: s.step_count + 1,
            pieces,
        };
        if next.pieces.iter().flatten().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(DynamicsError::NanDetected {
                t: next.t,
                step: next.step_count,
            });
        }

        let next_flow = match flow {
            None => None,
            Some(f) => {
                let (r1, r2, r3, r4) = (f1.unwrap(), f2.unwrap(), f3.unwrap(), f4.unwrap());
                let mut out = f.clone();
                for i in 0..f.len() {
                    for a in 0..2 {
                        out.positions[i][a] +=
                            c * (r1[i].0[a] + 2.0 * (r2[i].0[a] + r3[i].0[a]) + r4[i].0[a]);
                        for b in 0..2 {
                            out.deforms[i][a][b] += c
                                * (r1[i].1[a][b]
                                    + 2.0 * (r2[i].1[a][b] + r3[i].1[a][b])
                                    + r4[i].1[a][b]);
                        }
                    }
                }
                let half = 0.5 * self.grid.box_half();
                for (seed, p) in out.positions.iter().enumerate() {
                    if !(p[0].is_finite() && p[1].is_finite()) {
                        return Err(DynamicsError::NanDetected {
                            t: next.t,
                            step: next.step_count,
                        });
                    }
                    if p[0].abs() > half || p[1].abs() > half {
                        return Err(DynamicsError::ParticleEscaped {
                            seed,
                            x: p[0],
                            y: p[1],
                        });
                    }
                }
                Some(out)
            }
        };
        Ok((next, next_flow))
    }

    /// Integrates to `horizon`, calling `observe(state, flow, is_final)` at the
    /// initial time and after every step.
    pub fn run<F>(
        &self,
        mut state: SimState,
        mut flow: Option<FlowState>,
        horizon: f64,
        mut observe: F,
    ) -> Result<(SimState, Option<FlowState>), DynamicsError>
    where
        F: FnMut(&SimState, Option<&FlowState>, bool) -> Result<(), DynamicsError>,
    {
        self.check(&state)?;
        let done = |t: f64| t >= horizon * (1.0 - 1e-12);
        observe(&state, flow.as_ref(), done(state.t))?;
        while !done(state.t) {
            let remaining = horizon - state.t;
            let mut dt = self.stable_dt(&state);
            let last = dt >= remaining * (1.0 - 1e-12);
            if last {
                dt = remaining;
            }
            let (mut next, next_flow) = self.step_with_flow(&state, flow.as_ref(), dt)?;
            if last {
                next.t = horizon;
            }
            state = next;
            flow = next_flow;
            observe(&state, flow.as_ref(), done(state.t))?;
        }
        Ok((state, flow))
    }
}

impl Solver {
    /// Steps through the prescribed times (all later than `state.t`), landing
    /// on each exactly. Used to replay the time grid of another run.
    pub fn follow<F>(
        &self,
        mut state: SimState,
        mut flow: Option<FlowState>,
        times: &[f64],
        mut observe: F,
    ) -> Result<(SimState, Option<FlowState>), DynamicsError>
    where
        F: FnMut(&SimState, Option<&FlowState>, bool) -> Result<(), DynamicsError>,
    {
        self.check(&state)?;
        observe(&state, flow.as_ref(), times.is_empty())?;
        for (i, &t) in times.iter().enumerate() {
            let dt = t - state.t;
            if !(dt > 0.0) {
                return Err(DynamicsError::InsufficientData("times must increase"));
            }
            let (mut next, next_flow) = self.step_with_flow(&state, flow.as_ref(), dt)?;
            next.t = t;
            state = next;
            flow = next_flow;
            observe(&state, flow.as_ref(), i + 1 == times.len())?;
        }
        Ok((state, flow))
    }
}

/// `λ(t) = -∂₁₂Δ⁻¹T_γ ω(0, t)`, the strain rate at the origin.
pub fn lambda_at_origin(s: &SimState) -> Result<f64, DynamicsError> {
    let omega = s.vorticity();
    let defect = parity_defect_odd_odd(&omega);
    if defect > 1e-8 {
        return Err(DynamicsError::ParityPrecondition(defect));
    }
    omega.check_zero_mean()?;
    Ok(lambda_unchecked(&s.grid, s.reg, &s.spectrum()))
}

/// Worst relative parity defect in either variable.
pub fn parity_defect_odd_odd(f: &Field) -> f64 {
    use crate::spectral::Parity;
    f.parity_defect(Parity::OddX1).max(f.parity_defect(Parity::OddX2))
}

pub(crate) fn lambda_unchecked(grid: &Grid, reg: Regularization, spec: &[Complex64]) -> f64 {
    let n = grid.n();
    let symbols = riesz_symbols(grid, Axis::X1, Axis::X2, reg);
    let mut sum = 0.0;
    for (idx, (z, s)) in spec.iter().zip(&symbols).enumerate() {
        let sign = if (grid.signed_index(idx / n) + grid.signed_index(idx % n)) % 2 == 0 {
            1.0
        } else {
            -1.0
        };
        sum += sign * s * z.re;
    }
    sum / (n * n) as f64
}

/// Empirical form of the Lagrangian-deformation lower bound
/// `∫₀ᵗ e^{-‖Dφ‖⁴} ≤ (CG)^{-1} ln(1 + CGt)`.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct GronwallReport {
    pub g: f64,
    pub t: Vec<f64>,
    pub dphi_max: Vec<f64>,
    pub lhs: Vec<f64>,
    /// Largest `C` with `lhs ≤ rhs(C)` at every recorded time.
    pub c_emp: f64,
    pub rhs_at_c_emp: Vec<f64>,
    /// `ln^{1/4}(CGt / ln(1 + CGt))` at `C = c_emp`.
    pub predicted_floor: Vec<f64>,
    pub max_dphi: f64,
}

/// `(CG)^{-1} ln(1 + CGt)`, continuous at `C = 0`.
pub fn gronwall_rhs(c: f64, g: f64, t: f64) -> f64 {
    let x = c * g * t;
    if x < 1e-12 {
        t * (1.0 - 0.5 * x)
    } else {
        t * x.ln_1p() / x
    }
}

pub fn gronwall_report(run: &RunRecord, g: f64) -> Result<GronwallReport, DynamicsError> {
    if run.rows.len() < 2 {
        return Err(DynamicsError::InsufficientData("fewer than two recorded times"));
    }
    if run.seeds.is_empty() {
        return Err(DynamicsError::InsufficientData("no tracked seeds"));
    }
    if !(g > 0.0) {
        return Err(DynamicsError::InsufficientData("G must be positive"));
    }
    let t: Vec<f64> = run.rows.iter().map(|r| r.t).collect();
    let dphi_max: Vec<f64> = run
        .rows
        .iter()
        .map(|r| r.dphi.iter().cloned().fold(0.0, f64::max))
        .collect();
    let mut lhs = vec![0.0; t.len()];
    for i in 1..t.len() {
        let a = (-dphi_max[i - 1].powi(4)).exp();
        let b = (-dphi_max[i].powi(4)).exp();
        lhs[i] = lhs[i - 1] + 0.5 * (t[i] - t[i - 1]) * (a + b);
    }
    let mut c_emp = f64::INFINITY;
    for i in 0..t.len() {
        if t[i] <= 0.0 || lhs[i] <= 0.0 {
            continue;
        }
        // rhs(C) decreases from t to 0 as C grows.
        if lhs[i] >= t[i] {
            c_emp = 0.0;
            break;
        }
        let (mut lo, mut hi) = (0.0f64, 1.0f64);
        while gronwall_rhs(hi, g, t[i]) >= lhs[i] && hi < 1e300 {
            lo = hi;
            hi *= 2.0;
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if gronwall_rhs(mid, g, t[i]) >= lhs[i] {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        c_emp = c_emp.min(lo);
    }
    let rhs_at_c_emp = t.iter().map(|&ti| gronwall_rhs(c_emp, g, ti)).collect();
    let predicted_floor = t
        .iter()
        .map(|&ti| {
            let x = c_emp * g * ti;
            if x > 0.0 && x.is_finite() {
                (x / x.ln_1p()).ln().max(0.0).powf(0.25)
            } else {
                0.0
            }
        })
        .collect();
    let max_dphi = dphi_max.iter().cloned().fold(0.0, f64::max);
    Ok(GronwallReport {
        g,
        t,
        dphi_max,
        lhs,
        c_emp,
        rhs_at_c_emp,
        predicted_floor,
        max_dphi,
    })
}

/// Sensitivity of characteristics to a velocity perturbation.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct FlowPerturbationReport {
    pub t: Vec<f64>,
    /// `max_i |φ̃ - φ| + ‖Dφ̃ - Dφ‖` over the seeds.
    pub flow_diff: Vec<f64>,
    /// `‖v‖_{W^{1,∞}} = ‖v‖∞ + ‖Dv‖∞` for `v = ũ - u`.
    pub v_w1inf: Vec<f64>,
    pub dv_inf: Vec<f64>,
    pub max_flow_diff: f64,
    pub max_v_w1inf: f64,
    pub max_dv_inf: f64,
    /// `max flow_diff / (max ‖v‖_{W^{1,∞}} · exp(max ‖Dv‖∞))`.
    pub ratio: f64,
}

impl Solver {
    /// Runs `base` and `perturbed` in lockstep and compares their flow maps.
    pub fn flow_perturbation_check(
        &self,
        base: SimState,
        perturbed: SimState,
        seeds: &[[f64; 2]],
        horizon: f64,
    ) -> Result<FlowPerturbationReport, DynamicsError> {
        self.check(&base)?;
        self.check(&perturbed)?;
        let (mut a, mut b) = (base, perturbed);
        let (mut fa, mut fb) = (FlowState::new(seeds.to_vec()), FlowState::new(seeds.to_vec()));
        let mut rep = FlowPerturbationReport {
            t: Vec::new(),
            flow_diff: Vec::new(),
            v_w1inf: Vec::new(),
            dv_inf: Vec::new(),
            max_flow_diff: 0.0,
            max_v_w1inf: 0.0,
            max_dv_inf: 0.0,
            ratio: 0.0,
        };
        loop {
            let diff: Vec<Complex64> = b.spectrum().iter().zip(a.spectrum()).map(|(x, y)| x - y).collect();
            let (v, dv) = self.w1inf_of(&diff);
            let mut fd: f64 = 0.0;
            for i in 0..seeds.len() {
                let dp = (fb.positions[i][0] - fa.positions[i][0])
                    .hypot(fb.positions[i][1] - fa.positions[i][1]);
                let m = [
                    [
                        fb.deforms[i][0][0] - fa.deforms[i][0][0],
                        fb.deforms[i][0][1] - fa.deforms[i][0][1],
                    ],
                    [
                        fb.deforms[i][1][0] - fa.deforms[i][1][0],
                        fb.deforms[i][1][1] - fa.deforms[i][1][1],
                    ],
                ];
                fd = fd.max(dp + op_norm(&m));
            }
            rep.t.push(a.t);
            rep.flow_diff.push(fd);
            rep.v_w1inf.push(v + dv);
            rep.dv_inf.push(dv);
            if a.t >= horizon * (1.0 - 1e-12) {
                break;
            }
            let mut dt = self.stable_dt(&a).min(self.stable_dt(&b));
            let remaining = horizon - a.t;
            let last = dt >= remaining * (1.0 - 1e-12);
            if last {
                dt = remaining;
            }
            let (na, nfa) = self.step_with_flow(&a, Some(&fa), dt)?;
            let (nb, nfb) = self.step_with_flow(&b, Some(&fb), dt)?;
            a = na;
            b = nb;
            if last {
                a.t = horizon;
                b.t = horizon;
            }
            fa = nfa.unwrap();
            fb = nfb.unwrap();
        }
        rep.max_flow_diff = rep.flow_diff.iter().cloned().fold(0.0, f64::max);
        rep.max_v_w1inf = rep.v_w1inf.iter().cloned().fold(0.0, f64::max);
        rep.max_dv_inf = rep.dv_inf.iter().cloned().fold(0.0, f64::max);
        let denom = rep.max_v_w1inf * rep.max_dv_inf.exp();
        rep.ratio = if denom > 0.0 { rep.max_flow_diff / denom } else { 0.0 };
        Ok(rep)
    }

    /// `(‖u‖∞, ‖Du‖∞)` of the velocity induced by vorticity coefficients.
    pub fn w1inf_of(&self, spec: &[Complex64]) -> (f64, f64) {
        let n = self.grid.n();
        let psi = self.stream(spec);
        let vel = self.velocity_packed(&psi);
        let speed = vel.iter().fold(0.0f64, |m, z| m.max(z.norm()));
        // Du = [[-ψ₁₂, -ψ₂₂], [ψ₁₁, ψ₁₂]]: pack (ψ₁₁ + iψ₂₂) and ψ₁₂.
        let mut diag: Vec<Complex64> = psi
            .iter()
            .enumerate()
            .map(|(idx, z)| {
                let (k1, k2) = (self.grid.wavenumber(idx / n), self.grid.wavenumber(idx % n));
                -z * Complex64::new(k1 * k1, k2 * k2)
            })
            .collect();
        let mut off: Vec<Complex64> = psi
            .iter()
            .enumerate()
            .map(|(idx, z)| -z * self.k[idx / n] * self.k[idx % n])
            .collect();
        self.plan.inverse(&mut diag);
        self.plan.inverse(&mut off);
        let mut grad: f64 = 0.0;
        for (d, o) in diag.iter().zip(&off) {
            let m = [[-o.re, -d.im], [d.re, o.re]];
            grad = grad.max(op_norm(&m));
        }
        (speed, grad)
    }
}
