//! Singular kernels of `-∂₁₂Δ⁻¹T_γ` and `∇⊥Δ⁻¹T_γ` by direct quadrature.
//!
//! Both multipliers are Γ-weighted superpositions of `(e + |k|²)^{-t}` or
//! `(e + |k|)^{-t}`, and each of those is a positive superposition of heat
//! (resp. Poisson) semigroups. Pushing the Euler kernels through the semigroup
//! gives exact radial profiles
//!
//! ```text
//! K₁₂(x) = x₁x₂/(π|x|⁴) · J_K(|x|),    H(x) = x⊥/(2π|x|²) · J_H(|x|),
//! J(r)   = ∫₀^∞ w_γ(t) I_t(r) dt,      w_γ(t) = t^{γ-1}/Γ(γ).
//! ```
//!
//! Since `∫ w_γ e^{-t} dt = 1` we evaluate `J = 1 - ∫ w_γ (e^{-t} - I_t)`, which
//! isolates the small correction to the Euler kernel and keeps the cancellation
//! out of the quadrature.

use std::f64::consts::{E, PI};

use statrs::function::gamma::{gamma, gamma_ur, ln_gamma};
use thiserror::Error;

use crate::quadrature::{Estimate, Integrator};
use crate::spectral::{Gamma, RegKind};

/// Radii for which the quadrature accuracy is certified.
pub const CERTIFIED_RANGE: (f64, f64) = (1e-3, 10.0);

#[derive(Debug, Error, Clone, PartialEq)]
pub enum KernelError {
    #[error("kernel not defined for multiplier kind {0:?}")]
    InvalidKind(RegKind),
    #[error("point ({0}, {1}) is not in the open first quadrant")]
    WrongQuadrant(f64, f64),
    #[error("kernel evaluated at the origin")]
    AtOrigin,
    #[error("invalid quadrature budget: {0}")]
    BadBudget(&'static str),
}

/// Tolerances for the nested quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureBudget {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_evals: usize,
    /// Truncation point of the outer Γ-integral.
    pub t_max: f64,
}

impl Default for QuadratureBudget {
    fn default() -> Self {
        QuadratureBudget {
            abs_tol: 1e-12,
            rel_tol: 1e-9,
            max_evals: 20_000,
            t_max: 50.0,
        }
    }
}

impl QuadratureBudget {
    pub fn validate(&self) -> Result<(), KernelError> {
        if !(self.abs_tol > 0.0 && self.rel_tol > 0.0) {
            return Err(KernelError::BadBudget("tolerances must be positive"));
        }
        if !(self.t_max >= 20.0) {
            return Err(KernelError::BadBudget("t_max must be at least 20"));
        }
        if self.max_evals < 42 {
            return Err(KernelError::BadBudget("max_evals too small"));
        }
        Ok(())
    }

    fn outer(&self) -> Integrator {
        Integrator::new(self.abs_tol, self.rel_tol, self.max_evals)
    }
}

/// A kernel evaluation request.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelQuery {
    pub x: [f64; 2],
    pub gamma: Gamma,
    pub kind: RegKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelFlag {
    Ok,
    /// The quadrature ran out of budget; the value is the best estimate.
    BudgetExceeded,
    /// `|x|` lies outside [`CERTIFIED_RANGE`].
    OutsideCertifiedRange,
}

impl KernelFlag {
    pub fn as_str(self) -> &'static str {
        match self {
            KernelFlag::Ok => "ok",
            KernelFlag::BudgetExceeded => "budget",
            KernelFlag::OutsideCertifiedRange => "range",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelValue {
    pub value: f64,
    pub err_est: f64,
    pub flag: KernelFlag,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelVector {
    pub value: [f64; 2],
    pub err_est: f64,
    pub flag: KernelFlag,
}

/// Which Euler kernel is pushed through the semigroup.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// `-∂₁₂Δ⁻¹`, profile `x₁x₂/(π|x|⁴)`.
    Strain,
    /// `∇⊥Δ⁻¹`, profile `x⊥/(2π|x|²)`.
    Velocity,
}

/// `E(b)`: the part of the Euler profile removed by the heat semigroup at
/// rescaled time `b = s/|x|²`.
fn heat_defect(family: Family, b: f64) -> f64 {
    let u = 0.25 / b;
    match family {
        Family::Strain => (-u).exp() * (1.0 + u),
        Family::Velocity => (-u).exp(),
    }
}

/// The same for the Poisson semigroup at rescaled time `β = s/|x|`.
fn poisson_defect(family: Family, beta: f64) -> f64 {
    let q = 1.0 + beta * beta;
    match family {
        Family::Strain => beta / q.sqrt() + beta / (2.0 * q * q.sqrt()),
        Family::Velocity => beta / q.sqrt(),
    }
}

/// The Poisson defect obtained by subordinating the heat defect numerically,
/// `π^{-1/2} ∫ τ^{-1/2} e^{-τ} E(β²/(4τ)·4) dτ` written with `τ = σ²`.
pub fn poisson_defect_subordinated(family: Family, beta: f64) -> f64 {
    let q = 1.0 / (beta * beta);
    let f = |s: f64| {
        let t = s * s;
        let e = (-t * (1.0 + q)).exp();
        match family {
            Family::Strain => e * (1.0 + q * t),
            Family::Velocity => e,
        }
    };
    let r = Integrator::new(1e-15, 1e-13, 100_000).integrate_pieces(f, &[0.0, 1.0, 8.0, 40.0]);
    2.0 / PI.sqrt() * r.value
}

/// Exact closed form of [`poisson_defect_subordinated`].
pub fn poisson_defect_closed(family: Family, beta: f64) -> f64 {
    poisson_defect(family, beta)
}

struct Profile {
    kind: RegKind,
    family: Family,
    r: f64,
}

impl Profile {
    /// `R_t = e^{-t} - I_t`, a log-domain integral over `s = ln b`.
    fn correction(&self, t: f64, inner: &Integrator, evals: &mut usize, worst: &mut f64) -> f64 {
        if t <= 0.0 {
            return 0.0;
        }
        let (power, c, s_lo) = match self.kind {
            RegKind::LogLaplacian => (2.0, E * self.r * self.r, (1.0f64 / 3000.0).ln()),
            _ => (1.0, E * self.r, -40.0),
        };
        let s_hi = ((2.0 * t + 60.0) / c).ln();
        if s_hi <= s_lo {
            return 0.0;
        }
        let lead = power * t * self.r.ln() - ln_gamma(t);
        let family = self.family;
        let kind = self.kind;
        let f = |s: f64| {
            let b = s.exp();
            let defect = match kind {
                RegKind::LogLaplacian => heat_defect(family, b),
                _ => poisson_defect(family, b),
            };
            if defect == 0.0 {
                return 0.0;
            }
            (lead + t * s - c * b).exp() * defect
        };
        let mut points = vec![s_lo];
        let s_peak = (t.max(1e-3) / c).ln();
        let s_turn = match kind {
            RegKind::LogLaplacian => 0.25f64.ln(),
            _ => 0.0,
        };
        for p in [s_turn.min(s_peak), s_turn.max(s_peak)] {
            if p > s_lo && p < s_hi && p > *points.last().unwrap() {
                points.push(p);
            }
        }
        points.push(s_hi);
        let est = inner.integrate_pieces(f, &points);
        *evals += est.evals;
        if est.value != 0.0 {
            *worst = worst.max(est.abs_err / est.value.abs());
        }
        if !est.converged {
            *worst = f64::INFINITY;
        }
        est.value
    }

    /// `J(r)` with an error estimate and a convergence flag.
    fn radial(&self, gamma: Gamma, budget: &QuadratureBudget) -> (f64, f64, bool) {
        let g = gamma.value();
        let inner = Integrator::new(1e-300, 1e-12, 50_000);
        let mut evals = 0usize;
        let mut worst = 0.0f64;
        let u_max = budget.t_max.powf(g);
        let mut points = vec![0.0];
        for t in [1e-2f64, 1e-1, 1.0, 10.0] {
            let u = t.powf(g);
            if u < u_max {
                points.push(u);
            }
        }
        points.push(u_max);
        let outer: Estimate = budget.outer().integrate_pieces(
            |u| self.correction(u.powf(1.0 / g), &inner, &mut evals, &mut worst),
            &points,
        );
        let norm = gamma_fn(g + 1.0);
        let tail = gamma_ur(g, budget.t_max);
        let correction = outer.value / norm;
        let err = outer.abs_err / norm + worst.min(1.0) * correction.abs() + tail;
        (1.0 - correction, err, outer.converged && worst.is_finite())
    }
}

fn gamma_fn(x: f64) -> f64 {
    gamma(x)
}

/// Radial profile `J(r)` of the given family and multiplier.
pub fn radial_profile(
    kind: RegKind,
    family: Family,
    gamma: Gamma,
    r: f64,
    budget: &QuadratureBudget,
) -> Result<KernelValue, KernelError> {
    budget.validate()?;
    if kind == RegKind::Identity {
        return Ok(KernelValue {
            value: 1.0,
            err_est: 0.0,
            flag: KernelFlag::Ok,
        });
    }
    if !(r > 0.0) {
        return Err(KernelError::AtOrigin);
    }
    let (value, err_est, converged) = Profile { kind, family, r }.radial(gamma, budget);
    Ok(KernelValue {
        value,
        err_est,
        flag: flag_for(r, converged),
    })
}

fn flag_for(r: f64, converged: bool) -> KernelFlag {
    if !converged {
        KernelFlag::BudgetExceeded
    } else if r < CERTIFIED_RANGE.0 || r > CERTIFIED_RANGE.1 {
        KernelFlag::OutsideCertifiedRange
    } else {
        KernelFlag::Ok
    }
}

fn strain_kernel(kind: RegKind, q: &KernelQuery, b: &QuadratureBudget) -> Result<KernelValue, KernelError> {
    if q.kind != kind {
        return Err(KernelError::InvalidKind(q.kind));
    }
    let [x1, x2] = q.x;
    let r = x1.hypot(x2);
    if r == 0.0 {
        return Err(KernelError::AtOrigin);
    }
    let j = radial_profile(kind, Family::Strain, q.gamma, r, b)?;
    let pre = x1 * x2 / (PI * r.powi(4));
    Ok(KernelValue {
        value: pre * j.value,
        err_est: pre.abs() * j.err_est,
        flag: j.flag,
    })
}

/// `K₁₂(x)`, the kernel of `-∂₁₂Δ⁻¹T_γ` for the log-Laplacian multiplier.
pub fn eval_k12(q: &KernelQuery, b: &QuadratureBudget) -> Result<KernelValue, KernelError> {
    strain_kernel(RegKind::LogLaplacian, q, b)
}

/// `K̃₁₂(x)`, the same for the log-gradient multiplier.
pub fn eval_k12_tilde(q: &KernelQuery, b: &QuadratureBudget) -> Result<KernelValue, KernelError> {
    strain_kernel(RegKind::LogGradient, q, b)
}

/// Strain kernel for whichever non-identity kind the query names.
pub fn eval_strain(q: &KernelQuery, b: &QuadratureBudget) -> Result<KernelValue, KernelError> {
    match q.kind {
        RegKind::LogLaplacian => eval_k12(q, b),
        RegKind::LogGradient => eval_k12_tilde(q, b),
        RegKind::Identity => Err(KernelError::InvalidKind(RegKind::Identity)),
    }
}

/// `H(x)`, the kernel of `∇⊥Δ⁻¹T_γ`.
pub fn eval_h(
    x: [f64; 2],
    gamma: Gamma,
    kind: RegKind,
    b: &QuadratureBudget,
) -> Result<KernelVector, KernelError> {
    if kind == RegKind::Identity {
        return Err(KernelError::InvalidKind(kind));
    }
    let r2 = x[0] * x[0] + x[1] * x[1];
    if r2 == 0.0 {
        return Err(KernelError::AtOrigin);
    }
    let j = radial_profile(kind, Family::Velocity, gamma, r2.sqrt(), b)?;
    let pre = j.value / (2.0 * PI * r2);
    Ok(KernelVector {
        value: [-x[1] * pre, x[0] * pre],
        err_est: j.err_est / (2.0 * PI * r2.sqrt()),
        flag: j.flag,
    })
}

/// Largest `|H(x)|·|x|` over the sample points.
pub fn h_decay_constant(
    points: &[[f64; 2]],
    gamma: Gamma,
    kind: RegKind,
    b: &QuadratureBudget,
) -> Result<f64, KernelError> {
    let mut c: f64 = 0.0;
    for &x in points {
        let h = eval_h(x, gamma, kind, b)?;
        c = c.max(h.value[0].hypot(h.value[1]) * x[0].hypot(x[1]));
    }
    Ok(c)
}

/// `|e^{-r} - π^{-1/2} ∫₀^∞ e^{-τ} e^{-r²/4τ} τ^{-1/2} dτ|`.
pub fn subordination_residual(r: f64, b: &QuadratureBudget) -> f64 {
    (subordination_integral(r, b) - (-r).exp()).abs()
}

/// The subordination integral itself, computed with `τ = σ²`.
pub fn subordination_integral(r: f64, b: &QuadratureBudget) -> f64 {
    let f = |s: f64| {
        if s == 0.0 {
            return if r == 0.0 { 1.0 } else { 0.0 };
        }
        (-s * s - r * r / (4.0 * s * s)).exp()
    };
    let peak = (r / 2.0).sqrt();
    let mut points = vec![0.0];
    if peak > 0.0 {
        points.push(peak);
    }
    points.push(peak + 10.0);
    let q = Integrator::new(b.abs_tol.min(1e-15), b.rel_tol.min(1e-13), b.max_evals.max(10_000));
    2.0 / PI.sqrt() * q.integrate_pieces(f, &points).value
}

/// Weight of the polynomial-in-`|x|` lower bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Weight {
    Gauss2,
    Gauss4,
}

/// `(x₁x₂/|x|⁴) ln^{-γ}(e + 1/|x|) e^{-|x|²}` (or `e^{-|x|⁴}`), without
/// its unknown constant.
pub fn lower_bound_rhs(x: [f64; 2], gamma: Gamma, weight: Weight) -> Result<f64, KernelError> {
    let [x1, x2] = x;
    if !(x1 > 0.0 && x2 > 0.0) {
        return Err(KernelError::WrongQuadrant(x1, x2));
    }
    let r2 = x1 * x1 + x2 * x2;
    let r = r2.sqrt();
    let damp = match weight {
        Weight::Gauss2 => (-r2).exp(),
        Weight::Gauss4 => (-r2 * r2).exp(),
    };
    Ok(x1 * x2 / (r2 * r2) * (E + 1.0 / r).ln().powf(-gamma.value()) * damp)
}

/// Minimum of `K₁₂/lower_bound_rhs` over a sample of the first quadrant.
#[derive(Debug, Clone, PartialEq)]
pub struct LowerBoundCertificate {
    pub min_ratio: f64,
    pub argmin: [f64; 2],
    pub samples: usize,
    pub all_positive: bool,
}

/// Certifies the lower bound on `n_r × n_θ` points with log-spaced radii in
/// `[r_min, r_max]` and angles strictly inside `(0, π/2)`.
pub fn certify_lower_bound(
    gamma: Gamma,
    kind: RegKind,
    (r_min, r_max): (f64, f64),
    (n_r, n_theta): (usize, usize),
    b: &QuadratureBudget,
) -> Result<LowerBoundCertificate, KernelError> {
    let mut cert = LowerBoundCertificate {
        min_ratio: f64::INFINITY,
        argmin: [0.0, 0.0],
        samples: 0,
        all_positive: true,
    };
    for i in 0..n_r {
        let frac = if n_r > 1 { i as f64 / (n_r - 1) as f64 } else { 0.0 };
        let r = r_min * (r_max / r_min).powf(frac);
        for j in 0..n_theta {
            let th = (j as f64 + 0.5) * PI / (2.0 * n_theta as f64);
            let x = [r * th.cos(), r * th.sin()];
            let k = eval_strain(&KernelQuery { x, gamma, kind }, b)?;
            let ratio = k.value / lower_bound_rhs(x, gamma, Weight::Gauss2)?;
            cert.samples += 1;
            cert.all_positive &= k.value > 0.0;
            if ratio < cert.min_ratio {
                cert.min_ratio = ratio;
                cert.argmin = x;
            }
        }
    }
    Ok(cert)
}

/// `∫₀^∞ t^{γ-1} e^{-t} dt / Γ(γ)` by quadrature.
pub fn gamma_weight_mass(gamma: Gamma, b: &QuadratureBudget) -> Estimate {
    let g = gamma.value();
    let norm = gamma_fn(g + 1.0);
    let u_max = b.t_max.powf(g);
    let mut est = b
        .outer()
        .integrate_pieces(|u| (-u.powf(1.0 / g)).exp() / norm, &[0.0, 1.0f64.min(u_max), u_max]);
    est.value += gamma_ur(g, b.t_max);
    est
}

/// `(1/Γ(t)) ∫₀^∞ β^{t-1} e^{-eβ} dβ`, the total weight of the semigroup
/// superposition representing `(e + ·)^{-t}` (exactly `e^{-t}`).
fn superposition_mass(t: f64, inner: &Integrator) -> f64 {
    if t < 1e-12 {
        return 1.0;
    }
    // On β ∈ [0, 1] split off ∫β^{t-1}dβ = 1/t exactly; what is left,
    // β^{t-1}(1 - e^{-eβ}) ≤ eβ^t, is bounded.
    let lead = -ln_gamma(t);
    let defect = inner.integrate(|b: f64| b.powf(t - 1.0) * -(-E * b).exp_m1(), 0.0, 1.0);
    let near = 1.0 / gamma_fn(t + 1.0) - lead.exp() * defect.value;
    let far = inner.integrate_pieces(
        |s: f64| (lead + t * s - E * s.exp()).exp(),
        &[0.0, 2.0, 5.0f64.max((t + 60.0).ln())],
    );
    near + far.value
}

/// Numerical `‖K_γ‖₁` for the kernel of `T_γ`; should equal 1.
pub fn check_k_l1(gamma: Gamma, kind: RegKind, b: &QuadratureBudget) -> Result<Estimate, KernelError> {
    b.validate()?;
    if kind == RegKind::Identity {
        return Err(KernelError::InvalidKind(kind));
    }
    let g = gamma.value();
    let inner = Integrator::new(1e-300, 1e-13, 50_000);
    let u_max = b.t_max.powf(g);
    let norm = gamma_fn(g + 1.0);
    let mut est = b.outer().integrate_pieces(
        |u| superposition_mass(u.powf(1.0 / g), &inner) / norm,
        &[0.0, 1.0f64.min(u_max), u_max],
    );
    if kind == RegKind::LogGradient {
        // Each Poisson kernel is itself a unit-mass superposition of heat
        // kernels with weight τ^{-1/2}e^{-τ}/√π.
        let tau = inner.integrate_pieces(|s: f64| (-s * s).exp(), &[0.0, 3.0, 30.0]);
        est.value *= 2.0 / PI.sqrt() * tau.value;
    }
    est.abs_err += gamma_ur(g, b.t_max);
    Ok(est)
}

/// Tabulated `J(r)` on a log-spaced grid with cubic interpolation in `ln r`.
#[derive(Debug, Clone)]
pub struct RadialTable {
    ln_r: Vec<f64>,
    values: Vec<f64>,
    second: Vec<f64>,
}

impl RadialTable {
    pub fn build(
        kind: RegKind,
        family: Family,
        gamma: Gamma,
        (r_min, r_max): (f64, f64),
        nodes: usize,
        b: &QuadratureBudget,
    ) -> Result<Self, KernelError> {
        assert!(nodes >= 4 && r_max > r_min && r_min > 0.0);
        let mut ln_r = Vec::with_capacity(nodes);
        let mut values = Vec::with_capacity(nodes);
        for i in 0..nodes {
            let s = r_min.ln() + (r_max / r_min).ln() * i as f64 / (nodes - 1) as f64;
            ln_r.push(s);
            values.push(radial_profile(kind, family, gamma, s.exp(), b)?.value);
        }
        let second = natural_spline(&ln_r, &values);
        Ok(RadialTable {
            ln_r,
            values,
            second,
        })
    }

    /// Interpolated `J(r)`; clamps outside the table.
    pub fn eval(&self, r: f64) -> f64 {
        let s = r.ln();
        let n = self.ln_r.len();
        if s <= self.ln_r[0] {
            return self.values[0];
        }
        if s >= self.ln_r[n - 1] {
            return self.values[n - 1];
        }
        let step = self.ln_r[1] - self.ln_r[0];
        let i = (((s - self.ln_r[0]) / step) as usize).min(n - 2);
        let a = (self.ln_r[i + 1] - s) / step;
        let c = 1.0 - a;
        a * self.values[i]
            + c * self.values[i + 1]
            + ((a * a * a - a) * self.second[i] + (c * c * c - c) * self.second[i + 1]) * step * step
                / 6.0
    }
}

fn natural_spline(x: &[f64], y: &[f64]) -> Vec<f64> {
    let n = x.len();
    let mut m = vec![0.0; n];
    let mut u = vec![0.0; n];
    for i in 1..n - 1 {
        let sig = (x[i] - x[i - 1]) / (x[i + 1] - x[i - 1]);
        let p = sig * m[i - 1] + 2.0;
        m[i] = (sig - 1.0) / p;
        let d = (y[i + 1] - y[i]) / (x[i + 1] - x[i]) - (y[i] - y[i - 1]) / (x[i] - x[i - 1]);
        u[i] = (6.0 * d / (x[i + 1] - x[i - 1]) - sig * u[i - 1]) / p;
    }
    m[n - 1] = 0.0;
    for k in (0..n - 1).rev() {
        m[k] = m[k] * m[k + 1] + u[k];
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(x: [f64; 2], g: f64, kind: RegKind) -> KernelQuery {
        KernelQuery {
            x,
            gamma: Gamma::new(g).unwrap(),
            kind,
        }
    }

    #[test]
    fn axes_give_zero_and_kinds_are_checked() {
        let b = QuadratureBudget::default();
        assert_eq!(eval_k12(&q([1.0, 0.0], 0.5, RegKind::LogLaplacian), &b).unwrap().value, 0.0);
        assert_eq!(eval_k12_tilde(&q([0.0, 0.7], 0.5, RegKind::LogGradient), &b).unwrap().value, 0.0);
        assert!(matches!(
            eval_k12(&q([1.0, 1.0], 0.5, RegKind::LogGradient), &b),
            Err(KernelError::InvalidKind(_))
        ));
        assert!(eval_h([1.0, 0.0], Gamma::new(0.5).unwrap(), RegKind::Identity, &b).is_err());
    }

    #[test]
    fn closed_form_poisson_defect_matches_subordination() {
        for &beta in &[1e-3, 0.1, 0.7, 1.0, 3.0, 20.0] {
            for fam in [Family::Strain, Family::Velocity] {
                let a = poisson_defect_closed(fam, beta);
                let b = poisson_defect_subordinated(fam, beta);
                assert!((a - b).abs() < 1e-11 * a.max(1e-300) + 1e-15, "{fam:?} {beta}: {a} {b}");
            }
        }
    }

    #[test]
    fn subordination_identity() {
        let b = QuadratureBudget::default();
        assert!(subordination_residual(0.0, &b) <= 1e-10);
        assert!((subordination_integral(1.0, &b) - 0.367_879_4).abs() < 1e-7);
        assert!((subordination_integral(10.0, &b) - 4.5400e-5).abs() < 1e-8);
    }

    #[test]
    fn lower_bound_formula() {
        let g = Gamma::new(0.3).unwrap();
        let v = lower_bound_rhs([1.0, 1.0], g, Weight::Gauss2).unwrap();
        let expect = 0.25 * (E + 2f64.powf(-0.5)).ln().powf(-0.3) * (-2f64).exp();
        assert!((v - expect).abs() < 1e-15);
        assert!(matches!(
            lower_bound_rhs([-1.0, 1.0], g, Weight::Gauss4),
            Err(KernelError::WrongQuadrant(..))
        ));
    }

    #[test]
    fn small_gamma_approaches_euler() {
        let b = QuadratureBudget::default();
        let g = Gamma::new(1e-3).unwrap();
        for kind in [RegKind::LogLaplacian, RegKind::LogGradient] {
            let h = eval_h([1.0, 0.0], g, kind, &b).unwrap();
            let euler = 1.0 / (2.0 * PI);
            assert!(h.value[0].abs() < 1e-300);
            assert!((h.value[1] - euler).abs() / euler < 0.02, "{kind:?} {h:?}");
        }
    }

    #[test]
    fn weight_mass_is_one() {
        let b = QuadratureBudget::default();
        for g in [0.1, 0.5, 1.0] {
            let m = gamma_weight_mass(Gamma::new(g).unwrap(), &b);
            assert!((m.value - 1.0).abs() < 1e-9, "{g}: {m:?}");
        }
    }

    #[test]
    fn spline_reproduces_profile() {
        let b = QuadratureBudget::default();
        let g = Gamma::new(0.5).unwrap();
        let t = RadialTable::build(RegKind::LogLaplacian, Family::Strain, g, (0.02, 4.0), 48, &b).unwrap();
        for r in [0.07, 0.33, 1.7] {
            let exact = radial_profile(RegKind::LogLaplacian, Family::Strain, g, r, &b).unwrap().value;
            assert!((t.eval(r) - exact).abs() < 1e-5 * exact, "{r} {} {exact}", t.eval(r));
        }
    }
}
