//! Explicit initial data: the bump profile, the four-lobe odd function `ρ`,
//! the dyadic families `g_A`, the high-frequency perturbation `η₀` and
//! translated sums.

use std::f64::consts::{E, PI};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::quadrature::Integrator;
use crate::spectral::{Field, Gamma, Grid};

/// Smallest lobe radius, in grid spacings, considered resolved.
pub const MIN_LOBE_CELLS: f64 = 4.0;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DataError {
    #[error("feature of size {size} is not resolved by grid spacing {h} (needs {MIN_LOBE_CELLS} cells)")]
    Unresolvable { size: f64, h: f64 },
    #[error("only {kept} dyadic levels survive the cap j ≤ {j_cap}; at least 3 are required")]
    TooFewLevels { kept: usize, j_cap: i64 },
    #[error("empty dyadic range [{lo}, {hi})")]
    BadRange { lo: f64, hi: f64 },
    #[error("parameter out of range: {0}")]
    BadParameter(String),
    #[error("function is negative ({value:e}) in the open first quadrant")]
    NegativeOnQuadrant { value: f64 },
    #[error("translated support leaves the box")]
    OutOfBox,
    #[error("offset ({0}, {1}) is not a multiple of the grid spacing")]
    NotGridAligned(f64, f64),
    #[error("parts live on different grids")]
    GridMismatch,
}

/// The radial cutoff `φ`: 1 on `B(0, 1/2)`, 0 outside `B(0, 1)`.
///
/// On `1/2 < r < 1` it is the smooth step `f(s)/(f(s) + f(1-s))` with
/// `f(s) = e^{-1/s}` and `s = 2 - 2r`, which is `C^∞` at both ends.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BumpProfile;

fn flat(s: f64) -> f64 {
    if s <= 0.0 {
        0.0
    } else {
        (-1.0 / s).exp()
    }
}

impl BumpProfile {
    pub fn value(&self, r: f64) -> f64 {
        if r <= 0.5 {
            1.0
        } else if r >= 1.0 {
            0.0
        } else {
            let s = 2.0 - 2.0 * r;
            let a = flat(s);
            a / (a + flat(1.0 - s))
        }
    }

    /// `dφ/dr`.
    pub fn derivative(&self, r: f64) -> f64 {
        if r <= 0.5 || r >= 1.0 {
            return 0.0;
        }
        let s = 2.0 - 2.0 * r;
        let (a, b) = (flat(s), flat(1.0 - s));
        let (da, db) = (a / (s * s), b / ((1.0 - s) * (1.0 - s)));
        // d/ds [a/(a+b)] with b depending on 1-s, then ds/dr = -2.
        let dstep = (da * b + a * db) / ((a + b) * (a + b));
        -2.0 * dstep
    }

    /// `(‖φ‖₁, ‖φ‖₂, ‖∇φ‖₂)` of the 2D radial function.
    pub fn norms(&self) -> (f64, f64, f64) {
        let q = Integrator::new(1e-15, 1e-13, 100_000);
        let pts = [0.0, 0.5, 0.75, 1.0];
        let l1 = q.integrate_pieces(|r| 2.0 * PI * r * self.value(r), &pts).value;
        let l2 = q.integrate_pieces(|r| 2.0 * PI * r * self.value(r).powi(2), &pts).value;
        let g2 = q
            .integrate_pieces(|r| 2.0 * PI * r * self.derivative(r).powi(2), &pts)
            .value;
        (l1, l2.sqrt(), g2.sqrt())
    }
}

/// Four lobes `a₁a₂ φ((x - a)/σ)` centred at `a = (±1, ±1)`, optionally
/// contracted as `ρ(c·x)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RhoSpec {
    #[serde(default = "default_sigma")]
    pub sigma: f64,
    #[serde(default = "one")]
    pub contraction: f64,
}

fn default_sigma() -> f64 {
    0.125
}

fn one() -> f64 {
    1.0
}

impl Default for RhoSpec {
    fn default() -> Self {
        RhoSpec {
            sigma: default_sigma(),
            contraction: 1.0,
        }
    }
}

impl RhoSpec {
    pub fn validate(&self, grid: &Grid) -> Result<(), DataError> {
        if !(self.sigma > 0.0 && self.sigma <= 0.25) {
            return Err(DataError::BadParameter(format!(
                "sigma = {} must lie in (0, 1/4]",
                self.sigma
            )));
        }
        if !(self.contraction > 0.0 && self.contraction.is_finite()) {
            return Err(DataError::BadParameter("contraction must be positive".into()));
        }
        let size = self.sigma / self.contraction;
        let h = grid.spacing();
        if size < MIN_LOBE_CELLS * h {
            return Err(DataError::Unresolvable { size, h });
        }
        Ok(())
    }

    /// Radius of the smallest origin-centred ball containing the support.
    pub fn support_radius(&self) -> f64 {
        (2f64.sqrt() + self.sigma) / self.contraction
    }
}

/// `ρ(x)` for lobe radius `sigma`.
pub fn rho_at(sigma: f64, x: [f64; 2]) -> f64 {
    let (a1, a2) = (if x[0] >= 0.0 { 1.0 } else { -1.0 }, if x[1] >= 0.0 { 1.0 } else { -1.0 });
    if x[0] == 0.0 || x[1] == 0.0 {
        return 0.0;
    }
    // Lobes are disjoint, so only the lobe of the quadrant of x can be nonzero.
    let d = (x[0] - a1).hypot(x[1] - a2);
    a1 * a2 * BumpProfile.value(d / sigma)
}

pub fn make_rho(spec: &RhoSpec, grid: &Grid) -> Result<Field, DataError> {
    spec.validate(grid)?;
    let c = spec.contraction;
    Ok(Field::from_fn(*grid, |x1, x2| rho_at(spec.sigma, [c * x1, c * x2])))
}

/// Which definition of the dyadic family is used.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GaVariant {
    /// Amplitude `(ln A)^{-1/2}(ln ln A)^{-1}`.
    Section3,
    /// `γ = 1/2` only: amplitude `(ln ln ln A)^{-1}(ln ln A)^{-1/2}`, levels `[A, A ln A)`.
    Section7,
}

/// Parameters of `g_A = C_A Σ_j w_j ρ(2^j x)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaSpec {
    pub gamma: Gamma,
    #[serde(rename = "A")]
    pub a: f64,
    pub variant: GaVariant,
    #[serde(default = "quarter")]
    pub sigma: f64,
    /// Finest admissible level; derived from the grid when absent.
    #[serde(default)]
    pub j_cap: Option<i64>,
    /// Overall factor applied on top of the construction.
    #[serde(default = "one")]
    pub scale: f64,
}

fn quarter() -> f64 {
    0.25
}

/// The resolved level structure of a `g_A`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaLevels {
    pub amplitude: f64,
    /// `(j, j^{-γ})` for each kept level, ascending.
    pub levels: Vec<(i64, f64)>,
    /// The uncapped range `[lo, hi)`.
    pub range: (f64, f64),
    pub j_cap: i64,
}

impl GaSpec {
    pub fn new(gamma: Gamma, a: f64, variant: GaVariant) -> Self {
        GaSpec {
            gamma,
            a,
            variant,
            sigma: quarter(),
            j_cap: None,
            scale: 1.0,
        }
    }

    /// `⌊log₂(σ / (4h))⌋`, the finest level whose lobes span four cells.
    pub fn grid_cap(&self, grid: &Grid) -> i64 {
        (self.sigma / (MIN_LOBE_CELLS * grid.spacing())).log2().floor() as i64
    }

    pub fn levels(&self, grid: &Grid) -> Result<GaLevels, DataError> {
        let g = self.gamma.value();
        let a = self.a;
        if !(a >= E * E) {
            return Err(DataError::BadParameter(format!("A = {a} must be at least e²")));
        }
        if !(self.sigma > 0.0 && self.sigma <= 0.25) {
            return Err(DataError::BadParameter(format!(
                "sigma = {} must lie in (0, 1/4]",
                self.sigma
            )));
        }
        let (amplitude, lo, hi, weight_exp) = match self.variant {
            GaVariant::Section3 => {
                let c = 1.0 / (a.ln().sqrt() * a.ln().ln());
                if g < 0.5 {
                    let p = 1.0 / (1.0 - 2.0 * g);
                    (c, a.powf(p), (a + a.ln()).powf(p), g)
                } else if g == 0.5 {
                    (c, a.ln(), a + a.ln(), 0.5)
                } else {
                    return Err(DataError::BadParameter(format!(
                        "g_A is defined for 0 < γ ≤ 1/2, got {g}"
                    )));
                }
            }
            GaVariant::Section7 => {
                if g != 0.5 {
                    return Err(DataError::BadParameter(
                        "the redefined g_A requires γ = 1/2".into(),
                    ));
                }
                let lll = a.ln().ln().ln();
                if !(lll > 0.0) {
                    return Err(DataError::BadRange { lo: a, hi: a * a.ln() });
                }
                (1.0 / (lll * a.ln().ln().sqrt()), a, a * a.ln(), 0.5)
            }
        };
        if !(lo < hi) {
            return Err(DataError::BadRange { lo, hi });
        }
        let j_cap = self.j_cap.unwrap_or_else(|| self.grid_cap(grid));
        let first = lo.ceil() as i64;
        let levels: Vec<(i64, f64)> = (first..)
            .take_while(|&j| (j as f64) < hi && j <= j_cap)
            .filter(|&j| j >= 1)
            .map(|j| (j, (j as f64).powf(-weight_exp)))
            .collect();
        if levels.len() < 3 {
            return Err(DataError::TooFewLevels {
                kept: levels.len(),
                j_cap,
            });
        }
        let finest = levels.last().map(|l| l.0).unwrap_or(first);
        let size = self.sigma * 2f64.powi(-(finest as i32));
        let h = grid.spacing();
        if size < MIN_LOBE_CELLS * h * (1.0 - 1e-12) {
            return Err(DataError::Unresolvable { size, h });
        }
        Ok(GaLevels {
            amplitude: amplitude * self.scale,
            levels,
            range: (lo, hi),
            j_cap,
        })
    }
}

impl GaLevels {
    /// `‖g_A‖∞`, attained on the coarsest level.
    pub fn sup_norm(&self) -> f64 {
        self.amplitude * self.levels[0].1
    }

    /// `2^{1-j_min}`, radius of a ball containing the support.
    pub fn support_radius(&self) -> f64 {
        2.0 * 2f64.powi(-(self.levels[0].0 as i32))
    }

    pub fn value(&self, sigma: f64, x: [f64; 2]) -> f64 {
        let r = x[0].hypot(x[1]);
        if r == 0.0 {
            return 0.0;
        }
        // Level j lives at |x| ≈ √2·2^{-j}; at most one level is nonzero.
        let j_near = (2f64.sqrt() / r).log2().round() as i64;
        let mut v = 0.0;
        for &(j, w) in &self.levels {
            if (j - j_near).abs() <= 1 {
                let s = 2f64.powi(j as i32);
                v += w * rho_at(sigma, [s * x[0], s * x[1]]);
            }
        }
        self.amplitude * v
    }
}

pub fn make_ga(spec: &GaSpec, grid: &Grid) -> Result<Field, DataError> {
    let levels = spec.levels(grid)?;
    Ok(Field::from_fn(*grid, |x1, x2| levels.value(spec.sigma, [x1, x2])))
}

/// Weight `x₁x₂|x|^{-4} ln^{-γ}(e + 1/|x|) e^{-|x|⁴}` of the positivity
/// functional.
pub fn g_weight(x: [f64; 2], gamma: Gamma) -> f64 {
    let r2 = x[0] * x[0] + x[1] * x[1];
    let r = r2.sqrt();
    x[0] * x[1] / (r2 * r2) * (E + 1.0 / r).ln().powf(-gamma.value()) * (-r2 * r2).exp()
}

/// `G = ∫_{x₁,x₂>0} g(x) x₁x₂|x|^{-4} ln^{-γ}(e + 1/|x|) e^{-|x|⁴} dx` by grid
/// quadrature.
pub fn functional_g(g: &Field, gamma: Gamma) -> Result<f64, DataError> {
    let grid = g.grid();
    let n = grid.n();
    let h2 = grid.spacing().powi(2);
    let mut sum = 0.0;
    for i in grid.origin_index() + 1..n {
        for j in grid.origin_index() + 1..n {
            let v = g.value(i, j);
            if v < -1e-12 {
                return Err(DataError::NegativeOnQuadrant { value: v });
            }
            sum += v * g_weight(grid.point(i, j), gamma);
        }
    }
    Ok(sum * h2)
}

/// Direction of the oscillation `cos(k x_axis)` in `η₀`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OscAxis {
    X1,
    X2,
}

/// Parameters of `η₀ = (20k√L)^{-1} cos(k x_axis) b(x)`, where `b` is the
/// odd-odd extension of `δ^{-1} Ψ((x - x_L)/δ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Eta0Spec {
    pub center: [f64; 2],
    pub delta: f64,
    pub k: f64,
    #[serde(rename = "L")]
    pub l: f64,
    #[serde(default = "default_axis")]
    pub axis: OscAxis,
    /// Extra factor on top of `(20k√L)^{-1}`; 0 switches the perturbation off.
    #[serde(default = "one")]
    pub amplitude: f64,
}

fn default_axis() -> OscAxis {
    OscAxis::X1
}

impl Eta0Spec {
    pub fn validate(&self, grid: &Grid) -> Result<(), DataError> {
        let [c1, c2] = self.center;
        if !(c1 > 0.0 && c2 > 0.0) {
            return Err(DataError::BadParameter("x_L must lie in the open first quadrant".into()));
        }
        if !(self.delta > 0.0 && self.delta < c1.min(c2)) {
            return Err(DataError::BadParameter(format!(
                "ball B(x_L, {}) must stay inside the first quadrant",
                self.delta
            )));
        }
        if !(self.k > 0.0 && self.l > 0.0) {
            return Err(DataError::BadParameter("k and L must be positive".into()));
        }
        let h = grid.spacing();
        if self.k * h > PI / 4.0 {
            return Err(DataError::Unresolvable {
                size: 2.0 * PI / self.k,
                h,
            });
        }
        if self.delta < MIN_LOBE_CELLS * h {
            return Err(DataError::Unresolvable { size: self.delta, h });
        }
        Ok(())
    }

    /// `(20k√L)^{-1}` times the amplitude factor.
    pub fn prefactor(&self) -> f64 {
        self.amplitude / (20.0 * self.k * self.l.sqrt())
    }

    /// `(20√L)^{-1}(‖b‖₂ + k^{-1}‖∇b‖₂)`, an upper bound for `‖∇η₀‖₂`.
    pub fn gradient_bound(&self) -> f64 {
        let (_, l2, g2) = BumpProfile.norms();
        let b2 = 2.0 * l2;
        let gb2 = 2.0 * g2 / self.delta;
        self.amplitude / (20.0 * self.l.sqrt()) * (b2 + gb2 / self.k)
    }

    /// Smallest `k` for which [`Self::gradient_bound`] is at most `L^{-1/2}`.
    pub fn k0(&self) -> f64 {
        let (_, l2, g2) = BumpProfile.norms();
        let margin = 20.0 / self.amplitude.max(f64::MIN_POSITIVE) - 2.0 * l2;
        if margin <= 0.0 {
            f64::INFINITY
        } else {
            2.0 * g2 / (self.delta * margin)
        }
    }

    pub fn value(&self, x: [f64; 2]) -> f64 {
        let [x1, x2] = x;
        if x1 == 0.0 || x2 == 0.0 {
            return 0.0;
        }
        let (s1, s2) = (x1.signum(), x2.signum());
        let d = (x1.abs() - self.center[0]).hypot(x2.abs() - self.center[1]);
        let b = s1 * s2 * BumpProfile.value(d / self.delta) / self.delta;
        let phase = match self.axis {
            OscAxis::X1 => self.k * x1,
            OscAxis::X2 => self.k * x2,
        };
        self.prefactor() * phase.cos() * b
    }
}

pub fn make_eta0(spec: &Eta0Spec, grid: &Grid) -> Result<Field, DataError> {
    spec.validate(grid)?;
    Ok(Field::from_fn(*grid, |x1, x2| spec.value([x1, x2])))
}

/// Result of [`translate_sum`].
#[derive(Debug, Clone, PartialEq)]
pub struct Translated {
    pub field: Field,
    /// Whether two translated supports intersect.
    pub overlap: bool,
}

/// `Σ f_i(x - c_i)` for grid-aligned offsets `c_i`.
pub fn translate_sum(parts: &[(Field, [f64; 2])]) -> Result<Translated, DataError> {
    let Some((first, _)) = parts.first() else {
        return Err(DataError::BadParameter("translate_sum needs at least one part".into()));
    };
    let grid = *first.grid();
    let n = grid.n();
    let h = grid.spacing();
    let mut values = vec![0.0; grid.len()];
    let mut owner = vec![usize::MAX; grid.len()];
    let mut overlap = false;
    for (p, (f, offset)) in parts.iter().enumerate() {
        if *f.grid() != grid {
            return Err(DataError::GridMismatch);
        }
        let shift = |c: f64| -> Option<i64> {
            let s = c / h;
            ((s - s.round()).abs() <= 1e-9).then_some(s.round() as i64)
        };
        let (Some(d1), Some(d2)) = (shift(offset[0]), shift(offset[1])) else {
            return Err(DataError::NotGridAligned(offset[0], offset[1]));
        };
        for i in 0..n {
            for j in 0..n {
                let v = f.value(i, j);
                if v == 0.0 {
                    continue;
                }
                let (ti, tj) = (i as i64 + d1, j as i64 + d2);
                if ti < 0 || tj < 0 || ti >= n as i64 || tj >= n as i64 {
                    return Err(DataError::OutOfBox);
                }
                let idx = ti as usize * n + tj as usize;
                if owner[idx] != usize::MAX && owner[idx] != p {
                    overlap = true;
                }
                owner[idx] = p;
                values[idx] += v;
            }
        }
    }
    Ok(Translated {
        field: Field::from_values(grid, values),
        overlap,
    })
}

/// `a·exp(-|x - c|²/w²)`.
pub fn make_gaussian(grid: &Grid, amplitude: f64, center: [f64; 2], width: f64) -> Field {
    Field::from_fn(*grid, |x1, x2| {
        let d2 = (x1 - center[0]).powi(2) + (x2 - center[1]).powi(2);
        amplitude * (-d2 / (width * width)).exp()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::{lebesgue_norm, Lp, Parity};

    #[test]
    fn bump_profile_shape() {
        let p = BumpProfile;
        assert_eq!(p.value(0.0), 1.0);
        assert_eq!(p.value(0.5), 1.0);
        assert_eq!(p.value(1.0), 0.0);
        for i in 0..=200 {
            let r = i as f64 / 200.0 * 1.2;
            let v = p.value(r);
            assert!((0.0..=1.0).contains(&v));
        }
        // derivative against a centred difference
        for &r in &[0.55, 0.7, 0.75, 0.9, 0.98] {
            let d = (p.value(r + 1e-6) - p.value(r - 1e-6)) / 2e-6;
            assert!((d - p.derivative(r)).abs() < 1e-6, "{r}");
        }
    }

    #[test]
    fn bump_finite_differences_stay_bounded() {
        // Fourth differences scale like h⁴ when the profile is smooth.
        let p = BumpProfile;
        let fourth = |h: f64| {
            (0..2000)
                .map(|i| {
                    let r = 0.4 + 0.7 * i as f64 / 2000.0;
                    (p.value(r - 2.0 * h) - 4.0 * p.value(r - h) + 6.0 * p.value(r)
                        - 4.0 * p.value(r + h)
                        + p.value(r + 2.0 * h))
                    .abs()
                })
                .fold(0.0, f64::max)
        };
        let (a, b) = (fourth(1e-2), fourth(5e-3));
        assert!(b < a / 10.0, "{a} {b}");
    }

    #[test]
    fn rho_structure() {
        let g = Grid::new(256, 2.0).unwrap();
        let rho = make_rho(&RhoSpec::default(), &g).unwrap();
        assert_eq!(rho.parity_defect(Parity::OddX1), 0.0);
        assert_eq!(rho.parity_defect(Parity::OddX2), 0.0);
        let i1 = g.node_index(1.0).unwrap();
        assert_eq!(rho.value(i1, i1), 1.0);
        assert_eq!(lebesgue_norm(&rho, Lp::Infinity), 1.0);
        assert!(rho.integral().abs() < 1e-14);
        assert!(functional_g(&rho, Gamma::new(0.5).unwrap()).unwrap() > 0.0);
        let coarse = Grid::new(16, 2.0).unwrap();
        assert!(matches!(
            make_rho(&RhoSpec::default(), &coarse),
            Err(DataError::Unresolvable { .. })
        ));
    }

    #[test]
    fn ga_levels_and_norms() {
        let g = Grid::new(512, 0.5).unwrap();
        let spec = GaSpec::new(Gamma::new(0.5).unwrap(), 16.0, GaVariant::Section3);
        let lv = spec.levels(&g).unwrap();
        assert_eq!(lv.j_cap, 5);
        assert_eq!(lv.levels.iter().map(|l| l.0).collect::<Vec<_>>(), vec![3, 4, 5]);
        let f = make_ga(&spec, &g).unwrap();
        assert!(f.is_odd_odd(0.0));
        let sup = lebesgue_norm(&f, Lp::Infinity);
        assert!((sup - lv.sup_norm()).abs() < 1e-14 * sup);
        assert!(functional_g(&f, spec.gamma).unwrap() > 0.0);

        let mut few = spec;
        few.a = 64.0;
        assert!(matches!(few.levels(&g), Err(DataError::TooFewLevels { .. })));

        let s7 = GaSpec::new(Gamma::new(0.5).unwrap(), 15.2, GaVariant::Section7);
        assert!(s7.levels(&Grid::new(16, 1e-9).unwrap()).is_ok());
        let s7 = GaSpec::new(Gamma::new(0.5).unwrap(), 15.0, GaVariant::Section7);
        assert!(matches!(s7.levels(&g), Err(DataError::BadRange { .. })));
    }

    #[test]
    fn eta0_parity_and_bounds() {
        let g = Grid::new(256, 2.0).unwrap();
        let spec = Eta0Spec {
            center: [0.6, 0.4],
            delta: 0.1,
            k: 40.0,
            l: 4.0,
            axis: OscAxis::X1,
            amplitude: 1.0,
        };
        let e = make_eta0(&spec, &g).unwrap();
        assert!(e.is_odd_odd(0.0));
        assert!(spec.k0().is_finite());
        let mut bad = spec;
        bad.k = 500.0;
        assert!(make_eta0(&bad, &g).is_err());
        bad = spec;
        bad.delta = 0.5;
        assert!(make_eta0(&bad, &g).is_err());
    }

    #[test]
    fn translation_geometry() {
        let g = Grid::new(1024, 32.0).unwrap();
        let blob = make_rho(&RhoSpec { sigma: 0.25, contraction: 1.0 }, &g).unwrap();
        let one = translate_sum(&[(blob.clone(), [0.0, 0.0])]).unwrap();
        assert_eq!(one.field.values(), blob.values());
        let two = translate_sum(&[(blob.clone(), [-4.0, 0.0]), (blob.clone(), [4.0, 0.0])]).unwrap();
        assert!(!two.overlap);
        let l1 = lebesgue_norm(&two.field, Lp::One);
        assert!((l1 - 2.0 * lebesgue_norm(&blob, Lp::One)).abs() < 1e-12 * l1);
        assert!(translate_sum(&[(blob.clone(), [0.0, 0.0]), (blob.clone(), [0.25, 0.0])])
            .unwrap()
            .overlap);
        assert!(matches!(
            translate_sum(&[(blob.clone(), [0.1, 0.0])]),
            Err(DataError::NotGridAligned(..))
        ));

        let small = Grid::new(256, 4.0).unwrap();
        let b = make_rho(&RhoSpec { sigma: 0.25, contraction: 1.0 }, &small).unwrap();
        assert!(matches!(
            translate_sum(&[(b.clone(), [0.0, 0.0]), (b, [8.0, 0.0])]),
            Err(DataError::OutOfBox)
        ));
    }
}
