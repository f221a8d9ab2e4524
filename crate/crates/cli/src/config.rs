//! Scenario files and initial-data descriptions.

use std::path::{Path, PathBuf};

use logeuler_core::dynamics::TimePolicy;
use logeuler_core::initial_data::{
    make_eta0, make_ga, make_gaussian, make_rho, translate_sum, Eta0Spec, GaSpec, RhoSpec,
};
use logeuler_core::{Field, Gamma, Grid, RegKind, Regularization};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub n: usize,
    /// Half-width `ℓ` of the box `[-ℓ, ℓ)²`.
    pub box_half: f64,
}

impl GridSpec {
    pub fn build(&self) -> Result<Grid, CliError> {
        Ok(Grid::new(self.n, self.box_half)?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimeSpec {
    #[serde(default = "default_cfl")]
    pub cfl: f64,
    #[serde(default = "default_dt_max")]
    pub dt_max: f64,
}

fn default_cfl() -> f64 {
    TimePolicy::default().cfl
}

fn default_dt_max() -> f64 {
    TimePolicy::default().dt_max
}

impl Default for TimeSpec {
    fn default() -> Self {
        TimeSpec {
            cfl: default_cfl(),
            dt_max: default_dt_max(),
        }
    }
}

impl TimeSpec {
    pub fn policy(&self) -> Result<TimePolicy, CliError> {
        if !(self.cfl > 0.0 && self.cfl <= 1.0) {
            return Err(CliError::Validation(format!("cfl = {} must lie in (0, 1]", self.cfl)));
        }
        if !(self.dt_max > 0.0) {
            return Err(CliError::Validation("dt_max must be positive".into()));
        }
        Ok(TimePolicy {
            cfl: self.cfl,
            dt_max: self.dt_max,
        })
    }
}

/// A translated component of a [`DataSpec::Sum`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SumPart {
    #[serde(default)]
    pub offset: [f64; 2],
    pub data: DataSpec,
}

/// Initial vorticity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum DataSpec {
    #[serde(rename = "rho")]
    Rho(RhoSpec),
    #[serde(rename = "gA")]
    GA(GaSpec),
    #[serde(rename = "eta0")]
    Eta0(Eta0Spec),
    #[serde(rename = "sum")]
    Sum { parts: Vec<SumPart> },
    #[serde(rename = "gaussian")]
    Gaussian {
        amplitude: f64,
        #[serde(default)]
        center: [f64; 2],
        width: f64,
    },
    /// Raw little-endian `f64` array of `n × n` values, row-major in `(x₁, x₂)`.
    #[serde(rename = "file")]
    File { path: PathBuf },
}

impl DataSpec {
    /// Samples the data on `grid`; relative file paths resolve against `base`.
    pub fn build(&self, grid: &Grid, base: &Path) -> Result<Field, CliError> {
        match self {
            DataSpec::Rho(s) => Ok(make_rho(s, grid)?),
            DataSpec::GA(s) => Ok(make_ga(s, grid)?),
            DataSpec::Eta0(s) => Ok(make_eta0(s, grid)?),
            DataSpec::Gaussian {
                amplitude,
                center,
                width,
            } => {
                if !(*width > 0.0) {
                    return Err(CliError::Validation("gaussian width must be positive".into()));
                }
                Ok(make_gaussian(grid, *amplitude, *center, *width))
            }
            DataSpec::Sum { parts } => {
                let built = parts
                    .iter()
                    .map(|p| Ok((p.data.build(grid, base)?, p.offset)))
                    .collect::<Result<Vec<_>, CliError>>()?;
                Ok(translate_sum(&built)?.field)
            }
            DataSpec::File { path } => {
                let full = if path.is_absolute() {
                    path.clone()
                } else {
                    base.join(path)
                };
                let bytes = std::fs::read(&full).map_err(|e| CliError::io(&full, e))?;
                if bytes.len() != 8 * grid.len() {
                    return Err(CliError::Format {
                        path: full,
                        msg: format!("expected {} bytes, found {}", 8 * grid.len(), bytes.len()),
                    });
                }
                let values = bytes
                    .chunks_exact(8)
                    .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
                    .collect();
                Ok(Field::from_values(*grid, values))
            }
        }
    }
}

/// Declared symmetry of the data.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ParityDecl {
    OddOdd,
    None,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub name: String,
    pub grid: GridSpec,
    pub kind: RegKind,
    #[serde(default = "half")]
    pub gamma: f64,
    pub data: DataSpec,
    pub horizon: f64,
    #[serde(default)]
    pub time: TimeSpec,
    #[serde(default)]
    pub seeds: Vec<[f64; 2]>,
    /// Steps between raw snapshots; 0 disables them.
    #[serde(default)]
    pub snapshot_every: u64,
    /// Steps between recorded rows; the final time is always recorded.
    #[serde(default = "one_step")]
    pub record_every: u64,
    /// Detected from the data when absent.
    #[serde(default)]
    pub parity: Option<ParityDecl>,
    #[serde(default)]
    pub output: Option<PathBuf>,
}

fn half() -> f64 {
    0.5
}

fn one_step() -> u64 {
    1
}

impl Scenario {
    pub fn from_toml(text: &str, path: &Path) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|source| CliError::Parse {
            path: path.to_path_buf(),
            source,
        })
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::from_toml(&text, path)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("scenario serializes")
    }

    pub fn regularization(&self) -> Result<Regularization, CliError> {
        regularization(self.kind, self.gamma)
    }
}

pub fn regularization(kind: RegKind, gamma: f64) -> Result<Regularization, CliError> {
    if kind == RegKind::Identity {
        return Ok(Regularization::euler());
    }
    Ok(Regularization::new(kind, Gamma::new(gamma)?))
}

/// Seeds must start strictly inside the inner half of the box.
pub fn check_seeds(grid: &Grid, seeds: &[[f64; 2]]) -> Result<(), CliError> {
    let inner = 0.5 * grid.box_half();
    for (i, s) in seeds.iter().enumerate() {
        if !(s[0].abs() < inner && s[1].abs() < inner) {
            return Err(CliError::Validation(format!(
                "seed {i} at ({}, {}) lies outside the inner half of the box",
                s[0], s[1]
            )));
        }
    }
    Ok(())
}

/// Rejects data whose numerical support reaches past the inner half of the box.
pub fn check_support(field: &Field) -> Result<(), CliError> {
    let g = field.grid();
    let top = field.max_abs();
    if top == 0.0 {
        return Ok(());
    }
    let inner = 0.5 * g.box_half();
    let n = g.n();
    for i in 0..n {
        for j in 0..n {
            let [x, y] = g.point(i, j);
            if (x.abs() >= inner || y.abs() >= inner)
                && field.value(i, j).abs() > logeuler_core::diagnostics::SUPPORT_THRESHOLD * top
            {
                return Err(CliError::Validation(format!(
                    "initial data is not confined to the inner half of the box (value at ({x:.3}, {y:.3}))"
                )));
            }
        }
    }
    Ok(())
}
