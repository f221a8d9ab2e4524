use std::path::PathBuf;

use logeuler_core::diagnostics::{DiagnosticsError, RunRecord};
use logeuler_core::dynamics::DynamicsError;
use logeuler_core::initial_data::DataError;
use logeuler_core::kernels::KernelError;
use logeuler_core::spectral::SpectralError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Validation(String),
    #[error("numerical failure: {source}")]
    Numerical {
        source: DynamicsError,
        /// Rows recorded before the failure.
        partial: Option<Box<RunRecord>>,
    },
    #[error("no usable deformation: largest tracked entry {peak:.6} < {threshold}")]
    NoDeformation { peak: f64, threshold: f64 },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse {
        path: PathBuf,
        source: toml::de::Error,
    },
    #[error("malformed input {path}: {msg}")]
    Format { path: PathBuf, msg: String },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl CliError {
    /// 2 for validation problems, 3 for numerical failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Numerical { .. } | CliError::NoDeformation { .. } => 3,
            CliError::Io { .. } | CliError::Json(_) => 1,
            _ => 2,
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }
}

impl From<DataError> for CliError {
    fn from(e: DataError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<SpectralError> for CliError {
    fn from(e: SpectralError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<KernelError> for CliError {
    fn from(e: KernelError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<DynamicsError> for CliError {
    fn from(e: DynamicsError) -> Self {
        match e {
            DynamicsError::Spectral(s) => s.into(),
            DynamicsError::ParityPrecondition(_) | DynamicsError::GridMismatch => {
                CliError::Validation(e.to_string())
            }
            other => CliError::Numerical {
                source: other,
                partial: None,
            },
        }
    }
}

impl From<DiagnosticsError> for CliError {
    fn from(e: DiagnosticsError) -> Self {
        match e {
            DiagnosticsError::Dynamics(d) => d.into(),
            DiagnosticsError::Data(d) => d.into(),
            DiagnosticsError::Spectral(s) => s.into(),
            other => CliError::Validation(other.to_string()),
        }
    }
}
