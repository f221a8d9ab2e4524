use thiserror::Error;

use crate::diagnostics::DiagnosticsError;
use crate::dynamics::DynamicsError;
use crate::initial_data::DataError;
use crate::kernels::KernelError;
use crate::spectral::SpectralError;

/// Umbrella error for callers that compose several modules.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error(transparent)]
    Data(#[from] DataError),
    #[error(transparent)]
    Dynamics(#[from] DynamicsError),
    #[error(transparent)]
    Diagnostics(#[from] DiagnosticsError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
