//! Numerical laboratory for the logarithmically regularized 2D Euler equations
//!
//! ```text
//! ∂_t ω + u·∇ω = 0,    u = ∇⊥Δ⁻¹T_γ ω,
//! ```
//!
//! where `T_γ` is one of the Fourier multipliers `ln^{-γ}(e+|k|²)`,
//! `ln^{-γ}(e+|k|)` or the identity. The crate is organised bottom-up:
//!
//! * [`spectral`]: periodic grids, fields and Fourier multipliers
//! * [`quadrature`]: adaptive Gauss–Kronrod integration
//! * [`kernels`]: direct quadrature of the singular kernels of
//!   `-∂₁₂Δ⁻¹T_γ` and `∇⊥Δ⁻¹T_γ`
//! * [`initial_data`]: bumps, the dyadic families `g_A`, the high-frequency
//!   perturbation `η₀` and translated sums
//! * [`dynamics`]: RK4 pseudo-spectral time stepping coupled with Lagrangian
//!   tracking of characteristics and their deformation matrices
//! * [`diagnostics`]: run records, Gronwall and inflation reports, interaction
//!   decay measurements and power-law fits

pub mod diagnostics;
pub mod dynamics;
mod error;
mod fft;
pub mod initial_data;
pub mod kernels;
pub mod quadrature;
pub mod spectral;

pub use error::{Error, Result};
pub use spectral::{Field, Gamma, Grid, RegKind, Regularization};
