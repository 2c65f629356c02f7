//! Numerical verification independent of the closed forms: a shooting
//! eigenvalue search on the first-order radial system, an ODE residual
//! for closed-form states and Gauss–Laguerre normalization integrals.

mod quadrature;
mod residual;
mod shooting;

pub use quadrature::{gauss_laguerre, integrate_weighted, quadrature_norm, quadrature_order};
pub use residual::{default_grid, residual_check};
pub use shooting::{find_eigenvalues, integrate_radial, ShootingConfig};

use thiserror::Error;

use crate::error::Rejection;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("integration at E = {energy} exceeded the step budget near rho_tilde = {rho}")]
    MaxSteps { energy: f64, rho: f64 },
    #[error("integration at E = {energy} hit step-size underflow near rho_tilde = {rho}")]
    StepUnderflow { energy: f64, rho: f64 },
    #[error("integration at E = {energy} became stiff near rho_tilde = {rho}")]
    Stiff { energy: f64, rho: f64 },
    #[error("invalid shooting setup: {0}")]
    InvalidSetup(String),
    #[error("forbidden quantum numbers: {0}")]
    Forbidden(Rejection),
}
