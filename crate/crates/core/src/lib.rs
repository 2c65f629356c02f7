//! Bound states of a spin-1/2 fermion with scalar, vector and tensor
//! Coulomb couplings plus a constant tensor term, in circular or spherical
//! symmetry.
//!
//! All quantities are dimensionless: energies E = ε/m, the tensor constant
//! b̄ = b/m and radii mρ. Radial functions are evaluated in ρ̃ = 2λ·mρ.
//!
//! ```
//! use dirac_coulomb::{build_bound_state, presets, QuantumNumbers, Sector};
//!
//! let q = QuantumNumbers::circular(1, 3).unwrap();
//! let state = build_bound_state(&presets::fig3a(), &q, Sector::Antiparticle).unwrap();
//! assert!((state.energy() + 0.91663051836722).abs() < 1e-12);
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord)] // NaN must fail tolerance checks.
pub mod cases;
pub mod error;
pub mod model;
pub mod oracle;
pub mod presets;
pub mod specfun;
pub mod spectrum;
pub mod wavefunction;

pub use error::{Error, Rejection, Result};
pub use model::{
    charge_conjugate, effective_kappa, gamma_exponent, map_to_spherical, scale_radius, Mode, PotentialConfig,
    QuantumNumbers, ScaledState, Sector,
};
pub use oracle::{OracleError, ShootingConfig};
pub use spectrum::{
    bound_levels, classify_regime, energy_candidates, filter_spurious, quantization_residual, sector_level,
    EnergyCandidates, Level, RegimeReport, Region, SectorOutcome, SectorSet,
};
pub use wavefunction::{build_bound_state, BoundState, RadialCoefficients};
