use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Machine-readable reason a requested state does not exist.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Rejection {
    /// k̄² ≤ 1/4 + α_Σα_Δ, so the near-origin exponent is not above 1/2.
    GammaTooSmall,
    /// k̄ + A⁺ vanishes and the radial functions collapse.
    KbarPlusAPlusZero,
    /// No root of the energy equation survives for this sector.
    NoBindingRegime,
    /// A root sits at E = ±1 but the sign conditions for that state fail.
    BoundaryStateForbidden,
}

impl Rejection {
    pub fn code(self) -> &'static str {
        match self {
            Rejection::GammaTooSmall => "GammaTooSmall",
            Rejection::KbarPlusAPlusZero => "KbarPlusAPlusZero",
            Rejection::NoBindingRegime => "NoBindingRegime",
            Rejection::BoundaryStateForbidden => "BoundaryStateForbidden",
        }
    }

    pub fn describe(self) -> &'static str {
        match self {
            Rejection::GammaTooSmall => "gamma = sqrt(kbar^2 - alpha_sigma*alpha_delta) must exceed 1/2",
            Rejection::KbarPlusAPlusZero => "kbar + A+ vanishes, no normalizable solution",
            Rejection::NoBindingRegime => "no root of the energy equation survives in this sector",
            Rejection::BoundaryStateForbidden => {
                "root at E = +-1 without the sign conditions on bbar, kbar and the strengths"
            }
        }
    }
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("series did not converge within {terms} terms")]
    NonConvergence { terms: usize },
    #[error("forbidden state: {0}")]
    Forbidden(Rejection),
}

impl From<Rejection> for Error {
    fn from(r: Rejection) -> Self {
        Error::Forbidden(r)
    }
}

pub type Result<T> = std::result::Result<T, Error>;
