//! Named parameter sets.

use crate::model::PotentialConfig;

/// α_Δ = 0.8, α_Σ = 0.6, a = 0, b̄ = 0.2.
pub fn fig3a() -> PotentialConfig {
    PotentialConfig::dimensionless(0.6, 0.8, 0.0, 0.2)
}

/// α_Δ = −0.8, α_Σ = 0.1, a = 0, b̄ = −0.2.
pub fn fig3b() -> PotentialConfig {
    PotentialConfig::dimensionless(0.1, -0.8, 0.0, -0.2)
}

pub fn by_name(name: &str) -> Option<PotentialConfig> {
    match name {
        "fig3a" => Some(fig3a()),
        "fig3b" => Some(fig3b()),
        _ => None,
    }
}

pub const NAMES: [&str; 2] = ["fig3a", "fig3b"];
