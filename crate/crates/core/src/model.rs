//! Domain types, dimensionless scaling, quantum-number bookkeeping, charge
//! conjugation and the spherical relabeling.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Rejection, Result};

/// Strengths of the Coulomb-type couplings together with the fermion mass.
///
/// `alpha_sigma` and `alpha_delta` are the strengths of V_Σ = α_Σ/ρ and
/// V_Δ = α_Δ/ρ, the tensor coupling is Ũ = a/ρ + b.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PotentialConfig {
    pub alpha_sigma: f64,
    pub alpha_delta: f64,
    pub a: f64,
    pub b: f64,
    pub m: f64,
}

impl PotentialConfig {
    pub fn new(alpha_sigma: f64, alpha_delta: f64, a: f64, b: f64, m: f64) -> Result<Self> {
        let cfg = PotentialConfig { alpha_sigma, alpha_delta, a, b, m };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Unit mass, so `b` is already the scaled tensor constant b̄.
    pub fn dimensionless(alpha_sigma: f64, alpha_delta: f64, a: f64, bbar: f64) -> Self {
        PotentialConfig { alpha_sigma, alpha_delta, a, b: bbar, m: 1.0 }
    }

    pub fn validate(&self) -> Result<()> {
        let fields = [self.alpha_sigma, self.alpha_delta, self.a, self.b, self.m];
        if fields.iter().any(|v| !v.is_finite()) {
            return Err(Error::Domain("potential parameters must be finite".into()));
        }
        if !(self.m > 0.0) {
            return Err(Error::Domain(format!("mass must be positive, got {}", self.m)));
        }
        Ok(())
    }

    pub fn bbar(&self) -> f64 {
        self.b / self.m
    }

    /// α_Δ + α_Σ.
    pub fn strength_sum(&self) -> f64 {
        self.alpha_delta + self.alpha_sigma
    }

    /// √(1 + b̄²), the edge of the continuum in units of m.
    pub fn continuum_edge(&self) -> f64 {
        1f64.hypot(self.bbar())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Circular,
    Spherical,
}

/// Principal and spin-orbit quantum numbers.
///
/// Half-integers are stored doubled. In spherical mode the integer k_s is
/// kept as the equivalent circular value k = -k_s, so `two_k` is even.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuantumNumbers {
    pub n_f: u32,
    two_k: i32,
    two_mj: i32,
    mode: Mode,
}

impl QuantumNumbers {
    /// Circular symmetry with m_j = k.
    pub fn circular(n_f: u32, two_k: i32) -> Result<Self> {
        if two_k % 2 == 0 {
            return Err(Error::Domain(format!("2k = {two_k} must be odd in circular mode")));
        }
        Ok(QuantumNumbers { n_f, two_k, two_mj: two_k, mode: Mode::Circular })
    }

    /// Spherical symmetry with spin-orbit eigenvalue k_s ∈ {±1, ±2, ...}.
    pub fn spherical(n_f: u32, k_s: i32) -> Result<Self> {
        let two_k = map_to_spherical(k_s)?;
        let two_mj = 2 * k_s.abs() - 1;
        Ok(QuantumNumbers { n_f, two_k, two_mj, mode: Mode::Spherical })
    }

    pub fn with_two_mj(self, two_mj: i32) -> Result<Self> {
        match self.mode {
            Mode::Circular if two_mj.abs() != self.two_k.abs() => {
                Err(Error::Domain(format!("|2m_j| = {} must equal |2k| = {}", two_mj.abs(), self.two_k.abs())))
            }
            Mode::Spherical if two_mj % 2 == 0 || two_mj.abs() > self.two_k.abs() - 1 => {
                Err(Error::Domain(format!("2m_j = {two_mj} incompatible with k_s = {}", -self.two_k / 2)))
            }
            _ => Ok(QuantumNumbers { two_mj, ..self }),
        }
    }

    pub fn with_n_f(self, n_f: u32) -> Self {
        QuantumNumbers { n_f, ..self }
    }

    /// Doubled spin-orbit value in the circular frame.
    pub fn two_k(&self) -> i32 {
        self.two_k
    }

    pub fn two_mj(&self) -> i32 {
        self.two_mj
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// Spin-orbit value entering the radial equations.
    pub fn k(&self) -> f64 {
        self.two_k as f64 / 2.0
    }

    /// The spherical label k_s, if this is a spherical state.
    pub fn spherical_k(&self) -> Option<i32> {
        match self.mode {
            Mode::Spherical => Some(-self.two_k / 2),
            Mode::Circular => None,
        }
    }

    /// Quantum number as the user labels it: k for circular, k_s for spherical.
    pub fn label(&self) -> String {
        match self.mode {
            Mode::Spherical => format!("{}", -self.two_k / 2),
            Mode::Circular => format!("{}/2", self.two_k),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sector {
    /// The E⁺ branch.
    Particle,
    /// The E⁻ branch.
    Antiparticle,
}

impl Sector {
    pub fn flip(self) -> Self {
        match self {
            Sector::Particle => Sector::Antiparticle,
            Sector::Antiparticle => Sector::Particle,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Sector::Particle => "particle",
            Sector::Antiparticle => "antiparticle",
        }
    }
}

/// Scaled quantities of one candidate level.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScaledState {
    pub kbar: f64,
    pub gamma: f64,
    pub xi: f64,
    pub energy: f64,
    pub lambda: f64,
    pub bbar: f64,
}

impl ScaledState {
    pub fn new(cfg: &PotentialConfig, q: &QuantumNumbers, energy: f64) -> Result<Self> {
        Self::from_kbar(cfg, effective_kappa(q, cfg), q.n_f, energy)
    }

    pub fn from_kbar(cfg: &PotentialConfig, kbar: f64, n_f: u32, energy: f64) -> Result<Self> {
        let gamma = gamma_exponent(kbar, cfg)?;
        let bbar = cfg.bbar();
        let lambda = decay_rate(energy, bbar)
            .ok_or_else(|| Error::Domain(format!("E = {energy} outside the bound interval")))?;
        Ok(ScaledState { kbar, gamma, xi: n_f as f64 + gamma, energy, lambda, bbar })
    }
}

/// λ = √(1 + b̄² − E²), `None` unless strictly positive.
///
/// Written as (1−E)(1+E) + b̄² so that E = ±1 gives λ = |b̄| exactly.
pub fn decay_rate(energy: f64, bbar: f64) -> Option<f64> {
    let sq = decay_rate_sq(energy, bbar);
    (sq > 0.0 && energy.is_finite()).then(|| sq.sqrt())
}

/// (1 − E)(1 + E) + b̄² with error-free products and sums, so the result
/// keeps its relative accuracy as E approaches the continuum edge.
fn decay_rate_sq(energy: f64, bbar: f64) -> f64 {
    let two_sum = |a: f64, b: f64| {
        let s = a + b;
        let v = s - a;
        (s, (a - (s - v)) + (b - v))
    };
    let (d, de) = two_sum(1.0, -energy);
    let (u, ue) = two_sum(1.0, energy);
    let p = d * u;
    let pe = d.mul_add(u, -p) + d * ue + de * u;
    let b2 = bbar * bbar;
    let b2e = bbar.mul_add(bbar, -b2);
    let (hi, lo) = two_sum(p, b2);
    hi + (lo + pe + b2e)
}

/// k̄ = k − a.
pub fn effective_kappa(q: &QuantumNumbers, cfg: &PotentialConfig) -> f64 {
    q.k() - cfg.a
}

/// γ = √(k̄² − α_Σα_Δ), rejected unless strictly above 1/2.
pub fn gamma_exponent(kbar: f64, cfg: &PotentialConfig) -> std::result::Result<f64, Rejection> {
    let sq = kbar * kbar - cfg.alpha_sigma * cfg.alpha_delta;
    if sq > 0.25 {
        Ok(sq.sqrt())
    } else {
        Err(Rejection::GammaTooSmall)
    }
}

/// ρ̃ = 2λ·(mρ).
pub fn scale_radius(m_rho: f64, s: &ScaledState) -> f64 {
    2.0 * s.lambda * m_rho
}

/// The charge-conjugate problem. Energies map as E → −E and g ↔ f.
pub fn charge_conjugate(cfg: &PotentialConfig, q: &QuantumNumbers) -> (PotentialConfig, QuantumNumbers) {
    let conj = PotentialConfig {
        alpha_sigma: -cfg.alpha_delta,
        alpha_delta: -cfg.alpha_sigma,
        a: -cfg.a,
        b: -cfg.b,
        m: cfg.m,
    };
    (conj, QuantumNumbers { two_k: -q.two_k, ..*q })
}

/// Doubled circular spin-orbit value that solves the spherical problem
/// with label k_s, namely k = −k_s.
pub fn map_to_spherical(k_s: i32) -> Result<i32> {
    if k_s == 0 {
        return Err(Error::Domain("k_s = 0 is not a spherical spin-orbit eigenvalue".into()));
    }
    Ok(-2 * k_s)
}
