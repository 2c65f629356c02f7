//! Closed-form radial functions g and f, their normalization and the
//! assembly of fully validated bound states.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Rejection, Result};
use crate::model::{PotentialConfig, QuantumNumbers, ScaledState, Sector};
use crate::specfun::{laguerre_pair, ln_gamma};
use crate::spectrum::{boundary_state_allowed_kbar, sector_level, Level};

/// Radial functions are evaluated on ρ̃ ∈ [0, RADIUS_CAP·(n_f + γ)] and
/// vanish beyond.
pub const RADIUS_CAP: f64 = 40.0;

/// r = (b̄+λ)/(1+E) = (1−E)/(λ−b̄) and its inverse, each from the form
/// with the larger denominator.
fn ratio_pair(s: &ScaledState) -> Result<(f64, f64)> {
    let (e, lambda, bbar) = (s.energy, s.lambda, s.bbar);
    let (d1, d2) = (1.0 + e, lambda - bbar);
    let ratio = if d1.abs() >= d2.abs() { (bbar + lambda) / d1 } else { (1.0 - e) / d2 };
    let (d3, d4) = (bbar + lambda, 1.0 - e);
    let inverse = if d3.abs() >= d4.abs() { d1 / d3 } else { d2 / d4 };
    if !(ratio.is_finite() && inverse.is_finite()) || d1.abs().max(d2.abs()) == 0.0 {
        return Err(Error::Domain(format!("decoupling ratio diverges at E = {e}, bbar = {bbar}")));
    }
    Ok((ratio, inverse))
}

/// η/μ = −(b̄+λ)/(1+E).
pub fn decoupling_ratio(s: &ScaledState) -> Result<f64> {
    Ok(-ratio_pair(s)?.0)
}

fn check_boundary(cfg: &PotentialConfig, s: &ScaledState) -> Result<()> {
    for sign in [1, -1] {
        if s.energy == sign as f64 && !boundary_state_allowed_kbar(cfg, s.kbar, sign) {
            return Err(Error::Domain(format!("E = {sign} is not an admissible boundary state here")));
        }
    }
    Ok(())
}

/// A± = −½[α_Σ(λ−b̄)/(1−E) ± α_Δ(λ+b̄)/(1+E)].
pub fn a_plus_minus(cfg: &PotentialConfig, s: &ScaledState) -> Result<(f64, f64)> {
    check_boundary(cfg, s)?;
    let (ratio, inverse) = ratio_pair(s)?;
    let sigma_term = if cfg.alpha_sigma == 0.0 { 0.0 } else { cfg.alpha_sigma * inverse };
    let delta_term = if cfg.alpha_delta == 0.0 { 0.0 } else { cfg.alpha_delta * ratio };
    Ok((-0.5 * (sigma_term + delta_term), -0.5 * (sigma_term - delta_term)))
}

/// Coefficients of the normalized radial functions.
///
/// g = μ̄P/(k̄+A⁺)·ρ̃^γ e^{−ρ̃/2}·[c_g L_n − (n+2γ)L_{n−1}] and
/// f = r μ̄P/(k̄+A⁺)·ρ̃^γ e^{−ρ̃/2}·[c_f L_n − (n+2γ)L_{n−1}],
/// with P = n!Γ(2γ+1)/Γ(n+2γ+1), all Laguerre polynomials of order 2γ, and
/// r = −η̄/μ̄.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadialCoefficients {
    pub mu_bar: f64,
    pub eta_bar: f64,
    pub a_plus: f64,
    pub a_minus: f64,
    pub gamma: f64,
    pub lambda: f64,
    pub n_f: u32,
    pub kbar: f64,
    ratio: f64,
    /// c_g/(k̄+A⁺).
    g_lead: f64,
    /// c_f/(k̄+A⁺).
    f_lead: f64,
    /// (n+2γ)/(k̄+A⁺), zero when n = 0.
    tail: f64,
    /// ln|μ̄P|.
    ln_amp: f64,
}

impl RadialCoefficients {
    fn assemble(cfg: &PotentialConfig, s: &ScaledState, n_f: u32, boundary: bool) -> Result<Self> {
        let (a_plus, a_minus) = a_plus_minus(cfg, s)?;
        let (ratio, _) = ratio_pair(s)?;
        let n = n_f as f64;
        let gamma = s.gamma;
        let kpa = s.kbar + a_plus;
        let (g_lead, f_lead, tail) = if boundary {
            if s.energy > 0.0 {
                (2.0, 0.0, 0.0)
            } else {
                (0.0, -2.0, 0.0)
            }
        } else {
            if kpa == 0.0 {
                return Err(Error::Forbidden(Rejection::KbarPlusAPlusZero));
            }
            // t = (n + γ − A⁻)/(k̄+A⁺); at n = 0 use (γ−A⁻)(γ+A⁻) = (k̄−A⁺)(k̄+A⁺).
            let alt = gamma + a_minus;
            let t =
                if n_f == 0 && alt.abs() > kpa.abs() { (s.kbar - a_plus) / alt } else { (n + gamma - a_minus) / kpa };
            let tail = if n_f == 0 { 0.0 } else { (n + 2.0 * gamma) / kpa };
            (1.0 + t, t - 1.0, tail)
        };
        let mut c = RadialCoefficients {
            mu_bar: 0.0,
            eta_bar: 0.0,
            a_plus,
            a_minus,
            gamma,
            lambda: s.lambda,
            n_f,
            kbar: s.kbar,
            ratio,
            g_lead,
            f_lead,
            tail,
            ln_amp: 0.0,
        };
        let mu_sq = normalization(&c, s, cfg);
        c.mu_bar = mu_sq.sqrt();
        c.eta_bar = -ratio * c.mu_bar;
        c.ln_amp = 0.5 * mu_sq.ln() + ln_prefactor(n_f, gamma);
        Ok(c)
    }

    /// −η̄/μ̄.
    pub fn ratio(&self) -> f64 {
        self.ratio
    }

    /// Same state with μ̄ and η̄ multiplied by `factor > 0`.
    pub fn rescaled(&self, factor: f64) -> Self {
        RadialCoefficients {
            mu_bar: self.mu_bar * factor,
            eta_bar: self.eta_bar * factor,
            ln_amp: self.ln_amp + factor.ln(),
            ..*self
        }
    }

    pub fn radius_cap(&self) -> f64 {
        RADIUS_CAP * (self.n_f as f64 + self.gamma)
    }

    /// Signed μ̄P/(k̄+A⁺)-type amplitude times ρ̃^γ e^{−ρ̃/2}.
    fn envelope(&self, rho: f64) -> f64 {
        if rho == 0.0 {
            return 0.0;
        }
        (self.ln_amp + self.gamma * rho.ln() - 0.5 * rho).exp()
    }

    /// Bracketed polynomials of g and f.
    pub(crate) fn polynomials(&self, rho: f64) -> (f64, f64) {
        let (lm, l) = laguerre_pair(self.n_f as i64, 2.0 * self.gamma, rho);
        (self.g_lead * l - self.tail * lm, self.f_lead * l - self.tail * lm)
    }

    fn polynomial_derivatives(&self, rho: f64) -> (f64, f64) {
        let (dm, d) = laguerre_pair(self.n_f as i64 - 1, 2.0 * self.gamma + 1.0, rho);
        (-self.g_lead * d + self.tail * dm, -self.f_lead * d + self.tail * dm)
    }

    /// (g, f) at ρ̃ without the radius cap.
    pub fn values(&self, rho: f64) -> (f64, f64) {
        let env = self.envelope(rho);
        let (pg, pf) = self.polynomials(rho);
        (env * pg, self.ratio * env * pf)
    }

    /// (dg/dρ̃, df/dρ̃) from the Laguerre derivative identity.
    pub fn derivatives(&self, rho: f64) -> (f64, f64) {
        let env = self.envelope(rho);
        let (pg, pf) = self.polynomials(rho);
        let (dg, df) = self.polynomial_derivatives(rho);
        let slope = self.gamma / rho - 0.5;
        (env * (slope * pg + dg), self.ratio * env * (slope * pf + df))
    }

    /// |μ̄P|², the factor multiplying ρ̃^{2γ} e^{−ρ̃} in g² + f².
    pub(crate) fn amplitude_sq(&self) -> f64 {
        (2.0 * self.ln_amp).exp()
    }

    /// (g² + f²)/(ρ̃^{2γ} e^{−ρ̃}), a polynomial of degree 2n_f.
    pub(crate) fn density_polynomial(&self, rho: f64) -> f64 {
        let (pg, pf) = self.polynomials(rho);
        self.amplitude_sq() * (pg * pg + self.ratio * self.ratio * pf * pf)
    }
}

/// ln(n!Γ(2γ+1)/Γ(n+2γ+1)).
fn ln_prefactor(n_f: u32, gamma: f64) -> f64 {
    let n = n_f as f64;
    ln_gamma(n + 1.0) + ln_gamma(2.0 * gamma + 1.0) - ln_gamma(n + 2.0 * gamma + 1.0)
}

/// g at ρ̃, zero beyond 40(n_f + γ).
pub fn radial_g(rho_tilde: f64, coeff: &RadialCoefficients) -> f64 {
    if rho_tilde > coeff.radius_cap() {
        return 0.0;
    }
    coeff.values(rho_tilde).0
}

/// f at ρ̃, zero beyond 40(n_f + γ).
pub fn radial_f(rho_tilde: f64, coeff: &RadialCoefficients) -> f64 {
    if rho_tilde > coeff.radius_cap() {
        return 0.0;
    }
    coeff.values(rho_tilde).1
}

/// |μ̄|² such that ∫(g² + f²)dρ̃ = 2λ:
///
/// |μ̄|² = 2λ[(k̄+A⁺)/Γ(2γ+1)]² Γ(n+2γ+1)/n! ·
///        {c_g² + n(n+2γ) + r²[c_f² + n(n+2γ)]}⁻¹.
///
/// Evaluated with the brace divided by (k̄+A⁺)², which stays finite for the
/// E = ±1 states.
pub fn normalization(coeff: &RadialCoefficients, s: &ScaledState, _cfg: &PotentialConfig) -> f64 {
    let n = coeff.n_f as f64;
    let gamma = coeff.gamma;
    let r2 = coeff.ratio * coeff.ratio;
    // n(n+2γ)/(k̄+A⁺)² written through tail = (n+2γ)/(k̄+A⁺).
    let mixed = if coeff.n_f == 0 { 0.0 } else { n / (n + 2.0 * gamma) * coeff.tail * coeff.tail };
    let brace = coeff.g_lead * coeff.g_lead + r2 * coeff.f_lead * coeff.f_lead + (1.0 + r2) * mixed;
    let ln_gammas = ln_gamma(n + 2.0 * gamma + 1.0) - ln_gamma(n + 1.0) - 2.0 * ln_gamma(2.0 * gamma + 1.0);
    2.0 * s.lambda * (ln_gammas - brace.ln()).exp()
}

/// A fully validated bound state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundState {
    pub config: PotentialConfig,
    pub quantum: QuantumNumbers,
    pub level: Level,
    pub scaled: ScaledState,
    pub coeff: RadialCoefficients,
}

impl BoundState {
    pub fn energy(&self) -> f64 {
        self.level.energy
    }

    pub fn sector(&self) -> Sector {
        self.level.sector
    }

    pub fn g(&self, rho_tilde: f64) -> f64 {
        radial_g(rho_tilde, &self.coeff)
    }

    pub fn f(&self, rho_tilde: f64) -> f64 {
        radial_f(rho_tilde, &self.coeff)
    }

    /// ρ̃ corresponding to the dimensionless radius mρ.
    pub fn rho_tilde(&self, m_rho: f64) -> f64 {
        crate::model::scale_radius(m_rho, &self.scaled)
    }

    /// Same state with a different overall factor on μ̄ and η̄.
    pub fn rescaled(&self, factor: f64) -> Self {
        BoundState { coeff: self.coeff.rescaled(factor), ..*self }
    }
}

/// Runs the full pipeline for one sector.
pub fn build_bound_state(
    cfg: &PotentialConfig,
    q: &QuantumNumbers,
    sector: Sector,
) -> std::result::Result<BoundState, Rejection> {
    let level = sector_level(cfg, q, sector)?;
    let scaled = ScaledState::new(cfg, q, level.energy).map_err(|_| Rejection::NoBindingRegime)?;
    let coeff = RadialCoefficients::assemble(cfg, &scaled, q.n_f, level.boundary).map_err(|e| match e {
        Error::Forbidden(r) => r,
        _ => Rejection::NoBindingRegime,
    })?;
    Ok(BoundState { config: *cfg, quantum: *q, level, scaled, coeff })
}
