use nalgebra::{Matrix2, Vector2};
use ode_solvers::dop_shared::IntegrationError;
use ode_solvers::{Dopri5, OutputType, System};
use rayon::prelude::*;

use super::OracleError;
use crate::model::{decay_rate, gamma_exponent, PotentialConfig};

/// Parameters of the shooting search. Radii are in ρ̃ = 2λ·mρ, so the
/// start and cutoff follow the decay length of each trial energy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShootingConfig {
    pub rho_min: f64,
    pub rho_max: f64,
    pub rtol: f64,
    pub atol: f64,
    pub bracket: (f64, f64),
    pub max_bisections: u32,
    pub grid_points: usize,
    /// Bisection stops once the energy interval is narrower than this.
    pub energy_tol: f64,
}

impl ShootingConfig {
    pub fn new(bracket: (f64, f64)) -> Self {
        ShootingConfig {
            rho_min: 1e-4,
            rho_max: 150.0,
            rtol: 1e-12,
            atol: 1e-14,
            bracket,
            max_bisections: 200,
            grid_points: 400,
            energy_tol: 1e-10,
        }
    }

    fn validate(&self, edge: f64) -> Result<(), OracleError> {
        let (lo, hi) = self.bracket;
        if !(0.0 < self.rho_min && self.rho_min < self.rho_max) {
            return Err(OracleError::InvalidSetup(format!("radii {} .. {}", self.rho_min, self.rho_max)));
        }
        if !(lo < hi && -edge < lo && hi < edge) {
            return Err(OracleError::InvalidSetup(format!("bracket ({lo}, {hi}) outside (-{edge}, {edge})")));
        }
        if self.grid_points < 2 {
            return Err(OracleError::InvalidSetup("need at least two grid points".into()));
        }
        Ok(())
    }
}

/// The radial system in ρ̃ at fixed energy.
#[derive(Clone, Copy)]
struct Radial {
    kbar: f64,
    alpha_sigma: f64,
    alpha_delta: f64,
    tensor: f64,
    upper: f64,
    lower: f64,
}

impl Radial {
    fn new(cfg: &PotentialConfig, kbar: f64, energy: f64, lambda: f64) -> Self {
        let scale = 0.5 / lambda;
        Radial {
            kbar,
            alpha_sigma: cfg.alpha_sigma,
            alpha_delta: cfg.alpha_delta,
            tensor: cfg.bbar() * scale,
            upper: (1.0 + energy) * scale,
            lower: (1.0 - energy) * scale,
        }
    }

    /// y' = M(ρ̃) y.
    fn matrix(&self, rho: f64) -> Matrix2<f64> {
        let k = self.kbar / rho;
        Matrix2::new(
            k - self.tensor,
            self.upper - self.alpha_delta / rho,
            self.lower + self.alpha_sigma / rho,
            -k + self.tensor,
        )
    }

    /// Coefficient of 1/ρ̃ and the constant part of M.
    fn singular_parts(&self) -> (Matrix2<f64>, Matrix2<f64>) {
        (
            Matrix2::new(self.kbar, -self.alpha_delta, self.alpha_sigma, -self.kbar),
            Matrix2::new(-self.tensor, self.upper, self.lower, self.tensor),
        )
    }
}

impl System<f64, Vector2<f64>> for Radial {
    fn system(&self, x: f64, y: &Vector2<f64>, dy: &mut Vector2<f64>) {
        *dy = self.matrix(x) * y;
    }
}

/// Regular solution near the origin, y = ρ̃^γ Σ c_j ρ̃^j, with the ρ̃^γ
/// factor dropped and the result normalized.
fn frobenius_start(sys: &Radial, gamma: f64, rho: f64) -> Vector2<f64> {
    let (a0, a1) = sys.singular_parts();
    let first = Vector2::new(gamma + sys.kbar, sys.alpha_sigma);
    let second = Vector2::new(sys.alpha_delta, sys.kbar - gamma);
    let mut c = if first.norm() >= second.norm() { first } else { second };
    c /= c.norm();
    let mut sum = c;
    let mut power = 1.0;
    for j in 1..=3 {
        let shifted = Matrix2::identity() * (gamma + j as f64) - a0;
        let Some(inv) = shifted.try_inverse() else { break };
        c = inv * (a1 * c);
        power *= rho;
        sum += c * power;
    }
    sum / sum.norm()
}

/// Eigenvector of M(ρ̃) for its negative eigenvalue, oriented along the
/// asymptotic decaying direction so that it varies continuously with E.
fn decaying_start(sys: &Radial, rho: f64, energy: f64, lambda: f64, bbar: f64) -> Vector2<f64> {
    let m = sys.matrix(rho);
    let mu = -(-m.determinant()).max(0.0).sqrt();
    let a = Vector2::new(m[(0, 1)], mu - m[(0, 0)]);
    let b = Vector2::new(mu - m[(1, 1)], m[(1, 0)]);
    let v = if a.norm() >= b.norm() { a } else { b };
    // Null vectors of the ρ̃ → ∞ matrix; each vanishes at most at one of
    // E = ±1, and never on the branch chosen here.
    let reference =
        if bbar > 0.0 { Vector2::new(lambda + bbar, energy - 1.0) } else { Vector2::new(1.0 + energy, bbar - lambda) };
    let v = if v.dot(&reference) < 0.0 { -v } else { v };
    v / v.norm()
}

fn integrate(
    sys: Radial,
    from: f64,
    to: f64,
    y0: Vector2<f64>,
    shoot: &ShootingConfig,
    energy: f64,
) -> Result<Vector2<f64>, OracleError> {
    let span = (to - from).abs();
    // Sparse output: the final state comes from a full step, not the
    // interpolant.
    let mut solver = Dopri5::from_param(
        sys,
        from,
        to,
        span,
        y0,
        shoot.rtol,
        shoot.atol,
        0.9,
        0.04,
        0.2,
        10.0,
        span,
        0.0,
        100_000,
        1000,
        OutputType::Sparse,
    );
    solver.integrate().map_err(|e| match e {
        IntegrationError::MaxNumStepReached { x, .. } => OracleError::MaxSteps { energy, rho: x },
        IntegrationError::StepSizeUnderflow { x } => OracleError::StepUnderflow { energy, rho: x },
        IntegrationError::StiffnessDetected { x } => OracleError::Stiff { energy, rho: x },
    })?;
    Ok(*solver.y_out().last().expect("solver stores the final state"))
}

fn match_radius(gamma: f64) -> f64 {
    (2.0 * gamma).max(1.0)
}

/// Normalized Wronskian between the regular solution grown from the origin
/// and the decaying solution integrated in from `rho_max`, taken at
/// ρ̃ = max(2γ, 1). It vanishes exactly at eigenvalues and changes sign
/// across each of them.
pub fn integrate_radial(
    cfg: &PotentialConfig,
    kbar: f64,
    energy: f64,
    shoot: &ShootingConfig,
) -> Result<f64, OracleError> {
    let gamma = gamma_exponent(kbar, cfg).map_err(OracleError::Forbidden)?;
    let lambda = decay_rate(energy, cfg.bbar())
        .ok_or_else(|| OracleError::InvalidSetup(format!("E = {energy} outside the bound interval")))?;
    let sys = Radial::new(cfg, kbar, energy, lambda);
    let rho_match = match_radius(gamma);
    if !(shoot.rho_min < rho_match && rho_match < shoot.rho_max) {
        return Err(OracleError::InvalidSetup(format!(
            "matching radius {rho_match} outside ({}, {})",
            shoot.rho_min, shoot.rho_max
        )));
    }
    let start = frobenius_start(&sys, gamma, shoot.rho_min);
    let outward = integrate(sys, shoot.rho_min, rho_match, start, shoot, energy)?;
    let tail = decaying_start(&sys, shoot.rho_max, energy, lambda, cfg.bbar());
    let inward = integrate(sys, shoot.rho_max, rho_match, tail, shoot, energy)?;
    let wronskian = outward[0] * inward[1] - outward[1] * inward[0];
    Ok(wronskian / (outward.norm() * inward.norm()))
}

/// Trial energies: half uniform in E, half uniform in 1/λ on each side of
/// E = 0 so that the accumulation near the continuum edges is resolved.
fn energy_grid(lo: f64, hi: f64, points: usize, bbar: f64) -> Vec<f64> {
    let uniform = points / 2;
    let mut grid: Vec<f64> =
        (0..uniform.max(2)).map(|i| lo + (hi - lo) * i as f64 / (uniform.max(2) - 1) as f64).collect();
    let inv_lambda = |e: f64| 1.0 / decay_rate(e, bbar).expect("bracket inside the bound interval");
    let edge_sq = 1.0 + bbar * bbar;
    let energy_of = |w: f64| (edge_sq - 1.0 / (w * w)).max(0.0).sqrt();
    let halves: Vec<(f64, f64, f64)> =
        [(lo, hi.min(0.0), -1.0), (lo.max(0.0), hi, 1.0)].into_iter().filter(|(a, b, _)| a < b).collect();
    let per_half = (points - uniform) / halves.len().max(1);
    for (a, b, sign) in halves {
        // On each side |E| grows monotonically with 1/λ.
        let (near, far) = if sign < 0.0 { (b, a) } else { (a, b) };
        let (w0, w1) = (inv_lambda(near), inv_lambda(far));
        for i in 0..per_half {
            let w = w0 + (w1 - w0) * i as f64 / (per_half.max(2) - 1) as f64;
            grid.push(sign * energy_of(w));
        }
    }
    grid.retain(|e| *e >= lo && *e <= hi);
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    grid
}

/// Eigenvalues inside `shoot.bracket`, ascending, at most `count`.
pub fn find_eigenvalues(
    cfg: &PotentialConfig,
    kbar: f64,
    shoot: &ShootingConfig,
    count: usize,
) -> Result<Vec<f64>, OracleError> {
    shoot.validate(cfg.continuum_edge())?;
    gamma_exponent(kbar, cfg).map_err(OracleError::Forbidden)?;
    let (lo, hi) = shoot.bracket;
    let grid = energy_grid(lo, hi, shoot.grid_points, cfg.bbar());
    let values = grid.par_iter().map(|&e| integrate_radial(cfg, kbar, e, shoot)).collect::<Result<Vec<f64>, _>>()?;
    let mut found = Vec::new();
    for i in 0..grid.len() {
        if values[i] == 0.0 {
            found.push(grid[i]);
            continue;
        }
        if i + 1 < grid.len() && values[i] * values[i + 1] < 0.0 {
            found.push(bisect(cfg, kbar, shoot, (grid[i], values[i]), grid[i + 1])?);
        }
    }
    found.truncate(count);
    Ok(found)
}

fn bisect(
    cfg: &PotentialConfig,
    kbar: f64,
    shoot: &ShootingConfig,
    (mut lo, mut f_lo): (f64, f64),
    mut hi: f64,
) -> Result<f64, OracleError> {
    for _ in 0..shoot.max_bisections {
        if hi - lo < shoot.energy_tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let f_mid = integrate_radial(cfg, kbar, mid, shoot)?;
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if (f_mid < 0.0) == (f_lo < 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
