use crate::wavefunction::BoundState;

/// Log-spaced and uniform points covering ρ̃ ∈ [1e-3, 40(n_f + γ)].
pub fn default_grid(state: &BoundState) -> Vec<f64> {
    let (lo, hi) = (1e-3f64, state.coeff.radius_cap());
    let n = 300;
    let ratio = (hi / lo).ln();
    let mut grid: Vec<f64> = (0..n).map(|i| lo * (ratio * i as f64 / (n - 1) as f64).exp()).collect();
    grid.extend((1..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64));
    grid.sort_by(f64::total_cmp);
    grid
}

/// Largest pointwise residual of the radial system
///
///   dg/dρ̃ = (k̄/ρ̃ − b̄/2λ) g + ((1+E)/2λ − α_Δ/ρ̃) f
///   df/dρ̃ = ((1−E)/2λ + α_Σ/ρ̃) g − (k̄/ρ̃ − b̄/2λ) f
///
/// at the given ρ̃ points, using analytic derivatives. Each residual is
/// divided by the largest individual term of its equation at that point.
pub fn residual_check(state: &BoundState, grid: &[f64]) -> f64 {
    let cfg = &state.config;
    let s = &state.scaled;
    let scale = 0.5 / s.lambda;
    let tensor = s.bbar * scale;
    let upper = (1.0 + s.energy) * scale;
    let lower = (1.0 - s.energy) * scale;
    let relative = |terms: [f64; 5], total: f64| {
        let largest = terms.iter().fold(0.0f64, |m, t| m.max(t.abs()));
        if largest == 0.0 {
            0.0
        } else {
            total.abs() / largest
        }
    };
    let mut worst = 0.0f64;
    for &rho in grid.iter().filter(|r| **r > 0.0) {
        let (g, f) = state.coeff.values(rho);
        let (dg, df) = state.coeff.derivatives(rho);
        let k = s.kbar / rho;
        let first = [dg, -k * g, tensor * g, -upper * f, cfg.alpha_delta / rho * f];
        let second = [df, -lower * g, -cfg.alpha_sigma / rho * g, k * f, -tensor * f];
        let r1 = relative(first, first.iter().sum());
        let r2 = relative(second, second.iter().sum());
        worst = worst.max(r1).max(r2);
        if r1.is_nan() || r2.is_nan() {
            return f64::NAN;
        }
    }
    worst
}
