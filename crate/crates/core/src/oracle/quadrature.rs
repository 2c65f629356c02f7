use nalgebra::{DMatrix, SymmetricEigen};

use crate::specfun::{laguerre_pair, ln_gamma};
use crate::wavefunction::BoundState;

/// Nodes and weights of the n-point rule for ∫₀^∞ x^α e^{−x} p(x) dx,
/// from the eigen-decomposition of the Jacobi matrix.
pub fn gauss_laguerre(alpha: f64, n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(alpha > -1.0 && n > 0, "gauss_laguerre needs alpha > -1 and n > 0");
    let mut jacobi = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        jacobi[(i, i)] = 2.0 * i as f64 + alpha + 1.0;
        if i > 0 {
            let off = (i as f64 * (i as f64 + alpha)).sqrt();
            jacobi[(i, i - 1)] = off;
            jacobi[(i - 1, i)] = off;
        }
    }
    let eig = SymmetricEigen::new(jacobi);
    // The eigenvector weights carry an absolute error near eps², which is
    // far larger than the true weights at the outer nodes. Polish each node
    // on L_n and take the weight from the derivative instead.
    let deg = n as i64;
    let ln_scale = ln_gamma(n as f64 + alpha + 1.0) - ln_gamma(n as f64 + 1.0);
    let mut rule: Vec<(f64, f64)> = eig
        .eigenvalues
        .iter()
        .map(|&guess| {
            let mut x = guess;
            let mut slope = 0.0;
            for _ in 0..4 {
                let (prev, cur) = laguerre_pair(deg, alpha, x);
                slope = (n as f64 * cur - (n as f64 + alpha) * prev) / x;
                let step = cur / slope;
                x -= step;
                if step.abs() <= 1e-16 * x {
                    break;
                }
            }
            let (prev, _) = laguerre_pair(deg, alpha, x);
            if prev != 0.0 {
                slope = -(n as f64 + alpha) * prev / x;
            }
            (x, (ln_scale - x.ln() - 2.0 * slope.abs().ln()).exp())
        })
        .collect();
    rule.sort_by(|a, b| a.0.total_cmp(&b.0));
    rule.into_iter().unzip()
}

/// ∫₀^∞ x^α e^{−x} p(x) dx with an n-point rule.
pub fn integrate_weighted(alpha: f64, n: usize, p: impl Fn(f64) -> f64) -> f64 {
    let (nodes, weights) = gauss_laguerre(alpha, n);
    nodes.iter().zip(&weights).map(|(x, w)| w * p(*x)).sum()
}

/// Number of nodes used for a state: 2n_f + ⌈2γ⌉ + 20.
pub fn quadrature_order(state: &BoundState) -> usize {
    2 * state.quantum.n_f as usize + (2.0 * state.coeff.gamma).ceil() as usize + 20
}

/// ∫₀^∞ (g² + f²) dρ̃, written as x^{2γ} e^{−x} times the density
/// polynomial so the rule is exact up to rounding.
pub fn quadrature_norm(state: &BoundState) -> f64 {
    integrate_weighted(2.0 * state.coeff.gamma, quadrature_order(state), |x| state.coeff.density_polynomial(x))
}
