use dirac_coulomb::oracle::{default_grid, residual_check};
use dirac_coulomb::*;
fn main() {
    let c = PotentialConfig::dimensionless(
        0.7363166531276892,
        0.1486596416535957,
        0.2873524300950614,
        -0.02964062829774039,
    );
    for n in 0..3 {
        let q = QuantumNumbers::circular(n, 9).unwrap();
        let s = build_bound_state(&c, &q, Sector::Antiparticle).unwrap();
        let co = &s.coeff;
        println!(
            "n={n} E={} K={} a+={} a-={} gamma={} r={} lambda={} res={:e}",
            s.energy(),
            co.kbar + co.a_plus,
            co.a_plus,
            co.a_minus,
            co.gamma,
            co.ratio(),
            co.lambda,
            residual_check(&s, &default_grid(&s))
        );
    }
}
