//! Particular coupling families with their own closed-form spectra.
//!
//! Each reducer is written from its specialized formula and only shares
//! the candidate type with the general path.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{effective_kappa, gamma_exponent, PotentialConfig, QuantumNumbers};
use crate::spectrum::EnergyCandidates;

/// Strength magnitude treated as zero by [`detect`].
pub const CASE_ZERO: f64 = 1e-15;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CaseKind {
    /// No tensor coupling, a = b = 0.
    ScalarVector,
    /// Only the tensor coupling.
    PureTensor,
    /// α_Δ = 0 with a tensor coupling.
    SpinBreaking,
    /// α_Σ = 0 with a tensor coupling.
    PseudospinBreaking,
    /// α_Σ = −α_Δ with a tensor coupling.
    ScalarTensor,
}

/// Classifies a configuration, `None` for the general case.
pub fn detect(cfg: &PotentialConfig) -> Option<CaseKind> {
    let zero = |v: f64| v.abs() < CASE_ZERO;
    let (sigma, delta) = (cfg.alpha_sigma, cfg.alpha_delta);
    if zero(cfg.a) && zero(cfg.bbar()) {
        Some(CaseKind::ScalarVector)
    } else if zero(sigma) && zero(delta) {
        Some(CaseKind::PureTensor)
    } else if zero(delta) {
        Some(CaseKind::SpinBreaking)
    } else if zero(sigma) {
        Some(CaseKind::PseudospinBreaking)
    } else if zero(sigma + delta) {
        Some(CaseKind::ScalarTensor)
    } else {
        None
    }
}

fn require(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Domain(format!("configuration outside the {what} family")))
    }
}

fn pair(plus: f64, minus: f64, discriminant: f64) -> EnergyCandidates {
    if discriminant < 0.0 {
        EnergyCandidates { e_plus: None, e_minus: None, discriminant }
    } else {
        EnergyCandidates { e_plus: Some(plus), e_minus: Some(minus), discriminant }
    }
}

/// E± = [α_Δ² − α_Σ² ± 4ξ√(α_Δα_Σ + ξ²)] / [(α_Δ+α_Σ)² + 4ξ²].
pub fn scalar_vector_spectrum(cfg: &PotentialConfig, q: &QuantumNumbers) -> Result<EnergyCandidates> {
    require(cfg.a == 0.0 && cfg.b == 0.0, "scalar-vector")?;
    let gamma = gamma_exponent(q.k(), cfg)?;
    let xi = q.n_f as f64 + gamma;
    let (sigma, delta) = (cfg.alpha_sigma, cfg.alpha_delta);
    let radicand = delta * sigma + xi * xi;
    let root = 4.0 * xi * radicand.max(0.0).sqrt();
    let num = delta * delta - sigma * sigma;
    let den = (delta + sigma).powi(2) + 4.0 * xi * xi;
    Ok(pair((num + root) / den, (num - root) / den, 4.0 * radicand))
}

/// E± = ±√(1 + b̄²[1 − (k̄/(n_f + |k̄|))²]).
pub fn pure_tensor_spectrum(cfg: &PotentialConfig, q: &QuantumNumbers) -> Result<EnergyCandidates> {
    require(cfg.alpha_sigma == 0.0 && cfg.alpha_delta == 0.0, "pure tensor")?;
    let kbar = effective_kappa(q, cfg);
    gamma_exponent(kbar, cfg)?;
    let bbar = cfg.bbar();
    let shrink = kbar / (q.n_f as f64 + kbar.abs());
    let e = (1.0 + bbar * bbar * (1.0 - shrink * shrink)).sqrt();
    Ok(pair(e, -e, 0.0))
}

/// Spectrum with one of α_Σ, α_Δ zero and ξ = n_f + |k̄|.
pub fn symmetry_breaking_spectrum(cfg: &PotentialConfig, q: &QuantumNumbers) -> Result<EnergyCandidates> {
    let kbar = effective_kappa(q, cfg);
    let bbar = cfg.bbar();
    let xi = q.n_f as f64 + kbar.abs();
    if kbar.abs() <= 0.5 {
        return Err(crate::Rejection::GammaTooSmall.into());
    }
    // α_Δ = 0 with strength α_Σ, or α_Σ = 0 with strength α_Δ.
    let (strength, linear) = if cfg.alpha_delta == 0.0 {
        (cfg.alpha_sigma, 2.0 * kbar * bbar - cfg.alpha_sigma)
    } else if cfg.alpha_sigma == 0.0 {
        (cfg.alpha_delta, 2.0 * kbar * bbar + cfg.alpha_delta)
    } else {
        return Err(Error::Domain("configuration outside the symmetry-breaking family".into()));
    };
    let den = strength * strength + 4.0 * xi * xi;
    let disc = den * (1.0 + bbar * bbar) - linear * linear;
    let root = 2.0 * xi * disc.max(0.0).sqrt();
    Ok(pair((strength * linear + root) / den, (strength * linear - root) / den, disc))
}

/// E± = ±√(1 + b̄² − ((k̄b̄ − α_S)/ξ)²) with α_S = α_Σ = −α_Δ and
/// ξ = n_f + √(k̄² + α_S²).
pub fn scalar_tensor_spectrum(cfg: &PotentialConfig, q: &QuantumNumbers) -> Result<EnergyCandidates> {
    require(cfg.alpha_sigma == -cfg.alpha_delta, "scalar-tensor")?;
    let alpha_s = cfg.alpha_sigma;
    let kbar = effective_kappa(q, cfg);
    let xi = q.n_f as f64 + kbar.hypot(alpha_s);
    if kbar.abs() <= 0.5 {
        return Err(crate::Rejection::GammaTooSmall.into());
    }
    let bbar = cfg.bbar();
    let shift = (kbar * bbar - alpha_s) / xi;
    let disc = 1.0 + bbar * bbar - shift * shift;
    let e = disc.max(0.0).sqrt();
    Ok(pair(e, -e, disc))
}

/// Case-specific spectrum, dispatching on [`detect`].
pub fn case_spectrum(cfg: &PotentialConfig, q: &QuantumNumbers) -> Option<Result<EnergyCandidates>> {
    Some(match detect(cfg)? {
        CaseKind::ScalarVector => scalar_vector_spectrum(cfg, q),
        CaseKind::PureTensor => pure_tensor_spectrum(cfg, q),
        CaseKind::SpinBreaking | CaseKind::PseudospinBreaking => symmetry_breaking_spectrum(cfg, q),
        CaseKind::ScalarTensor => scalar_tensor_spectrum(cfg, q),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Sector;
    use crate::spectrum::{energy_candidates, filter_spurious, sector_level};
    use proptest::prelude::*;

    fn cfg(alpha_sigma: f64, alpha_delta: f64, a: f64, bbar: f64) -> PotentialConfig {
        PotentialConfig::dimensionless(alpha_sigma, alpha_delta, a, bbar)
    }

    fn qn(n_f: u32, two_k: i32) -> QuantumNumbers {
        QuantumNumbers::circular(n_f, two_k).unwrap()
    }

    #[test]
    fn detection() {
        assert_eq!(detect(&cfg(0.3, 0.1, 0.0, 0.0)), Some(CaseKind::ScalarVector));
        assert_eq!(detect(&cfg(0.0, 0.0, 0.2, 0.5)), Some(CaseKind::PureTensor));
        assert_eq!(detect(&cfg(0.3, 0.0, 0.0, 0.5)), Some(CaseKind::SpinBreaking));
        assert_eq!(detect(&cfg(0.0, 0.3, 0.0, 0.5)), Some(CaseKind::PseudospinBreaking));
        assert_eq!(detect(&cfg(0.3, -0.3, 0.0, 0.5)), Some(CaseKind::ScalarTensor));
        assert_eq!(detect(&cfg(0.3, 0.2, 0.0, 0.5)), None);
        assert_eq!(detect(&cfg(0.3, 1e-16, 0.0, 0.5)), Some(CaseKind::SpinBreaking));
    }

    #[test]
    fn pure_vector_ground_state() {
        let c = cfg(-0.3, -0.3, 0.0, 0.0);
        let e = scalar_vector_spectrum(&c, &qn(0, 3)).unwrap();
        assert!((e.e_plus.unwrap() - 0.9797958971132712).abs() < 1e-15);
    }

    #[test]
    fn pure_scalar_is_symmetric() {
        let c = cfg(-0.4, 0.4, 0.0, 0.0);
        for n in 0..4 {
            let e = scalar_vector_spectrum(&c, &qn(n, 5)).unwrap();
            assert_eq!(e.e_plus.unwrap(), -e.e_minus.unwrap());
        }
    }

    #[test]
    fn scalar_vector_antiparticle_regime() {
        // α_Δ + α_Σ > 0 with (α_Δ − α_Σ)/(α_Δ + α_Σ) ∈ (−1, 1].
        let c = cfg(0.2, 0.5, 0.0, 0.0);
        let q = qn(0, 3);
        let kept = filter_spurious(&scalar_vector_spectrum(&c, &q).unwrap(), &c, &q);
        assert_eq!(kept.iter().map(|k| k.0).collect::<Vec<_>>(), vec![Sector::Antiparticle]);
    }

    #[test]
    fn pure_tensor_examples() {
        let c = cfg(0.0, 0.0, 0.0, 1.0);
        let e = pure_tensor_spectrum(&c, &qn(1, 3)).unwrap();
        assert!((e.e_plus.unwrap() - 1.2806248474865698).abs() < 1e-15);
        assert_eq!(e.e_minus.unwrap(), -e.e_plus.unwrap());
        let ground = pure_tensor_spectrum(&c, &qn(0, 3)).unwrap();
        assert_eq!((ground.e_plus, ground.e_minus), (Some(1.0), Some(-1.0)));
        assert_eq!(sector_level(&c, &qn(0, 3), Sector::Particle).unwrap().energy, 1.0);
        assert!(sector_level(&c, &qn(0, 3), Sector::Antiparticle).is_err());
        let c = cfg(0.0, 0.0, 0.0, -1.0);
        let q = qn(2, 3);
        assert!(filter_spurious(&pure_tensor_spectrum(&c, &q).unwrap(), &c, &q).is_empty());
    }

    #[test]
    fn symmetry_breaking_b_zero_examples() {
        let c = cfg(-0.5, 0.0, 0.0, 0.0);
        let q = qn(0, 3);
        let kept = filter_spurious(&symmetry_breaking_spectrum(&c, &q).unwrap(), &c, &q);
        assert_eq!(kept.iter().map(|k| k.0).collect::<Vec<_>>(), vec![Sector::Particle]);
        let c = cfg(0.0, 0.5, 0.0, 0.0);
        let kept = filter_spurious(&symmetry_breaking_spectrum(&c, &q).unwrap(), &c, &q);
        assert_eq!(kept.iter().map(|k| k.0).collect::<Vec<_>>(), vec![Sector::Antiparticle]);
    }

    #[test]
    fn scalar_tensor_examples() {
        let c = cfg(0.0, 0.0, 0.0, 0.8);
        let q = qn(2, 5);
        let st = scalar_tensor_spectrum(&c, &q).unwrap();
        let pt = pure_tensor_spectrum(&c, &q).unwrap();
        assert!((st.e_plus.unwrap() - pt.e_plus.unwrap()).abs() < 1e-15);
        // k̄b̄ = α_S puts both roots on the continuum edge.
        let c = cfg(0.5, -0.5, 0.0, 1.0 / 3.0);
        let q = qn(0, 3);
        let e = scalar_tensor_spectrum(&c, &q).unwrap();
        assert!((e.e_plus.unwrap() - c.continuum_edge()).abs() < 1e-15);
        assert!(filter_spurious(&e, &c, &q).is_empty());
        let c = cfg(0.5, -0.5, 0.0, 1.0);
        let e = scalar_tensor_spectrum(&c, &q).unwrap();
        assert!((e.e_plus.unwrap() - 1.6f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn wrong_family_is_rejected() {
        let c = cfg(0.3, 0.2, 0.0, 0.5);
        let q = qn(0, 3);
        assert!(scalar_vector_spectrum(&c, &q).is_err());
        assert!(pure_tensor_spectrum(&c, &q).is_err());
        assert!(symmetry_breaking_spectrum(&c, &q).is_err());
        assert!(scalar_tensor_spectrum(&c, &q).is_err());
    }

    fn two_k() -> impl Strategy<Value = i32> {
        (0i32..5, any::<bool>()).prop_map(|(k, neg)| (2 * k + 1) * if neg { -1 } else { 1 })
    }

    fn agree(a: &EnergyCandidates, b: &EnergyCandidates) -> bool {
        let eq = |x: Option<f64>, y: Option<f64>| match (x, y) {
            (Some(x), Some(y)) => (x - y).abs() < 1e-14,
            (None, None) => true,
            _ => false,
        };
        eq(a.e_plus, b.e_plus) && eq(a.e_minus, b.e_minus)
    }

    proptest! {
        #[test]
        fn scalar_vector_matches_general(asg in -1.0f64..1.0, adl in -1.0f64..1.0, n in 0u32..6, k in two_k()) {
            let c = cfg(asg, adl, 0.0, 0.0);
            let q = qn(n, k);
            if let Ok(general) = energy_candidates(&c, &q) {
                prop_assert!(agree(&scalar_vector_spectrum(&c, &q).unwrap(), &general));
            }
        }

        #[test]
        fn symmetric_families_are_exactly_symmetric(s in -1.0f64..1.0, b in -1.0f64..1.0, a in -1.0f64..1.0, n in 0u32..6, k in two_k()) {
            let q = qn(n, k);
            if let Ok(e) = scalar_tensor_spectrum(&cfg(s, -s, a, b), &q) {
                if e.e_plus.is_some() { prop_assert_eq!(e.e_plus.unwrap(), -e.e_minus.unwrap()); }
            }
            if let Ok(e) = pure_tensor_spectrum(&cfg(0.0, 0.0, a, b), &q) {
                prop_assert_eq!(e.e_plus.unwrap(), -e.e_minus.unwrap());
            }
        }

        #[test]
        fn b_zero_slice_sectors(s in -1.0f64..1.0, n in 0u32..6, k in two_k()) {
            let q = qn(n, k);
            let spin = cfg(s, 0.0, 0.0, 0.0);
            if let Ok(e) = symmetry_breaking_spectrum(&spin, &q) {
                let kept = filter_spurious(&e, &spin, &q);
                prop_assert!(kept.iter().all(|k| k.0 == Sector::Particle));
                prop_assert_eq!(!kept.is_empty(), s < 0.0);
            }
            let pseudo = cfg(0.0, s, 0.0, 0.0);
            if let Ok(e) = symmetry_breaking_spectrum(&pseudo, &q) {
                let kept = filter_spurious(&e, &pseudo, &q);
                prop_assert!(kept.iter().all(|k| k.0 == Sector::Antiparticle));
                prop_assert_eq!(!kept.is_empty(), s > 0.0);
            }
        }

        #[test]
        fn pure_vector_ground_energy(v in -1.0f64..1.0, k in two_k()) {
            let c = cfg(v, v, 0.0, 0.0);
            let q = qn(0, k);
            if let Ok(e) = scalar_vector_spectrum(&c, &q) {
                let gamma = (q.k() * q.k() - v * v).sqrt();
                let expect = gamma / q.k().abs();
                let got = if v < 0.0 { e.e_plus.unwrap() } else { e.e_minus.unwrap() };
                prop_assert!((got.abs() - expect).abs() < 1e-14);
            }
        }
    }
}
