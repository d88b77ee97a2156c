use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::specfun::{erfc, gamma, ln_lower_inc_gamma, upper_inc_gamma};

use super::{check_distance, check_positive, BoundKind, BoundValue, FracPowerSpec};

/// The three terms of the closed-form semidefinite bound, before the common prefactor.
///
/// `term1` decays exponentially in `d`; `term2 + term3` carry the `d^{-2 alpha}` tail.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClosedTerms {
    pub prefactor: f64,
    pub term1: f64,
    pub term2: f64,
    pub term3: f64,
}

impl ClosedTerms {
    pub fn total(&self) -> f64 {
        self.prefactor * (self.term1 + self.term2 + self.term3)
    }

    /// `prefactor * (term2 + term3)`.
    pub fn dominant(&self) -> f64 {
        self.prefactor * (self.term2 + self.term3)
    }
}

pub fn frac_bound_closed_terms(alpha: FracPowerSpec, rho_a: f64, d: usize) -> Result<ClosedTerms> {
    const F: &str = "frac_bound_closed_semidef";
    check_positive(F, "rho_a", rho_a)?;
    check_distance(F, d)?;
    let a = alpha.alpha();
    let df = d as f64;
    let ln_t1 =
        10f64.ln() + df + a * rho_a.ln() - a * 4f64.ln() - df * df.ln() + ln_lower_inc_gamma(df - a - 1.0, df / 2.0)?;
    let term2 =
        10.0 * (5.0 * rho_a / (4.0 * df * df)).powf(a) * (upper_inc_gamma(a, 0.8)? - upper_inc_gamma(a, 0.4 * df)?);
    let term3 = rho_a.powf(a) / (a * df.powf(2.0 * a));
    Ok(ClosedTerms {
        prefactor: a / gamma(1.0 - a)?,
        term1: ln_t1.exp(),
        term2,
        term3,
    })
}

/// Closed-form bound on `|[A^alpha]_ij|` for PSD `A` with spectral radius `rho_a`.
pub fn frac_bound_closed_semidef(alpha: FracPowerSpec, rho_a: f64, d: usize) -> Result<BoundValue> {
    Ok(BoundValue::exact(
        BoundKind::ClosedFrac,
        frac_bound_closed_terms(alpha, rho_a, d)?.total(),
    ))
}

/// The `alpha = 1/2` terms written with erfc.
pub fn sqrt_bound_closed_terms(rho_a: f64, d: usize) -> Result<ClosedTerms> {
    const F: &str = "sqrt_bound_closed_semidef";
    check_positive(F, "rho_a", rho_a)?;
    check_distance(F, d)?;
    let df = d as f64;
    let ln_t1 = 5f64.ln() + df + 0.5 * rho_a.ln() - df * df.ln() + ln_lower_inc_gamma(df - 1.5, df / 2.0)?;
    let term2 = 5.0 * (5.0 * PI * rho_a).sqrt() / df * (erfc(2.0 / 5f64.sqrt()) - erfc((0.4 * df).sqrt()));
    let term3 = 2.0 * rho_a.sqrt() / df;
    Ok(ClosedTerms {
        prefactor: 0.5 / PI.sqrt(),
        term1: ln_t1.exp(),
        term2,
        term3,
    })
}

pub fn sqrt_bound_closed_semidef(rho_a: f64, d: usize) -> Result<BoundValue> {
    Ok(BoundValue::exact(
        BoundKind::ClosedSqrt,
        sqrt_bound_closed_terms(rho_a, d)?.total(),
    ))
}

/// `C` in the large-distance behaviour `C d^{-2 alpha}` of the closed-form bound.
pub fn asymptotic_constant(alpha: FracPowerSpec, rho: f64) -> Result<f64> {
    check_positive("asymptotic_constant", "rho", rho)?;
    let a = alpha.alpha();
    let inner = 10.0 * (1.25 * rho).powf(a) * upper_inc_gamma(a, 0.8)? + rho.powf(a) / a;
    Ok(a / gamma(1.0 - a)? * inner)
}

/// The `alpha = 1/2` constant, `(5/2) sqrt(5 rho) erfc(sqrt(4/5)) + sqrt(rho / pi)`.
pub fn asymptotic_constant_sqrt(rho: f64) -> Result<f64> {
    check_positive("asymptotic_constant_sqrt", "rho", rho)?;
    Ok(2.5 * (5.0 * rho).sqrt() * erfc(0.8f64.sqrt()) + (rho / PI).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn half() -> FracPowerSpec {
        FracPowerSpec::new(0.5).unwrap()
    }

    #[test]
    fn constants() {
        let c = asymptotic_constant(half(), 4.0).unwrap();
        assert!((c - 3.4304470470073574520).abs() < 1e-13);
        assert!((asymptotic_constant_sqrt(4.0).unwrap() - c).abs() < 1e-13);
        let q = asymptotic_constant(FracPowerSpec::new(0.25).unwrap(), 4.0).unwrap();
        assert!((q - 2.1757096819263559700).abs() < 1e-13);
    }

    #[test]
    fn sqrt_specialization_agrees() {
        for rho in [1.0, 4.0, 31.64] {
            for d in 2..=100 {
                let a = frac_bound_closed_semidef(half(), rho, d).unwrap().value;
                let b = sqrt_bound_closed_semidef(rho, d).unwrap().value;
                assert!((a - b).abs() <= 1e-12 * a, "rho={rho} d={d}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn dominant_terms_approach_constant() {
        let d = 100_000usize;
        let t = frac_bound_closed_terms(half(), 4.0, d).unwrap();
        let scaled = t.dominant() * d as f64;
        let c = asymptotic_constant(half(), 4.0).unwrap();
        assert!((scaled - c).abs() < 1e-3 * c);
        assert!((scaled - 3.43).abs() < 0.01);
    }

    #[test]
    fn first_term_finite_for_large_distance() {
        for d in [140, 1000, 10_000] {
            let t = frac_bound_closed_terms(FracPowerSpec::new(0.75).unwrap(), 31.64, d).unwrap();
            assert!(t.term1.is_finite() && t.term1 >= 0.0);
            assert!(t.total().is_finite());
        }
    }

    #[test]
    fn first_term_is_exponentially_small() {
        let t10 = frac_bound_closed_terms(half(), 4.0, 10).unwrap();
        let t40 = frac_bound_closed_terms(half(), 4.0, 40).unwrap();
        assert!(t40.term1 / t10.term1 < 1e-4);
    }

    #[test]
    fn deterministic() {
        let a = frac_bound_closed_semidef(half(), 4.0, 17).unwrap();
        let b = frac_bound_closed_semidef(half(), 4.0, 17).unwrap();
        assert_eq!(a.value.to_bits(), b.value.to_bits());
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(frac_bound_closed_semidef(half(), 4.0, 1).is_err());
        assert!(frac_bound_closed_semidef(half(), 0.0, 3).is_err());
        assert!(sqrt_bound_closed_semidef(-1.0, 3).is_err());
        assert!(asymptotic_constant(half(), 0.0).is_err());
    }
}
