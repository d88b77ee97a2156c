use std::f64::consts::LN_10;

use crate::error::{domain, Result};

use super::check_positive;

/// Log of the two-regime bound on `|[exp(-tA)]_ij|` for a PSD matrix whose spectrum
/// lies in an interval of length `4 rho`; `None` outside both regimes.
fn ln_exp_bound(rho: f64, t: f64, d: usize) -> Option<f64> {
    let df = d as f64;
    let rt = rho * t;
    if df >= 2.0 * rt {
        Some(LN_10 - rt - rt.ln() + df * (1.0 + rt.ln() - df.ln()))
    } else if rt >= 1.0 && df >= (4.0 * rt).sqrt() {
        Some(LN_10 - df * df / (5.0 * rt))
    } else {
        None
    }
}

fn check_inputs(func: &'static str, t: f64, d: usize) -> Result<()> {
    check_positive(func, "t", t)?;
    if d == 0 {
        return Err(domain(func, "distance must be at least 1"));
    }
    Ok(())
}

/// Bound on `|[exp(-tA)]_ij|` for PSD `A`; `rho` is a quarter of the spectral
/// interval length (`rho(A) / 4`). At the tie `d = 2 rho t` the second regime is used.
pub fn exp_entry_bound_semidef(rho: f64, t: f64, d: usize) -> Result<Option<f64>> {
    check_positive("exp_entry_bound_semidef", "rho", rho)?;
    check_inputs("exp_entry_bound_semidef", t, d)?;
    Ok(ln_exp_bound(rho, t, d).map(f64::exp))
}

/// Shifted bound for positive definite `A`, with `rho = (lambda_max - lambda_min) / 4`.
pub fn exp_entry_bound_posdef(lambda_min: f64, lambda_max: f64, t: f64, d: usize) -> Result<Option<f64>> {
    const F: &str = "exp_entry_bound_posdef";
    if !(lambda_min > 0.0) {
        return Err(domain(
            F,
            format!("lambda_min = {lambda_min} must be > 0; use the semidefinite bound"),
        ));
    }
    if !(lambda_max >= lambda_min && lambda_max.is_finite()) {
        return Err(domain(
            F,
            format!("need lambda_min <= lambda_max, got {lambda_min} > {lambda_max}"),
        ));
    }
    check_inputs(F, t, d)?;
    let rho = (lambda_max - lambda_min) / 4.0;
    if rho == 0.0 {
        // A is a multiple of the identity; the second regime's limit as rho -> 0
        let v = if d == 1 {
            10.0 * (1.0 - t * lambda_min).exp()
        } else {
            0.0
        };
        return Ok(Some(v));
    }
    Ok(ln_exp_bound(rho, t, d).map(|l| (l - t * lambda_min).exp()))
}
