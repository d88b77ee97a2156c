use crate::error::{domain, Error, Result};

use super::{check_distance, BoundKind, BoundValue, FracPowerSpec};

fn check_definite(kind: &'static str, lambda_min: f64, lambda_max: f64) -> Result<()> {
    if !(lambda_min > 0.0) {
        return Err(Error::Inapplicable {
            kind,
            reason: format!(
                "requires lambda_min > 0 (got {lambda_min}); the product argument does not extend to semidefinite matrices"
            ),
        });
    }
    if !(lambda_max >= lambda_min && lambda_max.is_finite()) {
        return Err(domain(
            "stieltjes_bound",
            format!("need lambda_min <= lambda_max, got {lambda_min} and {lambda_max}"),
        ));
    }
    Ok(())
}

/// `(sqrt(kappa) - 1) / (sqrt(kappa) + 1)` with `kappa = lambda_max / lambda_min`.
pub fn stieltjes_q(lambda_min: f64, lambda_max: f64) -> f64 {
    let s = (lambda_max / lambda_min).sqrt();
    (s - 1.0) / (s + 1.0)
}

fn product_bound(alpha: FracPowerSpec, lambda_min: f64, lambda_max: f64, norm: f64, d: usize) -> f64 {
    let q = stieltjes_q(lambda_min, lambda_max);
    2.0 * lambda_min.powf(alpha.alpha() - 1.0) * norm * q.powi((d - 1) as i32)
}

/// `2 lambda_min^{alpha-1} ||A||_inf q^{d-1}` for positive definite `A`.
pub fn stieltjes_bound(
    alpha: FracPowerSpec,
    lambda_min: f64,
    lambda_max: f64,
    inf_norm: f64,
    d: usize,
) -> Result<BoundValue> {
    check_definite("stieltjes", lambda_min, lambda_max)?;
    check_distance("stieltjes_bound", d)?;
    Ok(BoundValue::exact(
        BoundKind::Stieltjes,
        product_bound(alpha, lambda_min, lambda_max, inf_norm, d),
    ))
}

/// The entry-specific variant using `min(||A_{i:}||_1, ||A_{:j}||_1)`.
pub fn stieltjes_bound_sharp(
    alpha: FracPowerSpec,
    lambda_min: f64,
    lambda_max: f64,
    row_norm_i: f64,
    col_norm_j: f64,
    d: usize,
) -> Result<BoundValue> {
    check_definite("stieltjessharp", lambda_min, lambda_max)?;
    check_distance("stieltjes_bound_sharp", d)?;
    let norm = row_norm_i.min(col_norm_j);
    Ok(BoundValue::exact(
        BoundKind::StieltjesSharp,
        product_bound(alpha, lambda_min, lambda_max, norm, d),
    ))
}
