use std::f64::consts::PI;

use crate::error::Result;

use super::{check_distance, check_positive, BoundKind, BoundValue, FracPowerSpec};

/// `1 + pi^2 / 2`.
pub const JACKSON_C: f64 = 1.0 + PI * PI / 2.0;

/// `c (rho / 2)^alpha`, the coefficient of `(d - 1)^{-alpha}` in the Jackson bound.
pub fn jackson_constant(alpha: FracPowerSpec, rho: f64) -> Result<f64> {
    check_positive("jackson_constant", "rho", rho)?;
    Ok(JACKSON_C * (rho / 2.0).powf(alpha.alpha()))
}

/// `c (rho / 2)^alpha (d - 1)^{-alpha}` for a PSD matrix with spectrum in `[0, rho]`.
pub fn jackson_bound(alpha: FracPowerSpec, rho: f64, d: usize) -> Result<BoundValue> {
    check_distance("jackson_bound", d)?;
    let c = jackson_constant(alpha, rho)?;
    Ok(BoundValue::exact(
        BoundKind::Jackson,
        c * ((d - 1) as f64).powf(-alpha.alpha()),
    ))
}
