use std::f64::consts::LN_10;

use crate::error::{domain, Error, Result};
use crate::quad::{integrate_to_infinity_with, integrate_with, QuadOptions, QuadResult};
use crate::specfun::{gamma, upper_inc_gamma};

use super::levy::{LevyKind, LevyTriple};
use super::{check_distance, check_positive, BoundKind, BoundValue};

/// `∫ exp(ln_f(t)) dt` over `[lo, hi]` (or `[lo, ∞)` when `hi` is `None`).
///
/// The integrand is rescaled by its largest sampled value so that the absolute
/// tolerance is relative to the integrand's own magnitude, however small.
fn log_space_integral<F>(
    ln_f: F,
    lo: f64,
    hi: Option<f64>,
    opts: &QuadOptions,
    context: &'static str,
) -> Result<QuadResult>
where
    F: Fn(f64) -> f64,
{
    let samples: Vec<f64> = match hi {
        Some(hi) => {
            let w = hi - lo;
            (1..64)
                .map(|k| lo + w * k as f64 / 64.0)
                .chain((1..40).map(|k| lo + w * 0.5f64.powi(k)))
                .chain((1..40).map(|k| hi - w * 0.5f64.powi(k)))
                .collect()
        }
        None => {
            let base = lo.max(1e-3);
            (0..80)
                .map(|k| lo + base * 1.5f64.powi(k) - base)
                .chain((0..80).map(|k| lo + base * 1.5f64.powi(k)))
                .collect()
        }
    };
    let scale = samples
        .iter()
        .map(|&t| ln_f(t))
        .filter(|v| !v.is_nan())
        .fold(f64::NEG_INFINITY, f64::max);
    if scale == f64::NEG_INFINITY {
        return Ok(QuadResult {
            value: 0.0,
            abs_err_est: 0.0,
            evaluations: samples.len(),
        });
    }
    let g = |t: f64| {
        let v = (ln_f(t) - scale).exp();
        if v.is_nan() {
            0.0
        } else {
            v
        }
    };
    let r = match hi {
        Some(hi) => integrate_with(g, lo, hi, opts),
        None => integrate_to_infinity_with(g, lo, opts),
    }
    .map_err(|e| match e {
        Error::Quadrature {
            value,
            err,
            evaluations,
            ..
        } => Error::Quadrature {
            context: Some(context),
            value: value * scale.exp(),
            err: err * scale.exp(),
            evaluations,
        },
        other => other,
    })?;
    let factor = scale.exp();
    Ok(QuadResult {
        value: r.value * factor,
        abs_err_est: r.abs_err_est * factor,
        evaluations: r.evaluations + samples.len(),
    })
}

fn sum_bound(kind: BoundKind, parts: [QuadResult; 3]) -> BoundValue {
    BoundValue {
        value: parts.iter().map(|p| p.value).sum(),
        kind,
        quad_err: Some(parts.iter().map(|p| p.abs_err_est).sum()),
    }
}

/// Integral bound for PSD `A` with spectral radius `rho_a`, evaluated by quadrature.
///
/// The tail integral uses `|[exp(-tA)]_ij| <= 1`.
pub fn bernstein_bound_semidef(levy: &LevyTriple, rho_a: f64, d: usize, opts: &QuadOptions) -> Result<BoundValue> {
    const F: &str = "bernstein_bound_semidef";
    check_positive(F, "rho_a", rho_a)?;
    check_distance(F, d)?;
    let df = d as f64;
    let (t1, t2) = (2.0 * df / rho_a, df * df / rho_a);
    let ln10 = LN_10;
    let first = log_space_integral(
        |t| {
            let x = 0.25 * rho_a * t;
            levy.ln_density(t) + ln10 - x - x.ln() + df * (1.0 + x.ln() - df.ln())
        },
        0.0,
        Some(t1),
        opts,
        "first integral",
    )?;
    let second = if t2 > t1 {
        log_space_integral(
            |t| levy.ln_density(t) + ln10 - 4.0 * df * df / (5.0 * rho_a * t),
            t1,
            Some(t2),
            opts,
            "second integral",
        )?
    } else {
        QuadResult {
            value: 0.0,
            abs_err_est: 0.0,
            evaluations: 0,
        }
    };
    let third = log_space_integral(|t| levy.ln_density(t), t2, None, opts, "tail integral")?;
    Ok(sum_bound(BoundKind::QuadSemidef, [first, second, third]))
}

/// `alpha / Γ(1 - alpha) ∫_T^∞ e^{-lambda_min t} t^{-alpha-1} dt` with `T = d^2 / (4 rho)`.
pub fn posdef_tail_closed_form(alpha: f64, lambda_min: f64, lambda_max: f64, d: usize) -> Result<f64> {
    const F: &str = "posdef_tail_closed_form";
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(domain(F, format!("alpha = {alpha} must lie in (0, 1)")));
    }
    check_positive(F, "lambda_min", lambda_min)?;
    let rho = (lambda_max - lambda_min) / 4.0;
    check_positive(F, "lambda_max - lambda_min", rho)?;
    let df = d as f64;
    let x = lambda_min * df * df / (4.0 * rho);
    Ok(alpha / gamma(1.0 - alpha)? * lambda_min.powf(alpha) * upper_inc_gamma(-alpha, x)?)
}

/// Integral bound for positive definite `A`, evaluated by quadrature.
///
/// For fractional powers the tail integral is checked against its incomplete-gamma
/// closed form.
pub fn bernstein_bound_posdef(
    levy: &LevyTriple,
    lambda_min: f64,
    lambda_max: f64,
    d: usize,
    opts: &QuadOptions,
) -> Result<BoundValue> {
    const F: &str = "bernstein_bound_posdef";
    if !(lambda_min > 0.0) {
        return Err(Error::Inapplicable {
            kind: "quadposdef",
            reason: format!("requires lambda_min > 0, got {lambda_min}"),
        });
    }
    if !(lambda_max > lambda_min && lambda_max.is_finite()) {
        return Err(domain(
            F,
            format!("need lambda_min < lambda_max, got {lambda_min} and {lambda_max}"),
        ));
    }
    check_distance(F, d)?;
    let df = d as f64;
    let rho = (lambda_max - lambda_min) / 4.0;
    let (t1, t2) = (df / (2.0 * rho), df * df / (4.0 * rho));
    let ln10 = LN_10;
    let first = log_space_integral(
        |t| {
            let x = rho * t;
            levy.ln_density(t) + ln10 - x - lambda_min * t - x.ln() + df * (1.0 + x.ln() - df.ln())
        },
        0.0,
        Some(t1),
        opts,
        "first integral",
    )?;
    let second = if t2 > t1 {
        log_space_integral(
            |t| levy.ln_density(t) + ln10 - t * lambda_min - df * df / (5.0 * rho * t),
            t1,
            Some(t2),
            opts,
            "second integral",
        )?
    } else {
        QuadResult {
            value: 0.0,
            abs_err_est: 0.0,
            evaluations: 0,
        }
    };
    let third = log_space_integral(|t| levy.ln_density(t) - t * lambda_min, t2, None, opts, "tail integral")?;
    if let LevyKind::FracPower(alpha) = levy.kind() {
        let closed = posdef_tail_closed_form(alpha, lambda_min, lambda_max, d)?;
        let slack = 1e3 * opts.rel_tol * closed + third.abs_err_est + 1e-300;
        if closed > 1e-290 && (third.value - closed).abs() > slack {
            return Err(Error::Quadrature {
                context: Some("tail integral disagrees with its closed form"),
                value: third.value,
                err: third.abs_err_est,
                evaluations: third.evaluations,
            });
        }
    }
    Ok(sum_bound(BoundKind::QuadPosdef, [first, second, third]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::{frac_bound_closed_semidef, levy_frac_power, levy_log1p, FracPowerSpec};

    fn frac(a: f64) -> LevyTriple {
        levy_frac_power(FracPowerSpec::new(a).unwrap())
    }

    #[test]
    fn matches_closed_form_sqrt() {
        let l = frac(0.5);
        let opts = QuadOptions::default();
        for d in 2..=50 {
            let q = bernstein_bound_semidef(&l, 4.0, d, &opts).unwrap();
            let c = frac_bound_closed_semidef(FracPowerSpec::new(0.5).unwrap(), 4.0, d).unwrap();
            assert!(
                (q.value - c.value).abs() <= 1e-6 * c.value,
                "d={d}: {} vs {}",
                q.value,
                c.value
            );
            assert!(q.quad_err.unwrap() >= 0.0);
        }
    }

    #[test]
    fn affine_function_gives_zero() {
        let l = LevyTriple::new(0.7, 3.0, |_| 0.0, "affine").unwrap();
        let opts = QuadOptions::default();
        assert_eq!(bernstein_bound_semidef(&l, 4.0, 3, &opts).unwrap().value, 0.0);
        assert_eq!(bernstein_bound_posdef(&l, 1.0, 4.0, 3, &opts).unwrap().value, 0.0);
    }

    #[test]
    fn self_consistent_at_two_tolerances() {
        let l = frac(0.25);
        let a = bernstein_bound_semidef(&l, 31.64, 10, &QuadOptions::default()).unwrap();
        let b = bernstein_bound_semidef(&l, 31.64, 10, &QuadOptions::with_tolerances(1e-11, 1e-16)).unwrap();
        assert!(a.value > 0.0 && a.value.is_finite());
        assert!(a.quad_err.unwrap() < 1e-8 * a.value);
        assert!((a.value - b.value).abs() < 1e-8 * b.value);
    }

    #[test]
    fn posdef_tends_to_semidef() {
        let l = frac(0.5);
        let opts = QuadOptions::default();
        for d in [2, 5, 20] {
            let p = bernstein_bound_posdef(&l, 1e-12, 4.0, d, &opts).unwrap().value;
            let s = bernstein_bound_semidef(&l, 4.0, d, &opts).unwrap().value;
            assert!((p - s).abs() < 1e-4 * s, "d={d}: {p} vs {s}");
        }
    }

    #[test]
    fn posdef_below_semidef() {
        let opts = QuadOptions::default();
        for a in [0.25, 0.5, 0.75] {
            let l = frac(a);
            for (lmin, lmax) in [(0.01, 4.0), (0.5, 8.0), (2.0, 10.0)] {
                for d in [2, 3, 7, 15, 40] {
                    let p = bernstein_bound_posdef(&l, lmin, lmax, d, &opts).unwrap().value;
                    let s = bernstein_bound_semidef(&l, lmax, d, &opts).unwrap().value;
                    assert!(p <= s * (1.0 + 1e-8), "{a} {lmin} {lmax} {d}: {p} > {s}");
                }
            }
        }
    }

    #[test]
    fn tail_closed_form_matches_quadrature() {
        let l = frac(0.5);
        let (lmin, lmax, d) = (2.0, 10.0, 8usize);
        let rho = (lmax - lmin) / 4.0;
        let t2 = (d * d) as f64 / (4.0 * rho);
        let q = log_space_integral(
            |t| l.ln_density(t) - t * lmin,
            t2,
            None,
            &QuadOptions::default(),
            "tail",
        )
        .unwrap();
        let c = posdef_tail_closed_form(0.5, lmin, lmax, d).unwrap();
        assert!((q.value - c).abs() < 1e-8 * c);
    }

    #[test]
    fn tiny_bounds_keep_relative_accuracy() {
        let l = frac(0.5);
        let a = bernstein_bound_posdef(&l, 2.0, 10.0, 60, &QuadOptions::default()).unwrap();
        let b = bernstein_bound_posdef(&l, 2.0, 10.0, 60, &QuadOptions::with_tolerances(1e-11, 1e-16)).unwrap();
        assert!(a.value < 1e-20 && a.value > 0.0);
        assert!((a.value - b.value).abs() < 1e-7 * b.value);
    }

    #[test]
    fn log1p_bounds_finite() {
        let l = levy_log1p();
        let opts = QuadOptions::default();
        let s = bernstein_bound_semidef(&l, 4.0, 5, &opts).unwrap().value;
        let p = bernstein_bound_posdef(&l, 0.5, 4.5, 5, &opts).unwrap().value;
        assert!(s.is_finite() && p.is_finite() && p > 0.0 && p <= s);
    }

    #[test]
    fn inapplicable_for_singular() {
        let l = frac(0.5);
        assert!(matches!(
            bernstein_bound_posdef(&l, 0.0, 4.0, 3, &QuadOptions::default()),
            Err(Error::Inapplicable { .. })
        ));
        assert!(bernstein_bound_semidef(&l, 4.0, 1, &QuadOptions::default()).is_err());
    }
}
