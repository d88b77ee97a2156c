use std::f64::consts::PI;
use std::sync::OnceLock;

use crate::error::{domain, Error, Result};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_6;
const HALF_LN_2PI: f64 = 0.918_938_533_204_672_741_8;

/// `zeta(k) - 1` for k = 0..ZETA_TERMS (entries 0 and 1 unused).
const ZETA_TERMS: usize = 64;

fn zeta_minus_one() -> &'static [f64; ZETA_TERMS] {
    static TABLE: OnceLock<[f64; ZETA_TERMS]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut table = [0.0; ZETA_TERMS];
        const N: f64 = 50.0;
        for (k, slot) in table.iter_mut().enumerate().skip(2) {
            let kf = k as f64;
            // Direct sum over 2..N then Euler-Maclaurin for the tail starting at N.
            let mut sum = 0.0;
            for n in (2..50).rev() {
                sum += (n as f64).powf(-kf);
            }
            let nk = N.powf(-kf);
            let tail = N * nk / (kf - 1.0) + 0.5 * nk + kf * nk / (12.0 * N)
                - kf * (kf + 1.0) * (kf + 2.0) * nk / (720.0 * N * N * N)
                + kf * (kf + 1.0) * (kf + 2.0) * (kf + 3.0) * (kf + 4.0) * nk / (30240.0 * N.powi(5));
            *slot = sum + tail;
        }
        table
    })
}

/// `sum_{k>=2} (-1)^k (zeta(k) - 1) z^k / k` for |z| <= 1/2.
fn zeta_series(z: f64) -> f64 {
    let table = zeta_minus_one();
    let mut acc = 0.0;
    let mut zk = -z;
    for (k, &zm1) in table.iter().enumerate().skip(2) {
        zk *= -z;
        let term = zm1 * zk / k as f64;
        acc += term;
        if term.abs() <= 1e-18 * acc.abs() {
            break;
        }
    }
    acc
}

/// ln Gamma(2 + z) for |z| <= 1/2.
fn ln_gamma_2p(z: f64) -> f64 {
    z * (1.0 - EULER_GAMMA) + zeta_series(z)
}

/// ln Gamma(1 + z) for |z| <= 1/2.
fn ln_gamma_1p(z: f64) -> f64 {
    -z.ln_1p() + ln_gamma_2p(z)
}

fn stirling(x: f64) -> f64 {
    // Bernoulli numbers B_2k / (2k (2k-1))
    const COEF: [f64; 8] = [
        1.0 / 12.0,
        -1.0 / 360.0,
        1.0 / 1260.0,
        -1.0 / 1680.0,
        1.0 / 1188.0,
        -691.0 / 360_360.0,
        1.0 / 156.0,
        -3617.0 / 122_400.0,
    ];
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let mut corr = 0.0;
    for c in COEF.iter().rev() {
        corr = corr * inv2 + c;
    }
    (x - 0.5) * x.ln() - x + HALF_LN_2PI + corr * inv
}

/// Natural logarithm of the gamma function for `x > 0`.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || x.is_infinite() {
        return Err(domain(
            "ln_gamma",
            format!("argument must be positive and finite, got {x}"),
        ));
    }
    Ok(ln_gamma_pos(x))
}

pub(crate) fn ln_gamma_pos(x: f64) -> f64 {
    if x == 1.0 || x == 2.0 {
        return 0.0;
    }
    if x < 0.5 {
        return ln_gamma_1p(x) - x.ln();
    }
    if x <= 1.5 {
        return ln_gamma_1p(x - 1.0);
    }
    if x <= 2.5 {
        return ln_gamma_2p(x - 2.0);
    }
    if x < 10.0 {
        let mut y = x;
        let mut prod = 1.0;
        while y > 2.5 {
            y -= 1.0;
            prod *= y;
        }
        return prod.ln() + ln_gamma_2p(y - 2.0);
    }
    stirling(x)
}

/// sin(pi x) with exact zeros at the integers.
fn sin_pi(x: f64) -> f64 {
    let r = x - 2.0 * (x / 2.0).floor();
    // r in [0, 2)
    let (r, sign) = if r >= 1.0 { (r - 1.0, -1.0) } else { (r, 1.0) };
    let r = if r > 0.5 { 1.0 - r } else { r };
    sign * (PI * r).sin()
}

/// The gamma function. Negative non-integer arguments use the reflection formula.
pub fn gamma(x: f64) -> Result<f64> {
    if x.is_nan() || x == f64::NEG_INFINITY {
        return Err(domain("gamma", format!("invalid argument {x}")));
    }
    if x <= 0.0 && x == x.floor() {
        return Err(Error::Pole { func: "gamma", x });
    }
    if x < 0.5 {
        let g = gamma_pos(1.0 - x);
        return Ok(PI / (sin_pi(x) * g));
    }
    Ok(gamma_pos(x))
}

fn gamma_pos(x: f64) -> f64 {
    if x == x.floor() && x <= 171.0 {
        let mut f = 1.0;
        let mut k = 2.0;
        while k < x {
            f *= k;
            k += 1.0;
        }
        return f;
    }
    if x < 30.0 {
        let mut y = x;
        let mut prod = 1.0;
        while y > 2.5 {
            y -= 1.0;
            prod *= y;
        }
        if y < 1.5 {
            // y in [0.5, 1.5): Gamma(y) = Gamma(y + 1) / y
            return prod * ln_gamma_2p(y - 1.0).exp() / y;
        }
        return prod * ln_gamma_2p(y - 2.0).exp();
    }
    if x > 171.7 {
        return f64::INFINITY;
    }
    stirling(x).exp()
}
