use std::fmt;
use std::sync::Arc;

use crate::error::{domain, Result};
use crate::quad::{integrate_to_infinity_with, integrate_with, QuadOptions, QuadResult};
use crate::specfun::ln_gamma;

use super::FracPowerSpec;

type Density = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LevyKind {
    FracPower(f64),
    Log1p,
    Custom,
}

/// A Bernstein function `f(z) = a + b z + ∫ (1 - e^{-tz}) density(t) dt`.
#[derive(Clone)]
pub struct LevyTriple {
    pub a: f64,
    pub b: f64,
    pub label: String,
    kind: LevyKind,
    density: Density,
    ln_scale: f64,
}

impl fmt::Debug for LevyTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LevyTriple")
            .field("a", &self.a)
            .field("b", &self.b)
            .field("label", &self.label)
            .field("kind", &self.kind)
            .finish()
    }
}

impl LevyTriple {
    /// A triple with an arbitrary density; integrability of `min(t, 1) density(t)`
    /// is checked by quadrature.
    pub fn new<F>(a: f64, b: f64, density: F, label: impl Into<String>) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        if !(a >= 0.0 && b >= 0.0 && a.is_finite() && b.is_finite()) {
            return Err(domain(
                "LevyTriple",
                format!("a = {a} and b = {b} must be finite and >= 0"),
            ));
        }
        let triple = Self {
            a,
            b,
            label: label.into(),
            kind: LevyKind::Custom,
            density: Arc::new(density),
            ln_scale: 0.0,
        };
        triple.integrability()?;
        Ok(triple)
    }

    pub fn kind(&self) -> LevyKind {
        self.kind
    }

    pub fn density(&self, t: f64) -> f64 {
        match self.kind {
            LevyKind::Custom => (self.density)(t),
            _ => self.ln_density(t).exp(),
        }
    }

    pub fn ln_density(&self, t: f64) -> f64 {
        match self.kind {
            LevyKind::FracPower(alpha) => self.ln_scale - (alpha + 1.0) * t.ln(),
            LevyKind::Log1p => -t - t.ln(),
            LevyKind::Custom => (self.density)(t).ln(),
        }
    }

    /// `∫ min(t, 1) density(t) dt`; finite for every valid triple.
    pub fn integrability(&self) -> Result<QuadResult> {
        let opts = QuadOptions::default();
        let head = integrate_with(|t| t * self.density(t), 0.0, 1.0, &opts)?;
        let tail = integrate_to_infinity_with(|t| self.density(t), 1.0, &opts)?;
        let r = QuadResult {
            value: head.value + tail.value,
            abs_err_est: head.abs_err_est + tail.abs_err_est,
            evaluations: head.evaluations + tail.evaluations,
        };
        if !r.value.is_finite() || r.value < 0.0 {
            return Err(domain(
                "LevyTriple",
                format!("density of '{}' is not a Lévy density", self.label),
            ));
        }
        Ok(r)
    }

    /// `f(z)` from the integral representation.
    pub fn evaluate(&self, z: f64, opts: &QuadOptions) -> Result<QuadResult> {
        if !(z >= 0.0) {
            return Err(domain("LevyTriple::evaluate", format!("z = {z} must be >= 0")));
        }
        let g = |t: f64| -(-t * z).exp_m1() * self.density(t);
        let head = integrate_with(g, 0.0, 1.0, opts)?;
        let tail = integrate_to_infinity_with(g, 1.0, opts)?;
        Ok(QuadResult {
            value: self.a + self.b * z + head.value + tail.value,
            abs_err_est: head.abs_err_est + tail.abs_err_est,
            evaluations: head.evaluations + tail.evaluations,
        })
    }
}

/// `z^alpha`: `a = b = 0`, density `alpha / Γ(1 - alpha) t^{-alpha-1}`.
pub fn levy_frac_power(alpha: FracPowerSpec) -> LevyTriple {
    let al = alpha.alpha();
    let ln_scale = al.ln() - ln_gamma(1.0 - al).expect("1 - alpha > 0");
    LevyTriple {
        a: 0.0,
        b: 0.0,
        label: format!("frac:{al}"),
        kind: LevyKind::FracPower(al),
        density: Arc::new(move |t: f64| (ln_scale - (al + 1.0) * t.ln()).exp()),
        ln_scale,
    }
}

/// `log(1 + z)`: `a = b = 0`, density `e^{-t} / t`.
pub fn levy_log1p() -> LevyTriple {
    LevyTriple {
        a: 0.0,
        b: 0.0,
        label: "log1p".to_string(),
        kind: LevyKind::Log1p,
        density: Arc::new(|t: f64| (-t).exp() / t),
        ln_scale: 0.0,
    }
}
