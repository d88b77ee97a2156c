//! Decay bounds for the off-diagonal entries of Bernstein functions of matrices.
//!
//! Every evaluator is a pure function of scalar spectral data and the graph
//! distance `d`, so callers evaluate each bound once per distinct distance.

mod closed;
mod exponential;
mod integral;
mod jackson;
mod levy;
mod slope;
mod stieltjes;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

pub use closed::{
    asymptotic_constant, asymptotic_constant_sqrt, frac_bound_closed_semidef, frac_bound_closed_terms,
    sqrt_bound_closed_semidef, sqrt_bound_closed_terms, ClosedTerms,
};
pub use exponential::{exp_entry_bound_posdef, exp_entry_bound_semidef};
pub use integral::{bernstein_bound_posdef, bernstein_bound_semidef, posdef_tail_closed_form};
pub use jackson::{jackson_bound, jackson_constant, JACKSON_C};
pub use levy::{levy_frac_power, levy_log1p, LevyKind, LevyTriple};
pub use slope::fit_powerlaw_slope;
pub use stieltjes::{stieltjes_bound, stieltjes_bound_sharp, stieltjes_q};

/// Exponent `alpha` of a fractional power, checked to lie in `(0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct FracPowerSpec(f64);

impl FracPowerSpec {
    pub fn new(alpha: f64) -> Result<Self> {
        if alpha > 0.0 && alpha < 1.0 {
            Ok(Self(alpha))
        } else {
            Err(domain("FracPowerSpec", format!("alpha = {alpha} must lie in (0, 1)")))
        }
    }

    pub fn alpha(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for FracPowerSpec {
    type Error = Error;
    fn try_from(alpha: f64) -> Result<Self> {
        Self::new(alpha)
    }
}

impl From<FracPowerSpec> for f64 {
    fn from(s: FracPowerSpec) -> f64 {
        s.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundKind {
    /// Exponential bound for semidefinite matrices (two regimes).
    ExpSemidef,
    /// Exponential bound shifted by the smallest eigenvalue.
    ExpPosdef,
    /// Integral bound for semidefinite matrices, by quadrature.
    QuadSemidef,
    /// Integral bound for definite matrices, by quadrature.
    QuadPosdef,
    /// Closed form of the semidefinite integral bound for `z^alpha`.
    ClosedFrac,
    /// The `alpha = 1/2` specialization of `ClosedFrac` written with erfc.
    ClosedSqrt,
    Stieltjes,
    StieltjesSharp,
    Jackson,
    /// `f(lambda_max)`, the spectral norm of `f(A)`.
    TrivialCap,
}

impl BoundKind {
    pub const ALL: [BoundKind; 10] = [
        BoundKind::ExpSemidef,
        BoundKind::ExpPosdef,
        BoundKind::QuadSemidef,
        BoundKind::QuadPosdef,
        BoundKind::ClosedFrac,
        BoundKind::ClosedSqrt,
        BoundKind::Stieltjes,
        BoundKind::StieltjesSharp,
        BoundKind::Jackson,
        BoundKind::TrivialCap,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BoundKind::ExpSemidef => "expsemidef",
            BoundKind::ExpPosdef => "expposdef",
            BoundKind::QuadSemidef => "quadsemidef",
            BoundKind::QuadPosdef => "quadposdef",
            BoundKind::ClosedFrac => "closedfrac",
            BoundKind::ClosedSqrt => "closedsqrt",
            BoundKind::Stieltjes => "stieltjes",
            BoundKind::StieltjesSharp => "stieltjessharp",
            BoundKind::Jackson => "jackson",
            BoundKind::TrivialCap => "trivialcap",
        }
    }

    pub fn is_quadrature(self) -> bool {
        matches!(self, BoundKind::QuadSemidef | BoundKind::QuadPosdef)
    }

    /// Parse a comma-separated list such as `quadposdef,stieltjes`, dropping repeats.
    pub fn parse_list(s: &str) -> Result<Vec<BoundKind>> {
        let mut out = Vec::new();
        for item in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
            let k: BoundKind = item.parse()?;
            if !out.contains(&k) {
                out.push(k);
            }
        }
        if out.is_empty() {
            return Err(domain("BoundKind", "empty bound list"));
        }
        Ok(out)
    }
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BoundKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        BoundKind::ALL.into_iter().find(|k| k.name() == lower).ok_or_else(|| {
            let names: Vec<_> = BoundKind::ALL.iter().map(|k| k.name()).collect();
            domain(
                "BoundKind",
                format!("unknown bound '{s}'; expected one of {}", names.join(", ")),
            )
        })
    }
}

/// One evaluated bound. `quad_err` is present exactly for quadrature bounds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundValue {
    pub value: f64,
    pub kind: BoundKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quad_err: Option<f64>,
}

impl BoundValue {
    pub(crate) fn exact(kind: BoundKind, value: f64) -> Self {
        Self {
            value,
            kind,
            quad_err: None,
        }
    }
}

pub(crate) fn check_distance(func: &'static str, d: usize) -> Result<()> {
    if d < 2 {
        return Err(domain(func, format!("distance d = {d} must be at least 2")));
    }
    Ok(())
}

pub(crate) fn check_positive(func: &'static str, name: &str, v: f64) -> Result<()> {
    if !(v > 0.0 && v.is_finite()) {
        return Err(domain(func, format!("{name} = {v} must be positive and finite")));
    }
    Ok(())
}
