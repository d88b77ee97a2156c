use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bounds::{levy_frac_power, levy_log1p, FracPowerSpec, LevyTriple};
use crate::error::{domain, Error, Result};

/// The matrix function of a report: `frac:ALPHA`, `log1p` or `exp:T` (meaning `exp(-T z)`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum FunctionSpec {
    Frac(FracPowerSpec),
    Log1p,
    Exp(f64),
}

impl FunctionSpec {
    /// `f(lambda)`, treating `|lambda| <= zero_tol` as zero; `None` for negative eigenvalues
    /// where `f` is a Bernstein function.
    pub fn scalar(&self, lambda: f64, zero_tol: f64) -> Option<f64> {
        match *self {
            FunctionSpec::Exp(t) => Some((-t * lambda).exp()),
            _ if lambda < -zero_tol => None,
            FunctionSpec::Frac(a) => Some(if lambda <= zero_tol {
                0.0
            } else {
                lambda.powf(a.alpha())
            }),
            FunctionSpec::Log1p => Some(lambda.max(0.0).ln_1p()),
        }
    }

    pub fn levy(&self) -> Option<LevyTriple> {
        match *self {
            FunctionSpec::Frac(a) => Some(levy_frac_power(a)),
            FunctionSpec::Log1p => Some(levy_log1p()),
            FunctionSpec::Exp(_) => None,
        }
    }

    pub fn alpha(&self) -> Option<FracPowerSpec> {
        match *self {
            FunctionSpec::Frac(a) => Some(a),
            _ => None,
        }
    }
}

impl fmt::Display for FunctionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctionSpec::Frac(a) => write!(f, "frac:{}", a.alpha()),
            FunctionSpec::Log1p => f.write_str("log1p"),
            FunctionSpec::Exp(t) => write!(f, "exp:{t}"),
        }
    }
}

impl FromStr for FunctionSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (name, arg) = match s.split_once(':') {
            Some((n, a)) => (n.trim().to_ascii_lowercase(), Some(a.trim())),
            None => (s.to_ascii_lowercase(), None),
        };
        let number = |a: Option<&str>| -> Result<f64> {
            let a =
                a.ok_or_else(|| domain("FunctionSpec", format!("'{name}' needs a parameter, e.g. '{name}:0.5'")))?;
            a.parse::<f64>()
                .map_err(|_| domain("FunctionSpec", format!("invalid number '{a}'")))
        };
        match name.as_str() {
            "frac" => Ok(FunctionSpec::Frac(FracPowerSpec::new(number(arg)?)?)),
            "exp" => {
                let t = number(arg)?;
                if !(t > 0.0 && t.is_finite()) {
                    return Err(domain("FunctionSpec", format!("exp parameter {t} must be positive")));
                }
                Ok(FunctionSpec::Exp(t))
            }
            "log1p" if arg.is_none() => Ok(FunctionSpec::Log1p),
            _ => Err(domain(
                "FunctionSpec",
                format!("unknown function '{s}'; expected frac:ALPHA, log1p or exp:T"),
            )),
        }
    }
}

impl TryFrom<String> for FunctionSpec {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<FunctionSpec> for String {
    fn from(f: FunctionSpec) -> String {
        f.to_string()
    }
}
