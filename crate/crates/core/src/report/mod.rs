//! Per-column decay reports: actual entries of `f(A)` next to every requested bound.
//!
//! Node numbers in this module (sources, record indices, CSV and JSON) are 1-based,
//! matching Matrix Market files. The `graphs` and `densefun` APIs are 0-based.

mod csv_io;
mod function;

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{
    bernstein_bound_posdef, bernstein_bound_semidef, exp_entry_bound_posdef, exp_entry_bound_semidef,
    frac_bound_closed_semidef, jackson_bound, sqrt_bound_closed_semidef, stieltjes_bound, stieltjes_bound_sharp,
    BoundKind, BoundValue, LevyTriple,
};
use crate::densefun::{
    eig_sym_with_limit, expm_neg_taylor_column, function_column, EigenDecomposition, DEFAULT_DENSE_LIMIT,
};
use crate::error::{Error, Result};
use crate::graphs::{bfs_distances, spectral_data, SparseSymMatrix, SpectralData};
use crate::quad::QuadOptions;

pub use csv_io::{cycle_exact_csv, emit_csv, parse_csv, CsvRow, CsvTable};
pub use function::FunctionSpec;

pub const TOOL_NAME: &str = "bdecay";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReportOptions {
    pub quad: QuadOptions,
    /// Add `min(bound, ||f(A)||_2)` next to each bound.
    pub cap_trivial: bool,
    pub dense_limit: usize,
}

impl Default for ReportOptions {
    fn default() -> Self {
        Self {
            quad: QuadOptions::default(),
            cap_trivial: false,
            dense_limit: DEFAULT_DENSE_LIMIT,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixInfo {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub n: usize,
    pub nnz: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecayRecord {
    pub j: usize,
    /// `None` when `j` is unreachable from the source.
    pub distance: Option<usize>,
    pub abs_entry: f64,
    #[serde(default)]
    pub bounds: BTreeMap<BoundKind, BoundValue>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub capped: BTreeMap<BoundKind, f64>,
    #[serde(default)]
    pub dominated: BTreeMap<BoundKind, bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecayReport {
    pub tool: String,
    pub version: String,
    pub matrix: MatrixInfo,
    pub source: usize,
    pub function: FunctionSpec,
    pub bound_kinds: Vec<BoundKind>,
    pub cap_trivial: bool,
    pub spectral: SpectralData,
    /// `||f(A)||_2`, the largest `|f(lambda_k)|`.
    pub trivial_cap: f64,
    pub records: Vec<DecayRecord>,
}

impl DecayReport {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_csv(&self) -> String {
        emit_csv(self)
    }
}

fn inapplicable(kind: BoundKind, reason: impl Into<String>) -> Error {
    Error::Inapplicable {
        kind: kind.name(),
        reason: reason.into(),
    }
}

/// Check that `kind` can be evaluated for `func` on a matrix with spectral data `sd`.
pub fn check_applicable(kind: BoundKind, func: &FunctionSpec, sd: &SpectralData) -> Result<()> {
    use BoundKind::*;
    let needs_frac = matches!(kind, ClosedFrac | ClosedSqrt | Stieltjes | StieltjesSharp | Jackson);
    match (kind, func) {
        (ExpSemidef | ExpPosdef, FunctionSpec::Exp(_)) => {}
        (ExpSemidef | ExpPosdef, _) => return Err(inapplicable(kind, format!("needs an exp:T function, got {func}"))),
        (QuadSemidef | QuadPosdef, FunctionSpec::Exp(_)) => {
            return Err(inapplicable(kind, "needs a Bernstein function (frac:ALPHA or log1p)"))
        }
        (_, FunctionSpec::Frac(a)) if kind == ClosedSqrt && a.alpha() != 0.5 => {
            return Err(inapplicable(kind, format!("only applies to frac:0.5, got {func}")))
        }
        (_, f) if needs_frac && f.alpha().is_none() => {
            return Err(inapplicable(kind, format!("needs a frac:ALPHA function, got {func}")))
        }
        _ => {}
    }
    let (Some(lo), Some(hi)) = (sd.lambda_min, sd.lambda_max) else {
        return Err(inapplicable(kind, "spectral data unavailable"));
    };
    let zero_tol = crate::graphs::SINGULAR_RTOL * hi.abs().max(1.0);
    match kind {
        TrivialCap => Ok(()),
        ExpSemidef | QuadSemidef | ClosedFrac | ClosedSqrt | Jackson => {
            if lo < -zero_tol {
                Err(inapplicable(
                    kind,
                    format!("requires a positive semidefinite matrix; lambda_min = {lo}"),
                ))
            } else if !(hi > 0.0) {
                Err(inapplicable(kind, "requires a nonzero spectral radius"))
            } else {
                Ok(())
            }
        }
        ExpPosdef | QuadPosdef | Stieltjes | StieltjesSharp => {
            if !sd.is_positive_definite() {
                Err(inapplicable(
                    kind,
                    format!(
                        "{} requires lambda_min > 0; matrix is singular (lambda_min = {lo:e})",
                        kind.name()
                    ),
                ))
            } else if kind == QuadPosdef && !(hi > lo) {
                Err(inapplicable(kind, "requires lambda_max > lambda_min"))
            } else {
                Ok(())
            }
        }
    }
}

struct BoundContext<'a> {
    func: FunctionSpec,
    sd: SpectralData,
    levy: Option<LevyTriple>,
    quad: &'a QuadOptions,
    trivial_cap: f64,
    inf_norm: f64,
}

impl BoundContext<'_> {
    /// Bounds that depend only on the distance `d >= 2`.
    fn eval(&self, kind: BoundKind, d: usize) -> Result<Option<BoundValue>> {
        use BoundKind::*;
        let lo = self.sd.lambda_min.unwrap_or(0.0);
        let hi = self.sd.lambda_max.unwrap_or(0.0);
        let rho = hi.max(0.0);
        let exp_value = |kind, v: Option<f64>| {
            v.map(|value| BoundValue {
                value,
                kind,
                quad_err: None,
            })
        };
        Ok(match (kind, self.func) {
            (ExpSemidef, FunctionSpec::Exp(t)) => exp_value(kind, exp_entry_bound_semidef(rho / 4.0, t, d)?),
            (ExpPosdef, FunctionSpec::Exp(t)) => exp_value(kind, exp_entry_bound_posdef(lo, hi, t, d)?),
            (QuadSemidef, _) => Some(bernstein_bound_semidef(self.levy(), rho, d, self.quad)?),
            (QuadPosdef, _) => Some(bernstein_bound_posdef(self.levy(), lo, hi, d, self.quad)?),
            (ClosedFrac, FunctionSpec::Frac(a)) => Some(frac_bound_closed_semidef(a, rho, d)?),
            (ClosedSqrt, _) => Some(sqrt_bound_closed_semidef(rho, d)?),
            (Stieltjes, FunctionSpec::Frac(a)) => Some(stieltjes_bound(a, lo, hi, self.inf_norm, d)?),
            (Jackson, FunctionSpec::Frac(a)) => Some(jackson_bound(a, rho, d)?),
            (TrivialCap, _) => Some(BoundValue {
                value: self.trivial_cap,
                kind,
                quad_err: None,
            }),
            _ => None,
        })
    }

    fn levy(&self) -> &LevyTriple {
        self.levy.as_ref().expect("checked by check_applicable")
    }
}

/// Build the decay report for column `source` (1-based) of `f(A)`.
pub fn compute_decay_report(
    a: &SparseSymMatrix,
    source: usize,
    func: FunctionSpec,
    kinds: &[BoundKind],
    opts: &ReportOptions,
) -> Result<DecayReport> {
    let eig = eig_sym_with_limit(a, opts.dense_limit)?;
    compute_decay_report_with_eig(a, &eig, source, func, kinds, opts)
}

/// As [`compute_decay_report`], reusing an eigendecomposition of `a`.
pub fn compute_decay_report_with_eig(
    a: &SparseSymMatrix,
    eig: &EigenDecomposition,
    source: usize,
    func: FunctionSpec,
    kinds: &[BoundKind],
    opts: &ReportOptions,
) -> Result<DecayReport> {
    let n = a.n();
    if eig.n() != n {
        return Err(Error::Size(format!(
            "eigendecomposition has size {}, matrix {n}",
            eig.n()
        )));
    }
    if source == 0 || source > n {
        return Err(Error::Index { index: source, n });
    }
    let src = source - 1;
    let sd = spectral_data(a, Some(eig));
    let mut kinds_sorted: Vec<BoundKind> = kinds.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    kinds_sorted.sort();
    for &k in &kinds_sorted {
        check_applicable(k, &func, &sd)?;
    }

    let zero_tol = eig.zero_tolerance();
    let f = |l: f64| func.scalar(l, zero_tol);
    let trivial_cap = eig
        .values
        .iter()
        .map(|&l| f(l).map(f64::abs).ok_or(Error::Undefined(l)))
        .try_fold(0.0f64, |m, v| v.map(|v| m.max(v)))?;
    let column = match func {
        FunctionSpec::Exp(t) if a.has_nonpositive_offdiagonal() => expm_neg_taylor_column(a, t, src)?,
        _ => function_column(eig, src, f)?,
    };
    let dist = bfs_distances(a, src)?;

    let ctx = BoundContext {
        func,
        sd,
        levy: func.levy(),
        quad: &opts.quad,
        trivial_cap,
        inf_norm: a.inf_norm(),
    };
    let distances: BTreeSet<usize> = dist.dist.iter().flatten().copied().filter(|&d| d >= 2).collect();
    let by_distance: BTreeMap<(usize, BoundKind), Option<BoundValue>> = distances
        .into_par_iter()
        .flat_map_iter(|d| kinds_sorted.iter().map(move |&k| (d, k)))
        .filter(|&(_, k)| k != BoundKind::StieltjesSharp)
        .map(|(d, k)| ctx.eval(k, d).map(|v| ((d, k), v)))
        .collect::<Result<_>>()?;

    let alpha = func.alpha();
    let row_src = a.row_one_norm(src)?;
    let mut records = Vec::with_capacity(n.saturating_sub(1));
    for j in (0..n).filter(|&j| j != src) {
        let distance = dist.get(j);
        let mut rec = DecayRecord {
            j: j + 1,
            distance,
            abs_entry: column[j].abs(),
            bounds: BTreeMap::new(),
            capped: BTreeMap::new(),
            dominated: BTreeMap::new(),
        };
        match distance {
            None => {
                for &k in &kinds_sorted {
                    let quad_err = k.is_quadrature().then_some(0.0);
                    rec.bounds.insert(
                        k,
                        BoundValue {
                            value: 0.0,
                            kind: k,
                            quad_err,
                        },
                    );
                }
            }
            Some(d) if d >= 2 => {
                for &k in &kinds_sorted {
                    let v = if k == BoundKind::StieltjesSharp {
                        let alpha = alpha.expect("checked by check_applicable");
                        let (lo, hi) = (sd.lambda_min.unwrap_or(0.0), sd.lambda_max.unwrap_or(0.0));
                        Some(stieltjes_bound_sharp(alpha, lo, hi, row_src, a.row_one_norm(j)?, d)?)
                    } else {
                        by_distance[&(d, k)]
                    };
                    if let Some(v) = v {
                        rec.dominated.insert(k, v.value >= rec.abs_entry);
                        rec.bounds.insert(k, v);
                    }
                }
            }
            Some(_) => {}
        }
        if opts.cap_trivial {
            rec.capped = rec.bounds.iter().map(|(&k, v)| (k, v.value.min(trivial_cap))).collect();
        }
        records.push(rec);
    }

    Ok(DecayReport {
        tool: TOOL_NAME.to_string(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        matrix: MatrixInfo {
            label: None,
            n,
            nnz: a.nnz(),
        },
        source,
        function: func,
        bound_kinds: kinds_sorted,
        cap_trivial: opts.cap_trivial,
        spectral: sd,
        trivial_cap,
        records,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub j: usize,
    pub distance: usize,
    pub kind: BoundKind,
    pub bound: f64,
    pub abs_entry: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DominationSummary {
    /// Number of (record, bound) pairs compared.
    pub checked: usize,
    pub violations: Vec<Violation>,
    /// Largest and smallest `bound / |entry|` over pairs with a nonzero entry.
    pub max_ratio: Option<f64>,
    pub min_ratio: Option<f64>,
}

impl DominationSummary {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Compare every bound in the report with its entry, ignoring the stored flags.
pub fn check_domination(report: &DecayReport) -> DominationSummary {
    let mut s = DominationSummary {
        checked: 0,
        violations: Vec::new(),
        max_ratio: None,
        min_ratio: None,
    };
    for r in &report.records {
        let Some(d) = r.distance.filter(|&d| d >= 2) else {
            continue;
        };
        for (&kind, b) in &r.bounds {
            s.checked += 1;
            if !(b.value >= r.abs_entry) {
                s.violations.push(Violation {
                    j: r.j,
                    distance: d,
                    kind,
                    bound: b.value,
                    abs_entry: r.abs_entry,
                });
            }
            if r.abs_entry > 0.0 {
                let ratio = b.value / r.abs_entry;
                s.max_ratio = Some(s.max_ratio.map_or(ratio, |m: f64| m.max(ratio)));
                s.min_ratio = Some(s.min_ratio.map_or(ratio, |m: f64| m.min(ratio)));
            }
        }
    }
    s
}
