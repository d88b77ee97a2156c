//! Dense ground truth: symmetric eigendecomposition and `f(A) = V f(Λ) Vᵀ`.
//!
//! Also holds the closed forms for the square root of the cycle Laplacian and an
//! entrywise-accurate series for `exp(-tA)` on Z-matrices.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::graphs::SparseSymMatrix;

pub const DEFAULT_DENSE_LIMIT: usize = 3000;

/// Eigenvalues in ascending order with the matching orthonormal eigenvectors as columns.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub values: DVector<f64>,
    pub vectors: DMatrix<f64>,
}

impl EigenDecomposition {
    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn lambda_min(&self) -> f64 {
        self.values[0]
    }

    pub fn lambda_max(&self) -> f64 {
        self.values[self.n() - 1]
    }

    /// Tolerance under which an eigenvalue counts as zero.
    pub fn zero_tolerance(&self) -> f64 {
        let scale = self.values.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(1.0);
        1e-10 * scale
    }
}

pub fn eig_sym(a: &SparseSymMatrix) -> Result<EigenDecomposition> {
    eig_sym_with_limit(a, DEFAULT_DENSE_LIMIT)
}

pub fn eig_sym_with_limit(a: &SparseSymMatrix, limit: usize) -> Result<EigenDecomposition> {
    if a.n() > limit {
        return Err(Error::DenseLimit { n: a.n(), limit });
    }
    eig_dense(a.to_dense())
}

/// Eigendecomposition of a dense symmetric matrix.
pub fn eig_dense(m: DMatrix<f64>) -> Result<EigenDecomposition> {
    let n = m.nrows();
    if n == 0 || m.ncols() != n {
        return Err(Error::Size(format!(
            "expected a non-empty square matrix, got {}x{}",
            n,
            m.ncols()
        )));
    }
    let se = m.try_symmetric_eigen(f64::EPSILON, 0).ok_or(Error::Convergence {
        what: "symmetric eigensolver",
    })?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&p, &q| se.eigenvalues[p].total_cmp(&se.eigenvalues[q]));
    let values = DVector::from_iterator(n, order.iter().map(|&k| se.eigenvalues[k]));
    let mut vectors = DMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &se.eigenvectors.column(src));
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::Convergence {
            what: "symmetric eigensolver",
        });
    }
    Ok(EigenDecomposition { values, vectors })
}

fn eval_spectrum<F>(eig: &EigenDecomposition, f: F) -> Result<Vec<f64>>
where
    F: Fn(f64) -> Option<f64>,
{
    eig.values
        .iter()
        .map(|&l| f(l).filter(|v| v.is_finite()).ok_or(Error::Undefined(l)))
        .collect()
}

/// `V f(Λ) Vᵀ`; `f` returns `None` where it is undefined.
pub fn apply_function<F>(eig: &EigenDecomposition, f: F) -> Result<DMatrix<f64>>
where
    F: Fn(f64) -> Option<f64>,
{
    let fl = eval_spectrum(eig, f)?;
    let v = &eig.vectors;
    let mut scaled = v.clone();
    for (k, mut col) in scaled.column_iter_mut().enumerate() {
        col *= fl[k];
    }
    let mut out = &scaled * v.transpose();
    // symmetrize rounding noise
    let n = out.nrows();
    for i in 0..n {
        for j in 0..i {
            let m = 0.5 * (out[(i, j)] + out[(j, i)]);
            out[(i, j)] = m;
            out[(j, i)] = m;
        }
    }
    Ok(out)
}

/// Column `j` of `f(A)` without forming the full matrix.
pub fn function_column<F>(eig: &EigenDecomposition, j: usize, f: F) -> Result<Vec<f64>>
where
    F: Fn(f64) -> Option<f64>,
{
    let n = eig.n();
    if j >= n {
        return Err(Error::Index { index: j, n });
    }
    let fl = eval_spectrum(eig, f)?;
    let v = &eig.vectors;
    let w: Vec<f64> = (0..n).map(|k| fl[k] * v[(j, k)]).collect();
    Ok((0..n).map(|i| (0..n).map(|k| v[(i, k)] * w[k]).sum()).collect())
}

/// `z^alpha` with the continuous extension `0^alpha = 0`; eigenvalues that are
/// negative beyond `zero_tol` are rejected.
pub fn frac_power_fn(alpha: f64, zero_tol: f64) -> impl Fn(f64) -> Option<f64> + Copy {
    move |l: f64| {
        if l > zero_tol {
            Some(l.powf(alpha))
        } else if l >= -zero_tol {
            Some(0.0)
        } else {
            None
        }
    }
}

pub fn frac_power(eig: &EigenDecomposition, alpha: f64) -> Result<DMatrix<f64>> {
    apply_function(eig, frac_power_fn(alpha, eig.zero_tolerance()))
}

/// `exp(-tA)` through the eigendecomposition.
pub fn expm_neg(eig: &EigenDecomposition, t: f64) -> Result<DMatrix<f64>> {
    apply_function(eig, |l| Some((-t * l).exp()))
}

/// Column `j` of `exp(-tA)` for a matrix with nonpositive off-diagonal entries.
///
/// Writes `exp(-tA) = e^{-tc} exp(tB)` with `B = cI - A` entrywise nonnegative, so
/// every Taylor term is nonnegative and each entry carries a small relative error,
/// including entries far below the eigendecomposition's absolute noise floor.
pub fn expm_neg_taylor_column(a: &SparseSymMatrix, t: f64, j: usize) -> Result<Vec<f64>> {
    let n = a.n();
    if j >= n {
        return Err(Error::Index { index: j, n });
    }
    if !(t >= 0.0 && t.is_finite()) {
        return Err(crate::error::domain(
            "expm_neg_taylor_column",
            format!("t = {t} must be finite and >= 0"),
        ));
    }
    if !a.has_nonpositive_offdiagonal() {
        return Err(crate::error::domain(
            "expm_neg_taylor_column",
            "matrix has a positive off-diagonal entry",
        ));
    }
    let c = a.diagonal().into_iter().fold(f64::NEG_INFINITY, f64::max).max(0.0);
    let b = a.shifted(-c);
    let norm_b = b.inf_norm();
    let mut steps = 0u32;
    while t * norm_b / f64::from(1u32 << steps) > 600.0 {
        steps += 1;
    }
    let h = t / f64::from(1u32 << steps);

    let mut col = vec![0.0; n];
    col[j] = 1.0;
    let apply = |x: &[f64]| -> Vec<f64> {
        let mut y = vec![0.0; n];
        b.mul_vec(x, &mut y);
        y.iter_mut().for_each(|v| *v = -*v * h);
        y
    };
    let step = |x: &[f64]| -> Vec<f64> {
        let mut sum = x.to_vec();
        let mut term = x.to_vec();
        for k in 1..100_000usize {
            term = apply(&term);
            let kf = k as f64;
            term.iter_mut().for_each(|v| *v /= kf);
            let mut done = true;
            for (s, &tv) in sum.iter_mut().zip(&term) {
                *s += tv;
                if tv > 1e-18 * *s {
                    done = false;
                }
            }
            if done && k as f64 > h * norm_b {
                break;
            }
        }
        sum
    };
    // exp(-hA) = e^{-hc} exp(hB), applied 2^steps times
    let scale = (-h * c).exp();
    for _ in 0..(1u64 << steps) {
        col = step(&col);
        col.iter_mut().for_each(|v| *v *= scale);
    }
    Ok(col)
}

/// `exp(-tM)` for a dense Z-matrix `M` with entrywise relative accuracy, by scaling
/// and squaring the nonnegative series of `exp(tB)`, `B = cI - M`.
fn expm_neg_positive(m: &DMatrix<f64>, t: f64) -> DMatrix<f64> {
    let n = m.nrows();
    let c = m.diagonal().iter().fold(0.0f64, |a, &v| a.max(v));
    let b = DMatrix::from_fn(n, n, |i, j| if i == j { c - m[(i, j)] } else { -m[(i, j)] });
    let norm_b = b
        .row_iter()
        .map(|r| r.iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0, f64::max);
    let mut squarings = 0;
    while t * norm_b / 2f64.powi(squarings) > 0.5 {
        squarings += 1;
    }
    let h = t / 2f64.powi(squarings);
    let hb = &b * h;
    let mut sum = DMatrix::identity(n, n);
    let mut term = DMatrix::identity(n, n);
    for k in 1..60 {
        term = &term * &hb / k as f64;
        sum += &term;
        let converged = term.iter().zip(sum.iter()).all(|(&tv, &sv)| tv <= 1e-18 * sv);
        if converged {
            break;
        }
    }
    let mut e = sum * (-h * c).exp();
    for _ in 0..squarings {
        e = &e * &e;
    }
    e
}

/// Magnitudes of the off-diagonal entries of `A^alpha` for the Kronecker sum
/// `A = I ⊗ M + M ⊗ I`, where `M` is a positive definite Z-matrix. Accurate for pairs at
/// graph distance at least 2; the diagonal is zero.
///
/// Off the diagonal, `-[A^alpha]_ij = alpha / Γ(1 - alpha) ∫ [exp(-tM) ⊗ exp(-tM)]_ij t^{-alpha-1} dt`
/// with a positive integrand, so every entry keeps a small relative error however
/// tiny it is. The integral runs over `s = ln t` with the trapezoidal rule.
pub fn kron_sum_frac_power_offdiag(m: &SparseSymMatrix, alpha: f64) -> Result<DMatrix<f64>> {
    const F: &str = "kron_sum_frac_power_offdiag";
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(crate::error::domain(F, format!("alpha = {alpha} must lie in (0, 1)")));
    }
    if !m.has_nonpositive_offdiagonal() {
        return Err(crate::error::domain(F, "M has a positive off-diagonal entry"));
    }
    let lambda_min = 2.0 * eig_sym(m)?.lambda_min();
    if !(lambda_min > 0.0) {
        return Err(crate::error::domain(F, "M must be positive definite"));
    }
    let dm = m.to_dense();
    let k = m.n();
    let n = k * k;
    let h = 1.0 / 16.0;
    let (s_lo, s_hi) = (-40.0, (60.0 / lambda_min).ln());
    let steps = ((s_hi - s_lo) / h).ceil() as usize;
    let mut acc = DMatrix::zeros(n, n);
    for step in 0..=steps {
        let s = s_lo + step as f64 * h;
        let e = expm_neg_positive(&dm, s.exp());
        let w = h * (-alpha * s).exp();
        for p in 0..k {
            for r in 0..k {
                let epr = w * e[(p, r)];
                for q in 0..k {
                    for ss in 0..k {
                        acc[(p * k + q, r * k + ss)] += epr * e[(q, ss)];
                    }
                }
            }
        }
    }
    let scale = alpha / crate::specfun::gamma(1.0 - alpha)?;
    acc *= scale;
    acc.fill_diagonal(0.0);
    Ok(acc)
}

fn check_cycle(n: usize, i: usize, j: usize) -> Result<()> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(Error::Size(format!("cycle length must be odd and >= 3, got {n}")));
    }
    for idx in [i, j] {
        if idx >= n {
            return Err(Error::Index { index: idx, n });
        }
    }
    Ok(())
}

/// Entry `(i, j)` (0-based) of the square root of the odd cycle Laplacian, in closed form.
pub fn cycle_sqrt_entry(n: usize, i: usize, j: usize) -> Result<f64> {
    check_cycle(n, i, j)?;
    let nf = n as f64;
    let k = i as f64 - j as f64;
    let c1 = 1.0 / (PI * (2.0 * k + 1.0) / (2.0 * nf)).tan();
    let c2 = 1.0 / (PI * (1.0 - 2.0 * k) / (2.0 * nf)).tan();
    Ok((c1 + c2) / nf)
}

/// `(n, n² |entry|)` for the entry at the node opposite node 0 on each cycle.
pub fn cycle_sqrt_midpoint_scaling(ns: &[usize]) -> Result<Vec<(usize, f64)>> {
    ns.iter()
        .map(|&n| {
            if n < 5 || n % 2 == 0 {
                return Err(Error::Size(format!("cycle length must be odd and >= 5, got {n}")));
            }
            let nf = n as f64;
            let entry = (1.0 / nf) / (PI * (1.0 / nf - 0.5)).tan();
            Ok((n, nf * nf * entry.abs()))
        })
        .collect()
}

/// Eigenpairs of the odd cycle Laplacian from the analytic formulas, eigenvalue `k`
/// paired with eigenvector column `k`.
pub fn cycle_eigenpairs(n: usize) -> Result<EigenDecomposition> {
    check_cycle(n, 0, 0)?;
    let nf = n as f64;
    let mut values = DVector::zeros(n);
    let mut vectors = DMatrix::zeros(n, n);
    for k in 0..n {
        // frequency m pairs as cos for odd k and sin for even k > 0
        let m = k.div_ceil(2) as f64;
        values[k] = 4.0 * (PI * m / nf).sin().powi(2);
        for i in 0..n {
            let th = 2.0 * PI * m * i as f64 / nf;
            vectors[(i, k)] = if k == 0 {
                1.0 / nf.sqrt()
            } else if k % 2 == 1 {
                (2.0 / nf).sqrt() * th.cos()
            } else {
                (2.0 / nf).sqrt() * th.sin()
            };
        }
    }
    Ok(EigenDecomposition { values, vectors })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{chain_laplacian, cycle_laplacian, grid2d_matrix};

    fn max_abs(m: &DMatrix<f64>) -> f64 {
        m.iter().fold(0.0f64, |a, v| a.max(v.abs()))
    }

    fn test_matrices() -> Vec<SparseSymMatrix> {
        vec![
            chain_laplacian(30).unwrap(),
            cycle_laplacian(31).unwrap(),
            grid2d_matrix(6, 0.1).unwrap(),
            crate::graphs::geometric_graph_laplacian(60, 0.25, 9).unwrap(),
        ]
    }

    #[test]
    fn identity_spectrum() {
        let eye = SparseSymMatrix::from_triplets(5, (0..5).map(|i| (i, i, 1.0))).unwrap();
        let e = eig_sym(&eye).unwrap();
        assert!(e.values.iter().all(|&v| (v - 1.0).abs() < 1e-14));
    }

    #[test]
    fn decomposition_invariants() {
        for a in test_matrices() {
            let e = eig_sym(&a).unwrap();
            let n = e.n();
            assert!(e.values.as_slice().windows(2).all(|w| w[0] <= w[1]));
            let vtv = e.vectors.transpose() * &e.vectors;
            assert!(max_abs(&(vtv - DMatrix::identity(n, n))) < 1e-10);
            let dense = a.to_dense();
            let scale = max_abs(&dense);
            let rec = apply_function(&e, Some).unwrap();
            assert!(max_abs(&(rec - &dense)) <= 1e-8 * scale);
            for k in 0..n {
                let v = e.vectors.column(k);
                let r = &dense * v - v * e.values[k];
                assert!(r.amax() <= 1e-8 * scale);
            }
        }
    }

    #[test]
    fn dense_limit_enforced() {
        let a = chain_laplacian(20).unwrap();
        assert!(matches!(
            eig_sym_with_limit(&a, 10),
            Err(Error::DenseLimit { n: 20, limit: 10 })
        ));
    }

    #[test]
    fn chain_is_singular() {
        let e = eig_sym(&chain_laplacian(50).unwrap()).unwrap();
        assert!(e.lambda_min().abs() < 1e-10);
    }

    #[test]
    fn cycle_spectrum_matches_formula() {
        for n in [5, 11, 101] {
            let e = eig_sym(&cycle_laplacian(n).unwrap()).unwrap();
            let mut want: Vec<f64> = cycle_eigenpairs(n).unwrap().values.iter().copied().collect();
            want.sort_by(f64::total_cmp);
            for (g, w) in e.values.iter().zip(&want) {
                assert!((g - w).abs() < 1e-10, "n={n}: {g} vs {w}");
            }
            // every nonzero eigenvalue appears twice
            for k in (1..n).step_by(2) {
                assert!((want[k] - want[k + 1]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn analytic_cycle_eigenvectors() {
        let n = 11;
        let e = cycle_eigenpairs(n).unwrap();
        let vtv = e.vectors.transpose() * &e.vectors;
        assert!(max_abs(&(vtv - DMatrix::identity(n, n))) < 1e-10);
        let dense = cycle_laplacian(n).unwrap().to_dense();
        let rec = apply_function(&e, Some).unwrap();
        assert!(max_abs(&(rec - dense)) < 1e-10);
    }

    #[test]
    fn sqrt_squared_is_a() {
        let a = chain_laplacian(10).unwrap();
        let e = eig_sym(&a).unwrap();
        let s = frac_power(&e, 0.5).unwrap();
        assert!(max_abs(&(&s * &s - a.to_dense())) < 1e-8);
    }

    #[test]
    fn fractional_power_composition() {
        let e = eig_sym(&chain_laplacian(30).unwrap()).unwrap();
        let half = frac_power(&e, 0.5).unwrap();
        let e_half = eig_dense(half).unwrap();
        let quarter_a = frac_power(&e_half, 0.5).unwrap();
        let quarter_b = frac_power(&e, 0.25).unwrap();
        assert!(max_abs(&(quarter_a - quarter_b)) < 1e-8);
    }

    #[test]
    fn undefined_on_negative_eigenvalue() {
        let a = chain_laplacian(5).unwrap().shifted(-1.0);
        let e = eig_sym(&a).unwrap();
        assert!(matches!(frac_power(&e, 0.5), Err(Error::Undefined(_))));
    }

    #[test]
    fn column_matches_full_matrix() {
        let a = grid2d_matrix(5, 0.3).unwrap();
        let e = eig_sym(&a).unwrap();
        let full = frac_power(&e, 0.75).unwrap();
        let col = function_column(&e, 7, frac_power_fn(0.75, e.zero_tolerance())).unwrap();
        for i in 0..a.n() {
            assert!((col[i] - full[(i, 7)]).abs() < 1e-13);
        }
    }

    #[test]
    fn exp_norm_is_exp_lambda_min() {
        let a = grid2d_matrix(5, 1.0).unwrap();
        let e = eig_sym(&a).unwrap();
        let ex = expm_neg(&e, 1.0).unwrap();
        let norm = eig_dense(ex).unwrap().lambda_max();
        assert!((norm - (-e.lambda_min()).exp()).abs() < 1e-12);
    }

    #[test]
    fn exp_semigroup_and_shift() {
        let a = grid2d_matrix(2, 0.0).unwrap().shifted(0.0);
        let five = SparseSymMatrix::from_triangle(
            5,
            [
                (0, 0, 3.0),
                (1, 0, -1.0),
                (1, 1, 2.5),
                (2, 1, -0.5),
                (2, 2, 4.0),
                (3, 0, -0.2),
                (3, 3, 1.5),
                (4, 2, -1.1),
                (4, 4, 2.0),
            ],
        )
        .unwrap();
        for m in [a, five] {
            let e = eig_sym(&m).unwrap();
            let (s, t) = (0.3, 0.9);
            let lhs = expm_neg(&e, s + t).unwrap();
            let rhs = expm_neg(&e, s).unwrap() * expm_neg(&e, t).unwrap();
            assert!(max_abs(&(lhs - rhs)) < 1e-8);
            for sigma in [0.1, 1.0, 2.5] {
                let es = eig_sym(&m.shifted(sigma)).unwrap();
                let shifted = expm_neg(&es, t).unwrap();
                let scaled = expm_neg(&e, t).unwrap() * (-t * sigma).exp();
                assert!(max_abs(&(shifted - scaled)) < 1e-10);
            }
        }
    }

    #[test]
    fn taylor_column_matches_eig_and_is_entrywise_accurate() {
        let a = grid2d_matrix(7, 1.0).unwrap();
        let e = eig_sym(&a).unwrap();
        for t in [0.1, 1.0, 5.0, 200.0] {
            let col = expm_neg_taylor_column(&a, t, 24).unwrap();
            let full = expm_neg(&e, t).unwrap();
            for i in 0..a.n() {
                let tol = 1e-13 * (-t * e.lambda_min()).exp().max(1e-300) + 1e-15;
                assert!(
                    (col[i] - full[(i, 24)]).abs() < tol,
                    "t={t} i={i}: {} vs {}",
                    col[i],
                    full[(i, 24)]
                );
                assert!(col[i] > 0.0);
            }
        }
        // 1D chain at small t: the far entry is ~ t^d/d!
        let c = chain_laplacian(12).unwrap();
        let col = expm_neg_taylor_column(&c, 0.01, 0).unwrap();
        let lead = 0.01f64.powi(11) / (1..=11).map(|k| k as f64).product::<f64>();
        assert!((col[11] / lead - 1.0).abs() < 0.03, "{} vs {lead}", col[11]);
    }

    #[test]
    fn kron_sum_oracle_matches_eig() {
        let side = 6;
        let m = chain_laplacian(side).unwrap();
        let mut trip: Vec<_> = (0..side).flat_map(|i| m.row(i).map(move |(j, v)| (i, j, v))).collect();
        for t in trip.iter_mut().filter(|t| t.0 == t.1) {
            t.2 = 2.3;
        }
        let m = SparseSymMatrix::from_triplets(side, trip).unwrap();
        let a = grid2d_matrix(side, 0.3).unwrap();
        let e = eig_sym(&a).unwrap();
        for alpha in [0.25, 0.5, 0.75] {
            let oracle = kron_sum_frac_power_offdiag(&m, alpha).unwrap();
            let dense = frac_power(&e, alpha).unwrap();
            for i in 0..a.n() {
                for j in 0..a.n() {
                    if i != j && a.get(i, j) == 0.0 && dense[(i, j)].abs() > 1e-8 {
                        let rel = (oracle[(i, j)] - dense[(i, j)].abs()) / dense[(i, j)].abs();
                        assert!(
                            rel.abs() < 1e-9,
                            "alpha={alpha} ({i},{j}): {} vs {}",
                            oracle[(i, j)],
                            dense[(i, j)]
                        );
                        assert!(dense[(i, j)] <= 0.0);
                    }
                }
            }
        }
    }

    #[test]
    fn positive_expm_matches_eig() {
        let a = grid2d_matrix(4, 1.0).unwrap();
        let e = eig_sym(&a).unwrap();
        for t in [0.01, 1.0, 30.0] {
            let p = expm_neg_positive(&a.to_dense(), t);
            let q = expm_neg(&e, t).unwrap();
            assert!(max_abs(&(p - q)) < 1e-14);
        }
    }

    #[test]
    fn cycle_sqrt_matches_oracle() {
        let n = 101;
        let e = eig_sym(&cycle_laplacian(n).unwrap()).unwrap();
        let col = function_column(&e, 0, frac_power_fn(0.5, e.zero_tolerance())).unwrap();
        for (i, v) in col.iter().enumerate() {
            assert!((cycle_sqrt_entry(n, i, 0).unwrap() - v).abs() < 1e-10);
        }
        let mid = cycle_sqrt_entry(n, n / 2, 0).unwrap();
        let nf = n as f64;
        assert!((mid - (1.0 / nf) / (PI * (1.0 / nf - 0.5)).tan()).abs() < 1e-14);
    }

    #[test]
    fn midpoint_scaling_tends_to_pi() {
        let s = cycle_sqrt_midpoint_scaling(&[5, 101, 1001, 10001]).unwrap();
        let want5 = 25.0 * ((1.0 / 5.0) / (PI * (0.2 - 0.5)).tan()).abs();
        assert_eq!(s[0], (5, want5));
        let gaps: Vec<f64> = s[1..].iter().map(|(_, v)| (v - PI).abs()).collect();
        assert!(gaps[0] > gaps[1] && gaps[1] > gaps[2]);
        assert!(gaps[2] / PI < 1e-6);
        assert!(cycle_sqrt_midpoint_scaling(&[4]).is_err());
        assert!(cycle_sqrt_entry(4, 0, 0).is_err());
    }
}
