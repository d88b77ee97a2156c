use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::SparseSymMatrix;
use crate::error::{Error, Result};

/// Laplacian of the path graph on `n` nodes: tridiagonal, diagonal `(1, 2, ..., 2, 1)`.
pub fn chain_laplacian(n: usize) -> Result<SparseSymMatrix> {
    if n < 2 {
        return Err(Error::Size(format!("chain needs at least 2 nodes, got {n}")));
    }
    let mut trip = Vec::with_capacity(3 * n);
    for i in 0..n {
        let deg = if i == 0 || i == n - 1 { 1.0 } else { 2.0 };
        trip.push((i, i, deg));
        if i + 1 < n {
            trip.push((i + 1, i, -1.0));
        }
    }
    SparseSymMatrix::from_triangle(n, trip)
}

/// Laplacian of the cycle on an odd number `n >= 3` of nodes.
pub fn cycle_laplacian(n: usize) -> Result<SparseSymMatrix> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(Error::Size(format!("cycle needs an odd node count >= 3, got {n}")));
    }
    let mut trip = Vec::with_capacity(2 * n);
    for i in 0..n {
        trip.push((i, i, 2.0));
        let next = (i + 1) % n;
        trip.push((i.max(next), i.min(next), -1.0));
    }
    SparseSymMatrix::from_triangle(n, trip)
}

/// `I (x) M + M (x) I` with `M = tridiag(-1, 2 + sigma, -1)` of order `side`.
///
/// Grid nodes are numbered row-major: node `r * side + c` sits at row `r`, column `c`.
pub fn grid2d_matrix(side: usize, sigma: f64) -> Result<SparseSymMatrix> {
    if side < 2 {
        return Err(Error::Size(format!("grid side must be at least 2, got {side}")));
    }
    if !(sigma >= 0.0) || !sigma.is_finite() {
        return Err(Error::Domain {
            func: "grid2d_matrix",
            msg: format!("shift must be finite and nonnegative, got {sigma}"),
        });
    }
    let n = side * side;
    let diag = 2.0 * (2.0 + sigma);
    let mut trip = Vec::with_capacity(3 * n);
    for r in 0..side {
        for c in 0..side {
            let k = r * side + c;
            trip.push((k, k, diag));
            if c > 0 {
                trip.push((k, k - 1, -1.0));
            }
            if r > 0 {
                trip.push((k, k - side, -1.0));
            }
        }
    }
    SparseSymMatrix::from_triangle(n, trip)
}

/// Random geometric graph on `n` uniform points in the unit square; pairs closer
/// than `radius` are joined. Returns its Laplacian `D - A`.
///
/// Points come from `ChaCha8Rng::seed_from_u64(seed)`, x then y per point.
pub fn geometric_graph_laplacian(n: usize, radius: f64, seed: u64) -> Result<SparseSymMatrix> {
    geometric_graph(n, radius, seed).map(|(m, _)| m)
}

/// As [`geometric_graph_laplacian`], also returning the sampled points.
pub fn geometric_graph(n: usize, radius: f64, seed: u64) -> Result<(SparseSymMatrix, Vec<[f64; 2]>)> {
    if n < 1 {
        return Err(Error::Size("geometric graph needs at least 1 node".into()));
    }
    if !(radius > 0.0) {
        return Err(Error::Domain {
            func: "geometric_graph_laplacian",
            msg: format!("radius must be positive, got {radius}"),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pts: Vec<[f64; 2]> = (0..n).map(|_| [rng.random::<f64>(), rng.random::<f64>()]).collect();
    let r2 = radius * radius;
    let mut degree = vec![0usize; n];
    let mut trip = Vec::new();
    for i in 0..n {
        for j in 0..i {
            let dx = pts[i][0] - pts[j][0];
            let dy = pts[i][1] - pts[j][1];
            if dx * dx + dy * dy < r2 {
                trip.push((i, j, -1.0));
                degree[i] += 1;
                degree[j] += 1;
            }
        }
    }
    trip.extend(degree.iter().enumerate().map(|(i, &d)| (i, i, d as f64)));
    Ok((SparseSymMatrix::from_triangle(n, trip)?, pts))
}
