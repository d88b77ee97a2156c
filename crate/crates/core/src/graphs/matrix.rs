use std::collections::BTreeMap;

use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// A real symmetric sparse matrix in compressed sparse row form.
///
/// Both triangles are stored, so a row scan yields every neighbour of a node.
/// Explicit zeros are never stored; the stored pattern (off the diagonal) is the
/// edge set of the matrix graph.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseSymMatrix {
    n: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    values: Vec<f64>,
}

impl SparseSymMatrix {
    /// Build from full-matrix triplets (0-based). Duplicates are summed; the result
    /// must be exactly symmetric.
    pub fn from_triplets<I>(n: usize, triplets: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        if n == 0 {
            return Err(Error::Size("matrix dimension must be at least 1".into()));
        }
        let mut map: BTreeMap<(usize, usize), f64> = BTreeMap::new();
        for (i, j, v) in triplets {
            if i >= n {
                return Err(Error::Index { index: i, n });
            }
            if j >= n {
                return Err(Error::Index { index: j, n });
            }
            if !v.is_finite() {
                return Err(Error::Domain {
                    func: "SparseSymMatrix::from_triplets",
                    msg: format!("non-finite value at ({i}, {j})"),
                });
            }
            *map.entry((i, j)).or_insert(0.0) += v;
        }
        map.retain(|_, v| *v != 0.0);
        for (&(i, j), &v) in &map {
            if i != j && map.get(&(j, i)).copied() != Some(v) {
                return Err(Error::Domain {
                    func: "SparseSymMatrix::from_triplets",
                    msg: format!("matrix is not symmetric at ({i}, {j})"),
                });
            }
        }
        Ok(Self::from_sorted_map(n, &map))
    }

    /// Build from one triangle (0-based); each off-diagonal entry is mirrored.
    pub fn from_triangle<I>(n: usize, triplets: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        let mut full = Vec::new();
        for (i, j, v) in triplets {
            full.push((i, j, v));
            if i != j {
                full.push((j, i, v));
            }
        }
        Self::from_triplets(n, full)
    }

    fn from_sorted_map(n: usize, map: &BTreeMap<(usize, usize), f64>) -> Self {
        let mut row_ptr = vec![0usize; n + 1];
        let mut col_idx = Vec::with_capacity(map.len());
        let mut values = Vec::with_capacity(map.len());
        for (&(i, j), &v) in map {
            row_ptr[i + 1] += 1;
            col_idx.push(j);
            values.push(v);
        }
        for i in 0..n {
            row_ptr[i + 1] += row_ptr[i];
        }
        Self {
            n,
            row_ptr,
            col_idx,
            values,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of stored entries (both triangles).
    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    /// `(column, value)` pairs of row `i`, columns ascending.
    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let span = self.row_ptr[i]..self.row_ptr[i + 1];
        self.col_idx[span.clone()]
            .iter()
            .copied()
            .zip(self.values[span].iter().copied())
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        let span = self.row_ptr[i]..self.row_ptr[i + 1];
        match self.col_idx[span.clone()].binary_search(&j) {
            Ok(k) => self.values[span.start + k],
            Err(_) => 0.0,
        }
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.get(i, i)).collect()
    }

    /// Iterate the lower triangle (`i >= j`) as 0-based triplets, row-major.
    pub fn lower_triplets(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.n).flat_map(move |i| self.row(i).filter(move |&(j, _)| j <= i).map(move |(j, v)| (i, j, v)))
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.n, self.n);
        for i in 0..self.n {
            for (j, v) in self.row(i) {
                m[(i, j)] = v;
            }
        }
        m
    }

    pub fn mul_vec(&self, x: &[f64], y: &mut [f64]) {
        for (i, yi) in y.iter_mut().enumerate().take(self.n) {
            *yi = self.row(i).map(|(j, v)| v * x[j]).sum();
        }
    }

    /// `A + sigma I`
    pub fn shifted(&self, sigma: f64) -> Self {
        let mut trip: Vec<_> = (0..self.n)
            .flat_map(|i| self.row(i).map(move |(j, v)| (i, j, v)))
            .collect();
        trip.extend((0..self.n).map(|i| (i, i, sigma)));
        Self::from_triplets(self.n, trip).expect("shift of a valid matrix is valid")
    }

    pub fn row_one_norm(&self, i: usize) -> Result<f64> {
        if i >= self.n {
            return Err(Error::Index { index: i, n: self.n });
        }
        Ok(self.row(i).map(|(_, v)| v.abs()).sum())
    }

    /// 1-norms of row `i` and column `i`; equal by symmetry.
    pub fn row_col_one_norms(&self, i: usize) -> Result<(f64, f64)> {
        let r = self.row_one_norm(i)?;
        let c = (0..self.n).map(|k| self.get(k, i).abs()).sum();
        Ok((r, c))
    }

    /// Matrix infinity norm, `max_i sum_j |a_ij|`.
    pub fn inf_norm(&self) -> f64 {
        (0..self.n)
            .map(|i| self.row(i).map(|(_, v)| v.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Gershgorin bound on the spectral radius; equals the infinity norm for symmetric matrices.
    pub fn gershgorin_radius(&self) -> f64 {
        self.inf_norm()
    }

    /// True when every off-diagonal entry is nonpositive.
    pub fn has_nonpositive_offdiagonal(&self) -> bool {
        (0..self.n).all(|i| self.row(i).all(|(j, v)| j == i || v <= 0.0))
    }
}
