//! Sparse symmetric matrices, the matrix graph, and the test-matrix generators.

mod bfs;
mod generators;
mod matrix;
pub mod mtx;

pub use bfs::{all_pairs_distances, bfs_distances, DistanceVector};
pub use generators::{chain_laplacian, cycle_laplacian, geometric_graph, geometric_graph_laplacian, grid2d_matrix};
pub use matrix::SparseSymMatrix;
pub use mtx::{parse_matrix_market, read_matrix_market, to_matrix_market, write_matrix_market};

use serde::{Deserialize, Serialize};

use crate::densefun::EigenDecomposition;

/// Relative threshold under which the smallest eigenvalue is treated as zero.
pub const SINGULAR_RTOL: f64 = 1e-10;

/// Spectral quantities feeding the bounds.
///
/// Without an eigendecomposition only the Gershgorin radius is known.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralData {
    pub lambda_min: Option<f64>,
    pub lambda_max: Option<f64>,
    /// Spectral radius.
    pub rho: Option<f64>,
    pub gershgorin_radius: f64,
    /// `lambda_max / lambda_min`; infinite for singular matrices (`"inf"` in JSON).
    #[serde(with = "kappa_serde")]
    pub kappa: Option<f64>,
}

impl SpectralData {
    /// True when the eigenvalue extremes are known and `lambda_min` is clearly positive.
    pub fn is_positive_definite(&self) -> bool {
        matches!((self.lambda_min, self.lambda_max), (Some(lo), Some(hi)) if lo > SINGULAR_RTOL * hi.abs().max(1.0))
    }

    /// Spectral radius if known, else the Gershgorin bound.
    pub fn rho_or_gershgorin(&self) -> f64 {
        self.rho.unwrap_or(self.gershgorin_radius)
    }
}

mod kappa_serde {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Num(f64),
        Text(String),
    }

    pub fn serialize<S: Serializer>(v: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(x) if x.is_infinite() && *x > 0.0 => s.serialize_str("inf"),
            Some(x) => s.serialize_f64(*x),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<f64>, D::Error> {
        match Option::<Repr>::deserialize(d)? {
            None => Ok(None),
            Some(Repr::Num(x)) => Ok(Some(x)),
            Some(Repr::Text(t)) if t == "inf" => Ok(Some(f64::INFINITY)),
            Some(Repr::Text(t)) => Err(serde::de::Error::custom(format!("invalid condition number '{t}'"))),
        }
    }
}

pub fn spectral_data(a: &SparseSymMatrix, eig: Option<&EigenDecomposition>) -> SpectralData {
    let gershgorin_radius = a.gershgorin_radius();
    let Some(eig) = eig else {
        return SpectralData {
            lambda_min: None,
            lambda_max: None,
            rho: None,
            gershgorin_radius,
            kappa: None,
        };
    };
    let lo = eig.lambda_min();
    let hi = eig.lambda_max();
    let mut sd = SpectralData {
        lambda_min: Some(lo),
        lambda_max: Some(hi),
        rho: Some(lo.abs().max(hi.abs())),
        gershgorin_radius,
        kappa: None,
    };
    sd.kappa = Some(if sd.is_positive_definite() {
        hi / lo
    } else {
        f64::INFINITY
    });
    sd
}
