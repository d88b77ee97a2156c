use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::SparseSymMatrix;
use crate::error::{Error, Result};

/// Geodesic distances from one source node; `None` marks an unreachable node.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceVector {
    pub source: usize,
    pub dist: Vec<Option<usize>>,
}

impl DistanceVector {
    pub fn get(&self, j: usize) -> Option<usize> {
        self.dist[j]
    }

    pub fn max_finite(&self) -> usize {
        self.dist.iter().flatten().copied().max().unwrap_or(0)
    }
}

/// Unweighted shortest-path distances over the off-diagonal pattern of `a`.
pub fn bfs_distances(a: &SparseSymMatrix, source: usize) -> Result<DistanceVector> {
    let n = a.n();
    if source >= n {
        return Err(Error::Index { index: source, n });
    }
    let mut dist = vec![None; n];
    dist[source] = Some(0);
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        let du = dist[u].expect("queued nodes have a distance");
        for (v, _) in a.row(u) {
            if dist[v].is_none() {
                dist[v] = Some(du + 1);
                queue.push_back(v);
            }
        }
    }
    Ok(DistanceVector { source, dist })
}

/// All-pairs distances, one BFS per node. Row `i` is `bfs_distances(a, i)`.
pub fn all_pairs_distances(a: &SparseSymMatrix) -> Vec<DistanceVector> {
    use rayon::prelude::*;
    (0..a.n())
        .into_par_iter()
        .map(|i| bfs_distances(a, i).expect("index in range"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{chain_laplacian, cycle_laplacian, geometric_graph_laplacian, grid2d_matrix};

    #[test]
    fn chain_distances() {
        let d = bfs_distances(&chain_laplacian(5).unwrap(), 0).unwrap();
        assert_eq!(d.dist, vec![Some(0), Some(1), Some(2), Some(3), Some(4)]);
    }

    #[test]
    fn cycle_distances() {
        let a = cycle_laplacian(7).unwrap();
        assert_eq!(bfs_distances(&a, 0).unwrap().max_finite(), 3);
        let a = cycle_laplacian(5).unwrap();
        assert_eq!(bfs_distances(&a, 3).unwrap().get(0), Some(2));
    }

    #[test]
    fn grid_center() {
        let a = grid2d_matrix(31, 0.0).unwrap();
        let center = 15 * 31 + 15;
        assert_eq!(bfs_distances(&a, center).unwrap().max_finite(), 30);
    }

    #[test]
    fn unreachable_nodes() {
        let a = SparseSymMatrix::from_triangle(4, [(0, 0, 1.0), (1, 0, -1.0), (3, 2, 2.0)]).unwrap();
        let d = bfs_distances(&a, 0).unwrap();
        assert_eq!(d.dist, vec![Some(0), Some(1), None, None]);
        assert!(bfs_distances(&a, 4).is_err());
    }

    #[test]
    fn neighbours_at_distance_one_and_symmetry() {
        let a = geometric_graph_laplacian(150, 0.15, 9).unwrap();
        let all = all_pairs_distances(&a);
        for i in 0..a.n() {
            for j in 0..a.n() {
                assert_eq!(all[i].dist[j], all[j].dist[i]);
                if i != j {
                    assert_eq!(all[i].dist[j] == Some(1), a.get(i, j) != 0.0);
                }
            }
        }
    }

    #[test]
    fn triangle_inequality() {
        use rand::{Rng, SeedableRng};
        for a in [
            grid2d_matrix(12, 0.0).unwrap(),
            cycle_laplacian(31).unwrap(),
            geometric_graph_laplacian(200, 0.12, 5).unwrap(),
        ] {
            let all = all_pairs_distances(&a);
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
            for _ in 0..100 {
                let (i, j, k) = (
                    rng.random_range(0..a.n()),
                    rng.random_range(0..a.n()),
                    rng.random_range(0..a.n()),
                );
                if let (Some(ij), Some(ik), Some(kj)) = (all[i].dist[j], all[i].dist[k], all[k].dist[j]) {
                    assert!(ij <= ik + kj);
                }
            }
        }
    }
}
