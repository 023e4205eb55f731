use std::sync::OnceLock;

use crate::error::{GtspError, Result};
use crate::{wadd, Weight, INF};

/// A clustered weighted complete digraph.
///
/// Weights live in one dense `n x n` matrix; per ordered cluster pair a
/// `|X| x |Y|` block is materialized on first use. Min/max caches are built
/// eagerly at construction.
#[derive(Debug, Clone)]
pub struct GtspInstance {
    n: usize,
    m: usize,
    clusters: Vec<Vec<usize>>,
    cluster_of: Vec<usize>,
    index_in_cluster: Vec<usize>,
    weights: Vec<Weight>,
    symmetric: bool,
    labels: Vec<usize>,
    pair_min: Vec<Weight>,
    pair_max: Vec<Weight>,
    min_to: Vec<Weight>,
    max_to: Vec<Weight>,
    min_from: Vec<Weight>,
    max_from: Vec<Weight>,
    blocks: Vec<OnceLock<Box<[Weight]>>>,
    s_max: usize,
    gamma: usize,
}

/// Instances are equal when partition, weights and labels are; caches are
/// derived data.
impl PartialEq for GtspInstance {
    fn eq(&self, o: &Self) -> bool {
        self.clusters == o.clusters && self.weights == o.weights && self.labels == o.labels
    }
}

impl Eq for GtspInstance {}

impl GtspInstance {
    /// Builds an instance from a partition and a row-major `n x n` matrix.
    ///
    /// Cluster member lists are sorted ascending. Symmetry is detected from
    /// the inter-cluster weights.
    pub fn new(clusters: Vec<Vec<usize>>, weights: Vec<Weight>) -> Result<Self> {
        let n: usize = clusters.iter().map(|c| c.len()).sum();
        Self::with_labels(clusters, weights, (0..n).collect())
    }

    /// Like [`GtspInstance::new`] but records an external id for every vertex.
    pub fn with_labels(
        mut clusters: Vec<Vec<usize>>,
        weights: Vec<Weight>,
        labels: Vec<usize>,
    ) -> Result<Self> {
        let m = clusters.len();
        if m == 0 {
            return Err(GtspError::InvalidArgument("no clusters".into()));
        }
        let n: usize = clusters.iter().map(|c| c.len()).sum();
        if weights.len() != n * n {
            return Err(GtspError::InvalidArgument(format!(
                "weight matrix has {} cells, expected {}",
                weights.len(),
                n * n
            )));
        }
        if labels.len() != n {
            return Err(GtspError::InvalidArgument("label count differs from n".into()));
        }
        if weights.iter().any(|&w| w < 0) {
            return Err(GtspError::InvalidArgument("negative weight".into()));
        }
        let mut cluster_of = vec![usize::MAX; n];
        let mut index_in_cluster = vec![0; n];
        for (c, members) in clusters.iter_mut().enumerate() {
            if members.is_empty() {
                return Err(GtspError::InvalidArgument(format!("cluster {c} is empty")));
            }
            members.sort_unstable();
            for (i, &v) in members.iter().enumerate() {
                if v >= n {
                    return Err(GtspError::InvalidArgument(format!("vertex {v} out of range")));
                }
                if cluster_of[v] != usize::MAX {
                    return Err(GtspError::InvalidArgument(format!(
                        "vertex {v} belongs to two clusters"
                    )));
                }
                cluster_of[v] = c;
                index_in_cluster[v] = i;
            }
        }
        let weights: Vec<Weight> = weights.into_iter().map(|w| w.min(INF)).collect();
        let mut symmetric = true;
        'outer: for x in 0..n {
            for y in (x + 1)..n {
                if cluster_of[x] != cluster_of[y] && weights[x * n + y] != weights[y * n + x] {
                    symmetric = false;
                    break 'outer;
                }
            }
        }

        let mut pair_min = vec![INF; m * m];
        let mut pair_max = vec![0; m * m];
        let mut min_to = vec![INF; n * m];
        let mut max_to = vec![0; n * m];
        let mut min_from = vec![INF; n * m];
        let mut max_from = vec![0; n * m];
        for x in 0..n {
            let cx = cluster_of[x];
            for y in 0..n {
                let cy = cluster_of[y];
                if cx == cy {
                    continue;
                }
                let w = weights[x * n + y];
                let p = cx * m + cy;
                pair_min[p] = pair_min[p].min(w);
                pair_max[p] = pair_max[p].max(w);
                min_to[x * m + cy] = min_to[x * m + cy].min(w);
                max_to[x * m + cy] = max_to[x * m + cy].max(w);
                min_from[y * m + cx] = min_from[y * m + cx].min(w);
                max_from[y * m + cx] = max_from[y * m + cx].max(w);
            }
        }
        for c in 0..m {
            pair_min[c * m + c] = 0;
        }
        let s_max = clusters.iter().map(|c| c.len()).max().unwrap_or(0);
        let gamma = clusters.iter().map(|c| c.len()).min().unwrap_or(0);
        let blocks = (0..m * m).map(|_| OnceLock::new()).collect();
        Ok(GtspInstance {
            n,
            m,
            clusters,
            cluster_of,
            index_in_cluster,
            weights,
            symmetric,
            labels,
            pair_min,
            pair_max,
            min_to,
            max_to,
            min_from,
            max_from,
            blocks,
            s_max,
            gamma,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn clusters(&self) -> &[Vec<usize>] {
        &self.clusters
    }

    pub fn cluster(&self, c: usize) -> &[usize] {
        &self.clusters[c]
    }

    pub fn cluster_size(&self, c: usize) -> usize {
        self.clusters[c].len()
    }

    pub fn cluster_of(&self, v: usize) -> usize {
        self.cluster_of[v]
    }

    /// Position of `v` within its (sorted) cluster list.
    pub fn index_in_cluster(&self, v: usize) -> usize {
        self.index_in_cluster[v]
    }

    /// External id of vertex `v` (identity unless the instance was reduced).
    pub fn label(&self, v: usize) -> usize {
        self.labels[v]
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    #[inline]
    pub fn w(&self, x: usize, y: usize) -> Weight {
        self.weights[x * self.n + y]
    }

    /// Row-major `n x n` matrix.
    pub fn matrix(&self) -> &[Weight] {
        &self.weights
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    /// `w_min(X -> Y)`.
    pub fn pair_min(&self, x: usize, y: usize) -> Weight {
        self.pair_min[x * self.m + y]
    }

    /// `w_max(X -> Y)`.
    pub fn pair_max(&self, x: usize, y: usize) -> Weight {
        self.pair_max[x * self.m + y]
    }

    /// `w_min(v -> Y)`.
    pub fn min_to(&self, v: usize, y: usize) -> Weight {
        self.min_to[v * self.m + y]
    }

    /// `w_max(v -> Y)`.
    pub fn max_to(&self, v: usize, y: usize) -> Weight {
        self.max_to[v * self.m + y]
    }

    /// `w_min(Y -> v)`.
    pub fn min_from(&self, y: usize, v: usize) -> Weight {
        self.min_from[v * self.m + y]
    }

    /// `w_max(Y -> v)`.
    pub fn max_from(&self, y: usize, v: usize) -> Weight {
        self.max_from[v * self.m + y]
    }

    /// Size of the largest cluster.
    pub fn s_max(&self) -> usize {
        self.s_max
    }

    /// Size of the smallest cluster.
    pub fn gamma(&self) -> usize {
        self.gamma
    }

    /// Row-major `|X| x |Y|` weight block between clusters `x` and `y`.
    pub fn block(&self, x: usize, y: usize) -> &[Weight] {
        self.blocks[x * self.m + y].get_or_init(|| {
            let cy = &self.clusters[y];
            let mut b = Vec::with_capacity(self.clusters[x].len() * cy.len());
            for &u in &self.clusters[x] {
                let row = &self.weights[u * self.n..(u + 1) * self.n];
                b.extend(cy.iter().map(|&v| row[v]));
            }
            b.into_boxed_slice()
        })
    }

    /// Weight of the closed walk through `seq` (vertex ids).
    pub fn cycle_weight(&self, seq: &[usize]) -> Weight {
        let k = seq.len();
        (0..k).fold(0, |acc, i| wadd(acc, self.w(seq[i], seq[(i + 1) % k])))
    }

    /// Weight of the open path through `seq`.
    pub fn path_weight(&self, seq: &[usize]) -> Weight {
        seq.windows(2).fold(0, |acc, p| wadd(acc, self.w(p[0], p[1])))
    }

    /// Instance with the listed vertices removed and the rest renumbered
    /// densely; labels follow the surviving vertices. Returns the new
    /// instance and the old-to-new map (`usize::MAX` for removed).
    pub fn without_vertices(&self, removed: &[bool]) -> Result<(GtspInstance, Vec<usize>)> {
        let mut map = vec![usize::MAX; self.n];
        let mut keep = Vec::new();
        for v in 0..self.n {
            if !removed[v] {
                map[v] = keep.len();
                keep.push(v);
            }
        }
        let k = keep.len();
        let mut weights = vec![0; k * k];
        for (i, &x) in keep.iter().enumerate() {
            for (j, &y) in keep.iter().enumerate() {
                weights[i * k + j] = self.w(x, y);
            }
        }
        let clusters = self
            .clusters
            .iter()
            .map(|c| c.iter().filter(|&&v| !removed[v]).map(|&v| map[v]).collect())
            .collect();
        let labels = keep.iter().map(|&v| self.labels[v]).collect();
        Ok((GtspInstance::with_labels(clusters, weights, labels)?, map))
    }

    /// Same clusters and labels with a replaced weight matrix.
    pub fn with_weights(&self, weights: Vec<Weight>) -> Result<GtspInstance> {
        GtspInstance::with_labels(self.clusters.clone(), weights, self.labels.clone())
    }
}
