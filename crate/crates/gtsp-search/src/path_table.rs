//! Shortest paths into a fixed end cluster with supporting clusters.
//!
//! For a cluster sequence `X_1, X_2, ..., X_k` whose real edges run
//! `X_{i+1} -> X_i`, the table holds for every `i >= 2` the shortest paths
//! from `X_i` to `X_1`. Whenever a cluster smaller than the current
//! supporting cluster `Z` shows up, it becomes the new `Z`: entries beyond
//! it store paths `X_i -> Z`, and one tail table stores `Z -> X_1`.

use gtsp_core::GtspInstance;

use crate::layers::{block, min_plus, Mat, View};

#[derive(Debug, Clone)]
struct Entry {
    /// Paths from `X_i` to the supporting cluster, or to `X_1` when there is
    /// none yet.
    head: Mat,
    support: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct PathTable {
    clusters: Vec<usize>,
    entries: Vec<Entry>,
    /// `(supporting cluster id, paths Z -> X_1)`.
    tails: Vec<(usize, Mat)>,
}

impl PathTable {
    /// Builds the table for `seq = [X_1, ..., X_k]` (cluster ids), `k >= 2`.
    pub fn build(inst: &GtspInstance, seq: &[usize]) -> PathTable {
        let mut t = PathTable::start(inst, seq[0], seq[1]);
        for &c in &seq[2..] {
            t.push(inst, c);
        }
        t
    }

    pub fn start(inst: &GtspInstance, x1: usize, x2: usize) -> PathTable {
        let head = owned(block(inst, x2, x1));
        PathTable { clusters: vec![x1, x2], entries: vec![Entry { head, support: None }], tails: Vec::new() }
    }

    /// Appends `X_{k+1}`.
    pub fn push(&mut self, inst: &GtspInstance, c: usize) {
        let k = self.clusters.len();
        let prev_cluster = self.clusters[k - 1];
        let prev = &self.entries[k - 2];
        let z_size = match prev.support {
            Some(s) => inst.cluster_size(self.tails[s].0),
            None => inst.cluster_size(self.clusters[0]),
        };
        let entry = if inst.cluster_size(prev_cluster) < z_size {
            // X_k becomes the supporting cluster.
            let tail = match prev.support {
                Some(s) => min_plus(prev.head.view(), self.tails[s].1.view()),
                None => prev.head.clone(),
            };
            self.tails.push((prev_cluster, tail));
            Entry { head: owned(block(inst, c, prev_cluster)), support: Some(self.tails.len() - 1) }
        } else {
            Entry { head: min_plus(block(inst, c, prev_cluster), prev.head.view()), support: prev.support }
        };
        self.clusters.push(c);
        self.entries.push(entry);
    }

    pub fn len(&self) -> usize {
        self.clusters.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn origin(&self) -> usize {
        self.clusters[0]
    }

    /// Supporting cluster used by `X_i` (1-based `i >= 2`), if any.
    pub fn support(&self, i: usize) -> Option<usize> {
        self.entries[i - 2].support.map(|s| self.tails[s].0)
    }

    /// Matrices of the chain `X_i -> (Z) -> X_1` for 1-based `i >= 2`.
    pub fn chain(&self, i: usize) -> Vec<View<'_>> {
        let e = &self.entries[i - 2];
        match e.support {
            Some(s) => vec![e.head.view(), self.tails[s].1.view()],
            None => vec![e.head.view()],
        }
    }

    /// Full shortest-path matrix `X_i -> X_1`.
    pub fn paths(&self, i: usize) -> Mat {
        let e = &self.entries[i - 2];
        match e.support {
            Some(s) => min_plus(e.head.view(), self.tails[s].1.view()),
            None => e.head.clone(),
        }
    }
}

fn owned(v: View) -> Mat {
    Mat { rows: v.rows, cols: v.cols, data: v.data.to_vec() }
}
