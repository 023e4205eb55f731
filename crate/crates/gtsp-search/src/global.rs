//! Global adaptations: every candidate cluster order is scored by its exact
//! shortest cycle, assembled from precomputed fragment paths.

use std::ops::ControlFlow;

use gtsp_core::{GtspInstance, Weight, INF};

use crate::adapt::{exact_weight, SearchStats};
use crate::bounds::PathBounds;
use crate::co::co_seq_or_inf;
use crate::layers::{block, min_cycle, min_plus, Mat, View};

/// A run of consecutive tour positions `start, start+1, .., start+len-1`
/// (cyclic) kept in tour direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Frag {
    pub start: usize,
    pub len: usize,
}

/// Shortest paths along the tour between every pair of positions.
pub(crate) struct ForwardTables {
    clusters: Vec<usize>,
    /// `paths[p][len - 2]`: from the cluster at `p` to the one at `p+len-1`.
    paths: Vec<Vec<Mat>>,
}

impl ForwardTables {
    pub fn build(inst: &GtspInstance, seq: &[usize], max_len: usize) -> Self {
        let m = seq.len();
        let clusters: Vec<usize> = seq.iter().map(|&v| inst.cluster_of(v)).collect();
        let mut paths = Vec::with_capacity(m);
        for p in 0..m {
            let mut row: Vec<Mat> = Vec::with_capacity(max_len.saturating_sub(1));
            for len in 2..=max_len {
                let a = clusters[(p + len - 2) % m];
                let b = clusters[(p + len - 1) % m];
                let next = match row.last() {
                    None => {
                        let v = block(inst, a, b);
                        Mat { rows: v.rows, cols: v.cols, data: v.data.to_vec() }
                    }
                    Some(prev) => min_plus(prev.view(), block(inst, a, b)),
                };
                row.push(next);
            }
            paths.push(row);
        }
        ForwardTables { clusters, paths }
    }

    pub fn m(&self) -> usize {
        self.clusters.len()
    }

    pub fn cluster(&self, p: usize) -> usize {
        self.clusters[p % self.clusters.len()]
    }

    /// Paths from position `p` through `len` clusters (`len >= 2`).
    pub fn path(&self, p: usize, len: usize) -> View<'_> {
        self.paths[p % self.clusters.len()][len - 2].view()
    }

    /// Exact shortest cycle through the fragments in the given order.
    pub fn cycle(&self, inst: &GtspInstance, frags: &[Frag]) -> Weight {
        let k = frags.len();
        let mut views: Vec<View> = Vec::with_capacity(2 * k);
        for (i, f) in frags.iter().enumerate() {
            if f.len >= 2 {
                views.push(self.paths[f.start % self.clusters.len()][f.len - 2].view());
            }
            let end = self.cluster(f.start + f.len - 1);
            let next = self.cluster(frags[(i + 1) % k].start);
            views.push(block(inst, end, next));
        }
        min_cycle(&views)
    }

    /// Fragment lower bound: bound of every fragment plus the cheapest link.
    pub fn lower_bound(&self, inst: &GtspInstance, pb: &PathBounds, frags: &[Frag]) -> Weight {
        let k = frags.len();
        let mut lb: i128 = 0;
        for (i, f) in frags.iter().enumerate() {
            lb += pb.forward(f.start, f.len) as i128;
            let end = self.cluster(f.start + f.len - 1);
            let next = self.cluster(frags[(i + 1) % k].start);
            lb += inst.pair_min(end, next) as i128;
        }
        lb.min(INF as i128) as Weight
    }

    pub fn order(&self, frags: &[Frag]) -> Vec<usize> {
        frags.iter().flat_map(|f| (0..f.len).map(move |i| self.cluster(f.start + i))).collect()
    }
}

/// Rotates a vertex cycle so that it starts in cluster 0.
pub(crate) fn canonical(inst: &GtspInstance, seq: &[usize]) -> Vec<usize> {
    let p = seq.iter().position(|&v| inst.cluster_of(v) == 0).unwrap_or(0);
    let mut s = seq.to_vec();
    s.rotate_left(p);
    s
}

/// Optimal vertices for `seq`'s cluster order, in canonical rotation. Keeps
/// `seq` when its order admits no finite cycle.
pub(crate) fn co_start(inst: &GtspInstance, seq: &[usize]) -> (Vec<usize>, Weight) {
    let order: Vec<usize> = seq.iter().map(|&v| inst.cluster_of(v)).collect();
    let (w, s) = co_seq_or_inf(inst, &order);
    if w >= INF && exact_weight(inst, seq) < exact_weight(inst, &s) {
        return (canonical(inst, seq), INF);
    }
    (canonical(inst, &s), w)
}

/// Hooks of one Global neighbourhood.
pub(crate) trait GlobalMoves {
    /// Longest fragment the candidates use.
    fn max_len(&self, m: usize) -> usize;
    /// Visits candidate fragment lists in enumeration order, optionally with
    /// an extra lower bound on the candidate's shortest cycle.
    fn for_each(
        &self,
        inst: &GtspInstance,
        tables: &ForwardTables,
        f: &mut dyn FnMut(&[Frag], Option<Weight>) -> ControlFlow<()>,
    );
}

/// First-improvement Global search: accept the first candidate whose exact
/// shortest cycle beats the incumbent, re-optimise it with CO and restart.
pub(crate) fn global_search(
    inst: &GtspInstance,
    seq: &[usize],
    moves: &dyn GlobalMoves,
    use_bounds: bool,
    stats: &mut SearchStats,
) -> Vec<usize> {
    let m = seq.len();
    let (mut seq, mut w) = co_start(inst, seq);
    if w >= INF {
        return seq;
    }
    loop {
        let tables = ForwardTables::build(inst, &seq, moves.max_len(m));
        let pb = PathBounds::new(inst, &seq);
        let mut found: Option<Vec<usize>> = None;
        moves.for_each(inst, &tables, &mut |frags, extra_lb| {
            stats.candidates += 1;
            if use_bounds {
                let lb = tables.lower_bound(inst, &pb, frags).max(extra_lb.unwrap_or(0));
                if lb >= w {
                    stats.prunes += 1;
                    return ControlFlow::Continue(());
                }
            }
            if tables.cycle(inst, frags) < w {
                found = Some(tables.order(frags));
                return ControlFlow::Break(());
            }
            ControlFlow::Continue(())
        });
        let Some(order) = found else { break };
        let (nw, s) = co_seq_or_inf(inst, &order);
        debug_assert!(nw < w);
        seq = canonical(inst, &s);
        w = nw;
        stats.moves_applied += 1;
    }
    seq
}
