//! Lower bounds on shortest paths through fragments of a CO-optimal tour.
//!
//! Both bounds are valid only when the tour is the shortest cycle for its
//! cluster order. The public entry points check this with one CO run and
//! report the result in [`LowerBound::verified`].

use gtsp_core::{GtspInstance, Tour, Weight, INF};

use crate::co::co_of_seq;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LowerBound {
    pub value: Weight,
    /// False when the tour is not a CO fixed point; the value may then
    /// exceed the true shortest path.
    pub verified: bool,
}

fn clamp(v: i128) -> Weight {
    v.clamp(0, INF as i128) as Weight
}

/// O(1) bounds for fragments of a fixed vertex sequence.
pub(crate) struct PathBounds<'a> {
    inst: &'a GtspInstance,
    seq: &'a [usize],
    clusters: Vec<usize>,
    /// Prefix sums over two laps of the forward edge weights.
    edge: Vec<i128>,
    /// Prefix sums of `w_min(C_i -> C_{i+1})`.
    fmin: Vec<i128>,
    /// Prefix sums of `w_min(C_{i+1} -> C_i)`.
    rmin: Vec<i128>,
}

impl<'a> PathBounds<'a> {
    pub fn new(inst: &'a GtspInstance, seq: &'a [usize]) -> Self {
        let m = seq.len();
        let clusters: Vec<usize> = seq.iter().map(|&v| inst.cluster_of(v)).collect();
        let mut edge = vec![0i128; 2 * m + 1];
        let mut fmin = vec![0i128; 2 * m + 1];
        let mut rmin = vec![0i128; 2 * m + 1];
        for i in 0..2 * m {
            let (a, b) = (i % m, (i + 1) % m);
            edge[i + 1] = edge[i] + inst.w(seq[a], seq[b]) as i128;
            fmin[i + 1] = fmin[i] + inst.pair_min(clusters[a], clusters[b]) as i128;
            rmin[i + 1] = rmin[i] + inst.pair_min(clusters[b], clusters[a]) as i128;
        }
        PathBounds { inst, seq, clusters, edge, fmin, rmin }
    }

    fn m(&self) -> usize {
        self.seq.len()
    }

    /// Bound on the shortest path through positions `p, p+1, .., p+len-1`
    /// (cyclic) following the tour direction.
    pub fn forward(&self, p: usize, len: usize) -> Weight {
        let m = self.m();
        let p = p % m;
        match len {
            0 | 1 => 0,
            2 => self.inst.pair_min(self.clusters[p], self.clusters[(p + 1) % m]),
            _ => {
                let q = p + len - 1;
                let pairs = self.fmin[q] - self.fmin[p];
                (self.theorem(p, q) as i128).max(pairs).min(INF as i128) as Weight
            }
        }
    }

    /// Bound on the shortest path through positions `q, q-1, .., q-len+1`,
    /// i.e. the fragment ending at `q` traversed against the tour.
    pub fn backward(&self, q: usize, len: usize) -> Weight {
        let m = self.m();
        if len <= 1 {
            return 0;
        }
        // fragment occupies positions p..=q in tour order
        let p = (q % m + m - (len - 1) % m) % m;
        if self.inst.is_symmetric() {
            return self.forward(p, len);
        }
        clamp(self.rmin[p + len - 1] - self.rmin[p])
    }

    /// The fragment theorem for positions `p..=q` (`q` may exceed `m`).
    fn theorem(&self, p: usize, q: usize) -> Weight {
        let m = self.m();
        let (a, a1) = (self.seq[p % m], self.clusters[(p + 1) % m]);
        let (b, b1) = (self.seq[q % m], self.clusters[(q - 1) % m]);
        let path = self.edge[q] - self.edge[p];
        if path >= INF as i128 {
            return 0;
        }
        let ca = self.clusters[p % m];
        let cb = self.clusters[q % m];
        clamp(
            path - self.inst.max_to(a, a1) as i128 - self.inst.max_from(b1, b) as i128
                + self.inst.pair_min(ca, a1) as i128
                + self.inst.pair_min(b1, cb) as i128,
        )
    }
}

fn certified(inst: &GtspInstance, t: &Tour) -> bool {
    co_of_seq(inst, &t.sequence()).0 == t.weight(inst)
}

/// Lower bound on the shortest path from cluster `a` to cluster `b` through
/// the clusters between them along `t`.
pub fn shortest_path_lower_bound(inst: &GtspInstance, t: &Tour, a: usize, b: usize) -> LowerBound {
    let seq = t.sequence();
    let m = seq.len();
    let order = t.order();
    let pa = order.iter().position(|&c| c == a).expect("cluster in tour");
    let pb = order.iter().position(|&c| c == b).expect("cluster in tour");
    let len = (pb + m - pa) % m + 1;
    let pbnd = PathBounds::new(inst, &seq);
    let value = match len {
        1 => 0,
        2 => inst.pair_min(a, b),
        _ => pbnd.theorem(pa, pa + len - 1),
    };
    LowerBound { value, verified: certified(inst, t) }
}

/// Lower bound on the shortest path from cluster 0 through every cluster in
/// tour order, i.e. the tour broken at the edge entering cluster 0.
pub fn broken_cycle_lower_bound(inst: &GtspInstance, t: &Tour) -> LowerBound {
    broken_cycle_lower_bound_at(inst, t, 0)
}

/// As [`broken_cycle_lower_bound`], broken at the edge entering `first`.
pub fn broken_cycle_lower_bound_at(inst: &GtspInstance, t: &Tour, first: usize) -> LowerBound {
    let w = t.weight(inst);
    let value = if w >= INF { 0 } else { (w - inst.pair_max(t.prev(first), first)).max(0) };
    LowerBound { value, verified: certified(inst, t) }
}
