//! Cluster Optimization: the best vertex selection for a fixed cluster order.

use gtsp_core::{wadd, GtspError, GtspInstance, Result, Tour, Weight, INF};

use crate::layers::{block, Mat, View};

/// Optional speed-ups of the layered DP. None of them changes the optimal
/// weight; tie-breaking between equal-weight selections may differ.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Refinements {
    /// Start the DP at a smallest cluster.
    pub rotate_smallest: bool,
    /// Drop vertices of the first cluster that can be replaced on every
    /// through-path between its tour neighbours.
    pub reduce_first_cluster: bool,
    /// Look one layer ahead and relax two layers at once when cheaper.
    pub improved_order: bool,
}

impl Refinements {
    pub const ALL: Refinements =
        Refinements { rotate_smallest: true, reduce_first_cluster: true, improved_order: true };
    pub const NONE: Refinements =
        Refinements { rotate_smallest: false, reduce_first_cluster: false, improved_order: false };
}

impl Default for Refinements {
    fn default() -> Self {
        Refinements::ALL
    }
}

/// Returns `t` with its cluster order kept and its vertices reselected
/// optimally.
pub fn cluster_optimize(inst: &GtspInstance, t: &Tour, r: Refinements) -> Result<Tour> {
    let order = t.order();
    let (_, seq) = co_sequence(inst, &order, r)?;
    Tour::from_sequence(inst, &seq)
}

/// Optimal vertex selection for the cluster `order`. Returns the cycle
/// weight and the chosen vertex at every position of `order`.
pub fn co_sequence(inst: &GtspInstance, order: &[usize], r: Refinements) -> Result<(Weight, Vec<usize>)> {
    match co_raw(inst, order, r) {
        Ok((w, seq)) if w < INF => Ok((w, seq)),
        Ok(_) => Err(GtspError::InfeasibleOrder { layer: 0 }),
        Err(layer) => Err(GtspError::InfeasibleOrder { layer }),
    }
}

/// Like [`co_sequence`] but never fails: infeasible orders get weight `INF`.
pub(crate) fn co_seq_or_inf(inst: &GtspInstance, order: &[usize]) -> (Weight, Vec<usize>) {
    match co_raw(inst, order, Refinements::ALL) {
        Ok(x) => x,
        Err(_) => (INF, order.iter().map(|&c| inst.cluster(c)[0]).collect()),
    }
}

/// Weight of the optimal selection for a vertex sequence's cluster order.
pub(crate) fn co_of_seq(inst: &GtspInstance, seq: &[usize]) -> (Weight, Vec<usize>) {
    let order: Vec<usize> = seq.iter().map(|&v| inst.cluster_of(v)).collect();
    co_seq_or_inf(inst, &order)
}

/// Vertices of cluster `r_cluster` that survive the first-cluster reduction
/// between the neighbouring clusters `u_cluster` (before) and `v_cluster`
/// (after).
pub fn reduce_first_cluster(inst: &GtspInstance, u_cluster: usize, r_cluster: usize, v_cluster: usize) -> Vec<usize> {
    let rs = inst.cluster(r_cluster);
    if rs.len() == 1 {
        return rs.to_vec();
    }
    let us = inst.cluster(u_cluster);
    let vs = inst.cluster(v_cluster);
    let through = |u: usize, r: usize, v: usize| wadd(inst.w(u, r), inst.w(r, v));
    let mut l = vec![INF; us.len() * vs.len()];
    let mut c = vec![0u32; us.len() * vs.len()];
    for &r in rs {
        for (i, &u) in us.iter().enumerate() {
            for (j, &v) in vs.iter().enumerate() {
                let w = through(u, r, v);
                let k = i * vs.len() + j;
                if w < l[k] {
                    l[k] = w;
                    c[k] = 1;
                } else if w == l[k] {
                    c[k] += 1;
                }
            }
        }
    }
    let mut keep = Vec::new();
    for &r in rs {
        let mut needed = false;
        for (i, &u) in us.iter().enumerate() {
            for (j, &v) in vs.iter().enumerate() {
                let k = i * vs.len() + j;
                if through(u, r, v) == l[k] && c[k] == 1 {
                    needed = true;
                }
            }
        }
        if needed {
            keep.push(r);
            continue;
        }
        for (i, &u) in us.iter().enumerate() {
            for (j, &v) in vs.iter().enumerate() {
                let k = i * vs.len() + j;
                if through(u, r, v) == l[k] {
                    c[k] -= 1;
                }
            }
        }
    }
    keep
}

enum Step {
    /// Layer `to` reached from layer `to - 1`; `arg[r][v]` is the index in
    /// layer `to - 1`.
    Single { to: usize, arg: Vec<u32> },
    /// Layer `to` reached from layer `to - 2` through `to - 1`.
    Double { to: usize, outer: Vec<u32>, mid: Vec<u32> },
}

fn min_plus_arg(a: View, b: View) -> (Mat, Vec<u32>) {
    let mut out = Mat::filled(a.rows, b.cols, INF);
    let mut arg = vec![0u32; a.rows * b.cols];
    for i in 0..a.rows {
        for j in 0..a.cols {
            let aij = a.get(i, j);
            if aij >= INF {
                continue;
            }
            for k in 0..b.cols {
                let v = wadd(aij, b.get(j, k));
                let o = i * b.cols + k;
                if v < out.data[o] {
                    out.data[o] = v;
                    arg[o] = j as u32;
                }
            }
        }
    }
    (out, arg)
}

/// Core DP. `Err(layer)` names the position in `order` whose layer became
/// unreachable.
fn co_raw(inst: &GtspInstance, order: &[usize], refine: Refinements) -> std::result::Result<(Weight, Vec<usize>), usize> {
    let m = order.len();
    assert!(m >= 1, "empty cluster order");
    if m == 1 {
        let c = inst.cluster(order[0]);
        let mut best = c[0];
        for &v in c {
            if inst.w(v, v) < inst.w(best, best) {
                best = v;
            }
        }
        return Ok((inst.w(best, best), vec![best]));
    }
    let start = if refine.rotate_smallest {
        (0..m).min_by_key(|&i| (inst.cluster_size(order[i]), i)).unwrap()
    } else {
        0
    };
    let layer = |i: usize| order[(start + i) % m];
    let first: Vec<usize> = if refine.reduce_first_cluster && m >= 3 {
        reduce_first_cluster(inst, layer(m - 1), layer(0), layer(1))
    } else {
        inst.cluster(layer(0)).to_vec()
    };
    let rn = first.len();
    let size = |i: usize| inst.cluster_size(layer(i));

    let l1 = inst.cluster(layer(1));
    let mut dist = Mat::filled(rn, l1.len(), INF);
    for (a, &r) in first.iter().enumerate() {
        for (b, &v) in l1.iter().enumerate() {
            dist.data[a * l1.len() + b] = inst.w(r, v);
        }
    }
    let blocked = |d: &Mat| d.data.iter().all(|&x| x >= INF);
    if blocked(&dist) {
        return Err((start + 1) % m);
    }
    let mut steps: Vec<Step> = Vec::new();
    let mut i = 1;
    while i < m - 1 {
        let two_ahead = refine.improved_order
            && i + 2 <= m - 1
            && rn * size(i) * size(i + 1) + rn * size(i + 1) * size(i + 2)
                > size(i) * size(i + 1) * size(i + 2) + rn * size(i) * size(i + 2);
        if two_ahead {
            let (mid_m, mid) = min_plus_arg(block(inst, layer(i), layer(i + 1)), block(inst, layer(i + 1), layer(i + 2)));
            let (d, outer) = min_plus_arg(dist.view(), mid_m.view());
            dist = d;
            steps.push(Step::Double { to: i + 2, outer, mid });
            i += 2;
        } else {
            let (d, arg) = min_plus_arg(dist.view(), block(inst, layer(i), layer(i + 1)));
            dist = d;
            steps.push(Step::Single { to: i + 1, arg });
            i += 1;
        }
        if blocked(&dist) {
            return Err((start + i) % m);
        }
    }
    let last = inst.cluster(layer(m - 1));
    let mut best = INF;
    let (mut br, mut bv) = (0, 0);
    for (a, &r) in first.iter().enumerate() {
        for (b, &v) in last.iter().enumerate() {
            let w = wadd(dist.data[a * last.len() + b], inst.w(v, r));
            if w < best {
                best = w;
                br = a;
                bv = b;
            }
        }
    }
    if best >= INF {
        return Err(start);
    }
    let mut idx = vec![0usize; m];
    idx[m - 1] = bv;
    for step in steps.iter().rev() {
        match step {
            Step::Single { to, arg } => {
                let cols = size(*to);
                idx[to - 1] = arg[br * cols + idx[*to]] as usize;
            }
            Step::Double { to, outer, mid } => {
                let cols = size(*to);
                let u = outer[br * cols + idx[*to]] as usize;
                idx[to - 2] = u;
                idx[to - 1] = mid[u * cols + idx[*to]] as usize;
            }
        }
    }
    let mut seq = vec![0; m];
    seq[start] = first[br];
    for k in 1..m {
        seq[(start + k) % m] = inst.cluster(layer(k))[idx[k]];
    }
    Ok((best, seq))
}
