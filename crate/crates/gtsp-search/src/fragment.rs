//! Fragment Optimization: for every window of `k` consecutive clusters
//! between two fixed vertices, find the best cluster permutation and vertex
//! selection inside the window.
//!
//! F1 enumerates permutations recursively and carries one label vector per
//! prefix; F2 is a Held-Karp style DP over cluster subsets. Among optimal
//! rearrangements both return the lexicographically smallest permutation
//! (by window position) and then the lexicographically smallest vertices.

use std::time::Instant;

use gtsp_core::{wadd, GtspError, GtspInstance, Result, Tour, Weight, INF};

use crate::adapt::SearchStats;
use crate::layers::best_fixed_path;

/// Window size up to which F1 is the default.
pub const F1_MAX_K: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FoAlgorithm {
    F1,
    F2,
}

impl FoAlgorithm {
    pub fn for_k(k: usize) -> Self {
        if k <= F1_MAX_K {
            FoAlgorithm::F1
        } else {
            FoAlgorithm::F2
        }
    }
}

pub fn fragment_opt(inst: &GtspInstance, t: &Tour, k: usize) -> Result<Tour> {
    Ok(fragment_opt_with(inst, t, k, FoAlgorithm::for_k(k))?.0)
}

/// Valid for `2 <= k <= m - 2`.
pub fn fragment_opt_with(inst: &GtspInstance, t: &Tour, k: usize, algo: FoAlgorithm) -> Result<(Tour, SearchStats)> {
    let m = inst.m();
    if k < 2 || k + 2 > m {
        return Err(GtspError::InvalidArgument(format!("window size {k} needs 2 <= k <= m - 2 (m = {m})")));
    }
    let started = Instant::now();
    let mut stats = SearchStats::default();
    let mut seq = t.sequence();
    loop {
        let mut improved = false;
        for i in 0..m {
            stats.candidates += 1;
            if window_pass(inst, &mut seq, i, k, algo) {
                stats.moves_applied += 1;
                improved = true;
            }
        }
        if !improved {
            break;
        }
    }
    stats.elapsed = started.elapsed();
    Ok((Tour::from_sequence(inst, &seq)?, stats))
}

/// Re-optimises positions `i+1..=i+k` of `seq` (cyclic) between the fixed
/// vertices at `i` and `i+k+1`. Returns whether the tour improved.
pub fn window_pass(inst: &GtspInstance, seq: &mut [usize], i: usize, k: usize, algo: FoAlgorithm) -> bool {
    let m = seq.len();
    let a = seq[i % m];
    let b = seq[(i + k + 1) % m];
    let inner: Vec<usize> = (1..=k).map(|d| seq[(i + d) % m]).collect();
    let mut path = vec![a];
    path.extend(&inner);
    path.push(b);
    let cur = exact_weight_path(inst, &path);
    let clusters: Vec<usize> = inner.iter().map(|&v| inst.cluster_of(v)).collect();
    let (w, verts) = optimize_window(inst, a, &clusters, b, algo);
    if (w as i128) < cur && w < INF {
        for (d, v) in verts.into_iter().enumerate() {
            seq[(i + 1 + d) % m] = v;
        }
        true
    } else {
        false
    }
}

fn exact_weight_path(inst: &GtspInstance, p: &[usize]) -> i128 {
    p.windows(2).map(|e| inst.w(e[0], e[1]) as i128).sum()
}

/// Best path `a -> (clusters in some order) -> b`. Returns its weight and
/// the vertices in visiting order.
pub fn optimize_window(
    inst: &GtspInstance,
    a: usize,
    clusters: &[usize],
    b: usize,
    algo: FoAlgorithm,
) -> (Weight, Vec<usize>) {
    let perm = match algo {
        FoAlgorithm::F1 => f1(inst, a, clusters, b),
        FoAlgorithm::F2 => f2(inst, a, clusters, b),
    };
    let Some(perm) = perm else {
        return (INF, clusters.iter().map(|&c| inst.cluster(c)[0]).collect());
    };
    let order: Vec<usize> = perm.iter().map(|&p| clusters[p]).collect();
    best_fixed_path(inst, a, &order, b)
}

fn relax_from(inst: &GtspInstance, prev: &[usize], labels: &[Weight], next: &[usize]) -> Vec<Weight> {
    next.iter()
        .map(|&y| prev.iter().zip(labels).fold(INF, |acc, (&x, &l)| acc.min(wadd(l, inst.w(x, y)))))
        .collect()
}

fn close(inst: &GtspInstance, last: &[usize], labels: &[Weight], b: usize) -> Weight {
    last.iter().zip(labels).fold(INF, |acc, (&x, &l)| acc.min(wadd(l, inst.w(x, b))))
}

/// Recursive permutation enumeration in lexicographic order.
fn f1(inst: &GtspInstance, a: usize, clusters: &[usize], b: usize) -> Option<Vec<usize>> {
    struct Ctx<'a> {
        inst: &'a GtspInstance,
        clusters: &'a [usize],
        b: usize,
        used: Vec<bool>,
        perm: Vec<usize>,
        best: Weight,
        best_perm: Option<Vec<usize>>,
    }
    fn rec(ctx: &mut Ctx, prev: &[usize], labels: &[Weight]) {
        let k = ctx.clusters.len();
        if ctx.perm.len() == k {
            let w = close(ctx.inst, prev, labels, ctx.b);
            if w < ctx.best {
                ctx.best = w;
                ctx.best_perm = Some(ctx.perm.clone());
            }
            return;
        }
        for p in 0..k {
            if ctx.used[p] {
                continue;
            }
            let next = ctx.inst.cluster(ctx.clusters[p]);
            let l = relax_from(ctx.inst, prev, labels, next);
            ctx.used[p] = true;
            ctx.perm.push(p);
            rec(ctx, next, &l);
            ctx.perm.pop();
            ctx.used[p] = false;
        }
    }
    let mut ctx = Ctx {
        inst,
        clusters,
        b,
        used: vec![false; clusters.len()],
        perm: Vec::with_capacity(clusters.len()),
        best: INF,
        best_perm: None,
    };
    rec(&mut ctx, &[a], &[0]);
    ctx.best_perm
}

/// Subset DP. `tail[S][p][x]`: cheapest way from the `x`-th vertex of
/// window cluster `p` (the last visited, `p` in `S`) through the clusters
/// outside `S` to `b`.
fn f2(inst: &GtspInstance, a: usize, clusters: &[usize], b: usize) -> Option<Vec<usize>> {
    let k = clusters.len();
    let full = (1usize << k) - 1;
    let members = |p: usize| inst.cluster(clusters[p]);
    let mut tail: Vec<Vec<Vec<Weight>>> = vec![vec![Vec::new(); k]; full + 1];
    for p in 0..k {
        tail[full][p] = members(p).iter().map(|&x| inst.w(x, b)).collect();
    }
    for s in (1..full).rev() {
        for p in 0..k {
            if s & (1 << p) == 0 {
                continue;
            }
            let mut row = vec![INF; members(p).len()];
            for q in 0..k {
                if s & (1 << q) != 0 {
                    continue;
                }
                let next = &tail[s | (1 << q)][q];
                for (xi, &x) in members(p).iter().enumerate() {
                    for (yi, &y) in members(q).iter().enumerate() {
                        let v = wadd(inst.w(x, y), next[yi]);
                        if v < row[xi] {
                            row[xi] = v;
                        }
                    }
                }
            }
            tail[s][p] = row;
        }
    }
    let mut opt = INF;
    for p in 0..k {
        for (xi, &x) in members(p).iter().enumerate() {
            opt = opt.min(wadd(inst.w(a, x), tail[1 << p][p][xi]));
        }
    }
    if opt >= INF {
        return None;
    }
    // Lexicographically smallest optimal permutation.
    let mut perm = Vec::with_capacity(k);
    let mut s = 0usize;
    let mut prev: Vec<usize> = vec![a];
    let mut labels: Vec<Weight> = vec![0];
    for _ in 0..k {
        let mut chosen = None;
        for q in 0..k {
            if s & (1 << q) != 0 {
                continue;
            }
            let l = relax_from(inst, &prev, &labels, members(q));
            let t = &tail[s | (1 << q)][q];
            if l.iter().zip(t).any(|(&x, &y)| wadd(x, y) == opt) {
                chosen = Some((q, l));
                break;
            }
        }
        let (q, l) = chosen.expect("an optimal completion exists");
        perm.push(q);
        s |= 1 << q;
        prev = members(q).to_vec();
        labels = l;
    }
    Some(perm)
}
