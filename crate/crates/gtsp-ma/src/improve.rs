//! Local improvement: a vector of heuristics applied cyclically, each one
//! dropped as soon as it fails, followed by Cluster Optimization.

use gtsp_core::{GtspInstance, Tour, Weight, INF};
use gtsp_search::layers::best_fixed_path;
use gtsp_search::{co_sequence, swap, two_opt, Adaptation, Refinements};

use crate::round_half_up;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Heuristic {
    /// Local insertion: move one cluster, re-pick its vertex.
    Insert,
    /// Basic 2-opt restricted to the `m/4` heaviest edges.
    Direct2Opt,
    /// Basic 2-opt.
    TwoOpt,
    /// 2-opt with local vertex re-selection (modified variant).
    TwoOptLocal,
    /// Every permutation of `k` consecutive clusters.
    NeighborSwap(usize),
    /// Basic swap of two non-neighbouring vertices.
    Swap,
}

/// Heuristic vector for the instance type.
pub fn pipeline(symmetric: bool, modified: bool) -> Vec<Heuristic> {
    use Heuristic::*;
    let two = if modified { TwoOptLocal } else { TwoOpt };
    let mut h = Vec::new();
    if !symmetric {
        h.push(Swap);
    }
    h.push(Insert);
    if !modified {
        h.push(Direct2Opt);
    }
    h.push(two);
    let max_k = if symmetric { 4 } else { 3 };
    h.extend((2..=max_k).map(NeighborSwap));
    h
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ImproveOptions {
    pub modified: bool,
    /// Decline Insert and k-Neighbor Swap moves whose lower bound does not
    /// beat the current weight.
    pub lower_bounds: bool,
}

impl Default for ImproveOptions {
    fn default() -> Self {
        ImproveOptions { modified: false, lower_bounds: true }
    }
}

pub fn local_improve(inst: &GtspInstance, t: &Tour, modified: bool) -> Tour {
    local_improve_with(inst, t, &ImproveOptions { modified, ..Default::default() })
}

pub fn local_improve_with(inst: &GtspInstance, t: &Tour, opts: &ImproveOptions) -> Tour {
    let mut seq = t.sequence();
    let mut h = pipeline(inst.is_symmetric(), opts.modified);
    while !h.is_empty() {
        let mut i = 0;
        while i < h.len() {
            if apply(inst, &mut seq, h[i], opts.lower_bounds) {
                i += 1;
                continue;
            }
            let failed = h.remove(i);
            if failed == Heuristic::TwoOpt {
                if let Some(d) = h.iter().position(|&x| x == Heuristic::Direct2Opt) {
                    h.remove(d);
                    if d < i {
                        i -= 1;
                    }
                }
            }
        }
    }
    let order: Vec<usize> = seq.iter().map(|&v| inst.cluster_of(v)).collect();
    let co = if opts.modified { filtered_co(inst, &order) } else { co_sequence(inst, &order, Refinements::ALL).ok() };
    if let Some((w, s)) = co {
        if (w as i128) <= weight(inst, &seq) {
            seq = s;
        }
    }
    Tour::from_sequence(inst, &seq).expect("local search keeps a valid tour")
}

/// Runs one heuristic until it stops improving.
pub fn run_alone(inst: &GtspInstance, t: &Tour, h: Heuristic, lower_bounds: bool) -> Tour {
    let mut seq = t.sequence();
    while apply(inst, &mut seq, h, lower_bounds) {}
    Tour::from_sequence(inst, &seq).expect("local search keeps a valid tour")
}

/// One cycle of `h` on `seq`; true when the tour got lighter.
pub fn apply(inst: &GtspInstance, seq: &mut Vec<usize>, h: Heuristic, lower_bounds: bool) -> bool {
    let m = seq.len();
    match h {
        Heuristic::Insert => insert_cycle(inst, seq, lower_bounds),
        Heuristic::Direct2Opt => m >= 4 && direct_two_opt(inst, seq),
        Heuristic::NeighborSwap(k) => m >= k + 2 && neighbor_swap_cycle(inst, seq, k, lower_bounds),
        Heuristic::TwoOpt | Heuristic::TwoOptLocal | Heuristic::Swap => {
            let before = weight(inst, seq);
            let t = Tour::from_sequence(inst, seq).expect("valid tour");
            let out = match h {
                Heuristic::TwoOpt => two_opt(inst, &t, Adaptation::Basic),
                Heuristic::TwoOptLocal => two_opt(inst, &t, Adaptation::Local),
                _ => swap(inst, &t, Adaptation::Basic),
            };
            let s = out.sequence();
            if weight(inst, &s) < before {
                *seq = s;
                true
            } else {
                false
            }
        }
    }
}

fn w128(inst: &GtspInstance, a: usize, b: usize) -> i128 {
    inst.w(a, b) as i128
}

fn weight(inst: &GtspInstance, seq: &[usize]) -> i128 {
    let m = seq.len();
    (0..m).map(|i| w128(inst, seq[i], seq[(i + 1) % m])).sum()
}

fn insert_cycle(inst: &GtspInstance, seq: &mut Vec<usize>, lower_bounds: bool) -> bool {
    let m = seq.len();
    if m < 4 {
        return false;
    }
    let clusters: Vec<usize> = seq.iter().map(|&v| inst.cluster_of(v)).collect();
    let mut improved = false;
    for c in clusters {
        let i = seq.iter().position(|&v| inst.cluster_of(v) == c).unwrap();
        let (p, x, n) = (seq[(i + m - 1) % m], seq[i], seq[(i + 1) % m]);
        let saved = w128(inst, p, x) + w128(inst, x, n) - w128(inst, p, n);
        let mut rest = seq.clone();
        rest.remove(i);
        // Gap j lies between rest[j] and rest[j+1]; gap i-1 is where x was.
        let skip = (i + m - 2) % (m - 1);
        for j in 0..m - 1 {
            if j == skip {
                continue;
            }
            let (a, b) = (rest[j], rest[(j + 1) % (m - 1)]);
            let (ca, cb) = (inst.cluster_of(a), inst.cluster_of(b));
            if lower_bounds {
                let lb = inst.pair_min(ca, c) as i128 + inst.pair_min(c, cb) as i128 - w128(inst, a, b);
                if lb >= saved {
                    continue;
                }
            }
            let (cost, v) = inst
                .cluster(c)
                .iter()
                .map(|&v| (w128(inst, a, v) + w128(inst, v, b), v))
                .min()
                .unwrap();
            if cost - w128(inst, a, b) < saved {
                rest.insert(j + 1, v);
                *seq = rest;
                improved = true;
                break;
            }
        }
    }
    improved
}

/// Exact change of reversing the cyclic positions `i+1..=j`.
fn reverse_delta(inst: &GtspInstance, seq: &[usize], i: usize, j: usize) -> i128 {
    let m = seq.len();
    let at = |k: usize| seq[k % m];
    let mut d = w128(inst, at(i), at(j)) + w128(inst, at(i + 1), at(j + 1))
        - w128(inst, at(i), at(i + 1))
        - w128(inst, at(j), at(j + 1));
    if !inst.is_symmetric() {
        for k in i + 1..j {
            d += w128(inst, at(k + 1), at(k)) - w128(inst, at(k), at(k + 1));
        }
    }
    d
}

fn direct_two_opt(inst: &GtspInstance, seq: &mut [usize]) -> bool {
    let m = seq.len();
    let count = round_half_up(m as f64 / 4.0).max(2);
    let mut edges: Vec<usize> = (0..m).collect();
    edges.sort_by_key(|&i| (std::cmp::Reverse(inst.w(seq[i], seq[(i + 1) % m])), i));
    edges.truncate(count);
    edges.sort_unstable();
    for (a, &i) in edges.iter().enumerate() {
        for &j in &edges[a + 1..] {
            if j - i < 2 || (i == 0 && j == m - 1) {
                continue;
            }
            if reverse_delta(inst, seq, i, j) < 0 {
                seq[i + 1..=j].reverse();
                return true;
            }
        }
    }
    false
}

/// Permutations of `0..k` that move both the first and the last element,
/// i.e. the ones no shorter window can produce.
pub fn window_permutations(k: usize) -> Vec<Vec<usize>> {
    fn rec(k: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            if cur[0] != 0 && cur[k - 1] != k - 1 {
                out.push(cur.clone());
            }
            return;
        }
        for x in 0..k {
            if !used[x] {
                used[x] = true;
                cur.push(x);
                rec(k, cur, used, out);
                cur.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(k, &mut Vec::new(), &mut vec![false; k], &mut out);
    out
}

fn neighbor_swap_cycle(inst: &GtspInstance, seq: &mut [usize], k: usize, lower_bounds: bool) -> bool {
    let m = seq.len();
    let perms = window_permutations(k);
    let mut improved = false;
    for i in 0..m {
        let pos: Vec<usize> = (0..k).map(|d| (i + d) % m).collect();
        let (p, q) = (seq[(i + m - 1) % m], seq[(i + k) % m]);
        let cur: i128 = w128(inst, p, seq[pos[0]])
            + (0..k - 1).map(|d| w128(inst, seq[pos[d]], seq[pos[d + 1]])).sum::<i128>()
            + w128(inst, seq[pos[k - 1]], q);
        let clusters: Vec<usize> = pos.iter().map(|&x| inst.cluster_of(seq[x])).collect();
        let mut best: Option<(i128, Vec<usize>)> = None;
        for perm in &perms {
            let mid: Vec<usize> = perm.iter().map(|&j| clusters[j]).collect();
            if lower_bounds {
                let mut lb = inst.pair_min(inst.cluster_of(p), mid[0]) as i128
                    + inst.pair_min(mid[k - 1], inst.cluster_of(q)) as i128;
                lb += (0..k - 1).map(|d| inst.pair_min(mid[d], mid[d + 1]) as i128).sum::<i128>();
                if lb >= cur {
                    continue;
                }
            }
            let (w, verts) = best_fixed_path(inst, p, &mid, q);
            let w = w as i128;
            if w < cur && best.as_ref().map_or(true, |(bw, _)| w < *bw) {
                best = Some((w, verts));
            }
        }
        if let Some((_, verts)) = best {
            for (d, &x) in pos.iter().enumerate() {
                seq[x] = verts[d];
            }
            improved = true;
        }
    }
    improved
}

/// CO restricted to vertices that have a finite edge from the previous
/// cluster and to the next one. Falls back to the full cluster when the
/// filter would empty it.
pub fn filtered_co(inst: &GtspInstance, order: &[usize]) -> Option<(Weight, Vec<usize>)> {
    let m = order.len();
    let allowed: Vec<Vec<usize>> = (0..m)
        .map(|i| {
            let (x, z) = (order[(i + m - 1) % m], order[(i + 1) % m]);
            let keep: Vec<usize> = inst
                .cluster(order[i])
                .iter()
                .copied()
                .filter(|&y| inst.min_from(x, y) < INF && inst.min_to(y, z) < INF)
                .collect();
            if keep.is_empty() {
                inst.cluster(order[i]).to_vec()
            } else {
                keep
            }
        })
        .collect();
    let s = (0..m).min_by_key(|&i| (allowed[i].len(), i)).unwrap();
    let mut best: Option<(Weight, Vec<usize>)> = None;
    for &u in &allowed[s] {
        // dist over the current layer, with back-pointers per layer.
        let mut dist: Vec<Weight> = vec![0];
        let mut layer: Vec<usize> = vec![u];
        let mut back: Vec<Vec<usize>> = Vec::with_capacity(m);
        for step in 1..m {
            let next = &allowed[(s + step) % m];
            let mut nd = Vec::with_capacity(next.len());
            let mut nb = Vec::with_capacity(next.len());
            for &v in next {
                let (d, j) = layer
                    .iter()
                    .zip(&dist)
                    .enumerate()
                    .map(|(j, (&a, &d))| (gtsp_core::wadd(d, inst.w(a, v)), j))
                    .min()
                    .unwrap();
                nd.push(d);
                nb.push(j);
            }
            back.push(nb);
            dist = nd;
            layer = next.clone();
        }
        let (total, j) = layer
            .iter()
            .zip(&dist)
            .enumerate()
            .map(|(j, (&a, &d))| (gtsp_core::wadd(d, inst.w(a, u)), j))
            .min()
            .unwrap();
        if best.as_ref().map_or(true, |(bw, _)| total < *bw) {
            let mut picks = vec![u; m];
            let mut j = j;
            for step in (1..m).rev() {
                picks[step] = allowed[(s + step) % m][j];
                j = back[step - 1][j];
            }
            let mut seq = vec![0; m];
            for (step, &v) in picks.iter().enumerate() {
                seq[(s + step) % m] = v;
            }
            best = Some((total, seq));
        }
    }
    best.filter(|(w, _)| *w < INF)
}
