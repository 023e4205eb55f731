//! 2-opt: replace `T_x -> T_{x+1}` and `T_y -> T_{y+1}` with `T_x -> T_y`
//! and `T_{x+1} -> T_{y+1}`, reversing the fragment `x+1..=y`.
//!
//! Symmetric instances enumerate `x < y` only. Asymmetric ones also try the
//! reversal of every fragment that wraps past position 0, which is the
//! other reconnection of the same pair of edges.

use std::time::Instant;

use gtsp_core::{GtspInstance, Tour, INF};

use crate::adapt::{ew, exact_weight, try_move, Adaptation, Move, SearchStats};
use crate::bounds::PathBounds;
use crate::co::co_seq_or_inf;
use crate::global::{canonical, co_start};
use crate::layers::{block, min_cycle};
use crate::path_table::PathTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TwoOptOptions {
    pub adaptation: Adaptation,
    /// Basic symmetric search driven by sorted neighbour lists.
    pub neighbor_lists: bool,
    /// Lower-bound pruning in the Global adaptation.
    pub lower_bounds: bool,
}

impl TwoOptOptions {
    pub fn new(adaptation: Adaptation) -> Self {
        TwoOptOptions { adaptation, neighbor_lists: false, lower_bounds: true }
    }
}

pub fn two_opt(inst: &GtspInstance, t: &Tour, adaptation: Adaptation) -> Tour {
    two_opt_with(inst, t, &TwoOptOptions::new(adaptation)).0
}

pub fn two_opt_with(inst: &GtspInstance, t: &Tour, opts: &TwoOptOptions) -> (Tour, SearchStats) {
    let started = Instant::now();
    let mut stats = SearchStats::default();
    let seq = t.sequence();
    let out = if inst.m() < 4 {
        if opts.adaptation == Adaptation::Global {
            co_start(inst, &seq).0
        } else {
            seq
        }
    } else {
        match opts.adaptation {
            Adaptation::Global => global(inst, &seq, opts.lower_bounds, &mut stats),
            Adaptation::Basic if opts.neighbor_lists && inst.is_symmetric() => neighbor_lists(inst, seq, &mut stats),
            ad => descent(inst, seq, ad, &mut stats),
        }
    };
    stats.elapsed = started.elapsed();
    (Tour::from_sequence(inst, &out).expect("2-opt keeps a valid tour"), stats)
}

/// Reversal of the cyclic positions `x+1..=y` (`x < y < x + m`).
pub(crate) struct Reverse {
    pub x: usize,
    pub y: usize,
    pub m: usize,
}

impl Move for Reverse {
    fn at(&self, seq: &[usize], k: usize) -> usize {
        let m = self.m;
        let off = (k + m - (self.x + 1) % m) % m;
        if off < self.y - self.x {
            seq[(self.y - off) % m]
        } else {
            seq[k]
        }
    }

    fn affected(&self) -> Vec<usize> {
        vec![self.x, self.x + 1, self.y, self.y + 1]
    }

    fn apply(&self, seq: &mut Vec<usize>) {
        let m = self.m;
        let (mut i, mut j) = (self.x + 1, self.y);
        while i < j {
            seq.swap(i % m, j % m);
            i += 1;
            j -= 1;
        }
    }
}

/// Largest `y` tried for a given `x`.
fn y_max(m: usize, x: usize, symmetric: bool) -> usize {
    if symmetric {
        (m - 1).min(x + m - 2)
    } else {
        x + m - 2
    }
}

fn x_range(m: usize, symmetric: bool) -> usize {
    if symmetric {
        m - 2
    } else {
        m
    }
}

/// Basic / BasicCO / Local / LocalCO descent.
fn descent(inst: &GtspInstance, mut seq: Vec<usize>, ad: Adaptation, stats: &mut SearchStats) -> Vec<usize> {
    let m = seq.len();
    let sym = inst.is_symmetric();
    let mut w = exact_weight(inst, &seq);
    // Skip flags: cluster whose outgoing edge is unchanged since its scan.
    let use_flags = sym && ad == Adaptation::Basic;
    let mut fresh = vec![true; inst.m()];
    let mut verify = false;
    loop {
        let mut improved = false;
        for x in 0..x_range(m, sym) {
            'scan: loop {
                let mut delta = 0i128;
                for y in x + 2..=y_max(m, x, sym) {
                    let s = |i: usize| seq[i % m];
                    if !sym {
                        delta += ew(inst, s(y - 1), s(y)) - ew(inst, s(y), s(y - 1));
                    }
                    if use_flags
                        && !verify
                        && !fresh[inst.cluster_of(s(x))]
                        && !fresh[inst.cluster_of(s(y))]
                    {
                        continue;
                    }
                    stats.candidates += 1;
                    let d = ew(inst, s(x), s(y)) + ew(inst, s(x + 1), s(y + 1))
                        - ew(inst, s(x), s(x + 1))
                        - ew(inst, s(y), s(y + 1))
                        - delta;
                    let mv = Reverse { x, y, m };
                    if let Some((ns, nw)) = try_move(inst, &seq, w, d, &mv, ad) {
                        seq = ns;
                        w = nw;
                        stats.moves_applied += 1;
                        improved = true;
                        for i in x..=y {
                            fresh[inst.cluster_of(seq[i % m])] = true;
                        }
                        continue 'scan;
                    }
                }
                break;
            }
            fresh[inst.cluster_of(seq[x])] = false;
        }
        if improved {
            verify = false;
            continue;
        }
        if use_flags && !verify {
            verify = true;
            continue;
        }
        break;
    }
    seq
}

/// Symmetric Basic 2-opt driven by neighbour lists: for `x` only partners
/// with a new edge shorter than `w(T_x -> T_{x+1})` are tried.
fn neighbor_lists(inst: &GtspInstance, mut seq: Vec<usize>, stats: &mut SearchStats) -> Vec<usize> {
    let m = seq.len();
    let n = inst.n();
    let lists: Vec<Vec<usize>> = (0..n)
        .map(|v| {
            let mut l: Vec<usize> = (0..n).filter(|&u| inst.cluster_of(u) != inst.cluster_of(v)).collect();
            l.sort_by_key(|&u| (inst.w(v, u), u));
            l
        })
        .collect();
    let mut pos = vec![usize::MAX; n];
    for (i, &v) in seq.iter().enumerate() {
        pos[v] = i;
    }
    let mut improved = true;
    while improved {
        improved = false;
        for x in 0..m {
            let a = seq[x];
            let b = seq[(x + 1) % m];
            let limit = inst.w(a, b);
            // partner y with new edge a -> T_y, or y with new edge b -> T_{y+1}
            let mut partners = Vec::new();
            for &u in &lists[a] {
                if inst.w(a, u) >= limit {
                    break;
                }
                if pos[u] != usize::MAX {
                    partners.push(pos[u]);
                }
            }
            for &u in &lists[b] {
                if inst.w(b, u) >= limit {
                    break;
                }
                if pos[u] != usize::MAX {
                    partners.push((pos[u] + m - 1) % m);
                }
            }
            for y in partners {
                let (lo, hi) = if x < y { (x, y) } else { (y, x) };
                if hi < lo + 2 || (lo == 0 && hi == m - 1) {
                    continue;
                }
                stats.candidates += 1;
                let s = |i: usize| seq[i % m];
                let d = ew(inst, s(lo), s(hi)) + ew(inst, s(lo + 1), s(hi + 1))
                    - ew(inst, s(lo), s(lo + 1))
                    - ew(inst, s(hi), s(hi + 1));
                if d < 0 {
                    seq[lo + 1..=hi].reverse();
                    for i in lo + 1..=hi {
                        pos[seq[i]] = i;
                    }
                    stats.moves_applied += 1;
                    improved = true;
                    break;
                }
            }
        }
    }
    seq
}

/// Global 2-opt. For a fixed `x` the reversed fragment `T_y .. T_{x+1}` and
/// the kept fragment `T_{y+1} .. T_x` are both tables of paths into a fixed
/// end cluster, grown with supporting clusters; every candidate is a small
/// layered cycle.
fn global(inst: &GtspInstance, seq: &[usize], use_bounds: bool, stats: &mut SearchStats) -> Vec<usize> {
    let m = seq.len();
    let sym = inst.is_symmetric();
    let (mut seq, mut w) = co_start(inst, seq);
    if w >= INF {
        return seq;
    }
    'restart: loop {
        let c: Vec<usize> = seq.iter().map(|&v| inst.cluster_of(v)).collect();
        let cl = |i: usize| c[i % m];
        let pb = PathBounds::new(inst, &seq);
        for x in 0..x_range(m, sym) {
            let ymax = y_max(m, x, sym);
            // Kept fragment: X_1 = T_x, X_2 = T_{x-1}, ..., up to m-2 clusters.
            let mut kept = PathTable::start(inst, cl(x), cl(x + m - 1));
            for i in 3..=m - 2 {
                kept.push(inst, cl(x + m + 1 - i));
            }
            let mut rev: Option<PathTable> = None;
            for y in x + 2..=ymax {
                match rev.as_mut() {
                    None => rev = Some(PathTable::start(inst, cl(x + 1), cl(x + 2))),
                    Some(t) => t.push(inst, cl(y)),
                }
                stats.candidates += 1;
                if use_bounds {
                    let lb = pb.backward(y, y - x) as i128
                        + pb.forward(y + 1, x + m - y) as i128
                        + inst.pair_min(cl(x), cl(y)) as i128
                        + inst.pair_min(cl(x + 1), cl(y + 1)) as i128;
                    if lb >= w as i128 {
                        stats.prunes += 1;
                        continue;
                    }
                }
                let rt = rev.as_ref().unwrap();
                let mut views = vec![block(inst, cl(x), cl(y))];
                views.extend(rt.chain(y - x));
                views.push(block(inst, cl(x + 1), cl(y + 1)));
                views.extend(kept.chain(x + m - y));
                if min_cycle(&views) < w {
                    let mut order = vec![cl(x)];
                    order.extend((x + 1..=y).rev().map(cl));
                    order.extend((y + 1..x + m).map(cl));
                    let (nw, s) = co_seq_or_inf(inst, &order);
                    debug_assert!(nw < w);
                    seq = canonical(inst, &s);
                    w = nw;
                    stats.moves_applied += 1;
                    continue 'restart;
                }
            }
        }
        break;
    }
    seq
}
