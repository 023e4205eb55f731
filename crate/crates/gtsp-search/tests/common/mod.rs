#![allow(dead_code)]

use gtsp_core::{wadd, GtspInstance, Tour, Weight, INF};
use gtsp_search::{co_sequence, Refinements};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn cycle(inst: &GtspInstance, seq: &[usize]) -> i128 {
    (0..seq.len()).map(|i| inst.w(seq[i], seq[(i + 1) % seq.len()]) as i128).sum()
}

/// Random tour: shuffled clusters, random vertices.
pub fn random_tour(inst: &GtspInstance, seed: u64) -> Tour {
    let mut r = rng(seed);
    let mut order: Vec<usize> = (0..inst.m()).collect();
    order.shuffle(&mut r);
    let seq: Vec<usize> = order
        .iter()
        .map(|&c| {
            let cl = inst.cluster(c);
            cl[r.gen_range(0..cl.len())]
        })
        .collect();
    Tour::from_sequence(inst, &seq).unwrap()
}

pub fn random_sizes(m: usize, max: usize, seed: u64) -> Vec<usize> {
    let mut r = rng(seed);
    (0..m).map(|_| r.gen_range(1..=max)).collect()
}

/// Every vertex selection for a fixed cluster order.
pub fn selections(inst: &GtspInstance, order: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &c in order {
        let mut next = Vec::new();
        for s in &out {
            for &v in inst.cluster(c) {
                let mut t = s.clone();
                t.push(v);
                next.push(t);
            }
        }
        out = next;
    }
    out
}

pub fn brute_co(inst: &GtspInstance, order: &[usize]) -> Weight {
    selections(inst, order).iter().map(|s| cycle(inst, s)).min().unwrap().min(INF as i128) as Weight
}

/// Shortest path through `order` (first and last cluster included).
pub fn brute_path(inst: &GtspInstance, order: &[usize]) -> Weight {
    selections(inst, order)
        .iter()
        .map(|s| s.windows(2).fold(0, |acc, e| wadd(acc, inst.w(e[0], e[1]))))
        .min()
        .unwrap()
}

pub fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, head);
            out.push(p);
        }
    }
    out
}

pub fn order_of(inst: &GtspInstance, seq: &[usize]) -> Vec<usize> {
    seq.iter().map(|&v| inst.cluster_of(v)).collect()
}

pub fn canonical(inst: &GtspInstance, seq: &[usize]) -> Vec<usize> {
    let p = seq.iter().position(|&v| inst.cluster_of(v) == 0).unwrap();
    let mut s = seq.to_vec();
    s.rotate_left(p);
    s
}

/// Global search the slow way: every candidate order is scored by a full CO
/// run, the first strictly better one is taken and the scan restarts.
pub fn naive_global(inst: &GtspInstance, t: &Tour, candidates: &dyn Fn(&[usize]) -> Vec<Vec<usize>>) -> Vec<usize> {
    let (mut w, s) = co_sequence(inst, &t.order(), Refinements::ALL).unwrap();
    let mut seq = canonical(inst, &s);
    'outer: loop {
        let order = order_of(inst, &seq);
        for cand in candidates(&order) {
            let Ok((nw, s)) = co_sequence(inst, &cand, Refinements::ALL) else { continue };
            if nw < w {
                w = nw;
                seq = canonical(inst, &s);
                continue 'outer;
            }
        }
        return seq;
    }
}

pub fn two_opt_candidates(c: &[usize], symmetric: bool) -> Vec<Vec<usize>> {
    let m = c.len();
    let cl = |i: usize| c[i % m];
    let mut out = Vec::new();
    let xs = if symmetric { m - 2 } else { m };
    for x in 0..xs {
        let ymax = if symmetric { (m - 1).min(x + m - 2) } else { x + m - 2 };
        for y in x + 2..=ymax {
            let mut o = vec![cl(x)];
            o.extend((x + 1..=y).rev().map(cl));
            o.extend((y + 1..x + m).map(cl));
            out.push(o);
        }
    }
    out
}

pub fn insertion_candidates(c: &[usize]) -> Vec<Vec<usize>> {
    let m = c.len();
    let cl = |i: usize| c[i % m];
    let mut out = Vec::new();
    for i in 0..m {
        for j in 0..m {
            if j == i || (j + 1) % m == i {
                continue;
            }
            let h = (j + m - i) % m;
            let mut o: Vec<usize> = (0..h).map(|k| cl(i + 1 + k)).collect();
            o.push(cl(i));
            o.extend((h + 1..m).map(|k| cl(i + k)));
            out.push(o);
        }
    }
    out
}

pub fn swap_candidates(c: &[usize]) -> Vec<Vec<usize>> {
    let m = c.len();
    let cl = |i: usize| c[i % m];
    let mut out = Vec::new();
    for x in 0..m {
        for y in x + 1..m {
            let mut o: Vec<usize> = (y + 1..x + m).map(cl).collect();
            o.push(cl(y));
            o.extend((x + 1..y).map(cl));
            o.push(cl(x));
            out.push(o);
        }
    }
    out
}

pub fn three_opt_candidates(c: &[usize]) -> Vec<Vec<usize>> {
    let m = c.len();
    let cl = |i: usize| c[i % m];
    gtsp_search::three_opt::triples(m)
        .map(|(x, y, z)| {
            let mut o: Vec<usize> = (z + 1..=x + m).map(cl).collect();
            o.extend((y + 1..=z).map(cl));
            o.extend((x + 1..=y).map(cl));
            o
        })
        .collect()
}

/// Singleton clusters on the x axis at `10 * i`.
pub fn line(m: usize) -> GtspInstance {
    let mut w = vec![0; m * m];
    for a in 0..m {
        for b in 0..m {
            w[a * m + b] = 10 * (a as Weight - b as Weight).abs();
        }
    }
    GtspInstance::new((0..m).map(|i| vec![i]).collect(), w).unwrap()
}
