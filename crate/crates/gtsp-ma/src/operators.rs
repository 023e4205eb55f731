//! Genetic operators on vertex sequences normalised to start at cluster 0.

use gtsp_core::{GtspInstance, Tour};
use rand::Rng;

use crate::round_half_up;

/// Copies `p[a..a+l)` (cyclically) to the front of the child and fills the
/// rest with `q` read from position `a + l` on, skipping visited clusters.
pub fn crossover_at(inst: &GtspInstance, p: &[usize], q: &[usize], a: usize, l: usize) -> Vec<usize> {
    let m = p.len();
    let mut seen = vec![false; inst.m()];
    let mut child = Vec::with_capacity(m);
    for i in 0..l {
        let v = p[(a + i) % m];
        seen[inst.cluster_of(v)] = true;
        child.push(v);
    }
    for i in 0..m {
        let v = q[(a + l + i) % m];
        if !seen[inst.cluster_of(v)] {
            seen[inst.cluster_of(v)] = true;
            child.push(v);
        }
    }
    child
}

/// Random position `a` and fragment length `1 <= l < m`.
pub fn crossover<R: Rng + ?Sized>(inst: &GtspInstance, p: &Tour, q: &Tour, rng: &mut R) -> Tour {
    let (ps, qs) = (p.sequence(), q.sequence());
    let m = ps.len();
    if m < 2 {
        return p.clone();
    }
    let a = rng.gen_range(0..m);
    let l = rng.gen_range(1..m);
    Tour::from_sequence(inst, &crossover_at(inst, &ps, &qs, a, l)).expect("crossover keeps one vertex per cluster")
}

/// Moves `seq[start..start+len]` so that it begins at index `pos` of the
/// result.
pub fn mutate_at(seq: &[usize], start: usize, len: usize, pos: usize) -> Vec<usize> {
    let mut rest: Vec<usize> = seq.to_vec();
    let frag: Vec<usize> = rest.drain(start..start + len).collect();
    rest.splice(pos..pos, frag);
    rest
}

/// Fragment lengths allowed for `m` clusters: `0.05 m ..= 0.3 m`, at least 1
/// and at most `m - 1`.
pub fn mutation_lengths(m: usize) -> (usize, usize) {
    let lo = round_half_up(0.05 * m as f64).max(1);
    let hi = round_half_up(0.3 * m as f64).max(lo).min(m.saturating_sub(1).max(1));
    (lo.min(hi), hi)
}

pub fn mutate<R: Rng + ?Sized>(inst: &GtspInstance, p: &Tour, rng: &mut R) -> Tour {
    let seq = p.sequence();
    let m = seq.len();
    if m < 2 {
        return p.clone();
    }
    let (lo, hi) = mutation_lengths(m);
    let len = rng.gen_range(lo..=hi);
    let start = rng.gen_range(0..=m - len);
    let pos = rng.gen_range(0..=m - len);
    Tour::from_sequence(inst, &mutate_at(&seq, start, len, pos)).expect("mutation keeps one vertex per cluster")
}
