//! v-opt: a Lin-Kernighan style chain of vector swaps. Starting from an
//! anchor `c`, repeatedly swap `c` with the partner giving the lightest
//! swapped vector, continue from the complementary vector and keep the
//! best assignment seen while the total gain stays positive.

use map_core::{Assignment, MapInstance, Weight};

use crate::dv::combinations;

/// Dimension sets a single swap may exchange: `|D| <= s/2`, or at most one
/// dimension for the natural extension. The empty set comes first; picking
/// it moves the chain on to `m` without changing anything.
pub fn swap_sets(s: usize, natural: bool) -> Vec<Vec<usize>> {
    let cap = if natural { 1 } else { s / 2 };
    let all: Vec<usize> = (0..s).collect();
    (0..=cap).flat_map(|k| combinations(&all, k)).collect()
}

/// Outcome of one chain, for inspection in tests.
#[derive(Debug, Clone)]
pub struct ChainTrace {
    pub steps: usize,
    pub start_weight: Weight,
    pub final_weight: Weight,
}

fn chain(inst: &MapInstance, coords: &mut Vec<usize>, s: usize, anchor: usize, sets: &[Vec<usize>]) -> ChainTrace {
    let n = coords.len() / s;
    let start_weight: Weight = coords.chunks(s).map(|v| inst.weight(v)).sum();
    let mut cur_w = start_weight;
    let mut best = coords.clone();
    let mut best_w = start_weight;
    let mut gain: Weight = 0;
    let mut avail = vec![true; n];
    avail[anchor] = false;
    let mut c = anchor;
    let mut left = n - 1;
    let mut steps = 0;
    let mut e = vec![0; s];
    while left > 0 {
        let cv = coords[c * s..(c + 1) * s].to_vec();
        let mut pick: Option<(Weight, usize, usize)> = None;
        for m in (0..n).filter(|&m| avail[m]) {
            for (k, d) in sets.iter().enumerate() {
                e.copy_from_slice(&cv);
                for &j in d {
                    e[j] = coords[m * s + j];
                }
                let w = inst.weight(&e);
                if pick.map_or(true, |p| w < p.0) {
                    pick = Some((w, m, k));
                }
            }
        }
        let Some((wv, m, k)) = pick else { break };
        gain += inst.weight(&cv) - wv;
        if gain <= 0 {
            break;
        }
        avail[m] = false;
        left -= 1;
        let wm = inst.weight(&coords[m * s..(m + 1) * s]);
        let wc = inst.weight(&cv);
        for &j in &sets[k] {
            coords.swap(c * s + j, m * s + j);
        }
        let wbar = inst.weight(&coords[m * s..(m + 1) * s]);
        cur_w += wv + wbar - wc - wm;
        steps += 1;
        c = m;
        if cur_w < best_w {
            best_w = cur_w;
            best.clone_from(coords);
        }
    }
    *coords = best;
    ChainTrace { steps, start_weight, final_weight: best_w }
}

/// Runs chains from every anchor, repeating full passes until one makes no
/// improvement. `natural` restricts swaps to a single dimension.
pub fn v_opt(inst: &MapInstance, a: &Assignment, natural: bool) -> Assignment {
    let s = a.s();
    let sets = swap_sets(s, natural);
    let mut coords = a.flat().to_vec();
    loop {
        // Anchors follow canonical order so a returned minimum is stable.
        coords = Assignment::canonical(s, coords).into_flat();
        let mut improved = false;
        for anchor in 0..a.n() {
            let t = chain(inst, &mut coords, s, anchor, &sets);
            improved |= t.final_weight < t.start_weight;
        }
        if !improved {
            return Assignment::canonical(s, coords);
        }
    }
}

/// A single chain from the vector in slot `anchor` (first coordinate
/// `anchor`), returning the resulting assignment and its trace.
pub fn v_opt_chain(inst: &MapInstance, a: &Assignment, anchor: usize, natural: bool) -> (Assignment, ChainTrace) {
    let mut coords = a.flat().to_vec();
    let t = chain(inst, &mut coords, a.s(), anchor, &swap_sets(a.s(), natural));
    (Assignment::canonical(a.s(), coords), t)
}
