//! Swap: exchange the clusters at positions `x` and `y`.

use std::ops::ControlFlow;
use std::time::Instant;

use gtsp_core::{GtspInstance, Tour, Weight};

use crate::adapt::{ew, exact_weight, try_move, Adaptation, Move, SearchStats};
use crate::global::{global_search, ForwardTables, Frag, GlobalMoves};

pub fn swap(inst: &GtspInstance, t: &Tour, adaptation: Adaptation) -> Tour {
    swap_with(inst, t, adaptation, true).0
}

pub fn swap_with(inst: &GtspInstance, t: &Tour, ad: Adaptation, lower_bounds: bool) -> (Tour, SearchStats) {
    let started = Instant::now();
    let mut stats = SearchStats::default();
    let seq = t.sequence();
    let out = if inst.m() < 3 {
        seq
    } else if ad == Adaptation::Global {
        global_search(inst, &seq, &GlobalSwap, lower_bounds, &mut stats)
    } else {
        descent(inst, seq, ad, &mut stats)
    };
    stats.elapsed = started.elapsed();
    (Tour::from_sequence(inst, &out).expect("swap keeps a valid tour"), stats)
}

pub(crate) struct Exchange {
    pub x: usize,
    pub y: usize,
}

impl Move for Exchange {
    fn at(&self, seq: &[usize], k: usize) -> usize {
        if k == self.x {
            seq[self.y]
        } else if k == self.y {
            seq[self.x]
        } else {
            seq[k]
        }
    }

    fn affected(&self) -> Vec<usize> {
        vec![self.x, self.y]
    }

    fn apply(&self, seq: &mut Vec<usize>) {
        seq.swap(self.x, self.y);
    }
}

/// Weight change of a swap; edges starting at `x-1, x, y-1, y` are the only
/// ones that can change, which also covers adjacent positions.
pub(crate) fn swap_delta(inst: &GtspInstance, seq: &[usize], x: usize, y: usize) -> i128 {
    let m = seq.len();
    let mv = Exchange { x, y };
    let mut starts = [(x + m - 1) % m, x, (y + m - 1) % m, y];
    starts.sort_unstable();
    let mut d = 0;
    for (k, &p) in starts.iter().enumerate() {
        if k > 0 && starts[k - 1] == p {
            continue;
        }
        let q = (p + 1) % m;
        d += ew(inst, mv.at(seq, p), mv.at(seq, q)) - ew(inst, seq[p], seq[q]);
    }
    d
}

fn descent(inst: &GtspInstance, mut seq: Vec<usize>, ad: Adaptation, stats: &mut SearchStats) -> Vec<usize> {
    let m = seq.len();
    let mut w = exact_weight(inst, &seq);
    loop {
        let mut improved = false;
        for x in 0..m {
            let mut y = x + 1;
            while y < m {
                stats.candidates += 1;
                let d = swap_delta(inst, &seq, x, y);
                if let Some((ns, nw)) = try_move(inst, &seq, w, d, &Exchange { x, y }, ad) {
                    seq = ns;
                    w = nw;
                    stats.moves_applied += 1;
                    improved = true;
                    y = x + 1;
                    continue;
                }
                y += 1;
            }
        }
        if !improved {
            return seq;
        }
    }
}

struct GlobalSwap;

impl GlobalMoves for GlobalSwap {
    fn max_len(&self, m: usize) -> usize {
        m - 2
    }

    fn for_each(
        &self,
        _inst: &GtspInstance,
        tables: &ForwardTables,
        f: &mut dyn FnMut(&[Frag], Option<Weight>) -> ControlFlow<()>,
    ) {
        let m = tables.m();
        for x in 0..m {
            for y in x + 1..m {
                let outer = x + m - y - 1;
                let inner = y - x - 1;
                let mut frags = Vec::with_capacity(4);
                if outer > 0 {
                    frags.push(Frag { start: y + 1, len: outer });
                }
                frags.push(Frag { start: y, len: 1 });
                if inner > 0 {
                    frags.push(Frag { start: x + 1, len: inner });
                }
                frags.push(Frag { start: x, len: 1 });
                if f(&frags, None).is_break() {
                    return;
                }
            }
        }
    }
}
