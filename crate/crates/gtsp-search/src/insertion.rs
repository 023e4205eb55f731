//! Insertion: remove the cluster at position `i` and reinsert it between
//! positions `j` and `j+1`. Targets adjacent to `i` are skipped, leaving
//! `m(m-2)` candidates.

use std::ops::ControlFlow;
use std::time::Instant;

use gtsp_core::{GtspInstance, Tour, Weight, INF};

use crate::adapt::{ew, exact_weight, try_move, Adaptation, Move, SearchStats};
use crate::global::{co_start, global_search, ForwardTables, Frag, GlobalMoves};
use crate::layers::{block, min_cycle};

pub fn insertion(inst: &GtspInstance, t: &Tour, adaptation: Adaptation) -> Tour {
    insertion_with(inst, t, adaptation, true).0
}

/// `lower_bounds` only affects the Global adaptation.
pub fn insertion_with(inst: &GtspInstance, t: &Tour, ad: Adaptation, lower_bounds: bool) -> (Tour, SearchStats) {
    let started = Instant::now();
    let mut stats = SearchStats::default();
    let seq = t.sequence();
    let out = if inst.m() <= 3 {
        // Every insertion on three clusters only reverses the cycle.
        if ad == Adaptation::Global {
            co_start(inst, &seq).0
        } else {
            seq
        }
    } else if ad == Adaptation::Global {
        global_search(inst, &seq, &GlobalInsert, lower_bounds, &mut stats)
    } else {
        descent(inst, seq, ad, &mut stats)
    };
    stats.elapsed = started.elapsed();
    (Tour::from_sequence(inst, &out).expect("insertion keeps a valid tour"), stats)
}

/// Candidate laid out from position `i+1`:
/// `T_{i+1} .. T_j, T_i, T_{j+1} .. T_{i-1}`.
pub(crate) struct Insert {
    pub i: usize,
    pub j: usize,
    pub m: usize,
}

impl Insert {
    fn head(&self) -> usize {
        (self.j + self.m - self.i) % self.m
    }
}

impl Move for Insert {
    fn at(&self, seq: &[usize], k: usize) -> usize {
        let m = self.m;
        let h = self.head();
        if k < h {
            seq[(self.i + 1 + k) % m]
        } else if k == h {
            seq[self.i]
        } else {
            seq[(self.i + k) % m]
        }
    }

    fn affected(&self) -> Vec<usize> {
        vec![self.head()]
    }

    fn apply(&self, seq: &mut Vec<usize>) {
        let out: Vec<usize> = (0..self.m).map(|k| self.at(seq, k)).collect();
        *seq = out;
    }
}

pub(crate) fn insert_delta(inst: &GtspInstance, seq: &[usize], i: usize, j: usize) -> i128 {
    let m = seq.len();
    let s = |k: usize| seq[k % m];
    let (p, v, nx, a, b) = (s(i + m - 1), s(i), s(i + 1), s(j), s(j + 1));
    ew(inst, p, nx) + ew(inst, a, v) + ew(inst, v, b) - ew(inst, p, v) - ew(inst, v, nx) - ew(inst, a, b)
}

fn descent(inst: &GtspInstance, mut seq: Vec<usize>, ad: Adaptation, stats: &mut SearchStats) -> Vec<usize> {
    let m = seq.len();
    let mut w = exact_weight(inst, &seq);
    loop {
        let mut improved = false;
        let mut i = 0;
        while i < m {
            let mut moved = false;
            for j in 0..m {
                if j == i || (j + 1) % m == i {
                    continue;
                }
                stats.candidates += 1;
                let d = insert_delta(inst, &seq, i, j);
                if let Some((ns, nw)) = try_move(inst, &seq, w, d, &Insert { i, j, m }, ad) {
                    seq = ns;
                    w = nw;
                    stats.moves_applied += 1;
                    moved = true;
                    break;
                }
            }
            improved |= moved;
            if !moved {
                i += 1;
            }
        }
        if !improved {
            return seq;
        }
    }
}

struct GlobalInsert;

impl GlobalMoves for GlobalInsert {
    fn max_len(&self, m: usize) -> usize {
        m - 1
    }

    fn for_each(
        &self,
        inst: &GtspInstance,
        tables: &ForwardTables,
        f: &mut dyn FnMut(&[Frag], Option<Weight>) -> ControlFlow<()>,
    ) {
        let m = tables.m();
        let c = |p: usize| tables.cluster(p);
        for i in 0..m {
            // Shortest cycle of the tour without cluster i.
            let rest = if m >= 3 {
                let views = [tables.path(i + 1, m - 1), block(inst, c(i + m - 1), c(i + 1))];
                min_cycle(&views)
            } else {
                INF
            };
            for j in 0..m {
                if j == i || (j + 1) % m == i {
                    continue;
                }
                let h = (j + m - i) % m;
                let frags = [
                    Frag { start: i + 1, len: h },
                    Frag { start: i, len: 1 },
                    Frag { start: j + 1, len: m - 1 - h },
                ];
                let broken = if rest < INF {
                    let b = rest as i128 - inst.pair_max(c(j), c(j + 1)) as i128
                        + inst.pair_min(c(j), c(i)) as i128
                        + inst.pair_min(c(i), c(j + 1)) as i128;
                    Some(b.clamp(0, INF as i128) as Weight)
                } else {
                    None
                };
                if f(&frags, broken).is_break() {
                    return;
                }
            }
        }
    }
}
