//! Restricted 3-opt: remove `T_x -> T_{x+1}`, `T_y -> T_{y+1}`,
//! `T_z -> T_{z+1}` and reconnect as
//! `T_x -> T_{y+1} .. T_z -> T_{x+1} .. T_y -> T_{z+1}`, which reverses no
//! fragment. The three removed edges must be pairwise non-adjacent, so
//! tours with fewer than six clusters have no candidates.

use std::ops::ControlFlow;
use std::time::Instant;

use gtsp_core::{GtspInstance, Tour, Weight};

use crate::adapt::{ew, exact_weight, try_move, Adaptation, Move, SearchStats};
use crate::global::{global_search, ForwardTables, Frag, GlobalMoves};

pub fn three_opt(inst: &GtspInstance, t: &Tour, adaptation: Adaptation) -> Tour {
    three_opt_with(inst, t, adaptation, true).0
}

pub fn three_opt_with(inst: &GtspInstance, t: &Tour, ad: Adaptation, lower_bounds: bool) -> (Tour, SearchStats) {
    let started = Instant::now();
    let mut stats = SearchStats::default();
    let seq = t.sequence();
    let out = if inst.m() < 6 {
        seq
    } else if ad == Adaptation::Global {
        global_search(inst, &seq, &GlobalSegments, lower_bounds, &mut stats)
    } else {
        descent(inst, seq, ad, &mut stats)
    };
    stats.elapsed = started.elapsed();
    (Tour::from_sequence(inst, &out).expect("3-opt keeps a valid tour"), stats)
}

/// Every valid `(x, y, z)` in enumeration order.
pub fn triples(m: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    (0..m).flat_map(move |x| {
        (x + 2..m).flat_map(move |y| (y + 2..m).filter(move |&z| z + 2 <= x + m).map(move |z| (x, y, z)))
    })
}

pub(crate) struct Segments {
    pub x: usize,
    pub y: usize,
    pub z: usize,
}

impl Move for Segments {
    fn at(&self, seq: &[usize], k: usize) -> usize {
        let (x, y, z) = (self.x, self.y, self.z);
        if k <= x || k > z {
            seq[k]
        } else if k <= x + z - y {
            seq[y + 1 + (k - x - 1)]
        } else {
            seq[x + 1 + (k - x - 1 - (z - y))]
        }
    }

    fn affected(&self) -> Vec<usize> {
        let (x, y, z) = (self.x, self.y, self.z);
        vec![x, x + 1, x + z - y, x + z - y + 1, z, z + 1]
    }

    fn apply(&self, seq: &mut Vec<usize>) {
        seq[self.x + 1..=self.z].rotate_left(self.y - self.x);
    }
}

pub(crate) fn segment_delta(inst: &GtspInstance, seq: &[usize], x: usize, y: usize, z: usize) -> i128 {
    let m = seq.len();
    let s = |i: usize| seq[i % m];
    ew(inst, s(x), s(y + 1)) + ew(inst, s(z), s(x + 1)) + ew(inst, s(y), s(z + 1))
        - ew(inst, s(x), s(x + 1))
        - ew(inst, s(y), s(y + 1))
        - ew(inst, s(z), s(z + 1))
}

fn descent(inst: &GtspInstance, mut seq: Vec<usize>, ad: Adaptation, stats: &mut SearchStats) -> Vec<usize> {
    let m = seq.len();
    let mut w = exact_weight(inst, &seq);
    loop {
        let mut improved = false;
        for (x, y, z) in triples(m) {
            stats.candidates += 1;
            let d = segment_delta(inst, &seq, x, y, z);
            if let Some((ns, nw)) = try_move(inst, &seq, w, d, &Segments { x, y, z }, ad) {
                seq = ns;
                w = nw;
                stats.moves_applied += 1;
                improved = true;
            }
        }
        if !improved {
            return seq;
        }
    }
}

struct GlobalSegments;

impl GlobalMoves for GlobalSegments {
    fn max_len(&self, m: usize) -> usize {
        m - 4
    }

    fn for_each(
        &self,
        _inst: &GtspInstance,
        tables: &ForwardTables,
        f: &mut dyn FnMut(&[Frag], Option<Weight>) -> ControlFlow<()>,
    ) {
        let m = tables.m();
        for (x, y, z) in triples(m) {
            let frags = [
                Frag { start: z + 1, len: x + m - z },
                Frag { start: y + 1, len: z - y },
                Frag { start: x + 1, len: y - x },
            ];
            if f(&frags, None).is_break() {
                return;
            }
        }
    }
}
