//! Adaptations of TSP neighbourhoods and the shared search plumbing.

use std::str::FromStr;
use std::time::Duration;

use gtsp_core::{GtspError, GtspInstance, INF};

use crate::layers::best_fixed_path;

/// How a TSP move is lifted to GTSP: `QuickImprove` decides whether a
/// candidate is accepted, `SlowImprove` post-processes an accepted one.
///
/// | variant  | quick | slow |
/// |----------|-------|------|
/// | Basic    | none  | none |
/// | BasicCO  | none  | CO   |
/// | Local    | local | none |
/// | LocalCO  | local | CO   |
/// | Global   | CO    | none |
///
/// "local" re-optimises the vertices of the clusters incident to the new
/// edges between their fixed neighbours.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Adaptation {
    Basic,
    BasicCO,
    Local,
    LocalCO,
    Global,
}

impl Adaptation {
    pub const ALL: [Adaptation; 5] =
        [Adaptation::Basic, Adaptation::BasicCO, Adaptation::Local, Adaptation::LocalCO, Adaptation::Global];

    pub(crate) fn local(self) -> bool {
        matches!(self, Adaptation::Local | Adaptation::LocalCO)
    }

    pub(crate) fn co_after(self) -> bool {
        matches!(self, Adaptation::BasicCO | Adaptation::LocalCO)
    }

    /// Short suffix used on the command line: `B`, `Bco`, `L`, `Lco`, `G`.
    pub fn suffix(self) -> &'static str {
        match self {
            Adaptation::Basic => "B",
            Adaptation::BasicCO => "Bco",
            Adaptation::Local => "L",
            Adaptation::LocalCO => "Lco",
            Adaptation::Global => "G",
        }
    }
}

impl FromStr for Adaptation {
    type Err = GtspError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "b" | "basic" => Ok(Adaptation::Basic),
            "bco" | "basicco" => Ok(Adaptation::BasicCO),
            "l" | "local" => Ok(Adaptation::Local),
            "lco" | "localco" => Ok(Adaptation::LocalCO),
            "g" | "global" => Ok(Adaptation::Global),
            _ => Err(GtspError::InvalidArgument(format!("unknown adaptation {s:?}"))),
        }
    }
}

/// Counters collected by one search call.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub moves_applied: u64,
    pub candidates: u64,
    pub prunes: u64,
    pub elapsed: Duration,
}

impl SearchStats {
    pub fn merge(&mut self, o: &SearchStats) {
        self.moves_applied += o.moves_applied;
        self.candidates += o.candidates;
        self.prunes += o.prunes;
        self.elapsed += o.elapsed;
    }
}

/// Exact weight of a vertex cycle; forbidden edges count as `INF` each.
pub(crate) fn exact_weight(inst: &GtspInstance, seq: &[usize]) -> i128 {
    let m = seq.len();
    (0..m).map(|i| inst.w(seq[i], seq[(i + 1) % m]) as i128).sum()
}

#[inline]
pub(crate) fn ew(inst: &GtspInstance, a: usize, b: usize) -> i128 {
    inst.w(a, b) as i128
}

/// Accepts a candidate weight against the incumbent.
#[inline]
pub(crate) fn better(new: i128, cur: i128) -> bool {
    new < cur && new < INF as i128
}

/// Outcome of re-optimising the affected positions of a candidate.
pub(crate) enum LocalGain {
    /// Weight reduction and the new vertices by position.
    Runs(i128, Vec<(usize, usize)>),
    /// Every position is affected; use full CO instead.
    Whole,
}

/// Re-optimises the vertices at the `affected` positions of the candidate
/// cycle `at(0..m)`; each maximal run of affected positions is solved as a
/// shortest path between its two unaffected neighbours.
pub(crate) fn local_gain(inst: &GtspInstance, m: usize, at: &dyn Fn(usize) -> usize, affected: &[usize]) -> LocalGain {
    let mut mark = vec![false; m];
    for &p in affected {
        mark[p % m] = true;
    }
    let Some(free) = (0..m).find(|&p| !mark[p]) else {
        return LocalGain::Whole;
    };
    let mut gain = 0i128;
    let mut changes = Vec::new();
    let mut k = 1;
    while k <= m {
        let p = (free + k) % m;
        if !mark[p] {
            k += 1;
            continue;
        }
        let start = p;
        let mut len = 0;
        while mark[(start + len) % m] {
            len += 1;
        }
        let left = at((start + m - 1) % m);
        let right = at((start + len) % m);
        let cur: Vec<usize> = (0..len).map(|i| at((start + i) % m)).collect();
        let mut cur_w = ew(inst, left, cur[0]) + ew(inst, cur[len - 1], right);
        for i in 1..len {
            cur_w += ew(inst, cur[i - 1], cur[i]);
        }
        let clusters: Vec<usize> = cur.iter().map(|&v| inst.cluster_of(v)).collect();
        let (best, verts) = best_fixed_path(inst, left, &clusters, right);
        if (best as i128) < cur_w && best < INF {
            gain += cur_w - best as i128;
            for (i, &v) in verts.iter().enumerate() {
                changes.push(((start + i) % m, v));
            }
        }
        k += len;
    }
    LocalGain::Runs(gain, changes)
}

/// A move on a vertex cycle stored as a position array.
pub(crate) trait Move {
    /// Vertex at position `k` of the candidate.
    fn at(&self, seq: &[usize], k: usize) -> usize;
    /// Candidate positions whose clusters touch a new edge.
    fn affected(&self) -> Vec<usize>;
    fn apply(&self, seq: &mut Vec<usize>);
}

/// Evaluates `mv` (basic weight change `delta`) under `ad`. Returns the new
/// sequence and its exact weight when the candidate is accepted.
pub(crate) fn try_move(
    inst: &GtspInstance,
    seq: &[usize],
    w: i128,
    delta: i128,
    mv: &dyn Move,
    ad: Adaptation,
) -> Option<(Vec<usize>, i128)> {
    let m = seq.len();
    let mut new_w = w + delta;
    let mut changes = Vec::new();
    let mut whole = None;
    if ad.local() {
        match local_gain(inst, m, &|k| mv.at(seq, k), &mv.affected()) {
            LocalGain::Runs(g, ch) => {
                new_w -= g;
                changes = ch;
            }
            LocalGain::Whole => {
                let mut s = seq.to_vec();
                mv.apply(&mut s);
                let (_, cs) = crate::co::co_of_seq(inst, &s);
                let cw = exact_weight(inst, &cs);
                if cw <= exact_weight(inst, &s) {
                    new_w = cw;
                    whole = Some(cs);
                } else {
                    new_w = exact_weight(inst, &s);
                    whole = Some(s);
                }
            }
        }
    }
    if !better(new_w, w) {
        return None;
    }
    let mut s = match whole {
        Some(cs) => cs,
        None => {
            let mut s = seq.to_vec();
            mv.apply(&mut s);
            for (p, v) in changes {
                s[p] = v;
            }
            s
        }
    };
    if ad.co_after() {
        let cs = crate::co::co_of_seq(inst, &s).1;
        let cw = exact_weight(inst, &cs);
        if cw <= new_w {
            s = cs;
            new_w = cw;
        }
    }
    debug_assert_eq!(new_w, exact_weight(inst, &s));
    Some((s, new_w))
}
