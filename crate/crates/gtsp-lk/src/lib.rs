//! Lin-Kernighan adaptations for the GTSP.
//!
//! The tour is broken at an edge `e -> b` into a path `b .. e`. The path is
//! improved by moves that drop an edge `x -> y`, add `x -> e` and reverse
//! the tail, so `y` becomes the new end. After every acceptable move the
//! path is closed up; the first closed tour lighter than the original is
//! taken. The first `alpha` levels backtrack over every edge, deeper levels
//! follow the best gain only.
//!
//! Variants differ in how vertices are reselected around a move: Basic
//! keeps them, Closest reselects `x`, Shortest reselects `x` and `e`, and
//! Global scores each cluster order by its exact shortest path.

pub mod global;

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use gtsp_core::{GtspError, GtspInstance, Result, Tour, INF};
use gtsp_search::{cluster_optimize, Refinements};

use crate::global::{best_open_path, rearranged_weights};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LkVariant {
    Basic,
    Closest,
    Shortest,
    Global,
}

impl LkVariant {
    pub fn letter(self) -> char {
        match self {
            LkVariant::Basic => 'B',
            LkVariant::Closest => 'C',
            LkVariant::Shortest => 'S',
            LkVariant::Global => 'G',
        }
    }
}

pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LkConfig {
    pub variant: LkVariant,
    /// Backtracking depth, at least 1.
    pub alpha: usize,
    /// `GainIsAcceptable` implementation, 1 to 5.
    pub gain_option: u8,
    /// Run CO on every improved tour. Implied by the Global variant.
    pub co_on_improve: bool,
    /// Gain evaluations allowed per call before the descent is cut short.
    pub budget: u64,
    /// Skip Shortest-variant gain evaluations that cannot beat the best
    /// gain found so far (only on the non-backtracking levels).
    pub shortest_skip: bool,
    /// Record every gain-acceptance decision.
    pub trace: bool,
}

impl LkConfig {
    pub fn new(variant: LkVariant, alpha: usize, gain_option: u8, co_on_improve: bool) -> Self {
        LkConfig {
            variant,
            alpha,
            gain_option,
            co_on_improve,
            budget: DEFAULT_BUDGET,
            shortest_skip: true,
            trace: false,
        }
    }

    pub fn validate(&self, inst: &GtspInstance) -> Result<()> {
        if self.alpha == 0 {
            return Err(GtspError::InvalidConfig("backtracking depth must be at least 1".into()));
        }
        if !(1..=5).contains(&self.gain_option) {
            return Err(GtspError::InvalidConfig(format!("gain option {} is not in 1..=5", self.gain_option)));
        }
        if self.variant != LkVariant::Global && !inst.is_symmetric() {
            return Err(GtspError::InvalidConfig(format!(
                "LK variant {} needs a symmetric instance; use the Global variant",
                self.variant.letter()
            )));
        }
        Ok(())
    }

    fn co(&self) -> bool {
        self.co_on_improve || self.variant == LkVariant::Global
    }
}

impl fmt::Display for LkConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}-{}", self.variant.letter(), self.gain_option, self.alpha)?;
        if self.co_on_improve && self.variant != LkVariant::Global {
            write!(f, "co")?;
        }
        Ok(())
    }
}

/// Parses `<variant><gain>-<alpha>[co]`, e.g. `S5-2co` or `G4-3`.
impl FromStr for LkConfig {
    type Err = GtspError;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || GtspError::InvalidConfig(format!("cannot parse LK config '{s}' (expected e.g. S5-2co)"));
        let mut chars = s.chars();
        let variant = match chars.next().ok_or_else(bad)? {
            'B' | 'b' => LkVariant::Basic,
            'C' | 'c' => LkVariant::Closest,
            'S' | 's' => LkVariant::Shortest,
            'G' | 'g' | 'E' | 'e' => LkVariant::Global,
            _ => return Err(bad()),
        };
        let rest = chars.as_str();
        let (gain, rest) = rest.split_once('-').ok_or_else(bad)?;
        let (alpha, co) = match rest.strip_suffix("co") {
            Some(a) => (a, true),
            None => (rest, false),
        };
        let gain_option: u8 = gain.parse().map_err(|_| bad())?;
        let alpha: usize = alpha.parse().map_err(|_| bad())?;
        let cfg = LkConfig::new(variant, alpha, gain_option, co || variant == LkVariant::Global);
        if alpha == 0 || !(1..=5).contains(&gain_option) {
            return Err(bad());
        }
        Ok(cfg)
    }
}

/// One `GainIsAcceptable` decision.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TraceEvent {
    /// Index of the outer-loop iteration (one per broken tour edge).
    pub iteration: u64,
    pub depth: usize,
    /// Path position of `x`.
    pub at: usize,
    /// Weight of the path after the move.
    pub path_weight: i128,
    pub accepted: bool,
}

#[derive(Debug, Clone, Default)]
pub struct LkStats {
    pub improvements: u64,
    pub gain_evaluations: u64,
    /// The candidate budget ran out.
    pub aborted: bool,
    pub elapsed: Duration,
    pub trace: Vec<TraceEvent>,
}

/// `GainIsAcceptable` for a path of weight `w_p` after breaking `x -> y`.
/// `w_p0` is the path at the start of the descent and `w_t` the tour.
pub fn gain_is_acceptable(option: u8, w_p: i128, w_p0: i128, w_t: i128, m: usize, w_xy: i128) -> bool {
    let m = m as i128;
    match option {
        1 => w_p < w_p0,
        2 => m * w_p + w_t < m * w_t,
        3 => w_p + w_xy < w_t,
        4 => w_p < w_t,
        5 => 2 * m * w_p + w_t < 2 * m * w_t,
        _ => false,
    }
}

fn ew(inst: &GtspInstance, a: usize, b: usize) -> i128 {
    inst.w(a, b) as i128
}

fn path_weight(inst: &GtspInstance, p: &[usize]) -> i128 {
    p.windows(2).map(|e| ew(inst, e[0], e[1])).sum()
}

fn cycle_weight(inst: &GtspInstance, p: &[usize]) -> i128 {
    path_weight(inst, p) + ew(inst, p[p.len() - 1], p[0])
}

fn canonical(inst: &GtspInstance, seq: &[usize]) -> Vec<usize> {
    let p = seq.iter().position(|&v| inst.cluster_of(v) == 0).unwrap_or(0);
    let mut s = seq.to_vec();
    s.rotate_left(p);
    s
}

fn co_cycle(inst: &GtspInstance, seq: &[usize]) -> (Vec<usize>, i128) {
    let t = Tour::from_sequence(inst, seq).expect("valid cycle");
    match cluster_optimize(inst, &t, Refinements::ALL) {
        Ok(o) => {
            let s = o.sequence();
            let w = cycle_weight(inst, &s);
            if w <= cycle_weight(inst, seq) {
                return (s, w);
            }
            (seq.to_vec(), cycle_weight(inst, seq))
        }
        Err(_) => (seq.to_vec(), cycle_weight(inst, seq)),
    }
}

#[derive(Clone)]
struct PathState {
    v: Vec<usize>,
    w: i128,
}

struct Ctx<'a> {
    inst: &'a GtspInstance,
    cfg: &'a LkConfig,
    m: usize,
    w_t: i128,
    w_p0: i128,
    iteration: u64,
    stats: LkStats,
}

impl Ctx<'_> {
    fn spend(&mut self) -> bool {
        self.stats.gain_evaluations += 1;
        if self.stats.gain_evaluations > self.cfg.budget {
            self.stats.aborted = true;
        }
        !self.stats.aborted
    }

    fn argmin<I: Iterator<Item = (usize, i128)>>(it: I) -> (usize, i128) {
        let mut best = (usize::MAX, i128::MAX);
        for (v, w) in it {
            if w < best.1 {
                best = (v, w);
            }
        }
        best
    }

    /// Exact gain of breaking `p[i] -> p[i+1]` (Global gains come from
    /// `table`).
    fn gain(&self, p: &PathState, i: usize, table: &[i128]) -> i128 {
        let inst = self.inst;
        let v = &p.v;
        let (x, y, e) = (v[i], v[i + 1], v[self.m - 1]);
        match self.cfg.variant {
            LkVariant::Basic => ew(inst, x, y) - ew(inst, x, e),
            LkVariant::Closest => {
                let pr = v[i - 1];
                let best = inst.cluster(inst.cluster_of(x)).iter().map(|&xx| ew(inst, pr, xx) + ew(inst, xx, e)).min().unwrap();
                ew(inst, pr, x) + ew(inst, x, y) - best
            }
            LkVariant::Shortest => {
                let pr = v[i - 1];
                let r = v[self.m - 2];
                ew(inst, pr, x) + ew(inst, x, y) + ew(inst, r, e) - self.shortest_link(pr, x, e, r).2
            }
            LkVariant::Global => table[i],
        }
    }

    /// Best `p -> x' -> e' -> r`.
    fn shortest_link(&self, pr: usize, x: usize, e: usize, r: usize) -> (usize, usize, i128) {
        let inst = self.inst;
        let mut best = (x, e, i128::MAX);
        for &xx in inst.cluster(inst.cluster_of(x)) {
            let a = ew(inst, pr, xx);
            for &ee in inst.cluster(inst.cluster_of(e)) {
                let w = a + ew(inst, xx, ee) + ew(inst, ee, r);
                if w < best.2 {
                    best = (xx, ee, w);
                }
            }
        }
        best
    }

    /// Upper bound on the Shortest gain at `i`.
    fn shortest_bound(&self, p: &PathState, i: usize) -> i128 {
        let inst = self.inst;
        let v = &p.v;
        let (pr, x, y, r, e) = (v[i - 1], v[i], v[i + 1], v[self.m - 2], v[self.m - 1]);
        let (cx, ce) = (inst.cluster_of(x), inst.cluster_of(e));
        ew(inst, pr, x) + ew(inst, x, y) + ew(inst, r, e)
            - inst.min_to(pr, cx) as i128
            - inst.pair_min(cx, ce) as i128
            - inst.min_from(ce, r) as i128
    }

    fn rearrange(&self, p: &PathState, i: usize, gain: i128) -> PathState {
        let inst = self.inst;
        let m = self.m;
        let mut v = p.v.clone();
        v[i + 1..].reverse();
        match self.cfg.variant {
            LkVariant::Basic => {}
            LkVariant::Closest => {
                let pr = v[i - 1];
                let e = v[i + 1];
                let (xx, _) = Self::argmin(
                    inst.cluster(inst.cluster_of(v[i])).iter().map(|&xx| (xx, ew(inst, pr, xx) + ew(inst, xx, e))),
                );
                v[i] = xx;
            }
            LkVariant::Shortest => {
                let (xx, ee, _) = self.shortest_link(p.v[i - 1], p.v[i], p.v[m - 1], p.v[m - 2]);
                v[i] = xx;
                v[i + 1] = ee;
            }
            LkVariant::Global => {
                let order: Vec<usize> = v.iter().map(|&u| inst.cluster_of(u)).collect();
                let (w, verts) = best_open_path(inst, &order);
                debug_assert_eq!(w as i128, p.w - gain);
                return PathState { v: verts, w: w as i128 };
            }
        }
        PathState { w: p.w - gain, v }
    }

    fn close_up(&self, p: &PathState) -> (Vec<usize>, i128) {
        let inst = self.inst;
        let m = self.m;
        match self.cfg.variant {
            LkVariant::Basic => (p.v.clone(), p.w + ew(inst, p.v[m - 1], p.v[0])),
            LkVariant::Closest | LkVariant::Shortest => {
                let (b, second, q, e) = (p.v[0], p.v[1], p.v[m - 2], p.v[m - 1]);
                let mut best = (b, e, i128::MAX);
                for &ee in inst.cluster(inst.cluster_of(e)) {
                    for &bb in inst.cluster(inst.cluster_of(b)) {
                        let w = ew(inst, q, ee) + ew(inst, ee, bb) + ew(inst, bb, second);
                        if w < best.2 {
                            best = (bb, ee, w);
                        }
                    }
                }
                let mut v = p.v.clone();
                v[0] = best.0;
                v[m - 1] = best.1;
                let w = p.w - ew(inst, b, second) - ew(inst, q, e) + best.2;
                (v, w)
            }
            LkVariant::Global => co_cycle(inst, &p.v),
        }
    }

    fn acceptable(&mut self, p: &PathState, old: &PathState, i: usize, depth: usize) -> bool {
        let inst = self.inst;
        let w_xy = match self.cfg.variant {
            LkVariant::Global => inst.pair_min(inst.cluster_of(old.v[i]), inst.cluster_of(old.v[i + 1])) as i128,
            _ => ew(inst, old.v[i], old.v[i + 1]),
        };
        let ok = gain_is_acceptable(self.cfg.gain_option, p.w, self.w_p0, self.w_t, self.m, w_xy);
        if self.cfg.trace {
            let ev = TraceEvent { iteration: self.iteration, depth, at: i, path_weight: p.w, accepted: ok };
            self.stats.trace.push(ev);
        }
        ok
    }

    /// `ImprovePath`. `restricted` marks clusters whose outgoing path edge
    /// may no longer be broken.
    fn improve(&mut self, p: &PathState, depth: usize, restricted: &mut [bool]) -> Option<(Vec<usize>, i128)> {
        let inst = self.inst;
        let m = self.m;
        if m < 4 {
            return None;
        }
        let table: Vec<i128> = if self.cfg.variant == LkVariant::Global {
            let order: Vec<usize> = p.v.iter().map(|&u| inst.cluster_of(u)).collect();
            rearranged_weights(inst, &order).into_iter().map(|w| p.w - w as i128).collect()
        } else {
            Vec::new()
        };
        let open = |i: usize| !restricted[inst.cluster_of(p.v[i])];
        let candidates: Vec<(usize, i128)> = if depth >= self.cfg.alpha {
            let mut best: Option<(usize, i128)> = None;
            for i in (1..=m - 3).filter(|&i| open(i)) {
                if self.cfg.variant == LkVariant::Shortest && self.cfg.shortest_skip {
                    if let Some((_, g)) = best {
                        if self.shortest_bound(p, i) <= g {
                            continue;
                        }
                    }
                }
                if !self.spend() {
                    return None;
                }
                let g = self.gain(p, i, &table);
                if best.map_or(true, |(_, bg)| g > bg) {
                    best = Some((i, g));
                }
            }
            best.into_iter().collect()
        } else {
            (1..=m - 3).filter(|&i| open(i)).map(|i| (i, i128::MIN)).collect()
        };
        for (i, g) in candidates {
            let g = if g == i128::MIN {
                if !self.spend() {
                    return None;
                }
                self.gain(p, i, &table)
            } else {
                g
            };
            if table.get(i).is_some_and(|_| p.w - g >= INF as i128) {
                continue;
            }
            let next = self.rearrange(p, i, g);
            if !self.acceptable(&next, p, i, depth) {
                continue;
            }
            let (tour, w) = self.close_up(&next);
            if w < self.w_t && w < INF as i128 {
                return Some((tour, w));
            }
            let cx = inst.cluster_of(p.v[i]);
            restricted[cx] = true;
            let found = self.improve(&next, depth + 1, restricted);
            restricted[cx] = false;
            if found.is_some() {
                return found;
            }
            if self.stats.aborted {
                return None;
            }
        }
        None
    }
}

/// The Global variant works on the shortest path through the cluster order.
fn start_state(inst: &GtspInstance, cfg: &LkConfig, v: Vec<usize>) -> PathState {
    if cfg.variant == LkVariant::Global {
        let order: Vec<usize> = v.iter().map(|&u| inst.cluster_of(u)).collect();
        let (w, v) = best_open_path(inst, &order);
        PathState { v, w: w as i128 }
    } else {
        let w = path_weight(inst, &v);
        PathState { v, w }
    }
}

pub fn lk(inst: &GtspInstance, t: &Tour, cfg: &LkConfig) -> Result<Tour> {
    Ok(lk_with(inst, t, cfg)?.0)
}

pub fn lk_with(inst: &GtspInstance, t: &Tour, cfg: &LkConfig) -> Result<(Tour, LkStats)> {
    cfg.validate(inst)?;
    let started = Instant::now();
    let m = inst.m();
    let mut seq = canonical(inst, &t.sequence());
    let mut w = cycle_weight(inst, &seq);
    if cfg.variant == LkVariant::Global {
        let (s, cw) = co_cycle(inst, &seq);
        seq = canonical(inst, &s);
        w = cw;
    }
    let mut ctx = Ctx { inst, cfg, m, w_t: w, w_p0: 0, iteration: 0, stats: LkStats::default() };
    if m >= 4 {
        let mut idle = 0;
        let mut k = 0;
        while idle < m && !ctx.stats.aborted {
            // Break e -> b with e = T_k, b = T_{k+1}.
            let mut v = seq.clone();
            v.rotate_left((k + 1) % m);
            let state = start_state(inst, cfg, v);
            ctx.w_t = w;
            ctx.w_p0 = state.w;
            let mut restricted = vec![false; m];
            let found = ctx.improve(&state, 1, &mut restricted);
            ctx.iteration += 1;
            match found {
                Some((tour, tw)) if tw < w => {
                    let (s, sw) = if cfg.co() { co_cycle(inst, &tour) } else { (tour, tw) };
                    seq = canonical(inst, &s);
                    w = sw;
                    ctx.stats.improvements += 1;
                    idle = 0;
                }
                _ => idle += 1,
            }
            k = (k + 1) % m;
        }
    }
    ctx.stats.elapsed = started.elapsed();
    Ok((Tour::from_sequence(inst, &seq)?, ctx.stats))
}

/// Runs `ImprovePath` once on the path `path` (the tour is the path closed
/// by its end-to-begin edge). `restricted` lists clusters whose outgoing
/// path edge may not be broken. Returns an improved tour, if one is found.
pub fn improve_path(
    inst: &GtspInstance,
    path: &[usize],
    depth: usize,
    restricted: &[usize],
    cfg: &LkConfig,
) -> Result<Option<Tour>> {
    cfg.validate(inst)?;
    let m = inst.m();
    let pw = path_weight(inst, path);
    let mut ctx = Ctx {
        inst,
        cfg,
        m,
        w_t: cycle_weight(inst, path),
        w_p0: pw,
        iteration: 0,
        stats: LkStats::default(),
    };
    let mut r = vec![false; m];
    for &c in restricted {
        r[c] = true;
    }
    let state = start_state(inst, cfg, path.to_vec());
    ctx.w_p0 = state.w;
    match ctx.improve(&state, depth, &mut r) {
        Some((tour, _)) => Ok(Some(Tour::from_sequence(inst, &tour)?)),
        None => Ok(None),
    }
}
