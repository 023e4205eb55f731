//! Memetic algorithm for the GTSP.
//!
//! The first generation is built by semirandom construction and local
//! improvement. Every later generation holds the `r` lightest tours of the
//! previous one plus `8r` crossover children and `2r` mutants, each locally
//! improved, with duplicates removed. The run stops once the incumbent has
//! been idle for long enough relative to its longest earlier idle streak.

pub mod construct;
pub mod improve;
pub mod operators;

use std::collections::HashSet;
use std::time::{Duration, Instant};

use gtsp_core::{GtspError, GtspInstance, Result, Tour, Weight};
use gtsp_search::{co_sequence, Refinements};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub use construct::{nn_construct, nn_start, semirandom_construct};
pub use improve::{local_improve, local_improve_with, pipeline, run_alone, Heuristic, ImproveOptions};
pub use operators::{crossover, crossover_at, mutate, mutate_at, mutation_lengths};

pub(crate) fn round_half_up(x: f64) -> usize {
    (x + 0.5).floor().max(0.0) as usize
}

#[derive(Debug, Clone, PartialEq)]
pub struct GtspMaConfig {
    /// Variant tuned for instances with forbidden (sentinel) edges.
    pub modified: bool,
    pub symmetric: bool,
    pub crossover_elite: f64,
    pub mutation_elite: f64,
    /// Lower-bound early decline inside the local search.
    pub lower_bounds: bool,
}

impl GtspMaConfig {
    pub fn for_instance(inst: &GtspInstance, modified: bool) -> Self {
        GtspMaConfig {
            modified,
            symmetric: inst.is_symmetric(),
            crossover_elite: 0.33,
            mutation_elite: 0.75,
            lower_bounds: true,
        }
    }

    /// `2m`, doubled for asymmetric instances.
    pub fn first_generation(&self, m: usize) -> usize {
        if self.symmetric {
            2 * m
        } else {
            4 * m
        }
    }

    /// Reproduction count `r` for generation `g` (generations before it).
    pub fn r(&self, g: usize, m: usize) -> usize {
        let (gm, c) = if self.modified { (0.03, 8.0) } else { (0.05, 10.0) };
        round_half_up(0.2 * g as f64 + gm * m as f64 + c)
    }

    /// Minimum number of idle generations before the run may stop.
    pub fn idle_floor(&self, m: usize) -> f64 {
        let base = if self.modified { 0.025 * m as f64 + 2.0 } else { 0.05 * m as f64 + 5.0 };
        if self.symmetric {
            base
        } else {
            base + 5.0
        }
    }

    pub fn validate(&self, inst: &GtspInstance) -> Result<()> {
        if self.symmetric != inst.is_symmetric() {
            return Err(GtspError::InvalidConfig(format!(
                "configuration is for {} instances",
                if self.symmetric { "symmetric" } else { "asymmetric" }
            )));
        }
        for (name, f) in [("crossover", self.crossover_elite), ("mutation", self.mutation_elite)] {
            if !(f > 0.0 && f <= 1.0) {
                return Err(GtspError::InvalidConfig(format!("{name} elite fraction {f} outside (0, 1]")));
            }
        }
        Ok(())
    }
}

/// Idle-generation bookkeeping. `I_cur` counts the generations that kept
/// the current incumbent weight, `I_max` the longest such run for any
/// earlier incumbent.
#[derive(Debug, Clone, Default)]
pub struct IdleCounter {
    pub best: Option<Weight>,
    pub cur: usize,
    pub max: usize,
}

impl IdleCounter {
    /// Records a generation's best weight; true when the run should stop.
    pub fn observe(&mut self, w: Weight, floor: f64) -> bool {
        match self.best {
            Some(b) if w >= b => self.cur += 1,
            _ => {
                if self.best.is_some() {
                    self.max = self.max.max(self.cur);
                }
                self.best = Some(w);
                self.cur = 0;
            }
        }
        self.cur as f64 >= (1.5 * self.max as f64).max(floor)
    }
}

#[derive(Debug, Clone)]
pub struct MaOutcome {
    pub best: Tour,
    pub weight: Weight,
    pub generations: usize,
    /// Best weight of every generation, the first one included.
    pub history: Vec<Weight>,
    pub local_searches: usize,
    pub elapsed: Duration,
    pub timed_out: bool,
}

struct Generation {
    tours: Vec<(Weight, Vec<usize>)>,
}

impl Generation {
    fn from(mut all: Vec<(Weight, Vec<usize>)>) -> Self {
        let mut seen = HashSet::new();
        all.retain(|(_, s)| seen.insert(s.clone()));
        all.sort();
        Generation { tours: all }
    }

    fn elite<R: Rng>(&self, frac: f64, rng: &mut R) -> &[usize] {
        let k = round_half_up(frac * self.tours.len() as f64).clamp(1, self.tours.len());
        &self.tours[rng.gen_range(0..k)].1
    }
}

pub fn ma_run(inst: &GtspInstance, seed: u64, cfg: &GtspMaConfig, time_limit: Option<Duration>) -> Result<MaOutcome> {
    cfg.validate(inst)?;
    let started = Instant::now();
    let m = inst.m();
    if m <= 3 {
        return Ok(small(inst, started));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let opts = ImproveOptions { modified: cfg.modified, lower_bounds: cfg.lower_bounds };
    let out_of_time = |started: &Instant| time_limit.is_some_and(|t| started.elapsed() >= t);
    let mut searches = 0;
    let mut timed_out = false;

    let mut first = Vec::new();
    for _ in 0..cfg.first_generation(m) {
        let t = local_improve_with(inst, &semirandom_construct(inst, &mut rng), &opts);
        searches += 1;
        first.push((t.weight(inst), t.sequence()));
        if out_of_time(&started) {
            timed_out = true;
            break;
        }
    }
    let mut gen = Generation::from(first);
    let mut history = vec![gen.tours[0].0];
    let mut idle = IdleCounter::default();
    idle.observe(gen.tours[0].0, cfg.idle_floor(m));
    let mut g = 1;
    while !timed_out {
        let r = cfg.r(g, m);
        let mut next: Vec<(Weight, Vec<usize>)> = gen.tours.iter().take(r).cloned().collect();
        for op in 0..10 * r {
            let child = if op < 8 * r {
                let p = gen.elite(cfg.crossover_elite, &mut rng).to_vec();
                let q = gen.elite(cfg.crossover_elite, &mut rng).to_vec();
                let (p, q) = (Tour::from_sequence(inst, &p)?, Tour::from_sequence(inst, &q)?);
                crossover(inst, &p, &q, &mut rng)
            } else {
                let p = Tour::from_sequence(inst, gen.elite(cfg.mutation_elite, &mut rng))?;
                mutate(inst, &p, &mut rng)
            };
            let t = local_improve_with(inst, &child, &opts);
            searches += 1;
            next.push((t.weight(inst), t.sequence()));
            if out_of_time(&started) {
                timed_out = true;
                break;
            }
        }
        gen = Generation::from(next);
        history.push(gen.tours[0].0);
        g += 1;
        if idle.observe(gen.tours[0].0, cfg.idle_floor(m)) {
            break;
        }
    }
    let (weight, seq) = gen.tours[0].clone();
    Ok(MaOutcome {
        best: Tour::from_sequence(inst, &seq)?,
        weight,
        generations: g,
        history,
        local_searches: searches,
        elapsed: started.elapsed(),
        timed_out,
    })
}

/// At most two cyclic orders exist; try them all.
fn small(inst: &GtspInstance, started: Instant) -> MaOutcome {
    let orders: Vec<Vec<usize>> = match inst.m() {
        3 => vec![vec![0, 1, 2], vec![0, 2, 1]],
        m => vec![(0..m).collect()],
    };
    let (weight, seq) = orders
        .iter()
        .filter_map(|o| co_sequence(inst, o, Refinements::ALL).ok())
        .min()
        .unwrap_or_else(|| {
            let seq: Vec<usize> = (0..inst.m()).map(|c| inst.cluster(c)[0]).collect();
            (gtsp_core::INF, seq)
        });
    let best = Tour::from_sequence(inst, &seq).expect("one vertex per cluster");
    let weight = weight.min(best.weight(inst));
    MaOutcome {
        best,
        weight,
        generations: 0,
        history: vec![weight],
        local_searches: 0,
        elapsed: started.elapsed(),
        timed_out: false,
    }
}
