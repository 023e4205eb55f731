//! Memetic algorithm with a fixed running time. The population size is
//! derived from the budget and the mean local search time measured while
//! the first generation is built.

use map_core::{Assignment, MapInstance, Weight};
use map_search::{greedy_construct, trivial_construct, DvScope, LocalSearch, VndCombo, Vectorwise};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::clock::{Clock, Timer};
use crate::crossover::crossover;
use crate::perturb::{perturb, perturb_count};
use crate::sizer::PopulationSizer;

#[derive(Debug, Clone, PartialEq)]
pub struct MapMaConfig {
    /// Perturbation strength for the first generation.
    pub mu_f: f64,
    /// Mutation probability and strength.
    pub p_m: f64,
    pub mu_m: f64,
    /// Produced-to-selected ratio.
    pub l: usize,
    pub sizer: PopulationSizer,
    /// `None` picks by family: sdvv for independent weights, sdv for
    /// decomposable ones.
    pub local_search: Option<LocalSearch>,
    pub clock: Clock,
    /// Fixes the population size instead of sizing it from `t`.
    pub fixed_size: Option<usize>,
}

impl Default for MapMaConfig {
    fn default() -> Self {
        MapMaConfig {
            mu_f: 0.2,
            p_m: 0.5,
            mu_m: 0.1,
            l: 3,
            sizer: PopulationSizer::default(),
            local_search: None,
            clock: Clock::Wall,
            fixed_size: None,
        }
    }
}

/// The local search suited to the instance's family tag. Untagged
/// instances count as independent.
pub fn local_search_for(inst: &MapInstance) -> LocalSearch {
    match inst.family() {
        Some(f) if f.is_decomposable() => LocalSearch::Dv(DvScope::SDv),
        _ => {
            LocalSearch::Vnd(VndCombo::new(DvScope::SDv, Vectorwise::VOpt).expect("sdvv is a valid combination"))
        }
    }
}

impl MapMaConfig {
    pub fn local_search(&self, inst: &MapInstance) -> LocalSearch {
        self.local_search.unwrap_or_else(|| local_search_for(inst))
    }
}

#[derive(Debug, Clone)]
pub struct MapMaOutcome {
    pub best: Assignment,
    pub weight: Weight,
    pub generations: usize,
    /// Size of the first generation.
    pub first_size: usize,
    /// Population size of later generations.
    pub population: usize,
    /// Mean local search time measured during the first generation.
    pub t: f64,
    pub local_searches: usize,
    pub elapsed: f64,
    /// Mean local search time over generation 5, when it completed.
    pub t_recheck: Option<f64>,
    /// Best weight after each generation, the first generation included.
    pub history: Vec<Weight>,
}

struct Run<'a> {
    inst: &'a MapInstance,
    ls: LocalSearch,
    timer: Timer,
    calls: usize,
    best: Assignment,
    best_w: Weight,
}

impl Run<'_> {
    fn improve(&mut self, a: &Assignment) -> (Weight, Assignment) {
        let a = self.ls.run(self.inst, a);
        self.calls += 1;
        let w = a.weight(self.inst);
        if w < self.best_w {
            self.best_w = w;
            self.best = a.clone();
        }
        (w, a)
    }
}

/// The `m` lightest distinct assignments, lightest first.
fn select(mut pool: Vec<(Weight, Assignment)>, m: usize) -> Vec<(Weight, Assignment)> {
    pool.sort();
    pool.dedup_by(|a, b| a.1 == b.1);
    pool.truncate(m);
    pool
}

/// Runs for `tau` seconds on the configured clock. At least one local
/// search is done, and generations stop between local search calls once
/// the budget is used up.
pub fn ma_run(inst: &MapInstance, tau: f64, seed: u64, config: &MapMaConfig) -> MapMaOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let timer = Timer::start(config.clock, tau);
    let start = greedy_construct(inst).unwrap_or_else(|_| trivial_construct(inst));
    let start_w = start.weight(inst);
    let mut run = Run { inst, ls: config.local_search(inst), timer, calls: 0, best: start, best_w: start_w };
    let n = inst.n();

    let greedy = run.best.clone();
    let first_count = perturb_count(n, config.mu_f);
    let mut gen = Vec::new();
    let mut m;
    loop {
        let x = perturb(&greedy, first_count, &mut rng);
        gen.push(run.improve(&x));
        let t = run.timer.elapsed() / gen.len() as f64;
        m = config.fixed_size.unwrap_or_else(|| config.sizer.m_opt(tau, t));
        if gen.len() >= m || run.timer.expired() {
            break;
        }
    }
    let first_size = gen.len();
    let t = run.timer.elapsed() / first_size as f64;
    let mut gen = select(gen, usize::MAX);
    let mut history = vec![run.best_w];
    let mut generations = 1;
    let mut t_recheck = None;
    let mutation_count = perturb_count(n, config.mu_m);

    while !run.timer.expired() {
        // l m_{i+1} - m_i must be even: drop the worst otherwise.
        if (config.l * m).saturating_sub(gen.len()) % 2 == 1 && gen.len() > 1 {
            gen.pop();
        }
        let pairs = (config.l * m).saturating_sub(gen.len()) / 2;
        let mark = (generations == 4).then(|| (run.timer.elapsed(), run.calls));
        let mut pool = Vec::with_capacity(gen.len() + 2 * pairs);
        pool.push(gen[0].clone());
        let mut expired = false;
        for (w, g) in &gen[1..] {
            if !expired && rng.gen_bool(config.p_m) {
                let x = perturb(g, mutation_count, &mut rng);
                pool.push(run.improve(&x));
                expired = run.timer.expired();
            } else {
                pool.push((*w, g.clone()));
            }
        }
        for _ in 0..pairs {
            if expired {
                break;
            }
            let (u, v) = pick_parents(&gen, &mut rng);
            let (cx, cy) = crossover(u, v, &mut rng);
            pool.push(run.improve(&cx));
            pool.push(run.improve(&cy));
            expired = run.timer.expired();
        }
        gen = select(pool, m);
        generations += 1;
        history.push(run.best_w);
        if expired {
            break;
        }
        if let Some((t0, c0)) = mark {
            if run.calls > c0 {
                t_recheck = Some((run.timer.elapsed() - t0) / (run.calls - c0) as f64);
            }
        }
    }

    MapMaOutcome {
        weight: run.best_w,
        best: run.best,
        generations,
        first_size,
        population: m,
        t,
        local_searches: run.calls,
        elapsed: run.timer.elapsed(),
        t_recheck,
        history,
    }
}

fn pick_parents<'a, R: Rng>(gen: &'a [(Weight, Assignment)], rng: &mut R) -> (&'a Assignment, &'a Assignment) {
    if gen.len() < 2 {
        return (&gen[0].1, &gen[0].1);
    }
    let two: Vec<_> = gen.choose_multiple(rng, 2).collect();
    (&two[0].1, &two[1].1)
}
