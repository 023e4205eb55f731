//! Chain and Multichain: repeated local search from perturbed copies of
//! the best assignments found so far.

use map_core::{Assignment, MapInstance, Weight};
use map_search::LocalSearch;
use rand::Rng;

use crate::clock::Timer;
use crate::perturb::{chain_perturb_size, random_p_opt};

#[derive(Debug, Clone)]
pub struct ChainOutcome {
    pub best: Assignment,
    pub weight: Weight,
    pub local_searches: usize,
    /// Multichain only: the budget ran out before the first pool was done
    /// and `best` is the initial assignment.
    pub truncated: bool,
    pub elapsed: f64,
}

/// LS, record the best, perturb; until the timer expires. The first local
/// search always runs.
pub fn chain<R: Rng>(inst: &MapInstance, ls: &LocalSearch, init: &Assignment, timer: &Timer, rng: &mut R) -> ChainOutcome {
    let p = chain_perturb_size(inst.n());
    let mut best = init.clone();
    let mut best_w = best.weight(inst);
    let mut cur = init.clone();
    let mut calls = 0;
    loop {
        cur = ls.run(inst, &cur);
        calls += 1;
        let w = cur.weight(inst);
        if w < best_w {
            best_w = w;
            best = cur.clone();
        }
        if timer.expired() {
            break;
        }
        cur = random_p_opt(&cur, p, rng);
    }
    ChainOutcome { best, weight: best_w, local_searches: calls, truncated: false, elapsed: timer.elapsed() }
}

/// Keeps `c` elites; the i-th best (1-based) spawns `c - i + 1` improved
/// perturbations, `c(c+1)/2` local searches per iteration.
pub fn multichain<R: Rng>(
    inst: &MapInstance,
    ls: &LocalSearch,
    init: &Assignment,
    timer: &Timer,
    c: usize,
    rng: &mut R,
) -> ChainOutcome {
    let c = c.max(1);
    let p = chain_perturb_size(inst.n());
    let per_round = c * (c + 1) / 2;
    let mut best = init.clone();
    let mut best_w = best.weight(inst);
    let mut calls = 0;
    let mut pool = Vec::with_capacity(per_round);
    for _ in 0..per_round {
        if timer.expired() {
            return ChainOutcome { best, weight: best_w, local_searches: calls, truncated: true, elapsed: timer.elapsed() };
        }
        let a = ls.run(inst, &random_p_opt(&best, p, rng));
        calls += 1;
        pool.push((a.weight(inst), a));
    }
    loop {
        pool.sort();
        pool.truncate(c);
        if pool[0].0 < best_w {
            best_w = pool[0].0;
            best = pool[0].1.clone();
        }
        if timer.expired() {
            break;
        }
        let elites = std::mem::take(&mut pool);
        'spawn: for (i, (_, e)) in elites.iter().enumerate() {
            for _ in 0..c - i {
                let a = ls.run(inst, &random_p_opt(e, p, rng));
                calls += 1;
                pool.push((a.weight(inst), a));
                if timer.expired() {
                    break 'spawn;
                }
            }
        }
    }
    ChainOutcome { best, weight: best_w, local_searches: calls, truncated: false, elapsed: timer.elapsed() }
}
