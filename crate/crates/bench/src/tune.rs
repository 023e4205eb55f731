//! Fitting the population-size constants from fixed-size MA runs.

use map_core::MapInstance;
use map_meta::{ma_run, perturb, perturb_count, tune_sizer, Clock, MapMaConfig, Timer, TuneCell, TuneResult};
use map_search::greedy_construct;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::report::scaled_error;
use crate::solve::Named;

pub struct TuneConfig {
    pub sizes: Vec<usize>,
    pub taus: Vec<f64>,
    pub clock: Clock,
    pub seed: u64,
    /// Local searches averaged for `t`.
    pub samples: usize,
}

/// Mean time of one local search started from a perturbed greedy solution.
pub fn mean_ls_time(inst: &MapInstance, clock: Clock, samples: usize, seed: u64) -> Result<f64> {
    let cfg = MapMaConfig::default();
    let ls = cfg.local_search(inst);
    let greedy = greedy_construct(inst)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let count = perturb_count(inst.n(), cfg.mu_f);
    let timer = Timer::unlimited(clock);
    for _ in 0..samples.max(1) {
        let mut a = greedy.clone();
        perturb(&mut a, count, &mut rng);
        ls.run(inst, &a);
    }
    Ok(timer.elapsed() / samples.max(1) as f64)
}

/// One cell per instance and budget, with the scaled error of every size.
pub fn collect_cells(instances: &[(String, MapInstance)], cfg: &TuneConfig) -> Result<Vec<TuneCell>> {
    let mut cells = Vec::new();
    for (name, inst) in instances {
        let t = mean_ls_time(inst, cfg.clock, cfg.samples, cfg.seed)?;
        for &tau in &cfg.taus {
            let weights: Vec<i64> = cfg
                .sizes
                .iter()
                .map(|&m| {
                    let ma = MapMaConfig { clock: cfg.clock, fixed_size: Some(m), ..Default::default() };
                    ma_run(inst, tau, cfg.seed, &ma).weight
                })
                .collect();
            let errors = cfg.sizes.iter().copied().zip(scaled_error(&weights).values).collect();
            cells.push(TuneCell { instance: name.clone(), tau, t, errors });
        }
    }
    Ok(cells)
}

pub fn tune(instances: &[Named], cfg: &TuneConfig, grid: [&[f64]; 3]) -> Result<(Vec<TuneCell>, TuneResult)> {
    let maps: Vec<(String, MapInstance)> = instances
        .iter()
        .filter_map(|n| match &n.problem {
            crate::Problem::Map(m) => Some((n.name.clone(), m.clone())),
            _ => None,
        })
        .collect();
    let cells = collect_cells(&maps, cfg)?;
    let res = tune_sizer(&cells, grid[0], grid[1], grid[2])?;
    Ok((cells, res))
}
