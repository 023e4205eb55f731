//! Fixed benchmark suites run over a small worker pool.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use gtsp_core::{random_euclidean, random_instance};

use crate::error::{BenchError, Result};
use crate::oracle;
use crate::report::{fill_scaled_errors, RunReport};
use crate::solve::{map_by_name, run, Budget, Named, Problem, Solver};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    /// Small GTSP and MAP instances, every solver family, exact optima.
    Smoke,
    /// Test-bed MAP instances with the metaheuristics only.
    Map,
}

impl std::str::FromStr for Suite {
    type Err = BenchError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "smoke" => Ok(Suite::Smoke),
            "map" => Ok(Suite::Map),
            _ => Err(BenchError::Usage(format!("unknown suite {s:?} (smoke, map)"))),
        }
    }
}

pub fn gtsp_solvers() -> Vec<Solver> {
    [
        "ma-gtsp",
        "ma-gtsp-mod",
        "ma-gtsp/rb",
        "ls:2opt-B",
        "ls:2opt-G",
        "ls:3opt-Bco",
        "ls:ins-Lco",
        "ls:swap-L",
        "ls:fo3",
        "lk:S5-2co",
        "lk:G4-1",
    ]
    .iter()
    .map(|s| s.parse().expect("built-in solver id"))
    .collect()
}

pub fn map_solvers() -> Vec<Solver> {
    [
        "construct:trivial",
        "construct:greedy",
        "construct:maxregret",
        "construct:rom",
        "construct:shiftrom",
        "map-ls:greedy+2opt",
        "map-ls:greedy+sdv",
        "map-ls:greedy+sdvv",
        "chain:greedy",
        "multichain4:greedy",
        "ma-map",
    ]
    .iter()
    .map(|s| s.parse().expect("built-in solver id"))
    .collect()
}

pub fn instances(suite: Suite) -> Result<Vec<Named>> {
    let mut out = Vec::new();
    match suite {
        Suite::Smoke => {
            out.push(Named::gtsp("euc-24-6".into(), random_euclidean(24, 6, 1)?));
            out.push(Named::gtsp("euc-35-8".into(), random_euclidean(35, 8, 2)?));
            out.push(Named::gtsp("sym-7".into(), random_instance(&[3, 4, 2, 3, 5, 2, 3], true, 100, 3)));
            for name in ["3r5", "4r4", "3g5", "4cq4", "3sr5", "3p5"] {
                out.push(map_by_name(name, 1)?);
            }
        }
        Suite::Map => {
            for name in ["3r40", "4r20", "5r15", "6r12", "3g40", "4cq20", "5sr15", "4p20"] {
                out.push(map_by_name(name, 1)?);
            }
        }
    }
    Ok(out)
}

/// Exact optimum when the oracle can afford it.
pub fn best_known(named: &Named) -> Option<i64> {
    match &named.problem {
        Problem::Gtsp(inst) => oracle::gtsp_optimum(inst, oracle::DEFAULT_LIMIT).ok().map(|(w, _)| w),
        Problem::Map(inst) => match inst.family().and_then(|f| f.known_min()) {
            Some(w) if w == inst.n() as i64 => Some(w),
            _ => oracle::map_optimum(inst, oracle::DEFAULT_LIMIT).ok().map(|(w, _)| w),
        },
    }
}

pub struct SuiteConfig {
    pub seeds: Vec<u64>,
    pub budget: Budget,
    pub jobs: usize,
}

/// Runs every fitting solver on every instance and seed. Rows come back
/// sorted by instance, solver and seed so the output does not depend on
/// scheduling. Infeasible runs are kept as rows.
pub fn run_suite(instances: &[Named], solvers: &[Solver], cfg: &SuiteConfig) -> Result<Vec<RunReport>> {
    let best: Vec<Option<i64>> = instances.iter().map(best_known).collect();
    let mut jobs = Vec::new();
    for (i, named) in instances.iter().enumerate() {
        let is_map = matches!(named.problem, Problem::Map(_));
        for s in solvers.iter().filter(|s| s.is_map() == is_map) {
            for &seed in &cfg.seeds {
                jobs.push((i, s, seed));
            }
        }
    }
    let next = AtomicUsize::new(0);
    let rows = Mutex::new(Vec::new());
    let first_err = Mutex::new(None);
    std::thread::scope(|scope| {
        for _ in 0..cfg.jobs.max(1) {
            scope.spawn(|| loop {
                let k = next.fetch_add(1, Ordering::Relaxed);
                let Some(&(i, solver, seed)) = jobs.get(k) else { break };
                let r = match run(&instances[i], solver, seed, cfg.budget) {
                    Ok((r, _)) => Ok(r),
                    Err(BenchError::Infeasible(r)) if r.is_some() => Ok(r.unwrap()),
                    Err(e) => Err(e),
                };
                match r {
                    Ok(r) => rows.lock().unwrap().push(r.with_best(best[i])),
                    Err(e) => {
                        first_err.lock().unwrap().get_or_insert(e);
                        next.store(jobs.len(), Ordering::Relaxed);
                    }
                }
            });
        }
    });
    if let Some(e) = first_err.into_inner().unwrap() {
        return Err(e);
    }
    let mut rows = rows.into_inner().unwrap();
    rows.sort_by(|a, b| (&a.instance, &a.solver, a.seed).cmp(&(&b.instance, &b.solver, b.seed)));
    fill_scaled_errors(&mut rows);
    Ok(rows)
}
