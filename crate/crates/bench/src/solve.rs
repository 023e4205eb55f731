//! Instances, solver descriptions and single runs.

use std::fmt;
use std::path::Path;
use std::str::FromStr;
use std::time::{Duration, Instant};

use gtsp_core::{load_tsplib, GtspInstance, Tour, INF};
use gtsp_lk::LkConfig;
use gtsp_ma::{semirandom_construct, GtspMaConfig};
use gtsp_reduce::Reduction;
use gtsp_search::{fragment_opt, insertion, swap, three_opt, two_opt, Adaptation};
use map_core::{Assignment, Family, InstanceName, MapInstance};
use map_meta::{chain, ma_run, multichain, Clock, MapMaConfig, Timer};
use map_search::{Construction, LocalSearch};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{BenchError, Result};
use crate::report::{RunReport, Weight};

pub enum Problem {
    Gtsp(GtspInstance),
    Map(MapInstance),
}

pub struct Named {
    pub name: String,
    pub problem: Problem,
}

impl Named {
    pub fn map(name: String, inst: MapInstance) -> Self {
        Named { name, problem: Problem::Map(inst) }
    }

    pub fn gtsp(name: String, inst: GtspInstance) -> Self {
        Named { name, problem: Problem::Gtsp(inst) }
    }
}

/// Reads a MAP dump (`MAP1` magic), a native GTSP file (`N:` header) or a
/// TSPLIB file with a `GTSP_SET_SECTION`.
pub fn load_instance(path: &Path) -> Result<Named> {
    let bytes = std::fs::read(path)?;
    let name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    if bytes.starts_with(b"MAP1") {
        return Ok(Named::map(name, map_core::io::read_instance(&bytes[..])?));
    }
    let text = String::from_utf8(bytes).map_err(|_| BenchError::Usage(format!("{} is neither a MAP dump nor text", path.display())))?;
    let first = text.lines().map(str::trim).find(|l| !l.is_empty() && !l.starts_with('#')).unwrap_or("");
    let inst = if first.starts_with("N:") || first.starts_with("N :") {
        gtsp_core::native::read_native(&text)?
    } else {
        load_tsplib(&text)?.into_instance()?
    };
    Ok(Named::gtsp(name, inst))
}

/// Generates a test-bed MAP instance such as `5r12` with the given index.
pub fn map_by_name(name: &str, index: u64) -> Result<Named> {
    let n: InstanceName = name.parse()?;
    let inst = map_core::generate(n.family, n.s, n.n, index)?;
    Ok(Named::map(format!("{n}#{index}"), inst))
}

/// A GTSP neighborhood search: `2opt-G`, `3opt-B`, `ins-Lco`, `swap-L`, `fo5`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GtspSearch {
    TwoOpt(Adaptation),
    ThreeOpt(Adaptation),
    Insertion(Adaptation),
    Swap(Adaptation),
    Fragment(usize),
}

impl GtspSearch {
    pub fn run(&self, inst: &GtspInstance, t: &Tour) -> Result<Tour> {
        Ok(match *self {
            GtspSearch::TwoOpt(a) => two_opt(inst, t, a),
            GtspSearch::ThreeOpt(a) => three_opt(inst, t, a),
            GtspSearch::Insertion(a) => insertion(inst, t, a),
            GtspSearch::Swap(a) => swap(inst, t, a),
            GtspSearch::Fragment(k) => fragment_opt(inst, t, k)?,
        })
    }
}

impl fmt::Display for GtspSearch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GtspSearch::TwoOpt(a) => write!(f, "2opt-{}", a.suffix()),
            GtspSearch::ThreeOpt(a) => write!(f, "3opt-{}", a.suffix()),
            GtspSearch::Insertion(a) => write!(f, "ins-{}", a.suffix()),
            GtspSearch::Swap(a) => write!(f, "swap-{}", a.suffix()),
            GtspSearch::Fragment(k) => write!(f, "fo{k}"),
        }
    }
}

impl FromStr for GtspSearch {
    type Err = BenchError;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || BenchError::Usage(format!("unknown GTSP search {s:?} (expected e.g. 2opt-G, ins-Lco, fo5)"));
        if let Some(k) = s.strip_prefix("fo") {
            return k.parse().map(GtspSearch::Fragment).map_err(|_| bad());
        }
        let (name, ad) = s.split_once('-').ok_or_else(bad)?;
        let ad: Adaptation = ad.parse().map_err(|_| bad())?;
        match name {
            "2opt" => Ok(GtspSearch::TwoOpt(ad)),
            "3opt" => Ok(GtspSearch::ThreeOpt(ad)),
            "ins" => Ok(GtspSearch::Insertion(ad)),
            "swap" => Ok(GtspSearch::Swap(ad)),
            _ => Err(bad()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Solver {
    MaGtsp { modified: bool, reduce: Reduction },
    GtspLocal { search: GtspSearch, reduce: Reduction },
    Lk { config: LkConfig, reduce: Reduction },
    Construct(Construction),
    MapLocal { init: Construction, ls: LocalSearch },
    Chain { init: Construction, ls: Option<LocalSearch> },
    Multichain { init: Construction, ls: Option<LocalSearch>, c: usize },
    MaMap { ls: Option<LocalSearch> },
}

fn reduce_tag(r: Reduction) -> &'static str {
    match r {
        Reduction::None => "",
        Reduction::Vertices => "/rv",
        Reduction::Edges => "/re",
        Reduction::Both => "/rb",
    }
}

fn ls_tag(ls: &Option<LocalSearch>) -> String {
    ls.map_or_else(|| "auto".into(), |l| l.to_string())
}

impl Solver {
    pub fn is_map(&self) -> bool {
        !matches!(self, Solver::MaGtsp { .. } | Solver::GtspLocal { .. } | Solver::Lk { .. })
    }

    /// Stable id used in reports.
    pub fn id(&self) -> String {
        match self {
            Solver::MaGtsp { modified, reduce } => {
                format!("ma-gtsp{}{}", if *modified { "-mod" } else { "" }, reduce_tag(*reduce))
            }
            Solver::GtspLocal { search, reduce } => format!("ls:{search}{}", reduce_tag(*reduce)),
            Solver::Lk { config, reduce } => format!("lk:{config}{}", reduce_tag(*reduce)),
            Solver::Construct(c) => format!("construct:{c}"),
            Solver::MapLocal { init, ls } => format!("map-ls:{init}+{ls}"),
            Solver::Chain { init, ls } => format!("chain:{init}+{}", ls_tag(ls)),
            Solver::Multichain { init, ls, c } => format!("multichain{c}:{init}+{}", ls_tag(ls)),
            Solver::MaMap { ls } => format!("ma-map:{}", ls_tag(ls)),
        }
    }
}

fn parse_reduce(tag: &str) -> Option<Reduction> {
    match tag {
        "" => Some(Reduction::None),
        "/rv" => Some(Reduction::Vertices),
        "/re" => Some(Reduction::Edges),
        "/rb" => Some(Reduction::Both),
        _ => None,
    }
}

fn parse_ls(s: &str) -> Result<Option<LocalSearch>> {
    if s == "auto" {
        Ok(None)
    } else {
        Ok(Some(s.parse()?))
    }
}

fn init_and_ls(rest: &str) -> Result<(Construction, Option<LocalSearch>)> {
    let (init, ls) = rest.split_once('+').unwrap_or((rest, "auto"));
    Ok((init.parse()?, parse_ls(ls)?))
}

impl FromStr for Solver {
    type Err = BenchError;

    /// Parses ids as produced by [`Solver::id`]; the `+ls` part of chain
    /// ids and the `:ls` part of `ma-map` may be left out.
    fn from_str(id: &str) -> Result<Self> {
        let bad = || BenchError::Usage(format!("unknown solver {id:?}"));
        let (head, tail) = id.split_once(':').unwrap_or((id, ""));
        let split_reduce = |t: &str| -> Result<(String, Reduction)> {
            match t.find('/') {
                Some(i) => Ok((t[..i].to_string(), parse_reduce(&t[i..]).ok_or_else(bad)?)),
                None => Ok((t.to_string(), Reduction::None)),
            }
        };
        Ok(match head {
            _ if head.starts_with("ma-gtsp") => {
                let (name, reduce) = split_reduce(head)?;
                let modified = match name.as_str() {
                    "ma-gtsp" => false,
                    "ma-gtsp-mod" => true,
                    _ => return Err(bad()),
                };
                if !tail.is_empty() {
                    return Err(bad());
                }
                Solver::MaGtsp { modified, reduce }
            }
            "ls" => {
                let (search, reduce) = split_reduce(tail)?;
                Solver::GtspLocal { search: search.parse()?, reduce }
            }
            "lk" => {
                let (cfg, reduce) = split_reduce(tail)?;
                Solver::Lk { config: cfg.parse().map_err(|_| bad())?, reduce }
            }
            "construct" => Solver::Construct(tail.parse()?),
            "map-ls" => {
                let (init, ls) = tail.split_once('+').ok_or_else(bad)?;
                Solver::MapLocal { init: init.parse()?, ls: ls.parse()? }
            }
            "chain" => {
                let (init, ls) = init_and_ls(tail)?;
                Solver::Chain { init, ls }
            }
            "ma-map" => Solver::MaMap { ls: if tail.is_empty() { None } else { parse_ls(tail)? } },
            _ if head.starts_with("multichain") => {
                let c = head["multichain".len()..].parse().map_err(|_| bad())?;
                if c == 0 {
                    return Err(bad());
                }
                let (init, ls) = init_and_ls(tail)?;
                Solver::Multichain { init, ls, c }
            }
            _ => return Err(bad()),
        })
    }
}

/// Time budget and clock for one run. GTSP runs ignore `seconds` on the
/// work clock (their own termination rule ends them) and report work as
/// local improvement calls.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Budget {
    pub seconds: Option<f64>,
    pub clock: Clock,
}

impl Budget {
    pub fn wall(seconds: f64) -> Self {
        Budget { seconds: Some(seconds), clock: Clock::Wall }
    }

    pub fn work(seconds: f64) -> Self {
        Budget { seconds: Some(seconds), clock: Clock::work() }
    }

    fn budget_ms(&self) -> Option<u64> {
        self.seconds.map(|s| (s * 1000.0).round() as u64)
    }
}

/// Default budget for the MAP metaheuristics when none is given.
pub const DEFAULT_MAP_SECONDS: f64 = 1.0;

pub enum Solution {
    Tour(Tour),
    Assignment(Assignment),
}

fn ms(secs: f64) -> u64 {
    (secs * 1000.0).round() as u64
}

/// Runs `solver` once. A GTSP run that ends on a sentinel weight returns
/// [`BenchError::Infeasible`] carrying its report.
pub fn run(named: &Named, solver: &Solver, seed: u64, budget: Budget) -> Result<(RunReport, Solution)> {
    let report = |weight: Weight, elapsed_ms: u64| RunReport {
        instance: named.name.clone(),
        solver: solver.id(),
        seed,
        budget_ms: budget.budget_ms(),
        elapsed_ms,
        weight,
        best: None,
        err_pct: None,
        scaled_err_pct: None,
    };
    match (&named.problem, solver) {
        (Problem::Gtsp(inst), s) if !s.is_map() => {
            let started = Instant::now();
            let (tour, work) = run_gtsp(inst, s, seed, budget)?;
            let w = tour.weight(inst);
            let elapsed = match budget.clock {
                Clock::Wall => started.elapsed().as_millis() as u64,
                Clock::Work { .. } => work,
            };
            let r = report(w, elapsed);
            if w >= INF {
                return Err(BenchError::Infeasible(Box::new(Some(r))));
            }
            Ok((r, Solution::Tour(tour)))
        }
        (Problem::Map(inst), s) if s.is_map() => {
            let timer = Timer::start(budget.clock, budget.seconds.unwrap_or(DEFAULT_MAP_SECONDS));
            let a = run_map(inst, s, seed, &timer)?;
            let r = report(a.weight(inst), ms(timer.elapsed()));
            Ok((r, Solution::Assignment(a)))
        }
        _ => Err(BenchError::Usage(format!("solver {} does not fit instance {}", solver.id(), named.name))),
    }
}

/// Runs on the reduced instance and maps the tour back to input vertices.
fn run_gtsp(inst: &GtspInstance, solver: &Solver, seed: u64, budget: Budget) -> Result<(Tour, u64)> {
    let reduce = match solver {
        Solver::MaGtsp { reduce, .. } | Solver::GtspLocal { reduce, .. } | Solver::Lk { reduce, .. } => *reduce,
        _ => unreachable!("GTSP solver"),
    };
    let (red, report) = gtsp_reduce::reduce(inst, reduce)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (tour, work) = match solver {
        Solver::MaGtsp { modified, .. } => {
            let limit = match budget.clock {
                Clock::Wall => budget.seconds.map(Duration::from_secs_f64),
                Clock::Work { .. } => None,
            };
            let out = gtsp_ma::ma_run(&red, seed, &GtspMaConfig::for_instance(&red, *modified), limit)?;
            (out.best, out.local_searches as u64)
        }
        Solver::GtspLocal { search, .. } => {
            let start = semirandom_construct(&red, &mut rng);
            (search.run(&red, &start)?, 1)
        }
        Solver::Lk { config, .. } => {
            let start = semirandom_construct(&red, &mut rng);
            (gtsp_lk::lk(&red, &start, config)?, 1)
        }
        _ => unreachable!("GTSP solver"),
    };
    let seq: Vec<usize> = tour.sequence().into_iter().map(|v| report.kept[v]).collect();
    Ok((Tour::from_sequence(inst, &seq)?, work))
}

fn build(inst: &MapInstance, c: Construction) -> Result<Assignment> {
    Ok(c.build(inst)?)
}

fn run_map(inst: &MapInstance, solver: &Solver, seed: u64, timer: &Timer) -> Result<Assignment> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let auto = |ls: &Option<LocalSearch>| ls.unwrap_or_else(|| map_meta::local_search_for(inst));
    Ok(match solver {
        Solver::Construct(c) => build(inst, *c)?,
        Solver::MapLocal { init, ls } => ls.run(inst, &build(inst, *init)?),
        Solver::Chain { init, ls } => chain(inst, &auto(ls), &build(inst, *init)?, timer, &mut rng).best,
        Solver::Multichain { init, ls, c } => multichain(inst, &auto(ls), &build(inst, *init)?, timer, *c, &mut rng).best,
        Solver::MaMap { ls } => {
            let cfg = MapMaConfig { local_search: *ls, clock: clock_of(timer), ..Default::default() };
            ma_run(inst, timer.tau(), seed, &cfg).best
        }
        _ => unreachable!("MAP solver"),
    })
}

fn clock_of(timer: &Timer) -> Clock {
    timer.clock()
}

/// Weight-`n` lower bound of a Random-family instance (all weights >= 1).
pub fn random_family_bound(inst: &MapInstance) -> Option<Weight> {
    (inst.family() == Some(Family::Random)).then(|| inst.n() as Weight)
}
