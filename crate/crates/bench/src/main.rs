use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use bench::report::{write_markdown, write_reports};
use bench::solve::{load_instance, map_by_name, run, Budget, Named, Problem, Solution, Solver};
use bench::suite::{instances, map_solvers, gtsp_solvers, run_suite, Suite, SuiteConfig};
use bench::tune::{tune, TuneConfig};
use bench::{oracle, BenchError, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use gtsp_core::{random_euclidean, random_instance};
use gtsp_reduce::Reduction;
use map_meta::{gamma, linspace, Clock, PopulationSizer};

#[derive(Parser)]
#[command(name = "bench", version, about = "GTSP and MAP heuristics: generation, runs, oracles and tuning")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write a generated instance to a file.
    Gen(GenArgs),
    /// Run one solver on one instance and print a CSV report.
    Solve(SolveArgs),
    /// Run a fixed suite and print one CSV row per (instance, solver, seed).
    Bench(BenchArgs),
    /// Solve a small instance exactly.
    Oracle(OracleArgs),
    /// Fit the population-size constants of the MAP memetic algorithm.
    Tune(TuneArgs),
}

#[derive(Args)]
struct Source {
    /// Instance file: MAP dump, native GTSP text or TSPLIB with a set section.
    #[arg(long, alias = "gtsp", conflicts_with = "map")]
    instance: Option<PathBuf>,
    /// Test-bed MAP instance name such as 5r12.
    #[arg(long)]
    map: Option<String>,
    #[arg(long, default_value_t = 1)]
    index: u64,
}

impl Source {
    fn load(&self) -> Result<Named> {
        match (&self.instance, &self.map) {
            (Some(p), _) => load_instance(p),
            (None, Some(name)) => map_by_name(name, self.index),
            (None, None) => Err(BenchError::Usage("give --instance FILE or --map NAME".into())),
        }
    }
}

#[derive(Args)]
struct GenArgs {
    /// Test-bed MAP instance name such as 3r8.
    #[arg(long, conflicts_with = "euclidean")]
    map: Option<String>,
    #[arg(long, default_value_t = 1)]
    index: u64,
    /// Clustered Euclidean GTSP instance with this many vertices.
    #[arg(long)]
    euclidean: Option<usize>,
    /// Random-weight GTSP instance with these cluster sizes, comma separated.
    #[arg(long, value_delimiter = ',', conflicts_with_all = ["map", "euclidean"])]
    sizes: Vec<usize>,
    /// Clusters for --euclidean.
    #[arg(long, default_value_t = 5)]
    clusters: usize,
    #[arg(long)]
    asymmetric: bool,
    #[arg(long, default_value_t = 1000)]
    max_weight: i64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum ClockArg {
    Wall,
    Work,
}

impl ClockArg {
    fn clock(self) -> Clock {
        match self {
            ClockArg::Wall => Clock::Wall,
            ClockArg::Work => Clock::work(),
        }
    }
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    source: Source,
    /// Solver: ma-gtsp, ls, lk, construct, chain, multichain, ma-map, or a
    /// full id such as ls:2opt-G or chain:greedy+sdvv.
    #[arg(long)]
    algo: String,
    /// GTSP search (2opt-G, ins-Lco, fo5, ...) or MAP local search (sdvv, 2opt, ...).
    #[arg(long)]
    ls: Option<String>,
    /// MAP construction used as the starting point.
    #[arg(long, alias = "construct")]
    init: Option<String>,
    /// LK configuration such as S5-2co.
    #[arg(long)]
    lk: Option<String>,
    /// Chains for multichain.
    #[arg(long, default_value_t = 4)]
    chains: usize,
    #[arg(long, default_value = "none")]
    reduce: String,
    /// Modified GTSP memetic algorithm for preprocessed instances.
    #[arg(long)]
    modified: bool,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Time budget in seconds.
    #[arg(long, conflicts_with = "time_limit")]
    time: Option<f64>,
    /// Time budget in milliseconds.
    #[arg(long)]
    time_limit: Option<u64>,
    #[arg(long, value_enum, default_value = "wall")]
    clock: ClockArg,
    /// Best-known weight for the error column.
    #[arg(long)]
    best: Option<i64>,
    /// CSV output file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print the solution to stderr.
    #[arg(long)]
    show: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Markdown,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, default_value = "smoke")]
    suite: String,
    /// Only these solver ids, comma separated.
    #[arg(long, value_delimiter = ',')]
    solvers: Vec<String>,
    /// Number of seeds per (instance, solver), counting from 1.
    #[arg(long, default_value_t = 1)]
    seeds: u64,
    /// MAP time budget in seconds.
    #[arg(long, default_value_t = 0.2)]
    time: f64,
    #[arg(long, value_enum, default_value = "wall")]
    clock: ClockArg,
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct OracleArgs {
    #[command(flatten)]
    source: Source,
    /// Work limit in elementary steps.
    #[arg(long, default_value_t = oracle::DEFAULT_LIMIT)]
    limit: u128,
}

#[derive(Args)]
struct TuneArgs {
    /// Test-bed instances, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "3r20,4r12,5r10,3g20,4c12")]
    instances: Vec<String>,
    /// Population sizes tried.
    #[arg(long, value_delimiter = ',', default_value = "2,4,8,16,32,64")]
    sizes: Vec<usize>,
    /// Budgets in seconds.
    #[arg(long, value_delimiter = ',', default_value = "0.1,0.3,1")]
    taus: Vec<f64>,
    #[arg(long, value_enum, default_value = "work")]
    clock: ClockArg,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Grid steps per constant.
    #[arg(long, default_value_t = 11)]
    steps: usize,
}

fn output(path: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(File::create(p)?),
        None => Box::new(io::stdout().lock()),
    })
}

fn gen(a: &GenArgs) -> Result<()> {
    if let Some(name) = &a.map {
        let Named { problem: Problem::Map(inst), .. } = map_by_name(name, a.index)? else { unreachable!() };
        map_core::io::write_instance(&inst, File::create(&a.out)?)?;
        return Ok(());
    }
    let inst = match (a.euclidean, a.sizes.is_empty()) {
        (Some(n), _) => random_euclidean(n, a.clusters, a.seed)?,
        (None, false) => random_instance(&a.sizes, !a.asymmetric, a.max_weight, a.seed),
        (None, true) => return Err(BenchError::Usage("give --map, --euclidean or --sizes".into())),
    };
    std::fs::write(&a.out, gtsp_core::native::write_native(&inst))?;
    Ok(())
}

fn usage(e: BenchError) -> BenchError {
    match e {
        BenchError::Usage(_) => e,
        other => BenchError::Usage(other.to_string()),
    }
}

/// Builds a solver from `--algo` and its companion flags.
fn compose(a: &SolveArgs, is_map: bool) -> Result<Solver> {
    compose_inner(a, is_map).map_err(usage)
}

fn compose_inner(a: &SolveArgs, is_map: bool) -> Result<Solver> {
    let reduce: Reduction = a.reduce.parse().map_err(BenchError::Usage)?;
    let need = |v: &Option<String>, flag: &str| v.clone().ok_or_else(|| BenchError::Usage(format!("--algo {} needs {flag}", a.algo)));
    let init = a.init.as_deref().unwrap_or("greedy");
    let ls = a.ls.as_deref().unwrap_or("auto");
    let id = match a.algo.as_str() {
        "ma-gtsp" => return Ok(Solver::MaGtsp { modified: a.modified, reduce }),
        "ls" if is_map => format!("map-ls:{init}+{}", need(&a.ls, "--ls")?),
        "ls" => return Ok(Solver::GtspLocal { search: need(&a.ls, "--ls")?.parse()?, reduce }),
        "lk" => {
            let lk = a.lk.as_deref().unwrap_or("S5-2co");
            return Ok(Solver::Lk { config: lk.parse()?, reduce });
        }
        "construct" => format!("construct:{}", need(&a.init, "--init")?),
        "chain" => format!("chain:{init}+{ls}"),
        "multichain" => format!("multichain{}:{init}+{ls}", a.chains),
        "ma-map" => format!("ma-map:{ls}"),
        other => other.to_string(),
    };
    id.parse()
}

fn show(sol: &Solution) {
    match sol {
        Solution::Tour(t) => eprintln!("tour: {:?}", t.sequence()),
        Solution::Assignment(x) => {
            for v in x.vectors() {
                eprintln!("{v:?}");
            }
        }
    }
}

fn solve(a: &SolveArgs) -> Result<()> {
    let named = a.source.load()?;
    let solver = compose(a, matches!(named.problem, Problem::Map(_)))?;
    let seconds = a.time.or(a.time_limit.map(|ms| ms as f64 / 1000.0));
    let budget = Budget { seconds, clock: a.clock.clock() };
    match run(&named, &solver, a.seed, budget) {
        Ok((r, sol)) => {
            if a.show {
                show(&sol);
            }
            write_reports(output(&a.out)?, &[r.with_best(a.best)])
        }
        Err(BenchError::Infeasible(r)) => {
            if let Some(r) = r.as_ref() {
                write_reports(output(&a.out)?, std::slice::from_ref(r))?;
            }
            Err(BenchError::Infeasible(r))
        }
        Err(e) => Err(e),
    }
}

fn bench_cmd(a: &BenchArgs) -> Result<()> {
    let suite: Suite = a.suite.parse()?;
    let solvers: Vec<Solver> = if a.solvers.is_empty() {
        gtsp_solvers().into_iter().chain(map_solvers()).collect()
    } else {
        a.solvers.iter().map(|s| s.parse().map_err(usage)).collect::<Result<_>>()?
    };
    let jobs = a.jobs.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let cfg = SuiteConfig { seeds: (1..=a.seeds).collect(), budget: Budget { seconds: Some(a.time), clock: a.clock.clock() }, jobs };
    let rows = run_suite(&instances(suite)?, &solvers, &cfg)?;
    match a.format {
        Format::Csv => write_reports(output(&a.out)?, &rows),
        Format::Markdown => write_markdown(output(&a.out)?, &rows),
    }
}

fn oracle_cmd(a: &OracleArgs) -> Result<()> {
    let named = a.source.load()?;
    match &named.problem {
        Problem::Gtsp(inst) => {
            let (w, t) = oracle::gtsp_optimum(inst, a.limit)?;
            println!("{} optimum {w}", named.name);
            println!("tour: {:?}", t.sequence());
        }
        Problem::Map(inst) => {
            let (w, x) = oracle::map_optimum(inst, a.limit)?;
            println!("{} optimum {w}", named.name);
            for v in x.vectors() {
                println!("{v:?}");
            }
        }
    }
    Ok(())
}

fn tune_cmd(a: &TuneArgs) -> Result<()> {
    let insts = a.instances.iter().map(|n| map_by_name(n, 1)).collect::<Result<Vec<_>>>()?;
    let cfg = TuneConfig { sizes: a.sizes.clone(), taus: a.taus.clone(), clock: a.clock.clock(), seed: a.seed, samples: 10 };
    let d = PopulationSizer::default();
    let (a_r, b_r, c_r) = (
        linspace(0.5 * d.a, 2.0 * d.a, a.steps),
        linspace(0.5 * d.b, 2.0 * d.b, a.steps),
        linspace(0.5 * d.c, 1.5 * d.c, a.steps),
    );
    let (cells, res) = tune(&insts, &cfg, [&a_r, &b_r, &c_r])?;
    for c in &cells {
        let errs: Vec<String> = c.errors.iter().map(|(m, e)| format!("{m}:{e:.1}")).collect();
        println!("{} tau={} t={:.5} {}", c.instance, c.tau, c.t, errs.join(" "));
    }
    println!("a={:.4} b={:.4} c={:.4} gamma={:.3}", res.a, res.b, res.c, res.gamma);
    if let Some(g) = gamma(&cells, &d) {
        println!("defaults a={} b={} c={} gamma={g:.3}", d.a, d.b, d.c);
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match &cli.cmd {
        Cmd::Gen(a) => gen(a),
        Cmd::Solve(a) => solve(a),
        Cmd::Bench(a) => bench_cmd(a),
        Cmd::Oracle(a) => oracle_cmd(a),
        Cmd::Tune(a) => tune_cmd(a),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                BenchError::Usage(_) => 2,
                BenchError::Infeasible(_) => 3,
                _ => 1,
            })
        }
    }
}
