use map_core::{generate, generate_seeded, Assignment, Family, MapInstance};
use map_meta::*;
use map_search::{greedy_construct, LocalSearch};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_assignment(n: usize, s: usize, rng: &mut impl Rng) -> Assignment {
    let ps: Vec<Vec<usize>> = (1..s)
        .map(|_| {
            let mut p: Vec<usize> = (0..n).collect();
            rand::seq::SliceRandom::shuffle(p.as_mut_slice(), rng);
            p
        })
        .collect();
    Assignment::from_perms(&ps).unwrap()
}

fn changed_vectors(a: &Assignment, b: &Assignment) -> usize {
    let set: std::collections::HashSet<&[usize]> = a.vectors().collect();
    b.vectors().filter(|v| !set.contains(v)).count()
}

#[test]
fn perturbation_sizes() {
    assert_eq!(perturb_count(40, 0.1), 2);
    assert_eq!(perturb_count(40, 0.2), 4);
    assert_eq!(perturb_count(3, 0.1), 1);
    assert_eq!(chain_perturb_size(40), 3);
    assert_eq!(chain_perturb_size(25), 2);
    assert_eq!(chain_perturb_size(26), 3);
}

#[test]
fn one_swap_touches_exactly_two_vectors() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..200 {
        let (n, s) = (rng.gen_range(2..10), rng.gen_range(3..7));
        let a = random_assignment(n, s, &mut rng);
        let b = perturb(&a, 1, &mut rng);
        assert!(Assignment::from_flat(s, b.flat().to_vec()).is_ok());
        assert_eq!(changed_vectors(&a, &b), 2);
    }
    let a = Assignment::diagonal(2, 4);
    let b = perturb(&a, 1, &mut rng);
    assert_eq!(changed_vectors(&a, &b), 2);
    assert_eq!(perturb(&Assignment::diagonal(1, 3), 5, &mut rng), Assignment::diagonal(1, 3));
}

#[test]
fn random_p_opt_moves_at_most_p_vectors() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..200 {
        let (n, s) = (rng.gen_range(2..30), rng.gen_range(3..7));
        let a = random_assignment(n, s, &mut rng);
        let p = chain_perturb_size(n);
        let b = random_p_opt(&a, p, &mut rng);
        assert!(Assignment::from_flat(s, b.flat().to_vec()).is_ok());
        assert!(changed_vectors(&a, &b) <= p);
    }
}

#[test]
fn identical_parents_breed_true() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let a = random_assignment(9, 4, &mut rng);
    let (x, y) = crossover(&a, &a, &mut rng);
    assert_eq!((&x, &y), (&a, &a));
}

proptest! {
    #[test]
    fn crossover_children_are_feasible_and_keep_shared_vectors(seed in 0u64..10_000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (n, s) = (rng.gen_range(2..12), rng.gen_range(3..6));
        let x = random_assignment(n, s, &mut rng);
        let y = perturb(&x, rng.gen_range(1..4), &mut rng);
        let (cx, cy) = crossover(&x, &y, &mut rng);
        prop_assert!(Assignment::from_flat(s, cx.flat().to_vec()).is_ok());
        prop_assert!(Assignment::from_flat(s, cy.flat().to_vec()).is_ok());
        for v in x.vectors().filter(|v| y.vectors().any(|u| u == *v)) {
            prop_assert!(cx.vectors().any(|u| u == v));
            prop_assert!(cy.vectors().any(|u| u == v));
        }
    }

    #[test]
    fn perturbation_keeps_feasibility(seed in 0u64..10_000, count in 1usize..20) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (n, s) = (rng.gen_range(1..15), rng.gen_range(2..7));
        let a = random_assignment(n, s, &mut rng);
        let b = perturb(&a, count, &mut rng);
        prop_assert!(Assignment::from_flat(s, b.flat().to_vec()).is_ok());
    }
}

#[test]
fn sizer_is_monotone_and_clamped() {
    let z = PopulationSizer::default();
    let taus: Vec<f64> = (0..10).map(|i| 0.1 * 2f64.powi(i)).collect();
    let ts: Vec<f64> = (0..10).map(|i| 1e-4 * 2f64.powi(i)).collect();
    for i in 0..10 {
        for j in 0..10 {
            if i + 1 < 10 {
                assert!(z.raw(taus[i + 1], ts[j]) > z.raw(taus[i], ts[j]));
            }
            if j + 1 < 10 {
                assert!(z.raw(taus[i], ts[j + 1]) < z.raw(taus[i], ts[j]));
            }
        }
    }
    assert!(z.raw(0.01, 1.0) < 1.0);
    assert_eq!(z.m_opt(0.01, 1.0), 2);
    assert_eq!(z.m_opt(1e6, 1e-9), 4096);
    assert!(z.raw(3.0, 0.001) > z.raw(1.0, 0.001));
    assert!(z.raw(1.0, 0.003) < z.raw(1.0, 0.001));
    assert_eq!(z.m_opt(1.0, 0.0), 4096);
}

#[test]
fn chain_with_a_spent_budget_is_one_local_search() {
    let inst = generate(Family::Random, 4, 10, 1).unwrap();
    let init = greedy_construct(&inst).unwrap();
    let ls: LocalSearch = "sdvv".parse().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let out = chain(&inst, &ls, &init, &Timer::start(Clock::Wall, 0.0), &mut rng);
    assert_eq!(out.local_searches, 1);
    assert_eq!(out.best, ls.run(&inst, &init));
}

#[test]
fn chain_solves_a_small_random_instance() {
    let inst = generate(Family::Random, 5, 15, 1).unwrap();
    let init = greedy_construct(&inst).unwrap();
    let ls: LocalSearch = "sdvv".parse().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let out = chain(&inst, &ls, &init, &Timer::start(Clock::Wall, 1.0), &mut rng);
    assert_eq!(out.weight, 15);
    assert_eq!(out.best.weight(&inst), out.weight);
    assert!(out.weight <= init.weight(&inst));
}

#[test]
fn multichain_rounds_and_truncation() {
    let inst = generate(Family::Random, 4, 12, 2).unwrap();
    let init = greedy_construct(&inst).unwrap();
    let ls: LocalSearch = "sdv".parse().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let out = multichain(&inst, &ls, &init, &Timer::start(Clock::Wall, 0.0), 5, &mut rng);
    assert!(out.truncated);
    assert_eq!((out.best, out.local_searches), (init.clone(), 0));

    let out = multichain(&inst, &ls, &init, &Timer::start(Clock::Wall, 0.3), 5, &mut rng);
    assert!(!out.truncated);
    assert!(out.local_searches >= 15);
    assert!(out.weight <= init.weight(&inst));
    let c1 = multichain(&inst, &ls, &init, &Timer::start(Clock::Wall, 0.05), 1, &mut rng);
    assert!(c1.weight <= init.weight(&inst));
}

#[test]
fn ma_reaches_the_random_optimum_on_6r12() {
    let inst = generate(Family::Random, 6, 12, 1).unwrap();
    let out = ma_run(&inst, 1.0, 1, &MapMaConfig::default());
    assert_eq!(out.weight, 12);
    assert_eq!(out.best.weight(&inst), 12);
}

#[test]
fn ma_is_elitist_and_sized_by_the_formula() {
    let inst = generate(Family::Clique, 4, 14, 1).unwrap();
    let cfg = MapMaConfig { clock: Clock::work(), ..Default::default() };
    let out = ma_run(&inst, 0.5, 2, &cfg);
    assert!(out.history.windows(2).all(|w| w[1] <= w[0]));
    assert_eq!(*out.history.last().unwrap(), out.weight);
    assert!(out.generations >= 2);
    assert_eq!(out.population, cfg.sizer.m_opt(0.5, out.t));
    assert!(out.first_size >= out.population.min(out.first_size));
    if let Some(t5) = out.t_recheck {
        println!("warm-up t = {:.3e}, generation-5 t = {:.3e}, ratio {:.2}", out.t, t5, t5 / out.t);
    }
}

#[test]
fn ma_on_the_work_clock_is_reproducible() {
    let inst = generate(Family::Random, 4, 10, 3).unwrap();
    let cfg = MapMaConfig { clock: Clock::work(), ..Default::default() };
    let a = ma_run(&inst, 0.2, 9, &cfg);
    let b = ma_run(&inst, 0.2, 9, &cfg);
    assert_eq!((a.best, a.generations, a.local_searches, a.history), (b.best, b.generations, b.local_searches, b.history));
    assert_eq!(a.elapsed, b.elapsed);
}

#[test]
fn ma_local_search_follows_the_family_tag() {
    let r = generate(Family::Random, 3, 5, 1).unwrap();
    let c = generate(Family::SquareRoot, 3, 5, 1).unwrap();
    assert_eq!(local_search_for(&r).to_string(), "sdvv");
    assert_eq!(local_search_for(&c).to_string(), "sdv");
    let untagged = MapInstance::from_dense(3, 2, vec![1; 8]).unwrap();
    assert_eq!(local_search_for(&untagged).to_string(), "sdvv");
    let cfg = MapMaConfig { local_search: Some("1dv".parse().unwrap()), ..Default::default() };
    assert_eq!(cfg.local_search(&r).to_string(), "1dv");
}

#[test]
fn ma_with_a_fixed_population_and_tiny_instances() {
    let inst = generate_seeded(Family::Random, 3, 2, 1).unwrap();
    let cfg = MapMaConfig { clock: Clock::work(), fixed_size: Some(3), ..Default::default() };
    let out = ma_run(&inst, 0.001, 1, &cfg);
    assert_eq!(out.population, 3);
    assert!(out.best.is_valid_for(&inst));
}

fn cell(tau: f64, t: f64, errors: &[(usize, f64)]) -> TuneCell {
    TuneCell { instance: "x".into(), tau, t, errors: errors.to_vec() }
}

#[test]
fn tuning_picks_the_constants_that_hit_the_best_sizes() {
    assert!(tune_sizer(&[], &[0.1], &[0.3], &[0.8]).is_err());
    assert!(tune_sizer(&[cell(1.0, 0.01, &[])], &[0.1], &[0.3], &[0.8]).is_err());
    let single = [cell(1.0, 0.01, &[(8, 37.5)])];
    let r = tune_sizer(&single, &[0.05, 0.1], &[0.3], &[0.8, 0.9]).unwrap();
    assert_eq!(r.gamma, 37.5);
    // The best size is exactly what (0.08, 0.35, 0.85) predicts for every cell.
    let sizes = [2, 3, 5, 8, 12, 18, 27, 40, 60, 90, 135];
    let truth = PopulationSizer::default();
    let mut cells = Vec::new();
    for tau in [1.0, 3.0, 10.0, 30.0] {
        for t in [0.0005, 0.002, 0.01] {
            let best = truth.m_opt(tau, t) as f64;
            let snapped = *sizes.iter().min_by(|a, b| (**a as f64 - best).abs().total_cmp(&(**b as f64 - best).abs())).unwrap();
            let errors: Vec<(usize, f64)> =
                sizes.iter().map(|&m| (m, if m == snapped { 0.0 } else { 100.0 * (m as f64 / snapped as f64).ln().abs().min(1.0) })).collect();
            cells.push(cell(tau, t, &errors));
        }
    }
    let r = tune_sizer(&cells, &linspace(0.04, 0.12, 5), &linspace(0.25, 0.45, 5), &linspace(0.75, 0.95, 5)).unwrap();
    assert_eq!(r.gamma, 0.0);
    assert_eq!(gamma(&cells, &truth), Some(0.0));
    assert!(gamma(&cells, &PopulationSizer::new(0.5, 0.1, 0.5)).unwrap() > 0.0);
}
