mod common;

use common::*;
use gtsp_core::{random_instance, GtspError, Tour};
use gtsp_search::fragment::window_pass;
use gtsp_search::{fragment_opt, fragment_opt_with, optimize_window, FoAlgorithm};
use proptest::prelude::*;

#[test]
fn window_optimum_matches_brute_force() {
    for seed in 0..30 {
        let inst = random_instance(&[1, 2, 3, 2, 1, 3, 1], seed % 2 == 0, 500, seed);
        let a = 0;
        let b = inst.cluster(6)[0];
        let mid = [1, 2, 3, 4, 5];
        let best = permutations(&mid)
            .iter()
            .map(|p| {
                let mut order = vec![0];
                order.extend(p);
                order.push(6);
                brute_path(&inst, &order)
            })
            .min()
            .unwrap();
        for algo in [FoAlgorithm::F1, FoAlgorithm::F2] {
            let (w, verts) = optimize_window(&inst, a, &mid, b, algo);
            assert_eq!(w, best, "seed {seed} {algo:?}");
            let mut path = vec![a];
            path.extend(&verts);
            path.push(b);
            assert_eq!(path.windows(2).map(|e| inst.w(e[0], e[1])).sum::<i64>(), w);
        }
    }
}

#[test]
fn largest_window_on_six_clusters_is_exact_per_window() {
    for seed in 0..20 {
        let inst = random_instance(&random_sizes(6, 3, seed), seed % 2 == 1, 500, seed);
        let t = random_tour(&inst, seed);
        let out = fragment_opt(&inst, &t, 4).unwrap();
        assert!(out.weight(&inst) <= t.weight(&inst));
        let seq = out.sequence();
        // No window of four clusters can be rearranged for a gain.
        for i in 0..6 {
            let a = seq[i];
            let b = seq[(i + 5) % 6];
            let mid: Vec<usize> = (1..=4).map(|d| inst.cluster_of(seq[(i + d) % 6])).collect();
            let cur: i64 = (0..5).map(|d| inst.w(seq[(i + d) % 6], seq[(i + d + 1) % 6])).sum();
            let best = permutations(&mid)
                .iter()
                .map(|p| {
                    let mut order = vec![inst.cluster_of(a)];
                    order.extend(p);
                    order.push(inst.cluster_of(b));
                    let inner = selections(&inst, p);
                    inner
                        .iter()
                        .map(|s| {
                            let mut path = vec![a];
                            path.extend(s);
                            path.push(b);
                            path.windows(2).map(|e| inst.w(e[0], e[1])).sum::<i64>()
                        })
                        .min()
                        .unwrap()
                })
                .min()
                .unwrap();
            assert_eq!(cur, best, "seed {seed} window {i}");
        }
    }
}

#[test]
fn optimal_windows_are_left_alone() {
    let inst = line(8);
    let t = Tour::from_sequence(&inst, &[0, 1, 2, 3, 4, 5, 6, 7]).unwrap();
    for k in 2..=6 {
        assert_eq!(fragment_opt(&inst, &t, k).unwrap(), t);
    }
    let mut seq = t.sequence();
    assert!(!window_pass(&inst, &mut seq, 2, 3, FoAlgorithm::F2));
}

#[test]
fn window_size_is_checked() {
    let inst = random_instance(&[2; 6], true, 10, 0);
    let t = random_tour(&inst, 0);
    for k in [0, 1, 5, 6] {
        assert!(matches!(fragment_opt(&inst, &t, k), Err(GtspError::InvalidArgument(_))), "k = {k}");
    }
}

#[test]
fn f1_and_f2_agree() {
    let mut runs = 0;
    for seed in 0..50u64 {
        let k = if seed % 2 == 0 { 3 } else { 5 };
        let m = if k == 5 { 7 + (seed as usize / 2) % 2 } else { 5 + (seed as usize / 2) % 4 };
        let inst = random_instance(&random_sizes(m, 3, seed), seed % 4 < 2, 100, seed);
        let t = random_tour(&inst, seed);
        let (a, _) = fragment_opt_with(&inst, &t, k, FoAlgorithm::F1).unwrap();
        let (b, _) = fragment_opt_with(&inst, &t, k, FoAlgorithm::F2).unwrap();
        assert_eq!(a, b, "seed {seed} m {m} k {k}");
        runs += 1;
    }
    assert_eq!(runs, 50);
}

#[test]
fn default_algorithm_switches_above_four() {
    assert_eq!(FoAlgorithm::for_k(4), FoAlgorithm::F1);
    assert_eq!(FoAlgorithm::for_k(5), FoAlgorithm::F2);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn fragment_opt_descends_to_a_fixed_point(
        sizes in prop::collection::vec(1usize..4, 5..9),
        k in 2usize..4,
        seed in any::<u64>(),
    ) {
        let inst = random_instance(&sizes, seed % 2 == 0, 1000, seed);
        let t = random_tour(&inst, seed);
        let once = fragment_opt(&inst, &t, k).unwrap();
        prop_assert!(once.weight(&inst) <= t.weight(&inst));
        prop_assert_eq!(fragment_opt(&inst, &once, k).unwrap(), once);
    }
}
