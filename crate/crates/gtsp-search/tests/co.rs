mod common;

use common::*;
use gtsp_core::{random_instance, GtspError, GtspInstance, Tour, INF};
use gtsp_search::co::reduce_first_cluster;
use gtsp_search::layers::{block, min_plus, Mat};
use gtsp_search::{
    broken_cycle_lower_bound, cluster_optimize, co_sequence, shortest_path_lower_bound, PathTable, Refinements,
};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

fn all_refinements() -> Vec<Refinements> {
    let mut out = Vec::new();
    for bits in 0..8 {
        out.push(Refinements {
            rotate_smallest: bits & 1 != 0,
            reduce_first_cluster: bits & 2 != 0,
            improved_order: bits & 4 != 0,
        });
    }
    out
}

#[test]
fn co_sizes_1_3_2_3_matches_all_18_selections() {
    for seed in 0..20 {
        let inst = random_instance(&[1, 3, 2, 3], seed % 2 == 0, 100, seed);
        let order = [0, 1, 2, 3];
        assert_eq!(selections(&inst, &order).len(), 18);
        let best = brute_co(&inst, &order);
        let t = Tour::from_sequence(&inst, &[0, 1, 4, 6]).unwrap();
        let out = cluster_optimize(&inst, &t, Refinements::ALL).unwrap();
        assert_eq!(out.weight(&inst), best);
        assert_eq!(out.order(), t.order());
    }
}

#[test]
fn co_on_singletons_is_identity() {
    let inst = random_instance(&[1; 6], false, 50, 3);
    let t = random_tour(&inst, 9);
    let out = cluster_optimize(&inst, &t, Refinements::ALL).unwrap();
    assert_eq!(out, t);
}

#[test]
fn co_of_single_cluster_picks_any_vertex_with_zero_weight() {
    let inst = random_instance(&[3], true, 50, 1);
    let t = Tour::from_sequence(&inst, &[2]).unwrap();
    assert_eq!(cluster_optimize(&inst, &t, Refinements::ALL).unwrap().weight(&inst), 0);
}

#[test]
fn improved_order_does_not_change_the_weight() {
    for seed in 0..30 {
        let sizes = random_sizes(7, 5, seed);
        let inst = random_instance(&sizes, seed % 3 == 0, 1000, seed);
        let order = random_tour(&inst, seed).order();
        let on = co_sequence(&inst, &order, Refinements::ALL).unwrap().0;
        let off = co_sequence(&inst, &order, Refinements { improved_order: false, ..Refinements::ALL }).unwrap().0;
        assert_eq!(on, off);
    }
}

#[test]
fn reduce_first_cluster_keeps_every_best_detour() {
    for seed in 0..40 {
        let inst = random_instance(&[3, 6, 4], seed % 2 == 0, 30, seed);
        let kept = reduce_first_cluster(&inst, 0, 1, 2);
        assert!(!kept.is_empty());
        assert!(kept.iter().all(|&r| inst.cluster_of(r) == 1));
        for &u in inst.cluster(0) {
            for &v in inst.cluster(2) {
                let via = |rs: &[usize]| rs.iter().map(|&r| inst.w(u, r) + inst.w(r, v)).min().unwrap();
                assert_eq!(via(&kept), via(inst.cluster(1)));
            }
        }
    }
}

#[test]
fn infeasible_order_is_reported() {
    // Nothing may enter vertex 2.
    let mut w = vec![1; 9];
    for v in 0..3 {
        w[v * 3 + v] = 0;
        if v != 2 {
            w[v * 3 + 2] = INF;
        }
    }
    let inst = GtspInstance::new(vec![vec![0], vec![1], vec![2]], w).unwrap();
    match co_sequence(&inst, &[0, 1, 2], Refinements::ALL) {
        Err(GtspError::InfeasibleOrder { .. }) => {}
        other => panic!("expected an infeasible order, got {other:?}"),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn every_refinement_combination_is_exact(
        sizes in prop::collection::vec(1usize..4, 2..6),
        sym in any::<bool>(),
        seed in any::<u64>(),
    ) {
        let inst = random_instance(&sizes, sym, 100, seed);
        let order = random_tour(&inst, seed).order();
        let best = brute_co(&inst, &order);
        for r in all_refinements() {
            let (w, seq) = co_sequence(&inst, &order, r).unwrap();
            prop_assert_eq!(w, best);
            prop_assert_eq!(cycle(&inst, &seq), best as i128);
            prop_assert_eq!(order_of(&inst, &seq).len(), order.len());
        }
    }

    #[test]
    fn co_never_worsens(sizes in prop::collection::vec(1usize..5, 3..9), seed in any::<u64>()) {
        let inst = random_instance(&sizes, false, 1000, seed);
        let t = random_tour(&inst, seed ^ 7);
        let out = cluster_optimize(&inst, &t, Refinements::ALL).unwrap();
        prop_assert!(out.weight(&inst) <= t.weight(&inst));
        prop_assert_eq!(out.order(), t.order());
    }
}

/// X_i -> X_1 by plain left-to-right composition.
fn direct_paths(inst: &GtspInstance, seq: &[usize], i: usize) -> Mat {
    let mut acc = {
        let v = block(inst, seq[i - 1], seq[i - 2]);
        Mat { rows: v.rows, cols: v.cols, data: v.data.to_vec() }
    };
    for k in (1..i - 1).rev() {
        acc = min_plus(acc.view(), block(inst, seq[k], seq[k - 1]));
    }
    acc
}

#[test]
fn path_table_entries_equal_direct_dp() {
    for seed in 0..40 {
        let m = 8;
        let sizes = random_sizes(m, 5, seed);
        let inst = random_instance(&sizes, seed % 2 == 0, 500, seed);
        let mut seq: Vec<usize> = (0..m).collect();
        seq.shuffle(&mut rng(seed));
        let table = PathTable::build(&inst, &seq);
        assert_eq!(table.len(), m);
        assert_eq!(table.origin(), seq[0]);
        for i in 2..=m {
            assert_eq!(table.paths(i), direct_paths(&inst, &seq, i), "seed {seed} i {i}");
            if let Some(z) = table.support(i) {
                assert!(inst.cluster_size(z) < inst.cluster_size(seq[0]));
                assert_eq!(table.chain(i).len(), 2);
            }
        }
    }
}

#[test]
fn path_table_adopts_a_smaller_support() {
    let inst = random_instance(&[5, 4, 1, 3, 3], true, 100, 2);
    let table = PathTable::build(&inst, &[0, 1, 2, 3, 4]);
    assert_eq!(table.support(2), None);
    assert_eq!(table.support(3), Some(1));
    assert_eq!(table.support(4), Some(2));
    assert_eq!(table.support(5), Some(2));
}

#[test]
fn path_lower_bound_is_sound_on_co_tours() {
    let mut r = rng(11);
    let mut checked = 0;
    for seed in 0..10 {
        let sizes = random_sizes(6, 4, seed);
        let inst = random_instance(&sizes, seed % 2 == 0, 200, seed);
        let t = cluster_optimize(&inst, &random_tour(&inst, seed), Refinements::ALL).unwrap();
        let order = t.order();
        for _ in 0..10 {
            let a = r.gen_range(0..6);
            let b = r.gen_range(0..6);
            let lb = shortest_path_lower_bound(&inst, &t, a, b);
            assert!(lb.verified);
            let pa = order.iter().position(|&c| c == a).unwrap();
            let len = (order.iter().position(|&c| c == b).unwrap() + 6 - pa) % 6 + 1;
            let path: Vec<usize> = (0..len).map(|k| order[(pa + k) % 6]).collect();
            assert!(lb.value <= brute_path(&inst, &path), "seed {seed} a {a} b {b}");
            checked += 1;
        }
    }
    assert_eq!(checked, 100);
}

#[test]
fn path_lower_bound_is_tight_for_singletons() {
    let inst = random_instance(&[1; 6], false, 200, 5);
    let t = random_tour(&inst, 5);
    let order = t.order();
    for a in 0..6 {
        for b in 0..6 {
            let pa = order.iter().position(|&c| c == a).unwrap();
            let len = (order.iter().position(|&c| c == b).unwrap() + 6 - pa) % 6 + 1;
            let path: Vec<usize> = (0..len).map(|k| order[(pa + k) % 6]).collect();
            assert_eq!(shortest_path_lower_bound(&inst, &t, a, b).value, brute_path(&inst, &path));
        }
    }
}

#[test]
fn path_lower_bound_is_tight_for_uniform_weights() {
    let base = random_instance(&[2, 3, 1, 2, 3, 2], true, 10, 1);
    let n = base.n();
    let w: Vec<i64> = (0..n * n).map(|k| if k / n == k % n { 0 } else { 7 }).collect();
    let inst = base.with_weights(w).unwrap();
    let t = random_tour(&inst, 3);
    for a in 0..6 {
        for b in 0..6 {
            let pa = t.order().iter().position(|&c| c == a).unwrap();
            let len = (t.order().iter().position(|&c| c == b).unwrap() + 6 - pa) % 6 + 1;
            assert_eq!(shortest_path_lower_bound(&inst, &t, a, b).value, 7 * (len as i64 - 1));
        }
    }
}

#[test]
fn broken_cycle_bound_is_sound_on_co_tours() {
    for seed in 0..30 {
        let sizes = random_sizes(6, 4, seed);
        let inst = random_instance(&sizes, seed % 2 == 1, 300, seed);
        let t = cluster_optimize(&inst, &random_tour(&inst, seed), Refinements::ALL).unwrap();
        let lb = broken_cycle_lower_bound(&inst, &t);
        assert!(lb.verified);
        assert!(lb.value <= brute_path(&inst, &t.order()));
    }
}

#[test]
fn bound_on_an_unoptimised_tour_is_not_verified() {
    let inst = random_instance(&[3, 3, 3, 3], true, 1000, 4);
    let t = Tour::from_sequence(&inst, &[0, 3, 6, 9]).unwrap();
    let co = cluster_optimize(&inst, &t, Refinements::ALL).unwrap();
    assert!(co.weight(&inst) < t.weight(&inst));
    assert!(!broken_cycle_lower_bound(&inst, &t).verified);
}
