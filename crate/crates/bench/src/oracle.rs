//! Exhaustive solvers for small instances.

use gtsp_core::{GtspInstance, Tour, INF};
use gtsp_search::{co_sequence, Refinements};
use map_core::{Assignment, MapInstance, Weight};
use map_search::ap_solve;

use crate::error::{BenchError, Result};

/// Default work limit for the oracles: about a second or two of CPU.
pub const DEFAULT_LIMIT: u128 = 50_000_000;

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Calls `f` with every permutation of `items` (Heap's algorithm).
fn for_each_permutation(items: &mut [usize], f: &mut dyn FnMut(&[usize])) {
    let n = items.len();
    let mut c = vec![0; n];
    f(items);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            items.swap(if i % 2 == 0 { 0 } else { c[i] }, i);
            f(items);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// GTSP optimum: CO on every cluster order starting at cluster 0, reverse
/// duplicates skipped on symmetric instances. Work is counted as orders
/// times vertices squared.
pub fn gtsp_optimum(inst: &GtspInstance, limit: u128) -> Result<(Weight, Tour)> {
    let m = inst.m();
    let sym = inst.is_symmetric();
    let orders = factorial(m.saturating_sub(1));
    let work = orders * (inst.n() as u128).pow(2);
    if work > limit {
        return Err(BenchError::TooLarge { work, limit });
    }
    let mut best: Option<(Weight, Vec<usize>)> = None;
    let mut rest: Vec<usize> = (1..m).collect();
    let mut order = vec![0; m];
    for_each_permutation(&mut rest, &mut |p| {
        if sym && m > 3 && p[0] > p[m - 2] {
            return;
        }
        order[1..].copy_from_slice(p);
        if let Ok((w, seq)) = co_sequence(inst, &order, Refinements::ALL) {
            if w < INF && best.as_ref().map_or(true, |b| w < b.0) {
                best = Some((w, seq));
            }
        }
    });
    let (w, seq) = best.ok_or_else(|| BenchError::Infeasible(Box::new(None)))?;
    Ok((w, Tour::from_sequence(inst, &seq)?))
}

/// The family formula when there is one, else the stored tensor entry.
fn exact_weight(inst: &MapInstance, e: &[usize]) -> Weight {
    inst.oracle_weight(e).unwrap_or_else(|| inst.weight(e))
}

/// MAP optimum: every permutation for dimensions `1..s-1`, with the last
/// dimension matched by an assignment problem. Work is `n!^(s-2) n^3`.
pub fn map_optimum(inst: &MapInstance, limit: u128) -> Result<(Weight, Assignment)> {
    let (s, n) = (inst.s(), inst.n());
    if s < 2 {
        return Err(BenchError::Usage("the oracle needs at least two dimensions".into()));
    }
    let work = factorial(n).checked_pow(s as u32 - 2).and_then(|x| x.checked_mul((n as u128).pow(3))).unwrap_or(u128::MAX);
    if work > limit {
        return Err(BenchError::TooLarge { work, limit });
    }
    let mut perms: Vec<Vec<usize>> = vec![(0..n).collect(); s - 2];
    let mut best: Option<(Weight, Vec<Vec<usize>>)> = None;
    let mut cost = vec![0; n * n];
    let mut e = vec![0; s];
    // Odometer over the s-2 free permutations, each walked by index.
    let all = {
        let mut v = Vec::new();
        let mut items: Vec<usize> = (0..n).collect();
        for_each_permutation(&mut items, &mut |p| v.push(p.to_vec()));
        v
    };
    let mut idx = vec![0usize; s - 2];
    loop {
        for (d, &k) in idx.iter().enumerate() {
            perms[d].clone_from(&all[k]);
        }
        for i in 0..n {
            e[0] = i;
            for d in 0..s - 2 {
                e[d + 1] = perms[d][i];
            }
            for j in 0..n {
                e[s - 1] = j;
                cost[i * n + j] = exact_weight(inst, &e);
            }
        }
        let (w, rho) = ap_solve(&cost, n);
        if best.as_ref().map_or(true, |b| w < b.0) {
            let mut ps = perms.clone();
            ps.push(rho);
            best = Some((w, ps));
        }
        let mut d = 0;
        loop {
            if d == idx.len() {
                let (w, ps) = best.expect("at least one candidate");
                return Ok((w, Assignment::from_perms(&ps)?));
            }
            idx[d] += 1;
            if idx[d] < all.len() {
                break;
            }
            idx[d] = 0;
            d += 1;
        }
    }
}

/// Every assignment, `n!^(s-1)` of them; a check on the oracle above.
pub fn map_enumerate(inst: &MapInstance) -> Weight {
    let (s, n) = (inst.s(), inst.n());
    let mut all = Vec::new();
    let mut items: Vec<usize> = (0..n).collect();
    for_each_permutation(&mut items, &mut |p| all.push(p.to_vec()));
    let mut idx = vec![0usize; s - 1];
    let mut best = Weight::MAX;
    let mut e = vec![0; s];
    loop {
        let mut w = 0;
        for i in 0..n {
            e[0] = i;
            for d in 0..s - 1 {
                e[d + 1] = all[idx[d]][i];
            }
            w += exact_weight(inst, &e);
        }
        best = best.min(w);
        let mut d = 0;
        loop {
            if d == idx.len() {
                return best;
            }
            idx[d] += 1;
            if idx[d] < all.len() {
                break;
            }
            idx[d] = 0;
            d += 1;
        }
    }
}

/// Independent GTSP check: Held-Karp over cluster subsets with the start
/// vertex fixed, trying every vertex of cluster 0.
pub fn gtsp_held_karp(inst: &GtspInstance) -> Weight {
    let m = inst.m();
    if m == 1 {
        return 0;
    }
    let n = inst.n();
    let full = 1usize << (m - 1);
    let mut best = INF;
    for &start in inst.cluster(0) {
        // dp[mask][v]: shortest path from start through the clusters in
        // mask (clusters 1..m, bit c-1), ending at v.
        let mut dp = vec![INF; full * n];
        for c in 1..m {
            for &v in inst.cluster(c) {
                dp[(1 << (c - 1)) * n + v] = inst.w(start, v);
            }
        }
        for mask in 1..full {
            for u in 0..n {
                let cu = inst.cluster_of(u);
                let du = dp[mask * n + u];
                if cu == 0 || du >= INF || mask & (1 << (cu - 1)) == 0 {
                    continue;
                }
                for c in 1..m {
                    if mask & (1 << (c - 1)) != 0 {
                        continue;
                    }
                    let next = mask | (1 << (c - 1));
                    for &v in inst.cluster(c) {
                        let cand = gtsp_core::wadd(du, inst.w(u, v));
                        if cand < dp[next * n + v] {
                            dp[next * n + v] = cand;
                        }
                    }
                }
            }
        }
        for u in 0..n {
            if inst.cluster_of(u) != 0 {
                best = best.min(gtsp_core::wadd(dp[(full - 1) * n + u], inst.w(u, start)));
            }
        }
    }
    best
}
