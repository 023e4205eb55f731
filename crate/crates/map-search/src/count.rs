//! Neighborhood sizes in closed form, and explicit enumerations to check
//! them on small cases.

use std::collections::HashSet;

use map_core::Assignment;

use crate::dv::{combinations, p_d};
use crate::kopt::{for_each_recombination, permutations};

pub fn factorial(n: u64) -> u128 {
    (1..=n as u128).product()
}

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    (0..k as u128).fold(1, |acc, i| acc * (n as u128 - i) / (i + 1))
}

/// Derangements of `i` elements.
pub fn derangements(i: u64) -> u128 {
    let (mut a, mut b) = (1u128, 0u128);
    if i == 0 {
        return 1;
    }
    for k in 2..=i as u128 {
        let c = (k - 1) * (a + b);
        a = b;
        b = c;
    }
    b
}

/// `|N_DV| = |D| (n! - 1) + 1`.
pub fn dv_size(sets: u64, n: u64) -> u128 {
    sets as u128 * (factorial(n) - 1) + 1
}

/// `N^i`: recombinations of `i` chosen vectors that change every one of
/// them; `N^i = i!^(s-1) - sum_{j<i} C(i,j) N^j`.
pub fn kopt_changed(i: u64, s: u64) -> u128 {
    let total = factorial(i).pow(s as u32 - 1);
    let below: u128 = (0..i).map(|j| binomial(i, j) * kopt_changed(j, s)).sum();
    total - below
}

/// `|N_kopt| = sum_{i<=k} C(n,i) N^i`.
pub fn kopt_size(n: u64, s: u64, k: u64) -> u128 {
    (0..=k).map(|i| binomial(n, i) * kopt_changed(i, s)).sum()
}

/// Permutations of `n` elements moving at most `k` of them.
pub fn r_k(n: u64, k: u64) -> u128 {
    (0..=k).map(|i| binomial(n, i) * derangements(i)).sum()
}

/// Size of the union of a DV neighborhood with `sets` dimension sets and
/// the `k`-opt neighborhood.
pub fn combined_size(n: u64, s: u64, sets: u64, k: u64) -> u128 {
    let opt: u128 = (2..=k).map(|i| binomial(n, i) * kopt_changed(i, s)).sum();
    1 + sets as u128 * (factorial(n) - 1) + opt - sets as u128 * (r_k(n, k) - 1)
}

/// Every `p_D(A, rho)` for the given sets and all permutations `rho`.
pub fn enumerate_dv(a: &Assignment, sets: &[Vec<usize>]) -> HashSet<Assignment> {
    let perms = permutations(a.n());
    let mut out = HashSet::new();
    for d in sets {
        for rho in &perms {
            out.insert(p_d(a, d, rho));
        }
    }
    out
}

/// Every assignment reachable by recombining at most `k` vectors.
pub fn enumerate_kopt(a: &Assignment, k: usize) -> HashSet<Assignment> {
    let s = a.s();
    let mut out = HashSet::new();
    out.insert(a.clone());
    for set in combinations(&(0..a.n()).collect::<Vec<_>>(), k.min(a.n())) {
        let vecs: Vec<&[usize]> = set.iter().map(|&i| a.vector(i)).collect();
        for_each_recombination(&vecs, |cand| {
            let mut flat = a.flat().to_vec();
            for (&slot, e) in set.iter().zip(cand) {
                flat[slot * s..(slot + 1) * s].copy_from_slice(e);
            }
            out.insert(Assignment::canonical(s, flat));
        });
    }
    out
}
