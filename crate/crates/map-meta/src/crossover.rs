//! Crossover for assignments coded as vector lists.

use map_core::Assignment;
use rand::seq::SliceRandom;
use rand::Rng;

/// Probability that a pair of unshared vectors goes to the children in
/// parent order.
pub const ROUTE_KEEP: f64 = 0.8;

/// Both children start from the vectors the parents share. The rest are
/// paired at random, one from each parent, and each pair goes to
/// `(x', y')` with probability 0.8 and crosswise otherwise. Duplicate
/// coordinates are then replaced by random unused values.
pub fn crossover<R: Rng>(x: &Assignment, y: &Assignment, rng: &mut R) -> (Assignment, Assignment) {
    let s = x.s();
    let n = x.n();
    let mut cx: Vec<&[usize]> = Vec::with_capacity(n);
    let mut p = Vec::new();
    let mut q = Vec::new();
    // Vectors are sorted by a first coordinate that is a permutation, so
    // equal vectors sit in equal slots.
    for i in 0..n {
        if x.vector(i) == y.vector(i) {
            cx.push(x.vector(i));
        } else {
            p.push(x.vector(i));
            q.push(y.vector(i));
        }
    }
    let mut cy = cx.clone();
    p.shuffle(rng);
    q.shuffle(rng);
    for (u, v) in p.into_iter().zip(q) {
        if rng.gen_bool(ROUTE_KEEP) {
            cx.push(u);
            cy.push(v);
        } else {
            cx.push(v);
            cy.push(u);
        }
    }
    (repair(&cx, s, n, rng), repair(&cy, s, n, rng))
}

fn repair<R: Rng>(vecs: &[&[usize]], s: usize, n: usize, rng: &mut R) -> Assignment {
    let mut coords: Vec<usize> = vecs.concat();
    let mut seen = vec![false; n];
    let mut dups = Vec::new();
    for d in 0..s {
        seen.fill(false);
        dups.clear();
        for i in 0..n {
            let v = coords[i * s + d];
            if seen[v] {
                dups.push(i);
            } else {
                seen[v] = true;
            }
        }
        let mut unused: Vec<usize> = (0..n).filter(|&v| !seen[v]).collect();
        for &i in &dups {
            let k = rng.gen_range(0..unused.len());
            coords[i * s + d] = unused.swap_remove(k);
        }
    }
    Assignment::canonical(s, coords)
}
