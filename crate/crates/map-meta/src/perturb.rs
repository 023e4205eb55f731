//! Random modifications of an assignment.

use map_core::Assignment;
use rand::seq::{index, SliceRandom};
use rand::Rng;

/// `ceil(n mu / 2)` swaps, at least one.
pub fn perturb_count(n: usize, mu: f64) -> usize {
    ((n as f64 * mu / 2.0).ceil() as usize).max(1)
}

/// `count` swaps, each exchanging the coordinates of two distinct vectors
/// in one random dimension. Assignments with fewer than two vectors come
/// back unchanged.
pub fn perturb<R: Rng>(a: &Assignment, count: usize, rng: &mut R) -> Assignment {
    let (n, s) = (a.n(), a.s());
    let mut coords = a.flat().to_vec();
    if n < 2 {
        return a.clone();
    }
    for _ in 0..count {
        let u = rng.gen_range(0..n);
        let v = (u + rng.gen_range(1..n)) % n;
        let d = rng.gen_range(0..s);
        coords.swap(u * s + d, v * s + d);
    }
    Assignment::canonical(s, coords)
}

/// Vectors recombined by one Chain perturbation: `ceil(n/25) + 1`.
pub fn chain_perturb_size(n: usize) -> usize {
    n.div_ceil(25) + 1
}

/// A random p-opt move: picks `p` vectors and shuffles their coordinates
/// among them in every dimension but the first.
pub fn random_p_opt<R: Rng>(a: &Assignment, p: usize, rng: &mut R) -> Assignment {
    let (n, s) = (a.n(), a.s());
    let p = p.min(n);
    let slots = index::sample(rng, n, p).into_vec();
    let mut coords = a.flat().to_vec();
    let mut vals = Vec::with_capacity(p);
    for d in 1..s {
        vals.clear();
        vals.extend(slots.iter().map(|&i| coords[i * s + d]));
        vals.shuffle(rng);
        for (&i, &x) in slots.iter().zip(&vals) {
            coords[i * s + d] = x;
        }
    }
    Assignment::canonical(s, coords)
}
