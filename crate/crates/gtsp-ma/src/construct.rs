//! Construction heuristics.

use gtsp_core::{GtspInstance, Tour};
use gtsp_search::{co_sequence, Refinements};
use rand::seq::SliceRandom;
use rand::Rng;

/// Nearest neighbour from `start`: repeatedly moves to the lightest edge
/// into a cluster not yet visited (lowest vertex index on ties).
pub fn nn_construct(inst: &GtspInstance, start: usize) -> Tour {
    let m = inst.m();
    let mut visited = vec![false; m];
    let mut seq = Vec::with_capacity(m);
    let mut cur = start;
    visited[inst.cluster_of(cur)] = true;
    seq.push(cur);
    for _ in 1..m {
        let next = (0..inst.n())
            .filter(|&v| !visited[inst.cluster_of(v)])
            .min_by_key(|&v| (inst.w(cur, v), v))
            .expect("an unvisited cluster remains");
        visited[inst.cluster_of(next)] = true;
        seq.push(next);
        cur = next;
    }
    Tour::from_sequence(inst, &seq).expect("one vertex per cluster")
}

/// Start vertex of run `r`: the first vertex of cluster `r mod m`.
pub fn nn_start(inst: &GtspInstance, run: usize) -> usize {
    inst.cluster(run % inst.m())[0]
}

/// Uniformly random cluster order with optimal vertices for it.
pub fn semirandom_construct<R: Rng + ?Sized>(inst: &GtspInstance, rng: &mut R) -> Tour {
    let mut order: Vec<usize> = (0..inst.m()).collect();
    order.shuffle(rng);
    match co_sequence(inst, &order, Refinements::ALL) {
        Ok((_, seq)) => Tour::from_sequence(inst, &seq).expect("CO returns one vertex per cluster"),
        // Every selection of this order is blocked; any selection will do.
        Err(_) => Tour::from_order(inst, &order, &first_vertices(inst)).expect("valid order"),
    }
}

fn first_vertices(inst: &GtspInstance) -> Vec<usize> {
    (0..inst.m()).map(|c| inst.cluster(c)[0]).collect()
}
