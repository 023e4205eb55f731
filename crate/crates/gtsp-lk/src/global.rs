//! Shortest-path tables of the Global variant.

use gtsp_core::{GtspInstance, Weight, INF};

fn add(a: Weight, b: Weight) -> Weight {
    if a >= INF || b >= INF {
        INF
    } else {
        (a + b).min(INF)
    }
}

/// Shortest path through `order` from any vertex of the first cluster to
/// any vertex of the last. Ties go to the lowest vertex index.
pub fn best_open_path(inst: &GtspInstance, order: &[usize]) -> (Weight, Vec<usize>) {
    let k = order.len();
    // suffix[i][j]: cheapest continuation from the j-th vertex of order[i].
    let mut suffix: Vec<Vec<Weight>> = vec![Vec::new(); k];
    suffix[k - 1] = vec![0; inst.cluster_size(order[k - 1])];
    for i in (0..k - 1).rev() {
        let nc = inst.cluster(order[i + 1]);
        let next = &suffix[i + 1];
        suffix[i] = inst
            .cluster(order[i])
            .iter()
            .map(|&x| nc.iter().zip(next).fold(INF, |acc, (&y, &s)| acc.min(add(inst.w(x, y), s))))
            .collect();
    }
    let opt = suffix[0].iter().copied().min().unwrap();
    let mut out = Vec::with_capacity(k);
    let mut total = 0;
    for i in 0..k {
        let c = inst.cluster(order[i]);
        let mut pick = 0;
        for j in 0..c.len() {
            let step = if i == 0 { 0 } else { inst.w(out[i - 1], c[j]) };
            if add(add(total, step), suffix[i][j]) == opt {
                pick = j;
                break;
            }
        }
        if i > 0 {
            total = add(total, inst.w(out[i - 1], c[pick]));
        }
        out.push(c[pick]);
    }
    (opt, out)
}

/// For the path with cluster order `c` and every break position `i`
/// (`1 <= i <= m-3`), the shortest-path weight of the rearranged order
/// `c_0 .. c_i, c_{m-1}, c_{m-2}, .., c_{i+1}`. Entry `i` of the result;
/// other entries are `INF`.
pub fn rearranged_weights(inst: &GtspInstance, c: &[usize]) -> Vec<Weight> {
    let m = c.len();
    let mut out = vec![INF; m];
    if m < 4 {
        return out;
    }
    // fwd[i][x]: best path from c_0 to the x-th vertex of c_i along the order.
    let mut fwd: Vec<Vec<Weight>> = Vec::with_capacity(m);
    fwd.push(vec![0; inst.cluster_size(c[0])]);
    for i in 1..m - 2 {
        let prev = &fwd[i - 1];
        let pc = inst.cluster(c[i - 1]);
        let row = inst
            .cluster(c[i])
            .iter()
            .map(|&v| pc.iter().zip(prev).fold(INF, |acc, (&u, &l)| acc.min(add(l, inst.w(u, v)))))
            .collect();
        fwd.push(row);
    }
    // back[e][q]: best path from the e-th vertex of c_{m-1} down to the
    // q-th vertex of c_k, walking c_{m-1} -> c_{m-2} -> .. -> c_k.
    let ec = inst.cluster(c[m - 1]);
    let mut back: Vec<Vec<Weight>> =
        ec.iter().map(|&e| inst.cluster(c[m - 2]).iter().map(|&q| inst.w(e, q)).collect()).collect();
    let mut k = m - 2;
    loop {
        let i = k - 1;
        if (1..=m - 3).contains(&i) {
            let tail: Vec<Weight> = back.iter().map(|row| row.iter().copied().min().unwrap()).collect();
            let xc = inst.cluster(c[i]);
            let mut best = INF;
            for (xi, &x) in xc.iter().enumerate() {
                for (ei, &e) in ec.iter().enumerate() {
                    best = best.min(add(add(fwd[i][xi], inst.w(x, e)), tail[ei]));
                }
            }
            out[i] = best;
        }
        if k <= 2 {
            break;
        }
        let from = inst.cluster(c[k]);
        let to = inst.cluster(c[k - 1]);
        back = back
            .iter()
            .map(|row| {
                to.iter()
                    .map(|&q| from.iter().zip(row).fold(INF, |acc, (&p, &l)| acc.min(add(l, inst.w(p, q)))))
                    .collect()
            })
            .collect();
        k -= 1;
    }
    out
}
