//! GTSP preprocessing: removal of vertices and edges that no optimal tour
//! needs.
//!
//! A vertex `r` of cluster `C` is redundant when every path `x -> r -> y`
//! (with `x`, `y` in distinct clusters other than `C`) can be rerouted
//! through another vertex of `C` at no extra cost. An edge `u -> v` is
//! redundant when every continuation `u -> v -> x` can be rerouted through
//! another vertex of `v`'s cluster. Ties are weak (`<=`); vertices are
//! tested from the highest index down inside each cluster so that of two
//! interchangeable vertices the lower-indexed one survives.

use std::time::{Duration, Instant};

use gtsp_core::{GtspInstance, Result, Weight, INF};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ReductionReport {
    /// Removed vertices, as indices of the input instance, ascending.
    pub removed_vertices: Vec<usize>,
    /// For every vertex of the output, its index in the input.
    pub kept: Vec<usize>,
    pub removed_edges: usize,
    pub elapsed: Duration,
}

impl ReductionReport {
    pub fn removed_vertex_count(&self) -> usize {
        self.removed_vertices.len()
    }
}

/// Which reductions [`reduce`] applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reduction {
    None,
    Vertices,
    Edges,
    Both,
}

impl std::str::FromStr for Reduction {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "none" => Ok(Reduction::None),
            "vertices" => Ok(Reduction::Vertices),
            "edges" => Ok(Reduction::Edges),
            "both" => Ok(Reduction::Both),
            _ => Err(format!("unknown reduction '{s}' (expected none, vertices, edges or both)")),
        }
    }
}

pub fn reduce(inst: &GtspInstance, mode: Reduction) -> Result<(GtspInstance, ReductionReport)> {
    match mode {
        Reduction::None => Ok((inst.clone(), ReductionReport { kept: (0..inst.n()).collect(), ..Default::default() })),
        Reduction::Vertices => reduce_vertices(inst),
        Reduction::Edges => reduce_edges(inst),
        Reduction::Both => preprocess(inst),
    }
}

/// Vertex reduction followed by edge reduction.
pub fn preprocess(inst: &GtspInstance) -> Result<(GtspInstance, ReductionReport)> {
    let started = Instant::now();
    let (reduced, mut report) = reduce_vertices(inst)?;
    let (out, edges) = reduce_edges(&reduced)?;
    report.removed_edges = edges.removed_edges;
    report.elapsed = started.elapsed();
    Ok((out, report))
}

fn ew(w: Weight) -> i128 {
    w as i128
}

/// `x -> via -> y` through finite edges only.
fn through(inst: &GtspInstance, x: usize, via: usize, y: usize) -> Option<i128> {
    let (a, b) = (inst.w(x, via), inst.w(via, y));
    (a < INF && b < INF).then(|| ew(a) + ew(b))
}

fn vertex_redundant(inst: &GtspInstance, alive: &[bool], r: usize) -> bool {
    let c = inst.cluster_of(r);
    let others: Vec<usize> = inst.cluster(c).iter().copied().filter(|&v| v != r && alive[v]).collect();
    if others.is_empty() {
        return false;
    }
    // Early exit: with a_x the best saving any r' offers on x -> r and b_y
    // the best on r -> y, a pair with a_x + b_y < 0 is never rerouted.
    let (mut in_prev, mut out_prev) = (i128::MAX, i128::MAX);
    for z in 0..inst.m() {
        if z == c {
            continue;
        }
        let (mut in_z, mut out_z) = (i128::MAX, i128::MAX);
        for &x in inst.cluster(z).iter().filter(|&&x| alive[x]) {
            let a = others.iter().map(|&o| ew(inst.w(x, r)) - ew(inst.w(x, o))).max().unwrap();
            let b = others.iter().map(|&o| ew(inst.w(r, x)) - ew(inst.w(o, x))).max().unwrap();
            in_z = in_z.min(a);
            out_z = out_z.min(b);
        }
        if in_z == i128::MAX {
            continue;
        }
        if (in_prev != i128::MAX && in_prev + out_z < 0) || (out_prev != i128::MAX && in_z + out_prev < 0) {
            return false;
        }
        in_prev = in_prev.min(in_z);
        out_prev = out_prev.min(out_z);
    }
    for x in (0..inst.n()).filter(|&x| alive[x] && inst.cluster_of(x) != c) {
        for y in (0..inst.n()).filter(|&y| alive[y]) {
            let cy = inst.cluster_of(y);
            if cy == c || cy == inst.cluster_of(x) {
                continue;
            }
            let cur = ew(inst.w(x, r)) + ew(inst.w(r, y));
            if !others.iter().any(|&o| through(inst, x, o, y).is_some_and(|alt| alt <= cur)) {
                return false;
            }
        }
    }
    true
}

/// Removes redundant vertices. Vertices are scanned cluster by cluster in
/// two rounds at most; the second round only runs when the first removed
/// something.
pub fn reduce_vertices(inst: &GtspInstance) -> Result<(GtspInstance, ReductionReport)> {
    let started = Instant::now();
    let n = inst.n();
    let mut alive = vec![true; n];
    if inst.m() >= 3 {
        for _round in 0..2 {
            let mut removed = false;
            for c in 0..inst.m() {
                for &r in inst.cluster(c).iter().rev() {
                    if alive[r] && vertex_redundant(inst, &alive, r) {
                        alive[r] = false;
                        removed = true;
                    }
                }
            }
            if !removed {
                break;
            }
        }
    }
    let dead: Vec<bool> = alive.iter().map(|a| !a).collect();
    let (out, _) = inst.without_vertices(&dead)?;
    let report = ReductionReport {
        removed_vertices: (0..n).filter(|&v| !alive[v]).collect(),
        kept: (0..n).filter(|&v| alive[v]).collect(),
        removed_edges: 0,
        elapsed: started.elapsed(),
    };
    Ok((out, report))
}

/// Sets every redundant edge to the infinity sentinel.
pub fn reduce_edges(inst: &GtspInstance) -> Result<(GtspInstance, ReductionReport)> {
    let started = Instant::now();
    let n = inst.n();
    let mut w = inst.matrix().to_vec();
    let mut count = 0;
    if inst.m() >= 3 {
        for c in 0..inst.m() {
            let members = inst.cluster(c);
            if members.len() < 2 {
                continue;
            }
            for &v in members.iter().rev() {
                count += reduce_edges_into(inst, &mut w, v);
            }
        }
    }
    let out = inst.with_weights(w)?;
    let report = ReductionReport {
        removed_vertices: Vec::new(),
        kept: (0..n).collect(),
        removed_edges: count,
        elapsed: started.elapsed(),
    };
    Ok((out, report))
}

/// Tests every edge `u -> v`. `P` holds `w(v -> x) - w(v'' -> x)` sorted,
/// so for each `u` only the prefix where `v''` fails to reroute is scanned.
fn reduce_edges_into(inst: &GtspInstance, w: &mut [Weight], v: usize) -> usize {
    let n = inst.n();
    let c = inst.cluster_of(v);
    let others: Vec<usize> = inst.cluster(c).iter().copied().filter(|&o| o != v).collect();
    let v2 = others[0];
    let outside: Vec<usize> = (0..n).filter(|&x| inst.cluster_of(x) != c).collect();
    let at = |w: &[Weight], a: usize, b: usize| w[a * n + b];
    let mut p: Vec<(i128, usize)> = outside.iter().map(|&x| (ew(at(w, v, x)) - ew(at(w, v2, x)), x)).collect();
    p.sort_unstable();
    let v2_finite = outside.iter().all(|&x| at(w, v2, x) < INF);
    let mut count = 0;
    for &u in &outside {
        let wuv = at(w, u, v);
        if wuv >= INF {
            continue;
        }
        let cu = inst.cluster_of(u);
        let reroutes = |w: &[Weight], o: usize, x: usize| {
            let (a, b) = (at(w, u, o), at(w, o, x));
            a < INF && b < INF && ew(a) + ew(b) <= ew(wuv) + ew(at(w, v, x))
        };
        let redundant = if v2_finite && at(w, u, v2) < INF {
            let delta = ew(wuv) - ew(at(w, u, v2));
            p.iter()
                .take_while(|&&(px, _)| px + delta < 0)
                .filter(|&&(_, x)| inst.cluster_of(x) != cu)
                .all(|&(_, x)| others[1..].iter().any(|&o| reroutes(w, o, x)))
        } else {
            outside
                .iter()
                .filter(|&&x| inst.cluster_of(x) != cu)
                .all(|&x| others.iter().any(|&o| reroutes(w, o, x)))
        };
        if redundant {
            w[u * n + v] = INF;
            count += 1;
        }
    }
    count
}
