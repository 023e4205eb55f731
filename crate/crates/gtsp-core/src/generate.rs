//! Clustered instance generation.
//!
//! Centers are seeded by farthest-point selection from a random start and
//! refined by Lloyd iterations (centroids for coordinates, medoids for
//! matrices). Empty clusters are repaired by moving the vertex of the largest
//! cluster that lies farthest from its center.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{GtspError, Result};
use crate::instance::GtspInstance;
use crate::tsplib::Geometry;
use crate::Weight;

const MAX_LLOYD_ROUNDS: usize = 100;

/// Default cluster count `ceil(n / 5)`.
pub fn default_cluster_count(n: usize) -> usize {
    n.div_ceil(5)
}

enum Centers {
    Points(Vec<(f64, f64)>),
    Medoids(Vec<usize>),
}

struct Metric<'a> {
    geom: &'a Geometry,
}

impl Metric<'_> {
    fn vv(&self, a: usize, b: usize) -> f64 {
        match self.geom {
            Geometry::Points(p) => dist(p[a], p[b]),
            Geometry::Matrix { n, weights } => {
                (weights[a * n + b] as f64 + weights[b * n + a] as f64) / 2.0
            }
        }
    }

    fn to_center(&self, v: usize, centers: &Centers, k: usize) -> f64 {
        match (centers, self.geom) {
            (Centers::Points(c), Geometry::Points(p)) => dist(p[v], c[k]),
            (Centers::Medoids(c), _) => self.vv(v, c[k]),
            _ => unreachable!(),
        }
    }
}

fn dist(a: (f64, f64), b: (f64, f64)) -> f64 {
    ((a.0 - b.0).powi(2) + (a.1 - b.1).powi(2)).sqrt()
}

/// Partitions the vertices of `geom` into `m` localized clusters
/// (`m = ceil(n/5)` when omitted) and builds the instance.
pub fn generate_clustered(geom: &Geometry, m: Option<usize>, seed: u64) -> Result<GtspInstance> {
    let n = geom.n();
    let m = m.unwrap_or_else(|| default_cluster_count(n));
    if m > n {
        return Err(GtspError::InvalidArgument(format!("m = {m} exceeds n = {n}")));
    }
    if m < 2 {
        return Err(GtspError::InvalidArgument(format!("m = {m} is below 2")));
    }
    let assign = cluster_vertices(geom, m, seed);
    let mut clusters = vec![Vec::new(); m];
    for (v, &c) in assign.iter().enumerate() {
        clusters[c].push(v);
    }
    GtspInstance::new(clusters, geom.weights())
}

/// Cluster index of every vertex.
pub fn cluster_vertices(geom: &Geometry, m: usize, seed: u64) -> Vec<usize> {
    let n = geom.n();
    let metric = Metric { geom };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut seeds = vec![rng.gen_range(0..n)];
    let mut near: Vec<f64> = (0..n).map(|v| metric.vv(v, seeds[0])).collect();
    while seeds.len() < m {
        let mut best = 0;
        for v in 1..n {
            if near[v] > near[best] {
                best = v;
            }
        }
        if near[best] <= 0.0 {
            // Coincident points: take the lowest unused vertex.
            best = (0..n).find(|v| !seeds.contains(v)).unwrap();
        }
        seeds.push(best);
        for v in 0..n {
            near[v] = near[v].min(metric.vv(v, best));
        }
    }
    let mut centers = match geom {
        Geometry::Points(p) => Centers::Points(seeds.iter().map(|&s| p[s]).collect()),
        Geometry::Matrix { .. } => Centers::Medoids(seeds.clone()),
    };
    let mut assign = vec![usize::MAX; n];
    for _ in 0..MAX_LLOYD_ROUNDS {
        let mut next = vec![0; n];
        for v in 0..n {
            let mut best = 0;
            let mut bd = metric.to_center(v, &centers, 0);
            for k in 1..m {
                let d = metric.to_center(v, &centers, k);
                if d < bd {
                    bd = d;
                    best = k;
                }
            }
            next[v] = best;
        }
        repair_empty(&metric, &centers, &mut next, m);
        if next == assign {
            break;
        }
        assign = next;
        centers = recenter(geom, &metric, &assign, m);
    }
    assign
}

fn repair_empty(metric: &Metric, centers: &Centers, assign: &mut [usize], m: usize) {
    loop {
        let mut sizes = vec![0usize; m];
        for &c in assign.iter() {
            sizes[c] += 1;
        }
        let Some(empty) = (0..m).find(|&k| sizes[k] == 0) else { return };
        let largest = (0..m).max_by_key(|&k| (sizes[k], std::cmp::Reverse(k))).unwrap();
        let mut pick = usize::MAX;
        let mut pd = f64::NEG_INFINITY;
        for (v, &c) in assign.iter().enumerate() {
            if c == largest {
                let d = metric.to_center(v, centers, largest);
                if d > pd {
                    pd = d;
                    pick = v;
                }
            }
        }
        assign[pick] = empty;
    }
}

fn recenter(geom: &Geometry, metric: &Metric, assign: &[usize], m: usize) -> Centers {
    let mut members = vec![Vec::new(); m];
    for (v, &c) in assign.iter().enumerate() {
        members[c].push(v);
    }
    match geom {
        Geometry::Points(p) => Centers::Points(
            members
                .iter()
                .map(|ms| {
                    let k = ms.len() as f64;
                    let sx: f64 = ms.iter().map(|&v| p[v].0).sum();
                    let sy: f64 = ms.iter().map(|&v| p[v].1).sum();
                    (sx / k, sy / k)
                })
                .collect(),
        ),
        Geometry::Matrix { .. } => Centers::Medoids(
            members
                .iter()
                .map(|ms| {
                    let cost = |a: usize| ms.iter().map(|&b| metric.vv(a, b)).sum::<f64>();
                    let mut best = ms[0];
                    let mut bc = cost(best);
                    for &a in &ms[1..] {
                        let c = cost(a);
                        if c < bc {
                            bc = c;
                            best = a;
                        }
                    }
                    best
                })
                .collect(),
        ),
    }
}

/// `n` points uniform in `[0, side)^2`, rounded to integers.
pub fn random_points(n: usize, side: f64, seed: u64) -> Vec<(f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| ((rng.gen::<f64>() * side).floor(), (rng.gen::<f64>() * side).floor()))
        .collect()
}

/// Random planar instance with `n` points in a 1000 x 1000 square split into
/// `m` localized clusters.
pub fn random_euclidean(n: usize, m: usize, seed: u64) -> Result<GtspInstance> {
    let pts = random_points(n, 1000.0, seed);
    generate_clustered(&Geometry::Points(pts), Some(m), seed ^ 0x9e37_79b9)
}

/// Instance with the given cluster sizes and weights uniform in `1..=max_w`.
/// Vertices are numbered cluster by cluster.
pub fn random_instance(sizes: &[usize], symmetric: bool, max_w: Weight, seed: u64) -> GtspInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n: usize = sizes.iter().sum();
    let mut clusters = Vec::with_capacity(sizes.len());
    let mut next = 0;
    for &s in sizes {
        clusters.push((next..next + s).collect());
        next += s;
    }
    let mut w = vec![0; n * n];
    for x in 0..n {
        for y in 0..n {
            if x == y || (symmetric && y < x) {
                continue;
            }
            let v = rng.gen_range(1..=max_w);
            w[x * n + y] = v;
            if symmetric {
                w[y * n + x] = v;
            }
        }
    }
    GtspInstance::new(clusters, w).expect("valid random instance")
}
