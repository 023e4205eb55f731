//! Shortest paths and cycles in small layered networks.

use gtsp_core::{wadd, GtspInstance, Weight, INF};

/// Dense row-major matrix of path weights between two layers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Weight>,
}

impl Mat {
    pub fn filled(rows: usize, cols: usize, v: Weight) -> Mat {
        Mat { rows, cols, data: vec![v; rows * cols] }
    }

    /// Zero diagonal, `INF` elsewhere: the "path" through a single layer.
    pub fn identity(size: usize) -> Mat {
        let mut m = Mat::filled(size, size, INF);
        for i in 0..size {
            m.data[i * size + i] = 0;
        }
        m
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Weight {
        self.data[r * self.cols + c]
    }

    pub fn view(&self) -> View<'_> {
        View { rows: self.rows, cols: self.cols, data: &self.data }
    }

    pub fn min(&self) -> Weight {
        self.data.iter().copied().min().unwrap_or(INF)
    }

    pub fn transposed(&self) -> Mat {
        let mut t = Mat::filled(self.cols, self.rows, 0);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }
}

/// Borrowed matrix: either a [`Mat`] or a cluster-pair block.
#[derive(Debug, Clone, Copy)]
pub struct View<'a> {
    pub rows: usize,
    pub cols: usize,
    pub data: &'a [Weight],
}

impl View<'_> {
    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Weight {
        self.data[r * self.cols + c]
    }
}

/// Weight block between clusters `x` and `y` as a view.
pub fn block(inst: &GtspInstance, x: usize, y: usize) -> View<'_> {
    View { rows: inst.cluster_size(x), cols: inst.cluster_size(y), data: inst.block(x, y) }
}

/// Same block read in the opposite direction: entry `(i, j)` is the weight
/// from the `j`-th vertex of `y` to the `i`-th vertex of `x`.
pub fn reverse_block(inst: &GtspInstance, x: usize, y: usize) -> Mat {
    let b = block(inst, y, x);
    let mut out = Mat::filled(b.cols, b.rows, 0);
    for r in 0..b.rows {
        for c in 0..b.cols {
            out.data[c * b.rows + r] = b.get(r, c);
        }
    }
    out
}

/// `out[i][k] = min_j a[i][j] + b[j][k]`.
pub fn min_plus(a: View, b: View) -> Mat {
    debug_assert_eq!(a.cols, b.rows);
    let mut out = Mat::filled(a.rows, b.cols, INF);
    for i in 0..a.rows {
        let row = &mut out.data[i * b.cols..(i + 1) * b.cols];
        for j in 0..a.cols {
            let aij = a.get(i, j);
            if aij >= INF {
                continue;
            }
            let brow = &b.data[j * b.cols..(j + 1) * b.cols];
            for (o, &bv) in row.iter_mut().zip(brow) {
                let v = wadd(aij, bv);
                if v < *o {
                    *o = v;
                }
            }
        }
    }
    out
}

/// Relaxes a distance vector over the layer `a.rows` through `a`.
pub fn relax(dist: &[Weight], a: View) -> Vec<Weight> {
    let mut out = vec![INF; a.cols];
    for (j, &d) in dist.iter().enumerate() {
        if d >= INF {
            continue;
        }
        let row = &a.data[j * a.cols..(j + 1) * a.cols];
        for (o, &w) in out.iter_mut().zip(row) {
            let v = wadd(d, w);
            if v < *o {
                *o = v;
            }
        }
    }
    out
}

/// Weight of the shortest cycle through layers `0..k` where `mats[i]`
/// connects layer `i` to layer `(i + 1) % k`. The DP starts at the smallest
/// layer. Returns `INF` when no finite cycle exists.
pub fn min_cycle(mats: &[View]) -> Weight {
    let k = mats.len();
    assert!(k >= 1);
    let mut start = 0;
    for i in 1..k {
        if mats[i].rows < mats[start].rows {
            start = i;
        }
    }
    let mut best = INF;
    for r in 0..mats[start].rows {
        let mut dist: Vec<Weight> = (0..mats[start].cols).map(|c| mats[start].get(r, c)).collect();
        for step in 1..k {
            dist = relax(&dist, mats[(start + step) % k]);
        }
        best = best.min(dist[r]);
    }
    best
}

/// Shortest path `a -> c_1 -> ... -> c_k -> b` through the clusters of
/// `mid` between two fixed vertices. Ties go to the lowest vertex index of
/// the earliest position. Returns the weight and the chosen vertices.
pub fn best_fixed_path(inst: &GtspInstance, a: usize, mid: &[usize], b: usize) -> (Weight, Vec<usize>) {
    let k = mid.len();
    if k == 0 {
        return (inst.w(a, b), Vec::new());
    }
    // suffix[i][x]: cheapest continuation from the x-th vertex of mid[i] to b.
    let mut suffix: Vec<Vec<Weight>> = vec![Vec::new(); k];
    suffix[k - 1] = inst.cluster(mid[k - 1]).iter().map(|&x| inst.w(x, b)).collect();
    for i in (0..k - 1).rev() {
        let next = &suffix[i + 1];
        let nc = inst.cluster(mid[i + 1]);
        suffix[i] = inst
            .cluster(mid[i])
            .iter()
            .map(|&x| {
                nc.iter()
                    .zip(next)
                    .fold(INF, |acc, (&y, &s)| acc.min(wadd(inst.w(x, y), s)))
            })
            .collect();
    }
    let mut chosen = Vec::with_capacity(k);
    let mut prev = a;
    let mut total = 0;
    let first = inst.cluster(mid[0]);
    let opt = first
        .iter()
        .zip(&suffix[0])
        .fold(INF, |acc, (&x, &s)| acc.min(wadd(inst.w(a, x), s)));
    for i in 0..k {
        let c = inst.cluster(mid[i]);
        let mut pick = c[0];
        for (j, &x) in c.iter().enumerate() {
            if wadd(wadd(total, inst.w(prev, x)), suffix[i][j]) == opt {
                pick = x;
                break;
            }
        }
        total = wadd(total, inst.w(prev, pick));
        chosen.push(pick);
        prev = pick;
    }
    (opt, chosen)
}
