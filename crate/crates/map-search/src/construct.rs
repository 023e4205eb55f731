//! Construction heuristics. Every one scans the weight tensor, so the
//! instance must be dense. Ties go to the vector with the lowest row-major
//! index and, in Max-Regret, to the lowest `(dimension, value)` pair.

use std::fmt;
use std::str::FromStr;

use map_core::{Assignment, MapError, MapInstance, Result, Weight};

use crate::ap::ap_solve;

const NO_WEIGHT: Weight = 1 << 62;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Construction {
    Trivial,
    Greedy,
    MaxRegret,
    Rom,
    ShiftRom,
}

impl Construction {
    pub const ALL: [Construction; 5] =
        [Construction::Trivial, Construction::Greedy, Construction::MaxRegret, Construction::Rom, Construction::ShiftRom];

    pub fn id(self) -> &'static str {
        match self {
            Construction::Trivial => "trivial",
            Construction::Greedy => "greedy",
            Construction::MaxRegret => "maxregret",
            Construction::Rom => "rom",
            Construction::ShiftRom => "shiftrom",
        }
    }

    /// Runs the optimized implementation.
    pub fn build(self, inst: &MapInstance) -> Result<Assignment> {
        match self {
            Construction::Trivial => Ok(trivial_construct(inst)),
            Construction::Greedy => greedy_construct(inst),
            Construction::MaxRegret => max_regret_construct(inst),
            Construction::Rom => rom_construct(inst),
            Construction::ShiftRom => shift_rom_construct(inst),
        }
    }
}

impl FromStr for Construction {
    type Err = MapError;
    fn from_str(s: &str) -> Result<Self> {
        Construction::ALL
            .into_iter()
            .find(|c| c.id() == s)
            .ok_or_else(|| MapError::InvalidArgument(format!("unknown construction {s:?}")))
    }
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

fn need_dense(inst: &MapInstance) -> Result<()> {
    if inst.is_dense() {
        Ok(())
    } else {
        Err(MapError::Unsupported("construction heuristics scan the full tensor; instance is oracle-only".into()))
    }
}

/// Vectors not yet excluded by a partial assignment, in row-major order.
struct Available {
    free: Vec<Vec<usize>>,
}

impl Available {
    fn new(s: usize, n: usize) -> Self {
        Available { free: vec![(0..n).collect(); s] }
    }

    fn remaining(&self) -> usize {
        self.free.first().map_or(0, Vec::len)
    }

    fn take(&mut self, e: &[usize]) {
        for (d, &x) in e.iter().enumerate() {
            self.free[d].retain(|&y| y != x);
        }
    }

    fn is_free(&self, e: &[usize]) -> bool {
        e.iter().enumerate().all(|(d, x)| self.free[d].contains(x))
    }

    /// Calls `f(e)` for every available vector; stops when `f` returns false.
    fn scan(&self, mut f: impl FnMut(&[usize]) -> bool) {
        let s = self.free.len();
        let r = self.remaining();
        if r == 0 {
            return;
        }
        let mut pos = vec![0; s];
        let mut e: Vec<usize> = self.free.iter().map(|f| f[0]).collect();
        loop {
            if !f(&e) {
                return;
            }
            let mut d = s;
            loop {
                if d == 0 {
                    return;
                }
                d -= 1;
                pos[d] += 1;
                if pos[d] < r {
                    e[d] = self.free[d][pos[d]];
                    break;
                }
                pos[d] = 0;
                e[d] = self.free[d][0];
            }
        }
    }
}

/// `A^i = (i, ..., i)`.
pub fn trivial_construct(inst: &MapInstance) -> Assignment {
    Assignment::diagonal(inst.n(), inst.s())
}

/// Adds the lightest feasible vector `n` times, scanning the whole tensor
/// on every step.
pub fn greedy_naive(inst: &MapInstance) -> Result<Assignment> {
    need_dense(inst)?;
    let (s, n) = (inst.s(), inst.n());
    let mut used = vec![vec![false; n]; s];
    let mut out = Vec::with_capacity(n * s);
    let mut e = vec![0; s];
    for _ in 0..n {
        let mut best: Option<(Weight, Vec<usize>)> = None;
        for _ in 0..inst.cells().unwrap() {
            if e.iter().enumerate().all(|(d, &x)| !used[d][x]) {
                let w = inst.weight(&e);
                if best.as_ref().map_or(true, |b| w < b.0) {
                    best = Some((w, e.clone()));
                }
            }
            inst.advance(&mut e);
        }
        let (_, v) = best.expect("a feasible vector remains");
        for (d, &x) in v.iter().enumerate() {
            used[d][x] = true;
        }
        out.extend(v);
    }
    Ok(Assignment::canonical(s, out))
}

/// Greedy with a buffer of the `k = min(64, |X'|)` lightest available
/// vectors per scan and an early stop once the buffer holds only vectors of
/// the smallest possible weight.
pub fn greedy_construct(inst: &MapInstance) -> Result<Assignment> {
    need_dense(inst)?;
    let (s, n) = (inst.s(), inst.n());
    let mut avail = Available::new(s, n);
    let mut w_min = inst.family().and_then(|f| f.known_min()).unwrap_or(0);
    let mut out = Vec::with_capacity(n * s);
    while avail.remaining() > 0 {
        let size = (avail.remaining() as u128).pow(s as u32);
        let k = size.min(64) as usize;
        let mut b: Vec<(Weight, Vec<usize>)> = Vec::with_capacity(k + 1);
        avail.scan(|e| {
            let w = inst.weight(e);
            if b.len() < k || w < b[k - 1].0 {
                let at = b.partition_point(|x| x.0 <= w);
                b.insert(at, (w, e.to_vec()));
                b.truncate(k);
            }
            !(b.len() == k && b[k - 1].0 <= w_min)
        });
        w_min = w_min.max(b[k - 1].0);
        for (_, e) in b {
            if avail.is_free(&e) {
                avail.take(&e);
                out.extend(e);
            }
        }
    }
    Ok(Assignment::canonical(s, out))
}

fn regret(w1: Weight, w2: Weight) -> Weight {
    w2 - w1
}

/// Repeatedly fixes the `(d, v)` whose two lightest available vectors with
/// `e_d = v` differ most, and adds the lighter one. Scans the tensor once
/// per `(d, v)` pair.
pub fn max_regret_naive(inst: &MapInstance) -> Result<Assignment> {
    need_dense(inst)?;
    let (s, n) = (inst.s(), inst.n());
    let mut avail = Available::new(s, n);
    let mut out = Vec::with_capacity(n * s);
    while avail.remaining() > 0 {
        let mut choice: Option<(Weight, Vec<usize>)> = None;
        for d in 0..s {
            for &v in &avail.free[d].clone() {
                let (mut first, mut second): (Option<(Weight, Vec<usize>)>, Weight) = (None, NO_WEIGHT);
                avail.scan(|e| {
                    if e[d] == v {
                        let w = inst.weight(e);
                        match &first {
                            Some((w1, _)) if w >= *w1 => second = second.min(w),
                            _ => {
                                if let Some((w1, _)) = first {
                                    second = w1;
                                }
                                first = Some((w, e.to_vec()));
                            }
                        }
                    }
                    true
                });
                let (w1, e1) = first.expect("value is available");
                let r = regret(w1, second);
                if choice.as_ref().map_or(true, |c| r > c.0) {
                    choice = Some((r, e1));
                }
            }
        }
        let (_, e) = choice.expect("something is available");
        avail.take(&e);
        out.extend(e);
    }
    Ok(Assignment::canonical(s, out))
}

/// Max-Regret with one scan per step, keeping the two lightest vectors for
/// every `(value, dimension)` in a small table.
pub fn max_regret_construct(inst: &MapInstance) -> Result<Assignment> {
    need_dense(inst)?;
    let (s, n) = (inst.s(), inst.n());
    let mut avail = Available::new(s, n);
    let mut out = Vec::with_capacity(n * s);
    while avail.remaining() > 0 {
        // l[v * s + d] = (w1, first vector, w2)
        let mut l: Vec<(Weight, Option<Vec<usize>>, Weight)> = vec![(NO_WEIGHT, None, NO_WEIGHT); n * s];
        avail.scan(|e| {
            let w = inst.weight(e);
            for (d, &v) in e.iter().enumerate() {
                let cell = &mut l[v * s + d];
                if w < cell.0 {
                    cell.2 = cell.0;
                    cell.0 = w;
                    cell.1 = Some(e.to_vec());
                } else if w < cell.2 {
                    cell.2 = w;
                }
            }
            true
        });
        let mut choice: Option<(Weight, usize)> = None;
        for d in 0..s {
            for &v in &avail.free[d] {
                let cell = &l[v * s + d];
                let r = regret(cell.0, cell.2);
                if choice.map_or(true, |c| r > c.0) {
                    choice = Some((r, v * s + d));
                }
            }
        }
        let e = l[choice.expect("something is available").1].1.take().expect("cell was filled");
        avail.take(&e);
        out.extend(e);
    }
    Ok(Assignment::canonical(s, out))
}

/// ROM along the dimension order `ord`; `first` optionally supplies the
/// matrix of the first iteration.
fn rom_ordered(inst: &MapInstance, ord: &[usize], first: Option<&[Weight]>) -> Assignment {
    let (s, n) = (inst.s(), inst.n());
    let mut a = vec![0; n * s];
    for i in 0..n {
        a[i * s + ord[0]] = i;
    }
    let mut e = vec![0; s];
    for j in 1..s {
        let m: Vec<Weight> = match (j, first) {
            (1, Some(m)) => m.to_vec(),
            _ => {
                let mut m = vec![0; n * n];
                let rest = &ord[j + 1..];
                let span = n.pow(rest.len() as u32);
                for i in 0..n {
                    for &d in &ord[..j] {
                        e[d] = a[i * s + d];
                    }
                    for v in 0..n {
                        e[ord[j]] = v;
                        let mut sum = 0;
                        for mut k in 0..span {
                            for &d in rest.iter().rev() {
                                e[d] = k % n;
                                k /= n;
                            }
                            sum += inst.weight(&e);
                        }
                        m[i * n + v] = sum;
                    }
                }
                m
            }
        };
        let (_, pi) = ap_solve(&m, n);
        for i in 0..n {
            a[i * s + ord[j]] = pi[i];
        }
    }
    Assignment::canonical(s, a)
}

/// Recursive Opt Matching: starting from the diagonal, fixes one more
/// dimension per step by an assignment problem over summed weights.
pub fn rom_construct(inst: &MapInstance) -> Result<Assignment> {
    need_dense(inst)?;
    Ok(rom_ordered(inst, &(0..inst.s()).collect::<Vec<_>>(), None))
}

/// Dimension orders tried by Shift-ROM: `(X1 .. Xs)`, `(Xs X1 .. Xs-1)`, ...
pub fn shift_orders(s: usize) -> Vec<Vec<usize>> {
    (0..s).map(|r| (0..s).map(|k| (s - r + k) % s).collect()).collect()
}

fn best_of(inst: &MapInstance, runs: impl Iterator<Item = Assignment>) -> Assignment {
    let mut best: Option<(Weight, Assignment)> = None;
    for a in runs {
        let w = a.weight(inst);
        if best.as_ref().map_or(true, |b| w < b.0) {
            best = Some((w, a));
        }
    }
    best.expect("at least one run").1
}

/// Shift-ROM computing every ROM run from scratch.
pub fn shift_rom_naive(inst: &MapInstance) -> Result<Assignment> {
    need_dense(inst)?;
    Ok(best_of(inst, shift_orders(inst.s()).into_iter().map(|o| rom_ordered(inst, &o, None))))
}

/// Shift-ROM with the first-iteration matrices of all runs gathered in one
/// sequential pass: `M^d[a][b]` sums `w(e)` over `e_d = a, e_{d+1} = b`.
pub fn shift_rom_construct(inst: &MapInstance) -> Result<Assignment> {
    need_dense(inst)?;
    let (s, n) = (inst.s(), inst.n());
    let mut md = vec![vec![0 as Weight; n * n]; s];
    let mut e = vec![0; s];
    for idx in 0..inst.cells().unwrap() {
        let w = inst.weight_at(idx);
        for d in 0..s {
            md[d][e[d] * n + e[(d + 1) % s]] += w;
        }
        inst.advance(&mut e);
    }
    Ok(best_of(inst, shift_orders(s).into_iter().map(|o| rom_ordered(inst, &o, Some(&md[o[0]])))))
}
