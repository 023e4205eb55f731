use std::cell::Cell;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{MapError, Result};
use crate::family::Family;
use crate::Weight;

/// Largest tensor kept in memory.
pub const MAX_DENSE_CELLS: usize = 1 << 27;

/// Decomposable instances up to this size also get a dense copy, which makes
/// evaluation a single lookup.
const MATERIALIZE_CELLS: usize = 1 << 22;

thread_local! {
    static EVALS: Cell<u64> = const { Cell::new(0) };
}

/// Number of vector weights evaluated on this thread so far. Differences of
/// this counter serve as a deterministic work measure.
pub fn weight_evaluations() -> u64 {
    EVALS.with(Cell::get)
}

#[derive(Debug, Clone, PartialEq)]
enum Dense {
    Narrow(Vec<u8>),
    Wide(Vec<u32>),
}

#[derive(Debug, Clone, PartialEq)]
enum Tables {
    None,
    /// `d^{i,j}` for `i < j` in lexicographic order, each `n x n` row-major.
    Pairs { d: Vec<Vec<Weight>>, root: bool },
    Points(Vec<Vec<(i64, i64)>>),
    Factors(Vec<Vec<Weight>>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct MapInstance {
    s: usize,
    n: usize,
    strides: Vec<usize>,
    dense: Option<Dense>,
    tables: Tables,
    min_weight: Option<Weight>,
    family: Option<Family>,
    seed: Option<u64>,
}

fn cells(s: usize, n: usize) -> Option<usize> {
    u32::try_from(s).ok().and_then(|s| n.checked_pow(s))
}

fn check_shape(s: usize, n: usize) -> Result<()> {
    if s < 2 || n < 1 {
        return Err(MapError::InvalidArgument(format!("need s >= 2 and n >= 1, got s={s}, n={n}")));
    }
    Ok(())
}

impl MapInstance {
    fn bare(s: usize, n: usize, tables: Tables) -> Self {
        let mut strides = vec![1; s];
        for d in (0..s.saturating_sub(1)).rev() {
            strides[d] = strides[d + 1] * n;
        }
        MapInstance { s, n, strides, dense: None, tables, min_weight: None, family: None, seed: None }
    }

    /// Instance from a row-major tensor of `n^s` non-negative weights.
    pub fn from_dense(s: usize, n: usize, weights: Vec<Weight>) -> Result<Self> {
        check_shape(s, n)?;
        let len = cells(s, n).filter(|&c| c <= MAX_DENSE_CELLS);
        if len != Some(weights.len()) {
            return Err(MapError::InvalidArgument(format!(
                "tensor of {} cells does not match s={s}, n={n} (limit {MAX_DENSE_CELLS})",
                weights.len()
            )));
        }
        if let Some(w) = weights.iter().find(|&&w| !(0..=u32::MAX as Weight).contains(&w)) {
            return Err(MapError::InvalidArgument(format!("weight {w} outside 0..=u32::MAX")));
        }
        let mut inst = Self::bare(s, n, Tables::None);
        inst.min_weight = weights.iter().copied().min();
        inst.dense = Some(if weights.iter().all(|&w| w <= u8::MAX as Weight) {
            Dense::Narrow(weights.into_iter().map(|w| w as u8).collect())
        } else {
            Dense::Wide(weights.into_iter().map(|w| w as u32).collect())
        });
        Ok(inst)
    }

    /// Clique instance: `w(e) = sum_{i<j} d^{i,j}[e_i][e_j]`. `d` lists the
    /// `s(s-1)/2` tables for `i < j` in lexicographic order.
    pub fn clique(s: usize, n: usize, d: Vec<Vec<Weight>>) -> Result<Self> {
        Self::pairwise(s, n, d, false)
    }

    /// SquareRoot instance: `w(e) = round(sqrt(sum_{i<j} d^{i,j}[e_i][e_j]^2))`.
    pub fn square_root(s: usize, n: usize, d: Vec<Vec<Weight>>) -> Result<Self> {
        Self::pairwise(s, n, d, true)
    }

    fn pairwise(s: usize, n: usize, d: Vec<Vec<Weight>>, root: bool) -> Result<Self> {
        check_shape(s, n)?;
        if d.len() != s * (s - 1) / 2 || d.iter().any(|t| t.len() != n * n) {
            return Err(MapError::InvalidArgument(format!("need {} tables of {}x{} distances", s * (s - 1) / 2, n, n)));
        }
        if d.iter().flatten().any(|&x| x < 0) {
            return Err(MapError::InvalidArgument("negative distance".into()));
        }
        Self::bare(s, n, Tables::Pairs { d, root }).finish()
    }

    /// Geometric instance: dimension `i` holds `n` points of the plane and
    /// `w(e)` is the sum of Euclidean distances between the points of `e`,
    /// rounded to the nearest integer.
    pub fn geometric(points: Vec<Vec<(i64, i64)>>) -> Result<Self> {
        let (s, n) = (points.len(), points.first().map_or(0, Vec::len));
        check_shape(s, n)?;
        if points.iter().any(|p| p.len() != n) {
            return Err(MapError::InvalidArgument("every dimension needs n points".into()));
        }
        Self::bare(s, n, Tables::Points(points)).finish()
    }

    /// Product instance: `w(e) = prod_i a^i[e_i]`.
    pub fn product(factors: Vec<Vec<Weight>>) -> Result<Self> {
        let (s, n) = (factors.len(), factors.first().map_or(0, Vec::len));
        check_shape(s, n)?;
        if factors.iter().any(|a| a.len() != n || a.iter().any(|&x| x < 0)) {
            return Err(MapError::InvalidArgument("every dimension needs n non-negative factors".into()));
        }
        let mut inst = Self::bare(s, n, Tables::Factors(factors));
        if let Tables::Factors(a) = &inst.tables {
            inst.min_weight = a
                .iter()
                .map(|f| f.iter().copied().min().unwrap_or(0))
                .try_fold(1 as Weight, |acc, x| acc.checked_mul(x));
        }
        inst.finish()
    }

    /// Materializes small decomposable instances.
    fn finish(mut self) -> Result<Self> {
        let Some(len) = cells(self.s, self.n).filter(|&c| c <= MATERIALIZE_CELLS) else {
            return Ok(self);
        };
        let mut e = vec![0; self.s];
        let mut out = Vec::with_capacity(len);
        for _ in 0..len {
            let w = self.formula(&e);
            if !(0..=u32::MAX as Weight).contains(&w) {
                return Ok(self);
            }
            out.push(w as u32);
            self.advance(&mut e);
        }
        self.min_weight = out.iter().map(|&w| w as Weight).min();
        self.dense = Some(Dense::Wide(out));
        Ok(self)
    }

    pub fn with_tag(mut self, family: Family, seed: u64) -> Self {
        self.family = Some(family);
        self.seed = Some(seed);
        self
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn family(&self) -> Option<Family> {
        self.family
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    /// True when the whole tensor is held in memory.
    pub fn is_dense(&self) -> bool {
        self.dense.is_some()
    }

    /// Number of vectors, `n^s`, if it fits a `usize`.
    pub fn cells(&self) -> Option<usize> {
        cells(self.s, self.n)
    }

    /// Exact minimum vector weight when cheaply known.
    pub fn min_weight(&self) -> Option<Weight> {
        self.min_weight.or(self.family.and_then(Family::known_min))
    }

    /// Row-major index of vector `e`.
    #[inline]
    pub fn index(&self, e: &[usize]) -> usize {
        e.iter().zip(&self.strides).map(|(&x, &st)| x * st).sum()
    }

    /// Next vector in row-major order; wraps to all zeros.
    #[inline]
    pub fn advance(&self, e: &mut [usize]) {
        for x in e.iter_mut().rev() {
            *x += 1;
            if *x < self.n {
                return;
            }
            *x = 0;
        }
    }

    #[inline]
    pub fn weight(&self, e: &[usize]) -> Weight {
        debug_assert_eq!(e.len(), self.s);
        EVALS.with(|c| c.set(c.get() + 1));
        match &self.dense {
            Some(Dense::Narrow(w)) => w[self.index(e)] as Weight,
            Some(Dense::Wide(w)) => w[self.index(e)] as Weight,
            None => self.formula(e),
        }
    }

    /// Weight of the vector with row-major index `i`; needs the dense tensor.
    #[inline]
    pub fn weight_at(&self, i: usize) -> Weight {
        EVALS.with(|c| c.set(c.get() + 1));
        match &self.dense {
            Some(Dense::Narrow(w)) => w[i] as Weight,
            Some(Dense::Wide(w)) => w[i] as Weight,
            None => panic!("weight_at needs a dense instance"),
        }
    }

    /// The defining formula of a decomposable family, recomputed from its
    /// tables; `None` for plain tensors.
    pub fn oracle_weight(&self, e: &[usize]) -> Option<Weight> {
        match self.tables {
            Tables::None => None,
            _ => Some(self.formula(e)),
        }
    }

    fn formula(&self, e: &[usize]) -> Weight {
        let n = self.n;
        match &self.tables {
            Tables::None => unreachable!("plain tensors are always dense"),
            Tables::Pairs { d, root } => {
                let mut k = 0;
                let mut sum = 0;
                for i in 0..self.s {
                    for j in i + 1..self.s {
                        let x = d[k][e[i] * n + e[j]];
                        sum += if *root { x * x } else { x };
                        k += 1;
                    }
                }
                if *root {
                    (sum as f64).sqrt().round() as Weight
                } else {
                    sum
                }
            }
            Tables::Points(p) => {
                let mut sum = 0.0;
                for i in 0..self.s {
                    for j in i + 1..self.s {
                        let (a, b) = (p[i][e[i]], p[j][e[j]]);
                        sum += (((a.0 - b.0).pow(2) + (a.1 - b.1).pow(2)) as f64).sqrt();
                    }
                }
                sum.round() as Weight
            }
            Tables::Factors(a) => e.iter().enumerate().map(|(i, &x)| a[i][x]).product(),
        }
    }

    /// Pairwise distance tables of Clique and SquareRoot instances.
    pub fn pair_tables(&self) -> Option<&[Vec<Weight>]> {
        match &self.tables {
            Tables::Pairs { d, .. } => Some(d),
            _ => None,
        }
    }

    pub fn points(&self) -> Option<&[Vec<(i64, i64)>]> {
        match &self.tables {
            Tables::Points(p) => Some(p),
            _ => None,
        }
    }

    pub fn factors(&self) -> Option<&[Vec<Weight>]> {
        match &self.tables {
            Tables::Factors(a) => Some(a),
            _ => None,
        }
    }

    /// The full tensor in row-major order.
    pub fn dense_weights(&self) -> Result<Vec<Weight>> {
        match &self.dense {
            Some(Dense::Narrow(w)) => Ok(w.iter().map(|&x| x as Weight).collect()),
            Some(Dense::Wide(w)) => Ok(w.iter().map(|&x| x as Weight).collect()),
            None => {
                let len = self
                    .cells()
                    .filter(|&c| c <= MAX_DENSE_CELLS)
                    .ok_or_else(|| MapError::Unsupported(format!("{}^{} cells is too many", self.n, self.s)))?;
                let mut e = vec![0; self.s];
                let mut out = Vec::with_capacity(len);
                for _ in 0..len {
                    out.push(self.formula(&e));
                    self.advance(&mut e);
                }
                Ok(out)
            }
        }
    }
}

/// Test-bed instance `index` (1..=10) of the given family and shape; the
/// generator is seeded with `s + n + index`.
pub fn generate(family: Family, s: usize, n: usize, index: u64) -> Result<MapInstance> {
    if !(3..=8).contains(&s) || n < 2 || !(1..=10).contains(&index) {
        return Err(MapError::InvalidArgument(format!(
            "test-bed instances need 3 <= s <= 8, n >= 2 and index in 1..=10 (got s={s}, n={n}, index={index})"
        )));
    }
    generate_seeded(family, s, n, s as u64 + n as u64 + index)
}

/// Instance of the family drawn from an explicit seed.
///
/// Random numbers are consumed in a fixed order: Random weights in row-major
/// order; Clique and SquareRoot tables pair by pair (`i < j` lexicographic),
/// each row-major; Geometric points dimension by dimension, `x` before `y`;
/// Product factors dimension by dimension.
pub fn generate_seeded(family: Family, s: usize, n: usize, seed: u64) -> Result<MapInstance> {
    check_shape(s, n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let inst = match family {
        Family::Random => {
            let len = cells(s, n)
                .filter(|&c| c <= MAX_DENSE_CELLS)
                .ok_or_else(|| MapError::Unsupported(format!("Random {s}-AP of size {n} does not fit in memory")))?;
            MapInstance::from_dense(s, n, (0..len).map(|_| rng.gen_range(1..=100)).collect())?
        }
        Family::Clique | Family::SquareRoot => {
            let d = (0..s * (s - 1) / 2).map(|_| (0..n * n).map(|_| rng.gen_range(1..=100)).collect()).collect();
            MapInstance::pairwise(s, n, d, family == Family::SquareRoot)?
        }
        Family::Geometric => MapInstance::geometric(
            (0..s)
                .map(|_| (0..n).map(|_| (rng.gen_range(1..=100), rng.gen_range(1..=100))).collect())
                .collect(),
        )?,
        Family::Product => MapInstance::product((0..s).map(|_| (0..n).map(|_| rng.gen_range(1..=10)).collect()).collect())?,
    };
    Ok(inst.with_tag(family, seed))
}
