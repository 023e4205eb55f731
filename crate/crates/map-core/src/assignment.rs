use crate::error::{MapError, Result};
use crate::instance::MapInstance;
use crate::Weight;

/// `n` vectors of `s` coordinates with all coordinates of every dimension
/// distinct. Vectors are kept sorted by their first coordinate, so vector
/// `i` always starts with `i` and two equal assignments have equal codes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Assignment {
    s: usize,
    coords: Vec<usize>,
}

impl Assignment {
    /// Builds an assignment from `n * s` coordinates, vector after vector,
    /// in any vector order.
    pub fn from_flat(s: usize, coords: Vec<usize>) -> Result<Self> {
        if s == 0 || coords.len() % s != 0 {
            return Err(MapError::InvalidAssignment(format!("{} coordinates do not split into vectors of {s}", coords.len())));
        }
        let n = coords.len() / s;
        for d in 0..s {
            let mut seen = vec![false; n];
            for i in 0..n {
                let x = coords[i * s + d];
                if x >= n || std::mem::replace(&mut seen[x], true) {
                    return Err(MapError::InvalidAssignment(format!("dimension {d} is not a permutation of 0..{n}")));
                }
            }
        }
        Ok(Self::canonical(s, coords))
    }

    pub fn from_vectors(s: usize, vectors: &[Vec<usize>]) -> Result<Self> {
        if vectors.iter().any(|v| v.len() != s) {
            return Err(MapError::InvalidAssignment(format!("every vector needs {s} coordinates")));
        }
        Self::from_flat(s, vectors.concat())
    }

    /// Permutation form with the first permutation fixed to the identity:
    /// vector `i` is `(i, perms[0][i], ..., perms[s-2][i])`.
    pub fn from_perms(perms: &[Vec<usize>]) -> Result<Self> {
        let n = perms.first().map_or(0, Vec::len);
        let s = perms.len() + 1;
        if perms.iter().any(|p| p.len() != n) {
            return Err(MapError::InvalidAssignment("permutations differ in length".into()));
        }
        let mut coords = Vec::with_capacity(n * s);
        for i in 0..n {
            coords.push(i);
            coords.extend(perms.iter().map(|p| p[i]));
        }
        Self::from_flat(s, coords)
    }

    /// `A^i = (i, i, ..., i)`.
    pub fn diagonal(n: usize, s: usize) -> Self {
        Assignment { s, coords: (0..n).flat_map(|i| std::iter::repeat(i).take(s)).collect() }
    }

    /// Sorts vectors by first coordinate. The caller guarantees feasibility.
    pub fn canonical(s: usize, mut coords: Vec<usize>) -> Self {
        let n = coords.len() / s;
        if (0..n).any(|i| coords[i * s] != i) {
            let mut out = vec![0; coords.len()];
            for v in coords.chunks(s) {
                out[v[0] * s..v[0] * s + s].copy_from_slice(v);
            }
            coords = out;
        }
        Assignment { s, coords }
    }

    pub fn n(&self) -> usize {
        self.coords.len() / self.s
    }

    pub fn s(&self) -> usize {
        self.s
    }

    /// Vector whose first coordinate is `i`.
    pub fn vector(&self, i: usize) -> &[usize] {
        &self.coords[i * self.s..(i + 1) * self.s]
    }

    pub fn vectors(&self) -> std::slice::Chunks<'_, usize> {
        self.coords.chunks(self.s)
    }

    pub fn flat(&self) -> &[usize] {
        &self.coords
    }

    pub fn into_flat(self) -> Vec<usize> {
        self.coords
    }

    /// Coordinates of dimension `d`, vector by vector.
    pub fn perm(&self, d: usize) -> Vec<usize> {
        self.vectors().map(|v| v[d]).collect()
    }

    pub fn weight(&self, inst: &MapInstance) -> Weight {
        self.vectors().map(|v| inst.weight(v)).sum()
    }

    pub fn is_valid_for(&self, inst: &MapInstance) -> bool {
        self.s == inst.s() && self.n() == inst.n() && Self::from_flat(self.s, self.coords.clone()).is_ok()
    }
}
