use crate::error::{GtspError, Result};
use crate::instance::GtspInstance;
use crate::{wadd, Weight};

/// A GTSP tour stored as three cluster-indexed arrays.
///
/// `next[c]` / `prev[c]` give the successor / predecessor cluster of `c` and
/// `vertices[c]` the vertex visiting cluster `c`. Every directed tour has
/// exactly one encoding.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tour {
    next: Vec<usize>,
    prev: Vec<usize>,
    vertices: Vec<usize>,
}

impl Tour {
    /// Tour visiting the vertices of `seq` in order.
    pub fn from_sequence(inst: &GtspInstance, seq: &[usize]) -> Result<Tour> {
        let m = inst.m();
        if seq.len() != m {
            return Err(GtspError::InvalidTour(format!(
                "sequence has {} vertices, expected {m}",
                seq.len()
            )));
        }
        let mut vertices = vec![usize::MAX; m];
        for &v in seq {
            if v >= inst.n() {
                return Err(GtspError::InvalidTour(format!("vertex {v} out of range")));
            }
            let c = inst.cluster_of(v);
            if vertices[c] != usize::MAX {
                return Err(GtspError::InvalidTour(format!("cluster {c} visited twice")));
            }
            vertices[c] = v;
        }
        let mut next = vec![0; m];
        let mut prev = vec![0; m];
        for i in 0..m {
            let a = inst.cluster_of(seq[i]);
            let b = inst.cluster_of(seq[(i + 1) % m]);
            next[a] = b;
            prev[b] = a;
        }
        Ok(Tour { next, prev, vertices })
    }

    /// Tour following `order` (cluster ids) with the given per-cluster vertices.
    pub fn from_order(inst: &GtspInstance, order: &[usize], vertices: &[usize]) -> Result<Tour> {
        let seq: Vec<usize> = order.iter().map(|&c| vertices[c]).collect();
        Tour::from_sequence(inst, &seq)
    }

    /// Builds a tour from raw arrays after validating them.
    pub fn from_parts(
        inst: &GtspInstance,
        next: Vec<usize>,
        prev: Vec<usize>,
        vertices: Vec<usize>,
    ) -> Result<Tour> {
        let t = Tour { next, prev, vertices };
        t.validate(inst)?;
        Ok(t)
    }

    pub fn m(&self) -> usize {
        self.next.len()
    }

    #[inline]
    pub fn next(&self, c: usize) -> usize {
        self.next[c]
    }

    #[inline]
    pub fn prev(&self, c: usize) -> usize {
        self.prev[c]
    }

    #[inline]
    pub fn vertex(&self, c: usize) -> usize {
        self.vertices[c]
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// Replaces the vertex of cluster `inst.cluster_of(v)` with `v`.
    pub fn set_vertex(&mut self, inst: &GtspInstance, v: usize) {
        self.vertices[inst.cluster_of(v)] = v;
    }

    /// Cluster ids in tour order starting at `start`.
    pub fn order_from(&self, start: usize) -> Vec<usize> {
        let m = self.m();
        let mut out = Vec::with_capacity(m);
        let mut c = start;
        for _ in 0..m {
            out.push(c);
            c = self.next[c];
        }
        out
    }

    /// Cluster ids in tour order starting at cluster 0.
    pub fn order(&self) -> Vec<usize> {
        self.order_from(0)
    }

    /// Vertex ids in tour order starting at cluster 0.
    pub fn sequence(&self) -> Vec<usize> {
        self.order().into_iter().map(|c| self.vertices[c]).collect()
    }

    pub fn weight(&self, inst: &GtspInstance) -> Weight {
        let mut total = 0;
        for c in 0..self.m() {
            total = wadd(total, inst.w(self.vertices[c], self.vertices[self.next[c]]));
        }
        total
    }

    /// The same cycle traversed in the opposite direction.
    pub fn inverted(&self) -> Tour {
        Tour { next: self.prev.clone(), prev: self.next.clone(), vertices: self.vertices.clone() }
    }

    pub fn validate(&self, inst: &GtspInstance) -> Result<()> {
        let m = inst.m();
        if self.next.len() != m || self.prev.len() != m || self.vertices.len() != m {
            return Err(GtspError::InvalidTour("array length differs from m".into()));
        }
        for c in 0..m {
            if self.next[c] >= m || self.prev[self.next[c]] != c {
                return Err(GtspError::InvalidTour(format!("prev/next mismatch at {c}")));
            }
            let v = self.vertices[c];
            if v >= inst.n() || inst.cluster_of(v) != c {
                return Err(GtspError::InvalidTour(format!("vertex of cluster {c} is foreign")));
            }
        }
        let mut seen = 1;
        let mut c = self.next[0];
        while c != 0 {
            seen += 1;
            if seen > m {
                return Err(GtspError::InvalidTour("next does not close".into()));
            }
            c = self.next[c];
        }
        if seen != m {
            return Err(GtspError::InvalidTour("next forms several cycles".into()));
        }
        Ok(())
    }
}

fn check_turn(m: usize, x: usize, y: usize) -> Result<()> {
    if y < x + 2 || y >= m || (x == 0 && y == m - 1) {
        return Err(GtspError::InvalidMove(format!("turn({x}, {y}) with m = {m}")));
    }
    Ok(())
}

/// `Turn(T, x, y)`: reverses the positions `x+1..=y` of the sequence that
/// starts at cluster 0.
pub fn turn(inst: &GtspInstance, t: &Tour, x: usize, y: usize) -> Result<Tour> {
    check_turn(inst.m(), x, y)?;
    let mut seq = t.sequence();
    seq[x + 1..=y].reverse();
    Tour::from_sequence(inst, &seq)
}

/// `w(Turn(T, x, y)) - w(T)`.
///
/// For symmetric instances this is the four-edge formula; for asymmetric
/// ones the reversal cost of the fragment is added.
pub fn turn_delta(inst: &GtspInstance, t: &Tour, x: usize, y: usize) -> Result<Weight> {
    let m = inst.m();
    check_turn(m, x, y)?;
    let seq = t.sequence();
    let at = |i: usize| seq[i % m];
    let mut d = wadd(inst.w(at(x), at(y)), inst.w(at(x + 1), at(y + 1)))
        - inst.w(at(x), at(x + 1))
        - inst.w(at(y), at(y + 1));
    if !inst.is_symmetric() {
        for i in (x + 1)..y {
            d = d.saturating_add(inst.w(at(i + 1), at(i)) - inst.w(at(i), at(i + 1)));
        }
    }
    Ok(d)
}
