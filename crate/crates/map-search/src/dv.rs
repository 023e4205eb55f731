//! Dimensionwise variations: for a dimension set `D`, re-pair the
//! `D`-coordinates of all vectors optimally by one assignment problem.

use std::fmt;

use map_core::{Assignment, MapInstance, Weight};

use crate::ap::ap_solve;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DvScope {
    /// `|D| = 1`.
    OneDV,
    /// `|D| <= 2`.
    TwoDV,
    /// Every admissible `D`.
    SDv,
}

impl fmt::Display for DvScope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DvScope::OneDV => "1dv",
            DvScope::TwoDV => "2dv",
            DvScope::SDv => "sdv",
        })
    }
}

/// Lexicographic `k`-subsets of `items`.
pub(crate) fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    fn rec(items: &[usize], k: usize, from: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in from..items.len() {
            cur.push(items[i]);
            rec(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(items, k, 0, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Dimension sets of a scope in search order: singletons, then pairs, and
/// so on. A set and its complement give the same moves, so sets larger
/// than `s/2` are left out, and for even `s` the half-size sets are taken
/// from dimensions `1..s` only.
pub fn dimension_sets(s: usize, scope: DvScope) -> Vec<Vec<usize>> {
    let cap = match scope {
        DvScope::OneDV => 1,
        DvScope::TwoDV => 2,
        DvScope::SDv => s / 2,
    };
    let all: Vec<usize> = (0..s).collect();
    let mut out = Vec::new();
    for size in 1..=cap.min(s / 2) {
        if 2 * size == s {
            out.extend(combinations(&all[1..], size));
        } else {
            out.extend(combinations(&all, size));
        }
    }
    out
}

/// `swap(u, v, D)`: `v` on the dimensions in `D`, `u` elsewhere.
pub fn swap_into(u: &[usize], v: &[usize], d: &[usize], out: &mut Vec<usize>) {
    out.clear();
    out.extend_from_slice(u);
    for &j in d {
        out[j] = v[j];
    }
}

/// `p_D(A, rho)`: vector `i` takes the `D`-coordinates of vector `rho(i)`.
pub fn p_d(a: &Assignment, d: &[usize], rho: &[usize]) -> Assignment {
    let s = a.s();
    let mut out = Vec::with_capacity(a.flat().len());
    let mut e = Vec::with_capacity(s);
    for i in 0..a.n() {
        swap_into(a.vector(i), a.vector(rho[i]), d, &mut e);
        out.extend_from_slice(&e);
    }
    Assignment::canonical(s, out)
}

/// Best `p_D(A, rho)` over all permutations `rho`, with its weight. The
/// identity is among the candidates, so the result is never heavier.
pub fn dv_move(inst: &MapInstance, a: &Assignment, d: &[usize]) -> (Weight, Assignment) {
    let n = a.n();
    let mut m = vec![0; n * n];
    let mut e = Vec::with_capacity(a.s());
    for i in 0..n {
        for j in 0..n {
            swap_into(a.vector(i), a.vector(j), d, &mut e);
            m[i * n + j] = inst.weight(&e);
        }
    }
    let (w, rho) = ap_solve(&m, n);
    (w, p_d(a, d, &rho))
}

/// Applies the improving moves of every set of the scope in turn until a
/// full pass changes nothing.
pub fn dv_search(inst: &MapInstance, a: &Assignment, scope: DvScope) -> Assignment {
    let sets = dimension_sets(a.s(), scope);
    let mut cur = a.clone();
    let mut w = cur.weight(inst);
    let mut idle = 0;
    if sets.is_empty() {
        return cur;
    }
    for d in sets.iter().cycle() {
        let (nw, next) = dv_move(inst, &cur, d);
        if nw < w {
            w = nw;
            cur = next;
            idle = 0;
        } else {
            idle += 1;
        }
        if idle == sets.len() {
            break;
        }
    }
    cur
}
