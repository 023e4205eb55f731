//! `k`-opt: for every `k` vectors of the assignment, the best of the
//! `k!^(s-1)` ways to recombine their coordinates (first dimension fixed).

use std::collections::HashMap;

use map_core::{Assignment, MapError, MapInstance, Result, Weight};

use crate::dv::combinations;

/// All permutations of `0..k`, identity first.
pub(crate) fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for x in 0..used.len() {
            if !used[x] {
                used[x] = true;
                cur.push(x);
                rec(cur, used, out);
                cur.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; k], &mut out);
    out
}

/// Calls `f` with every recombination of `vectors`: vector `a` of the
/// result takes coordinate `d` from `vectors[perm_d[a]]`, dimension 0
/// staying put. The first call is the unchanged set.
pub fn for_each_recombination(vectors: &[&[usize]], mut f: impl FnMut(&[Vec<usize>])) {
    let k = vectors.len();
    let s = vectors.first().map_or(0, |v| v.len());
    let perms = permutations(k);
    let mut digits = vec![0usize; s];
    let mut out: Vec<Vec<usize>> = vectors.iter().map(|v| v.to_vec()).collect();
    loop {
        for a in 0..k {
            for d in 1..s {
                out[a][d] = vectors[perms[digits[d]][a]][d];
            }
        }
        f(&out);
        let mut d = s;
        loop {
            d -= 1;
            if d == 0 {
                return;
            }
            digits[d] += 1;
            if digits[d] < perms.len() {
                break;
            }
            digits[d] = 0;
        }
    }
}

/// `k`-opt with both skip rules enabled.
pub fn k_opt(inst: &MapInstance, a: &Assignment, k: usize) -> Result<Assignment> {
    k_opt_with(inst, a, k, true)
}

/// `k`-opt to a local minimum. With `skip`, a subset is passed over when
/// all its vectors already have the minimum possible weight or when none of
/// them changed since the subset was last examined; neither rule changes
/// the result.
pub fn k_opt_with(inst: &MapInstance, a: &Assignment, k: usize, skip: bool) -> Result<Assignment> {
    if !(2..=3).contains(&k) {
        return Err(MapError::InvalidArgument(format!("k-opt supports k = 2 or 3, got {k}")));
    }
    let (n, s) = (a.n(), a.s());
    let mut coords = a.flat().to_vec();
    if n < k {
        return Ok(a.clone());
    }
    let mut vw: Vec<Weight> = (0..n).map(|i| inst.weight(&coords[i * s..(i + 1) * s])).collect();
    let floor = inst.min_weight();
    let subsets = combinations(&(0..n).collect::<Vec<_>>(), k);
    let mut last_eval: HashMap<usize, u64> = HashMap::new();
    let mut changed_at = vec![0u64; n];
    let mut clock = 0u64;
    loop {
        let mut improved = false;
        for (id, set) in subsets.iter().enumerate() {
            if skip {
                if last_eval.get(&id).is_some_and(|&t| set.iter().all(|&i| changed_at[i] <= t)) {
                    continue;
                }
                if floor.is_some_and(|f| set.iter().all(|&i| vw[i] == f)) {
                    continue;
                }
                last_eval.insert(id, clock);
            }
            let current: Weight = set.iter().map(|&i| vw[i]).sum();
            let vecs: Vec<&[usize]> = set.iter().map(|&i| &coords[i * s..(i + 1) * s]).collect();
            let mut best: Option<(Weight, Vec<Vec<usize>>)> = None;
            let mut bound = current;
            for_each_recombination(&vecs, |cand| {
                let w: Weight = cand.iter().map(|e| inst.weight(e)).sum();
                if w < bound {
                    bound = w;
                    best = Some((w, cand.to_vec()));
                }
            });
            if let Some((_, cand)) = best {
                clock += 1;
                for (slot, e) in set.iter().zip(cand) {
                    vw[*slot] = inst.weight(&e);
                    coords[slot * s..(slot + 1) * s].copy_from_slice(&e);
                    changed_at[*slot] = clock;
                }
                improved = true;
            }
        }
        if !improved {
            return Ok(Assignment::canonical(s, coords));
        }
    }
}
