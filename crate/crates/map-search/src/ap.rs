//! Linear assignment by the Hungarian method with potentials, `O(n^3)`.

use map_core::Weight;

/// Minimizes `sum_i cost[i * n + rho[i]]` over permutations `rho`.
/// Returns the optimum and `rho`.
pub fn ap_solve(cost: &[Weight], n: usize) -> (Weight, Vec<usize>) {
    assert_eq!(cost.len(), n * n, "cost matrix must be n x n");
    if n == 0 {
        return (0, Vec::new());
    }
    // 1-based rows and columns; column 0 is a sentinel.
    let mut u = vec![0 as Weight; n + 1];
    let mut v = vec![0 as Weight; n + 1];
    let mut row_of = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        row_of[0] = i;
        let mut j0 = 0;
        let mut minv = vec![Weight::MAX; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = row_of[j0];
            let mut delta = Weight::MAX;
            let mut j1 = 0;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let cur = cost[(i0 - 1) * n + j - 1] - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[row_of[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if row_of[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            row_of[j0] = row_of[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut rho = vec![0; n];
    for j in 1..=n {
        rho[row_of[j] - 1] = j - 1;
    }
    let total = (0..n).map(|i| cost[i * n + rho[i]]).sum();
    (total, rho)
}
