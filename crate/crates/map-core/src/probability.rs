//! Lower bound on the probability that a Random instance with weights in
//! `a..a+c` has an assignment of weight `a n`.

use crate::error::{MapError, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaBound {
    /// `1 - exp(-1 / (2 sigma))`; meaningful only when `applicable`.
    pub probability: f64,
    pub sigma: f64,
    /// Whether `((n-1)/e)^(s-1) >= c 2^(1/(n-1))` holds.
    pub applicable: bool,
    pub lhs: f64,
    pub rhs: f64,
}

fn ln_factorial(k: usize) -> f64 {
    (2..=k).map(|i| (i as f64).ln()).sum()
}

/// `sigma = sum_{k=1}^{n-2} C(n,k) c^k / [n (n-1) ... (n-k+1)]^(s-1)`,
/// evaluated in log space.
pub fn pr_alpha_positive(s: usize, n: usize, c: f64) -> Result<AlphaBound> {
    if n < 3 || s < 2 || !(c > 0.0) {
        return Err(MapError::InvalidArgument(format!("need n >= 3, s >= 2 and c > 0 (got s={s}, n={n}, c={c})")));
    }
    let ln_n = ln_factorial(n);
    let terms: Vec<f64> = (1..=n - 2)
        .map(|k| {
            let ln_choose = ln_n - ln_factorial(k) - ln_factorial(n - k);
            let ln_falling = ln_n - ln_factorial(n - k);
            ln_choose + k as f64 * c.ln() - (s - 1) as f64 * ln_falling
        })
        .collect();
    let top = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let ln_sigma = top + terms.iter().map(|t| (t - top).exp()).sum::<f64>().ln();
    let lhs = ((n - 1) as f64 / std::f64::consts::E).powi(s as i32 - 1);
    let rhs = c * 2f64.powf(1.0 / (n - 1) as f64);
    Ok(AlphaBound {
        probability: -(-0.5 * (-ln_sigma).exp()).exp_m1(),
        sigma: ln_sigma.exp(),
        applicable: lhs >= rhs,
        lhs,
        rhs,
    })
}
