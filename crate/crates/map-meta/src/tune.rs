//! Tuning the sizer constants against precomputed scaled errors.

use map_core::{MapError, Result};

use crate::sizer::PopulationSizer;

/// One (instance, budget) combination: the measured local search time and
/// the scaled error obtained with each population size.
#[derive(Debug, Clone, PartialEq)]
pub struct TuneCell {
    pub instance: String,
    pub tau: f64,
    pub t: f64,
    /// `(m, epsilon)` pairs, one per population size tried.
    pub errors: Vec<(usize, f64)>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TuneResult {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    /// Mean scaled error at the sizes the constants pick.
    pub gamma: f64,
}

/// The error recorded for the tried size closest to `m`, smaller on ties.
pub fn snapped_error(cell: &TuneCell, m: f64) -> Option<f64> {
    cell.errors
        .iter()
        .min_by(|x, y| (x.0 as f64 - m).abs().total_cmp(&(y.0 as f64 - m).abs()).then(x.0.cmp(&y.0)))
        .map(|e| e.1)
}

/// Mean snapped error of one sizer over all cells.
pub fn gamma(cells: &[TuneCell], sizer: &PopulationSizer) -> Option<f64> {
    let mut sum = 0.0;
    for c in cells {
        sum += snapped_error(c, sizer.m_opt(c.tau, c.t) as f64)?;
    }
    (!cells.is_empty()).then(|| sum / cells.len() as f64)
}

/// Grid search over `(a, b, c)`; the first minimum in iteration order wins.
pub fn tune_sizer(cells: &[TuneCell], a: &[f64], b: &[f64], c: &[f64]) -> Result<TuneResult> {
    if cells.is_empty() || cells.iter().any(|c| c.errors.is_empty()) {
        return Err(MapError::InvalidArgument("empty tuning grid".into()));
    }
    if a.is_empty() || b.is_empty() || c.is_empty() {
        return Err(MapError::InvalidArgument("empty constant range".into()));
    }
    let mut best: Option<TuneResult> = None;
    for &a in a {
        for &b in b {
            for &c in c {
                let g = gamma(cells, &PopulationSizer::new(a, b, c)).expect("cells are non-empty");
                if best.map_or(true, |r| g < r.gamma) {
                    best = Some(TuneResult { a, b, c, gamma: g });
                }
            }
        }
    }
    Ok(best.expect("ranges are non-empty"))
}

/// Evenly spaced values from `lo` to `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    match steps {
        0 => vec![],
        1 => vec![lo],
        k => (0..k).map(|i| lo + (hi - lo) * i as f64 / (k - 1) as f64).collect(),
    }
}
