//! Run reports and their CSV form.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::Result;

pub type Weight = i64;

/// One solver run. Column order is fixed:
/// `instance,solver,seed,budget_ms,elapsed_ms,weight,best,err_pct,scaled_err_pct`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub instance: String,
    pub solver: String,
    pub seed: u64,
    pub budget_ms: Option<u64>,
    pub elapsed_ms: u64,
    pub weight: Weight,
    pub best: Option<Weight>,
    pub err_pct: Option<f64>,
    pub scaled_err_pct: Option<f64>,
}

impl RunReport {
    /// Sets `best` and the relative error against it.
    pub fn with_best(mut self, best: Option<Weight>) -> Self {
        self.best = best;
        self.err_pct = best.and_then(|b| relative_error(self.weight, b));
        self
    }
}

/// `(w / best - 1) * 100`. Undefined for a non-positive `best` unless the
/// weights agree.
pub fn relative_error(w: Weight, best: Weight) -> Option<f64> {
    if best > 0 {
        Some((w as f64 / best as f64 - 1.0) * 100.0)
    } else if w == best {
        Some(0.0)
    } else {
        None
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScaledErrors {
    pub values: Vec<f64>,
    /// All weights were equal; every value is 0.
    pub degenerate: bool,
}

/// Position of each weight between the lightest and heaviest, in percent.
pub fn scaled_error(weights: &[Weight]) -> ScaledErrors {
    let (Some(&lo), Some(&hi)) = (weights.iter().min(), weights.iter().max()) else {
        return ScaledErrors { values: vec![], degenerate: true };
    };
    if lo == hi {
        return ScaledErrors { values: vec![0.0; weights.len()], degenerate: true };
    }
    let span = (hi - lo) as f64;
    ScaledErrors { values: weights.iter().map(|&w| 100.0 * (w - lo) as f64 / span).collect(), degenerate: false }
}

/// Fills `scaled_err_pct` per instance, framing each instance's rows by
/// their lightest and heaviest weights.
pub fn fill_scaled_errors(reports: &mut [RunReport]) {
    let mut names: Vec<String> = reports.iter().map(|r| r.instance.clone()).collect();
    names.sort();
    names.dedup();
    for name in names {
        let idx: Vec<usize> = (0..reports.len()).filter(|&i| reports[i].instance == name).collect();
        let ws: Vec<Weight> = idx.iter().map(|&i| reports[i].weight).collect();
        let sc = scaled_error(&ws);
        for (&i, e) in idx.iter().zip(sc.values) {
            reports[i].scaled_err_pct = Some(e);
        }
    }
}

pub fn write_reports<W: Write>(out: W, reports: &[RunReport]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    if reports.is_empty() {
        w.write_record(["instance", "solver", "seed", "budget_ms", "elapsed_ms", "weight", "best", "err_pct", "scaled_err_pct"])?;
    }
    for r in reports {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_reports<R: Read>(input: R) -> Result<Vec<RunReport>> {
    let mut r = csv::Reader::from_reader(input);
    let mut out = Vec::new();
    for row in r.deserialize() {
        out.push(row?);
    }
    Ok(out)
}

pub fn reports_to_string(reports: &[RunReport]) -> Result<String> {
    let mut buf = Vec::new();
    write_reports(&mut buf, reports)?;
    Ok(String::from_utf8(buf).expect("csv output is utf-8"))
}

fn cell<T: std::fmt::Display>(v: Option<T>) -> String {
    v.map_or_else(|| "-".into(), |v| v.to_string())
}

/// The same rows as a markdown table, errors to two decimals.
pub fn write_markdown<W: Write>(mut out: W, reports: &[RunReport]) -> Result<()> {
    writeln!(out, "| instance | solver | seed | budget ms | elapsed ms | weight | best | err % | scaled err % |")?;
    writeln!(out, "|---|---|---:|---:|---:|---:|---:|---:|---:|")?;
    for r in reports {
        writeln!(
            out,
            "| {} | {} | {} | {} | {} | {} | {} | {} | {} |",
            r.instance,
            r.solver,
            r.seed,
            cell(r.budget_ms),
            r.elapsed_ms,
            r.weight,
            cell(r.best),
            cell(r.err_pct.map(|e| format!("{e:.2}"))),
            cell(r.scaled_err_pct.map(|e| format!("{e:.2}"))),
        )?;
    }
    Ok(())
}
