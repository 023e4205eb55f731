//! Native plain-text GTSP format.
//!
//! ```text
//! N: 5
//! M: 2
//! SYMMETRIC: 1
//! 0 1 2
//! 3 4
//! <n rows of n weights>
//! ```

use crate::error::{GtspError, Result};
use crate::instance::GtspInstance;
use crate::Weight;

pub fn write_native(inst: &GtspInstance) -> String {
    let n = inst.n();
    let mut out = format!("N: {n}\nM: {}\nSYMMETRIC: {}\n", inst.m(), u8::from(inst.is_symmetric()));
    for c in inst.clusters() {
        let row: Vec<String> = c.iter().map(|v| v.to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    for x in 0..n {
        let row: Vec<String> = (0..n).map(|y| inst.w(x, y).to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

fn header(lines: &mut dyn Iterator<Item = (usize, &str)>, key: &str) -> Result<(usize, usize)> {
    let (line, s) = lines
        .next()
        .ok_or(GtspError::Parse { line: 0, msg: format!("missing {key} header") })?;
    let (k, v) = s
        .split_once(':')
        .ok_or(GtspError::Parse { line, msg: format!("expected `{key}: value`") })?;
    if k.trim() != key {
        return Err(GtspError::Parse { line, msg: format!("expected {key}, found {}", k.trim()) });
    }
    let v = v
        .trim()
        .parse()
        .map_err(|_| GtspError::Parse { line, msg: format!("bad {key} value") })?;
    Ok((line, v))
}

pub fn read_native(text: &str) -> Result<GtspInstance> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (_, n) = header(&mut lines, "N")?;
    let (_, m) = header(&mut lines, "M")?;
    let (sline, sym) = header(&mut lines, "SYMMETRIC")?;
    let mut clusters = Vec::with_capacity(m);
    for _ in 0..m {
        let (line, s) = lines.next().ok_or(GtspError::Parse { line: 0, msg: "missing cluster line".into() })?;
        let c: std::result::Result<Vec<usize>, _> = s.split_whitespace().map(str::parse).collect();
        clusters.push(c.map_err(|_| GtspError::Parse { line, msg: "bad cluster line".into() })?);
    }
    let mut weights: Vec<Weight> = Vec::with_capacity(n * n);
    let mut last = 0;
    for (line, s) in lines {
        last = line;
        for t in s.split_whitespace() {
            weights.push(t.parse().map_err(|_| GtspError::Parse { line, msg: format!("bad weight {t:?}") })?);
        }
    }
    if weights.len() != n * n {
        return Err(GtspError::Parse { line: last, msg: format!("expected {} weights, found {}", n * n, weights.len()) });
    }
    let inst = GtspInstance::new(clusters, weights)?;
    if inst.n() != n {
        return Err(GtspError::Parse { line: 1, msg: "clusters do not cover N vertices".into() });
    }
    if sym == 1 && !inst.is_symmetric() {
        return Err(GtspError::Parse { line: sline, msg: "declared symmetric but matrix is not".into() });
    }
    Ok(inst)
}
