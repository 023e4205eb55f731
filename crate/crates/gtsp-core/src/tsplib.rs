//! Reader for the TSPLIB subset used by clustered test beds.
//!
//! Supported: `EUC_2D` coordinates, `EXPLICIT` weights in `FULL_MATRIX`
//! format, and the optional `GTSP_SETS` / `GTSP_SET_SECTION` extension.

use crate::error::{GtspError, Result};
use crate::instance::GtspInstance;
use crate::Weight;

/// Vertex geometry of a parsed file.
#[derive(Debug, Clone, PartialEq)]
pub enum Geometry {
    Points(Vec<(f64, f64)>),
    Matrix { n: usize, weights: Vec<Weight> },
}

impl Geometry {
    pub fn n(&self) -> usize {
        match self {
            Geometry::Points(p) => p.len(),
            Geometry::Matrix { n, .. } => *n,
        }
    }

    /// Dense `n x n` weight matrix; coordinates use rounded Euclidean distance.
    pub fn weights(&self) -> Vec<Weight> {
        match self {
            Geometry::Points(p) => {
                let n = p.len();
                let mut w = vec![0; n * n];
                for i in 0..n {
                    for j in 0..n {
                        if i != j {
                            w[i * n + j] = euc_2d(p[i], p[j]);
                        }
                    }
                }
                w
            }
            Geometry::Matrix { weights, .. } => weights.clone(),
        }
    }
}

/// TSPLIB `nint` of the Euclidean distance.
pub fn euc_2d(a: (f64, f64), b: (f64, f64)) -> Weight {
    let dx = a.0 - b.0;
    let dy = a.1 - b.1;
    ((dx * dx + dy * dy).sqrt() + 0.5).floor() as Weight
}

#[derive(Debug, Clone, PartialEq)]
pub struct TsplibFile {
    pub name: String,
    pub geometry: Geometry,
    /// Present when the file carries a `GTSP_SET_SECTION`.
    pub clusters: Option<Vec<Vec<usize>>>,
}

impl TsplibFile {
    pub fn into_instance(self) -> Result<GtspInstance> {
        let clusters = self
            .clusters
            .clone()
            .ok_or_else(|| GtspError::InvalidArgument("file has no GTSP_SET_SECTION".into()))?;
        GtspInstance::new(clusters, self.geometry.weights())
    }
}

enum Section {
    None,
    Coords,
    Weights,
    Sets,
}

fn parse_num<T: std::str::FromStr>(tok: &str, line: usize) -> Result<T> {
    tok.parse()
        .map_err(|_| GtspError::Parse { line, msg: format!("bad number {tok:?}") })
}

/// Parses a TSPLIB text.
pub fn load_tsplib(text: &str) -> Result<TsplibFile> {
    let mut name = String::new();
    let mut dim: Option<usize> = None;
    let mut edge_type: Option<String> = None;
    let mut edge_format: Option<String> = None;
    let mut sets: Option<usize> = None;
    let mut coords: Vec<Option<(f64, f64)>> = Vec::new();
    let mut weights: Vec<Weight> = Vec::new();
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    let mut section = Section::None;

    let need_dim = |dim: Option<usize>, line: usize| {
        dim.ok_or(GtspError::Parse { line, msg: "section before DIMENSION".into() })
    };

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let s = raw.trim();
        if s.is_empty() {
            continue;
        }
        if s == "EOF" {
            break;
        }
        let upper = s.to_ascii_uppercase();
        if let Some((key, value)) = s.split_once(':') {
            let key = key.trim().to_ascii_uppercase();
            let value = value.trim();
            match key.as_str() {
                "NAME" => name = value.to_string(),
                "TYPE" | "COMMENT" | "DISPLAY_DATA_TYPE" | "NODE_COORD_TYPE" => {}
                "DIMENSION" => dim = Some(parse_num(value, line)?),
                "GTSP_SETS" => sets = Some(parse_num(value, line)?),
                "EDGE_WEIGHT_TYPE" => {
                    let t = value.to_ascii_uppercase();
                    if t != "EUC_2D" && t != "EXPLICIT" {
                        return Err(GtspError::UnsupportedEdgeWeightType(t));
                    }
                    edge_type = Some(t);
                }
                "EDGE_WEIGHT_FORMAT" => {
                    let f = value.to_ascii_uppercase();
                    if f != "FULL_MATRIX" {
                        return Err(GtspError::UnsupportedEdgeWeightType(format!("EXPLICIT/{f}")));
                    }
                    edge_format = Some(f);
                }
                "GTSP_SET_SECTION" => {
                    need_dim(dim, line)?;
                    section = Section::Sets;
                }
                "NODE_COORD_SECTION" | "EDGE_WEIGHT_SECTION" => {
                    // Some writers put a colon after section names.
                    section = start_section(&key, dim, line, &mut coords)?;
                }
                _ if matches!(section, Section::None) => {
                    return Err(GtspError::Parse { line, msg: format!("unknown keyword {key}") })
                }
                _ => {}
            }
            continue;
        }
        match upper.as_str() {
            "NODE_COORD_SECTION" | "EDGE_WEIGHT_SECTION" => {
                section = start_section(&upper, dim, line, &mut coords)?;
                continue;
            }
            "GTSP_SET_SECTION" => {
                need_dim(dim, line)?;
                section = Section::Sets;
                continue;
            }
            "DISPLAY_DATA_SECTION" => {
                section = Section::None;
                continue;
            }
            _ => {}
        }
        let toks: Vec<&str> = s.split_whitespace().collect();
        match section {
            Section::Coords => {
                if toks.len() < 3 {
                    return Err(GtspError::Parse { line, msg: "coordinate line needs 3 fields".into() });
                }
                let id: usize = parse_num(toks[0], line)?;
                let n = need_dim(dim, line)?;
                if id == 0 || id > n {
                    return Err(GtspError::Parse { line, msg: format!("node id {id} out of range") });
                }
                coords[id - 1] = Some((parse_num(toks[1], line)?, parse_num(toks[2], line)?));
            }
            Section::Weights => {
                for t in toks {
                    let w: f64 = parse_num(t, line)?;
                    weights.push(w.round() as Weight);
                }
            }
            Section::Sets => {
                let n = need_dim(dim, line)?;
                let mut members = Vec::new();
                for t in toks.iter().skip(1) {
                    let v: i64 = parse_num(t, line)?;
                    if v == -1 {
                        break;
                    }
                    if v < 1 || v as usize > n {
                        return Err(GtspError::Parse { line, msg: format!("set member {v} out of range") });
                    }
                    members.push(v as usize - 1);
                }
                clusters.push(members);
            }
            Section::None => {
                return Err(GtspError::Parse { line, msg: format!("unexpected data {s:?}") });
            }
        }
    }

    let n = dim.ok_or(GtspError::Parse { line: text.lines().count().max(1), msg: "missing DIMENSION".into() })?;
    let et = edge_type.unwrap_or_else(|| "EUC_2D".to_string());
    let geometry = if et == "EXPLICIT" {
        if edge_format.is_none() {
            return Err(GtspError::UnsupportedEdgeWeightType("EXPLICIT without FULL_MATRIX".into()));
        }
        if weights.len() != n * n {
            return Err(GtspError::Parse {
                line: text.lines().count(),
                msg: format!("expected {} weights, found {}", n * n, weights.len()),
            });
        }
        Geometry::Matrix { n, weights }
    } else {
        let pts: Option<Vec<(f64, f64)>> = coords.into_iter().collect();
        let pts = pts.ok_or(GtspError::Parse { line: text.lines().count(), msg: "missing node coordinates".into() })?;
        Geometry::Points(pts)
    };
    let clusters = if clusters.is_empty() {
        None
    } else {
        if let Some(k) = sets {
            if k != clusters.len() {
                return Err(GtspError::Parse {
                    line: text.lines().count(),
                    msg: format!("GTSP_SETS is {k} but {} sets were listed", clusters.len()),
                });
            }
        }
        Some(clusters)
    };
    Ok(TsplibFile { name, geometry, clusters })
}

fn start_section(
    key: &str,
    dim: Option<usize>,
    line: usize,
    coords: &mut Vec<Option<(f64, f64)>>,
) -> Result<Section> {
    let n = dim.ok_or(GtspError::Parse { line, msg: "section before DIMENSION".into() })?;
    if key == "NODE_COORD_SECTION" {
        *coords = vec![None; n];
        Ok(Section::Coords)
    } else {
        Ok(Section::Weights)
    }
}
