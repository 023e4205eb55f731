//! Binary dump: magic, `s`, `n`, family code, seed, then the row-major
//! tensor as little-endian `u32`.

use std::io::{Read, Write};

use crate::error::{MapError, Result};
use crate::family::Family;
use crate::instance::MapInstance;

const MAGIC: &[u8; 4] = b"MAP1";

pub fn write_instance<W: Write>(inst: &MapInstance, mut out: W) -> Result<()> {
    let weights = inst.dense_weights()?;
    out.write_all(MAGIC)?;
    out.write_all(&(inst.s() as u32).to_le_bytes())?;
    out.write_all(&(inst.n() as u32).to_le_bytes())?;
    let code = inst.family().map_or("", Family::code).as_bytes();
    out.write_all(&[code.len() as u8])?;
    out.write_all(code)?;
    out.write_all(&[inst.seed().is_some() as u8])?;
    out.write_all(&inst.seed().unwrap_or(0).to_le_bytes())?;
    let mut buf = Vec::with_capacity(weights.len() * 4);
    for w in weights {
        buf.extend_from_slice(&(w as u32).to_le_bytes());
    }
    out.write_all(&buf)?;
    Ok(())
}

pub fn read_instance<R: Read>(mut input: R) -> Result<MapInstance> {
    let mut bytes = Vec::new();
    input.read_to_end(&mut bytes)?;
    let mut at = 0;
    let mut take = |k: usize| -> Result<&[u8]> {
        let chunk = bytes.get(at..at + k).ok_or_else(|| MapError::Io("truncated instance file".into()))?;
        at += k;
        Ok(chunk)
    };
    if take(4)? != MAGIC {
        return Err(MapError::Io("not an instance dump".into()));
    }
    let s = u32::from_le_bytes(take(4)?.try_into().unwrap()) as usize;
    let n = u32::from_le_bytes(take(4)?.try_into().unwrap()) as usize;
    let len = take(1)?[0] as usize;
    let code = String::from_utf8_lossy(take(len)?).into_owned();
    let has_seed = take(1)?[0] != 0;
    let seed = u64::from_le_bytes(take(8)?.try_into().unwrap());
    let body = &bytes[4 + 4 + 4 + 1 + len + 1 + 8..];
    if body.len() % 4 != 0 {
        return Err(MapError::Io("tensor is not a whole number of u32 cells".into()));
    }
    let weights = body.chunks(4).map(|c| u32::from_le_bytes(c.try_into().unwrap()) as i64).collect();
    let inst = MapInstance::from_dense(s, n, weights)?;
    Ok(match (code.is_empty(), has_seed) {
        (false, true) => inst.with_tag(Family::from_code(&code)?, seed),
        _ => inst,
    })
}
