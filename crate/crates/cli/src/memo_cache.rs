//! Versioned binary persistence for the sequence memo table.
//!
//! The format is private to this tool: an 8-byte magic, a version word, an
//! entry count, then one record per memoized term. Entries are written in
//! sorted key order so the file is deterministic for a given table.

use std::fs;
use std::io::{self, Read};
use std::path::Path;

use nimpos::{Count, Family, SequenceEngine};

use crate::CliError;

const MAGIC: &[u8; 8] = b"NIMMEMO\n";
const VERSION: u32 = 1;

/// Builds an engine, preloaded from `path` when it points at an existing
/// cache file. A missing file is fine (first run); a malformed one is a
/// usage error.
pub fn load(path: Option<&Path>) -> Result<SequenceEngine, CliError> {
    let mut engine = SequenceEngine::new();
    let Some(path) = path else {
        return Ok(engine);
    };
    let bytes = match fs::read(path) {
        Ok(b) => b,
        Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(engine),
        Err(e) => {
            return Err(CliError::Usage(format!("cannot read memo cache {}: {e}", path.display())))
        }
    };
    parse_into(&bytes, &mut engine)
        .map_err(|msg| CliError::Usage(format!("invalid memo cache {}: {msg}", path.display())))?;
    Ok(engine)
}

/// Writes the engine's memo table to `path`, replacing any previous file.
pub fn store(path: Option<&Path>, engine: &SequenceEngine) -> Result<(), CliError> {
    let Some(path) = path else {
        return Ok(());
    };
    let mut entries: Vec<(u8, u64, u64, &Count)> = engine
        .memo_entries()
        .map(|(f, k, n, v)| (f.tag(), k, n, v))
        .collect();
    entries.sort_by_key(|&(f, k, n, _)| (f, k, n));

    let mut buf = Vec::new();
    buf.extend_from_slice(MAGIC);
    buf.extend_from_slice(&VERSION.to_le_bytes());
    buf.extend_from_slice(&(entries.len() as u64).to_le_bytes());
    for (tag, k, n, value) in entries {
        buf.push(tag);
        buf.extend_from_slice(&k.to_le_bytes());
        buf.extend_from_slice(&n.to_le_bytes());
        let bytes = value.to_bytes_le();
        buf.extend_from_slice(&(bytes.len() as u64).to_le_bytes());
        buf.extend_from_slice(&bytes);
    }
    fs::write(path, buf)
        .map_err(|e| CliError::Usage(format!("cannot write memo cache {}: {e}", path.display())))
}

fn parse_into(bytes: &[u8], engine: &mut SequenceEngine) -> Result<(), String> {
    let mut r = bytes;
    let mut magic = [0u8; 8];
    read_exact(&mut r, &mut magic)?;
    if &magic != MAGIC {
        return Err("bad magic".into());
    }
    let version = read_u32(&mut r)?;
    if version != VERSION {
        return Err(format!("unsupported version {version}"));
    }
    let count = read_u64(&mut r)?;
    for _ in 0..count {
        let mut tag = [0u8; 1];
        read_exact(&mut r, &mut tag)?;
        let family = Family::from_tag(tag[0]).ok_or_else(|| format!("bad family tag {}", tag[0]))?;
        let k = read_u64(&mut r)?;
        let n = read_u64(&mut r)?;
        let len = read_u64(&mut r)? as usize;
        if r.len() < len {
            return Err("truncated value".into());
        }
        let (value, rest) = r.split_at(len);
        engine.preload(family, k, n, Count::from_bytes_le(value));
        r = rest;
    }
    if !r.is_empty() {
        return Err("trailing bytes".into());
    }
    Ok(())
}

fn read_exact(r: &mut &[u8], buf: &mut [u8]) -> Result<(), String> {
    Read::read_exact(r, buf).map_err(|_| "truncated file".to_string())
}

fn read_u32(r: &mut &[u8]) -> Result<u32, String> {
    let mut b = [0u8; 4];
    read_exact(r, &mut b)?;
    Ok(u32::from_le_bytes(b))
}

fn read_u64(r: &mut &[u8]) -> Result<u64, String> {
    let mut b = [0u8; 8];
    read_exact(r, &mut b)?;
    Ok(u64::from_le_bytes(b))
}
