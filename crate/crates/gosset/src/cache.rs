//! Catalog cache files: JSON-lines with a header record
//! `{"kind":"...","r":8,"count":240}` followed by one divisor class per
//! line. Loading re-verifies the count and the defining equations.

use std::fs;
use std::io::{BufRead, BufReader};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::catalog::{ClassCatalog, ClassKind};
use crate::error::{Error, Result};
use crate::picard::DivisorClass;

#[derive(Serialize, Deserialize)]
struct Header {
    kind: String,
    r: usize,
    count: usize,
}

pub fn kind_from_str(s: &str) -> Result<ClassKind> {
    match s {
        "lines" => Ok(ClassKind::Line),
        "roots" => Ok(ClassKind::Root),
        "rulings" => Ok(ClassKind::Ruling),
        "exceptional-systems" | "exceptional" => Ok(ClassKind::ExceptionalSystem),
        other => Err(Error::Domain(format!(
            "unknown catalog kind {other}; expected lines|roots|rulings|exceptional"
        ))),
    }
}

/// `<dir>/<kind>-r<rank>.jsonl`
pub fn catalog_path(dir: &Path, kind: ClassKind, rank: usize) -> PathBuf {
    dir.join(format!("{}-r{rank}.jsonl", kind.name()))
}

pub fn write_catalog(path: &Path, catalog: &ClassCatalog) -> Result<()> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent)?;
    }
    let mut out = Vec::new();
    let header = Header {
        kind: catalog.kind().name().to_string(),
        r: catalog.rank(),
        count: catalog.len(),
    };
    serde_json::to_writer(&mut out, &header)?;
    out.push(b'\n');
    for d in catalog.classes() {
        serde_json::to_writer(&mut out, d)?;
        out.push(b'\n');
    }
    fs::write(path, out)?;
    Ok(())
}

pub fn load_catalog(path: &Path) -> Result<ClassCatalog> {
    let file = fs::File::open(path)?;
    let mut lines = BufReader::new(file).lines();
    let header_line = lines
        .next()
        .ok_or_else(|| Error::Cache(format!("{}: empty file", path.display())))??;
    let header: Header = serde_json::from_str(&header_line)
        .map_err(|e| Error::Cache(format!("{}: bad header: {e}", path.display())))?;
    let kind = kind_from_str(&header.kind)?;
    let mut classes = Vec::with_capacity(header.count);
    for line in lines {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let d: DivisorClass = serde_json::from_str(&line)
            .map_err(|e| Error::Cache(format!("{}: bad record: {e}", path.display())))?;
        classes.push(d);
    }
    if classes.len() != header.count {
        return Err(Error::Cache(format!(
            "{}: header says {} classes, file has {}",
            path.display(),
            header.count,
            classes.len()
        )));
    }
    ClassCatalog::from_sorted_classes(kind, header.r, classes)
}

/// Load the cached catalog if present and valid; otherwise enumerate and
/// write it. Returns the catalog and whether the cache was (re)written.
pub fn load_or_build(dir: &Path, kind: ClassKind, rank: usize) -> Result<(ClassCatalog, bool)> {
    let path = catalog_path(dir, kind, rank);
    if path.exists() {
        return Ok((load_catalog(&path)?, false));
    }
    let catalog = match kind {
        ClassKind::Line => crate::catalog::enumerate_lines(rank)?,
        ClassKind::Root => crate::catalog::enumerate_roots(rank)?,
        ClassKind::Ruling => crate::catalog::enumerate_rulings(rank)?,
        ClassKind::ExceptionalSystem => crate::catalog::enumerate_exceptional_systems(rank)?,
        ClassKind::SkewLines(_) => {
            return Err(Error::Domain("skew catalogs are not cached".into()))
        }
    };
    write_catalog(&path, &catalog)?;
    Ok((catalog, true))
}

/// Resolve the cache directory: explicit flag, then `GOSSET_CACHE_DIR`, then
/// `./cache`.
pub fn resolve_cache_dir(flag: Option<&Path>) -> PathBuf {
    if let Some(p) = flag {
        return p.to_path_buf();
    }
    if let Ok(env) = std::env::var("GOSSET_CACHE_DIR") {
        if !env.is_empty() {
            return PathBuf::from(env);
        }
    }
    PathBuf::from("cache")
}

/// Stamp used by the determinism checks: a stable digest of a byte stream.
/// (FNV-1a, 64-bit; this is for comparing two runs, not for security.)
pub fn digest(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x1000_0000_01b3);
    }
    h
}
