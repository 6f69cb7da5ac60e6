//! Point-cache files: a short header, then one comma-separated point per line.
//!
//! ```text
//! # quintic point cache
//! p=31
//! a=2
//! version=0.1.0
//! sha256=<hex digest of the point lines>
//! 0,1,15,16,30
//! ...
//! ```

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use super::{scan_curve, CurveScan, ProbeError};

pub const CACHE_VERSION: &str = env!("CARGO_PKG_VERSION");

const MAGIC: &str = "# quintic point cache";

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CacheOutcome {
    Hit,
    Created,
    /// The file existed but failed validation.
    Rebuilt(String),
}

pub fn cache_path(dir: &Path, p: u64, a: u64) -> PathBuf {
    dir.join(format!("scan-p{p}-a{a}-v{CACHE_VERSION}.csv"))
}

fn body(scan: &CurveScan) -> String {
    let mut s = String::new();
    for x in &scan.points {
        let line: Vec<String> = x.iter().map(u64::to_string).collect();
        s.push_str(&line.join(","));
        s.push('\n');
    }
    s
}

fn digest(body: &str) -> String {
    Sha256::digest(body.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

/// Writes to a temporary file in the same directory, then renames.
pub fn write_cache(dir: &Path, scan: &CurveScan) -> Result<PathBuf, ProbeError> {
    let io = |e: std::io::Error| ProbeError::Cache(e.to_string());
    fs::create_dir_all(dir).map_err(io)?;
    let path = cache_path(dir, scan.p, scan.a);
    let tmp = dir.join(format!(".scan-p{}-a{}.{}.tmp", scan.p, scan.a, std::process::id()));
    let b = body(scan);
    {
        let mut file = fs::File::create(&tmp).map_err(io)?;
        write!(file, "{MAGIC}\np={}\na={}\nversion={CACHE_VERSION}\nsha256={}\n{b}", scan.p, scan.a, digest(&b))
            .map_err(io)?;
        file.sync_all().map_err(io)?;
    }
    fs::rename(&tmp, &path).map_err(io)?;
    Ok(path)
}

/// `Ok(None)` if there is no file; `Err` if it exists but does not validate.
pub fn load_cache(dir: &Path, p: u64, a: u64) -> Result<Option<CurveScan>, ProbeError> {
    let path = cache_path(dir, p, a);
    let text = match fs::read_to_string(&path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(ProbeError::Cache(e.to_string())),
    };
    let bad = |m: &str| ProbeError::Cache(format!("{}: {m}", path.display()));
    let mut parts = text.splitn(6, '\n');
    let mut next = || parts.next().ok_or_else(|| bad("truncated header"));
    if next()? != MAGIC {
        return Err(bad("missing header"));
    }
    let field = |line: &str, key: &str| line.strip_prefix(key).map(str::to_string).ok_or_else(|| bad(key));
    let hp = field(next()?, "p=")?;
    let ha = field(next()?, "a=")?;
    let hv = field(next()?, "version=")?;
    let hash = field(next()?, "sha256=")?;
    let rest = parts.next().unwrap_or("");
    if hp != p.to_string() || ha != a.to_string() || hv != CACHE_VERSION {
        return Err(bad("header does not match (p, a, version)"));
    }
    if digest(rest) != hash {
        return Err(bad("content hash mismatch"));
    }
    let mut points = Vec::new();
    for line in rest.lines() {
        let vals: Vec<u64> = line
            .split(',')
            .map(|s| s.trim().parse::<u64>().map_err(|_| bad("unparsable residue")))
            .collect::<Result<_, _>>()?;
        let pt: [u64; 5] = vals.try_into().map_err(|_| bad("point without 5 coordinates"))?;
        points.push(pt);
    }
    Ok(Some(CurveScan { p, a, points }))
}

/// Loads a validated cache or rescans and rewrites it.
pub fn scan_cached(dir: &Path, p: u64, a: u64) -> Result<(CurveScan, CacheOutcome), ProbeError> {
    let outcome = match load_cache(dir, p, a) {
        Ok(Some(scan)) => return Ok((scan, CacheOutcome::Hit)),
        Ok(None) => CacheOutcome::Created,
        Err(e) => CacheOutcome::Rebuilt(e.to_string()),
    };
    let scan = scan_curve(p, a)?;
    write_cache(dir, &scan)?;
    Ok((scan, outcome))
}
