//! On-disk cache of computed distributions.

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use mu_cycles::poly::Distributions;
use mu_cycles::{QPolynomial, Statistic};
use serde::{Deserialize, Serialize};

use crate::CliError;

pub const CACHE_VERSION: u32 = 1;
/// Identifies the enumeration engine that produced the entries.
pub const ORDER_TAG: &str = "lex-tail-by-second-entry";
pub const DEFAULT_PATH: &str = "mu-cache.json";
pub const PATH_VAR: &str = "MU_CYCLES_CACHE";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheFile {
    pub version: u32,
    pub order: String,
    pub entries: BTreeMap<String, Vec<u64>>,
}

impl Default for CacheFile {
    fn default() -> Self {
        CacheFile {
            version: CACHE_VERSION,
            order: ORDER_TAG.to_string(),
            entries: BTreeMap::new(),
        }
    }
}

fn key(statistic: Statistic, n: usize) -> String {
    format!("{statistic}/{n}")
}

impl CacheFile {
    pub fn get(&self, statistic: Statistic, n: usize) -> Option<QPolynomial> {
        self.entries
            .get(&key(statistic, n))
            .map(|c| QPolynomial::from_coeffs(c.clone()))
    }

    pub fn insert(&mut self, d: &Distributions) {
        for statistic in Statistic::ALL {
            self.entries
                .insert(key(statistic, d.n), d.get(statistic).coeffs().to_vec());
        }
    }
}

/// `--cache` if given, else `$MU_CYCLES_CACHE`, else `./mu-cache.json`.
pub fn resolve_path(flag: Option<&Path>) -> PathBuf {
    if let Some(p) = flag {
        return p.to_path_buf();
    }
    match std::env::var_os(PATH_VAR) {
        Some(p) if !p.is_empty() => PathBuf::from(p),
        _ => PathBuf::from(DEFAULT_PATH),
    }
}

/// A missing file is an empty cache; anything unreadable or from another
/// format version is an error.
pub fn load(path: &Path) -> Result<CacheFile, CliError> {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(CacheFile::default()),
        Err(e) => return Err(CliError::Cache(format!("{}: {e}", path.display()))),
    };
    let file: CacheFile = serde_json::from_str(&text)
        .map_err(|e| CliError::Cache(format!("{} is corrupt: {e}", path.display())))?;
    if file.version != CACHE_VERSION {
        return Err(CliError::Cache(format!(
            "{} has format version {}, expected {CACHE_VERSION}; clear it with `cache clear`",
            path.display(),
            file.version
        )));
    }
    if file.order != ORDER_TAG {
        return Err(CliError::Cache(format!(
            "{} was written with enumeration order {:?}, expected {ORDER_TAG:?}",
            path.display(),
            file.order
        )));
    }
    Ok(file)
}

/// Writes to a sibling temporary file and renames it into place.
pub fn store(path: &Path, file: &CacheFile) -> Result<(), CliError> {
    let io_err = |e: io::Error| CliError::Cache(format!("{}: {e}", path.display()));
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d.to_path_buf(),
        _ => PathBuf::from("."),
    };
    let name = path
        .file_name()
        .map_or_else(|| "cache".into(), |n| n.to_string_lossy().into_owned());
    let tmp = dir.join(format!(".{name}.{}.tmp", std::process::id()));
    let body = serde_json::to_string_pretty(file).expect("cache serializes");
    let mut out = fs::File::create(&tmp).map_err(io_err)?;
    out.write_all(body.as_bytes()).map_err(io_err)?;
    out.write_all(b"\n").map_err(io_err)?;
    out.sync_all().map_err(io_err)?;
    drop(out);
    fs::rename(&tmp, path).map_err(|e| {
        let _ = fs::remove_file(&tmp);
        io_err(e)
    })
}

pub fn clear(path: &Path) -> Result<bool, CliError> {
    match fs::remove_file(path) {
        Ok(()) => Ok(true),
        Err(e) if e.kind() == io::ErrorKind::NotFound => Ok(false),
        Err(e) => Err(CliError::Cache(format!("{}: {e}", path.display()))),
    }
}
