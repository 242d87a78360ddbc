//! On-disk cache of structure-constant tables.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use ogq_core::quantum::TABLE_SCHEMA;
use ogq_core::StructureTable;

/// `--cache-dir`, then `OGQ_CACHE_DIR` (both via clap), then the user cache dir.
pub fn default_dir() -> PathBuf {
    if let Some(x) = std::env::var_os("XDG_CACHE_HOME").filter(|x| !x.is_empty()) {
        return PathBuf::from(x).join("ogq");
    }
    if let Some(h) = std::env::var_os("HOME").filter(|h| !h.is_empty()) {
        return PathBuf::from(h).join(".cache").join("ogq");
    }
    PathBuf::from(".ogq-cache")
}

/// File name for one table; the schema version is part of the key.
pub fn file_name(n: u32, max_d: Option<u32>) -> String {
    let version = TABLE_SCHEMA.rsplit('/').next().unwrap_or("0");
    let cap = max_d.map_or("all".to_string(), |d| d.to_string());
    format!("ogq-table-v{version}-n{n}-d{cap}.json")
}

pub enum Lookup {
    Missing,
    Fresh(StructureTable, String),
    /// Present but unreadable under the current schema; the string says why.
    Stale(String),
}

pub fn lookup(path: &Path, max_d: Option<u32>) -> io::Result<Lookup> {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(Lookup::Missing),
        Err(e) => return Err(e),
    };
    Ok(match StructureTable::from_json(&text, max_d) {
        Ok(t) => Lookup::Fresh(t, text),
        Err(e) => Lookup::Stale(e.to_string()),
    })
}

/// Writes through a temporary file so readers never see a partial table.
pub fn store(path: &Path, text: &str) -> io::Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    fs::write(&tmp, text)?;
    fs::rename(&tmp, path).inspect_err(|_| {
        let _ = fs::remove_file(&tmp);
    })
}
