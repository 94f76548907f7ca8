//! On-disk table cache.
//!
//! Format (UTF-8, LF line endings, endian-free):
//!
//! ```text
//! RPKT 1
//! k=<decimal|inf> nmax=<decimal>
//! <p_k(0)>
//! <p_k(1)>
//! ...
//! ```
//!
//! one decimal value per line, in order `n = 0..=n_max`.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use num_bigint::BigUint;

use super::{build_table_recurrence, KIndex, Nat, PartitionTable};
use crate::error::{CacheError, Error, Result};

const MAGIC: &str = "RPKT 1";

/// Writes `table` to `path` in the cache format.
pub fn save_table(table: &PartitionTable, path: &Path) -> Result<()> {
    let mut out = String::new();
    out.push_str(MAGIC);
    out.push('\n');
    out.push_str(&format!("k={} nmax={}\n", table.k(), table.n_max()));
    for v in table.values() {
        out.push_str(&v.to_string());
        out.push('\n');
    }
    // Write-then-rename keeps a half-written file from ever being visible
    // under the final name, even with concurrent writers.
    let write = || -> std::io::Result<()> {
        if let Some(dir) = path.parent() {
            if !dir.as_os_str().is_empty() {
                fs::create_dir_all(dir)?;
            }
        }
        let tmp = path.with_extension(format!("tmp.{}", std::process::id()));
        let mut f = fs::File::create(&tmp)?;
        f.write_all(out.as_bytes())?;
        f.sync_all()?;
        drop(f);
        fs::rename(&tmp, path)
    };
    write().map_err(|e| Error::Cache(CacheError::Io(e)))
}

/// Loads a table from `path`, validating magic, header, line count, and that
/// every value line is a nonnegative decimal integer. The file must hold
/// exactly the requested `(k, n_max)` pair.
pub fn load_table(k: KIndex, n_max: usize, path: &Path) -> Result<PartitionTable> {
    let text = fs::read_to_string(path).map_err(|e| Error::Cache(CacheError::Io(e)))?;
    let mut lines = text.lines();

    let magic = lines.next().unwrap_or("");
    if magic != MAGIC {
        return Err(CacheError::BadMagic {
            found: magic.to_string(),
            expected: MAGIC,
        }
        .into());
    }

    let header = lines.next().unwrap_or("");
    let (found_k, found_nmax) = parse_header(header)?;
    if found_k != k || found_nmax != n_max {
        return Err(CacheError::Mismatch {
            want_k: k.to_string(),
            found_k: found_k.to_string(),
            want_nmax: n_max,
            found_nmax,
        }
        .into());
    }

    let mut values: Vec<Nat> = Vec::with_capacity(n_max + 1);
    for (i, line) in lines.by_ref().enumerate() {
        if i > n_max {
            return Err(CacheError::Corrupt(format!(
                "more than {} value lines",
                n_max + 1
            ))
            .into());
        }
        let v = BigUint::parse_bytes(line.as_bytes(), 10).ok_or_else(|| {
            CacheError::Corrupt(format!("value line {} is not a decimal integer: {line:?}", i + 1))
        })?;
        values.push(v);
    }
    if values.len() != n_max + 1 {
        return Err(CacheError::Corrupt(format!(
            "expected {} value lines, found {}",
            n_max + 1,
            values.len()
        ))
        .into());
    }
    Ok(PartitionTable::from_parts(k, values))
}

fn parse_header(line: &str) -> Result<(KIndex, usize)> {
    let bad = || Error::Cache(CacheError::BadHeader(line.to_string()));
    let mut parts = line.split(' ');
    let k_part = parts.next().ok_or_else(bad)?;
    let n_part = parts.next().ok_or_else(bad)?;
    if parts.next().is_some() {
        return Err(bad());
    }
    let k_str = k_part.strip_prefix("k=").ok_or_else(bad)?;
    let n_str = n_part.strip_prefix("nmax=").ok_or_else(bad)?;
    let k = KIndex::from_str(k_str).map_err(|_| bad())?;
    let n_max: usize = n_str.parse().map_err(|_| bad())?;
    Ok((k, n_max))
}

/// Load-or-build access to partition tables, optionally backed by a cache
/// directory. A store with no directory always builds in memory.
#[derive(Debug, Clone, Default)]
pub struct TableStore {
    dir: Option<PathBuf>,
}

impl TableStore {
    /// In-memory only; nothing touches the filesystem.
    pub fn in_memory() -> Self {
        TableStore { dir: None }
    }

    pub fn with_dir(dir: impl Into<PathBuf>) -> Self {
        TableStore { dir: Some(dir.into()) }
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    fn file_for(&self, k: KIndex, n_max: usize) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("pk_{k}_{n_max}.rpkt")))
    }

    /// Returns the table for `(k, n_max)`, loading it from the cache when a
    /// matching file exists and building (then saving) otherwise.
    pub fn get(&self, k: KIndex, n_max: usize) -> Result<PartitionTable> {
        if let Some(path) = self.file_for(k, n_max) {
            if path.exists() {
                return load_table(k, n_max, &path);
            }
            let table = build_table_recurrence(k, n_max);
            save_table(&table, &path)?;
            return Ok(table);
        }
        Ok(build_table_recurrence(k, n_max))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tmpfile(name: &str) -> PathBuf {
        let dir = tempfile::tempdir().unwrap();
        // Keep the dir alive by leaking it; tests are short-lived.
        let path = dir.path().join(name);
        std::mem::forget(dir);
        path
    }

    #[test]
    fn round_trip_identity() {
        let table = build_table_recurrence(KIndex::Finite(5), 100);
        let path = tmpfile("k5.rpkt");
        save_table(&table, &path).unwrap();
        let loaded = load_table(KIndex::Finite(5), 100, &path).unwrap();
        assert_eq!(table, loaded);
    }

    #[test]
    fn wrong_k_is_a_mismatch() {
        let table = build_table_recurrence(KIndex::Finite(5), 20);
        let path = tmpfile("k5_20.rpkt");
        save_table(&table, &path).unwrap();
        let err = load_table(KIndex::Finite(6), 20, &path).unwrap_err();
        assert!(matches!(err, Error::Cache(CacheError::Mismatch { .. })), "{err}");
        let err = load_table(KIndex::Finite(5), 21, &path).unwrap_err();
        assert!(matches!(err, Error::Cache(CacheError::Mismatch { .. })), "{err}");
    }

    #[test]
    fn truncated_file_is_corrupt() {
        let table = build_table_recurrence(KIndex::Finite(3), 30);
        let path = tmpfile("k3_30.rpkt");
        save_table(&table, &path).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        let truncated: Vec<&str> = text.lines().take(20).collect();
        std::fs::write(&path, truncated.join("\n")).unwrap();
        let err = load_table(KIndex::Finite(3), 30, &path).unwrap_err();
        assert!(matches!(err, Error::Cache(CacheError::Corrupt(_))), "{err}");
    }

    #[test]
    fn bad_magic_and_bad_values() {
        let path = tmpfile("bad.rpkt");
        std::fs::write(&path, "RPKT 9\nk=2 nmax=1\n1\n1\n").unwrap();
        let err = load_table(KIndex::Finite(2), 1, &path).unwrap_err();
        assert!(matches!(err, Error::Cache(CacheError::BadMagic { .. })), "{err}");

        std::fs::write(&path, "RPKT 1\nk=2 nmax=1\n1\n-3\n").unwrap();
        let err = load_table(KIndex::Finite(2), 1, &path).unwrap_err();
        assert!(matches!(err, Error::Cache(CacheError::Corrupt(_))), "{err}");
    }

    #[test]
    fn store_reuses_cached_file() {
        let dir = tempfile::tempdir().unwrap();
        let store = TableStore::with_dir(dir.path());
        let a = store.get(KIndex::Infinity, 50).unwrap();
        let path = dir.path().join("pk_inf_50.rpkt");
        assert!(path.exists());
        let mtime = std::fs::metadata(&path).unwrap().modified().unwrap();
        let b = store.get(KIndex::Infinity, 50).unwrap();
        assert_eq!(a, b);
        assert_eq!(mtime, std::fs::metadata(&path).unwrap().modified().unwrap());
    }
}
