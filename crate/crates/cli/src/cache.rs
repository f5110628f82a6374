//! Content-addressed cache of serialized character tables.
//!
//! The key is the SHA-256 of the engine version, the table format version
//! and the canonical group file text, so a version bump is a miss. Entries
//! are written to a temporary file and renamed into place. An entry that no
//! longer parses or validates is evicted and recomputed.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use charlab::chartab::{character_table, CharacterTable, TABLE_FORMAT_VERSION};
use sha2::{Digest, Sha256};

use crate::groupfile::GroupFile;
use crate::{CliError, Result};

pub const CACHE_ENV: &str = "CHARLAB_CACHE";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Lookup {
    Hit,
    Miss,
    /// A corrupt entry was removed and the table recomputed.
    Evicted,
}

#[derive(Clone, Debug)]
pub struct TableCache {
    dir: PathBuf,
    version: String,
}

impl TableCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self::with_version(dir, charlab::VERSION)
    }

    pub fn with_version(dir: impl Into<PathBuf>, version: &str) -> Self {
        TableCache {
            dir: dir.into(),
            version: format!("{version}/table-{TABLE_FORMAT_VERSION}"),
        }
    }

    /// `--cache-dir`, then `$CHARLAB_CACHE`, then the user cache directory.
    pub fn resolve_dir(flag: Option<&Path>) -> Option<PathBuf> {
        if let Some(d) = flag {
            return Some(d.to_path_buf());
        }
        if let Some(d) = std::env::var_os(CACHE_ENV) {
            return Some(PathBuf::from(d));
        }
        let base = std::env::var_os("XDG_CACHE_HOME")
            .map(PathBuf::from)
            .or_else(|| std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache")))?;
        Some(base.join("charlab"))
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn key(&self, canonical: &str) -> String {
        let mut h = Sha256::new();
        h.update(self.version.as_bytes());
        h.update([0]);
        h.update(canonical.as_bytes());
        h.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.table"))
    }

    fn io(&self, path: &Path, source: std::io::Error) -> CliError {
        CliError::Io {
            path: path.to_path_buf(),
            source,
        }
    }

    pub fn store(&self, key: &str, table: &CharacterTable) -> Result<()> {
        fs::create_dir_all(&self.dir).map_err(|e| self.io(&self.dir, e))?;
        let path = self.path(key);
        let tmp = self
            .dir
            .join(format!(".{key}.{}.tmp", std::process::id()));
        let mut f = fs::File::create(&tmp).map_err(|e| self.io(&tmp, e))?;
        f.write_all(table.to_text().as_bytes())
            .and_then(|_| f.sync_all())
            .map_err(|e| self.io(&tmp, e))?;
        fs::rename(&tmp, &path).map_err(|e| self.io(&path, e))
    }

    /// Table for a group file, from the cache when possible.
    pub fn table(&self, gf: &GroupFile) -> Result<(CharacterTable, Lookup)> {
        let key = self.key(&gf.canonical);
        let path = self.path(&key);
        let mut outcome = Lookup::Miss;
        if let Ok(text) = fs::read_to_string(&path) {
            match CharacterTable::from_text(&gf.group, &text) {
                Ok(t) => return Ok((t, Lookup::Hit)),
                Err(e) => {
                    eprintln!("warning: evicting corrupt cache entry {}: {e}", path.display());
                    let _ = fs::remove_file(&path);
                    outcome = Lookup::Evicted;
                }
            }
        }
        let table = character_table(&gf.group)?;
        if let Err(e) = self.store(&key, &table) {
            eprintln!("warning: could not write cache entry: {e}");
        }
        Ok((table, outcome))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupfile::parse_group_file;

    #[test]
    fn keys_depend_on_version_and_text() {
        let a = TableCache::with_version("/x", "1.0");
        let b = TableCache::with_version("/x", "1.1");
        assert_ne!(a.key("degree 3"), b.key("degree 3"));
        assert_ne!(a.key("degree 3"), a.key("degree 4"));
        assert_eq!(a.key("degree 3").len(), 64);
    }

    #[test]
    fn store_load_evict() {
        let dir = tempfile::tempdir().unwrap();
        let cache = TableCache::new(dir.path());
        let gf = parse_group_file("builtin: symmetric(4)").unwrap();
        let (t1, o1) = cache.table(&gf).unwrap();
        assert_eq!(o1, Lookup::Miss);
        let (t2, o2) = cache.table(&gf).unwrap();
        assert_eq!(o2, Lookup::Hit);
        assert_eq!(t1.to_text(), t2.to_text());

        let bumped = TableCache::with_version(dir.path(), "999.0.0");
        assert_eq!(bumped.table(&gf).unwrap().1, Lookup::Miss);

        let path = cache.path(&cache.key(&gf.canonical));
        fs::write(&path, t1.to_text().replace("degree 3", "degree 4")).unwrap();
        let (t3, o3) = cache.table(&gf).unwrap();
        assert_eq!(o3, Lookup::Evicted);
        assert_eq!(t3.to_text(), t1.to_text());
        assert_eq!(cache.table(&gf).unwrap().1, Lookup::Hit);
    }
}
