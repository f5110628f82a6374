//! Corpus manifests: TOML lists of group files with optional regression
//! fields.
//!
//! ```toml
//! [[group]]
//! id = "d24"
//! file = "groups/d24.grp"
//! order = 24
//! classes = 9
//! ```

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::{CliError, Result};

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Entry {
    pub id: String,
    /// Relative to the manifest's directory.
    pub file: PathBuf,
    pub order: Option<u64>,
    pub classes: Option<usize>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    #[serde(default, rename = "group")]
    pub groups: Vec<Entry>,
    #[serde(skip)]
    pub base: PathBuf,
}

impl Manifest {
    pub fn parse(text: &str, base: &Path) -> Result<Manifest> {
        let mut m: Manifest =
            toml::from_str(text).map_err(|e| CliError::Input(format!("manifest: {e}")))?;
        let mut seen = BTreeSet::new();
        for e in &m.groups {
            if !seen.insert(e.id.as_str()) {
                return Err(CliError::Input(format!("manifest: duplicate id {:?}", e.id)));
            }
        }
        m.base = base.to_path_buf();
        Ok(m)
    }

    pub fn load(path: &Path) -> Result<Manifest> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Manifest::parse(&text, path.parent().unwrap_or(Path::new(".")))
    }

    pub fn path_of(&self, e: &Entry) -> PathBuf {
        self.base.join(&e.file)
    }
}

/// The manifest shipped with this crate.
pub fn default_manifest_path() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus/manifest.toml")
}
