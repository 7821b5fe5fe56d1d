//! On-disk cache of canonical JSON records.
//!
//! Entries are keyed by `(version, kind, r, d, g, fixed_determinant)` and live
//! under `$MHODGE_CACHE`, falling back to `$XDG_CACHE_HOME/mhodge` and then
//! `$HOME/.cache/mhodge`. Writes go to a temporary file in the same directory
//! and are renamed into place.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use mhodge_core::ModuliParams;

pub const CACHE_ENV: &str = "MHODGE_CACHE";

pub fn default_dir() -> PathBuf {
    if let Some(dir) = std::env::var_os(CACHE_ENV).filter(|s| !s.is_empty()) {
        return PathBuf::from(dir);
    }
    if let Some(xdg) = std::env::var_os("XDG_CACHE_HOME").filter(|s| !s.is_empty()) {
        return PathBuf::from(xdg).join("mhodge");
    }
    if let Some(home) = std::env::var_os("HOME").filter(|s| !s.is_empty()) {
        return PathBuf::from(home).join(".cache").join("mhodge");
    }
    std::env::temp_dir().join("mhodge")
}

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn key(kind: &str, params: &ModuliParams) -> String {
        format!(
            "{kind}-v{}-r{}-d{}-g{}-{}.json",
            mhodge_core::VERSION,
            params.rank,
            params.degree,
            params.genus,
            if params.fixed_determinant {
                "fixed"
            } else {
                "varying"
            }
        )
    }

    pub fn path(&self, kind: &str, params: &ModuliParams) -> PathBuf {
        self.dir.join(Self::key(kind, params))
    }

    pub fn load(&self, kind: &str, params: &ModuliParams) -> Option<String> {
        fs::read_to_string(self.path(kind, params)).ok()
    }

    pub fn store(&self, kind: &str, params: &ModuliParams, document: &str) -> Result<PathBuf> {
        fs::create_dir_all(&self.dir)
            .with_context(|| format!("creating cache directory {}", self.dir.display()))?;
        let target = self.path(kind, params);
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        tmp.write_all(document.as_bytes())?;
        tmp.flush()?;
        tmp.persist(&target)
            .with_context(|| format!("renaming into {}", target.display()))?;
        Ok(target)
    }
}
