//! Append-only JSON-lines cache of per-prime analyses.

use std::collections::HashMap;
use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::analyze::Analysis;
use crate::error::{Result, SurveyError};

pub const CACHE_FILE: &str = "qrgap-cache.jsonl";

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CacheKey {
    pub p: u64,
    /// Canonical measure list, e.g. `lc_d,moc`.
    pub measures: String,
    pub version: String,
    /// Only part of the key when the correlation measure is enabled.
    pub c2_cap: Option<usize>,
}

#[derive(Serialize, Deserialize)]
struct Entry {
    key: CacheKey,
    analysis: Analysis,
}

pub struct Cache {
    path: PathBuf,
    entries: HashMap<CacheKey, Analysis>,
    writer: Mutex<File>,
}

impl Cache {
    /// Opens (creating if needed) the cache in `dir`. Lines that fail to
    /// parse are skipped, so a truncated final write only costs a recompute.
    pub fn open(dir: &Path) -> Result<Self> {
        let path = dir.join(CACHE_FILE);
        let io_err = |source| SurveyError::Output {
            path: path.clone(),
            source,
        };
        fs::create_dir_all(dir).map_err(io_err)?;
        let mut entries = HashMap::new();
        if path.exists() {
            for line in BufReader::new(File::open(&path).map_err(io_err)?).lines() {
                let line = line.map_err(io_err)?;
                if let Ok(e) = serde_json::from_str::<Entry>(&line) {
                    entries.insert(e.key, e.analysis);
                }
            }
        }
        let writer = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&path)
            .map_err(io_err)?;
        Ok(Self {
            path,
            entries,
            writer: Mutex::new(writer),
        })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries loaded at open time; writes made since are not visible here.
    pub fn get(&self, key: &CacheKey) -> Option<&Analysis> {
        self.entries.get(key)
    }

    /// Appends one entry. Each entry is a single `write_all` under the lock.
    pub fn put(&self, key: CacheKey, analysis: &Analysis) -> Result<()> {
        let mut line = serde_json::to_string(&Entry {
            key,
            analysis: analysis.clone(),
        })?;
        line.push('\n');
        let mut w = self.writer.lock().unwrap_or_else(|e| e.into_inner());
        w.write_all(line.as_bytes()).map_err(|source| SurveyError::Output {
            path: self.path.clone(),
            source,
        })
    }
}
