//! On-disk result cache: one JSON file holding rendered outputs keyed by
//! command, target, method and format.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::args::{Family, Method};
use crate::input::Cell;
use crate::CliError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum TargetSpec {
    Family { family: Family, n: usize },
    Cells { cells: Vec<Cell> },
}

impl TargetSpec {
    /// `g:5`, `h:2`, or a digest of the sorted cell list.
    pub fn key(&self) -> String {
        match self {
            TargetSpec::Family { family: Family::G, n } => format!("g:{n}"),
            TargetSpec::Family { family: Family::H, n } => format!("h:{n}"),
            TargetSpec::Cells { cells } => {
                let mut sorted = cells.clone();
                sorted.sort_unstable();
                sorted.dedup();
                let canonical = serde_json::to_string(&sorted).expect("cells serialize");
                let digest = Sha256::digest(canonical.as_bytes());
                let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
                format!("cells:{hex}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheRecord {
    pub command: String,
    pub target: TargetSpec,
    pub method: Option<Method>,
    pub format: String,
    pub output: String,
    pub created_unix: u64,
}

impl CacheRecord {
    pub fn key(&self) -> String {
        record_key(&self.command, &self.target, self.method, &self.format)
    }
}

pub fn record_key(command: &str, target: &TargetSpec, method: Option<Method>, format: &str) -> String {
    let method = match method {
        Some(m) => serde_json::to_value(m).expect("method serializes").as_str().unwrap_or("").to_string(),
        None => "-".to_string(),
    };
    format!("{command}|{}|{method}|{format}", target.key())
}

#[derive(Debug, Default, Serialize, Deserialize)]
struct CacheFile {
    records: BTreeMap<String, CacheRecord>,
}

#[derive(Debug)]
pub struct Cache {
    path: PathBuf,
    file: CacheFile,
}

impl Cache {
    /// Open a cache file; a missing file is an empty cache.
    pub fn open(path: &Path) -> Result<Self, CliError> {
        let file = match fs::read_to_string(path) {
            Ok(text) => serde_json::from_str(&text)
                .map_err(|e| CliError::Cache(format!("{}: {e}", path.display())))?,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => CacheFile::default(),
            Err(e) => return Err(CliError::Io(format!("{}: {e}", path.display()))),
        };
        Ok(Cache {
            path: path.to_path_buf(),
            file,
        })
    }

    pub fn get(&self, key: &str) -> Option<&CacheRecord> {
        self.file.records.get(key)
    }

    pub fn records(&self) -> impl Iterator<Item = &CacheRecord> {
        self.file.records.values()
    }

    pub fn insert(&mut self, record: CacheRecord) {
        self.file.records.insert(record.key(), record);
    }

    /// Write through a temporary file so a crash never leaves half a cache.
    pub fn save(&self) -> Result<(), CliError> {
        let io = |e: std::io::Error| CliError::Io(format!("{}: {e}", self.path.display()));
        let text = serde_json::to_string_pretty(&self.file).map_err(|e| CliError::Cache(e.to_string()))?;
        let mut tmp = self.path.clone().into_os_string();
        tmp.push(".tmp");
        fs::write(&tmp, text).map_err(io)?;
        fs::rename(&tmp, &self.path).map_err(io)
    }
}

pub fn now_unix() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cell_keys_ignore_order() {
        let a = TargetSpec::Cells { cells: vec![(0, 1), (0, 0)] };
        let b = TargetSpec::Cells { cells: vec![(0, 0), (0, 1), (0, 0)] };
        assert_eq!(a.key(), b.key());
        assert!(a.key().starts_with("cells:"));
        assert_eq!(TargetSpec::Family { family: Family::H, n: 2 }.key(), "h:2");
    }

    #[test]
    fn round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cache.json");
        let mut cache = Cache::open(&path).unwrap();
        let record = CacheRecord {
            command: "count".into(),
            target: TargetSpec::Family { family: Family::G, n: 3 },
            method: Some(Method::Recurrence),
            format: "json".into(),
            output: "{\"phi\":\"1\"}\n".into(),
            created_unix: 0,
        };
        let key = record.key();
        assert_eq!(key, "count|g:3|recurrence|json");
        cache.insert(record.clone());
        cache.save().unwrap();
        let reopened = Cache::open(&path).unwrap();
        assert_eq!(reopened.get(&key), Some(&record));
    }

    #[test]
    fn corrupt_file_is_an_error() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cache.json");
        fs::write(&path, "not json").unwrap();
        assert!(matches!(Cache::open(&path), Err(CliError::Cache(_))));
    }
}
