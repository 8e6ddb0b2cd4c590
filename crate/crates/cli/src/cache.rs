//! Append-only JSON-lines cache. One record per line; records written by another
//! tool version are ignored.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CacheRecord {
    pub canonical_key: String,
    pub invariant: String,
    pub value: Value,
    pub version: String,
    pub timestamp: u64,
}

pub struct Cache {
    path: Option<PathBuf>,
    entries: Mutex<HashMap<(String, String), Value>>,
}

impl Cache {
    pub fn disabled() -> Self {
        Cache {
            path: None,
            entries: Mutex::new(HashMap::new()),
        }
    }

    /// Loads every current-version record; a missing file is an empty cache.
    pub fn open(path: &Path) -> std::io::Result<Self> {
        let mut entries = HashMap::new();
        if path.exists() {
            for line in BufReader::new(File::open(path)?).lines() {
                let line = line?;
                // a torn final line from an interrupted write is skipped
                let Ok(rec) = serde_json::from_str::<CacheRecord>(&line) else {
                    continue;
                };
                if rec.version == TOOL_VERSION {
                    entries.insert((rec.canonical_key, rec.invariant), rec.value);
                }
            }
        }
        Ok(Cache {
            path: Some(path.to_path_buf()),
            entries: Mutex::new(entries),
        })
    }

    pub fn enabled(&self) -> bool {
        self.path.is_some()
    }

    pub fn get(&self, key: &str, invariant: &str) -> Option<Value> {
        self.entries
            .lock()
            .unwrap()
            .get(&(key.to_string(), invariant.to_string()))
            .cloned()
    }

    pub fn put(&self, key: &str, invariant: &str, value: &Value) -> std::io::Result<()> {
        let Some(path) = &self.path else {
            return Ok(());
        };
        let mut entries = self.entries.lock().unwrap();
        let k = (key.to_string(), invariant.to_string());
        if entries.get(&k) == Some(value) {
            return Ok(());
        }
        let rec = CacheRecord {
            canonical_key: key.to_string(),
            invariant: invariant.to_string(),
            value: value.clone(),
            version: TOOL_VERSION.to_string(),
            timestamp: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map_or(0, |d| d.as_secs()),
        };
        let mut f = OpenOptions::new().create(true).append(true).open(path)?;
        writeln!(f, "{}", serde_json::to_string(&rec).expect("record serializes"))?;
        entries.insert(k, value.clone());
        Ok(())
    }

    /// Every cached `(key, invariant)` pair, sorted.
    pub fn keys(&self) -> Vec<(String, String)> {
        let mut k: Vec<_> = self.entries.lock().unwrap().keys().cloned().collect();
        k.sort();
        k
    }
}
