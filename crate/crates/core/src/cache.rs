//! Content-addressed on-disk cache of completed reports.
//!
//! An entry is keyed by the SHA-256 of `(operation, parameters,
//! schema-version)`. Entries that fail to parse or whose stored key does not
//! match are deleted on read.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::error::Result;
use crate::report::SCHEMA_VERSION;

pub const CACHE_DIR_ENV: &str = "NKSTAR_CACHE_DIR";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CacheKey {
    pub operation: String,
    pub parameters: Value,
    pub version: u64,
}

impl CacheKey {
    pub fn new(operation: &str, parameters: Value) -> Self {
        CacheKey {
            operation: operation.to_string(),
            parameters,
            version: SCHEMA_VERSION,
        }
    }

    pub fn digest(&self) -> String {
        let canonical = serde_json::to_string(self).expect("key serializes");
        let hash = Sha256::digest(canonical.as_bytes());
        hash.iter().map(|b| format!("{b:02x}")).collect()
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CacheEntry {
    pub key: CacheKey,
    #[serde(rename = "created-at")]
    pub created_at: u64,
    pub payload: Value,
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    /// `$NKSTAR_CACHE_DIR`, else `$XDG_CACHE_HOME/nkstar`, else
    /// `$HOME/.cache/nkstar`, else `.nkstar-cache`.
    pub fn default_dir() -> PathBuf {
        if let Some(d) = std::env::var_os(CACHE_DIR_ENV) {
            return d.into();
        }
        if let Some(d) = std::env::var_os("XDG_CACHE_HOME") {
            return Path::new(&d).join("nkstar");
        }
        if let Some(d) = std::env::var_os("HOME") {
            return Path::new(&d).join(".cache").join("nkstar");
        }
        PathBuf::from(".nkstar-cache")
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, key: &CacheKey) -> PathBuf {
        self.dir.join(format!("{}.json", key.digest()))
    }

    pub fn get(&self, key: &CacheKey) -> Option<Value> {
        let path = self.path(key);
        let text = fs::read_to_string(&path).ok()?;
        match serde_json::from_str::<CacheEntry>(&text) {
            Ok(entry) if entry.key == *key && entry.payload.get("schema-version") == Some(&json!(SCHEMA_VERSION)) => {
                Some(entry.payload)
            }
            _ => {
                let _ = fs::remove_file(&path);
                None
            }
        }
    }

    /// Writes through a temporary file renamed into place.
    pub fn put(&self, key: &CacheKey, payload: &Value) -> Result<()> {
        fs::create_dir_all(&self.dir)?;
        let entry = CacheEntry {
            key: key.clone(),
            created_at: SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs()),
            payload: payload.clone(),
        };
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        tmp.write_all(serde_json::to_string(&entry).expect("entry serializes").as_bytes())?;
        tmp.persist(self.path(key)).map_err(|e| e.error)?;
        Ok(())
    }

    /// Entries sorted by file name; corrupt files are evicted.
    pub fn list(&self) -> Result<Vec<(String, CacheEntry)>> {
        let mut out = Vec::new();
        let Ok(read) = fs::read_dir(&self.dir) else {
            return Ok(out);
        };
        for item in read {
            let path = item?.path();
            if path.extension().is_none_or(|e| e != "json") {
                continue;
            }
            let name = path.file_stem().unwrap_or_default().to_string_lossy().into_owned();
            match fs::read_to_string(&path).ok().and_then(|t| serde_json::from_str::<CacheEntry>(&t).ok()) {
                Some(entry) if entry.key.digest() == name => out.push((name, entry)),
                _ => {
                    let _ = fs::remove_file(&path);
                }
            }
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(out)
    }

    pub fn clear(&self) -> Result<usize> {
        let mut removed = 0;
        let Ok(read) = fs::read_dir(&self.dir) else {
            return Ok(0);
        };
        for item in read {
            let path = item?.path();
            if path.extension().is_some_and(|e| e == "json") {
                fs::remove_file(&path)?;
                removed += 1;
            }
        }
        Ok(removed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn payload() -> Value {
        json!({"schema-version": SCHEMA_VERSION, "value": 5})
    }

    #[test]
    fn put_get_roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        let key = CacheKey::new("skappa", json!({"n": 5, "k": 3, "h": 1}));
        assert_eq!(cache.get(&key), None);
        cache.put(&key, &payload()).unwrap();
        assert_eq!(cache.get(&key), Some(payload()));
        assert_eq!(cache.list().unwrap().len(), 1);
        assert_eq!(cache.clear().unwrap(), 1);
        assert_eq!(cache.get(&key), None);
    }

    #[test]
    fn digest_depends_on_every_field() {
        let a = CacheKey::new("skappa", json!({"n": 5}));
        let mut b = a.clone();
        b.version += 1;
        let c = CacheKey::new("verify", json!({"n": 5}));
        assert_ne!(a.digest(), b.digest());
        assert_ne!(a.digest(), c.digest());
        assert_eq!(a.digest().len(), 64);
    }

    #[test]
    fn corrupt_entries_are_evicted() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        let key = CacheKey::new("skappa", json!({"n": 4}));
        cache.put(&key, &payload()).unwrap();
        let path = cache.path(&key);
        fs::write(&path, "{not json").unwrap();
        assert_eq!(cache.get(&key), None);
        assert!(!path.exists());

        // a well-formed entry filed under the wrong digest
        cache.put(&key, &payload()).unwrap();
        let other = CacheKey::new("skappa", json!({"n": 6}));
        fs::copy(cache.path(&key), cache.path(&other)).unwrap();
        assert_eq!(cache.get(&other), None);
        assert_eq!(cache.list().unwrap().len(), 1);
    }
}
