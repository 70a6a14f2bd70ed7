//! Content-addressed on-disk cache of JSON results.
//!
//! Keys are SHA-256 digests of the engine version, a kind tag and the
//! serialized inputs, so a new engine version never reads stale entries.
//! Writes go to a temporary file in the same directory and are renamed into
//! place.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::Result;
use crate::ENGINE_VERSION;

/// Environment variable overriding the cache directory.
pub const CACHE_DIR_ENV: &str = "LATCOH_CACHE_DIR";

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CacheStats {
    pub dir: String,
    pub entries: usize,
    pub bytes: u64,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Cache {
        Cache { dir: dir.into() }
    }

    /// `LATCOH_CACHE_DIR` if set, else `fallback`.
    pub fn resolve(fallback: Option<PathBuf>) -> Option<Cache> {
        match std::env::var_os(CACHE_DIR_ENV) {
            Some(d) if !d.is_empty() => Some(Cache::new(d)),
            _ => fallback.map(Cache::new),
        }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn key(kind: &str, inputs: &Value) -> String {
        let mut h = Sha256::new();
        h.update(ENGINE_VERSION.as_bytes());
        h.update([0u8]);
        h.update(kind.as_bytes());
        h.update([0u8]);
        h.update(inputs.to_string().as_bytes());
        h.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    pub fn get(&self, key: &str) -> Result<Option<Value>> {
        match fs::read(self.path(key)) {
            Ok(bytes) => Ok(serde_json::from_slice(&bytes).ok()),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
            Err(e) => Err(e.into()),
        }
    }

    pub fn put(&self, key: &str, value: &Value) -> Result<()> {
        fs::create_dir_all(&self.dir)?;
        let tmp = self.dir.join(format!(
            ".{key}.{}.{:?}.tmp",
            std::process::id(),
            std::thread::current().id()
        ));
        {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(serde_json::to_string(value)?.as_bytes())?;
            f.sync_all()?;
        }
        fs::rename(&tmp, self.path(key))?;
        Ok(())
    }

    fn entries(&self) -> Result<Vec<PathBuf>> {
        let rd = match fs::read_dir(&self.dir) {
            Ok(rd) => rd,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Vec::new()),
            Err(e) => return Err(e.into()),
        };
        let mut out = Vec::new();
        for e in rd {
            let p = e?.path();
            let name = p.file_name().and_then(|n| n.to_str()).unwrap_or("");
            if name.ends_with(".json") && !name.starts_with('.') {
                out.push(p);
            }
        }
        out.sort();
        Ok(out)
    }

    pub fn stats(&self) -> Result<CacheStats> {
        let entries = self.entries()?;
        let mut bytes = 0;
        for p in &entries {
            bytes += fs::metadata(p)?.len();
        }
        Ok(CacheStats {
            dir: self.dir.display().to_string(),
            entries: entries.len(),
            bytes,
        })
    }

    /// Removes every entry; returns how many were removed.
    pub fn clear(&self) -> Result<usize> {
        let entries = self.entries()?;
        for p in &entries {
            fs::remove_file(p)?;
        }
        Ok(entries.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn round_trip_and_clear() {
        let dir = tempfile::tempdir().unwrap();
        let c = Cache::new(dir.path().join("c"));
        let k = Cache::key("t", &json!({"a": 1}));
        assert_eq!(k.len(), 64);
        assert_ne!(k, Cache::key("u", &json!({"a": 1})));
        assert_eq!(c.get(&k).unwrap(), None);
        c.put(&k, &json!([1, 2])).unwrap();
        assert_eq!(c.get(&k).unwrap(), Some(json!([1, 2])));
        assert_eq!(c.stats().unwrap().entries, 1);
        assert_eq!(c.clear().unwrap(), 1);
        assert_eq!(c.stats().unwrap().entries, 0);
    }
}
