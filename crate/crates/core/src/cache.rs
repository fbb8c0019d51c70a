//! Content-addressed cache for computed reports and resolution bundles.
//!
//! Keys are SHA-256 hashes of the canonical JSON of (inputs, operation,
//! parameters, engine version); values are JSON documents stored one file
//! per key. A hit must be byte-identical to a fresh computation, which the
//! deterministic pipeline guarantees; corrupt entries are recomputed and
//! overwritten with a warning.

use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use std::path::PathBuf;

use crate::error::Error;

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");
pub const CACHE_DIR_ENV: &str = "AUGCOH_CACHE_DIR";

pub struct Cache {
    dir: Option<PathBuf>,
}

pub struct CacheOutcome {
    pub value: Value,
    pub hit: bool,
}

impl Cache {
    /// Directory from AUGCOH_CACHE_DIR, defaulting to `.augcoh-cache`.
    pub fn from_env() -> Cache {
        let dir = std::env::var_os(CACHE_DIR_ENV)
            .map(PathBuf::from)
            .unwrap_or_else(|| PathBuf::from(".augcoh-cache"));
        Cache { dir: Some(dir) }
    }

    pub fn at(dir: PathBuf) -> Cache {
        Cache { dir: Some(dir) }
    }

    pub fn disabled() -> Cache {
        Cache { dir: None }
    }

    pub fn is_enabled(&self) -> bool {
        self.dir.is_some()
    }

    /// Content hash of the key material plus the engine version.
    pub fn key(material: &Value) -> String {
        let tagged = json!({ "engine": ENGINE_VERSION, "material": material });
        let canonical = serde_json::to_string(&tagged).expect("serializable key");
        let mut hasher = Sha256::new();
        hasher.update(canonical.as_bytes());
        let digest = hasher.finalize();
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }

    /// Fetch a cached value if present and well-formed.
    pub fn lookup(&self, material: &Value) -> Option<Value> {
        let dir = self.dir.as_ref()?;
        let key = Cache::key(material);
        let path = dir.join(format!("{key}.json"));
        let bytes = std::fs::read(&path).ok()?;
        match serde_json::from_slice::<Value>(&bytes) {
            Ok(v) => Some(v),
            Err(_) => {
                eprintln!("warning: corrupt cache entry {}; recomputing", path.display());
                None
            }
        }
    }

    /// Store a computed value (atomic rename).
    pub fn store(&self, material: &Value, value: &Value) -> Result<(), Error> {
        let Some(dir) = &self.dir else { return Ok(()) };
        let key = Cache::key(material);
        std::fs::create_dir_all(dir)?;
        let tmp = dir.join(format!("{key}.json.tmp"));
        std::fs::write(&tmp, serde_json::to_vec(value).expect("serializable value"))?;
        std::fs::rename(&tmp, dir.join(format!("{key}.json")))?;
        Ok(())
    }

    pub fn get_or_compute(
        &self,
        material: &Value,
        producer: impl FnOnce() -> Result<Value, Error>,
    ) -> Result<CacheOutcome, Error> {
        let Some(dir) = &self.dir else {
            return Ok(CacheOutcome { value: producer()?, hit: false });
        };
        let key = Cache::key(material);
        let path = dir.join(format!("{key}.json"));
        if let Ok(bytes) = std::fs::read(&path) {
            match serde_json::from_slice::<Value>(&bytes) {
                Ok(v) => return Ok(CacheOutcome { value: v, hit: true }),
                Err(_) => {
                    eprintln!("warning: corrupt cache entry {}; recomputing", path.display());
                }
            }
        }
        let value = producer()?;
        std::fs::create_dir_all(dir)?;
        let tmp = dir.join(format!("{key}.json.tmp"));
        std::fs::write(&tmp, serde_json::to_vec(&value).expect("serializable value"))?;
        std::fs::rename(&tmp, &path)?;
        Ok(CacheOutcome { value, hit: false })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn temp_cache(tag: &str) -> (Cache, PathBuf) {
        let dir = std::env::temp_dir().join(format!("augcoh-cache-test-{tag}-{}", std::process::id()));
        let _ = std::fs::remove_dir_all(&dir);
        (Cache::at(dir.clone()), dir)
    }

    #[test]
    fn second_lookup_hits_and_is_identical() {
        let (cache, dir) = temp_cache("hit");
        let material = json!({ "op": "demo", "nmax": 3 });
        let first = cache.get_or_compute(&material, || Ok(json!({ "dims": [1, 2, 4] }))).unwrap();
        assert!(!first.hit);
        let second = cache
            .get_or_compute(&material, || panic!("must not recompute on a hit"))
            .unwrap();
        assert!(second.hit);
        assert_eq!(first.value, second.value);
        let _ = std::fs::remove_dir_all(dir);
    }

    #[test]
    fn parameters_change_the_key() {
        let k1 = Cache::key(&json!({ "op": "ext", "nmax": 3 }));
        let k2 = Cache::key(&json!({ "op": "ext", "nmax": 4 }));
        assert_ne!(k1, k2);
    }

    #[test]
    fn corrupt_entries_are_recomputed() {
        let (cache, dir) = temp_cache("corrupt");
        let material = json!({ "op": "demo" });
        let key = Cache::key(&material);
        std::fs::create_dir_all(&dir).unwrap();
        std::fs::write(dir.join(format!("{key}.json")), b"{not json").unwrap();
        let out = cache.get_or_compute(&material, || Ok(json!(42))).unwrap();
        assert!(!out.hit);
        assert_eq!(out.value, json!(42));
        // and the corrupt entry was overwritten
        let again = cache.get_or_compute(&material, || panic!()).unwrap();
        assert!(again.hit);
        let _ = std::fs::remove_dir_all(dir);
    }

    #[test]
    fn disabled_cache_always_computes() {
        let cache = Cache::disabled();
        let out = cache.get_or_compute(&json!(1), || Ok(json!(2))).unwrap();
        assert!(!out.hit);
    }
}
