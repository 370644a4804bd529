//! On-disk cache of rendered command output, keyed by a SHA-256 digest.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::SCHEMA;

pub const CACHE_ENV: &str = "HSFORMAL_CACHE_DIR";

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    /// The explicit directory, else `$HSFORMAL_CACHE_DIR`, else
    /// `$XDG_CACHE_HOME/hsformal` or `~/.cache/hsformal`.
    pub fn locate(explicit: Option<&Path>) -> Option<Cache> {
        let dir = explicit
            .map(Path::to_path_buf)
            .or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from))
            .or_else(|| std::env::var_os("XDG_CACHE_HOME").map(|d| PathBuf::from(d).join("hsformal")))
            .or_else(|| std::env::var_os("HOME").map(|d| PathBuf::from(d).join(".cache").join("hsformal")))?;
        Some(Cache { dir })
    }

    pub fn key(parts: &[&str]) -> String {
        let mut h = Sha256::new();
        h.update(format!("schema={SCHEMA}\n"));
        for p in parts {
            h.update(p.as_bytes());
            h.update(b"\n");
        }
        hex::encode(h.finalize())
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.out"))
    }

    pub fn get(&self, key: &str) -> Option<String> {
        fs::read_to_string(self.path(key)).ok()
    }

    /// Best effort: a cache that cannot be written is skipped.
    pub fn put(&self, key: &str, output: &str) {
        if fs::create_dir_all(&self.dir).is_err() {
            return;
        }
        let tmp = self.dir.join(format!("{key}.{}.tmp", std::process::id()));
        let written = fs::File::create(&tmp).and_then(|mut f| f.write_all(output.as_bytes()));
        if written.is_ok() {
            let _ = fs::rename(&tmp, self.path(key));
        } else {
            let _ = fs::remove_file(&tmp);
        }
    }
}
