//! Disk cache for CLI invocations: key = sha256 of the normalized
//! command line plus the input file bytes, value = the machine output
//! and exit code. Replaying a hit reproduces the original run
//! byte-for-byte, so the cache can never change results, only runtime.

use crate::Result;
use sha2::{Digest, Sha256};
use std::fs;
use std::path::{Path, PathBuf};

pub const DEFAULT_DIR: &str = ".homalg-cache";
pub const ENV_VAR: &str = "HOMALG_CACHE";

pub struct Cache {
    dir: PathBuf,
}

pub struct CachedRun {
    pub stdout: String,
    pub exit_code: i32,
}

impl Cache {
    /// Resolution order: explicit flag, then $HOMALG_CACHE, then the
    /// local default directory.
    pub fn resolve(flag: Option<&Path>) -> Cache {
        let dir = flag
            .map(|p| p.to_path_buf())
            .or_else(|| std::env::var_os(ENV_VAR).map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from(DEFAULT_DIR));
        Cache { dir }
    }

    pub fn key(invocation: &str, input: &[u8]) -> String {
        let mut h = Sha256::new();
        h.update(invocation.as_bytes());
        h.update([0u8]);
        h.update(input);
        let out = h.finalize();
        out.iter().map(|b| format!("{b:02x}")).collect()
    }

    fn path_for(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.out"))
    }

    pub fn get(&self, key: &str) -> Option<CachedRun> {
        let text = fs::read_to_string(self.path_for(key)).ok()?;
        let (first, rest) = text.split_once('\n')?;
        let exit_code: i32 = first.strip_prefix("exit ")?.parse().ok()?;
        Some(CachedRun {
            stdout: rest.to_string(),
            exit_code,
        })
    }

    pub fn put(&self, key: &str, run: &CachedRun) -> Result<()> {
        fs::create_dir_all(&self.dir)?;
        let body = format!("exit {}\n{}", run.exit_code, run.stdout);
        // write-then-rename so concurrent readers never see torn files
        let tmp = self.dir.join(format!("{key}.tmp{}", std::process::id()));
        fs::write(&tmp, body)?;
        fs::rename(&tmp, self.path_for(key))?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn key_is_sensitive_to_both_components() {
        let k1 = Cache::key("gldim --bound 20", b"input");
        let k2 = Cache::key("gldim --bound 21", b"input");
        let k3 = Cache::key("gldim --bound 20", b"other");
        assert_ne!(k1, k2);
        assert_ne!(k1, k3);
        assert_eq!(k1, Cache::key("gldim --bound 20", b"input"));
    }

    #[test]
    fn round_trip_through_disk() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::resolve(Some(dir.path()));
        let key = Cache::key("cmd", b"data");
        assert!(cache.get(&key).is_none());
        cache
            .put(
                &key,
                &CachedRun {
                    stdout: "line1\nline2\n".into(),
                    exit_code: 2,
                },
            )
            .unwrap();
        let hit = cache.get(&key).unwrap();
        assert_eq!(hit.stdout, "line1\nline2\n");
        assert_eq!(hit.exit_code, 2);
    }
}
