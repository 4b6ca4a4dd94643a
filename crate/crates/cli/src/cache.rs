//! On-disk result cache keyed by a hash of the canonical job.
//!
//! The directory is `$TROPVERTEX_CACHE_DIR` if set, otherwise
//! `$XDG_CACHE_HOME/tropvertex`, otherwise `$HOME/.cache/tropvertex`.

use std::fs;
use std::path::PathBuf;

use sha2::{Digest, Sha256};

use crate::JobSpec;

pub const CACHE_DIR_ENV: &str = "TROPVERTEX_CACHE_DIR";

/// SHA-256 of the library version and the canonical command, in hex.
pub fn cache_key(spec: &JobSpec) -> String {
    let mut h = Sha256::new();
    h.update(tropvertex::VERSION.as_bytes());
    h.update([0]);
    h.update(spec.canonical().as_bytes());
    hex::encode(h.finalize())
}

pub fn cache_dir() -> Option<PathBuf> {
    let non_empty = |k: &str| std::env::var_os(k).filter(|v| !v.is_empty()).map(PathBuf::from);
    non_empty(CACHE_DIR_ENV)
        .or_else(|| non_empty("XDG_CACHE_HOME").map(|d| d.join("tropvertex")))
        .or_else(|| non_empty("HOME").map(|d| d.join(".cache").join("tropvertex")))
}

fn entry(key: &str) -> Option<PathBuf> {
    cache_dir().map(|d| d.join(format!("{key}.json")))
}

pub fn load(key: &str) -> Option<String> {
    fs::read_to_string(entry(key)?).ok()
}

pub fn store(key: &str, text: &str) -> std::io::Result<()> {
    let Some(path) = entry(key) else {
        return Ok(());
    };
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    // write-then-rename so concurrent readers never see a partial file
    let tmp = path.with_extension(format!("json.{}.tmp", std::process::id()));
    fs::write(&tmp, text)?;
    fs::rename(tmp, path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{parse_problem, Command};

    fn count(seed: u64) -> JobSpec {
        let problem = parse_problem("{a:1,b:1,k:1,alpha:[1],alpha_prime:[1]}").unwrap();
        JobSpec::new(Command::Count { problem, seed, seeds: 5 })
    }

    #[test]
    fn keys() {
        assert_eq!(cache_key(&count(1)), cache_key(&count(1)));
        assert_ne!(cache_key(&count(1)), cache_key(&count(2)));
        assert_eq!(cache_key(&count(1)).len(), 64);
        // output location and caching flags do not change the result
        let mut other = count(1);
        other.output = Some("elsewhere.json".into());
        other.use_cache = false;
        assert_eq!(cache_key(&other), cache_key(&count(1)));
    }
}
