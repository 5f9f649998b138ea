//! Content-addressed report cache. Keyed by a stable hash of the input
//! documents plus the operation name and its parameters; enabled only when
//! the DPD_CACHE directory is set and --cache is on. Writes go through a
//! temporary file and an atomic rename, and a hit returns the stored payload
//! byte for byte.

use std::fs;
use std::path::PathBuf;

fn fnv_pair(data: &[u8]) -> (u64, u64) {
    let mut a = 0xcbf29ce484222325u64;
    let mut b = 0x84222325cbf29ce4u64;
    for &x in data {
        a = (a ^ u64::from(x)).wrapping_mul(0x100000001b3);
        b = (b ^ u64::from(x)).wrapping_mul(0x100000001b3).rotate_left(17);
    }
    (a, b)
}

pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    pub fn new(enabled: bool) -> Cache {
        let dir = if enabled {
            std::env::var_os("DPD_CACHE").map(PathBuf::from)
        } else {
            None
        };
        Cache { dir }
    }

    pub fn key(parts: &[&str]) -> String {
        let joined = parts.join("\u{1f}");
        let (a, b) = fnv_pair(joined.as_bytes());
        format!("{a:016x}{b:016x}")
    }

    pub fn get(&self, key: &str) -> Option<String> {
        let dir = self.dir.as_ref()?;
        fs::read_to_string(dir.join(key)).ok()
    }

    pub fn put(&self, key: &str, payload: &str) {
        let Some(dir) = self.dir.as_ref() else { return };
        if fs::create_dir_all(dir).is_err() {
            return;
        }
        let tmp = dir.join(format!("{key}.tmp.{}", std::process::id()));
        if fs::write(&tmp, payload).is_ok() {
            let _ = fs::rename(&tmp, dir.join(key));
        }
    }
}
