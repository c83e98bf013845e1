//! Content-addressed record cache: one file per key under the cache directory.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use sha2::{Digest, Sha256};
use ykh_core::ENGINE_VERSION;

use crate::record::Body;

const MAGIC: &str = "ykh-cache 1";

pub struct Cache {
    dir: PathBuf,
}

pub enum Lookup {
    Hit(Body),
    Miss,
    /// Unreadable or inconsistent record; the caller recomputes.
    Corrupt(String),
}

impl Cache {
    pub fn open(dir: &Path) -> Result<Cache> {
        fs::create_dir_all(dir).with_context(|| format!("cannot create cache directory {}", dir.display()))?;
        Ok(Cache { dir: dir.to_path_buf() })
    }

    pub fn path_for(&self, key: &str) -> PathBuf {
        let digest = Sha256::digest(key.as_bytes());
        self.dir.join(format!("{}.rec", hex::encode(digest.as_slice())))
    }

    pub fn get(&self, key: &str) -> Lookup {
        let path = self.path_for(key);
        let text = match fs::read(&path) {
            Ok(bytes) => match String::from_utf8(bytes) {
                Ok(t) => t,
                Err(_) => return Lookup::Corrupt("not UTF-8".into()),
            },
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Lookup::Miss,
            Err(e) => return Lookup::Corrupt(e.to_string()),
        };
        let mut lines = text.lines();
        if lines.next() != Some(MAGIC) {
            return Lookup::Corrupt("bad header".into());
        }
        let field = |line: Option<&str>, name: &str| line.and_then(|l| l.strip_prefix(name)).map(str::to_string);
        let (Some(engine), Some(stored_key), Some(record)) =
            (field(lines.next(), "engine: "), field(lines.next(), "key: "), field(lines.next(), "record: "))
        else {
            return Lookup::Corrupt("truncated record".into());
        };
        if engine != ENGINE_VERSION {
            return Lookup::Miss;
        }
        if stored_key != key {
            return Lookup::Corrupt("key mismatch".into());
        }
        match serde_json::from_str(&record) {
            Ok(body) => Lookup::Hit(body),
            Err(e) => Lookup::Corrupt(e.to_string()),
        }
    }

    /// Writes to a temporary file in the same directory, then renames.
    pub fn put(&self, key: &str, body: &Body) -> Result<()> {
        let path = self.path_for(key);
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        writeln!(tmp, "{MAGIC}")?;
        writeln!(tmp, "engine: {ENGINE_VERSION}")?;
        writeln!(tmp, "key: {key}")?;
        writeln!(tmp, "record: {}", serde_json::to_string(body)?)?;
        tmp.as_file().sync_all()?;
        tmp.persist(&path).with_context(|| format!("cannot write {}", path.display()))?;
        Ok(())
    }
}
