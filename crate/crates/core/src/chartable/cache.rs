//! On-disk cache of computed character tables.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{CharTableError, CharacterTable};
use crate::cyclotomic::Cyclo;
use crate::perm::ClassData;

pub const CACHE_ENV: &str = "POLYREAL_CACHE";

#[derive(Serialize, Deserialize)]
pub(crate) struct CacheEntry {
    pub group_hash: String,
    pub prime: u64,
    pub exponent: u64,
    pub irreducibles: Vec<Vec<Cyclo>>,
}

#[derive(Debug, Clone)]
pub struct TableCache {
    dir: PathBuf,
}

/// Hash of the element list (in index order) and the class partition, which
/// together determine the numbering of classes in a stored table.
pub fn group_hash(classes: &ClassData) -> String {
    let g = classes.group();
    let mut h = Sha256::new();
    h.update((g.degree() as u64).to_le_bytes());
    h.update((g.order() as u64).to_le_bytes());
    for x in 0..g.order() as u32 {
        for &i in g.images(x) {
            h.update(i.to_le_bytes());
        }
    }
    for c in 0..classes.len() {
        h.update((c as u64).to_le_bytes());
        for &x in classes.members(c) {
            h.update(x.to_le_bytes());
        }
    }
    hex::encode(h.finalize())
}

impl TableCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        TableCache { dir: dir.into() }
    }

    /// `$POLYREAL_CACHE`, or `./.polyreal-cache`.
    pub fn from_env() -> Self {
        let dir = std::env::var_os(CACHE_ENV)
            .map(PathBuf::from)
            .unwrap_or_else(|| PathBuf::from(".polyreal-cache"));
        TableCache { dir }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, hash: &str) -> PathBuf {
        self.dir.join(format!("{hash}.json"))
    }

    pub(crate) fn load(&self, hash: &str) -> Option<CacheEntry> {
        let text = fs::read_to_string(self.path(hash)).ok()?;
        let entry: CacheEntry = serde_json::from_str(&text).ok()?;
        (entry.group_hash == hash).then_some(entry)
    }

    /// Writes to a temporary file first and renames it into place, so readers
    /// never see a partial file.
    pub(crate) fn store(&self, hash: &str, table: &CharacterTable) -> Result<(), CharTableError> {
        let io = |e: std::io::Error| CharTableError::Cache(e.to_string());
        fs::create_dir_all(&self.dir).map_err(io)?;
        let entry = CacheEntry {
            group_hash: hash.to_string(),
            prime: table.prime(),
            exponent: table.exponent(),
            irreducibles: table.irreducibles().iter().map(|c| c.values.clone()).collect(),
        };
        let text = serde_json::to_string(&entry).map_err(|e| CharTableError::Cache(e.to_string()))?;
        let tmp = self
            .dir
            .join(format!(".{hash}.{}.tmp", std::process::id()));
        let mut f = fs::File::create(&tmp).map_err(io)?;
        f.write_all(text.as_bytes()).map_err(io)?;
        f.sync_all().map_err(io)?;
        fs::rename(&tmp, self.path(hash)).map_err(io)
    }
}
