//! On-disk cache of reduced bases, one JSON file per `(m, algebra)`.
//!
//! Every file records the code version it was written with; a file from a
//! different version, or one that fails to parse or validate, loads as
//! `None` and is recomputed by the caller.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{io_err, Result};
use crate::linalg::{format_rational, parse_rational, SpanBasis, SparseVec};

/// Bumped whenever the basis layout or ordering changes.
pub const CACHE_VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "+1");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AlgebraKind {
    Centralizer,
    Terwilliger,
}

impl fmt::Display for AlgebraKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AlgebraKind::Centralizer => "centralizer",
            AlgebraKind::Terwilliger => "terwilliger",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CacheKey {
    pub m: usize,
    pub kind: AlgebraKind,
    pub version: String,
}

impl CacheKey {
    pub fn new(m: usize, kind: AlgebraKind) -> Self {
        Self {
            m,
            kind,
            version: CACHE_VERSION.to_string(),
        }
    }

    fn file_name(&self) -> String {
        format!("m{}_{}.json", self.m, self.kind)
    }
}

/// A stored basis plus the number of closure rounds that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CachedBasis {
    pub basis: SpanBasis,
    pub iterations: Option<usize>,
}

#[derive(Serialize, Deserialize)]
struct Envelope {
    key: CacheKey,
    nrows: usize,
    ncols: usize,
    iterations: Option<usize>,
    rows: Vec<Vec<(usize, String)>>,
}

#[derive(Clone, Debug)]
pub struct BasisCache {
    dir: PathBuf,
}

impl BasisCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, key: &CacheKey) -> PathBuf {
        self.dir.join(key.file_name())
    }

    pub fn cache_basis(
        &self,
        key: &CacheKey,
        basis: &SpanBasis,
        iterations: Option<usize>,
    ) -> Result<PathBuf> {
        fs::create_dir_all(&self.dir).map_err(io_err(&self.dir))?;
        let (nrows, ncols) = basis.shape();
        let envelope = Envelope {
            key: key.clone(),
            nrows,
            ncols,
            iterations,
            rows: basis
                .rows()
                .iter()
                .map(|r| {
                    r.entries()
                        .iter()
                        .map(|(c, v)| (*c, format_rational(v)))
                        .collect()
                })
                .collect(),
        };
        let path = self.path_for(key);
        fs::write(&path, serde_json::to_vec(&envelope)?).map_err(io_err(&path))?;
        Ok(path)
    }

    pub fn load_basis(&self, key: &CacheKey) -> Option<CachedBasis> {
        let path = self.path_for(key);
        let bytes = fs::read(&path).ok()?;
        let envelope: Envelope = match serde_json::from_slice(&bytes) {
            Ok(e) => e,
            Err(e) => {
                log::warn!("ignoring corrupt cache file {}: {e}", path.display());
                return None;
            }
        };
        if envelope.key != *key {
            log::info!("cache file {} is stale", path.display());
            return None;
        }
        let basis = decode(&envelope);
        if basis.is_none() {
            log::warn!("ignoring invalid basis in cache file {}", path.display());
        }
        basis.map(|basis| CachedBasis {
            basis,
            iterations: envelope.iterations,
        })
    }
}

fn decode(envelope: &Envelope) -> Option<SpanBasis> {
    let dim = envelope.nrows.checked_mul(envelope.ncols)?;
    let mut rows = Vec::with_capacity(envelope.rows.len());
    for row in &envelope.rows {
        let mut entries = Vec::with_capacity(row.len());
        for (c, v) in row {
            if *c >= dim {
                return None;
            }
            entries.push((*c, parse_rational(v)?));
        }
        rows.push(SparseVec::from_entries(dim, entries));
    }
    SpanBasis::from_rows_checked(envelope.nrows, envelope.ncols, rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{span, SparseExactMatrix};

    fn sample() -> SpanBasis {
        let a = SparseExactMatrix::indicator(2, 2, [(0, 1), (1, 0)]).unwrap();
        span(&[a, SparseExactMatrix::identity(2)]).unwrap()
    }

    #[test]
    fn round_trip_and_invalidation() {
        let dir = tempfile::tempdir().unwrap();
        let cache = BasisCache::new(dir.path());
        let key = CacheKey::new(2, AlgebraKind::Terwilliger);
        assert!(cache.load_basis(&key).is_none());

        let b = sample();
        cache.cache_basis(&key, &b, Some(3)).unwrap();
        let loaded = cache.load_basis(&key).unwrap();
        assert_eq!(loaded.basis, b);
        assert_eq!(loaded.iterations, Some(3));

        let stale = CacheKey {
            version: "0.0.0".into(),
            ..key.clone()
        };
        assert!(cache.load_basis(&stale).is_none());
        assert!(cache
            .load_basis(&CacheKey::new(2, AlgebraKind::Centralizer))
            .is_none());
    }

    #[test]
    fn corrupt_files_load_as_none() {
        let dir = tempfile::tempdir().unwrap();
        let cache = BasisCache::new(dir.path());
        let key = CacheKey::new(1, AlgebraKind::Centralizer);
        fs::write(cache.path_for(&key), b"{not json").unwrap();
        assert!(cache.load_basis(&key).is_none());

        // Well-formed JSON whose rows are not in echelon form.
        cache.cache_basis(&key, &sample(), None).unwrap();
        let text = fs::read_to_string(cache.path_for(&key)).unwrap();
        let text = text.replacen("[[[0,\"1\"]", "[[[3,\"1\"]", 1);
        fs::write(cache.path_for(&key), text).unwrap();
        assert!(cache.load_basis(&key).is_none());
    }
}
