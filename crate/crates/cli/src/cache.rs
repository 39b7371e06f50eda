//! Per-level results on disk, one append-only JSON-lines file per rule digest.

use std::collections::BTreeMap;
use std::fs::{self, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};

use cacc::complexity::center_profiles;
use cacc::detectors::{sensibility_level, SensibilityLevel};
use cacc::evolve::{for_each_level, IteratedTable, TabulateOptions};
use cacc::matrices::RowColProfile;
use cacc::RuleTable;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// What one level contributes to a record.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub n: u32,
    /// `[distinct rows, distinct cols]` of `M_c^n`, per centre `c`.
    pub counts: Vec<[usize; 2]>,
    /// Essential positions of `f^n`, 1-based.
    pub essential: Vec<usize>,
    /// Value of `f^n` when it is constant.
    pub constant: Option<u8>,
}

impl CacheEntry {
    pub fn compute(table: &IteratedTable, opts: &TabulateOptions) -> cacc::Result<Self> {
        let profiles = center_profiles(table, opts.exec)?;
        Ok(CacheEntry {
            n: table.n(),
            counts: profiles
                .iter()
                .map(|p| [p.distinct_rows, p.distinct_cols])
                .collect(),
            essential: sensibility_level(table, opts.exec).essential,
            constant: table.constant_value(),
        })
    }

    pub fn profiles(&self) -> Vec<RowColProfile> {
        self.counts
            .iter()
            .map(|&[distinct_rows, distinct_cols]| RowColProfile {
                distinct_rows,
                distinct_cols,
            })
            .collect()
    }

    pub fn sensibility(&self, radius: u32) -> SensibilityLevel {
        SensibilityLevel::from_essential(self.n, radius, self.essential.clone())
    }
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn file(&self, digest: &str) -> PathBuf {
        self.dir.join(format!("{digest}.jsonl"))
    }

    /// Entries on disk, keyed by `n`. Unreadable lines are skipped and
    /// recomputed.
    pub fn load(&self, digest: &str) -> BTreeMap<u32, CacheEntry> {
        let Ok(text) = fs::read_to_string(self.file(digest)) else {
            return BTreeMap::new();
        };
        text.lines()
            .filter_map(|l| serde_json::from_str::<CacheEntry>(l).ok())
            .map(|e| (e.n, e))
            .collect()
    }

    pub fn append(&self, digest: &str, entries: &[CacheEntry]) -> Result<(), CliError> {
        if entries.is_empty() {
            return Ok(());
        }
        fs::create_dir_all(&self.dir)?;
        let mut f = OpenOptions::new()
            .create(true)
            .append(true)
            .open(self.file(digest))?;
        let mut buf = String::new();
        for e in entries {
            buf.push_str(&serde_json::to_string(e).expect("entry serializes"));
            buf.push('\n');
        }
        f.write_all(buf.as_bytes())?;
        Ok(())
    }
}

/// Levels `1..=n_max`, from the cache where possible. With `verify`, every
/// level is recomputed and compared against what the cache holds.
pub fn levels(
    rule: &RuleTable,
    n_max: u32,
    cache: Option<&Cache>,
    verify: bool,
    opts: &TabulateOptions,
) -> Result<Vec<CacheEntry>, CliError> {
    let digest = rule.digest();
    let mut known = cache.map(|c| c.load(&digest)).unwrap_or_default();
    let complete = (1..=n_max).all(|n| known.contains_key(&n));
    if complete && !verify {
        return Ok((1..=n_max)
            .map(|n| known.remove(&n).expect("present"))
            .collect());
    }
    let mut fresh = Vec::new();
    let mut out = Vec::with_capacity(n_max as usize);
    let mut mismatch = None;
    for_each_level(rule, n_max, opts, |t| {
        let n = t.n();
        match known.remove(&n) {
            Some(cached) if !verify => out.push(cached),
            cached => {
                let entry = CacheEntry::compute(t, opts)?;
                if let Some(c) = cached {
                    if c != entry && mismatch.is_none() {
                        mismatch = Some(n);
                    }
                } else {
                    fresh.push(entry.clone());
                }
                out.push(entry);
            }
        }
        Ok(())
    })?;
    if let Some(c) = cache {
        c.append(&digest, &fresh)?;
    }
    if let Some(n) = mismatch {
        return Err(CliError::Check(format!(
            "cached level n = {n} of rule {digest} differs from recomputation"
        )));
    }
    Ok(out)
}
