//! Append-only coefficient cache: one file per (kind, m, k, N), guarded by a
//! lock file while it is read and rewritten.

use std::fs::{self, File, OpenOptions};
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use maass_core::poincare::CoefficientTable;
use maass_core::qseries::LaurentQSeries;

/// What happened to the cache file.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CacheOutcome {
    Created,
    Appended(usize),
    /// Same-or-better data was already there; nothing new to add.
    Unchanged,
    /// Stored data has higher precision; the new table was not written.
    RefusedLowerPrecision,
    /// Stored data used another cutoff at no higher precision and was replaced.
    Replaced,
}

pub struct Cache {
    dir: PathBuf,
}

struct Lock(File);

impl Drop for Lock {
    fn drop(&mut self) {
        let _ = self.0.unlock();
    }
}

impl Cache {
    pub fn new(dir: &Path) -> Cache {
        Cache { dir: dir.to_path_buf() }
    }

    pub fn path_for(&self, table: &CoefficientTable) -> PathBuf {
        self.dir.join(table.file_name())
    }

    fn lock(&self, path: &Path) -> Result<Lock> {
        fs::create_dir_all(&self.dir).with_context(|| format!("creating {}", self.dir.display()))?;
        let mut lock_path = path.as_os_str().to_owned();
        lock_path.push(".lock");
        let f = OpenOptions::new().create(true).truncate(false).write(true).open(&lock_path)?;
        f.lock()?;
        Ok(Lock(f))
    }

    /// Stored table for the same (kind, m, k, N), if any.
    pub fn load(&self, like: &CoefficientTable) -> Result<Option<CoefficientTable>> {
        let path = self.path_for(like);
        if !path.exists() {
            return Ok(None);
        }
        let _lock = self.lock(&path)?;
        read_table(&path).map(Some)
    }

    /// Merges `table` into the cache file.
    ///
    /// Entries computed at the stored cutoff and precision are appended. A
    /// table at lower precision never overwrites the stored one.
    pub fn store(&self, table: &CoefficientTable) -> Result<CacheOutcome> {
        let path = self.path_for(table);
        let _lock = self.lock(&path)?;
        if !path.exists() {
            write_atomic(&path, &table.serialize())?;
            return Ok(CacheOutcome::Created);
        }
        let mut old = read_table(&path)?;
        if table.bits < old.bits {
            return Ok(CacheOutcome::RefusedLowerPrecision);
        }
        if table.bits == old.bits && table.c_max == old.c_max {
            let mut added = 0;
            for (n, v) in &table.entries {
                if !old.entries.contains_key(n) {
                    old.entries.insert(*n, v.clone());
                    added += 1;
                }
            }
            if added == 0 {
                return Ok(CacheOutcome::Unchanged);
            }
            write_atomic(&path, &old.serialize())?;
            return Ok(CacheOutcome::Appended(added));
        }
        write_atomic(&path, &table.serialize())?;
        Ok(CacheOutcome::Replaced)
    }

    /// Cache files, sorted by name.
    pub fn list(&self) -> Result<Vec<PathBuf>> {
        if !self.dir.exists() {
            return Ok(Vec::new());
        }
        let mut out: Vec<PathBuf> = fs::read_dir(&self.dir)?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "txt"))
            .collect();
        out.sort();
        Ok(out)
    }
}

fn write_atomic(path: &Path, text: &str) -> Result<()> {
    let tmp = path.with_extension("txt.tmp");
    fs::write(&tmp, text).with_context(|| format!("writing {}", tmp.display()))?;
    fs::rename(&tmp, path)?;
    Ok(())
}

pub fn read_table(path: &Path) -> Result<CoefficientTable> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    CoefficientTable::parse(&text).with_context(|| format!("parsing {}", path.display()))
}

/// A parsed cache or series file.
pub enum Stored {
    Table(CoefficientTable),
    Series(LaurentQSeries),
}

impl Stored {
    pub fn serialize(&self) -> String {
        match self {
            Stored::Table(t) => t.serialize(),
            Stored::Series(s) => s.serialize(),
        }
    }
}

/// Reads either file format, deciding by the first word of the header.
pub fn read_any(path: &Path) -> Result<Stored> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let ctx = || format!("parsing {}", path.display());
    if text.starts_with("qseries") {
        Ok(Stored::Series(LaurentQSeries::parse(&text).with_context(ctx)?))
    } else {
        Ok(Stored::Table(CoefficientTable::parse(&text).with_context(ctx)?))
    }
}
