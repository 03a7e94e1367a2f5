//! Content-addressed disk cache for reduced Gröbner bases.
//!
//! Each entry lives in `<dir>/<sha256>.txt` where the hash covers the
//! generators, order, field and engine version. The file holds a header line,
//! the generators and the basis, all in the canonical polynomial text form.
//! Writes go to a temporary file that is renamed into place.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use super::{EngineStats, GroebnerBasis, Ideal, ENGINE_VERSION};
use crate::error::{AlgebraError, Result};
use crate::polyring::{CoefficientField, MonomialOrder, Polynomial};

const MAGIC: &str = "# hankel-gb";

#[derive(Debug)]
pub struct GbCache {
    dir: PathBuf,
    write_lock: Mutex<()>,
    hits: AtomicUsize,
    misses: AtomicUsize,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct CacheStats {
    pub entries: usize,
    pub bytes: u64,
    pub hits: usize,
    pub misses: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct CacheVerifyReport {
    pub checked: Vec<String>,
    pub evicted: Vec<String>,
}

fn parse_order(s: &str) -> Option<MonomialOrder> {
    if let Some(k) = s.strip_prefix("block(").and_then(|r| r.strip_suffix(')')) {
        return k.parse().ok().map(|elim_count| MonomialOrder::Block { elim_count });
    }
    MonomialOrder::parse(s)
}

struct Entry {
    field: CoefficientField,
    nvars: usize,
    order: MonomialOrder,
    generators: Vec<Polynomial>,
    basis: Vec<Polynomial>,
}

fn parse_entry(text: &str) -> Result<Entry> {
    let bad = |why: &str| AlgebraError::Cache(why.to_string());
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| bad("empty file"))?;
    let rest = header.strip_prefix(MAGIC).ok_or_else(|| bad("missing header"))?;
    let mut version = None;
    let mut order = None;
    let mut field = None;
    let mut nvars = None;
    let mut ngens = None;
    let mut nbasis = None;
    for kv in rest.split_whitespace() {
        let (k, v) = kv.split_once('=').ok_or_else(|| bad("malformed header"))?;
        match k {
            "version" => version = Some(v.to_string()),
            "order" => order = parse_order(v),
            "field" => field = CoefficientField::parse(v).ok(),
            "nvars" => nvars = v.parse::<usize>().ok(),
            "generators" => ngens = v.parse::<usize>().ok(),
            "basis" => nbasis = v.parse::<usize>().ok(),
            _ => return Err(bad("unknown header key")),
        }
    }
    if version.as_deref() != Some(ENGINE_VERSION) {
        return Err(bad("engine version mismatch"));
    }
    let (order, field, nvars, ngens, nbasis) = match (order, field, nvars, ngens, nbasis) {
        (Some(a), Some(b), Some(c), Some(d), Some(e)) => (a, b, c, d, e),
        _ => return Err(bad("incomplete header")),
    };
    let body: Vec<&str> = lines.collect();
    if body.len() != ngens + nbasis {
        return Err(bad("line count does not match header"));
    }
    let parse_all = |ls: &[&str]| -> Result<Vec<Polynomial>> {
        ls.iter().map(|l| Polynomial::parse(l, field, nvars)).collect()
    };
    Ok(Entry {
        field,
        nvars,
        order,
        generators: parse_all(&body[..ngens])?,
        basis: parse_all(&body[ngens..])?,
    })
}

impl GbCache {
    pub fn open(dir: impl AsRef<Path>) -> Result<Self> {
        let dir = dir.as_ref().to_path_buf();
        fs::create_dir_all(&dir).map_err(|e| AlgebraError::Cache(format!("{}: {e}", dir.display())))?;
        Ok(GbCache {
            dir,
            write_lock: Mutex::new(()),
            hits: AtomicUsize::new(0),
            misses: AtomicUsize::new(0),
        })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    /// SHA-256 over the canonical generators, order, field and engine version.
    pub fn key(ideal: &Ideal, order: MonomialOrder) -> String {
        let mut h = Sha256::new();
        h.update(format!(
            "engine={ENGINE_VERSION}\norder={order}\nfield={}\nnvars={}\n",
            ideal.field(),
            ideal.nvars()
        ));
        h.update(ideal.to_text());
        hex::encode(h.finalize())
    }

    fn path_for(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.txt"))
    }

    pub fn hits(&self) -> usize {
        self.hits.load(Ordering::Relaxed)
    }

    pub fn misses(&self) -> usize {
        self.misses.load(Ordering::Relaxed)
    }

    fn evict(&self, path: &Path, why: &str) {
        log::warn!("evicting cache entry {}: {why}", path.display());
        let _guard = self.write_lock.lock().unwrap_or_else(|e| e.into_inner());
        let _ = fs::remove_file(path);
    }

    /// Looks up a basis. Unreadable or inconsistent entries are evicted.
    pub fn load(&self, ideal: &Ideal, order: MonomialOrder) -> Option<GroebnerBasis> {
        let path = self.path_for(&GbCache::key(ideal, order));
        let Ok(text) = fs::read_to_string(&path) else {
            self.misses.fetch_add(1, Ordering::Relaxed);
            return None;
        };
        let entry = match parse_entry(&text) {
            Ok(e) => e,
            Err(e) => {
                self.evict(&path, &e.to_string());
                self.misses.fetch_add(1, Ordering::Relaxed);
                return None;
            }
        };
        if entry.field != ideal.field()
            || entry.nvars != ideal.nvars()
            || entry.order != order
            || entry.generators != ideal.generators()
        {
            self.evict(&path, "entry does not match its key");
            self.misses.fetch_add(1, Ordering::Relaxed);
            return None;
        }
        let gb = GroebnerBasis::from_monic(entry.field, entry.nvars, order, entry.basis, EngineStats::default(), true);
        // cheap consistency check: the generators must reduce to zero
        if !ideal.generators().iter().all(|g| gb.contains(g)) {
            self.evict(&path, "generators do not reduce to zero");
            self.misses.fetch_add(1, Ordering::Relaxed);
            return None;
        }
        self.hits.fetch_add(1, Ordering::Relaxed);
        Some(gb)
    }

    pub fn store(&self, ideal: &Ideal, gb: &GroebnerBasis) -> Result<()> {
        let key = GbCache::key(ideal, gb.order());
        let mut text = format!(
            "{MAGIC} version={ENGINE_VERSION} order={} field={} nvars={} generators={} basis={}\n",
            gb.order(),
            ideal.field(),
            ideal.nvars(),
            ideal.generators().len(),
            gb.len()
        );
        for g in ideal.generators() {
            text.push_str(&g.to_text());
            text.push('\n');
        }
        for g in gb.basis() {
            text.push_str(&g.to_text());
            text.push('\n');
        }
        let io = |e: std::io::Error| AlgebraError::Cache(e.to_string());
        let _guard = self.write_lock.lock().unwrap_or_else(|e| e.into_inner());
        let final_path = self.path_for(&key);
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir).map_err(io)?;
        tmp.write_all(text.as_bytes()).map_err(io)?;
        tmp.as_file().sync_all().map_err(io)?;
        tmp.persist(&final_path).map_err(|e| io(e.error))?;
        Ok(())
    }

    fn entry_paths(&self) -> Vec<PathBuf> {
        let mut paths: Vec<PathBuf> = fs::read_dir(&self.dir)
            .map(|rd| {
                rd.filter_map(|e| e.ok().map(|e| e.path()))
                    .filter(|p| p.extension().is_some_and(|x| x == "txt"))
                    .collect()
            })
            .unwrap_or_default();
        paths.sort();
        paths
    }

    pub fn stats(&self) -> CacheStats {
        let paths = self.entry_paths();
        CacheStats {
            entries: paths.len(),
            bytes: paths.iter().filter_map(|p| fs::metadata(p).ok()).map(|m| m.len()).sum(),
            hits: self.hits(),
            misses: self.misses(),
        }
    }

    /// Removes all entries; returns how many were deleted.
    pub fn clear(&self) -> Result<usize> {
        let _guard = self.write_lock.lock().unwrap_or_else(|e| e.into_inner());
        let paths = self.entry_paths();
        for p in &paths {
            fs::remove_file(p).map_err(|e| AlgebraError::Cache(e.to_string()))?;
        }
        Ok(paths.len())
    }

    /// Picks up to `samples` entries at random and re-checks them: the
    /// S-polynomials of the basis and the stored generators must reduce to
    /// zero. Failing or unreadable entries are evicted.
    pub fn verify(&self, samples: usize, seed: u64) -> CacheVerifyReport {
        let mut paths = self.entry_paths();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        paths.shuffle(&mut rng);
        paths.truncate(samples);
        let mut report = CacheVerifyReport {
            checked: Vec::new(),
            evicted: Vec::new(),
        };
        for path in paths {
            let name = path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default();
            report.checked.push(name.clone());
            let ok = fs::read_to_string(&path)
                .map_err(|e| AlgebraError::Cache(e.to_string()))
                .and_then(|t| parse_entry(&t))
                .and_then(|e| {
                    let gb = GroebnerBasis::from_monic(e.field, e.nvars, e.order, e.basis, EngineStats::default(), true);
                    Ok(gb.verify()? && e.generators.iter().all(|g| gb.contains(g)))
                });
            match ok {
                Ok(true) => {}
                Ok(false) => {
                    self.evict(&path, "basis failed verification");
                    report.evicted.push(name);
                }
                Err(e) => {
                    self.evict(&path, &e.to_string());
                    report.evicted.push(name);
                }
            }
        }
        report.checked.sort();
        report.evicted.sort();
        report
    }
}
