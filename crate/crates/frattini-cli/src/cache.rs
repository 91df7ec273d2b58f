//! Persistent structure-constant cache: one versioned JSON file per
//! (p, d, n) holding the Lie-power bases and bracket tables. Loading
//! validates every dimension against the Witt formula (through
//! `LiePowers::from_parts`); any mismatch or parse failure discards the
//! cache and rebuilds.

use std::fs;
use std::path::{Path, PathBuf};

use frattini_core::lie::{BracketTable, LiePowers};
use frattini_core::matrix::FpMatrix;
use frattini_core::pipeline::PowersSource;
use frattini_core::{PrimeField, Result};
use serde::{Deserialize, Serialize};

pub const CACHE_FORMAT_VERSION: u32 = 1;

/// Environment variable overriding the cache directory.
pub const CACHE_DIR_ENV: &str = "FRATTINI_CACHE_DIR";

/// Default cache location, relative to the working directory.
pub const DEFAULT_CACHE_DIR: &str = ".cache/frattini";

#[derive(Serialize, Deserialize)]
struct TableFile {
    i: usize,
    j: usize,
    rows: Vec<Vec<u64>>,
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    format_version: u32,
    p: u64,
    d: usize,
    n: usize,
    bases: Vec<Vec<Vec<u64>>>,
    tables: Vec<TableFile>,
}

/// Resolve the cache directory: explicit flag, then the environment
/// variable, then the default.
pub fn resolve_dir(flag: Option<&Path>) -> PathBuf {
    if let Some(p) = flag {
        return p.to_path_buf();
    }
    if let Ok(env) = std::env::var(CACHE_DIR_ENV) {
        if !env.is_empty() {
            return PathBuf::from(env);
        }
    }
    PathBuf::from(DEFAULT_CACHE_DIR)
}

fn cache_path(dir: &Path, p: u64, d: usize, n: usize) -> PathBuf {
    dir.join(format!("sc-v{CACHE_FORMAT_VERSION}-p{p}-d{d}-n{n}.json"))
}

fn try_load(path: &Path, field: PrimeField, d: usize, n: usize) -> Option<LiePowers> {
    let text = fs::read_to_string(path).ok()?;
    let file: CacheFile = serde_json::from_str(&text).ok()?;
    if file.format_version != CACHE_FORMAT_VERSION
        || file.p != field.p()
        || file.d != d
        || file.n != n
    {
        return None;
    }
    let bases = file
        .bases
        .iter()
        .map(|rows| FpMatrix::from_rows(field, rows))
        .collect::<Result<Vec<_>>>()
        .ok()?;
    let tables = file
        .tables
        .iter()
        .map(|t| {
            FpMatrix::from_rows(field, &t.rows).map(|rows| BracketTable { i: t.i, j: t.j, rows })
        })
        .collect::<Result<Vec<_>>>()
        .ok()?;
    LiePowers::from_parts(field, d, n, bases, tables).ok()
}

fn save(path: &Path, powers: &LiePowers) {
    let d = powers.d();
    let n = powers.max_degree();
    let file = CacheFile {
        format_version: CACHE_FORMAT_VERSION,
        p: powers.field().p(),
        d,
        n,
        bases: (1..=n)
            .map(|k| {
                let b = powers.space(k).basis();
                (0..b.rows()).map(|i| b.row(i).to_vec()).collect()
            })
            .collect(),
        tables: powers
            .tables()
            .iter()
            .map(|t| TableFile {
                i: t.i,
                j: t.j,
                rows: (0..t.rows.rows()).map(|r| t.rows.row(r).to_vec()).collect(),
            })
            .collect(),
    };
    if let Some(parent) = path.parent() {
        let _ = fs::create_dir_all(parent);
    }
    match serde_json::to_string(&file) {
        Ok(text) => {
            if let Err(e) = fs::write(path, text) {
                eprintln!("warning: could not write cache {}: {e}", path.display());
            }
        }
        Err(e) => eprintln!("warning: could not serialise cache: {e}"),
    }
}

/// Load the (p, d, n) tower from the cache or build and store it.
pub fn load_or_build(dir: &Path, field: PrimeField, d: usize, n: usize) -> Result<LiePowers> {
    let path = cache_path(dir, field.p(), d, n);
    if let Some(powers) = try_load(&path, field, d, n) {
        return Ok(powers);
    }
    let powers = LiePowers::build(field, d, n)?;
    save(&path, &powers);
    Ok(powers)
}

/// A [`PowersSource`] backed by the cache directory.
pub struct CachedPowers {
    pub dir: PathBuf,
}

impl PowersSource for CachedPowers {
    fn powers(&mut self, field: PrimeField, d: usize, n: usize) -> Result<LiePowers> {
        load_or_build(&self.dir, field, d, n)
    }
}
