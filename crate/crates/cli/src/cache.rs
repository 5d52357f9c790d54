//! On-disk cache of computed tables, one JSON file per object at
//! `<dir>/<kind>-<source>-<size>.json`. Loaded files are re-validated before use.

use std::fs;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use hultman::genfunc::{verify_pg_properties, PgProvenance};
use hultman::numbers::PnSource;
use hultman::verify::{Compute, DataSource};
use hultman::{Error, HultmanTable, IntPolynomial, PgPolynomial, PnFamily, Result, TableSource};

use crate::output::SCHEMA_VERSION;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Table,
    Pn,
    Pg,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Table => "table",
            Kind::Pn => "pn",
            Kind::Pg => "pg",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum PgSource {
    Truncation,
    Ode,
}

impl PgSource {
    pub fn as_str(self) -> &'static str {
        match self {
            PgSource::Truncation => "truncation",
            PgSource::Ode => "ode",
        }
    }

    fn provenance(self) -> PgProvenance {
        match self {
            PgSource::Truncation => PgProvenance::SeriesTruncation,
            PgSource::Ode => PgProvenance::OdeStep,
        }
    }
}

/// One cacheable object: a kind, the route that produced it, and its size
/// (`n_max` for tables and `p_n`, `g_max` for `P_g`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Key {
    Table(TableSource, usize),
    Pn(PnSource, usize),
    Pg(PgSource, usize),
}

impl Key {
    pub fn kind(self) -> Kind {
        match self {
            Key::Table(..) => Kind::Table,
            Key::Pn(..) => Kind::Pn,
            Key::Pg(..) => Kind::Pg,
        }
    }

    pub fn source(self) -> &'static str {
        match self {
            Key::Table(s, _) => s.as_str(),
            Key::Pn(s, _) => s.as_str(),
            Key::Pg(s, _) => s.as_str(),
        }
    }

    pub fn size(self) -> usize {
        match self {
            Key::Table(_, n) | Key::Pn(_, n) | Key::Pg(_, n) => n,
        }
    }

    pub fn file_name(self) -> String {
        let size = match self {
            Key::Pg(..) => format!("g{}", self.size()),
            _ => format!("n{}", self.size()),
        };
        format!("{}-{}-{size}.json", self.kind().as_str(), self.source())
    }

    /// Builds a key from a kind and a source name, rejecting sources that do
    /// not belong to the kind.
    pub fn parse(kind: Kind, source: &str, size: usize) -> Result<Key> {
        let bad =
            || Error::InvalidInput(format!("{source:?} is not a source for {}", kind.as_str()));
        Ok(match kind {
            Kind::Table => Key::Table(
                [
                    TableSource::Brute,
                    TableSource::Stirling,
                    TableSource::Recursion,
                ]
                .into_iter()
                .find(|s| s.as_str() == source)
                .ok_or_else(bad)?,
                size,
            ),
            Kind::Pn => Key::Pn(
                [PnSource::Recursion, PnSource::Table, PnSource::Wick]
                    .into_iter()
                    .find(|s| s.as_str() == source)
                    .ok_or_else(bad)?,
                size,
            ),
            Kind::Pg => Key::Pg(
                [PgSource::Truncation, PgSource::Ode]
                    .into_iter()
                    .find(|s| s.as_str() == source)
                    .ok_or_else(bad)?,
                size,
            ),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Object {
    Table(HultmanTable),
    Pn(PnFamily),
    Pg(Vec<PgPolynomial>),
}

impl Object {
    fn rows(&self) -> Vec<Vec<String>> {
        let strings = |v: &[BigInt]| v.iter().map(ToString::to_string).collect();
        match self {
            Object::Table(t) => (0..=t.n_max()).map(|n| strings(&t.dense_row(n))).collect(),
            Object::Pn(f) => f.polys().iter().map(|p| strings(p.coeffs())).collect(),
            Object::Pg(v) => v.iter().map(|p| strings(p.poly.coeffs())).collect(),
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct CacheFile {
    schema_version: u32,
    kind: Kind,
    source: String,
    size: usize,
    /// Table rows `H(n, 1..=n+1)`, or polynomial coefficients in ascending order.
    data: Vec<Vec<String>>,
}

pub fn compute(key: Key, data: &mut dyn DataSource) -> Result<Object> {
    Ok(match key {
        Key::Table(s, n) => Object::Table(data.hultman_table(s, n)?),
        Key::Pn(s, n) => Object::Pn(data.pn_family(s, n)?),
        Key::Pg(PgSource::Truncation, g) => Object::Pg(data.pg_truncation(g)?),
        Key::Pg(PgSource::Ode, g) => Object::Pg(data.pg_ode(g)?),
    })
}

pub fn path_for(dir: &Path, key: Key) -> PathBuf {
    dir.join(key.file_name())
}

pub fn store(dir: &Path, key: Key, object: &Object) -> Result<PathBuf> {
    let path = path_for(dir, key);
    let file = CacheFile {
        schema_version: SCHEMA_VERSION,
        kind: key.kind(),
        source: key.source().to_string(),
        size: key.size(),
        data: object.rows(),
    };
    let io =
        |e: std::io::Error| Error::InvalidInput(format!("cannot write {}: {e}", path.display()));
    fs::create_dir_all(dir).map_err(io)?;
    let text = serde_json::to_string_pretty(&file).expect("cache files are plain JSON") + "\n";
    fs::write(&path, text).map_err(io)?;
    Ok(path)
}

/// Reads and validates a cached object. A missing file is `Ok(None)`; a file
/// that fails to parse or violates an invariant is an error naming it.
pub fn load(dir: &Path, key: Key) -> Result<Option<Object>> {
    let path = path_for(dir, key);
    let text = match fs::read_to_string(&path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(corrupt(&path, e)),
    };
    let file: CacheFile = serde_json::from_str(&text).map_err(|e| corrupt(&path, e))?;
    decode(key, file).map(Some).map_err(|e| corrupt(&path, e))
}

fn corrupt(path: &Path, e: impl std::fmt::Display) -> Error {
    Error::InvalidInput(format!("corrupt cache file {}: {e}", path.display()))
}

fn decode(key: Key, file: CacheFile) -> Result<Object> {
    if file.schema_version != SCHEMA_VERSION
        || file.kind != key.kind()
        || file.source != key.source()
        || file.size != key.size()
        || file.data.len() != key.size() + 1
    {
        return Err(Error::InvalidInput(format!(
            "header does not match {} {} of size {}",
            key.kind().as_str(),
            key.source(),
            key.size()
        )));
    }
    let rows = file
        .data
        .iter()
        .map(|row| {
            row.iter()
                .map(|s| {
                    s.parse::<BigInt>()
                        .map_err(|e| Error::InvalidInput(format!("{s:?}: {e}")))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(match key {
        Key::Table(source, _) => Object::Table(HultmanTable::from_dense_rows(source, rows)?),
        Key::Pn(source, _) => Object::Pn(PnFamily::new(
            source,
            rows.into_iter().map(IntPolynomial::new).collect(),
        )?),
        Key::Pg(source, _) => {
            let pgs: Vec<PgPolynomial> = rows
                .into_iter()
                .enumerate()
                .map(|(g, c)| PgPolynomial {
                    g,
                    poly: IntPolynomial::new(c),
                    provenance: source.provenance(),
                })
                .collect();
            validate_pgs(&pgs)?;
            Object::Pg(pgs)
        }
    })
}

fn validate_pgs(pgs: &[PgPolynomial]) -> Result<()> {
    if pgs[0].poly != IntPolynomial::one() {
        return Err(Error::InvalidInput(format!(
            "P_0 = {}, expected 1",
            pgs[0].poly
        )));
    }
    for p in &pgs[1..] {
        let r = verify_pg_properties(p)?;
        if let Some(c) = r.checks.iter().find(|c| !c.passed) {
            return Err(Error::InvalidInput(format!(
                "P_{}: {} ({})",
                p.g, c.name, c.detail
            )));
        }
    }
    Ok(())
}

/// A [`DataSource`] that serves objects from the cache directory when present
/// and writes freshly computed ones back.
#[derive(Debug)]
pub struct Cached {
    pub dir: Option<PathBuf>,
    pub inner: Compute,
    /// Files read from the cache, in request order.
    pub hits: Vec<PathBuf>,
}

impl Cached {
    pub fn new(dir: Option<PathBuf>, cap: usize) -> Self {
        Cached {
            dir,
            inner: Compute { cap },
            hits: Vec::new(),
        }
    }

    pub fn get(&mut self, key: Key) -> Result<Object> {
        let Some(dir) = self.dir.clone() else {
            return compute(key, &mut self.inner);
        };
        if let Some(obj) = load(&dir, key)? {
            self.hits.push(path_for(&dir, key));
            return Ok(obj);
        }
        let obj = compute(key, &mut self.inner)?;
        store(&dir, key, &obj)?;
        Ok(obj)
    }
}

impl DataSource for Cached {
    fn hultman_table(&mut self, source: TableSource, n_max: usize) -> Result<HultmanTable> {
        match self.get(Key::Table(source, n_max))? {
            Object::Table(t) => Ok(t),
            _ => unreachable!("table key yields a table"),
        }
    }

    fn pn_family(&mut self, source: PnSource, n_max: usize) -> Result<PnFamily> {
        match self.get(Key::Pn(source, n_max))? {
            Object::Pn(f) => Ok(f),
            _ => unreachable!("pn key yields a family"),
        }
    }

    fn pg_truncation(&mut self, g_max: usize) -> Result<Vec<PgPolynomial>> {
        match self.get(Key::Pg(PgSource::Truncation, g_max))? {
            Object::Pg(v) => Ok(v),
            _ => unreachable!("pg key yields polynomials"),
        }
    }

    fn pg_ode(&mut self, g_max: usize) -> Result<Vec<PgPolynomial>> {
        match self.get(Key::Pg(PgSource::Ode, g_max))? {
            Object::Pg(v) => Ok(v),
            _ => unreachable!("pg key yields polynomials"),
        }
    }
}
