//! Parsing and reconciliation of the input files into a [`Corpus`].
//!
//! Two physical formats are supported everywhere: CSV with a mandatory
//! header row, and JSON-lines. Multi-valued CSV cells (categories,
//! organizations, authors) are semicolon-separated. Loaders are pure
//! functions of file content; see [`read`] for the reader-level parsers.

pub mod read;
pub mod write;

pub use write::{emit_corpus, EmitFormat};

use crate::error::{Error, Result};
use crate::model::{Corpus, PublicationRecord, SalarySchedule, ScientistRecord, SectorRegistry};
use std::collections::{BTreeMap, BTreeSet};
use std::fs::File;
use std::path::Path;

/// Raw institution string -> canonical organization id.
///
/// Application is idempotent by construction: every canonical id maps to
/// itself, and entries that would create a chain are rejected.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ReconciliationMap {
    entries: BTreeMap<String, String>,
}

impl ReconciliationMap {
    pub fn new() -> ReconciliationMap {
        ReconciliationMap::default()
    }

    pub fn insert(&mut self, raw: &str, canonical: &str) -> Result<()> {
        if canonical.is_empty() {
            return Err(Error::BadReconciliation {
                raw: raw.to_string(),
                detail: "empty canonical id".to_string(),
            });
        }
        if raw.is_empty() {
            return Err(Error::BadReconciliation {
                raw: raw.to_string(),
                detail: "empty raw name".to_string(),
            });
        }
        if let Some(existing) = self.entries.get(raw) {
            if existing != canonical {
                return Err(Error::BadReconciliation {
                    raw: raw.to_string(),
                    detail: format!("already maps to {existing:?}, conflicting with {canonical:?}"),
                });
            }
        }
        if let Some(target) = self.entries.get(canonical) {
            if target != canonical {
                return Err(Error::BadReconciliation {
                    raw: raw.to_string(),
                    detail: format!(
                        "canonical id {canonical:?} itself maps to {target:?}; chains are not allowed"
                    ),
                });
            }
        }
        self.entries.insert(raw.to_string(), canonical.to_string());
        self.entries
            .insert(canonical.to_string(), canonical.to_string());
        Ok(())
    }

    /// The canonical id for `raw`, if the map knows it.
    pub fn canonical(&self, raw: &str) -> Option<&str> {
        self.entries.get(raw).map(String::as_str)
    }

    /// Canonical id when mapped, the input itself otherwise.
    pub fn resolve<'a>(&'a self, raw: &'a str) -> &'a str {
        self.canonical(raw).unwrap_or(raw)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Publications plus the raw organization strings no reconciliation entry
/// covered. Unmapped strings pass through verbatim; the caller decides
/// whether the warnings matter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoadedPublications {
    pub records: Vec<PublicationRecord>,
    pub unmapped: BTreeSet<String>,
}

fn open(path: &Path) -> Result<File> {
    File::open(path).map_err(|e| Error::io(path, e))
}

fn is_jsonl(path: &Path) -> bool {
    path.extension().map(|e| e == "jsonl").unwrap_or(false)
}

fn source_name(path: &Path) -> String {
    path.display().to_string()
}

/// Loads publications from a CSV or JSON-lines file, chosen by extension.
pub fn load_publications(path: &Path, map: &ReconciliationMap) -> Result<LoadedPublications> {
    let file = open(path)?;
    if is_jsonl(path) {
        read::read_publications_jsonl(file, map, &source_name(path))
    } else {
        read::read_publications_csv(file, map, &source_name(path))
    }
}

pub fn load_roster(path: &Path, registry: &SectorRegistry) -> Result<Vec<ScientistRecord>> {
    let file = open(path)?;
    if is_jsonl(path) {
        read::read_roster_jsonl(file, registry, &source_name(path))
    } else {
        read::read_roster_csv(file, registry, &source_name(path))
    }
}

pub fn load_salary_schedule(path: &Path) -> Result<SalarySchedule> {
    let file = open(path)?;
    if is_jsonl(path) {
        read::read_salary_jsonl(file, &source_name(path))
    } else {
        read::read_salary_csv(file, &source_name(path))
    }
}

pub fn load_sectors(path: &Path) -> Result<SectorRegistry> {
    let file = open(path)?;
    if is_jsonl(path) {
        read::read_sectors_jsonl(file, &source_name(path))
    } else {
        read::read_sectors_csv(file, &source_name(path))
    }
}

pub fn load_reconciliation(path: &Path) -> Result<ReconciliationMap> {
    let file = open(path)?;
    if is_jsonl(path) {
        read::read_reconciliation_jsonl(file, &source_name(path))
    } else {
        read::read_reconciliation_csv(file, &source_name(path))
    }
}

/// Finds `<base>.csv` or `<base>.jsonl` under `dir`, preferring CSV.
fn locate(dir: &Path, base: &str) -> Result<std::path::PathBuf> {
    let csv = dir.join(format!("{base}.csv"));
    if csv.exists() {
        return Ok(csv);
    }
    let jsonl = dir.join(format!("{base}.jsonl"));
    if jsonl.exists() {
        return Ok(jsonl);
    }
    Err(Error::io(
        &csv,
        std::io::Error::new(
            std::io::ErrorKind::NotFound,
            format!("neither {base}.csv nor {base}.jsonl found"),
        ),
    ))
}

/// Loads a whole corpus directory: sectors, salary, roster, publications,
/// plus an optional reconciliation map and meta.json window. Returns the
/// corpus and the unmapped-organization warnings.
pub fn load_corpus(dir: &Path) -> Result<(Corpus, BTreeSet<String>)> {
    let registry = load_sectors(&locate(dir, write::SECTORS)?)?;
    let schedule = load_salary_schedule(&locate(dir, write::SALARY)?)?;
    let scientists = load_roster(&locate(dir, write::ROSTER)?, &registry)?;
    let map = match locate(dir, "reconciliation") {
        Ok(path) => load_reconciliation(&path)?,
        Err(_) => ReconciliationMap::new(),
    };
    let loaded = load_publications(&locate(dir, write::PUBLICATIONS)?, &map)?;
    let window = read_window(dir, &loaded.records)?;
    let corpus = Corpus {
        publications: loaded.records,
        scientists,
        schedule,
        registry,
        window,
    };
    Ok((corpus, loaded.unmapped))
}

fn read_window(dir: &Path, publications: &[PublicationRecord]) -> Result<(i32, i32)> {
    let meta_path = dir.join(write::META);
    if meta_path.exists() {
        let text = std::fs::read_to_string(&meta_path).map_err(|e| Error::io(&meta_path, e))?;
        let value: serde_json::Value = serde_json::from_str(&text)
            .map_err(|e| Error::parse(&source_name(&meta_path), 0, e.to_string()))?;
        let window = value
            .get("window")
            .and_then(|w| w.as_array())
            .filter(|a| a.len() == 2)
            .and_then(|a| Some((a[0].as_i64()?, a[1].as_i64()?)));
        if let Some((a, b)) = window {
            return Ok((a as i32, b as i32));
        }
        return Err(Error::parse(
            &source_name(&meta_path),
            0,
            "expected {\"window\": [first_year, last_year]}",
        ));
    }
    // no meta file: infer the window from the data
    let years: Vec<i32> = publications.iter().map(|p| p.year).collect();
    match (years.iter().min(), years.iter().max()) {
        (Some(&a), Some(&b)) => Ok((a, b)),
        _ => Ok((0, 0)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reconciliation_is_idempotent() {
        let mut map = ReconciliationMap::new();
        map.insert("Univ. Roma Tor Vergata", "IT-TORVERGATA").unwrap();
        map.insert("University of Rome Tor Vergata", "IT-TORVERGATA").unwrap();
        assert_eq!(map.resolve("Univ. Roma Tor Vergata"), "IT-TORVERGATA");
        assert_eq!(map.resolve(map.resolve("Univ. Roma Tor Vergata")), "IT-TORVERGATA");
        assert_eq!(map.resolve("IT-TORVERGATA"), "IT-TORVERGATA");
        assert_eq!(map.resolve("unlisted"), "unlisted");
    }

    #[test]
    fn chains_are_rejected() {
        let mut map = ReconciliationMap::new();
        map.insert("A", "B").unwrap();
        assert!(map.insert("B", "C").is_err());
        assert!(map.insert("X", "A").is_err());
        // consistent duplicates are fine
        map.insert("A", "B").unwrap();
        assert!(map.insert("A", "Z").is_err());
    }

    #[test]
    fn empty_ids_are_rejected() {
        let mut map = ReconciliationMap::new();
        assert!(map.insert("raw", "").is_err());
        assert!(map.insert("", "canon").is_err());
    }
}
