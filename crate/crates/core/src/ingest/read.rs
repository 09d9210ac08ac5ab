//! Reader-level parsers. Each function consumes any `io::Read` so the same
//! code path serves files, in-memory tests, and fuzz targets. Errors carry
//! the source name and a 1-based line number.

use crate::error::{Error, Result};
use crate::ingest::{LoadedPublications, ReconciliationMap};
use crate::model::{
    DocType, PublicationRecord, SalarySchedule, ScientistRecord, Sds, SectorRegistry, Uda,
};
use serde::Deserialize;
use std::collections::BTreeSet;
use std::io::{BufRead, BufReader, Read};

fn csv_reader<R: Read>(reader: R) -> csv::Reader<R> {
    csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .flexible(false)
        .from_reader(reader)
}

/// Column positions for a required header set.
fn column_indices(
    headers: &csv::StringRecord,
    source: &str,
    required: &[&str],
    optional: &[&str],
) -> Result<Vec<Option<usize>>> {
    let mut out = Vec::with_capacity(required.len() + optional.len());
    for name in required {
        match headers.iter().position(|h| h == *name) {
            Some(i) => out.push(Some(i)),
            None => {
                return Err(Error::MissingColumn {
                    file: source.to_string(),
                    column: name.to_string(),
                })
            }
        }
    }
    for name in optional {
        out.push(headers.iter().position(|h| h == *name));
    }
    Ok(out)
}

fn record_line(record: &csv::StringRecord) -> u64 {
    record.position().map(|p| p.line()).unwrap_or(0)
}

fn csv_error(source: &str, err: csv::Error) -> Error {
    let line = match err.position() {
        Some(p) => p.line(),
        None => 0,
    };
    Error::parse(source, line, err.to_string())
}

/// Splits a semicolon-separated cell into trimmed, non-empty parts.
fn split_multi(cell: &str) -> impl Iterator<Item = &str> {
    cell.split(';').map(str::trim).filter(|s| !s.is_empty())
}

fn parse_citations(raw: &str, source: &str, line: u64) -> Result<u32> {
    let n: i64 = raw
        .parse()
        .map_err(|_| Error::parse(source, line, format!("citations: invalid integer {raw:?}")))?;
    if n < 0 {
        return Err(Error::parse(source, line, format!("citations: negative value {n}")));
    }
    u32::try_from(n)
        .map_err(|_| Error::parse(source, line, format!("citations: value {n} too large")))
}

fn parse_doc_type(raw: &str, source: &str, line: u64) -> Result<DocType> {
    DocType::parse(raw)
        .ok_or_else(|| Error::parse(source, line, format!("unknown doc_type {raw:?}")))
}

fn parse_fte(raw: &str, source: &str, line: u64) -> Result<f64> {
    let fte: f64 = raw
        .parse()
        .map_err(|_| Error::parse(source, line, format!("fte: invalid number {raw:?}")))?;
    if !(fte > 0.0 && fte <= 1.0) {
        return Err(Error::parse(source, line, format!("fte: {fte} outside (0,1]")));
    }
    Ok(fte)
}

fn build_publication(
    source: &str,
    line: u64,
    id: &str,
    year_raw: &str,
    doc_type_raw: &str,
    citations_raw: &str,
    categories: BTreeSet<String>,
    raw_organizations: impl Iterator<Item = String>,
    authors: BTreeSet<String>,
    map: &ReconciliationMap,
    unmapped: &mut BTreeSet<String>,
) -> Result<PublicationRecord> {
    if id.is_empty() {
        return Err(Error::parse(source, line, "empty publication id"));
    }
    let year: i32 = year_raw
        .parse()
        .map_err(|_| Error::parse(source, line, format!("year: invalid integer {year_raw:?}")))?;
    let doc_type = parse_doc_type(doc_type_raw, source, line)?;
    let citations = parse_citations(citations_raw, source, line)?;
    if categories.is_empty() {
        return Err(Error::parse(source, line, "categories: empty set"));
    }
    let mut organizations = BTreeSet::new();
    for raw in raw_organizations {
        match map.canonical(&raw) {
            Some(canonical) => {
                organizations.insert(canonical.to_string());
            }
            None => {
                unmapped.insert(raw.clone());
                organizations.insert(raw);
            }
        }
    }
    if organizations.is_empty() {
        return Err(Error::parse(source, line, "organizations: empty set"));
    }
    Ok(PublicationRecord {
        id: id.to_string(),
        year,
        doc_type,
        citations,
        categories,
        organizations,
        authors,
    })
}

/// Parses the publications CSV. Raw organization strings are replaced by
/// canonical ids; strings absent from the map pass through and are collected
/// as warnings.
pub fn read_publications_csv<R: Read>(
    reader: R,
    map: &ReconciliationMap,
    source: &str,
) -> Result<LoadedPublications> {
    let mut rdr = csv_reader(reader);
    let headers = rdr.headers().map_err(|e| csv_error(source, e))?.clone();
    let cols = column_indices(
        &headers,
        source,
        &["id", "year", "doc_type", "citations", "categories", "organizations", "authors"],
        &[],
    )?;
    let get = |record: &csv::StringRecord, i: usize| -> String {
        record.get(cols[i].unwrap()).unwrap_or("").to_string()
    };
    let mut records = Vec::new();
    let mut unmapped = BTreeSet::new();
    for result in rdr.records() {
        let record = result.map_err(|e| csv_error(source, e))?;
        let line = record_line(&record);
        let categories: BTreeSet<String> =
            split_multi(&get(&record, 4)).map(str::to_string).collect();
        let organizations: Vec<String> =
            split_multi(&get(&record, 5)).map(str::to_string).collect();
        let authors: BTreeSet<String> =
            split_multi(&get(&record, 6)).map(str::to_string).collect();
        records.push(build_publication(
            source,
            line,
            &get(&record, 0),
            &get(&record, 1),
            &get(&record, 2),
            &get(&record, 3),
            categories,
            organizations.into_iter(),
            authors,
            map,
            &mut unmapped,
        )?);
    }
    Ok(LoadedPublications { records, unmapped })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPublicationLine {
    id: String,
    year: i64,
    doc_type: String,
    citations: i64,
    categories: Vec<String>,
    organizations: Vec<String>,
    #[serde(default)]
    authors: Vec<String>,
}

/// JSON-lines variant of the publications format: one object per line with
/// array-valued multi fields.
pub fn read_publications_jsonl<R: Read>(
    reader: R,
    map: &ReconciliationMap,
    source: &str,
) -> Result<LoadedPublications> {
    let buf = BufReader::new(reader);
    let mut records = Vec::new();
    let mut unmapped = BTreeSet::new();
    for (i, line_result) in buf.lines().enumerate() {
        let line_no = i as u64 + 1;
        let text = line_result.map_err(|e| Error::parse(source, line_no, e.to_string()))?;
        if text.trim().is_empty() {
            continue;
        }
        let raw: RawPublicationLine = serde_json::from_str(&text)
            .map_err(|e| Error::parse(source, line_no, e.to_string()))?;
        let year = i32::try_from(raw.year)
            .map_err(|_| Error::parse(source, line_no, format!("year {} out of range", raw.year)))?;
        records.push(build_publication(
            source,
            line_no,
            &raw.id,
            &year.to_string(),
            &raw.doc_type,
            &raw.citations.to_string(),
            raw.categories.into_iter().collect(),
            raw.organizations.into_iter(),
            raw.authors.into_iter().collect(),
            map,
            &mut unmapped,
        )?);
    }
    Ok(LoadedPublications { records, unmapped })
}

/// Parses the roster CSV. The fte column may be missing or empty per row;
/// both default to 1.0. SDS ids must exist in `registry`.
pub fn read_roster_csv<R: Read>(
    reader: R,
    registry: &SectorRegistry,
    source: &str,
) -> Result<Vec<ScientistRecord>> {
    let mut rdr = csv_reader(reader);
    let headers = rdr.headers().map_err(|e| csv_error(source, e))?.clone();
    let cols = column_indices(
        &headers,
        source,
        &["scientist_id", "university_id", "sds_id", "rank"],
        &["fte"],
    )?;
    let mut out = Vec::new();
    for result in rdr.records() {
        let record = result.map_err(|e| csv_error(source, e))?;
        let line = record_line(&record);
        let field = |i: usize| record.get(cols[i].unwrap()).unwrap_or("").to_string();
        let fte_raw = cols[4].and_then(|i| record.get(i)).unwrap_or("");
        out.push(build_scientist(
            source,
            line,
            &field(0),
            &field(1),
            &field(2),
            &field(3),
            fte_raw,
            registry,
        )?);
    }
    Ok(out)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRosterLine {
    scientist_id: String,
    university_id: String,
    sds_id: String,
    rank: String,
    #[serde(default)]
    fte: Option<f64>,
}

pub fn read_roster_jsonl<R: Read>(
    reader: R,
    registry: &SectorRegistry,
    source: &str,
) -> Result<Vec<ScientistRecord>> {
    let buf = BufReader::new(reader);
    let mut out = Vec::new();
    for (i, line_result) in buf.lines().enumerate() {
        let line_no = i as u64 + 1;
        let text = line_result.map_err(|e| Error::parse(source, line_no, e.to_string()))?;
        if text.trim().is_empty() {
            continue;
        }
        let raw: RawRosterLine = serde_json::from_str(&text)
            .map_err(|e| Error::parse(source, line_no, e.to_string()))?;
        let fte_raw = raw.fte.map(|f| f.to_string()).unwrap_or_default();
        out.push(build_scientist(
            source,
            line_no,
            &raw.scientist_id,
            &raw.university_id,
            &raw.sds_id,
            &raw.rank,
            &fte_raw,
            registry,
        )?);
    }
    Ok(out)
}

fn build_scientist(
    source: &str,
    line: u64,
    id: &str,
    university: &str,
    sds: &str,
    rank: &str,
    fte_raw: &str,
    registry: &SectorRegistry,
) -> Result<ScientistRecord> {
    if id.is_empty() || university.is_empty() || rank.is_empty() {
        return Err(Error::parse(source, line, "empty scientist_id, university_id or rank"));
    }
    if registry.sds(sds).is_none() {
        return Err(Error::parse(source, line, format!("unknown SDS code {sds:?}")));
    }
    let fte = if fte_raw.is_empty() {
        1.0
    } else {
        parse_fte(fte_raw, source, line)?
    };
    Ok(ScientistRecord {
        id: id.to_string(),
        university: university.to_string(),
        sds: sds.to_string(),
        rank: rank.to_string(),
        fte,
    })
}

/// Parses the salary schedule. A row gives either the average cost directly
/// (avg_cost_keur) or a total plus headcount (total_cost_meur, headcount),
/// in which case average = total / headcount with mega-euro converted to
/// kilo-euro.
pub fn read_salary_csv<R: Read>(reader: R, source: &str) -> Result<SalarySchedule> {
    let mut rdr = csv_reader(reader);
    let headers = rdr.headers().map_err(|e| csv_error(source, e))?.clone();
    let cols = column_indices(
        &headers,
        source,
        &["rank"],
        &["avg_cost_keur", "total_cost_meur", "headcount"],
    )?;
    if cols[1].is_none() && (cols[2].is_none() || cols[3].is_none()) {
        return Err(Error::MissingColumn {
            file: source.to_string(),
            column: "avg_cost_keur (or total_cost_meur + headcount)".to_string(),
        });
    }
    let mut schedule = SalarySchedule::new();
    for result in rdr.records() {
        let record = result.map_err(|e| csv_error(source, e))?;
        let line = record_line(&record);
        let cell = |i: usize| cols[i].and_then(|c| record.get(c)).unwrap_or("").to_string();
        let rank = cell(0);
        add_salary_row(
            source,
            line,
            &mut schedule,
            &rank,
            &cell(1),
            &cell(2),
            &cell(3),
        )?;
    }
    Ok(schedule)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSalaryLine {
    rank: String,
    #[serde(default)]
    avg_cost_keur: Option<f64>,
    #[serde(default)]
    total_cost_meur: Option<f64>,
    #[serde(default)]
    headcount: Option<u64>,
}

pub fn read_salary_jsonl<R: Read>(reader: R, source: &str) -> Result<SalarySchedule> {
    let buf = BufReader::new(reader);
    let mut schedule = SalarySchedule::new();
    for (i, line_result) in buf.lines().enumerate() {
        let line_no = i as u64 + 1;
        let text = line_result.map_err(|e| Error::parse(source, line_no, e.to_string()))?;
        if text.trim().is_empty() {
            continue;
        }
        let raw: RawSalaryLine = serde_json::from_str(&text)
            .map_err(|e| Error::parse(source, line_no, e.to_string()))?;
        let fmt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
        add_salary_row(
            source,
            line_no,
            &mut schedule,
            &raw.rank,
            &fmt(raw.avg_cost_keur),
            &fmt(raw.total_cost_meur),
            &raw.headcount.map(|h| h.to_string()).unwrap_or_default(),
        )?;
    }
    Ok(schedule)
}

fn add_salary_row(
    source: &str,
    line: u64,
    schedule: &mut SalarySchedule,
    rank: &str,
    avg_raw: &str,
    total_raw: &str,
    head_raw: &str,
) -> Result<()> {
    if rank.is_empty() {
        return Err(Error::parse(source, line, "empty rank"));
    }
    let has_avg = !avg_raw.is_empty();
    let has_total = !total_raw.is_empty() || !head_raw.is_empty();
    let avg = match (has_avg, has_total) {
        (true, true) => {
            return Err(Error::parse(
                source,
                line,
                "row supplies both avg_cost_keur and total_cost_meur/headcount",
            ))
        }
        (false, false) => {
            return Err(Error::parse(
                source,
                line,
                "row supplies neither avg_cost_keur nor total_cost_meur + headcount",
            ))
        }
        (true, false) => avg_raw.parse::<f64>().map_err(|_| {
            Error::parse(source, line, format!("avg_cost_keur: invalid number {avg_raw:?}"))
        })?,
        (false, true) => {
            let total: f64 = total_raw.parse().map_err(|_| {
                Error::parse(source, line, format!("total_cost_meur: invalid number {total_raw:?}"))
            })?;
            let head: u64 = head_raw.parse().map_err(|_| {
                Error::parse(source, line, format!("headcount: invalid integer {head_raw:?}"))
            })?;
            if head == 0 {
                return Err(Error::parse(source, line, "headcount: zero"));
            }
            total * 1000.0 / head as f64
        }
    };
    schedule
        .insert(rank, avg)
        .map_err(|e| Error::parse(source, line, e.to_string()))
}

/// Parses the sector registry: one row per SDS with its parent area. Area
/// rows repeat across SDSs and must agree on the name.
pub fn read_sectors_csv<R: Read>(reader: R, source: &str) -> Result<SectorRegistry> {
    let mut rdr = csv_reader(reader);
    let headers = rdr.headers().map_err(|e| csv_error(source, e))?.clone();
    let cols = column_indices(&headers, source, &["sds_id", "sds_name", "uda_id", "uda_name"], &[])?;
    let mut registry = SectorRegistry::new();
    for result in rdr.records() {
        let record = result.map_err(|e| csv_error(source, e))?;
        let line = record_line(&record);
        let field = |i: usize| record.get(cols[i].unwrap()).unwrap_or("").to_string();
        add_sector_row(source, line, &mut registry, &field(0), &field(1), &field(2), &field(3))?;
    }
    Ok(registry)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSectorLine {
    sds_id: String,
    sds_name: String,
    uda_id: String,
    uda_name: String,
}

pub fn read_sectors_jsonl<R: Read>(reader: R, source: &str) -> Result<SectorRegistry> {
    let buf = BufReader::new(reader);
    let mut registry = SectorRegistry::new();
    for (i, line_result) in buf.lines().enumerate() {
        let line_no = i as u64 + 1;
        let text = line_result.map_err(|e| Error::parse(source, line_no, e.to_string()))?;
        if text.trim().is_empty() {
            continue;
        }
        let raw: RawSectorLine = serde_json::from_str(&text)
            .map_err(|e| Error::parse(source, line_no, e.to_string()))?;
        add_sector_row(
            source,
            line_no,
            &mut registry,
            &raw.sds_id,
            &raw.sds_name,
            &raw.uda_id,
            &raw.uda_name,
        )?;
    }
    Ok(registry)
}

fn add_sector_row(
    source: &str,
    line: u64,
    registry: &mut SectorRegistry,
    sds_id: &str,
    sds_name: &str,
    uda_id: &str,
    uda_name: &str,
) -> Result<()> {
    if sds_id.is_empty() || uda_id.is_empty() {
        return Err(Error::parse(source, line, "empty sds_id or uda_id"));
    }
    if let Some(existing) = registry.uda(uda_id) {
        if existing.name != uda_name {
            return Err(Error::parse(
                source,
                line,
                format!("uda {uda_id:?} redefined with a different name"),
            ));
        }
    } else {
        registry.add_uda(Uda {
            id: uda_id.to_string(),
            name: uda_name.to_string(),
        });
    }
    if registry.sds(sds_id).is_some() {
        return Err(Error::parse(source, line, format!("duplicate sds_id {sds_id:?}")));
    }
    registry.add_sds(Sds {
        id: sds_id.to_string(),
        name: sds_name.to_string(),
        uda: uda_id.to_string(),
    });
    Ok(())
}

/// Parses the reconciliation map. Chains are rejected so that applying the
/// map is idempotent: every canonical id maps to itself.
pub fn read_reconciliation_csv<R: Read>(reader: R, source: &str) -> Result<ReconciliationMap> {
    let mut rdr = csv_reader(reader);
    let headers = rdr.headers().map_err(|e| csv_error(source, e))?.clone();
    let cols = column_indices(&headers, source, &["raw_name", "canonical_id"], &[])?;
    let mut map = ReconciliationMap::new();
    for result in rdr.records() {
        let record = result.map_err(|e| csv_error(source, e))?;
        let line = record_line(&record);
        let raw = record.get(cols[0].unwrap()).unwrap_or("");
        let canonical = record.get(cols[1].unwrap()).unwrap_or("");
        map.insert(raw, canonical)
            .map_err(|e| Error::parse(source, line, e.to_string()))?;
    }
    Ok(map)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawReconciliationLine {
    raw_name: String,
    canonical_id: String,
}

pub fn read_reconciliation_jsonl<R: Read>(reader: R, source: &str) -> Result<ReconciliationMap> {
    let buf = BufReader::new(reader);
    let mut map = ReconciliationMap::new();
    for (i, line_result) in buf.lines().enumerate() {
        let line_no = i as u64 + 1;
        let text = line_result.map_err(|e| Error::parse(source, line_no, e.to_string()))?;
        if text.trim().is_empty() {
            continue;
        }
        let raw: RawReconciliationLine = serde_json::from_str(&text)
            .map_err(|e| Error::parse(source, line_no, e.to_string()))?;
        map.insert(&raw.raw_name, &raw.canonical_id)
            .map_err(|e| Error::parse(source, line_no, e.to_string()))?;
    }
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn registry() -> SectorRegistry {
        let mut r = SectorRegistry::new();
        r.add_uda(Uda { id: "d1".into(), name: "Area".into() });
        r.add_sds(Sds { id: "s1".into(), name: "Sector".into(), uda: "d1".into() });
        r
    }

    #[test]
    fn publications_csv_parses_and_reconciles() {
        let mut map = ReconciliationMap::new();
        map.insert("Univ. Roma Tor Vergata", "IT-TORVERGATA").unwrap();
        map.insert("University of Rome Tor Vergata", "IT-TORVERGATA").unwrap();
        let data = "\
id,year,doc_type,citations,categories,organizations,authors
p1,2005,article,12,cat:chem,Univ. Roma Tor Vergata;University of Rome Tor Vergata,a1;a2
p2,2004,review,0,cat:chem;cat:bio,IT-OTHER,
";
        let loaded = read_publications_csv(data.as_bytes(), &map, "test").unwrap();
        assert_eq!(loaded.records.len(), 2);
        let p1 = &loaded.records[0];
        assert_eq!(p1.organizations.len(), 1);
        assert!(p1.organizations.contains("IT-TORVERGATA"));
        assert_eq!(p1.authors.len(), 2);
        assert_eq!(p1.doc_type, DocType::Article);
        let p2 = &loaded.records[1];
        assert_eq!(p2.categories.len(), 2);
        assert!(p2.authors.is_empty());
        assert_eq!(loaded.unmapped, ["IT-OTHER".to_string()].into());
    }

    #[test]
    fn zero_row_file_gives_empty_list() {
        let data = "id,year,doc_type,citations,categories,organizations,authors\n";
        let loaded =
            read_publications_csv(data.as_bytes(), &ReconciliationMap::new(), "test").unwrap();
        assert!(loaded.records.is_empty());
        assert!(loaded.unmapped.is_empty());
    }

    #[test]
    fn unknown_doc_type_errors_with_line() {
        let data = "\
id,year,doc_type,citations,categories,organizations,authors
p1,2005,article,1,c,o,
p2,2005,letter,1,c,o,
";
        let err = read_publications_csv(data.as_bytes(), &ReconciliationMap::new(), "pubs.csv")
            .unwrap_err();
        match err {
            Error::Parse { file, line, message } => {
                assert_eq!(file, "pubs.csv");
                assert_eq!(line, 3);
                assert!(message.contains("letter"), "{message}");
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn negative_citations_are_rejected() {
        let data = "\
id,year,doc_type,citations,categories,organizations,authors
p1,2005,article,-2,c,o,
";
        let err = read_publications_csv(data.as_bytes(), &ReconciliationMap::new(), "t")
            .unwrap_err();
        assert!(err.to_string().contains("negative"));
    }

    #[test]
    fn missing_column_is_reported() {
        let data = "id,year,doc_type,citations,categories,organizations\np,2004,article,0,c,o\n";
        let err = read_publications_csv(data.as_bytes(), &ReconciliationMap::new(), "t")
            .unwrap_err();
        assert!(matches!(err, Error::MissingColumn { column, .. } if column == "authors"));
    }

    #[test]
    fn roster_fte_defaults_to_one() {
        let data = "\
scientist_id,university_id,sds_id,rank,fte
a,u1,s1,full,
b,u1,s1,full,0.5
";
        let rows = read_roster_csv(data.as_bytes(), &registry(), "t").unwrap();
        assert_eq!(rows[0].fte, 1.0);
        assert_eq!(rows[1].fte, 0.5);
        // column absent entirely
        let data = "scientist_id,university_id,sds_id,rank\nc,u1,s1,assoc\n";
        let rows = read_roster_csv(data.as_bytes(), &registry(), "t").unwrap();
        assert_eq!(rows[0].fte, 1.0);
    }

    #[test]
    fn roster_fte_zero_is_range_error() {
        let data = "scientist_id,university_id,sds_id,rank,fte\na,u1,s1,full,0\n";
        let err = read_roster_csv(data.as_bytes(), &registry(), "t").unwrap_err();
        assert!(err.to_string().contains("(0,1]"), "{err}");
        let data = "scientist_id,university_id,sds_id,rank,fte\na,u1,s1,full,1.2\n";
        assert!(read_roster_csv(data.as_bytes(), &registry(), "t").is_err());
    }

    #[test]
    fn roster_unknown_sds_is_rejected() {
        let data = "scientist_id,university_id,sds_id,rank,fte\na,u1,s9,full,1\n";
        let err = read_roster_csv(data.as_bytes(), &registry(), "t").unwrap_err();
        assert!(err.to_string().contains("s9"), "{err}");
    }

    #[test]
    fn salary_average_passthrough() {
        let data = "rank,avg_cost_keur\nsingle,100.0\n";
        let schedule = read_salary_csv(data.as_bytes(), "t").unwrap();
        assert_eq!(schedule.cost_of("single"), Some(100.0));
    }

    #[test]
    fn salary_total_over_headcount() {
        let data = "\
rank,total_cost_meur,headcount
full-confirmed,1054.9,8475
assistant-probationary,107.0,2353
";
        let schedule = read_salary_csv(data.as_bytes(), "t").unwrap();
        assert!((schedule.cost_of("full-confirmed").unwrap() - 124.5).abs() < 0.05);
        assert!((schedule.cost_of("assistant-probationary").unwrap() - 45.5).abs() < 0.05);
    }

    #[test]
    fn salary_row_shape_conflicts_are_rejected() {
        let both = "rank,avg_cost_keur,total_cost_meur,headcount\nr,50,100,10\n";
        assert!(read_salary_csv(both.as_bytes(), "t").is_err());
        let neither = "rank,avg_cost_keur,total_cost_meur,headcount\nr,,,\n";
        assert!(read_salary_csv(neither.as_bytes(), "t").is_err());
        let dup = "rank,avg_cost_keur\nr,50\nr,60\n";
        let err = read_salary_csv(dup.as_bytes(), "t").unwrap_err();
        assert!(err.to_string().contains("duplicate"), "{err}");
        let zero_head = "rank,total_cost_meur,headcount\nr,10,0\n";
        assert!(read_salary_csv(zero_head.as_bytes(), "t").is_err());
        let negative = "rank,avg_cost_keur\nr,-4\n";
        assert!(read_salary_csv(negative.as_bytes(), "t").is_err());
    }

    #[test]
    fn sectors_registry_round() {
        let data = "\
sds_id,sds_name,uda_id,uda_name
CHIM/01,Analytical chemistry,03,Chemistry
CHIM/02,Physical chemistry,03,Chemistry
BIO/14,Pharmacology,05,Biology
";
        let r = read_sectors_csv(data.as_bytes(), "t").unwrap();
        assert_eq!(r.uda_of("CHIM/02"), Some("03"));
        assert_eq!(r.uda("05").unwrap().name, "Biology");
        assert_eq!(r.all_sds().count(), 3);
        assert_eq!(r.all_udas().count(), 2);
    }

    #[test]
    fn sectors_conflicts_are_rejected() {
        let dup = "sds_id,sds_name,uda_id,uda_name\na,x,1,U\na,y,1,U\n";
        assert!(read_sectors_csv(dup.as_bytes(), "t").is_err());
        let clash = "sds_id,sds_name,uda_id,uda_name\na,x,1,U\nb,y,1,V\n";
        assert!(read_sectors_csv(clash.as_bytes(), "t").is_err());
    }

    #[test]
    fn publications_jsonl_parses() {
        let map = ReconciliationMap::new();
        let data = r#"{"id":"p1","year":2005,"doc_type":"article","citations":3,"categories":["c"],"organizations":["u1"],"authors":["a"]}
{"id":"p2","year":2006,"doc_type":"review","citations":0,"categories":["c","d"],"organizations":["u2"]}
"#;
        let loaded = read_publications_jsonl(data.as_bytes(), &map, "t").unwrap();
        assert_eq!(loaded.records.len(), 2);
        assert_eq!(loaded.records[1].doc_type, DocType::Review);
        assert!(loaded.records[1].authors.is_empty());
    }

    #[test]
    fn jsonl_errors_carry_line_numbers() {
        let map = ReconciliationMap::new();
        let data = r#"{"id":"p1","year":2005,"doc_type":"article","citations":3,"categories":["c"],"organizations":["u1"],"authors":[]}
{"id":"p2","unexpected":true}
"#;
        match read_publications_jsonl(data.as_bytes(), &map, "t").unwrap_err() {
            Error::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn roster_jsonl_and_salary_jsonl_parse() {
        let data = r#"{"scientist_id":"a","university_id":"u1","sds_id":"s1","rank":"full","fte":0.25}
{"scientist_id":"b","university_id":"u1","sds_id":"s1","rank":"full"}
"#;
        let rows = read_roster_jsonl(data.as_bytes(), &registry(), "t").unwrap();
        assert_eq!(rows[0].fte, 0.25);
        assert_eq!(rows[1].fte, 1.0);

        let data = r#"{"rank":"full","avg_cost_keur":124.5}
{"rank":"ra","total_cost_meur":18.4,"headcount":238}
"#;
        let schedule = read_salary_jsonl(data.as_bytes(), "t").unwrap();
        assert_eq!(schedule.cost_of("full"), Some(124.5));
        assert!((schedule.cost_of("ra").unwrap() - 18.4 * 1000.0 / 238.0).abs() < 1e-9);
    }

    #[test]
    fn reconciliation_files_parse() {
        let data = "raw_name,canonical_id\nUniv. X,IT-X\nUniversity of X,IT-X\n";
        let map = read_reconciliation_csv(data.as_bytes(), "t").unwrap();
        assert_eq!(map.resolve("Univ. X"), "IT-X");
        let data = "{\"raw_name\":\"Univ. Y\",\"canonical_id\":\"IT-Y\"}\n";
        let map = read_reconciliation_jsonl(data.as_bytes(), "t").unwrap();
        assert_eq!(map.resolve("Univ. Y"), "IT-Y");
    }
}
