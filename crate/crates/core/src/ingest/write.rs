//! Corpus emission in the same formats ingest consumes, so a corpus can be
//! round-tripped or handed to another tool run.

use crate::error::{Error, Result};
use crate::model::Corpus;
use serde_json::json;
use std::collections::BTreeSet;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EmitFormat {
    Csv,
    Jsonl,
}

/// Base file names used inside a corpus directory.
pub const PUBLICATIONS: &str = "publications";
pub const ROSTER: &str = "roster";
pub const SALARY: &str = "salary";
pub const SECTORS: &str = "sectors";
pub const META: &str = "meta.json";

fn join(cell: &BTreeSet<String>) -> String {
    cell.iter().cloned().collect::<Vec<_>>().join(";")
}

fn csv_write_err(path: &Path, e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::io(path, io),
        other => Error::parse(&path.display().to_string(), 0, format!("{other:?}")),
    }
}

/// Writes publications, roster, salary, sectors, and a small meta.json
/// carrying the assessment window into `dir`.
pub fn emit_corpus(corpus: &Corpus, dir: &Path, format: EmitFormat) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    match format {
        EmitFormat::Csv => emit_csv(corpus, dir)?,
        EmitFormat::Jsonl => emit_jsonl(corpus, dir)?,
    }
    let meta = json!({ "window": [corpus.window.0, corpus.window.1] });
    let path = dir.join(META);
    std::fs::write(&path, format!("{}\n", serde_json::to_string_pretty(&meta).unwrap()))
        .map_err(|e| Error::io(&path, e))
}

fn emit_csv(corpus: &Corpus, dir: &Path) -> Result<()> {
    let publications = dir.join(format!("{PUBLICATIONS}.csv"));
    let mut w = csv::Writer::from_path(&publications).map_err(|e| csv_write_err(&publications, e))?;
    let write = |w: &mut csv::Writer<File>| -> csv::Result<()> {
        w.write_record(["id", "year", "doc_type", "citations", "categories", "organizations", "authors"])?;
        for p in &corpus.publications {
            w.write_record([
                p.id.as_str(),
                &p.year.to_string(),
                p.doc_type.as_str(),
                &p.citations.to_string(),
                &join(&p.categories),
                &join(&p.organizations),
                &join(&p.authors),
            ])?;
        }
        w.flush()?;
        Ok(())
    };
    write(&mut w).map_err(|e| csv_write_err(&publications, e))?;

    let roster = dir.join(format!("{ROSTER}.csv"));
    let mut w = csv::Writer::from_path(&roster).map_err(|e| csv_write_err(&roster, e))?;
    let write = |w: &mut csv::Writer<File>| -> csv::Result<()> {
        w.write_record(["scientist_id", "university_id", "sds_id", "rank", "fte"])?;
        for s in &corpus.scientists {
            w.write_record([
                s.id.as_str(),
                s.university.as_str(),
                s.sds.as_str(),
                s.rank.as_str(),
                &s.fte.to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    };
    write(&mut w).map_err(|e| csv_write_err(&roster, e))?;

    let salary = dir.join(format!("{SALARY}.csv"));
    let mut w = csv::Writer::from_path(&salary).map_err(|e| csv_write_err(&salary, e))?;
    let write = |w: &mut csv::Writer<File>| -> csv::Result<()> {
        w.write_record(["rank", "avg_cost_keur"])?;
        for (rank, cost) in corpus.schedule.iter() {
            w.write_record([rank, &cost.to_string()])?;
        }
        w.flush()?;
        Ok(())
    };
    write(&mut w).map_err(|e| csv_write_err(&salary, e))?;

    let sectors = dir.join(format!("{SECTORS}.csv"));
    let mut w = csv::Writer::from_path(&sectors).map_err(|e| csv_write_err(&sectors, e))?;
    let write = |w: &mut csv::Writer<File>| -> csv::Result<()> {
        w.write_record(["sds_id", "sds_name", "uda_id", "uda_name"])?;
        for sds in corpus.registry.all_sds() {
            let uda_name = corpus
                .registry
                .uda(&sds.uda)
                .map(|u| u.name.clone())
                .unwrap_or_default();
            w.write_record([sds.id.as_str(), sds.name.as_str(), sds.uda.as_str(), &uda_name])?;
        }
        w.flush()?;
        Ok(())
    };
    write(&mut w).map_err(|e| csv_write_err(&sectors, e))
}

fn emit_jsonl(corpus: &Corpus, dir: &Path) -> Result<()> {
    let write_lines = |name: &str, lines: Vec<serde_json::Value>| -> Result<()> {
        let path = dir.join(format!("{name}.jsonl"));
        let file = File::create(&path).map_err(|e| Error::io(&path, e))?;
        let mut w = BufWriter::new(file);
        for line in lines {
            writeln!(w, "{line}").map_err(|e| Error::io(&path, e))?;
        }
        w.flush().map_err(|e| Error::io(&path, e))
    };

    write_lines(
        PUBLICATIONS,
        corpus
            .publications
            .iter()
            .map(|p| {
                json!({
                    "id": p.id,
                    "year": p.year,
                    "doc_type": p.doc_type.as_str(),
                    "citations": p.citations,
                    "categories": p.categories,
                    "organizations": p.organizations,
                    "authors": p.authors,
                })
            })
            .collect(),
    )?;
    write_lines(
        ROSTER,
        corpus
            .scientists
            .iter()
            .map(|s| {
                json!({
                    "scientist_id": s.id,
                    "university_id": s.university,
                    "sds_id": s.sds,
                    "rank": s.rank,
                    "fte": s.fte,
                })
            })
            .collect(),
    )?;
    write_lines(
        SALARY,
        corpus
            .schedule
            .iter()
            .map(|(rank, cost)| json!({ "rank": rank, "avg_cost_keur": cost }))
            .collect(),
    )?;
    write_lines(
        SECTORS,
        corpus
            .registry
            .all_sds()
            .map(|sds| {
                json!({
                    "sds_id": sds.id,
                    "sds_name": sds.name,
                    "uda_id": sds.uda,
                    "uda_name": corpus.registry.uda(&sds.uda).map(|u| u.name.clone()).unwrap_or_default(),
                })
            })
            .collect(),
    )
}
