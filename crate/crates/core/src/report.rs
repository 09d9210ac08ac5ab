//! File emission for analysis outputs: machine-readable CSVs and a Markdown
//! document laid out like the published comparison tables.

use crate::error::{Error, Result};
use crate::impact::ImpactScore;
use crate::ranking::{RankedList, ShiftReport, ShiftStats, VariationMatrix};
use crate::scoring::{AreaScore, SectorScore};
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs::File;
use std::io::Write as _;
use std::path::Path;

fn open_csv(path: &Path) -> Result<csv::Writer<File>> {
    csv::Writer::from_path(path).map_err(|e| match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::io(path, io),
        other => Error::parse(&path.display().to_string(), 0, format!("{other:?}")),
    })
}

fn finish_csv(path: &Path, result: csv::Result<()>) -> Result<()> {
    result.map_err(|e| match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::io(path, io),
        other => Error::parse(&path.display().to_string(), 0, format!("{other:?}")),
    })
}

/// One row per (publication, category) pair, plus the combined index.
pub fn write_impact_csv(path: &Path, scores: &BTreeMap<String, ImpactScore>) -> Result<()> {
    let mut w = open_csv(path)?;
    let body = (|| {
        w.write_record(["publication_id", "category", "percentile", "aii"])?;
        for score in scores.values() {
            for (category, pct) in &score.per_category {
                w.write_record([
                    score.publication.as_str(),
                    category.as_str(),
                    &pct.to_string(),
                    &score.aii.to_string(),
                ])?;
            }
        }
        w.flush()?;
        Ok(())
    })();
    finish_csv(path, body)
}

pub fn write_sector_scores_csv(path: &Path, scores: &[SectorScore]) -> Result<()> {
    let mut w = open_csv(path)?;
    let body = (|| {
        w.write_record([
            "university", "sds", "fss", "headcount", "cost_keur", "lp", "cp", "lp_norm", "cp_norm",
        ])?;
        for s in scores {
            w.write_record([
                s.university.as_str(),
                s.sds.as_str(),
                &s.fss.to_string(),
                &s.headcount.to_string(),
                &s.cost.to_string(),
                &s.lp.to_string(),
                &s.cp.to_string(),
                &s.lp_norm.to_string(),
                &s.cp_norm.to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    })();
    finish_csv(path, body)
}

pub fn write_area_scores_csv(path: &Path, scores: &[AreaScore]) -> Result<()> {
    let mut w = open_csv(path)?;
    let body = (|| {
        w.write_record(["university", "uda", "lp_j", "cp_j", "add_j", "cost_j_keur"])?;
        for a in scores {
            w.write_record([
                a.university.as_str(),
                a.uda.as_str(),
                &a.lp_j.to_string(),
                &a.cp_j.to_string(),
                &a.add_j.to_string(),
                &a.cost_j.to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    })();
    finish_csv(path, body)
}

fn stat_line(name: &str, value: String) -> String {
    format!("# {name},{value}\n")
}

fn optional(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_else(|| "NA".to_string())
}

/// Per-unit rows followed by a `#`-prefixed stats footer.
pub fn write_shift_report_csv(path: &Path, report: &ShiftReport) -> Result<()> {
    let mut w = open_csv(path)?;
    let body = (|| {
        w.write_record(["unit", "rank_lp", "rank_cp", "variation"])?;
        for row in &report.rows {
            w.write_record([
                row.unit.as_str(),
                &row.rank_lp.to_string(),
                &row.rank_cp.to_string(),
                &row.variation.to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    })();
    finish_csv(path, body)?;
    let s = &report.stats;
    let mut footer = String::new();
    footer.push_str(&stat_line("scope", report.scope.to_string()));
    footer.push_str(&stat_line("total", s.total.to_string()));
    footer.push_str(&stat_line("changed", s.changed_count.to_string()));
    footer.push_str(&stat_line("changed_pct", s.changed_pct.to_string()));
    footer.push_str(&stat_line("max_abs", s.max_abs.to_string()));
    footer.push_str(&stat_line("mean_abs", s.mean_abs.to_string()));
    footer.push_str(&stat_line("median_abs", s.median_abs.to_string()));
    footer.push_str(&stat_line("stddev_abs", optional(s.stddev_abs)));
    footer.push_str(&stat_line("rank_correlation", optional(s.rank_correlation)));
    footer.push_str(&stat_line(
        "cost_shift_correlation",
        optional(s.cost_shift_correlation),
    ));
    let mut file = std::fs::OpenOptions::new()
        .append(true)
        .open(path)
        .map_err(|e| Error::io(path, e))?;
    file.write_all(footer.as_bytes()).map_err(|e| Error::io(path, e))
}

/// Cells are variations; absent units print the literal NA.
pub fn write_variation_matrix_csv(path: &Path, matrix: &VariationMatrix) -> Result<()> {
    let mut w = open_csv(path)?;
    let body = (|| {
        let mut header = vec!["university".to_string()];
        header.extend(matrix.columns.iter().cloned());
        w.write_record(&header)?;
        for (unit, cells) in &matrix.rows {
            let mut record = vec![unit.clone()];
            record.extend(cells.iter().map(|c| match c {
                Some(v) => v.to_string(),
                None => "NA".to_string(),
            }));
            w.write_record(&record)?;
        }
        w.flush()?;
        Ok(())
    })();
    finish_csv(path, body)
}

/// One detailed comparison table: per-unit values and ranks under both
/// measures, in shift-report row order.
#[derive(Debug, Clone)]
pub struct DetailTable {
    pub title: String,
    pub rows: Vec<DetailRow>,
    pub stats: ShiftStats,
}

#[derive(Debug, Clone)]
pub struct DetailRow {
    pub unit: String,
    pub avg_cost: Option<f64>,
    pub lp: f64,
    pub lp_rank: u32,
    pub cp: f64,
    pub cp_rank: u32,
    pub variation: i64,
}

impl DetailTable {
    /// Joins a shift report with the underlying value lists and optional
    /// average costs per FTE.
    pub fn assemble(
        title: &str,
        lp: &RankedList,
        cp: &RankedList,
        report: &ShiftReport,
        costs: Option<&BTreeMap<String, f64>>,
    ) -> DetailTable {
        let lp_values: BTreeMap<&str, f64> =
            lp.entries.iter().map(|e| (e.unit.as_str(), e.value)).collect();
        let cp_values: BTreeMap<&str, f64> =
            cp.entries.iter().map(|e| (e.unit.as_str(), e.value)).collect();
        let rows = report
            .rows
            .iter()
            .map(|r| DetailRow {
                unit: r.unit.clone(),
                avg_cost: costs.and_then(|m| m.get(&r.unit).copied()),
                lp: lp_values.get(r.unit.as_str()).copied().unwrap_or(f64::NAN),
                lp_rank: r.rank_lp,
                cp: cp_values.get(r.unit.as_str()).copied().unwrap_or(f64::NAN),
                cp_rank: r.rank_cp,
                variation: r.variation,
            })
            .collect();
        DetailTable {
            title: title.to_string(),
            rows,
            stats: report.stats.clone(),
        }
    }
}

/// Input to the Markdown rendering: the cross-area matrix, one stats row per
/// area, and any number of detailed tables.
#[derive(Debug, Clone, Default)]
pub struct ReportDoc {
    pub title: String,
    pub matrix: Option<VariationMatrix>,
    /// (label, stats), one per area, in display order.
    pub area_stats: Vec<(String, ShiftStats)>,
    pub details: Vec<DetailTable>,
}

fn fmt3(v: f64) -> String {
    format!("{v:.3}")
}

fn fmt_opt3(v: Option<f64>) -> String {
    v.map(fmt3).unwrap_or_else(|| "NA".to_string())
}

/// Renders the document. Layout mirrors the published comparison tables:
/// a university-by-area variation matrix, an aggregate statistics table,
/// and per-scope detail tables with values, ranks, and variations.
pub fn render_markdown(doc: &ReportDoc) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# {}\n", doc.title);

    if let Some(matrix) = &doc.matrix {
        let _ = writeln!(out, "## Rank variations by university and area\n");
        let _ = writeln!(
            out,
            "Cells show rank under LP minus rank under CP; positive means the university"
        );
        let _ = writeln!(
            out,
            "improves when cost replaces headcount. NA: no staff in the area.\n"
        );
        let _ = write!(out, "| University |");
        for c in &matrix.columns {
            let _ = write!(out, " {c} |");
        }
        let _ = writeln!(out);
        let _ = write!(out, "| --- |");
        for _ in &matrix.columns {
            let _ = write!(out, " ---: |");
        }
        let _ = writeln!(out);
        for (unit, cells) in &matrix.rows {
            let _ = write!(out, "| {unit} |");
            for cell in cells {
                match cell {
                    Some(v) => {
                        let _ = write!(out, " {v} |");
                    }
                    None => {
                        let _ = write!(out, " NA |");
                    }
                }
            }
            let _ = writeln!(out);
        }
        let _ = writeln!(out);
    }

    if !doc.area_stats.is_empty() {
        let _ = writeln!(out, "## Shift statistics by area\n");
        let _ = writeln!(
            out,
            "| Area | Variations | % | Max | Mean | Median | Std Dev. | Correlation |"
        );
        let _ = writeln!(out, "| --- | --- | ---: | ---: | ---: | ---: | ---: | ---: |");
        for (label, s) in &doc.area_stats {
            let _ = writeln!(
                out,
                "| {} | {} out of {} | {:.1} | {} | {} | {} | {} | {} |",
                label,
                s.changed_count,
                s.total,
                s.changed_pct,
                s.max_abs,
                fmt3(s.mean_abs),
                s.median_abs,
                fmt_opt3(s.stddev_abs),
                fmt_opt3(s.rank_correlation),
            );
        }
        let _ = writeln!(out);
    }

    for table in &doc.details {
        let _ = writeln!(out, "## {}\n", table.title);
        let _ = writeln!(
            out,
            "| Unit | Avg cost (k€) | LP | LP rank | CP | CP rank | Variation |"
        );
        let _ = writeln!(out, "| --- | ---: | ---: | ---: | ---: | ---: | ---: |");
        for r in &table.rows {
            let _ = writeln!(
                out,
                "| {} | {} | {} | {} | {} | {} | {:+} |",
                r.unit,
                r.avg_cost.map(|c| format!("{c:.1}")).unwrap_or_else(|| "NA".into()),
                fmt3(r.lp),
                r.lp_rank,
                fmt3(r.cp),
                r.cp_rank,
                r.variation,
            );
        }
        let s = &table.stats;
        let _ = writeln!(out);
        let _ = writeln!(
            out,
            "{} of {} units change position ({:.1}%); max shift {}, mean {}, median {}, std dev {}, rank correlation {}.",
            s.changed_count,
            s.total,
            s.changed_pct,
            s.max_abs,
            fmt3(s.mean_abs),
            s.median_abs,
            fmt_opt3(s.stddev_abs),
            fmt_opt3(s.rank_correlation),
        );
        if let Some(c) = s.cost_shift_correlation {
            let _ = writeln!(
                out,
                "Correlation between variation and average cost per FTE: {}.",
                fmt3(c)
            );
        }
        let _ = writeln!(out);
    }
    out
}
