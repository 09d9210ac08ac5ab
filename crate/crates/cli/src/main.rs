//! Batch front end over the scoring library: compute scores for a corpus
//! directory, compare labor-based and cost-based rankings, synthesize test
//! corpora, and validate inputs. Every command records a run manifest.

mod manifest;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use rankshift_core::ingest::{self, EmitFormat};
use rankshift_core::model::{self, Corpus, Violation};
use rankshift_core::ranking::{self, Measure, RankedList, Scope, ShiftReport};
use rankshift_core::report::{self, DetailTable, ReportDoc};
use rankshift_core::scoring::{score_corpus, AreaScore, SectorScore};
use rankshift_core::{synth, CategoryRule, CpWeights, NormMode, ScoreOptions};
use serde_json::{json, Value};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

#[derive(Parser)]
#[command(
    name = "rankshift",
    version,
    about = "Research productivity scoring per labor unit and per unit of cost"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Score a corpus: citation percentiles, sector scores, area scores.
    Compute(ComputeArgs),
    /// Rank units under both productivity measures and report the shifts.
    Compare(CompareArgs),
    /// Generate a synthetic corpus from a TOML configuration.
    Synth(SynthArgs),
    /// Load a corpus directory and list any validation violations.
    Validate(ValidateArgs),
}

/// Methodology switches shared by the scoring commands.
#[derive(Args)]
struct ModeArgs {
    /// National-mean form used for normalization: pooled or unweighted-mean.
    #[arg(long, default_value = "pooled")]
    norm_mode: NormMode,
    /// Sector-to-area aggregation weights for CP: fte or cost-share.
    #[arg(long, default_value = "fte")]
    cp_weights: CpWeights,
    /// Rule for publications with several categories: mean, max, or min.
    #[arg(long, default_value = "mean")]
    category_rule: CategoryRule,
}

impl ModeArgs {
    fn score_options(&self) -> ScoreOptions {
        ScoreOptions {
            norm_mode: self.norm_mode,
            cp_weights: self.cp_weights,
            category_rule: self.category_rule,
        }
    }

    fn as_json(&self) -> Value {
        json!({
            "norm_mode": self.norm_mode,
            "cp_weights": self.cp_weights,
            "category_rule": self.category_rule,
        })
    }
}

#[derive(Args)]
struct ComputeArgs {
    /// Corpus directory.
    #[arg(long = "in", value_name = "DIR")]
    input: PathBuf,
    /// Output directory, created if absent.
    #[arg(long = "out", value_name = "DIR")]
    output: PathBuf,
    #[command(flatten)]
    modes: ModeArgs,
}

#[derive(Args)]
struct CompareArgs {
    /// Corpus directory.
    #[arg(long = "in", value_name = "DIR")]
    input: PathBuf,
    /// Output directory, created if absent.
    #[arg(long = "out", value_name = "DIR")]
    output: PathBuf,
    /// Which rankings to compare: all, sds:<id>, or uda:<id>.
    #[arg(long, default_value = "all")]
    scope: ScopeArg,
    #[command(flatten)]
    modes: ModeArgs,
}

#[derive(Args)]
struct SynthArgs {
    /// Generator configuration (TOML).
    #[arg(long, value_name = "FILE")]
    config: PathBuf,
    /// Corpus directory to create.
    #[arg(long = "out", value_name = "DIR")]
    output: PathBuf,
    /// Corpus serialization: csv or jsonl.
    #[arg(long, default_value = "csv")]
    format: FormatArg,
}

#[derive(Args)]
struct ValidateArgs {
    /// Corpus directory.
    #[arg(long = "in", value_name = "DIR")]
    input: PathBuf,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum ScopeArg {
    All,
    Sds(String),
    Uda(String),
}

impl FromStr for ScopeArg {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<ScopeArg, String> {
        if s == "all" {
            return Ok(ScopeArg::All);
        }
        if let Some(id) = s.strip_prefix("sds:") {
            if !id.is_empty() {
                return Ok(ScopeArg::Sds(id.to_string()));
            }
        }
        if let Some(id) = s.strip_prefix("uda:") {
            if !id.is_empty() {
                return Ok(ScopeArg::Uda(id.to_string()));
            }
        }
        Err(format!(
            "unknown scope {s:?}; expected all, sds:<id>, or uda:<id>"
        ))
    }
}

impl fmt::Display for ScopeArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScopeArg::All => f.write_str("all"),
            ScopeArg::Sds(id) => write!(f, "sds:{id}"),
            ScopeArg::Uda(id) => write!(f, "uda:{id}"),
        }
    }
}

#[derive(Debug, Clone)]
enum FormatArg {
    Csv,
    Jsonl,
}

impl FromStr for FormatArg {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<FormatArg, String> {
        match s {
            "csv" => Ok(FormatArg::Csv),
            "jsonl" => Ok(FormatArg::Jsonl),
            other => Err(format!("unknown format {other:?}; expected csv or jsonl")),
        }
    }
}

/// A corpus that loads but breaks the documented record-level rules.
#[derive(Debug)]
struct ValidationFailed(Vec<Violation>);

impl fmt::Display for ValidationFailed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "corpus validation failed with {} violation(s):",
            self.0.len()
        )?;
        for v in &self.0 {
            write!(f, "\n  {v}")?;
        }
        Ok(())
    }
}

impl std::error::Error for ValidationFailed {}

/// A well-formed command line naming something absent from the data.
#[derive(Debug)]
struct BadArgument(String);

impl fmt::Display for BadArgument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for BadArgument {}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("{}", render_error(&err));
            ExitCode::from(exit_code(&err))
        }
    }
}

/// Top-level message plus the root cause, unless the message already
/// contains it (library errors embed their source in their Display).
fn render_error(err: &anyhow::Error) -> String {
    let top = err.to_string();
    let root = err.root_cause().to_string();
    if root == top || top.contains(&root) {
        format!("error: {top}")
    } else {
        format!("error: {top} ({root})")
    }
}

/// Input problems (unreadable or invalid data, bad references) exit 2;
/// anything else is an internal failure and exits 1.
fn exit_code(err: &anyhow::Error) -> u8 {
    if let Some(core) = err.downcast_ref::<rankshift_core::Error>() {
        return if core.is_input_error() { 2 } else { 1 };
    }
    if err.downcast_ref::<ValidationFailed>().is_some()
        || err.downcast_ref::<BadArgument>().is_some()
    {
        return 2;
    }
    1
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Compute(args) => cmd_compute(args),
        Command::Compare(args) => cmd_compare(args),
        Command::Synth(args) => cmd_synth(args),
        Command::Validate(args) => cmd_validate(args),
    }
}

fn load_checked(dir: &Path) -> Result<Corpus> {
    let (corpus, unmapped) = ingest::load_corpus(dir)?;
    warn_unmapped(dir, &unmapped);
    let violations = model::validate_corpus(&corpus);
    if !violations.is_empty() {
        return Err(ValidationFailed(violations).into());
    }
    Ok(corpus)
}

/// Unmapped names are only worth flagging when a reconciliation map was
/// actually supplied; without one, every organization is trivially unmapped.
fn warn_unmapped(dir: &Path, unmapped: &BTreeSet<String>) {
    let has_map = dir.join("reconciliation.csv").is_file()
        || dir.join("reconciliation.jsonl").is_file();
    if !has_map || unmapped.is_empty() {
        return;
    }
    let shown: Vec<&str> = unmapped.iter().take(5).map(String::as_str).collect();
    let more = if unmapped.len() > shown.len() { ", ..." } else { "" };
    eprintln!(
        "warning: {} organization name(s) missing from the reconciliation map: {}{}",
        unmapped.len(),
        shown.join(", "),
        more
    );
}

fn create_out_dir(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir)
        .with_context(|| format!("cannot create output directory {}", dir.display()))
}

fn cmd_compute(args: ComputeArgs) -> Result<()> {
    let corpus = load_checked(&args.input)?;
    let (impacts, sectors, areas) = score_corpus(&corpus, args.modes.score_options())?;
    create_out_dir(&args.output)?;
    report::write_impact_csv(&args.output.join("impact.csv"), &impacts)?;
    report::write_sector_scores_csv(&args.output.join("sector_scores.csv"), &sectors)?;
    report::write_area_scores_csv(&args.output.join("area_scores.csv"), &areas)?;
    manifest::write(
        &args.output,
        "compute",
        args.modes.as_json(),
        manifest::digest_corpus_dir(&args.input)?,
        vec![
            "impact.csv".to_string(),
            "sector_scores.csv".to_string(),
            "area_scores.csv".to_string(),
        ],
    )?;
    println!(
        "scored {} publications into {} sector cells and {} area cells",
        impacts.len(),
        sectors.len(),
        areas.len()
    );
    Ok(())
}

/// One scope's ranked lists, shift report, and average cost per FTE map.
struct Comparison {
    lp: RankedList,
    cp: RankedList,
    shift: ShiftReport,
    costs: BTreeMap<String, f64>,
}

fn compare_ranks(
    scope: Scope,
    lp_values: Vec<(String, f64)>,
    cp_values: Vec<(String, f64)>,
    costs: BTreeMap<String, f64>,
) -> Result<Comparison> {
    let lp = ranking::rank(scope.clone(), Measure::Lp, &lp_values)?;
    let cp = ranking::rank(scope, Measure::Cp, &cp_values)?;
    let shift = ranking::shift_report(&lp, &cp, Some(&costs))?;
    Ok(Comparison {
        lp,
        cp,
        shift,
        costs,
    })
}

fn sds_comparison(sectors: &[SectorScore], sds: &str) -> Result<Comparison> {
    let cells: Vec<&SectorScore> = sectors.iter().filter(|s| s.sds == sds).collect();
    if cells.is_empty() {
        return Err(BadArgument(format!("no staffed cell for sector {sds:?}")).into());
    }
    compare_ranks(
        Scope::Sds(sds.to_string()),
        cells.iter().map(|s| (s.university.clone(), s.lp)).collect(),
        cells.iter().map(|s| (s.university.clone(), s.cp)).collect(),
        cells
            .iter()
            .map(|s| (s.university.clone(), s.cost / s.headcount))
            .collect(),
    )
}

fn uda_comparison(areas: &[AreaScore], uda: &str) -> Result<Comparison> {
    let cells: Vec<&AreaScore> = areas.iter().filter(|a| a.uda == uda).collect();
    if cells.is_empty() {
        return Err(BadArgument(format!("no staffed cell for area {uda:?}")).into());
    }
    compare_ranks(
        Scope::Uda(uda.to_string()),
        cells.iter().map(|a| (a.university.clone(), a.lp_j)).collect(),
        cells.iter().map(|a| (a.university.clone(), a.cp_j)).collect(),
        cells
            .iter()
            .map(|a| (a.university.clone(), a.cost_j / a.add_j))
            .collect(),
    )
}

fn shift_file_name(scope: &Scope) -> String {
    match scope {
        Scope::Sds(id) => format!("shift_sds_{id}.csv"),
        Scope::Uda(id) => format!("shift_uda_{id}.csv"),
    }
}

fn distinct<'a>(ids: impl Iterator<Item = &'a str>) -> Vec<String> {
    let set: BTreeSet<&str> = ids.collect();
    set.into_iter().map(str::to_string).collect()
}

fn cmd_compare(args: CompareArgs) -> Result<()> {
    let corpus = load_checked(&args.input)?;
    let (_, sectors, areas) = score_corpus(&corpus, args.modes.score_options())?;
    create_out_dir(&args.output)?;

    let mut outputs = Vec::new();
    let mut doc = ReportDoc {
        title: "Productivity rankings per labor unit and per unit of cost".to_string(),
        ..ReportDoc::default()
    };

    match &args.scope {
        ScopeArg::All => {
            for sds in distinct(sectors.iter().map(|s| s.sds.as_str())) {
                let cmp = sds_comparison(&sectors, &sds)?;
                let name = shift_file_name(&cmp.shift.scope);
                report::write_shift_report_csv(&args.output.join(&name), &cmp.shift)?;
                outputs.push(name);
            }
            let mut uda_reports = Vec::new();
            for uda in distinct(areas.iter().map(|a| a.uda.as_str())) {
                let cmp = uda_comparison(&areas, &uda)?;
                let name = shift_file_name(&cmp.shift.scope);
                report::write_shift_report_csv(&args.output.join(&name), &cmp.shift)?;
                outputs.push(name);
                let label = uda_label(&corpus, &uda);
                doc.area_stats.push((label.clone(), cmp.shift.stats.clone()));
                doc.details.push(detail_table(&label, &cmp));
                uda_reports.push(cmp.shift);
            }
            let matrix = ranking::variation_matrix(&uda_reports);
            report::write_variation_matrix_csv(&args.output.join("variation_matrix.csv"), &matrix)?;
            outputs.push("variation_matrix.csv".to_string());
            // the Markdown variant labels columns with display names
            let mut labeled = matrix;
            for column in &mut labeled.columns {
                *column = uda_label(&corpus, column);
            }
            doc.matrix = Some(labeled);
        }
        ScopeArg::Sds(id) => {
            let cmp = sds_comparison(&sectors, id)?;
            let name = shift_file_name(&cmp.shift.scope);
            report::write_shift_report_csv(&args.output.join(&name), &cmp.shift)?;
            outputs.push(name);
            doc.details.push(detail_table(&sds_label(&corpus, id), &cmp));
        }
        ScopeArg::Uda(id) => {
            let cmp = uda_comparison(&areas, id)?;
            let name = shift_file_name(&cmp.shift.scope);
            report::write_shift_report_csv(&args.output.join(&name), &cmp.shift)?;
            outputs.push(name);
            doc.details.push(detail_table(&uda_label(&corpus, id), &cmp));
        }
    }

    let markdown = report::render_markdown(&doc);
    let md_path = args.output.join("report.md");
    std::fs::write(&md_path, markdown)
        .with_context(|| format!("cannot write {}", md_path.display()))?;
    outputs.push("report.md".to_string());

    let mut options = args.modes.as_json();
    options["scope"] = Value::String(args.scope.to_string());
    let n_outputs = outputs.len();
    manifest::write(
        &args.output,
        "compare",
        options,
        manifest::digest_corpus_dir(&args.input)?,
        outputs,
    )?;
    println!("wrote {} report file(s) to {}", n_outputs, args.output.display());
    Ok(())
}

fn detail_table(title: &str, cmp: &Comparison) -> DetailTable {
    DetailTable::assemble(title, &cmp.lp, &cmp.cp, &cmp.shift, Some(&cmp.costs))
}

fn uda_label(corpus: &Corpus, id: &str) -> String {
    match corpus.registry.uda(id) {
        Some(uda) if !uda.name.is_empty() => uda.name.clone(),
        _ => id.to_string(),
    }
}

fn sds_label(corpus: &Corpus, id: &str) -> String {
    match corpus.registry.sds(id) {
        Some(sds) if !sds.name.is_empty() => sds.name.clone(),
        _ => id.to_string(),
    }
}

fn cmd_synth(args: SynthArgs) -> Result<()> {
    let config = synth::SynthConfig::from_path(&args.config)?;
    let corpus = synth::generate(&config)?;
    let (format, ext) = match args.format {
        FormatArg::Csv => (EmitFormat::Csv, "csv"),
        FormatArg::Jsonl => (EmitFormat::Jsonl, "jsonl"),
    };
    ingest::emit_corpus(&corpus, &args.output, format)?;
    let config_name = args
        .config
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| "config.toml".to_string());
    let mut inputs = BTreeMap::new();
    inputs.insert(config_name, manifest::digest_file(&args.config)?);
    manifest::write(
        &args.output,
        "synth",
        json!({ "format": ext, "seed": config.seed }),
        inputs,
        vec![
            format!("publications.{ext}"),
            format!("roster.{ext}"),
            format!("salary.{ext}"),
            format!("sectors.{ext}"),
            "meta.json".to_string(),
        ],
    )?;
    println!(
        "generated {} publications for {} scientists into {}",
        corpus.publications.len(),
        corpus.scientists.len(),
        args.output.display()
    );
    Ok(())
}

fn cmd_validate(args: ValidateArgs) -> Result<()> {
    let (corpus, unmapped) = ingest::load_corpus(&args.input)?;
    warn_unmapped(&args.input, &unmapped);
    let violations = model::validate_corpus(&corpus);
    if !violations.is_empty() {
        return Err(ValidationFailed(violations).into());
    }
    println!(
        "corpus valid: {} publications, {} scientists, {} sectors, window {}..={}",
        corpus.publications.len(),
        corpus.scientists.len(),
        corpus.registry.all_sds().count(),
        corpus.window.0,
        corpus.window.1
    );
    Ok(())
}
