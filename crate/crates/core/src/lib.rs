//! Research productivity scoring with labor input measured two ways.
//!
//! The pipeline ingests a census of university staff (with salary ranks),
//! a publication corpus with citation counts, and a sector registry. Each
//! publication gets an impact index: its citation percentile among same-year,
//! same-type publications in its subject category. Fractional credit summed
//! over a (university, sector) cell gives the cell's scientific strength;
//! dividing by FTE headcount yields labor productivity (LP), dividing by
//! salary cost yields cost productivity (CP). Both are normalized per sector
//! and aggregated to disciplinary areas, ranked, and compared: the shift
//! report quantifies how far rankings move when cost replaces headcount as
//! the input measure.
//!
//! Modules:
//! - [`model`]: records, registry, salary schedule, corpus validation
//! - [`ingest`]: CSV and JSONL readers/writers, id reconciliation
//! - [`impact`]: citation percentiles over reference sets
//! - [`scoring`]: FSS, LP, CP, normalization, area aggregation
//! - [`ranking`]: competition ranking, shift reports, variation matrices
//! - [`report`]: CSV and Markdown emission
//! - [`synth`]: seeded corpus generation and a brute-force oracle

pub mod error;
pub mod impact;
pub mod ingest;
pub mod model;
pub mod options;
pub mod ranking;
pub mod report;
pub mod scoring;
pub mod synth;

pub use error::{Error, Result};
pub use options::{CategoryRule, CpWeights, NormMode, ScoreOptions};
