//! Helpers shared by the integration suites: fixture loading and small
//! synthetic-config construction.
#![allow(dead_code)]

use rankshift_core::synth::SynthConfig;
use std::path::PathBuf;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

/// Row of a detail comparison fixture: one unit with values and ranks under
/// both measures.
#[derive(Debug, Clone)]
pub struct ComparisonRow {
    pub university: String,
    pub avg_cost_keur: f64,
    pub lp: f64,
    pub lp_rank: u32,
    pub cp: f64,
    pub cp_rank: u32,
    pub variation: i64,
}

pub fn load_comparison(name: &str) -> Vec<ComparisonRow> {
    let mut reader = csv::Reader::from_path(fixture_path(name)).expect("fixture opens");
    reader
        .deserialize::<(String, f64, f64, u32, f64, u32, i64)>()
        .map(|r| {
            let (university, avg_cost_keur, lp, lp_rank, cp, cp_rank, variation) =
                r.expect("fixture row parses");
            ComparisonRow { university, avg_cost_keur, lp, lp_rank, cp, cp_rank, variation }
        })
        .collect()
}

/// (rank, total cost in millions, headcount) rows of the salary fixture.
pub fn load_salary_fixture() -> Vec<(String, f64, u32)> {
    let mut reader = csv::Reader::from_path(fixture_path("salary_ranks.csv")).expect("fixture opens");
    reader.deserialize().map(|r| r.expect("fixture row parses")).collect()
}

/// The university-by-area variation fixture: (area columns, rows of
/// (university, cells)); None marks an NA cell.
pub fn load_variation_fixture() -> (Vec<String>, Vec<(String, Vec<Option<i64>>)>) {
    let mut reader =
        csv::Reader::from_path(fixture_path("uda_variation_matrix.csv")).expect("fixture opens");
    let columns: Vec<String> =
        reader.headers().expect("header").iter().skip(1).map(|s| s.to_string()).collect();
    let rows = reader
        .records()
        .map(|r| {
            let record = r.expect("fixture row parses");
            let university = record[0].to_string();
            let cells = record
                .iter()
                .skip(1)
                .map(|cell| match cell {
                    "NA" => None,
                    v => Some(v.parse::<i64>().expect("integer cell")),
                })
                .collect();
            (university, cells)
        })
        .collect();
    (columns, rows)
}

/// Prints one verdict line per criterion and returns `ok` for the assert.
pub fn verdict(criterion: &str, ok: bool, detail: &str) -> bool {
    if ok {
        println!("[PASS] {criterion}: {detail}");
    } else {
        println!("[FAIL] {criterion}: {detail}");
    }
    ok
}

/// Small corpus config with dimensions derived from the seed, so a seed
/// sweep varies shape as well as draws. `ranks_toml` supplies the rank
/// levels and any extra keys.
pub fn small_config(seed: u64, ranks_toml: &str) -> SynthConfig {
    let n_universities = 3 + (seed % 4);
    let n_udas = 1 + (seed % 2);
    let n_sds_per_uda = 1 + (seed % 3);
    let staff_max = 1 + (seed % 3);
    let pubs_max = 1 + (seed % 2);
    let orgs_max = 1 + (seed % 3);
    let kind = if seed % 2 == 0 {
        r#"{ kind = "geometric", p = 0.35 }"#
    } else {
        r#"{ kind = "lognormal", mu = 1.2, sigma = 0.9 }"#
    };
    let text = format!(
        r#"
seed = {seed}
n_universities = {n_universities}
n_udas = {n_udas}
n_sds_per_uda = {n_sds_per_uda}
window = [2001, 2002]
partial_fte_prob = 0.2
staff_per_cell = {{ min = 1, max = {staff_max} }}
publications_per_scientist_year = {{ min = 0, max = {pubs_max} }}
organizations_per_publication = {{ min = 1, max = {orgs_max} }}
categories_per_publication = {{ min = 1, max = 1 }}
citations = {kind}
{ranks_toml}
"#
    );
    SynthConfig::from_toml_str(&text).expect("config is valid")
}

pub const TWO_RANKS: &str = r#"
[[ranks]]
id = "senior"
cost_keur = 115.0
weight = 0.45

[[ranks]]
id = "junior"
cost_keur = 58.0
weight = 0.55
"#;

pub const ONE_RANK: &str = r#"
[[ranks]]
id = "uniform"
cost_keur = 80.0
weight = 1.0
"#;
