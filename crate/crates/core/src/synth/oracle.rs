//! Brute-force recomputation of every score with plain nested loops.
//! Intentionally shares no computation code with the scoring pipeline;
//! only the data model and option types are common. Desk scale only.

use crate::error::{Error, Result};
use crate::model::Corpus;
use crate::options::{CategoryRule, CpWeights, NormMode, ScoreOptions};
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq)]
pub struct OracleSector {
    pub university: String,
    pub sds: String,
    pub fss: f64,
    pub headcount: f64,
    pub cost: f64,
    pub lp: f64,
    pub cp: f64,
    pub lp_norm: f64,
    pub cp_norm: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleArea {
    pub university: String,
    pub uda: String,
    pub lp_j: f64,
    pub cp_j: f64,
    pub add_j: f64,
    pub cost_j: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct OracleScores {
    pub sectors: Vec<OracleSector>,
    pub areas: Vec<OracleArea>,
}

fn naive_aii(corpus: &Corpus, index: usize, rule: CategoryRule) -> f64 {
    let p = &corpus.publications[index];
    let mut per_category = Vec::new();
    for category in &p.categories {
        let mut total = 0u64;
        let mut below = 0u64;
        for q in &corpus.publications {
            if q.year == p.year && q.doc_type == p.doc_type && q.categories.contains(category) {
                total += 1;
                if q.citations < p.citations {
                    below += 1;
                }
            }
        }
        per_category.push(100.0 * below as f64 / total as f64);
    }
    match rule {
        CategoryRule::Mean => per_category.iter().sum::<f64>() / per_category.len() as f64,
        CategoryRule::Max => per_category.iter().cloned().fold(f64::MIN, f64::max),
        CategoryRule::Min => per_category.iter().cloned().fold(f64::MAX, f64::min),
    }
}

/// Per-publication combined impact, keyed by publication id.
pub fn oracle_impacts(corpus: &Corpus, rule: CategoryRule) -> BTreeMap<String, f64> {
    (0..corpus.publications.len())
        .map(|i| (corpus.publications[i].id.clone(), naive_aii(corpus, i, rule)))
        .collect()
}

/// Recomputes sector and area scores from first principles.
pub fn oracle_recompute(corpus: &Corpus, opts: &ScoreOptions) -> Result<OracleScores> {
    let aii: Vec<f64> = (0..corpus.publications.len())
        .map(|i| naive_aii(corpus, i, opts.category_rule))
        .collect();

    let mut cells: BTreeMap<(String, String), (f64, f64)> = BTreeMap::new();
    for sci in &corpus.scientists {
        let cost = corpus
            .schedule
            .cost_of(&sci.rank)
            .ok_or_else(|| Error::UncostedRank { rank: sci.rank.clone() })?;
        let entry = cells
            .entry((sci.university.clone(), sci.sds.clone()))
            .or_insert((0.0, 0.0));
        entry.0 += sci.fte;
        entry.1 += sci.fte * cost;
    }

    let mut sectors = Vec::new();
    for ((university, sds), (headcount, cost)) in &cells {
        let mut fss = 0.0;
        for (i, p) in corpus.publications.iter().enumerate() {
            let mut in_cell = false;
            for author in &p.authors {
                for sci in &corpus.scientists {
                    if &sci.id == author && &sci.university == university && &sci.sds == sds {
                        in_cell = true;
                    }
                }
            }
            if in_cell {
                fss += aii[i] / p.organizations.len() as f64;
            }
        }
        if *cost <= 0.0 {
            return Err(Error::ZeroCostCell {
                university: university.clone(),
                sds: sds.clone(),
            });
        }
        sectors.push(OracleSector {
            university: university.clone(),
            sds: sds.clone(),
            fss,
            headcount: *headcount,
            cost: *cost,
            lp: fss / headcount,
            cp: fss / cost,
            lp_norm: 0.0,
            cp_norm: 0.0,
        });
    }

    let mut sds_ids: Vec<String> = sectors.iter().map(|s| s.sds.clone()).collect();
    sds_ids.sort();
    sds_ids.dedup();
    for sds in &sds_ids {
        let group: Vec<usize> = (0..sectors.len()).filter(|&i| &sectors[i].sds == sds).collect();
        let (lp_mean, cp_mean) = match opts.norm_mode {
            NormMode::Pooled => {
                let fss: f64 = group.iter().map(|&i| sectors[i].fss).sum();
                let head: f64 = group.iter().map(|&i| sectors[i].headcount).sum();
                let cost: f64 = group.iter().map(|&i| sectors[i].cost).sum();
                (fss / head, fss / cost)
            }
            NormMode::UnweightedMean => {
                let n = group.len() as f64;
                let lp: f64 = group.iter().map(|&i| sectors[i].lp).sum();
                let cp: f64 = group.iter().map(|&i| sectors[i].cp).sum();
                (lp / n, cp / n)
            }
        };
        for &i in &group {
            sectors[i].lp_norm = if lp_mean > 0.0 { sectors[i].lp / lp_mean } else { 1.0 };
            sectors[i].cp_norm = if cp_mean > 0.0 { sectors[i].cp / cp_mean } else { 1.0 };
        }
    }

    let mut areas = Vec::new();
    let mut universities: Vec<String> = sectors.iter().map(|s| s.university.clone()).collect();
    universities.sort();
    universities.dedup();
    let udas: Vec<String> = corpus.registry.all_udas().map(|u| u.id.clone()).collect();
    for university in &universities {
        for uda in &udas {
            let group: Vec<&OracleSector> = sectors
                .iter()
                .filter(|s| {
                    &s.university == university
                        && corpus.registry.uda_of(&s.sds) == Some(uda.as_str())
                })
                .collect();
            if group.is_empty() {
                continue;
            }
            let add_j: f64 = group.iter().map(|s| s.headcount).sum();
            let cost_j: f64 = group.iter().map(|s| s.cost).sum();
            let lp_j: f64 = group.iter().map(|s| s.lp_norm * (s.headcount / add_j)).sum();
            let cp_j: f64 = match opts.cp_weights {
                CpWeights::Fte => group.iter().map(|s| s.cp_norm * (s.headcount / add_j)).sum(),
                CpWeights::CostShare => group.iter().map(|s| s.cp_norm * (s.cost / cost_j)).sum(),
            };
            areas.push(OracleArea {
                university: university.clone(),
                uda: uda.clone(),
                lp_j,
                cp_j,
                add_j,
                cost_j,
            });
        }
    }

    Ok(OracleScores { sectors, areas })
}
