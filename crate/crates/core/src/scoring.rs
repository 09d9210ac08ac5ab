//! Fractional Scientific Strength and the two productivity measures, per
//! (university, SDS) cell, plus standardized aggregation to (university, UDA).

use crate::error::{Error, Result};
use crate::impact::ImpactScore;
use crate::model::{Corpus, SectorRegistry};
use crate::options::{CpWeights, NormMode, ScoreOptions};
use std::collections::{BTreeMap, BTreeSet};

/// Scores of one (university, SDS) cell.
///
/// `lp` is FSS per FTE, `cp` is FSS per kilo-euro of staff cost, and the
/// `_norm` variants are standardized to the national mean of the same SDS.
/// Invariant: cp * (cost / headcount) == lp up to floating error.
#[derive(Debug, Clone, PartialEq)]
pub struct SectorScore {
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

/// Aggregated scores of one (university, UDA) cell. `add_j` is the
/// university's total FTE in the area, `cost_j` its total staff cost.
#[derive(Debug, Clone, PartialEq)]
pub struct AreaScore {
    pub university: String,
    pub uda: String,
    pub lp_j: f64,
    pub cp_j: f64,
    pub add_j: f64,
    pub cost_j: f64,
}

/// Runs impact scoring, sector scoring, and area aggregation in sequence.
pub fn score_corpus(
    corpus: &Corpus,
    opts: ScoreOptions,
) -> Result<(BTreeMap<String, ImpactScore>, Vec<SectorScore>, Vec<AreaScore>)> {
    let refsets = crate::impact::ReferenceSets::build(&corpus.publications);
    let impacts = crate::impact::score_all(&corpus.publications, &refsets, opts.category_rule)?;
    let sectors = sector_scores(corpus, &impacts, opts)?;
    let areas = area_scores(&sectors, &corpus.registry, opts)?;
    Ok((impacts, sectors, areas))
}

/// FSS of one cell: the sum over distinct publications having at least one
/// author in the cell of aii / |organizations|. A publication counts once per
/// cell no matter how many of its authors sit there.
pub fn fractional_scientific_strength(
    cell: (&str, &str),
    corpus: &Corpus,
    impacts: &BTreeMap<String, ImpactScore>,
) -> f64 {
    let members: BTreeSet<&str> = corpus
        .scientists
        .iter()
        .filter(|s| s.university == cell.0 && s.sds == cell.1)
        .map(|s| s.id.as_str())
        .collect();
    let mut fss = 0.0;
    for p in &corpus.publications {
        if p.authors.iter().any(|a| members.contains(a.as_str())) {
            if let Some(score) = impacts.get(&p.id) {
                fss += score.aii / p.organizations.len() as f64;
            }
        }
    }
    fss
}

/// Computes every populated cell's scores. Cells exist where the roster puts
/// staff; a staffed cell with no publications scores zero. Normalization
/// follows `opts.norm_mode`.
pub fn sector_scores(
    corpus: &Corpus,
    impacts: &BTreeMap<String, ImpactScore>,
    opts: ScoreOptions,
) -> Result<Vec<SectorScore>> {
    // (university, sds) -> (headcount, cost)
    let mut cells: BTreeMap<(String, String), (f64, f64)> = BTreeMap::new();
    let mut cell_of: BTreeMap<&str, (String, String)> = BTreeMap::new();
    for s in &corpus.scientists {
        let unit_cost = corpus.schedule.cost_of(&s.rank).ok_or(Error::UncostedRank {
            rank: s.rank.clone(),
        })?;
        let entry = cells
            .entry((s.university.clone(), s.sds.clone()))
            .or_insert((0.0, 0.0));
        entry.0 += s.fte;
        entry.1 += s.fte * unit_cost;
        cell_of.insert(&s.id, (s.university.clone(), s.sds.clone()));
    }

    let mut fss: BTreeMap<(String, String), f64> = BTreeMap::new();
    for p in &corpus.publications {
        let touched: BTreeSet<&(String, String)> = p
            .authors
            .iter()
            .filter_map(|a| cell_of.get(a.as_str()))
            .collect();
        if touched.is_empty() {
            continue;
        }
        let score = match impacts.get(&p.id) {
            Some(s) => s,
            None => continue,
        };
        let credit = score.aii / p.organizations.len() as f64;
        for cell in touched {
            *fss.entry(cell.clone()).or_insert(0.0) += credit;
        }
    }

    let mut raw: Vec<SectorScore> = Vec::with_capacity(cells.len());
    for ((university, sds), (headcount, cost)) in cells {
        if !(cost > 0.0) {
            return Err(Error::ZeroCostCell { university, sds });
        }
        let f = fss.get(&(university.clone(), sds.clone())).copied().unwrap_or(0.0);
        raw.push(SectorScore {
            lp: f / headcount,
            cp: f / cost,
            lp_norm: 0.0,
            cp_norm: 0.0,
            fss: f,
            headcount,
            cost,
            university,
            sds,
        });
    }

    // National means per SDS, then standardize in place.
    let mut by_sds: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
    for (i, s) in raw.iter().enumerate() {
        by_sds.entry(s.sds.as_str()).or_default().push(i);
    }
    let mut means: BTreeMap<String, (f64, f64)> = BTreeMap::new();
    for (sds, idx) in &by_sds {
        let mean = match opts.norm_mode {
            NormMode::Pooled => {
                let fss_sum: f64 = idx.iter().map(|&i| raw[i].fss).sum();
                let head_sum: f64 = idx.iter().map(|&i| raw[i].headcount).sum();
                let cost_sum: f64 = idx.iter().map(|&i| raw[i].cost).sum();
                (fss_sum / head_sum, fss_sum / cost_sum)
            }
            NormMode::UnweightedMean => {
                let n = idx.len() as f64;
                (
                    idx.iter().map(|&i| raw[i].lp).sum::<f64>() / n,
                    idx.iter().map(|&i| raw[i].cp).sum::<f64>() / n,
                )
            }
        };
        means.insert(sds.to_string(), mean);
    }
    for s in &mut raw {
        let (mean_lp, mean_cp) = means[&s.sds];
        // a zero mean implies every cell in the SDS scored zero, i.e. every
        // cell equals the mean
        s.lp_norm = if mean_lp > 0.0 { s.lp / mean_lp } else { 1.0 };
        s.cp_norm = if mean_cp > 0.0 { s.cp / mean_cp } else { 1.0 };
    }
    Ok(raw)
}

/// Aggregates normalized sector scores to (university, UDA). LP uses FTE
/// shares as weights; CP weights follow `opts.cp_weights`.
pub fn area_scores(
    scores: &[SectorScore],
    registry: &SectorRegistry,
    opts: ScoreOptions,
) -> Result<Vec<AreaScore>> {
    let mut grouped: BTreeMap<(String, String), Vec<&SectorScore>> = BTreeMap::new();
    for s in scores {
        let uda = registry.uda_of(&s.sds).ok_or(Error::UnknownSds {
            sds: s.sds.clone(),
        })?;
        grouped
            .entry((s.university.clone(), uda.to_string()))
            .or_default()
            .push(s);
    }

    let mut out = Vec::with_capacity(grouped.len());
    for ((university, uda), cells) in grouped {
        let add_j: f64 = cells.iter().map(|c| c.headcount).sum();
        let cost_j: f64 = cells.iter().map(|c| c.cost).sum();
        if !(add_j > 0.0) {
            continue;
        }
        let lp_j: f64 = cells.iter().map(|c| c.lp_norm * c.headcount / add_j).sum();
        let cp_j: f64 = match opts.cp_weights {
            CpWeights::Fte => cells.iter().map(|c| c.cp_norm * c.headcount / add_j).sum(),
            CpWeights::CostShare => cells.iter().map(|c| c.cp_norm * c.cost / cost_j).sum(),
        };
        out.push(AreaScore {
            university,
            uda,
            lp_j,
            cp_j,
            add_j,
            cost_j,
        });
    }
    Ok(out)
}
