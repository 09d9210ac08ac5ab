//! Article Impact Index: the citation percentile of a publication within the
//! reference set of same-year, same-type publications sharing a subject
//! category.

use crate::error::{Error, Result};
use crate::model::{DocType, PublicationRecord, SubjectCategory};
use crate::options::CategoryRule;
use std::collections::BTreeMap;

/// Key of one reference set: publications of the same year and document type
/// carrying the same subject category.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct RefKey {
    pub year: i32,
    pub doc_type: DocType,
    pub category: SubjectCategory,
}

/// Citation counts of every member of one reference set, sorted ascending.
/// Never empty: each publication is a member of its own sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReferenceSet {
    counts: Vec<u32>,
}

impl ReferenceSet {
    pub fn from_counts(mut counts: Vec<u32>) -> Result<ReferenceSet> {
        if counts.is_empty() {
            return Err(Error::EmptyReferenceSet);
        }
        counts.sort_unstable();
        Ok(ReferenceSet { counts })
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Share of members with strictly fewer citations, on a 0-100 scale.
    /// Ties count as not-below, so any member scores strictly less than 100
    /// and the loner in a singleton set scores 0.
    pub fn percentile(&self, citations: u32) -> f64 {
        let below = self.counts.partition_point(|&c| c < citations);
        100.0 * below as f64 / self.counts.len() as f64
    }
}

/// Percentile of `citations` within `refset`. Thin free-function form of
/// [`ReferenceSet::percentile`].
pub fn percentile(citations: u32, refset: &ReferenceSet) -> f64 {
    refset.percentile(citations)
}

/// All reference sets of a corpus, built in one pass over the publications.
#[derive(Debug, Clone, Default)]
pub struct ReferenceSets {
    sets: BTreeMap<RefKey, ReferenceSet>,
}

impl ReferenceSets {
    /// Groups citation counts by (year, doc type, category). A publication
    /// contributes its count once to the set of each category it carries.
    pub fn build(publications: &[PublicationRecord]) -> ReferenceSets {
        let mut grouped: BTreeMap<RefKey, Vec<u32>> = BTreeMap::new();
        for p in publications {
            for cat in &p.categories {
                grouped
                    .entry(RefKey {
                        year: p.year,
                        doc_type: p.doc_type,
                        category: cat.clone(),
                    })
                    .or_default()
                    .push(p.citations);
            }
        }
        let sets = grouped
            .into_iter()
            .map(|(k, counts)| {
                // counts non-empty by construction
                (k.clone(), ReferenceSet::from_counts(counts).expect("non-empty"))
            })
            .collect();
        ReferenceSets { sets }
    }

    pub fn get(&self, year: i32, doc_type: DocType, category: &str) -> Option<&ReferenceSet> {
        self.sets.get(&RefKey {
            year,
            doc_type,
            category: category.to_string(),
        })
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&RefKey, &ReferenceSet)> {
        self.sets.iter()
    }
}

/// Impact of one publication: its percentile in each category's reference
/// set, combined into a single index by the configured rule.
#[derive(Debug, Clone, PartialEq)]
pub struct ImpactScore {
    pub publication: String,
    pub per_category: BTreeMap<SubjectCategory, f64>,
    pub aii: f64,
}

/// Scores one publication against prebuilt reference sets. Every category the
/// publication carries must have a set containing it.
pub fn article_impact_index(
    publication: &PublicationRecord,
    refsets: &ReferenceSets,
    rule: CategoryRule,
) -> Result<ImpactScore> {
    if publication.categories.is_empty() {
        return Err(Error::EmptyReferenceSet);
    }
    let mut per_category = BTreeMap::new();
    for cat in &publication.categories {
        let set = refsets
            .get(publication.year, publication.doc_type, cat)
            .ok_or_else(|| Error::MissingReferenceSet {
                publication: publication.id.clone(),
                category: cat.clone(),
            })?;
        per_category.insert(cat.clone(), set.percentile(publication.citations));
    }
    let aii = combine(per_category.values().copied(), rule);
    Ok(ImpactScore {
        publication: publication.id.clone(),
        per_category,
        aii,
    })
}

/// Scores every publication of a corpus; keys of the result are publication
/// ids.
pub fn score_all(
    publications: &[PublicationRecord],
    refsets: &ReferenceSets,
    rule: CategoryRule,
) -> Result<BTreeMap<String, ImpactScore>> {
    let mut out = BTreeMap::new();
    for p in publications {
        out.insert(p.id.clone(), article_impact_index(p, refsets, rule)?);
    }
    Ok(out)
}

fn combine(values: impl Iterator<Item = f64>, rule: CategoryRule) -> f64 {
    let vals: Vec<f64> = values.collect();
    match rule {
        CategoryRule::Mean => vals.iter().sum::<f64>() / vals.len() as f64,
        CategoryRule::Max => vals.iter().copied().fold(f64::MIN, f64::max),
        CategoryRule::Min => vals.iter().copied().fold(f64::MAX, f64::min),
    }
}
