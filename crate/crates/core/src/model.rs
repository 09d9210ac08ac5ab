//! Domain types shared by every stage: publications, scientists, the salary
//! schedule, sector/area registries, and whole-corpus validation.
//!
//! Everything here is immutable once the corpus is assembled; downstream
//! stages only read.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// Opaque subject-category key, e.g. `"ISI:Pharmacology"`.
pub type SubjectCategory = String;

/// Rank label. The set is open: whatever the salary schedule defines.
pub type RankId = String;

/// Indexed document types that enter the analysis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DocType {
    Article,
    Review,
}

impl DocType {
    pub fn parse(s: &str) -> Option<DocType> {
        match s {
            "article" => Some(DocType::Article),
            "review" => Some(DocType::Review),
            _ => None,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            DocType::Article => "article",
            DocType::Review => "review",
        }
    }
}

impl fmt::Display for DocType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One scientific disciplinary sector. Belongs to exactly one area.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sds {
    pub id: String,
    pub name: String,
    pub uda: String,
}

/// One disciplinary area (aggregation of sectors).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Uda {
    pub id: String,
    pub name: String,
}

/// Registry mapping sector ids to sectors and area ids to areas.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SectorRegistry {
    sds: BTreeMap<String, Sds>,
    udas: BTreeMap<String, Uda>,
}

impl SectorRegistry {
    pub fn new() -> SectorRegistry {
        SectorRegistry::default()
    }

    pub fn add_uda(&mut self, uda: Uda) {
        self.udas.insert(uda.id.clone(), uda);
    }

    pub fn add_sds(&mut self, sds: Sds) {
        self.sds.insert(sds.id.clone(), sds);
    }

    pub fn sds(&self, id: &str) -> Option<&Sds> {
        self.sds.get(id)
    }

    pub fn uda(&self, id: &str) -> Option<&Uda> {
        self.udas.get(id)
    }

    /// Area id a sector belongs to, if the sector is registered.
    pub fn uda_of(&self, sds_id: &str) -> Option<&str> {
        self.sds.get(sds_id).map(|s| s.uda.as_str())
    }

    pub fn all_sds(&self) -> impl Iterator<Item = &Sds> {
        self.sds.values()
    }

    pub fn all_udas(&self) -> impl Iterator<Item = &Uda> {
        self.udas.values()
    }

    pub fn is_empty(&self) -> bool {
        self.sds.is_empty() && self.udas.is_empty()
    }
}

/// Rank -> average annual cost in kilo-euro per person-year.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SalarySchedule {
    entries: BTreeMap<RankId, f64>,
}

impl SalarySchedule {
    pub fn new() -> SalarySchedule {
        SalarySchedule::default()
    }

    /// Inserts one rank. Rejects duplicates and non-positive costs.
    pub fn insert(&mut self, rank: &str, avg_cost_keur: f64) -> Result<()> {
        if !(avg_cost_keur > 0.0) {
            return Err(Error::NonPositiveCost {
                rank: rank.to_string(),
                cost: avg_cost_keur,
            });
        }
        if self.entries.contains_key(rank) {
            return Err(Error::DuplicateRank {
                rank: rank.to_string(),
            });
        }
        self.entries.insert(rank.to_string(), avg_cost_keur);
        Ok(())
    }

    pub fn cost_of(&self, rank: &str) -> Option<f64> {
        self.entries.get(rank).copied()
    }

    pub fn contains(&self, rank: &str) -> bool {
        self.entries.contains_key(rank)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> {
        self.entries.iter().map(|(k, v)| (k.as_str(), *v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Same schedule with every cost multiplied by `k`. Used to probe scale
    /// invariance of cost-normalized rankings.
    pub fn scaled(&self, k: f64) -> SalarySchedule {
        SalarySchedule {
            entries: self.entries.iter().map(|(r, c)| (r.clone(), c * k)).collect(),
        }
    }
}

/// One researcher. `fte` is the fraction of the assessment window the person
/// was present, in (0, 1]; triennium-averaged staff counts come out of
/// summing these.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScientistRecord {
    pub id: String,
    pub university: String,
    pub sds: String,
    pub rank: RankId,
    pub fte: f64,
}

/// One indexed publication.
///
/// `organizations` holds canonical ids after reconciliation; `authors` lists
/// census scientists only and may be empty for publications produced entirely
/// outside the census (they still shape percentile reference sets).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PublicationRecord {
    pub id: String,
    pub year: i32,
    pub doc_type: DocType,
    pub citations: u32,
    pub categories: BTreeSet<SubjectCategory>,
    pub organizations: BTreeSet<String>,
    pub authors: BTreeSet<String>,
}

/// Assembled, immutable input to the pipeline.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Corpus {
    pub publications: Vec<PublicationRecord>,
    pub scientists: Vec<ScientistRecord>,
    pub schedule: SalarySchedule,
    pub registry: SectorRegistry,
    /// Inclusive year range of the assessment window.
    pub window: (i32, i32),
}

impl Corpus {
    /// Errors with a summary if the corpus fails validation.
    pub fn require_valid(&self) -> Result<()> {
        let violations = validate_corpus(self);
        match violations.first() {
            None => Ok(()),
            Some(first) => Err(Error::InvalidCorpus {
                count: violations.len(),
                first: first.to_string(),
            }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationKind {
    DuplicatePublicationId,
    DuplicateScientistId,
    EmptyCategories,
    EmptyOrganizations,
    YearOutOfWindow,
    UnknownAuthor,
    AuthorOrganizationMissing,
    UnknownSds,
    UnknownUda,
    UncostedRank,
    FteOutOfRange,
    NonPositiveCost,
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ViolationKind::DuplicatePublicationId => "duplicate publication id",
            ViolationKind::DuplicateScientistId => "duplicate scientist id",
            ViolationKind::EmptyCategories => "no subject categories",
            ViolationKind::EmptyOrganizations => "no organizations",
            ViolationKind::YearOutOfWindow => "year outside assessment window",
            ViolationKind::UnknownAuthor => "unknown author id",
            ViolationKind::AuthorOrganizationMissing => {
                "author's university missing from organizations"
            }
            ViolationKind::UnknownSds => "unknown SDS id",
            ViolationKind::UnknownUda => "SDS references unknown UDA",
            ViolationKind::UncostedRank => "uncosted rank",
            ViolationKind::FteOutOfRange => "fte outside (0,1]",
            ViolationKind::NonPositiveCost => "non-positive schedule cost",
        };
        f.write_str(s)
    }
}

/// One violated invariant: which record, what rule, and the offending value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub record: String,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} ({})", self.record, self.kind, self.detail)
    }
}

fn violation(kind: ViolationKind, record: &str, detail: String) -> Violation {
    Violation {
        kind,
        record: record.to_string(),
        detail,
    }
}

/// Checks every referential and range invariant. Returns all violations
/// rather than stopping at the first; an empty list means the corpus is
/// consistent. Pure: repeated calls return the same list.
pub fn validate_corpus(corpus: &Corpus) -> Vec<Violation> {
    let mut out = Vec::new();

    let mut scientist_by_id: BTreeMap<&str, &ScientistRecord> = BTreeMap::new();
    for s in &corpus.scientists {
        if scientist_by_id.insert(s.id.as_str(), s).is_some() {
            out.push(violation(
                ViolationKind::DuplicateScientistId,
                &s.id,
                "scientist id appears more than once".to_string(),
            ));
        }
    }

    for (rank, cost) in corpus.schedule.iter() {
        if !(cost > 0.0) {
            out.push(violation(
                ViolationKind::NonPositiveCost,
                rank,
                format!("cost {cost}"),
            ));
        }
    }

    for sds in corpus.registry.all_sds() {
        if corpus.registry.uda(&sds.uda).is_none() {
            out.push(violation(
                ViolationKind::UnknownUda,
                &sds.id,
                format!("uda {:?}", sds.uda),
            ));
        }
    }

    for s in &corpus.scientists {
        if !(s.fte > 0.0 && s.fte <= 1.0) {
            out.push(violation(
                ViolationKind::FteOutOfRange,
                &s.id,
                format!("fte {}", s.fte),
            ));
        }
        if corpus.registry.sds(&s.sds).is_none() {
            out.push(violation(
                ViolationKind::UnknownSds,
                &s.id,
                format!("sds {:?}", s.sds),
            ));
        }
        if !corpus.schedule.contains(&s.rank) {
            out.push(violation(
                ViolationKind::UncostedRank,
                &s.id,
                format!("rank {:?}", s.rank),
            ));
        }
    }

    let mut seen_pubs: BTreeSet<&str> = BTreeSet::new();
    for p in &corpus.publications {
        if !seen_pubs.insert(p.id.as_str()) {
            out.push(violation(
                ViolationKind::DuplicatePublicationId,
                &p.id,
                "publication id appears more than once".to_string(),
            ));
        }
        if p.categories.is_empty() {
            out.push(violation(
                ViolationKind::EmptyCategories,
                &p.id,
                "categories set is empty".to_string(),
            ));
        }
        if p.organizations.is_empty() {
            out.push(violation(
                ViolationKind::EmptyOrganizations,
                &p.id,
                "organizations set is empty".to_string(),
            ));
        }
        if p.year < corpus.window.0 || p.year > corpus.window.1 {
            out.push(violation(
                ViolationKind::YearOutOfWindow,
                &p.id,
                format!("year {} outside {}..={}", p.year, corpus.window.0, corpus.window.1),
            ));
        }
        for author in &p.authors {
            match scientist_by_id.get(author.as_str()) {
                None => out.push(violation(
                    ViolationKind::UnknownAuthor,
                    &p.id,
                    format!("author {author:?}"),
                )),
                Some(s) => {
                    if !p.organizations.contains(&s.university) {
                        out.push(violation(
                            ViolationKind::AuthorOrganizationMissing,
                            &p.id,
                            format!("author {:?} at {:?}", author, s.university),
                        ));
                    }
                }
            }
        }
    }

    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn minimal_corpus() -> Corpus {
        let mut registry = SectorRegistry::new();
        registry.add_uda(Uda {
            id: "U1".into(),
            name: "Area one".into(),
        });
        registry.add_sds(Sds {
            id: "S1".into(),
            name: "Sector one".into(),
            uda: "U1".into(),
        });
        let mut schedule = SalarySchedule::new();
        schedule.insert("assistant", 60.0).unwrap();
        Corpus {
            publications: vec![PublicationRecord {
                id: "p1".into(),
                year: 2005,
                doc_type: DocType::Article,
                citations: 3,
                categories: ["cat:a".to_string()].into(),
                organizations: ["univ-a".to_string()].into(),
                authors: ["alice".to_string()].into(),
            }],
            scientists: vec![ScientistRecord {
                id: "alice".into(),
                university: "univ-a".into(),
                sds: "S1".into(),
                rank: "assistant".into(),
                fte: 1.0,
            }],
            schedule,
            registry,
            window: (2004, 2006),
        }
    }

    #[test]
    fn valid_corpus_has_no_violations() {
        assert!(validate_corpus(&minimal_corpus()).is_empty());
    }

    #[test]
    fn empty_corpus_is_vacuously_valid() {
        assert!(validate_corpus(&Corpus::default()).is_empty());
    }

    #[test]
    fn unknown_author_is_reported_with_its_id() {
        let mut c = minimal_corpus();
        c.publications[0].authors.insert("ghost".into());
        let vs = validate_corpus(&c);
        assert_eq!(vs.len(), 1);
        assert_eq!(vs[0].kind, ViolationKind::UnknownAuthor);
        assert!(vs[0].detail.contains("ghost"));
    }

    #[test]
    fn uncosted_rank_is_reported() {
        let mut c = minimal_corpus();
        c.scientists[0].rank = "research-assistant".into();
        let vs = validate_corpus(&c);
        assert_eq!(vs.len(), 1);
        assert_eq!(vs[0].kind, ViolationKind::UncostedRank);
    }

    #[test]
    fn author_university_must_appear_in_organizations() {
        let mut c = minimal_corpus();
        c.publications[0].organizations = ["univ-elsewhere".to_string()].into();
        let vs = validate_corpus(&c);
        assert_eq!(vs.len(), 1);
        assert_eq!(vs[0].kind, ViolationKind::AuthorOrganizationMissing);
    }

    #[test]
    fn fte_bounds_are_enforced() {
        let mut c = minimal_corpus();
        c.scientists[0].fte = 0.0;
        assert_eq!(validate_corpus(&c)[0].kind, ViolationKind::FteOutOfRange);
        c.scientists[0].fte = 1.0 + 1e-9;
        assert_eq!(validate_corpus(&c)[0].kind, ViolationKind::FteOutOfRange);
        c.scientists[0].fte = 0.25;
        assert!(validate_corpus(&c).is_empty());
    }

    #[test]
    fn year_outside_window_is_flagged() {
        let mut c = minimal_corpus();
        c.publications[0].year = 2007;
        assert_eq!(validate_corpus(&c)[0].kind, ViolationKind::YearOutOfWindow);
    }

    #[test]
    fn validation_is_idempotent() {
        let mut c = minimal_corpus();
        c.publications[0].authors.insert("ghost".into());
        assert_eq!(validate_corpus(&c), validate_corpus(&c));
    }

    #[test]
    fn schedule_rejects_duplicates_and_bad_costs() {
        let mut s = SalarySchedule::new();
        s.insert("full", 120.0).unwrap();
        assert!(matches!(
            s.insert("full", 99.0),
            Err(Error::DuplicateRank { .. })
        ));
        assert!(matches!(
            s.insert("zero", 0.0),
            Err(Error::NonPositiveCost { .. })
        ));
        assert!(matches!(
            s.insert("neg", -5.0),
            Err(Error::NonPositiveCost { .. })
        ));
    }

    #[test]
    fn scaled_schedule_multiplies_every_entry() {
        let mut s = SalarySchedule::new();
        s.insert("a", 50.0).unwrap();
        s.insert("b", 120.0).unwrap();
        let t = s.scaled(2.0);
        assert_eq!(t.cost_of("a"), Some(100.0));
        assert_eq!(t.cost_of("b"), Some(240.0));
    }
}
