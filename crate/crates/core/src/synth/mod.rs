//! Synthetic corpus generation. A TOML config fixes the institutional
//! shape (universities, areas, sectors, staff), the salary schedule, and
//! the publication process; a seed makes the output reproducible.
//!
//! The [`oracle`] submodule recomputes every score with plain nested
//! loops and no code shared with the scoring pipeline, as an equivalence
//! check on generated corpora.

pub mod oracle;
pub mod sampler;

pub use oracle::{oracle_impacts, oracle_recompute, OracleArea, OracleScores, OracleSector};
pub use sampler::{CitationDist, IntRange};

use crate::error::{Error, Result};
use crate::model::{
    Corpus, DocType, PublicationRecord, ScientistRecord, SalarySchedule, SectorRegistry, Sds, Uda,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::Path;

/// One salary rank: identifier, average yearly cost, and its share in the
/// default staff mix.
#[derive(Debug, Clone, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct RankLevel {
    pub id: String,
    pub cost_keur: f64,
    pub weight: f64,
}

fn default_window() -> (i32, i32) {
    (2001, 2003)
}

fn default_review_prob() -> f64 {
    0.1
}

fn default_external_org_prob() -> f64 {
    0.25
}

fn default_partial_fte_prob() -> f64 {
    0.1
}

/// Full description of a synthetic corpus. Identical config and seed
/// produce identical corpora.
#[derive(Debug, Clone, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct SynthConfig {
    pub seed: u64,
    pub n_universities: u32,
    pub n_udas: u32,
    pub n_sds_per_uda: u32,
    /// Inclusive publication-year window.
    #[serde(default = "default_window")]
    pub window: (i32, i32),
    /// Probability a publication is a review rather than an article.
    #[serde(default = "default_review_prob")]
    pub review_prob: f64,
    /// Probability an additional byline organization is non-census.
    #[serde(default = "default_external_org_prob")]
    pub external_org_prob: f64,
    /// Probability a scientist works part time (0.25, 0.5, or 0.75 FTE).
    #[serde(default = "default_partial_fte_prob")]
    pub partial_fte_prob: f64,
    /// Size of the subject-category pool; defaults to one per sector.
    #[serde(default)]
    pub n_categories: Option<u32>,
    pub staff_per_cell: IntRange,
    pub publications_per_scientist_year: IntRange,
    pub organizations_per_publication: IntRange,
    pub categories_per_publication: IntRange,
    pub citations: CitationDist,
    /// Rank weights are the default mix for every university.
    pub ranks: Vec<RankLevel>,
    /// Per-university probability vectors over `ranks`, in rank order.
    #[serde(default)]
    pub rank_overrides: BTreeMap<String, Vec<f64>>,
}

impl SynthConfig {
    pub fn from_toml_str(text: &str) -> Result<SynthConfig> {
        let config: SynthConfig = toml::from_str(text)
            .map_err(|e| Error::parse("synth config", 0, e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn from_path(path: &Path) -> Result<SynthConfig> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        SynthConfig::from_toml_str(&text)
    }

    fn university_ids(&self) -> Vec<String> {
        (1..=self.n_universities).map(|i| format!("u{i:03}")).collect()
    }

    fn category_pool_size(&self) -> u32 {
        self.n_categories
            .unwrap_or_else(|| (self.n_udas * self.n_sds_per_uda).max(1))
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::InfeasibleConfig(msg));
        if self.n_universities == 0 {
            return fail("n_universities must be positive".into());
        }
        if self.n_udas == 0 {
            return fail("n_udas must be positive".into());
        }
        if self.n_sds_per_uda == 0 {
            return fail("n_sds_per_uda must be positive".into());
        }
        if self.window.0 > self.window.1 {
            return fail(format!(
                "window start {} is after window end {}",
                self.window.0, self.window.1
            ));
        }
        for (name, p) in [
            ("review_prob", self.review_prob),
            ("external_org_prob", self.external_org_prob),
            ("partial_fte_prob", self.partial_fte_prob),
        ] {
            if !(0.0..=1.0).contains(&p) {
                return fail(format!("{name} must lie in [0, 1], got {p}"));
            }
        }
        self.staff_per_cell.validate("staff_per_cell")?;
        if self.staff_per_cell.min == 0 {
            return fail("staff_per_cell.min must be at least 1 so every cell is staffed".into());
        }
        self.publications_per_scientist_year
            .validate("publications_per_scientist_year")?;
        self.organizations_per_publication
            .validate("organizations_per_publication")?;
        if self.organizations_per_publication.min == 0 {
            return fail("organizations_per_publication.min must be at least 1".into());
        }
        self.categories_per_publication
            .validate("categories_per_publication")?;
        if self.categories_per_publication.min == 0 {
            return fail("categories_per_publication.min must be at least 1".into());
        }
        if self.categories_per_publication.max > self.category_pool_size() {
            return fail(format!(
                "categories_per_publication.max {} exceeds the category pool of {}",
                self.categories_per_publication.max,
                self.category_pool_size()
            ));
        }
        self.citations.validate()?;
        if self.ranks.is_empty() {
            return fail("at least one salary rank is required".into());
        }
        let mut seen = std::collections::BTreeSet::new();
        for level in &self.ranks {
            if level.id.is_empty() {
                return fail("rank id must be non-empty".into());
            }
            if !seen.insert(level.id.as_str()) {
                return fail(format!("duplicate rank id {}", level.id));
            }
            if !(level.cost_keur.is_finite() && level.cost_keur > 0.0) {
                return fail(format!(
                    "rank {} cost must be positive, got {}",
                    level.id, level.cost_keur
                ));
            }
        }
        check_probability_vector(
            "ranks",
            &self.ranks.iter().map(|l| l.weight).collect::<Vec<_>>(),
        )?;
        let ids = self.university_ids();
        for (university, vector) in &self.rank_overrides {
            if !ids.contains(university) {
                return fail(format!(
                    "rank_overrides names unknown university {university} (ids run u001..u{:03})",
                    self.n_universities
                ));
            }
            if vector.len() != self.ranks.len() {
                return fail(format!(
                    "rank override for {university} has {} entries, expected {}",
                    vector.len(),
                    self.ranks.len()
                ));
            }
            check_probability_vector(&format!("rank override for {university}"), vector)?;
        }
        Ok(())
    }
}

fn check_probability_vector(what: &str, probs: &[f64]) -> Result<()> {
    for p in probs {
        if !(p.is_finite() && *p >= 0.0) {
            return Err(Error::InfeasibleConfig(format!(
                "{what}: probabilities must be non-negative, got {p}"
            )));
        }
    }
    let sum: f64 = probs.iter().sum();
    if (sum - 1.0).abs() > 1e-6 {
        return Err(Error::InfeasibleConfig(format!(
            "{what}: probabilities must sum to 1, got {sum}"
        )));
    }
    Ok(())
}

/// Builds a validation-passing corpus from the config. Every (university,
/// sector) cell receives at least one scientist; every publication's
/// authors come from universities on its byline.
pub fn generate(config: &SynthConfig) -> Result<Corpus> {
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);

    let mut registry = SectorRegistry::new();
    let mut sds_ids = Vec::new();
    for d in 1..=config.n_udas {
        let uda_id = format!("d{d:02}");
        registry.add_uda(Uda { id: uda_id.clone(), name: format!("Area {d:02}") });
        for s in 1..=config.n_sds_per_uda {
            let sds_id = format!("s{d:02}{s:02}");
            registry.add_sds(Sds {
                id: sds_id.clone(),
                name: format!("Sector {d:02}.{s:02}"),
                uda: uda_id.clone(),
            });
            sds_ids.push(sds_id);
        }
    }

    let mut schedule = SalarySchedule::new();
    for level in &config.ranks {
        schedule.insert(&level.id, level.cost_keur)?;
    }

    let default_weights = sampler::to_integer_weights(
        &config.ranks.iter().map(|l| l.weight).collect::<Vec<_>>(),
    )?;
    let universities = config.university_ids();
    let mut mix_by_university = BTreeMap::new();
    for u in &universities {
        let weights = match config.rank_overrides.get(u) {
            Some(vector) => sampler::to_integer_weights(vector)?,
            None => default_weights.clone(),
        };
        mix_by_university.insert(u.clone(), weights);
    }

    let mut scientists: Vec<ScientistRecord> = Vec::new();
    let mut staff_by_university: BTreeMap<String, Vec<usize>> = BTreeMap::new();
    for u in &universities {
        let weights = &mix_by_university[u];
        for sds in &sds_ids {
            let n = config.staff_per_cell.sample(&mut rng);
            for _ in 0..n {
                let rank = config.ranks[sampler::weighted_index(&mut rng, weights)].id.clone();
                let fte = if sampler::bernoulli(&mut rng, config.partial_fte_prob) {
                    [0.25, 0.5, 0.75][rng.gen_range(0..3usize)]
                } else {
                    1.0
                };
                let id = format!("sci{:05}", scientists.len() + 1);
                staff_by_university.entry(u.clone()).or_default().push(scientists.len());
                scientists.push(ScientistRecord {
                    id,
                    university: u.clone(),
                    sds: sds.clone(),
                    rank,
                    fte,
                });
            }
        }
    }

    let categories: Vec<String> =
        (1..=config.category_pool_size()).map(|i| format!("cat{i:03}")).collect();
    // external pool sized so byline slots can always be filled without repeats
    let externals: Vec<String> = (1..=config.organizations_per_publication.max.max(1))
        .map(|i| format!("ext{i:03}"))
        .collect();

    let mut publications: Vec<PublicationRecord> = Vec::new();
    let years: Vec<i32> = (config.window.0..=config.window.1).collect();
    for lead_idx in 0..scientists.len() {
        for &year in &years {
            let count = config.publications_per_scientist_year.sample(&mut rng);
            for _ in 0..count {
                let doc_type = if sampler::bernoulli(&mut rng, config.review_prob) {
                    DocType::Review
                } else {
                    DocType::Article
                };
                let citations = config.citations.sample(&mut rng);

                let n_cats = config.categories_per_publication.sample(&mut rng) as usize;
                let mut cat_pool: Vec<&String> = categories.iter().collect();
                let mut cats = std::collections::BTreeSet::new();
                for _ in 0..n_cats {
                    cats.insert(sampler::draw_from(&mut rng, &mut cat_pool).clone());
                }

                let lead = &scientists[lead_idx];
                let mut organizations = std::collections::BTreeSet::new();
                let mut authors = std::collections::BTreeSet::new();
                organizations.insert(lead.university.clone());
                authors.insert(lead.id.clone());
                let n_orgs = config.organizations_per_publication.sample(&mut rng) as usize;
                let mut census_pool: Vec<&String> =
                    universities.iter().filter(|u| **u != lead.university).collect();
                let mut external_pool: Vec<&String> = externals.iter().collect();
                while organizations.len() < n_orgs {
                    let take_external = census_pool.is_empty()
                        || sampler::bernoulli(&mut rng, config.external_org_prob);
                    if take_external {
                        organizations.insert(sampler::draw_from(&mut rng, &mut external_pool).clone());
                    } else {
                        let u = sampler::draw_from(&mut rng, &mut census_pool);
                        organizations.insert(u.clone());
                        // a coauthor makes the census byline consistent with authorship
                        let pool = &staff_by_university[u];
                        let pick = pool[rng.gen_range(0..pool.len())];
                        authors.insert(scientists[pick].id.clone());
                    }
                }

                publications.push(PublicationRecord {
                    id: format!("pub{:06}", publications.len() + 1),
                    year,
                    doc_type,
                    citations,
                    categories: cats,
                    organizations,
                    authors,
                });
            }
        }
    }

    let corpus = Corpus {
        publications,
        scientists,
        schedule,
        registry,
        window: config.window,
    };
    corpus.require_valid()?;
    Ok(corpus)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base_toml() -> String {
        r#"
seed = 7
n_universities = 4
n_udas = 2
n_sds_per_uda = 2
window = [2001, 2002]
staff_per_cell = { min = 1, max = 3 }
publications_per_scientist_year = { min = 0, max = 2 }
organizations_per_publication = { min = 1, max = 3 }
categories_per_publication = { min = 1, max = 2 }
citations = { kind = "geometric", p = 0.3 }

[[ranks]]
id = "senior"
cost_keur = 120.0
weight = 0.4

[[ranks]]
id = "junior"
cost_keur = 60.0
weight = 0.6
"#
        .to_string()
    }

    #[test]
    fn config_round_trips_from_toml() {
        let config = SynthConfig::from_toml_str(&base_toml()).unwrap();
        assert_eq!(config.seed, 7);
        assert_eq!(config.ranks.len(), 2);
        assert_eq!(config.window, (2001, 2002));
        assert_eq!(config.category_pool_size(), 4);
    }

    #[test]
    fn unknown_key_rejected() {
        let text = base_toml() + "\nbogus_knob = 3\n";
        let err = SynthConfig::from_toml_str(&text).unwrap_err();
        assert!(err.to_string().contains("bogus_knob"), "{err}");
    }

    #[test]
    fn weight_sum_must_be_one() {
        let text = base_toml().replace("weight = 0.6", "weight = 0.7");
        let err = SynthConfig::from_toml_str(&text).unwrap_err();
        assert!(err.to_string().contains("sum to 1"), "{err}");
    }

    #[test]
    fn zero_staff_is_infeasible() {
        let text = base_toml().replace(
            "staff_per_cell = { min = 1, max = 3 }",
            "staff_per_cell = { min = 0, max = 0 }",
        );
        let err = SynthConfig::from_toml_str(&text).unwrap_err();
        assert!(matches!(err, Error::InfeasibleConfig(_)), "{err}");
    }

    #[test]
    fn override_must_name_real_university() {
        let text = base_toml() + "\n[rank_overrides]\nu099 = [1.0, 0.0]\n";
        let err = SynthConfig::from_toml_str(&text).unwrap_err();
        assert!(err.to_string().contains("u099"), "{err}");
    }

    #[test]
    fn override_length_must_match_ranks() {
        let text = base_toml() + "\n[rank_overrides]\nu001 = [1.0]\n";
        let err = SynthConfig::from_toml_str(&text).unwrap_err();
        assert!(err.to_string().contains("expected 2"), "{err}");
    }

    #[test]
    fn generated_corpus_passes_validation_and_covers_cells() {
        let config = SynthConfig::from_toml_str(&base_toml()).unwrap();
        let corpus = generate(&config).unwrap();
        assert!(corpus.require_valid().is_ok());
        // every (university, sds) cell staffed
        let mut cells = std::collections::BTreeSet::new();
        for sci in &corpus.scientists {
            cells.insert((sci.university.clone(), sci.sds.clone()));
        }
        assert_eq!(cells.len(), 4 * 4);
        assert!(!corpus.publications.is_empty());
    }

    #[test]
    fn same_seed_gives_identical_corpus() {
        let config = SynthConfig::from_toml_str(&base_toml()).unwrap();
        let a = generate(&config).unwrap();
        let b = generate(&config).unwrap();
        assert_eq!(a.scientists, b.scientists);
        assert_eq!(a.publications, b.publications);
    }

    #[test]
    fn different_seed_changes_output() {
        let config_a = SynthConfig::from_toml_str(&base_toml()).unwrap();
        let mut config_b = config_a.clone();
        config_b.seed = 8;
        let a = generate(&config_a).unwrap();
        let b = generate(&config_b).unwrap();
        assert!(a.publications != b.publications || a.scientists != b.scientists);
    }

    #[test]
    fn single_rank_override_takes_effect() {
        let text = base_toml() + "\n[rank_overrides]\nu001 = [1.0, 0.0]\n";
        let config = SynthConfig::from_toml_str(&text).unwrap();
        let corpus = generate(&config).unwrap();
        for sci in corpus.scientists.iter().filter(|s| s.university == "u001") {
            assert_eq!(sci.rank, "senior");
        }
    }

    #[test]
    fn authors_always_on_byline() {
        let config = SynthConfig::from_toml_str(&base_toml()).unwrap();
        let corpus = generate(&config).unwrap();
        let by_id: BTreeMap<&str, &ScientistRecord> =
            corpus.scientists.iter().map(|s| (s.id.as_str(), s)).collect();
        for p in &corpus.publications {
            for a in &p.authors {
                let sci = by_id[a.as_str()];
                assert!(
                    p.organizations.contains(&sci.university),
                    "{} authored {} but {} is not on the byline",
                    a,
                    p.id,
                    sci.university
                );
            }
        }
    }
}
