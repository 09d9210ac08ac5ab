//! Switches for the points where the methodology admits more than one
//! defensible reading. Defaults follow the published equations.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// How the national mean of an SDS is formed for normalization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NormMode {
    /// Pooled ratio: sum of FSS over sum of input factor, across universities.
    /// Size-consistent; a university's weight follows its staff.
    #[default]
    Pooled,
    /// Unweighted mean of the per-university productivity values.
    UnweightedMean,
}

/// Weights used when aggregating normalized CP from SDS to UDA level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CpWeights {
    /// FTE shares, as in the displayed aggregation equation.
    #[default]
    Fte,
    /// Cost shares: each SDS weighted by its share of the UDA's staff cost.
    CostShare,
}

/// Combination rule for publications carrying several subject categories.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CategoryRule {
    /// Unweighted arithmetic mean of the per-category percentiles.
    #[default]
    Mean,
    Max,
    Min,
}

/// Everything the scoring pipeline needs to know beyond the corpus itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ScoreOptions {
    pub norm_mode: NormMode,
    pub cp_weights: CpWeights,
    pub category_rule: CategoryRule,
}

impl FromStr for NormMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "pooled" => Ok(NormMode::Pooled),
            "unweighted-mean" => Ok(NormMode::UnweightedMean),
            other => Err(format!(
                "unknown norm mode {other:?}; expected pooled or unweighted-mean"
            )),
        }
    }
}

impl FromStr for CpWeights {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "fte" => Ok(CpWeights::Fte),
            "cost-share" => Ok(CpWeights::CostShare),
            other => Err(format!(
                "unknown cp weight mode {other:?}; expected fte or cost-share"
            )),
        }
    }
}

impl FromStr for CategoryRule {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "mean" => Ok(CategoryRule::Mean),
            "max" => Ok(CategoryRule::Max),
            "min" => Ok(CategoryRule::Min),
            other => Err(format!(
                "unknown category rule {other:?}; expected mean, max or min"
            )),
        }
    }
}

impl fmt::Display for NormMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NormMode::Pooled => "pooled",
            NormMode::UnweightedMean => "unweighted-mean",
        })
    }
}

impl fmt::Display for CpWeights {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CpWeights::Fte => "fte",
            CpWeights::CostShare => "cost-share",
        })
    }
}

impl fmt::Display for CategoryRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CategoryRule::Mean => "mean",
            CategoryRule::Max => "max",
            CategoryRule::Min => "min",
        })
    }
}
