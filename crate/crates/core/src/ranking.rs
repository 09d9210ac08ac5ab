//! Rankings of productivity values, rank-shift reports between the labor and
//! cost measures, and the university-by-area variation matrix.

use crate::error::{Error, Result};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// What a ranking covers: one sector or one area.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Scope {
    Sds(String),
    Uda(String),
}

impl Scope {
    pub fn id(&self) -> &str {
        match self {
            Scope::Sds(id) | Scope::Uda(id) => id,
        }
    }
}

impl fmt::Display for Scope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scope::Sds(id) => write!(f, "sds:{id}"),
            Scope::Uda(id) => write!(f, "uda:{id}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Measure {
    Lp,
    Cp,
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Measure::Lp => "lp",
            Measure::Cp => "cp",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RankEntry {
    pub unit: String,
    pub value: f64,
    pub rank: u32,
}

/// Descending competition ranking: rank 1 is the highest value, tied values
/// share the minimal rank, and the next distinct value skips accordingly
/// (1, 2, 2, 4).
#[derive(Debug, Clone, PartialEq)]
pub struct RankedList {
    pub scope: Scope,
    pub measure: Measure,
    pub entries: Vec<RankEntry>,
}

impl RankedList {
    /// Wraps already-ranked entries, e.g. published rank columns. Entries are
    /// reordered to (rank, unit); values and ranks are taken as given.
    pub fn from_ranked(scope: Scope, measure: Measure, mut entries: Vec<RankEntry>) -> RankedList {
        entries.sort_by(|a, b| a.rank.cmp(&b.rank).then_with(|| a.unit.cmp(&b.unit)));
        RankedList {
            scope,
            measure,
            entries,
        }
    }

    pub fn rank_of(&self, unit: &str) -> Option<u32> {
        self.entries.iter().find(|e| e.unit == unit).map(|e| e.rank)
    }
}

/// Comparison key: the value correctly rounded to 12 significant decimal
/// digits. Scores are sums of credit fractions, so two cells whose exact
/// ratios coincide can land a few ulps apart depending on accumulation
/// order; rounding far below any meaningful score difference keeps such
/// ties stable. Decimal conversion is pure integer code, no libm.
fn rank_key(v: f64) -> f64 {
    format!("{v:.11e}").parse().expect("formatted float parses")
}

/// Ranks `values` descending with competition tie handling. Values are
/// compared through [`rank_key`]; ties keep a deterministic display order
/// (unit id) and share the minimal rank.
pub fn rank(scope: Scope, measure: Measure, values: &[(String, f64)]) -> Result<RankedList> {
    if values.is_empty() {
        return Err(Error::EmptyRanking);
    }
    for (unit, v) in values {
        if !v.is_finite() {
            return Err(Error::NonFiniteValue { unit: unit.clone() });
        }
    }
    let mut sorted: Vec<(&String, f64, f64)> =
        values.iter().map(|(u, v)| (u, *v, rank_key(*v))).collect();
    sorted.sort_by(|a, b| b.2.partial_cmp(&a.2).unwrap().then_with(|| a.0.cmp(b.0)));
    let mut entries = Vec::with_capacity(sorted.len());
    let mut current_rank = 1u32;
    for (i, (unit, value, key)) in sorted.iter().enumerate() {
        if i > 0 && *key != sorted[i - 1].2 {
            current_rank = i as u32 + 1;
        }
        entries.push(RankEntry {
            unit: (*unit).clone(),
            value: *value,
            rank: current_rank,
        });
    }
    Ok(RankedList {
        scope,
        measure,
        entries,
    })
}

/// One unit's position under both measures. `variation` is rank under LP
/// minus rank under CP: positive means the unit improves once cost is
/// accounted for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftRow {
    pub unit: String,
    pub rank_lp: u32,
    pub rank_cp: u32,
    pub variation: i64,
}

/// Aggregate statistics over one scope's rank variations. All `_abs`
/// statistics include zero-variation units. `stddev_abs` uses the sample
/// (n-1) divisor. Correlations are None when undefined (fewer than two
/// units, a constant vector, or missing cost data).
#[derive(Debug, Clone, PartialEq)]
pub struct ShiftStats {
    pub total: usize,
    pub changed_count: usize,
    pub changed_pct: f64,
    pub max_abs: i64,
    pub mean_abs: f64,
    pub median_abs: f64,
    pub stddev_abs: Option<f64>,
    pub rank_correlation: Option<f64>,
    pub cost_shift_correlation: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShiftReport {
    pub scope: Scope,
    pub rows: Vec<ShiftRow>,
    pub stats: ShiftStats,
}

impl ShiftReport {
    /// Builds a report from per-unit rank pairs, e.g. externally published
    /// rank columns. `costs` maps unit to average cost per FTE and feeds the
    /// cost/shift correlation when it covers every unit.
    pub fn from_ranks(
        scope: Scope,
        ranks: Vec<(String, u32, u32)>,
        costs: Option<&BTreeMap<String, f64>>,
    ) -> ShiftReport {
        let mut rows: Vec<ShiftRow> = ranks
            .into_iter()
            .map(|(unit, rank_lp, rank_cp)| ShiftRow {
                variation: rank_lp as i64 - rank_cp as i64,
                unit,
                rank_lp,
                rank_cp,
            })
            .collect();
        sort_rows(&mut rows);
        let stats = compute_stats(&rows, costs);
        ShiftReport { scope, rows, stats }
    }
}

/// Compares two rankings of the same unit set. Errors when the unit sets
/// differ, listing the symmetric difference.
pub fn shift_report(
    lp: &RankedList,
    cp: &RankedList,
    costs: Option<&BTreeMap<String, f64>>,
) -> Result<ShiftReport> {
    let lp_units: BTreeMap<&str, u32> = lp.entries.iter().map(|e| (e.unit.as_str(), e.rank)).collect();
    let cp_units: BTreeMap<&str, u32> = cp.entries.iter().map(|e| (e.unit.as_str(), e.rank)).collect();
    let only_left: BTreeSet<String> = lp_units
        .keys()
        .filter(|u| !cp_units.contains_key(*u))
        .map(|u| u.to_string())
        .collect();
    let only_right: BTreeSet<String> = cp_units
        .keys()
        .filter(|u| !lp_units.contains_key(*u))
        .map(|u| u.to_string())
        .collect();
    if !only_left.is_empty() || !only_right.is_empty() {
        return Err(Error::UnitSetMismatch {
            only_left,
            only_right,
        });
    }
    let ranks = lp_units
        .iter()
        .map(|(unit, &r_lp)| (unit.to_string(), r_lp, cp_units[unit]))
        .collect();
    Ok(ShiftReport::from_ranks(lp.scope.clone(), ranks, costs))
}

/// Rows ordered the way comparison tables print: largest gain first, then by
/// LP rank.
fn sort_rows(rows: &mut [ShiftRow]) {
    rows.sort_by(|a, b| {
        b.variation
            .cmp(&a.variation)
            .then_with(|| a.rank_lp.cmp(&b.rank_lp))
            .then_with(|| a.unit.cmp(&b.unit))
    });
}

fn compute_stats(rows: &[ShiftRow], costs: Option<&BTreeMap<String, f64>>) -> ShiftStats {
    let n = rows.len();
    if n == 0 {
        return ShiftStats {
            total: 0,
            changed_count: 0,
            changed_pct: 0.0,
            max_abs: 0,
            mean_abs: 0.0,
            median_abs: 0.0,
            stddev_abs: None,
            rank_correlation: None,
            cost_shift_correlation: None,
        };
    }
    let mut abs: Vec<i64> = rows.iter().map(|r| r.variation.abs()).collect();
    abs.sort_unstable();
    let changed_count = rows.iter().filter(|r| r.variation != 0).count();
    let mean_abs = abs.iter().sum::<i64>() as f64 / n as f64;
    let median_abs = if n % 2 == 1 {
        abs[n / 2] as f64
    } else {
        (abs[n / 2 - 1] + abs[n / 2]) as f64 / 2.0
    };
    let stddev_abs = if n >= 2 {
        let ss: f64 = abs.iter().map(|&a| (a as f64 - mean_abs).powi(2)).sum();
        Some((ss / (n - 1) as f64).sqrt())
    } else {
        None
    };
    let rank_correlation = pearson(
        rows.iter().map(|r| r.rank_lp as f64),
        rows.iter().map(|r| r.rank_cp as f64),
        n,
    );
    let cost_shift_correlation = costs.and_then(|map| {
        let values: Vec<f64> = rows
            .iter()
            .filter_map(|r| map.get(&r.unit).copied())
            .collect();
        if values.len() != n {
            return None;
        }
        pearson(
            rows.iter().map(|r| r.variation as f64),
            values.into_iter(),
            n,
        )
    });
    ShiftStats {
        total: n,
        changed_count,
        changed_pct: 100.0 * changed_count as f64 / n as f64,
        max_abs: *abs.last().unwrap(),
        mean_abs,
        median_abs,
        stddev_abs,
        rank_correlation,
        cost_shift_correlation,
    }
}

/// Pearson correlation, always computed directly on the paired vectors.
/// None when n < 2 or either side has zero variance.
fn pearson(
    xs: impl Iterator<Item = f64>,
    ys: impl Iterator<Item = f64>,
    n: usize,
) -> Option<f64> {
    if n < 2 {
        return None;
    }
    let pairs: Vec<(f64, f64)> = xs.zip(ys).collect();
    let mx = pairs.iter().map(|p| p.0).sum::<f64>() / n as f64;
    let my = pairs.iter().map(|p| p.1).sum::<f64>() / n as f64;
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    for (x, y) in &pairs {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
        syy += (y - my) * (y - my);
    }
    if sxx == 0.0 || syy == 0.0 {
        return None;
    }
    Some(sxy / (sxx * syy).sqrt())
}

/// University-by-area table of variations. A cell is None where the
/// university has no staff in the area.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VariationMatrix {
    /// Column labels: area ids, in the order the reports were given.
    pub columns: Vec<String>,
    /// One row per unit, sorted by unit id; cells align with `columns`.
    pub rows: Vec<(String, Vec<Option<i64>>)>,
}

/// Assembles area-level shift reports into a matrix. Units are the union of
/// all report rows.
pub fn variation_matrix(reports: &[ShiftReport]) -> VariationMatrix {
    let columns: Vec<String> = reports.iter().map(|r| r.scope.id().to_string()).collect();
    let mut units: BTreeSet<&str> = BTreeSet::new();
    for r in reports {
        for row in &r.rows {
            units.insert(&row.unit);
        }
    }
    let mut rows = Vec::with_capacity(units.len());
    for unit in units {
        let cells = reports
            .iter()
            .map(|r| {
                r.rows
                    .iter()
                    .find(|row| row.unit == unit)
                    .map(|row| row.variation)
            })
            .collect();
        rows.push((unit.to_string(), cells));
    }
    VariationMatrix { columns, rows }
}
