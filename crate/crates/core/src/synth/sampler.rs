//! Deterministic sampling primitives. Every draw reduces to integer
//! comparisons against a ChaCha stream plus IEEE add/mul/div, so a fixed
//! seed yields the same corpus on every platform. No libm calls.

use crate::error::{Error, Result};
use rand::Rng;
use serde::{Deserialize, Serialize};

/// Inclusive integer range, sampled uniformly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct IntRange {
    pub min: u32,
    pub max: u32,
}

impl IntRange {
    pub fn validate(&self, what: &str) -> Result<()> {
        if self.min > self.max {
            return Err(Error::InfeasibleConfig(format!(
                "{what}: min {} exceeds max {}",
                self.min, self.max
            )));
        }
        Ok(())
    }

    pub fn sample<R: Rng>(&self, rng: &mut R) -> u32 {
        rng.gen_range(self.min..=self.max)
    }
}

const UNIT_BITS: u64 = 1 << 53;

/// Coin flip with probability `p`, decided by a 53-bit integer threshold.
pub fn bernoulli<R: Rng>(rng: &mut R, p: f64) -> bool {
    let threshold = (p.clamp(0.0, 1.0) * UNIT_BITS as f64) as u64;
    rng.gen_range(0..UNIT_BITS) < threshold
}

/// Uniform draw in [0, 1) with 53 bits of precision.
fn unit_uniform<R: Rng>(rng: &mut R) -> f64 {
    rng.gen_range(0..UNIT_BITS) as f64 / UNIT_BITS as f64
}

/// Index draw proportional to integer weights. Caller guarantees a
/// positive total.
pub fn weighted_index<R: Rng>(rng: &mut R, weights: &[u64]) -> usize {
    let total: u64 = weights.iter().sum();
    debug_assert!(total > 0);
    let draw = rng.gen_range(0..total);
    let mut acc = 0u64;
    for (i, w) in weights.iter().enumerate() {
        acc += w;
        if draw < acc {
            return i;
        }
    }
    weights.len() - 1
}

/// Probability vector scaled to parts-per-billion integer weights.
pub fn to_integer_weights(probs: &[f64]) -> Result<Vec<u64>> {
    let weights: Vec<u64> = probs
        .iter()
        .map(|p| (p.max(0.0) * 1e9).round() as u64)
        .collect();
    if weights.iter().sum::<u64>() == 0 {
        return Err(Error::InfeasibleConfig(
            "probability vector has zero total weight".to_string(),
        ));
    }
    Ok(weights)
}

/// Exponent scaling by an exact power of two, built from the bit pattern.
fn pow2(n: i64) -> f64 {
    if n < -1022 {
        return 0.0;
    }
    if n > 1023 {
        return f64::INFINITY;
    }
    f64::from_bits(((n + 1023) as u64) << 52)
}

/// exp(x) via range reduction to |r| <= ln2/2 and a fixed-length Taylor
/// sum; uses only add/mul/div so results do not depend on the platform's
/// libm.
pub(crate) fn det_exp(x: f64) -> f64 {
    const LN2: f64 = std::f64::consts::LN_2;
    let n = (x / LN2).round();
    let r = x - n * LN2;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..=18u32 {
        term *= r / k as f64;
        sum += term;
    }
    sum * pow2(n as i64)
}

/// Citation count distribution. Geometric covers the typical heavy zero
/// mass; the discretized lognormal gives a fatter right tail.
#[derive(Debug, Clone, PartialEq, Deserialize, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum CitationDist {
    Geometric { p: f64 },
    Lognormal { mu: f64, sigma: f64 },
}

impl CitationDist {
    pub fn validate(&self) -> Result<()> {
        match self {
            CitationDist::Geometric { p } => {
                if !(*p >= 1e-3 && *p <= 1.0) {
                    return Err(Error::InfeasibleConfig(format!(
                        "geometric p must lie in [0.001, 1], got {p}"
                    )));
                }
            }
            CitationDist::Lognormal { mu, sigma } => {
                if !mu.is_finite() || mu.abs() > 20.0 {
                    return Err(Error::InfeasibleConfig(format!(
                        "lognormal mu must lie in [-20, 20], got {mu}"
                    )));
                }
                if !(*sigma >= 0.0 && *sigma <= 5.0) {
                    return Err(Error::InfeasibleConfig(format!(
                        "lognormal sigma must lie in [0, 5], got {sigma}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn sample<R: Rng>(&self, rng: &mut R) -> u32 {
        match self {
            CitationDist::Geometric { p } => {
                // failures before first success
                let mut k: u32 = 0;
                while !bernoulli(rng, *p) {
                    k += 1;
                    if k >= 1_000_000 {
                        break;
                    }
                }
                k
            }
            CitationDist::Lognormal { mu, sigma } => {
                // Irwin-Hall sum of 12 uniforms approximates a standard normal
                let mut z = -6.0;
                for _ in 0..12 {
                    z += unit_uniform(rng);
                }
                let v = det_exp(mu + sigma * z).round();
                if v >= u32::MAX as f64 {
                    u32::MAX
                } else {
                    v as u32
                }
            }
        }
    }
}

/// Removes and returns a uniformly chosen element. swap_remove keeps the
/// draw order independent of prior removals' positions.
pub fn draw_from<R: Rng, T>(rng: &mut R, pool: &mut Vec<T>) -> T {
    debug_assert!(!pool.is_empty());
    let i = rng.gen_range(0..pool.len());
    pool.swap_remove(i)
}
