//! Finite discrete distributions and the stochastic click models.
//!
//! Every distribution is an explicit list of `(value, probability)` points.
//! The click models differ only in how keyword click counts are coupled:
//! fixed counts, a single random total split by fixed shares, independent
//! per-keyword draws, or an explicit list of joint scenarios.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Result, SboError};
use crate::model::ClickRealization;

/// Largest deviation of a probability sum from 1 that is silently renormalized.
pub const RENORMALIZE_TOLERANCE: f64 = 1e-6;

/// Sums this close to 1 are left untouched, so that already normalized
/// inputs (for example re-read from a file) keep their exact values.
const UNIT_SUM_SLACK: f64 = 1e-12;

/// Relative tolerance under which a value counts as lying on a bucket grid
/// point, so a pmf already supported on the grid is a fixed point of bucketing.
const BUCKET_SLACK: f64 = 1.0 + 1e-12;

/// Generator used for every seeded draw in the crate.
pub type SboRng = ChaCha8Rng;

/// Identifier recorded in reports so sampled runs can be reproduced.
pub const RNG_ALGORITHM: &str = "chacha8/seed_from_u64";

pub fn rng_from_seed(seed: u64) -> SboRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Finite probability mass function over non-negative values.
///
/// Values are strictly increasing and probabilities are positive and sum to 1.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscretePmf {
    points: Vec<(f64, f64)>,
    cdf: Vec<f64>,
}

impl DiscretePmf {
    /// Validates a list of `(value, probability)` pairs.
    ///
    /// Points with probability zero are dropped, duplicate values merged and
    /// the result sorted by value. A probability sum within
    /// [`RENORMALIZE_TOLERANCE`] of 1 is rescaled to 1; anything further off
    /// is rejected.
    pub fn new<I>(points: I) -> Result<Self>
    where
        I: IntoIterator<Item = (f64, f64)>,
    {
        let mut raw: Vec<(f64, f64)> = Vec::new();
        for (value, prob) in points {
            if !value.is_finite() || value < 0.0 {
                return Err(SboError::Validation(format!(
                    "pmf value {value} must be finite and non-negative"
                )));
            }
            if !prob.is_finite() || prob < 0.0 {
                return Err(SboError::Validation(format!(
                    "pmf probability {prob} must be finite and non-negative"
                )));
            }
            if prob > 0.0 {
                raw.push((value, prob));
            }
        }
        if raw.is_empty() {
            return Err(SboError::Validation(
                "pmf needs at least one point with positive probability".into(),
            ));
        }
        raw.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut merged: Vec<(f64, f64)> = Vec::with_capacity(raw.len());
        for (value, prob) in raw {
            match merged.last_mut() {
                Some(last) if last.0 == value => last.1 += prob,
                _ => merged.push((value, prob)),
            }
        }
        let total: f64 = merged.iter().map(|p| p.1).sum();
        if (total - 1.0).abs() > RENORMALIZE_TOLERANCE {
            return Err(SboError::Validation(format!(
                "pmf probabilities sum to {total}, expected 1"
            )));
        }
        if (total - 1.0).abs() > UNIT_SUM_SLACK {
            for point in &mut merged {
                point.1 /= total;
            }
        }
        Ok(Self::from_sorted(merged))
    }

    /// Unit mass at `value`.
    pub fn point(value: f64) -> Result<Self> {
        Self::new([(value, 1.0)])
    }

    fn from_sorted(points: Vec<(f64, f64)>) -> Self {
        let mut acc = 0.0;
        let cdf = points
            .iter()
            .map(|&(_, p)| {
                acc += p;
                acc
            })
            .collect();
        Self { points, cdf }
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        self.points.iter().map(|p| p.0)
    }

    pub fn min_value(&self) -> f64 {
        self.points[0].0
    }

    pub fn max_value(&self) -> f64 {
        self.points[self.points.len() - 1].0
    }

    pub fn mean(&self) -> f64 {
        self.points.iter().map(|&(v, p)| v * p).sum()
    }

    /// `Pr[X > threshold]`, strict.
    pub fn tail_prob(&self, threshold: f64) -> f64 {
        self.points
            .iter()
            .filter(|p| p.0 > threshold)
            .map(|p| p.1)
            .sum()
    }

    /// `Pr[X <= threshold]`.
    pub fn mass_at_most(&self, threshold: f64) -> f64 {
        self.points
            .iter()
            .filter(|p| p.0 <= threshold)
            .map(|p| p.1)
            .sum()
    }

    /// `sum over x <= threshold of x * Pr[X = x]`, inclusive.
    pub fn partial_expectation(&self, threshold: f64) -> f64 {
        self.points
            .iter()
            .filter(|p| p.0 <= threshold)
            .map(|&(v, p)| v * p)
            .sum()
    }

    /// Multiplies every support value by `factor` (> 0).
    pub fn scaled(&self, factor: f64) -> DiscretePmf {
        debug_assert!(factor > 0.0);
        Self::from_sorted(self.points.iter().map(|&(v, p)| (v * factor, p)).collect())
    }

    /// Rounds every positive value down onto the geometric grid
    /// `s * (1 + eps)^k`, `k >= 0`, where `s` is the smallest positive value,
    /// and merges the mass that lands on the same grid point. Zero stays zero.
    ///
    /// Values within a relative 1e-12 of a grid point are treated as lying on
    /// it, so a pmf already supported on the grid is returned unchanged.
    pub fn bucket(&self, eps: f64) -> Result<DiscretePmf> {
        if !(eps > 0.0) || !eps.is_finite() {
            return Err(SboError::Parameter(format!(
                "bucket width must be positive, got {eps}"
            )));
        }
        let Some(base) = self.values().find(|&v| v > 0.0) else {
            return Ok(self.clone());
        };
        let ratio = 1.0 + eps;
        let mut zero_mass = 0.0;
        let mut buckets: BTreeMap<i32, f64> = BTreeMap::new();
        for &(value, prob) in &self.points {
            if value == 0.0 {
                zero_mass += prob;
            } else {
                *buckets.entry(grid_floor(value / base, ratio, BUCKET_SLACK)).or_insert(0.0) += prob;
            }
        }
        let mut points = Vec::with_capacity(buckets.len() + 1);
        if zero_mass > 0.0 {
            points.push((0.0, zero_mass));
        }
        points.extend(
            buckets
                .into_iter()
                .map(|(k, p)| (base * ratio.powi(k), p)),
        );
        Ok(Self::from_sorted(points))
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let u: f64 = rng.gen();
        let idx = self.cdf.partition_point(|&c| c <= u);
        self.points[idx.min(self.points.len() - 1)].0
    }
}

/// Largest `k >= 0` with `ratio^k <= x * slack`, for `x >= 1`.
pub(crate) fn grid_floor(x: f64, ratio: f64, slack: f64) -> i32 {
    let mut k = (x.ln() / ratio.ln()).floor().max(0.0) as i32;
    while ratio.powi(k + 1) <= x * slack {
        k += 1;
    }
    while k > 0 && ratio.powi(k) > x * slack {
        k -= 1;
    }
    k
}

/// The four click-model families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Fixed,
    Proportional,
    Independent,
    Scenario,
}

impl ModelKind {
    pub const ALL: [ModelKind; 4] = [
        ModelKind::Fixed,
        ModelKind::Proportional,
        ModelKind::Independent,
        ModelKind::Scenario,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ModelKind::Fixed => "fixed",
            ModelKind::Proportional => "proportional",
            ModelKind::Independent => "independent",
            ModelKind::Scenario => "scenario",
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ModelKind {
    type Err = SboError;

    fn from_str(s: &str) -> Result<Self> {
        ModelKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| {
                SboError::Validation(format!(
                    "unknown model '{s}', expected one of fixed, proportional, independent, scenario"
                ))
            })
    }
}

/// One joint outcome of the scenario model.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub prob: f64,
    pub clicks: Vec<f64>,
}

impl Scenario {
    pub fn new(prob: f64, clicks: Vec<f64>) -> Self {
        Self { prob, clicks }
    }
}

/// Joint distribution of per-keyword click counts.
///
/// Fields are public for construction; [`ClickModel::validated`] (called by
/// `Instance::new`) enforces the invariants.
#[derive(Debug, Clone, PartialEq)]
pub enum ClickModel {
    /// Click counts known exactly.
    Fixed { clicks: Vec<f64> },
    /// `clicks_i = q_i * C` for one random total `C`.
    Proportional {
        q: Vec<f64>,
        total_clicks: DiscretePmf,
    },
    /// Mutually independent per-keyword distributions.
    Independent { pmfs: Vec<DiscretePmf> },
    /// Explicit joint outcomes with probabilities.
    Scenario { scenarios: Vec<Scenario> },
}

impl ClickModel {
    pub fn kind(&self) -> ModelKind {
        match self {
            ClickModel::Fixed { .. } => ModelKind::Fixed,
            ClickModel::Proportional { .. } => ModelKind::Proportional,
            ClickModel::Independent { .. } => ModelKind::Independent,
            ClickModel::Scenario { .. } => ModelKind::Scenario,
        }
    }

    /// Number of keywords the model describes, or `None` for a scenario
    /// model without scenarios.
    pub fn dimension(&self) -> Option<usize> {
        match self {
            ClickModel::Fixed { clicks } => Some(clicks.len()),
            ClickModel::Proportional { q, .. } => Some(q.len()),
            ClickModel::Independent { pmfs } => Some(pmfs.len()),
            ClickModel::Scenario { scenarios } => scenarios.first().map(|s| s.clicks.len()),
        }
    }

    /// Checks the model against `n` keywords and renormalizes share and
    /// scenario probability vectors that are within tolerance of summing to 1.
    pub fn validated(self, n: usize) -> Result<Self> {
        let check_len = |what: &'static str, found: usize| {
            if found == n {
                Ok(())
            } else {
                Err(SboError::Dimension {
                    what,
                    expected: n,
                    found,
                })
            }
        };
        match self {
            ClickModel::Fixed { clicks } => {
                check_len("fixed clicks", clicks.len())?;
                check_non_negative("clicks", &clicks)?;
                Ok(ClickModel::Fixed { clicks })
            }
            ClickModel::Proportional { q, total_clicks } => {
                check_len("click shares", q.len())?;
                check_non_negative("click share", &q)?;
                let q = renormalized("click shares", q)?;
                Ok(ClickModel::Proportional { q, total_clicks })
            }
            ClickModel::Independent { pmfs } => {
                check_len("independent pmfs", pmfs.len())?;
                Ok(ClickModel::Independent { pmfs })
            }
            ClickModel::Scenario { scenarios } => {
                if scenarios.is_empty() {
                    return Err(SboError::Validation(
                        "scenario model needs at least one scenario".into(),
                    ));
                }
                for s in &scenarios {
                    check_len("scenario clicks", s.clicks.len())?;
                    check_non_negative("scenario clicks", &s.clicks)?;
                    check_non_negative("scenario probability", &[s.prob])?;
                }
                let probs = renormalized(
                    "scenario probabilities",
                    scenarios.iter().map(|s| s.prob).collect(),
                )?;
                let scenarios = scenarios
                    .into_iter()
                    .zip(probs)
                    .map(|(s, prob)| Scenario { prob, ..s })
                    .collect();
                Ok(ClickModel::Scenario { scenarios })
            }
        }
    }

    /// Reorders keywords: position `k` of the result takes keyword `order[k]`.
    pub fn permuted(&self, order: &[usize]) -> ClickModel {
        let pick = |v: &[f64]| order.iter().map(|&i| v[i]).collect::<Vec<_>>();
        match self {
            ClickModel::Fixed { clicks } => ClickModel::Fixed {
                clicks: pick(clicks),
            },
            ClickModel::Proportional { q, total_clicks } => ClickModel::Proportional {
                q: pick(q),
                total_clicks: total_clicks.clone(),
            },
            ClickModel::Independent { pmfs } => ClickModel::Independent {
                pmfs: order.iter().map(|&i| pmfs[i].clone()).collect(),
            },
            ClickModel::Scenario { scenarios } => ClickModel::Scenario {
                scenarios: scenarios
                    .iter()
                    .map(|s| Scenario::new(s.prob, pick(&s.clicks)))
                    .collect(),
            },
        }
    }

    /// Number of support descriptors: 1 for fixed, `|support(C)|` for
    /// proportional, `sum_i |C_i|` for independent, `|scenarios|` otherwise.
    pub fn support_size(&self) -> usize {
        match self {
            ClickModel::Fixed { .. } => 1,
            ClickModel::Proportional { total_clicks, .. } => total_clicks.len(),
            ClickModel::Independent { pmfs } => pmfs.iter().map(DiscretePmf::len).sum(),
            ClickModel::Scenario { scenarios } => scenarios.len(),
        }
    }

    /// Size of the joint outcome space, saturating at `u128::MAX`.
    pub fn joint_support_size(&self) -> u128 {
        match self {
            ClickModel::Independent { pmfs } => pmfs
                .iter()
                .fold(1u128, |acc, p| acc.saturating_mul(p.len() as u128)),
            other => other.support_size() as u128,
        }
    }

    /// One realization drawn with a generator seeded by `seed`.
    pub fn sample(&self, seed: u64) -> ClickRealization {
        self.sample_with(&mut rng_from_seed(seed))
    }

    pub fn sample_with<R: Rng + ?Sized>(&self, rng: &mut R) -> ClickRealization {
        let clicks = match self {
            ClickModel::Fixed { clicks } => clicks.clone(),
            ClickModel::Proportional { q, total_clicks } => {
                let total = total_clicks.sample(rng);
                q.iter().map(|&share| share * total).collect()
            }
            ClickModel::Independent { pmfs } => pmfs.iter().map(|p| p.sample(rng)).collect(),
            ClickModel::Scenario { scenarios } => {
                let u: f64 = rng.gen();
                let mut acc = 0.0;
                let picked = scenarios
                    .iter()
                    .find(|s| {
                        acc += s.prob;
                        u < acc
                    })
                    .unwrap_or(&scenarios[scenarios.len() - 1]);
                picked.clicks.clone()
            }
        };
        ClickRealization::new_unchecked(clicks)
    }
}

fn check_non_negative(what: &str, values: &[f64]) -> Result<()> {
    match values.iter().find(|v| !v.is_finite() || **v < 0.0) {
        Some(bad) => Err(SboError::Validation(format!(
            "{what} {bad} must be finite and non-negative"
        ))),
        None => Ok(()),
    }
}

fn renormalized(what: &str, values: Vec<f64>) -> Result<Vec<f64>> {
    let total: f64 = values.iter().sum();
    if (total - 1.0).abs() > RENORMALIZE_TOLERANCE {
        return Err(SboError::Validation(format!(
            "{what} sum to {total}, expected 1"
        )));
    }
    if (total - 1.0).abs() <= UNIT_SUM_SLACK {
        return Ok(values);
    }
    Ok(values.into_iter().map(|v| v / total).collect())
}
