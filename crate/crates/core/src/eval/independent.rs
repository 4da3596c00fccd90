//! Evaluation in the independent model.
//!
//! The approximation rests on the decomposition
//!
//! ```text
//! E[value(b)] = sum_i sum_c p_i(c) * b_i * w_i * c * s(i, c)
//! s(i, c)     = E[ 1 / max(1, (cost(b_-i) + b_i * cpc_i * c) / B) ]
//! ```
//!
//! where `cost(b_-i)` is the cost of every keyword except `i`. Its
//! distribution is built by a convolution DP whose cost axis is restricted to
//! `0` and the powers of `1 + eps/n`; every partial sum is rounded down onto
//! that grid, so each estimated cost is within a factor `1 + eps` below the
//! true one and `s` is over-estimated by at most that factor.

use std::borrow::Cow;
use std::collections::BTreeMap;

use crate::dist::{grid_floor, ClickModel, DiscretePmf, ModelKind};
use crate::error::{Result, SboError};
use crate::model::{budget_scaled, BidVector, Instance};

use super::{EvalMethod, EvalReport};

/// Default limit on the joint outcome count for exact enumeration.
pub const EXACT_ORACLE_CAP: u128 = 1_000_000;

/// Above this many total support points the click distributions are bucketed
/// before the DP runs.
pub const EXPLICIT_SUPPORT_CAP: usize = 10_000;

/// Exact expectation by enumerating every joint outcome of the keywords with
/// a positive bid.
pub fn eval_independent_exact(bids: &BidVector, instance: &Instance) -> Result<EvalReport> {
    eval_independent_exact_capped(bids, instance, EXACT_ORACLE_CAP)
}

pub fn eval_independent_exact_capped(
    bids: &BidVector,
    instance: &Instance,
    cap: u128,
) -> Result<EvalReport> {
    instance.require(ModelKind::Independent)?;
    instance.check_len("bids", bids.len())?;
    let pmfs = independent_pmfs(instance);
    let active: Vec<usize> = (0..instance.n())
        .filter(|&i| bids.as_slice()[i] > 0.0)
        .collect();
    let size = active
        .iter()
        .fold(1u128, |acc, &i| acc.saturating_mul(pmfs[i].len() as u128));
    if size > cap {
        return Err(SboError::OracleTooLarge { size, cap });
    }
    let terms: Vec<Vec<(f64, f64, f64)>> = active
        .iter()
        .map(|&i| {
            let b = bids.as_slice()[i];
            pmfs[i]
                .points()
                .iter()
                .map(|&(c, p)| (p, b * instance.weight(i) * c, b * instance.cpc(i) * c))
                .collect()
        })
        .collect();
    let mut total = 0.0;
    enumerate(&terms, 1.0, 0.0, 0.0, instance.budget(), &mut total);
    Ok(EvalReport::exact(total))
}

fn enumerate(
    terms: &[Vec<(f64, f64, f64)>],
    prob: f64,
    clicks: f64,
    cost: f64,
    budget: f64,
    total: &mut f64,
) {
    match terms.split_first() {
        None => *total += prob * budget_scaled(clicks, cost, budget),
        Some((head, rest)) => {
            for &(p, dc, dk) in head {
                enumerate(rest, prob * p, clicks + dc, cost + dk, budget, total);
            }
        }
    }
}

fn independent_pmfs(instance: &Instance) -> &[DiscretePmf] {
    match instance.model() {
        ClickModel::Independent { pmfs } => pmfs,
        _ => unreachable!("model kind checked by caller"),
    }
}

/// Cost level on the DP grid: `None` is cost 0, `Some(k)` is `unit * ratio^k`.
pub type CostLevel = Option<i32>;

/// Approximate distribution of the cost of all keywords but one.
///
/// Row `j` holds the distribution after the first `j` keywords other than
/// the excluded one; row 0 is unit mass at cost 0. Only reachable levels are
/// stored, sorted by cost.
#[derive(Debug, Clone, PartialEq)]
pub struct CostDistributionTable {
    excluded: usize,
    unit: f64,
    ratio: f64,
    rows: Vec<Vec<(CostLevel, f64)>>,
}

impl CostDistributionTable {
    pub fn excluded(&self) -> usize {
        self.excluded
    }

    /// Original-money value of one scaled cost unit (the smallest positive
    /// per-outcome cost among the included keywords).
    pub fn unit(&self) -> f64 {
        self.unit
    }

    /// Grid ratio `1 + eps/n`.
    pub fn ratio(&self) -> f64 {
        self.ratio
    }

    pub fn rows(&self) -> &[Vec<(CostLevel, f64)>] {
        &self.rows
    }

    pub fn final_row(&self) -> &[(CostLevel, f64)] {
        &self.rows[self.rows.len() - 1]
    }

    pub fn level_cost(&self, level: CostLevel) -> f64 {
        match level {
            None => 0.0,
            Some(k) => self.unit * self.ratio.powi(k),
        }
    }

    /// Final row as `(cost, probability)` pairs in original money units.
    pub fn final_costs(&self) -> Vec<(f64, f64)> {
        self.final_row()
            .iter()
            .map(|&(lvl, p)| (self.level_cost(lvl), p))
            .collect()
    }

    /// Largest number of stored levels in any row.
    pub fn column_count(&self) -> usize {
        self.rows.iter().map(Vec::len).max().unwrap_or(0)
    }
}

/// Builds the rounded-down distribution of `cost(b_-exclude)`.
pub fn dp_cost_distribution(
    bids: &BidVector,
    instance: &Instance,
    exclude: usize,
    eps: f64,
) -> Result<CostDistributionTable> {
    instance.require(ModelKind::Independent)?;
    instance.check_len("bids", bids.len())?;
    check_eps(eps)?;
    if exclude >= instance.n() {
        return Err(SboError::Parameter(format!(
            "excluded keyword {exclude} out of range for {} keywords",
            instance.n()
        )));
    }
    Ok(build_table(
        bids.as_slice(),
        independent_pmfs(instance),
        instance,
        exclude,
        eps,
    ))
}

fn build_table(
    bids: &[f64],
    pmfs: &[DiscretePmf],
    instance: &Instance,
    exclude: usize,
    eps: f64,
) -> CostDistributionTable {
    let n = instance.n();
    let ratio = 1.0 + eps / n as f64;
    let others: Vec<usize> = (0..n).filter(|&j| j != exclude).collect();
    let unit = others
        .iter()
        .flat_map(|&j| {
            let rate = bids[j] * instance.cpc(j);
            pmfs[j].values().map(move |c| rate * c)
        })
        .filter(|&x| x > 0.0)
        .fold(f64::INFINITY, f64::min);
    let unit = if unit.is_finite() { unit } else { 1.0 };

    let mut rows: Vec<Vec<(CostLevel, f64)>> = Vec::with_capacity(others.len() + 1);
    rows.push(vec![(None, 1.0)]);
    for &j in &others {
        let rate = bids[j] * instance.cpc(j) / unit;
        let steps: Vec<(f64, f64)> = pmfs[j].points().iter().map(|&(c, p)| (rate * c, p)).collect();
        let mut next: BTreeMap<CostLevel, f64> = BTreeMap::new();
        for &(level, p) in &rows[rows.len() - 1] {
            let base = match level {
                None => 0.0,
                Some(k) => ratio.powi(k),
            };
            for &(add, q) in &steps {
                let x = base + add;
                let key = if x > 0.0 {
                    Some(grid_floor(x, ratio, 1.0))
                } else {
                    None
                };
                *next.entry(key).or_insert(0.0) += p * q;
            }
        }
        rows.push(next.into_iter().collect());
    }
    CostDistributionTable {
        excluded: exclude,
        unit,
        ratio,
        rows,
    }
}

fn check_eps(eps: f64) -> Result<()> {
    if eps > 0.0 && eps.is_finite() {
        Ok(())
    } else {
        Err(SboError::Parameter(format!("epsilon must be positive, got {eps}")))
    }
}

/// Approximate expectation `V'` with `E[value] <= V' <= (1 + eps) E[value]`.
///
/// When the total support exceeds [`EXPLICIT_SUPPORT_CAP`] the distributions
/// are first bucketed with `eps' = sqrt(1 + eps) - 1` and the DP runs with
/// `eps'`; the reported interval then widens to
/// `[V' / (1 + eps), V' * sqrt(1 + eps)]`.
pub fn eval_independent_ptas(bids: &BidVector, instance: &Instance, eps: f64) -> Result<EvalReport> {
    instance.require(ModelKind::Independent)?;
    instance.check_len("bids", bids.len())?;
    check_eps(eps)?;
    let original = independent_pmfs(instance);
    let bucketed = instance.model().support_size() > EXPLICIT_SUPPORT_CAP;
    let (pmfs, dp_eps): (Cow<'_, [DiscretePmf]>, f64) = if bucketed {
        let inner = (1.0 + eps).sqrt() - 1.0;
        let rounded = original
            .iter()
            .map(|p| p.bucket(inner))
            .collect::<Result<Vec<_>>>()?;
        (Cow::Owned(rounded), inner)
    } else {
        (Cow::Borrowed(original), eps)
    };
    let value = ptas_value(bids.as_slice(), &pmfs, instance, dp_eps);
    let upper = if bucketed {
        value * (1.0 + eps).sqrt()
    } else {
        value
    };
    Ok(EvalReport {
        value,
        method: EvalMethod::Ptas { bucketed },
        epsilon: eps,
        lower: value / (1.0 + eps),
        upper,
    })
}

fn ptas_value(bids: &[f64], pmfs: &[DiscretePmf], instance: &Instance, eps: f64) -> f64 {
    let budget = instance.budget();
    let mut total = 0.0;
    for (i, &b) in bids.iter().enumerate() {
        if b <= 0.0 || pmfs[i].max_value() <= 0.0 {
            continue;
        }
        let others = build_table(bids, pmfs, instance, i, eps).final_costs();
        for &(c, p) in pmfs[i].points() {
            if c <= 0.0 {
                continue;
            }
            let own = b * instance.cpc(i) * c;
            let scale: f64 = others
                .iter()
                .map(|&(d, pd)| pd / ((d + own) / budget).max(1.0))
                .sum();
            total += p * b * instance.weight(i) * c * scale;
        }
    }
    total
}
