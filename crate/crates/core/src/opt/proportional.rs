//! Exact best prefix in the proportional model.
//!
//! A prefix is a point `x` in `[0, n]`: keywords `1..=floor(x)` at bid 1 and
//! the next one at `x - floor(x)`. The candidates are the integer prefixes,
//! for every outcome `c` of the total the prefix that spends exactly the
//! budget at `C = c`, and the stationary point of the objective inside each
//! interval between consecutive marked prefixes. Inside an interval the set
//! of outcomes that exceed the budget is fixed, so the objective there is a
//! linear term plus one rational term in the fractional bid.

use crate::dist::{ClickModel, DiscretePmf, ModelKind};
use crate::error::{Result, SboError};
use crate::eval::eval_proportional;
use crate::model::{BidVector, Instance};

use super::{keep_best, Best, Guarantee, OptMethod, OptReport, Prepared, PrefixSolution};

/// Root in `(lo, hi)` of the derivative of
///
/// ```text
/// g(b) = A (Q + b qi) + P B (Q + b qi) / (Cst + b qi cpci)
/// ```
///
/// `g'(b) = qi [A + P B (Cst - Q cpci) / (Cst + b qi cpci)^2]`, so a root
/// requires `A > 0`, `P > 0` and `Cst < Q cpci`, and satisfies
/// `(Cst + b qi cpci)^2 = -P B (Cst - Q cpci) / A`. Under those conditions
/// `g'` increases through zero, so the root is the minimum of `g` on the
/// interval.
#[allow(clippy::too_many_arguments)]
pub fn interior_stationary_point(
    a: f64,
    p: f64,
    budget: f64,
    q: f64,
    cst: f64,
    qi: f64,
    cpci: f64,
    lo: f64,
    hi: f64,
) -> Option<f64> {
    let slope = qi * cpci;
    if !(lo < hi) || slope <= 0.0 || a <= 0.0 || p <= 0.0 {
        return None;
    }
    let rhs = -p * budget * (cst - q * cpci) / a;
    if rhs <= 0.0 {
        return None;
    }
    let root = (rhs.sqrt() - cst) / slope;
    (root > lo && root < hi).then_some(root)
}

fn proportional_parts(instance: &Instance) -> (&[f64], &DiscretePmf) {
    match instance.model() {
        ClickModel::Proportional { q, total_clicks } => (q, total_clicks),
        _ => unreachable!("model kind checked by caller"),
    }
}

/// Candidate prefixes for an unweighted instance in cpc order.
fn candidates(work: &Instance) -> Vec<PrefixSolution> {
    let (q, pmf) = proportional_parts(work);
    let n = work.n();
    let budget = work.budget();
    let rate: Vec<f64> = (0..n).map(|i| q[i] * work.cpc(i)).collect();
    let mut cum = vec![0.0; n + 1];
    for i in 0..n {
        cum[i + 1] = cum[i] + rate[i];
    }

    let mut marked: Vec<f64> = (0..=n).map(|k| k as f64).collect();
    for c in pmf.values().filter(|&c| c > 0.0) {
        let target = budget / c;
        if target > cum[n] {
            continue;
        }
        let k = cum.partition_point(|&r| r < target);
        if k == 0 || rate[k - 1] <= 0.0 {
            continue;
        }
        let frac = ((target - cum[k - 1]) / rate[k - 1]).clamp(0.0, 1.0);
        marked.push((k - 1) as f64 + frac);
    }
    marked.sort_by(f64::total_cmp);
    marked.dedup();

    let mut out: Vec<PrefixSolution> = marked.iter().map(|&x| position_to_prefix(x, n)).collect();
    for pair in marked.windows(2) {
        let (x0, x1) = (pair[0], pair[1]);
        let seg = x0.floor() as usize;
        if seg >= n {
            continue;
        }
        let (lo, hi) = (x0 - seg as f64, (x1 - seg as f64).min(1.0));
        let mid = 0.5 * (lo + hi);
        let spend_rate = cum[seg] + mid * rate[seg];
        let (mut a, mut p) = (0.0, 0.0);
        for &(c, pc) in pmf.points() {
            if c * spend_rate > budget {
                p += pc;
            } else {
                a += c * pc;
            }
        }
        let q_before: f64 = q[..seg].iter().sum();
        if let Some(b) = interior_stationary_point(
            a,
            p,
            budget,
            q_before,
            cum[seg],
            q[seg],
            work.cpc(seg),
            lo,
            hi,
        ) {
            out.push(PrefixSolution::new(seg + 1, b));
        }
    }
    out
}

fn position_to_prefix(x: f64, n: usize) -> PrefixSolution {
    let whole = x.floor() as usize;
    if whole >= n {
        PrefixSolution::integer(n)
    } else {
        PrefixSolution::new(whole + 1, x - whole as f64)
    }
}

fn best_prefix(work: &Instance) -> Result<(BidVector, crate::eval::EvalReport)> {
    let mut best: Option<Best<crate::eval::EvalReport>> = None;
    for prefix in candidates(work) {
        let bids = prefix.to_bids(work.n());
        let report = eval_proportional(&bids, work)?;
        keep_best(&mut best, report.value, bids.into_vec(), report);
    }
    let best = best.expect("the empty prefix is always a candidate");
    Ok((BidVector::new(best.bids)?, best.extra))
}

/// Optimal fractional bids in the proportional model.
pub fn opt_proportional_exact(instance: &Instance) -> Result<OptReport> {
    instance.require(ModelKind::Proportional)?;
    let prep = Prepared::new(instance)?;
    let (bids, value) = best_prefix(&prep.work)?;
    Ok(prep.report(bids, value, OptMethod::ProportionalExact, Guarantee::Exact))
}

/// Buckets the total-click distribution onto powers of `1 + eps`, solves the
/// bucketed instance exactly and reports the chosen prefix evaluated on the
/// original instance. The value is at least `OPT / (1 + eps)`.
pub fn opt_proportional_ptas(instance: &Instance, eps: f64) -> Result<OptReport> {
    instance.require(ModelKind::Proportional)?;
    if !(eps > 0.0) || !eps.is_finite() {
        return Err(SboError::Parameter(format!("epsilon must be positive, got {eps}")));
    }
    let prep = Prepared::new(instance)?;
    let (q, pmf) = proportional_parts(&prep.work);
    let rounded = prep.work.with_model(ClickModel::Proportional {
        q: q.to_vec(),
        total_clicks: pmf.bucket(eps)?,
    })?;
    let (bids, _) = best_prefix(&rounded)?;
    let value = eval_proportional(&bids, &prep.work)?;
    Ok(prep.report(
        bids,
        value,
        OptMethod::ProportionalPtas,
        Guarantee::Ptas { eps },
    ))
}
