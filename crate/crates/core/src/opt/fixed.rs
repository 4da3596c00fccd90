use std::collections::BTreeMap;

use crate::dist::{ClickModel, ModelKind};
use crate::error::Result;
use crate::eval::eval_fixed;
use crate::model::{BidVector, Instance};

use super::{preferred, Guarantee, OptMethod, OptReport, Prepared, PrefixSolution};

/// Cost resolution of the integer DP, relative to the budget.
const INTEGER_RESOLUTION: f64 = 1e-6;

fn fixed_clicks(instance: &Instance) -> &[f64] {
    match instance.model() {
        ClickModel::Fixed { clicks } => clicks,
        _ => unreachable!("model kind checked by caller"),
    }
}

/// Optimal fractional bids for known click counts: fill keywords in cpc
/// order until the budget is spent, taking a fraction of the first keyword
/// that does not fit.
pub fn opt_fixed_fractional(instance: &Instance) -> Result<OptReport> {
    instance.require(ModelKind::Fixed)?;
    let prep = Prepared::new(instance)?;
    let work = &prep.work;
    let clicks = fixed_clicks(work);
    let budget = work.budget();

    let mut spent = 0.0;
    let mut prefix = PrefixSolution::integer(work.n());
    for (i, &c) in clicks.iter().enumerate() {
        let cost = work.cpc(i) * c;
        if spent + cost <= budget {
            spent += cost;
        } else {
            prefix = PrefixSolution::new(i + 1, (budget - spent) / cost);
            break;
        }
    }
    let bids = prefix.to_bids(work.n());
    let value = eval_fixed(&bids, work)?;
    Ok(prep.report(bids, value, OptMethod::FixedFractional, Guarantee::Exact))
}

#[derive(Clone)]
struct Subset {
    clicks: f64,
    bids: Vec<f64>,
}

/// Best integer bid vector for known click counts.
///
/// Costs are discretized at `1e-6 * B`; the DP keeps, for each reachable
/// cost level, the subset with the most clicks. All levels are then scored
/// with the objective, including over-budget ones.
pub fn opt_fixed_integer(instance: &Instance) -> Result<OptReport> {
    instance.require(ModelKind::Fixed)?;
    let prep = Prepared::new(instance)?;
    let work = &prep.work;
    let clicks = fixed_clicks(work);
    let n = work.n();
    let unit = work.budget() * INTEGER_RESOLUTION;

    let mut levels: BTreeMap<u64, Subset> = BTreeMap::new();
    levels.insert(
        0,
        Subset {
            clicks: 0.0,
            bids: vec![0.0; n],
        },
    );
    for (i, &c) in clicks.iter().enumerate() {
        let step = (work.cpc(i) * c / unit).round() as u64;
        let extended: Vec<(u64, Subset)> = levels
            .iter()
            .map(|(&level, s)| {
                let mut bids = s.bids.clone();
                bids[i] = 1.0;
                (
                    level + step,
                    Subset {
                        clicks: s.clicks + c,
                        bids,
                    },
                )
            })
            .collect();
        for (level, cand) in extended {
            match levels.get(&level) {
                Some(cur) if !preferred(cand.clicks, &cand.bids, cur.clicks, &cur.bids) => {}
                _ => {
                    levels.insert(level, cand);
                }
            }
        }
    }

    let mut best: Option<(f64, Vec<f64>)> = None;
    for subset in levels.into_values() {
        let bids = BidVector::new(subset.bids)?;
        let v = eval_fixed(&bids, work)?.value;
        let better = match &best {
            None => true,
            Some((bv, bb)) => preferred(v, bids.as_slice(), *bv, bb),
        };
        if better {
            best = Some((v, bids.into_vec()));
        }
    }
    let (_, bids) = best.expect("empty subset always present");
    let bids = BidVector::new(bids)?;
    let value = eval_fixed(&bids, work)?;
    Ok(prep.report(bids, value, OptMethod::FixedInteger, Guarantee::Exhaustive))
}
