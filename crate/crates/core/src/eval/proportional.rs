use crate::dist::{ClickModel, ModelKind};
use crate::error::Result;
use crate::model::{BidVector, Instance};

use super::EvalReport;

/// Exact expectation in the proportional model.
///
/// Both clicks and cost of `bids` scale linearly with the total `C`, so the
/// bid vector is under budget exactly for `C <= c* = B / sum b_i q_i cpc_i`.
/// Below the threshold it collects all its clicks, above it the budget buys
/// clicks at the fixed average price `cpc(b)`.
pub fn eval_proportional(bids: &BidVector, instance: &Instance) -> Result<EvalReport> {
    instance.require(ModelKind::Proportional)?;
    instance.check_len("bids", bids.len())?;
    let ClickModel::Proportional { q, total_clicks } = instance.model() else {
        unreachable!()
    };
    let (share, cost_rate) = rates(bids.as_slice(), q, instance);
    Ok(EvalReport::exact(expected_value(
        share,
        cost_rate,
        instance.budget(),
        total_clicks,
    )))
}

/// `(sum b_i w_i q_i, sum b_i q_i cpc_i)`: clicks and cost per unit of `C`.
pub(crate) fn rates(bids: &[f64], q: &[f64], instance: &Instance) -> (f64, f64) {
    let mut share = 0.0;
    let mut cost_rate = 0.0;
    for (i, (b, qi)) in bids.iter().zip(q).enumerate() {
        share += b * instance.weight(i) * qi;
        cost_rate += b * qi * instance.cpc(i);
    }
    (share, cost_rate)
}

pub(crate) fn expected_value(
    share: f64,
    cost_rate: f64,
    budget: f64,
    total_clicks: &crate::dist::DiscretePmf,
) -> f64 {
    if cost_rate <= 0.0 {
        return share * total_clicks.mean();
    }
    let threshold = budget / cost_rate;
    share * total_clicks.partial_expectation(threshold)
        + budget * (share / cost_rate) * total_clicks.tail_prob(threshold)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::DiscretePmf;
    use crate::model::Keyword;

    fn two_keyword(budget: f64) -> Instance {
        Instance::new(
            vec![Keyword::new("a", 1.0), Keyword::new("b", 1.0)],
            budget,
            ClickModel::Proportional {
                q: vec![0.5, 0.5],
                total_clicks: DiscretePmf::new([(10.0, 0.5), (30.0, 0.5)]).unwrap(),
            },
        )
        .unwrap()
    }

    #[test]
    fn threshold_examples() {
        let inst = two_keyword(20.0);
        let full = BidVector::new(vec![1.0, 1.0]).unwrap();
        let half = BidVector::new(vec![1.0, 0.0]).unwrap();
        assert_eq!(eval_proportional(&full, &inst).unwrap().value, 15.0);
        assert_eq!(eval_proportional(&half, &inst).unwrap().value, 10.0);
    }

    #[test]
    fn slack_budget_is_linear() {
        let inst = two_keyword(1000.0);
        let bids = BidVector::new(vec![0.4, 1.0]).unwrap();
        let v = eval_proportional(&bids, &inst).unwrap().value;
        assert!((v - 20.0 * 0.7).abs() < 1e-12);
    }

    #[test]
    fn free_clicks_never_budget_limited() {
        let inst = Instance::new(
            vec![Keyword::new("a", 0.0)],
            1.0,
            ClickModel::Proportional {
                q: vec![1.0],
                total_clicks: DiscretePmf::new([(5.0, 0.5), (500.0, 0.5)]).unwrap(),
            },
        )
        .unwrap();
        let v = eval_proportional(&BidVector::ones(1), &inst).unwrap().value;
        assert_eq!(v, 252.5);
    }
}
