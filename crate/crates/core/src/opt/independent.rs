use crate::dist::ModelKind;
use crate::error::{Result, SboError};
use crate::eval::{eval_independent_ptas, EvalReport};
use crate::model::Instance;

use super::{keep_best, Best, Guarantee, OptMethod, OptReport, Prepared, PrefixSolution};

/// Best integer prefix in the independent model, each prefix scored with the
/// PTAS at `eps' = sqrt(1 + eps) - 1`.
///
/// Some integer prefix is worth at least half the best integer solution, and
/// the PTAS error composes to at most `1 + eps` across the comparison, so
/// the result is within `2 (1 + eps)` of the integer optimum.
pub fn opt_independent_prefix(instance: &Instance, eps: f64) -> Result<OptReport> {
    instance.require(ModelKind::Independent)?;
    if !(eps > 0.0 && eps <= 1.0) {
        return Err(SboError::Parameter(format!("epsilon must lie in (0, 1], got {eps}")));
    }
    let inner = (1.0 + eps).sqrt() - 1.0;
    let prep = Prepared::new(instance)?;
    let n = prep.work.n();

    let mut best: Option<Best<EvalReport>> = None;
    for len in 0..=n {
        let bids = PrefixSolution::integer(len).to_bids(n);
        let report = eval_independent_ptas(&bids, &prep.work, inner)?;
        keep_best(&mut best, report.value, bids.into_vec(), report);
    }
    let best = best.expect("n + 1 prefixes evaluated");
    let bids = crate::model::BidVector::new(best.bids)?;
    Ok(prep.report(
        bids,
        best.extra,
        OptMethod::IndependentPrefix,
        Guarantee::TwoApprox { eps },
    ))
}
