use crate::dist::ModelKind;
use crate::error::Result;
use crate::eval::{eval_exact, EvalReport};
use crate::model::{BidVector, Instance};

use super::{
    keep_best, opt_fixed_fractional, opt_independent_prefix, opt_proportional_exact, Best,
    Guarantee, OptMethod, OptReport, Prepared, PrefixSolution,
};

/// Grid resolution for the fractional bid at each prefix end.
const FRAC_GRID: usize = 1000;
/// Golden-section iterations around the best grid point.
const GOLDEN_ITERS: usize = 60;

/// Best prefix found by enumeration, for any model.
///
/// Integer prefixes are always scored. For fixed, proportional and scenario
/// instances the fractional bid at every prefix end is swept on a 1001-point
/// grid and refined by golden-section search around the best grid point; the
/// objective need not be concave in it, which the grid guards against.
/// Fixed and proportional instances also score the exact optimizer's prefix,
/// so the result is exact there. Independent instances use the PTAS-scored
/// integer prefix enumeration.
pub fn opt_prefix_search(instance: &Instance, eps: f64) -> Result<OptReport> {
    let kind = instance.model().kind();
    if kind == ModelKind::Independent {
        let mut report = opt_independent_prefix(instance, eps)?;
        report.method = OptMethod::PrefixSearch;
        return Ok(report);
    }

    let prep = Prepared::new(instance)?;
    let work = &prep.work;
    let n = work.n();
    let score = |prefix: PrefixSolution| -> Result<(BidVector, EvalReport)> {
        let bids = prefix.to_bids(n);
        let report = eval_exact(&bids, work)?;
        Ok((bids, report))
    };

    let mut best: Option<Best<EvalReport>> = None;
    let mut offer = |bids: BidVector, report: EvalReport| {
        keep_best(&mut best, report.value, bids.into_vec(), report);
    };

    for len in 0..=n {
        let (bids, report) = score(PrefixSolution::integer(len))?;
        offer(bids, report);
    }
    for istar in 1..=n {
        let at = |frac: f64| score(PrefixSolution::new(istar, frac)).map(|(_, r)| r.value);
        let mut grid_best = (0.0, f64::NEG_INFINITY);
        for k in 1..=FRAC_GRID {
            let frac = k as f64 / FRAC_GRID as f64;
            let v = at(frac)?;
            if v > grid_best.1 {
                grid_best = (frac, v);
            }
        }
        let step = 1.0 / FRAC_GRID as f64;
        let lo = (grid_best.0 - step).max(0.0);
        let hi = (grid_best.0 + step).min(1.0);
        for frac in [grid_best.0, golden_max(&at, lo, hi)?] {
            if frac > 0.0 {
                let (bids, report) = score(PrefixSolution::new(istar, frac))?;
                offer(bids, report);
            }
        }
    }

    let exact = match kind {
        ModelKind::Fixed => Some(opt_fixed_fractional(work)?),
        ModelKind::Proportional => Some(opt_proportional_exact(work)?),
        _ => None,
    };
    let guarantee = if exact.is_some() {
        Guarantee::Exact
    } else {
        Guarantee::Heuristic
    };
    if let Some(r) = exact {
        offer(r.bids, r.value);
    }

    let best = best.expect("integer prefixes always scored");
    let bids = BidVector::new(best.bids)?;
    Ok(prep.report(bids, best.extra, OptMethod::PrefixSearch, guarantee))
}

/// Golden-section search for a maximizer of `f` on `[lo, hi]`.
fn golden_max(f: &impl Fn(f64) -> Result<f64>, mut lo: f64, mut hi: f64) -> Result<f64> {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let (mut f1, mut f2) = (f(x1)?, f(x2)?);
    for _ in 0..GOLDEN_ITERS {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2)?;
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1)?;
        }
    }
    Ok(if f1 >= f2 { x1 } else { x2 })
}
