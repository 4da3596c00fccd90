//! Expected value of a bid vector under each click model.
//!
//! Fixed, scenario and proportional evaluation are exact and cheap. The
//! independent model has an exact evaluator that enumerates the joint
//! outcome space (usable only when that space is small) and a dynamic
//! programming approximation scheme that over-estimates by at most a factor
//! `1 + eps`. Monte Carlo works for every model and serves as a statistical
//! cross-check.

mod independent;
mod proportional;

pub use independent::{
    dp_cost_distribution, eval_independent_exact, eval_independent_exact_capped,
    eval_independent_ptas, CostDistributionTable, EXACT_ORACLE_CAP, EXPLICIT_SUPPORT_CAP,
};
pub use proportional::eval_proportional;

use serde::Serialize;

use crate::dist::{ClickModel, ModelKind, RNG_ALGORITHM};
use crate::error::{Result, SboError};
use crate::model::{outcome_value, BidVector, Instance};

/// How an [`EvalReport`] was produced.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum EvalMethod {
    Exact,
    Ptas {
        /// Whether the click distributions were bucketed before the DP.
        bucketed: bool,
    },
    MonteCarlo {
        samples: u64,
        seed: u64,
        rng: &'static str,
        std_error: f64,
    },
}

/// Expected value with certified (or, for Monte Carlo, statistical) bounds.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvalReport {
    pub value: f64,
    pub method: EvalMethod,
    /// Requested relative error; 0 for exact and sampled evaluations.
    pub epsilon: f64,
    pub lower: f64,
    pub upper: f64,
}

impl EvalReport {
    pub fn exact(value: f64) -> Self {
        Self {
            value,
            method: EvalMethod::Exact,
            epsilon: 0.0,
            lower: value,
            upper: value,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.method == EvalMethod::Exact
    }
}

pub fn eval_fixed(bids: &BidVector, instance: &Instance) -> Result<EvalReport> {
    instance.require(ModelKind::Fixed)?;
    instance.check_len("bids", bids.len())?;
    let ClickModel::Fixed { clicks } = instance.model() else {
        unreachable!()
    };
    Ok(EvalReport::exact(outcome_value(
        bids.as_slice(),
        clicks,
        instance.keywords(),
        instance.budget(),
    )))
}

/// `sum over scenarios of p(s) * value(bids, clicks^s)`.
pub fn eval_scenario(bids: &BidVector, instance: &Instance) -> Result<EvalReport> {
    instance.require(ModelKind::Scenario)?;
    instance.check_len("bids", bids.len())?;
    let ClickModel::Scenario { scenarios } = instance.model() else {
        unreachable!()
    };
    let value = scenarios
        .iter()
        .map(|s| {
            s.prob * outcome_value(bids.as_slice(), &s.clicks, instance.keywords(), instance.budget())
        })
        .sum();
    Ok(EvalReport::exact(value))
}

/// Exact evaluation with the model's exact evaluator. Independent instances
/// whose joint support exceeds [`EXACT_ORACLE_CAP`] fail with
/// [`SboError::OracleTooLarge`].
pub fn eval_exact(bids: &BidVector, instance: &Instance) -> Result<EvalReport> {
    match instance.model().kind() {
        ModelKind::Fixed => eval_fixed(bids, instance),
        ModelKind::Proportional => eval_proportional(bids, instance),
        ModelKind::Independent => eval_independent_exact(bids, instance),
        ModelKind::Scenario => eval_scenario(bids, instance),
    }
}

/// Exact where tractable, PTAS for independent instances above the oracle cap.
pub fn eval_auto(bids: &BidVector, instance: &Instance, eps: f64) -> Result<EvalReport> {
    match eval_exact(bids, instance) {
        Err(SboError::OracleTooLarge { .. }) => eval_independent_ptas(bids, instance, eps),
        other => other,
    }
}

/// Relative floor on the Monte Carlo half-width, so a zero-variance run
/// still covers closed-form values that differ only by rounding.
pub const MC_ROUNDING_SLACK: f64 = 1e-12;

/// Sample mean of the objective over `samples` seeded draws; bounds are
/// the mean plus or minus three standard errors (plus a rounding floor).
pub fn eval_monte_carlo(
    bids: &BidVector,
    instance: &Instance,
    samples: u64,
    seed: u64,
) -> Result<EvalReport> {
    if samples == 0 {
        return Err(SboError::Parameter("samples must be at least 1".into()));
    }
    instance.check_len("bids", bids.len())?;
    let mut rng = crate::dist::rng_from_seed(seed);
    let model = instance.model();
    let (mut mean, mut m2) = (0.0f64, 0.0f64);
    for k in 1..=samples {
        let draw = model.sample_with(&mut rng);
        let x = outcome_value(bids.as_slice(), draw.clicks(), instance.keywords(), instance.budget());
        let delta = x - mean;
        mean += delta / k as f64;
        m2 += delta * (x - mean);
    }
    let std_error = if samples > 1 {
        (m2 / (samples - 1) as f64 / samples as f64).sqrt()
    } else {
        f64::INFINITY
    };
    // zero-variance draws still differ from closed forms by rounding
    let half_width = 3.0 * std_error + MC_ROUNDING_SLACK * mean.abs();
    Ok(EvalReport {
        value: mean,
        method: EvalMethod::MonteCarlo {
            samples,
            seed,
            rng: RNG_ALGORITHM,
            std_error,
        },
        epsilon: 0.0,
        lower: (mean - half_width).max(0.0),
        upper: mean + half_width,
    })
}
