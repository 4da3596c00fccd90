use std::collections::BTreeSet;

use rand::Rng;

use crate::dist::{rng_from_seed, ClickModel, DiscretePmf, ModelKind, Scenario, SboRng};
use crate::error::{Result, SboError};
use crate::model::{Instance, Keyword};

/// Bounds for [`gen_random`]. Click counts are integers in
/// `0..=max_clicks`; the budget is the expected total cost divided by a
/// log-uniform ratio drawn from `budget_ratio`.
#[derive(Debug, Clone, PartialEq)]
pub struct RandomConfig {
    pub cpc_range: (f64, f64),
    /// Maximum support size of each generated pmf.
    pub max_support: usize,
    pub max_clicks: u32,
    pub scenario_count: usize,
    pub weight_range: (f64, f64),
    pub budget_ratio: (f64, f64),
}

impl Default for RandomConfig {
    fn default() -> Self {
        Self {
            cpc_range: (0.5, 5.0),
            max_support: 4,
            max_clicks: 20,
            scenario_count: 4,
            weight_range: (1.0, 1.0),
            budget_ratio: (0.2, 5.0),
        }
    }
}

impl RandomConfig {
    fn check(&self) -> Result<()> {
        let range = |what: &str, (lo, hi): (f64, f64), allow_zero: bool| {
            let ok = lo.is_finite() && hi.is_finite() && lo <= hi && (lo > 0.0 || allow_zero && lo == 0.0);
            if ok {
                Ok(())
            } else {
                Err(SboError::Parameter(format!("bad {what} range ({lo}, {hi})")))
            }
        };
        range("cpc", self.cpc_range, true)?;
        range("weight", self.weight_range, false)?;
        range("budget ratio", self.budget_ratio, false)?;
        if self.max_support == 0 || self.max_clicks == 0 || self.scenario_count == 0 {
            return Err(SboError::Parameter(
                "max_support, max_clicks and scenario_count must be positive".into(),
            ));
        }
        Ok(())
    }
}

fn uniform(rng: &mut SboRng, (lo, hi): (f64, f64)) -> f64 {
    if lo == hi {
        lo
    } else {
        rng.gen_range(lo..hi)
    }
}

/// Random pmf over distinct integers in `0..=max_value`.
fn random_pmf(rng: &mut SboRng, max_support: usize, max_value: u32) -> DiscretePmf {
    let size = rng.gen_range(1..=max_support.min(max_value as usize + 1));
    let mut values = BTreeSet::new();
    while values.len() < size {
        values.insert(rng.gen_range(0..=max_value));
    }
    let weights: Vec<f64> = values.iter().map(|_| rng.gen_range(0.05..1.0)).collect();
    let total: f64 = weights.iter().sum();
    DiscretePmf::new(values.into_iter().zip(weights).map(|(v, w)| (v as f64, w / total)))
        .expect("normalized by construction")
}

/// Seeded random instance of the requested model, canonicalized.
pub fn gen_random(kind: ModelKind, n: usize, seed: u64, config: &RandomConfig) -> Result<Instance> {
    if n == 0 {
        return Err(SboError::Parameter("n must be at least 1".into()));
    }
    config.check()?;
    let mut rng = rng_from_seed(seed);
    let keywords: Vec<Keyword> = (1..=n)
        .map(|i| {
            let cpc = uniform(&mut rng, config.cpc_range);
            let weight = uniform(&mut rng, config.weight_range);
            Keyword::weighted(format!("k{i}"), cpc, weight)
        })
        .collect();
    let mc = config.max_clicks;

    let (model, mean_clicks): (ClickModel, Vec<f64>) = match kind {
        ModelKind::Fixed => {
            let clicks: Vec<f64> = (0..n).map(|_| rng.gen_range(0..=mc) as f64).collect();
            (ClickModel::Fixed { clicks: clicks.clone() }, clicks)
        }
        ModelKind::Proportional => {
            let raw: Vec<f64> = (0..n).map(|_| rng.gen_range(0.05..1.0)).collect();
            let total: f64 = raw.iter().sum();
            let q: Vec<f64> = raw.iter().map(|x| x / total).collect();
            let pmf = random_pmf(&mut rng, config.max_support, mc * n as u32);
            let mean = pmf.mean();
            let means = q.iter().map(|s| s * mean).collect();
            (ClickModel::Proportional { q, total_clicks: pmf }, means)
        }
        ModelKind::Independent => {
            let pmfs: Vec<DiscretePmf> = (0..n)
                .map(|_| random_pmf(&mut rng, config.max_support, mc))
                .collect();
            let means = pmfs.iter().map(DiscretePmf::mean).collect();
            (ClickModel::Independent { pmfs }, means)
        }
        ModelKind::Scenario => {
            let raw: Vec<f64> = (0..config.scenario_count)
                .map(|_| rng.gen_range(0.05..1.0))
                .collect();
            let total: f64 = raw.iter().sum();
            let scenarios: Vec<Scenario> = raw
                .iter()
                .map(|w| {
                    let clicks = (0..n).map(|_| rng.gen_range(0..=mc) as f64).collect();
                    Scenario::new(w / total, clicks)
                })
                .collect();
            let means = (0..n)
                .map(|i| scenarios.iter().map(|s| s.prob * s.clicks[i]).sum())
                .collect();
            (ClickModel::Scenario { scenarios }, means)
        }
    };

    let expected_cost: f64 = keywords
        .iter()
        .zip(&mean_clicks)
        .map(|(k, m)| k.cpc * m)
        .sum();
    let (lo, hi) = config.budget_ratio;
    let ratio = uniform(&mut rng, (lo.ln(), hi.ln())).exp();
    let budget = if expected_cost > 0.0 {
        expected_cost / ratio
    } else {
        1.0
    };
    Ok(Instance::new(keywords, budget, model)?.canonicalize())
}
