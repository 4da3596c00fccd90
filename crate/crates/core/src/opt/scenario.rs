use crate::dist::{ClickModel, ModelKind};
use crate::error::{Result, SboError};
use crate::eval::eval_scenario;
use crate::model::{budget_scaled, BidVector};
use crate::model::Instance;

use super::{Guarantee, OptMethod, OptReport, Prepared, TIE_TOLERANCE};

/// Default keyword cap for exhaustive search (about 4M candidates).
pub const BRUTEFORCE_CAP: usize = 22;

/// Environment variable overriding [`BRUTEFORCE_CAP`].
pub const BRUTEFORCE_CAP_ENV: &str = "SBO_BRUTEFORCE_CAP";

/// Cap in effect: `SBO_BRUTEFORCE_CAP` if set and parseable, else the default.
pub fn bruteforce_cap() -> usize {
    std::env::var(BRUTEFORCE_CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(BRUTEFORCE_CAP)
}

/// Best integer bid vector in the scenario model by enumerating all `2^n`
/// subsets, with the cap taken from [`bruteforce_cap`].
pub fn opt_scenario_bruteforce(instance: &Instance) -> Result<OptReport> {
    opt_scenario_bruteforce_capped(instance, bruteforce_cap())
}

pub fn opt_scenario_bruteforce_capped(instance: &Instance, cap: usize) -> Result<OptReport> {
    instance.require(ModelKind::Scenario)?;
    let n = instance.n();
    if n > cap || n >= 64 {
        return Err(SboError::SizeCap { n, cap: cap.min(63) });
    }
    let prep = Prepared::new(instance)?;
    let work = &prep.work;
    let ClickModel::Scenario { scenarios } = work.model() else {
        unreachable!()
    };

    let mut search = Search {
        probs: scenarios.iter().map(|s| s.prob).collect(),
        clicks: (0..n)
            .map(|i| scenarios.iter().map(|s| s.clicks[i]).collect())
            .collect(),
        cpc: (0..n).map(|i| work.cpc(i)).collect(),
        budget: work.budget(),
        gained: vec![vec![0.0; scenarios.len()]; n + 1],
        cost: vec![vec![0.0; scenarios.len()]; n + 1],
        best_value: f64::NEG_INFINITY,
        best_mask: 0,
    };
    search.descend(0, 0);

    let bids = BidVector::from_mask(n, search.best_mask);
    let value = eval_scenario(&bids, work)?;
    Ok(prep.report(bids, value, OptMethod::ScenarioBruteforce, Guarantee::Exhaustive))
}

/// Depth-first enumeration carrying per-scenario partial sums, so every
/// leaf costs `O(|scenarios|)` and no sum is ever formed by subtraction.
struct Search {
    probs: Vec<f64>,
    /// `clicks[i][s]`.
    clicks: Vec<Vec<f64>>,
    cpc: Vec<f64>,
    budget: f64,
    gained: Vec<Vec<f64>>,
    cost: Vec<Vec<f64>>,
    best_value: f64,
    best_mask: u64,
}

impl Search {
    fn descend(&mut self, depth: usize, mask: u64) {
        if depth == self.cpc.len() {
            let value = self.probs.iter().enumerate().fold(0.0, |acc, (s, p)| {
                acc + p * budget_scaled(self.gained[depth][s], self.cost[depth][s], self.budget)
            });
            if mask_preferred(value, mask, self.best_value, self.best_mask) {
                self.best_value = value;
                self.best_mask = mask;
            }
            return;
        }
        let (head, tail) = self.gained.split_at_mut(depth + 1);
        tail[0].copy_from_slice(&head[depth]);
        let (head, tail) = self.cost.split_at_mut(depth + 1);
        tail[0].copy_from_slice(&head[depth]);
        self.descend(depth + 1, mask);

        let cpc = self.cpc[depth];
        for s in 0..self.probs.len() {
            let c = self.clicks[depth][s];
            self.gained[depth + 1][s] = self.gained[depth][s] + c;
            self.cost[depth + 1][s] = self.cost[depth][s] + cpc * c;
        }
        self.descend(depth + 1, mask | (1 << depth));
    }
}

/// The shared preference order on bit masks (bit `i` is keyword `i`).
fn mask_preferred(a_value: f64, a: u64, b_value: f64, b: u64) -> bool {
    if b_value == f64::NEG_INFINITY {
        return true;
    }
    let scale = a_value.abs().max(b_value.abs());
    if (a_value - b_value).abs() > TIE_TOLERANCE * scale {
        return a_value > b_value;
    }
    match a.count_ones().cmp(&b.count_ones()) {
        std::cmp::Ordering::Less => true,
        std::cmp::Ordering::Greater => false,
        std::cmp::Ordering::Equal => {
            let diff = a ^ b;
            diff != 0 && a & (diff & diff.wrapping_neg()) == 0
        }
    }
}
