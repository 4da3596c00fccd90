//! Named constructions and random instances.
//!
//! - [`gen_nonprefix_example`]: an independent-model instance where no
//!   prefix is optimal.
//! - [`gen_gap_example`]: a scenario family where the best prefix is a
//!   factor about `(c + 1) / 2` worse than the optimum.
//! - [`gen_clique_reduction`]: maps a graph and clique size `k` to a
//!   scenario instance and target value `V`; some integer bid vector reaches
//!   `V` exactly when the graph has a `k`-clique.
//! - [`gen_random`]: seeded random instances of any model.

mod graph;
mod random;

pub use graph::Graph;
pub use random::{gen_random, RandomConfig};

use serde::Serialize;

use crate::dist::{ClickModel, DiscretePmf, Scenario};
use crate::error::{Result, SboError};
use crate::model::{Instance, Keyword};

/// Three keywords, `cpc = (0, 1, 1)`, budget 1. Keywords 1 and 3 get one
/// click for sure, keyword 2 gets 0 or 1 with equal probability. Bidding on
/// keywords 1 and 3 always yields 2 clicks; the full prefix yields 1.75 in
/// expectation and no fractional prefix reaches 2.
pub fn gen_nonprefix_example() -> Instance {
    let sure = DiscretePmf::point(1.0).expect("valid point mass");
    let coin = DiscretePmf::new([(0.0, 0.5), (1.0, 0.5)]).expect("valid coin");
    Instance::new(
        vec![
            Keyword::new("k1", 0.0),
            Keyword::new("k2", 1.0),
            Keyword::new("k3", 1.0),
        ],
        1.0,
        ClickModel::Independent {
            pmfs: vec![sure.clone(), coin, sure],
        },
    )
    .expect("fixed construction is valid")
}

fn check_gap_params(n: usize, c: f64, budget: f64) -> Result<()> {
    if n == 0 {
        return Err(SboError::Parameter("gap instance needs n >= 1".into()));
    }
    if !(c > 1.0) || !c.is_finite() {
        return Err(SboError::Parameter(format!("gap ratio c must exceed 1, got {c}")));
    }
    if !(budget > 0.0) || !budget.is_finite() {
        return Err(SboError::Parameter(format!("budget must be positive, got {budget}")));
    }
    Ok(())
}

/// `1 / sum_{s=1..n} c^(2s-1)`, summed from the smallest term up.
pub fn gap_alpha(n: usize, c: f64) -> f64 {
    let total: f64 = (1..=n).map(|s| c.powi(2 * s as i32 - 1)).sum();
    1.0 / total
}

/// Value of bidding on every odd keyword of the gap instance: `n alpha B`.
pub fn gap_optimum(n: usize, c: f64, budget: f64) -> f64 {
    n as f64 * gap_alpha(n, c) * budget
}

/// Upper bound on any prefix of the gap instance:
/// `n alpha B (2 / (c + 1) + 1 / n)`.
pub fn gap_prefix_bound(n: usize, c: f64, budget: f64) -> f64 {
    gap_optimum(n, c, budget) * (2.0 / (c + 1.0) + 1.0 / n as f64)
}

/// `2n` keywords with `cpc_i = c^i`. Scenario `s` (1-based) has probability
/// `alpha c^(2s-1)` and gives keywords `2s-1` and `2s` each `B / c^(2s-1)`
/// clicks; nothing else gets clicks.
pub fn gen_gap_example(n: usize, c: f64, budget: f64) -> Result<Instance> {
    check_gap_params(n, c, budget)?;
    let alpha = gap_alpha(n, c);
    let keywords = (1..=2 * n)
        .map(|i| Keyword::new(format!("k{i}"), c.powi(i as i32)))
        .collect();
    let scenarios = (1..=n)
        .map(|s| {
            let scale = c.powi(2 * s as i32 - 1);
            let mut clicks = vec![0.0; 2 * n];
            clicks[2 * s - 2] = budget / scale;
            clicks[2 * s - 1] = budget / scale;
            Scenario::new(alpha * scale, clicks)
        })
        .collect();
    Instance::new(keywords, budget, ClickModel::Scenario { scenarios })
}

/// Constants chosen for a clique reduction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CliqueReductionParams {
    pub k: usize,
    /// cpc of the node keywords.
    pub epsilon: f64,
    /// Total probability of the node scenarios.
    pub delta: f64,
    /// `1 / (2m)`.
    pub alpha: f64,
    /// Clicks each edge keyword gets in a node scenario.
    pub t: f64,
    /// Budget `k (k - 1) / 2`.
    #[serde(rename = "K")]
    pub budget: f64,
    /// Target value.
    #[serde(rename = "V")]
    pub target: f64,
}

impl CliqueReductionParams {
    /// Deterministic choice for a graph with `n` nodes and `m` edges:
    /// `epsilon = 1 / (2 (k + 1))`; `delta` the largest power of 10 at most
    /// half the root of `(1 - delta) / 2 = k delta K / (n epsilon)`; `t` the
    /// smallest power of 2 with
    /// `(k + 1) (K / epsilon + alpha t) / (K + alpha t) < 1 / epsilon`.
    pub fn choose(n: usize, m: usize, k: usize) -> Result<Self> {
        if k < 2 || k > n {
            return Err(SboError::Parameter(format!(
                "clique size k must lie in [2, {n}], got {k}"
            )));
        }
        if m == 0 {
            return Err(SboError::Parameter("graph has no edges".into()));
        }
        let (nf, kf) = (n as f64, k as f64);
        let budget = kf * (kf - 1.0) / 2.0;
        let epsilon = 1.0 / (2.0 * (kf + 1.0));
        let alpha = 1.0 / (2.0 * m as f64);

        let root = 1.0 / (1.0 + 2.0 * kf * budget / (nf * epsilon));
        let mut delta = 10f64.powi((root / 2.0).log10().floor() as i32);
        while delta > root / 2.0 {
            delta /= 10.0;
        }
        while delta * 10.0 <= root / 2.0 {
            delta *= 10.0;
        }

        let t_ok = |t: f64| {
            (kf + 1.0) * (budget / epsilon + alpha * t) / (budget + alpha * t) < 1.0 / epsilon
        };
        let mut t = 1.0;
        while !t_ok(t) {
            t *= 2.0;
        }

        let target = (1.0 - delta) * budget + delta * (nf - kf) / nf * (budget / epsilon);
        let params = Self {
            k,
            epsilon,
            delta,
            alpha,
            t,
            budget,
            target,
        };
        params.check(n)?;
        Ok(params)
    }

    /// The three conditions the construction relies on.
    pub fn check(&self, n: usize) -> Result<()> {
        let kf = self.k as f64;
        let fail = |what: &str| Err(SboError::Parameter(format!("reduction parameters violate {what}")));
        if !(self.epsilon > 0.0 && self.epsilon < 1.0 / (kf + 1.0)) {
            return fail("epsilon < 1/(k+1)");
        }
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return fail("0 < delta < 1");
        }
        if (1.0 - self.delta) / 2.0 - kf * self.delta * self.budget / (n as f64 * self.epsilon) <= 0.0 {
            return fail("(1-delta)/2 > k delta K / (n epsilon)");
        }
        let lhs = (kf + 1.0) * (self.budget / self.epsilon + self.alpha * self.t)
            / (self.budget + self.alpha * self.t);
        if lhs >= 1.0 / self.epsilon {
            return fail("(k+1)(K/epsilon + alpha t)/(K + alpha t) < 1/epsilon");
        }
        Ok(())
    }
}

/// Output of [`gen_clique_reduction`].
#[derive(Debug, Clone)]
pub struct CliqueReduction {
    pub instance: Instance,
    pub target: f64,
    pub params: CliqueReductionParams,
}

/// Scenario instance whose best integer solution reaches `V` iff `graph`
/// has a clique on `k` nodes.
///
/// Keywords are the `n` nodes (cpc `epsilon`, ids `v<i>`) followed by the
/// `m` edges (cpc 1, ids `e<u>-<v>`); the budget is `K = k (k - 1) / 2`.
/// With probability `1 - delta` every edge keyword gets one click. With
/// probability `delta / n` each, node `i` gets `K / epsilon` clicks and every
/// edge at `i` gets `t` clicks.
pub fn gen_clique_reduction(graph: &Graph, k: usize) -> Result<CliqueReduction> {
    let n = graph.node_count();
    let m = graph.edges().len();
    let params = CliqueReductionParams::choose(n, m, k)?;

    let mut keywords: Vec<Keyword> = (1..=n)
        .map(|v| Keyword::new(format!("v{v}"), params.epsilon))
        .collect();
    keywords.extend(
        graph
            .edges()
            .iter()
            .map(|&(u, v)| Keyword::new(format!("e{u}-{v}"), 1.0)),
    );

    let mut base = vec![0.0; n + m];
    base[n..].fill(1.0);
    let mut scenarios = vec![Scenario::new(1.0 - params.delta, base)];
    for node in 1..=n {
        let mut clicks = vec![0.0; n + m];
        clicks[node - 1] = params.budget / params.epsilon;
        for (e, &(u, v)) in graph.edges().iter().enumerate() {
            if u == node || v == node {
                clicks[n + e] = params.t;
            }
        }
        scenarios.push(Scenario::new(params.delta / n as f64, clicks));
    }

    let instance = Instance::new(keywords, params.budget, ClickModel::Scenario { scenarios })?;
    Ok(CliqueReduction {
        instance,
        target: params.target,
        params,
    })
}
