//! Optimizers for each click model.
//!
//! Prefix solutions (bid 1 on every keyword cheaper than some index, a
//! fraction at that index, nothing beyond) are optimal in the fixed and
//! proportional models and found exactly. In the independent model the best
//! integer prefix is within a factor 2 of the best integer solution; in the
//! scenario model no prefix guarantee exists and small instances are solved
//! by exhaustive search.
//!
//! All optimizers accept weighted and unsorted instances. Internally they
//! fold weights into the click counts and sort keywords by cpc; returned bids
//! are aligned with the caller's keyword order.

mod fixed;
mod independent;
mod prefix;
mod proportional;
mod scenario;

pub use fixed::{opt_fixed_fractional, opt_fixed_integer};
pub use independent::opt_independent_prefix;
pub use prefix::opt_prefix_search;
pub use proportional::{interior_stationary_point, opt_proportional_exact, opt_proportional_ptas};
pub use scenario::{
    bruteforce_cap, opt_scenario_bruteforce, opt_scenario_bruteforce_capped, BRUTEFORCE_CAP,
    BRUTEFORCE_CAP_ENV,
};

use std::cmp::Ordering;

use serde::Serialize;

use crate::error::Result;
use crate::eval::EvalReport;
use crate::model::{BidVector, Instance};

/// Bids 1 on keywords `1..istar`, `frac` on keyword `istar` (1-based), 0 after.
/// `istar == 0` is the empty solution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PrefixSolution {
    pub istar: usize,
    pub frac: f64,
}

impl PrefixSolution {
    /// Normalizes `frac == 0` to the integer prefix one keyword shorter.
    pub fn new(istar: usize, frac: f64) -> Self {
        debug_assert!((0.0..=1.0).contains(&frac));
        if istar == 0 || frac <= 0.0 {
            Self {
                istar: istar.saturating_sub(1),
                frac: 1.0,
            }
        } else {
            Self { istar, frac }
        }
    }

    pub fn integer(len: usize) -> Self {
        Self { istar: len, frac: 1.0 }
    }

    pub fn is_integer(&self) -> bool {
        self.frac == 1.0
    }

    pub fn to_bids(&self, n: usize) -> BidVector {
        let bids = (1..=n)
            .map(|i| match i.cmp(&self.istar) {
                Ordering::Less => 1.0,
                Ordering::Equal => self.frac,
                Ordering::Greater => 0.0,
            })
            .collect();
        BidVector::new(bids).expect("prefix bids lie in [0, 1]")
    }

    /// Recognizes a bid vector of prefix form.
    pub fn from_bids(bids: &BidVector) -> Option<Self> {
        let b = bids.as_slice();
        let full = b.iter().take_while(|&&x| x == 1.0).count();
        let (istar, frac) = match b.get(full) {
            Some(&x) if x > 0.0 => (full + 1, x),
            _ => (full, 1.0),
        };
        b[istar..].iter().all(|&x| x == 0.0).then(|| Self::new(istar, frac))
    }
}

/// Which optimizer produced an [`OptReport`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OptMethod {
    FixedFractional,
    FixedInteger,
    ProportionalExact,
    ProportionalPtas,
    IndependentPrefix,
    ScenarioBruteforce,
    PrefixSearch,
}

/// Quality guarantee of the returned solution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Guarantee {
    /// Optimal over fractional bids.
    Exact,
    /// Within a factor `1 + eps` of the fractional optimum.
    Ptas { eps: f64 },
    /// At least `OPT_integer / (2 (1 + eps))`.
    TwoApprox { eps: f64 },
    Heuristic,
    /// Optimal over integer bids.
    Exhaustive,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OptReport {
    pub bids: BidVector,
    pub value: EvalReport,
    pub method: OptMethod,
    pub guarantee: Guarantee,
    /// Prefix form of the solution, in the cpc order of the unweighted
    /// instance the optimizer worked on.
    pub prefix: Option<PrefixSolution>,
}

/// Two values count as tied when within this relative distance.
pub(crate) const TIE_TOLERANCE: f64 = 1e-12;

/// Total preference order: higher value, then fewer keywords bid on, then
/// the lexicographically smaller bid vector. Returns `true` when `a` is
/// strictly preferred to `b`.
pub(crate) fn preferred(a_value: f64, a_bids: &[f64], b_value: f64, b_bids: &[f64]) -> bool {
    let scale = a_value.abs().max(b_value.abs());
    if (a_value - b_value).abs() > TIE_TOLERANCE * scale {
        return a_value > b_value;
    }
    let support = |v: &[f64]| v.iter().filter(|&&x| x > 0.0).count();
    match support(a_bids).cmp(&support(b_bids)) {
        Ordering::Less => true,
        Ordering::Greater => false,
        Ordering::Equal => a_bids
            .iter()
            .zip(b_bids)
            .find(|(x, y)| x != y)
            .is_some_and(|(x, y)| x < y),
    }
}

/// Running best candidate under [`preferred`].
pub(crate) struct Best<T> {
    pub value: f64,
    pub bids: Vec<f64>,
    pub extra: T,
}

pub(crate) fn keep_best<T>(best: &mut Option<Best<T>>, value: f64, bids: Vec<f64>, extra: T) {
    let replace = match best {
        None => true,
        Some(cur) => preferred(value, &bids, cur.value, &cur.bids),
    };
    if replace {
        *best = Some(Best { value, bids, extra });
    }
}

/// Instance with weights folded in and keywords in cpc order, plus the map
/// back to the caller's order.
pub(crate) struct Prepared {
    pub work: Instance,
    order: Vec<usize>,
}

impl Prepared {
    pub fn new(instance: &Instance) -> Result<Self> {
        let (work, order) = if instance.is_weighted() {
            instance.apply_click_weights_with_order()?
        } else {
            let order = instance.canonical_order();
            (instance.permuted(&order), order)
        };
        Ok(Self { work, order })
    }

    pub fn report(
        &self,
        work_bids: BidVector,
        value: EvalReport,
        method: OptMethod,
        guarantee: Guarantee,
    ) -> OptReport {
        OptReport {
            prefix: PrefixSolution::from_bids(&work_bids),
            bids: work_bids.unpermuted(&self.order),
            value,
            method,
            guarantee,
        }
    }
}
