//! Problem representation and the per-realization objective.
//!
//! A bid vector `b` collects `clicks(b) = sum b_i * w_i * clicks_i` clicks at
//! a cost of `cost(b) = sum b_i * cpc_i * clicks_i`. When the cost exceeds the
//! budget the campaign stops early and only the fraction `B / cost(b)` of the
//! clicks is received:
//!
//! ```text
//! value(b) = clicks(b) / max(1, cost(b) / B)
//! ```

use serde::Serialize;

use crate::dist::ClickModel;
use crate::error::{Result, SboError};

/// A keyword with its threshold cost per click and per-click value.
#[derive(Debug, Clone, PartialEq)]
pub struct Keyword {
    pub id: String,
    pub cpc: f64,
    pub weight: f64,
}

impl Keyword {
    pub fn new(id: impl Into<String>, cpc: f64) -> Self {
        Self {
            id: id.into(),
            cpc,
            weight: 1.0,
        }
    }

    pub fn weighted(id: impl Into<String>, cpc: f64, weight: f64) -> Self {
        Self {
            id: id.into(),
            cpc,
            weight,
        }
    }
}

/// Keywords, budget and the click model over those keywords.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    keywords: Vec<Keyword>,
    budget: f64,
    model: ClickModel,
}

impl Instance {
    /// Validates and builds an instance. Keyword order is kept as given; see
    /// [`Instance::canonicalize`].
    pub fn new(keywords: Vec<Keyword>, budget: f64, model: ClickModel) -> Result<Self> {
        if keywords.is_empty() {
            return Err(SboError::Validation("instance needs at least one keyword".into()));
        }
        if !budget.is_finite() || budget <= 0.0 {
            return Err(SboError::Validation(format!(
                "budget must be positive, got {budget}"
            )));
        }
        for (index, kw) in keywords.iter().enumerate() {
            if !kw.cpc.is_finite() || kw.cpc < 0.0 {
                return Err(SboError::Validation(format!(
                    "keyword {index} has invalid cpc {}",
                    kw.cpc
                )));
            }
            if !kw.weight.is_finite() || kw.weight <= 0.0 {
                return Err(SboError::InvalidWeight {
                    index,
                    weight: kw.weight,
                });
            }
        }
        let model = model.validated(keywords.len())?;
        Ok(Self {
            keywords,
            budget,
            model,
        })
    }

    pub fn n(&self) -> usize {
        self.keywords.len()
    }

    pub fn keywords(&self) -> &[Keyword] {
        &self.keywords
    }

    pub fn budget(&self) -> f64 {
        self.budget
    }

    pub fn model(&self) -> &ClickModel {
        &self.model
    }

    pub fn cpc(&self, i: usize) -> f64 {
        self.keywords[i].cpc
    }

    pub fn weight(&self, i: usize) -> f64 {
        self.keywords[i].weight
    }

    pub fn is_weighted(&self) -> bool {
        self.keywords.iter().any(|k| k.weight != 1.0)
    }

    pub(crate) fn require(&self, kind: crate::dist::ModelKind) -> Result<()> {
        let found = self.model.kind();
        if found == kind {
            Ok(())
        } else {
            Err(SboError::ModelMismatch {
                expected: kind.name(),
                found: found.name(),
            })
        }
    }

    pub(crate) fn check_len(&self, what: &'static str, len: usize) -> Result<()> {
        if len == self.n() {
            Ok(())
        } else {
            Err(SboError::Dimension {
                what,
                expected: self.n(),
                found: len,
            })
        }
    }

    /// Indices sorted by non-decreasing cpc, stable on ties.
    pub fn canonical_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.n()).collect();
        order.sort_by(|&a, &b| self.keywords[a].cpc.total_cmp(&self.keywords[b].cpc));
        order
    }

    pub fn is_canonical(&self) -> bool {
        self.keywords.windows(2).all(|w| w[0].cpc <= w[1].cpc)
    }

    /// Copy with keywords sorted by non-decreasing cpc and the model permuted
    /// to match. Ties keep their input order.
    pub fn canonicalize(&self) -> Instance {
        self.permuted(&self.canonical_order())
    }

    /// Position `k` of the result holds keyword `order[k]` of `self`.
    pub fn permuted(&self, order: &[usize]) -> Instance {
        Instance {
            keywords: order.iter().map(|&i| self.keywords[i].clone()).collect(),
            budget: self.budget,
            model: self.model.permuted(order),
        }
    }

    pub fn with_model(&self, model: ClickModel) -> Result<Instance> {
        Instance::new(self.keywords.clone(), self.budget, model)
    }

    /// Folds click values into the click counts: `clicks'_i = w_i * clicks_i`,
    /// `cpc'_i = cpc_i / w_i`, all weights 1, then canonicalized.
    pub fn apply_click_weights(&self) -> Result<Instance> {
        Ok(self.apply_click_weights_with_order()?.0)
    }

    /// As [`Instance::apply_click_weights`], also returning for each position
    /// of the result the index of the keyword in `self` it came from.
    pub fn apply_click_weights_with_order(&self) -> Result<(Instance, Vec<usize>)> {
        for (index, kw) in self.keywords.iter().enumerate() {
            if !(kw.weight > 0.0) {
                return Err(SboError::InvalidWeight {
                    index,
                    weight: kw.weight,
                });
            }
        }
        let w: Vec<f64> = self.keywords.iter().map(|k| k.weight).collect();
        let scale = |v: &[f64]| v.iter().zip(&w).map(|(x, wi)| x * wi).collect::<Vec<_>>();
        let model = match &self.model {
            ClickModel::Fixed { clicks } => ClickModel::Fixed {
                clicks: scale(clicks),
            },
            ClickModel::Proportional { q, total_clicks } => {
                // clicks'_i = w_i q_i C = (w_i q_i / W) (W C)
                let weighted = scale(q);
                let total: f64 = weighted.iter().sum();
                ClickModel::Proportional {
                    q: weighted.iter().map(|x| x / total).collect(),
                    total_clicks: total_clicks.scaled(total),
                }
            }
            ClickModel::Independent { pmfs } => ClickModel::Independent {
                pmfs: pmfs.iter().zip(&w).map(|(p, &wi)| p.scaled(wi)).collect(),
            },
            ClickModel::Scenario { scenarios } => ClickModel::Scenario {
                scenarios: scenarios
                    .iter()
                    .map(|s| crate::dist::Scenario::new(s.prob, scale(&s.clicks)))
                    .collect(),
            },
        };
        let keywords = self
            .keywords
            .iter()
            .map(|k| Keyword::new(k.id.clone(), k.cpc / k.weight))
            .collect();
        let unweighted = Instance::new(keywords, self.budget, model)?;
        let order = unweighted.canonical_order();
        Ok((unweighted.permuted(&order), order))
    }
}

/// Fractional bids in `[0, 1]`, one per keyword.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct BidVector(Vec<f64>);

impl BidVector {
    pub fn new(bids: Vec<f64>) -> Result<Self> {
        if let Some(bad) = bids.iter().find(|b| !(0.0..=1.0).contains(*b)) {
            return Err(SboError::Validation(format!("bid {bad} outside [0, 1]")));
        }
        Ok(Self(bids))
    }

    pub fn zeros(n: usize) -> Self {
        Self(vec![0.0; n])
    }

    pub fn ones(n: usize) -> Self {
        Self(vec![1.0; n])
    }

    /// Integer bids with bit `i` of `mask` selecting keyword `i`.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        Self((0..n).map(|i| ((mask >> i) & 1) as f64).collect())
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of keywords with a positive bid.
    pub fn support(&self) -> usize {
        self.0.iter().filter(|&&b| b > 0.0).count()
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    /// Moves bids from positions of a permuted instance back to the original
    /// positions: entry `k` of `self` belongs to original keyword `order[k]`.
    pub fn unpermuted(&self, order: &[usize]) -> BidVector {
        let mut out = vec![0.0; self.0.len()];
        for (k, &i) in order.iter().enumerate() {
            out[i] = self.0[k];
        }
        BidVector(out)
    }
}

/// Click counts of one outcome, one per keyword.
#[derive(Debug, Clone, PartialEq)]
pub struct ClickRealization(Vec<f64>);

impl ClickRealization {
    pub fn new(clicks: Vec<f64>) -> Result<Self> {
        if let Some(bad) = clicks.iter().find(|c| !c.is_finite() || **c < 0.0) {
            return Err(SboError::Validation(format!(
                "click count {bad} must be finite and non-negative"
            )));
        }
        Ok(Self(clicks))
    }

    pub(crate) fn new_unchecked(clicks: Vec<f64>) -> Self {
        Self(clicks)
    }

    pub fn clicks(&self) -> &[f64] {
        &self.0
    }
}

/// Unweighted clicks and cost of `bids` in one outcome.
pub fn aggregate(
    bids: &BidVector,
    realization: &ClickRealization,
    instance: &Instance,
) -> Result<(f64, f64)> {
    instance.check_len("bids", bids.len())?;
    instance.check_len("realization", realization.0.len())?;
    let mut clicks = 0.0;
    let mut cost = 0.0;
    for ((b, c), kw) in bids.0.iter().zip(&realization.0).zip(&instance.keywords) {
        clicks += b * c;
        cost += b * kw.cpc * c;
    }
    Ok((clicks, cost))
}

/// Budget-scaled (weighted) clicks of `bids` in one outcome.
pub fn value(bids: &BidVector, realization: &ClickRealization, instance: &Instance) -> Result<f64> {
    instance.check_len("bids", bids.len())?;
    instance.check_len("realization", realization.0.len())?;
    Ok(outcome_value(
        bids.as_slice(),
        realization.clicks(),
        instance.keywords(),
        instance.budget(),
    ))
}

pub(crate) fn outcome_value(bids: &[f64], clicks: &[f64], keywords: &[Keyword], budget: f64) -> f64 {
    let mut gained = 0.0;
    let mut cost = 0.0;
    for ((b, c), kw) in bids.iter().zip(clicks).zip(keywords) {
        gained += b * kw.weight * c;
        cost += b * kw.cpc * c;
    }
    budget_scaled(gained, cost, budget)
}

/// `clicks / max(1, cost / budget)`.
#[inline]
pub(crate) fn budget_scaled(clicks: f64, cost: f64, budget: f64) -> f64 {
    clicks / (cost / budget).max(1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::{DiscretePmf, Scenario};
    use proptest::prelude::*;

    fn fixed(cpc: &[f64], clicks: &[f64], budget: f64) -> Instance {
        let kws = cpc
            .iter()
            .enumerate()
            .map(|(i, &c)| Keyword::new(format!("k{i}"), c))
            .collect();
        Instance::new(
            kws,
            budget,
            ClickModel::Fixed {
                clicks: clicks.to_vec(),
            },
        )
        .unwrap()
    }

    fn real(v: &[f64]) -> ClickRealization {
        ClickRealization::new(v.to_vec()).unwrap()
    }

    fn bids(v: &[f64]) -> BidVector {
        BidVector::new(v.to_vec()).unwrap()
    }

    #[test]
    fn canonicalize_sorts_with_model() {
        let inst = fixed(&[2.0, 1.0], &[5.0, 7.0], 10.0).canonicalize();
        assert_eq!(inst.keywords()[0].cpc, 1.0);
        assert_eq!(inst.keywords()[0].id, "k1");
        assert_eq!(inst.model(), &ClickModel::Fixed { clicks: vec![7.0, 5.0] });
    }

    #[test]
    fn canonicalize_identity_and_stable_ties() {
        let sorted = fixed(&[1.0, 2.0], &[1.0, 2.0], 1.0);
        assert_eq!(sorted.canonicalize(), sorted);
        let tie = fixed(&[1.0, 1.0], &[1.0, 2.0], 1.0).canonicalize();
        assert_eq!(tie.keywords()[0].id, "k0");
        assert_eq!(tie.keywords()[1].id, "k1");
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let err = Instance::new(
            vec![Keyword::new("a", 1.0)],
            1.0,
            ClickModel::Fixed {
                clicks: vec![1.0, 2.0],
            },
        )
        .unwrap_err();
        assert!(matches!(err, SboError::Dimension { .. }));
        let inst = fixed(&[1.0, 2.0], &[1.0, 1.0], 1.0);
        assert!(value(&bids(&[1.0]), &real(&[1.0, 1.0]), &inst).is_err());
    }

    #[test]
    fn aggregate_examples() {
        let inst = fixed(&[1.0, 2.0], &[10.0, 10.0], 30.0);
        let r = real(&[10.0, 10.0]);
        assert_eq!(aggregate(&bids(&[1.0, 1.0]), &r, &inst).unwrap(), (20.0, 30.0));
        assert_eq!(aggregate(&bids(&[0.0, 0.0]), &r, &inst).unwrap(), (0.0, 0.0));
        assert_eq!(aggregate(&bids(&[0.5, 0.0]), &r, &inst).unwrap(), (5.0, 5.0));
    }

    #[test]
    fn value_examples() {
        let r = real(&[10.0, 10.0]);
        let b = bids(&[1.0, 1.0]);
        assert_eq!(value(&b, &r, &fixed(&[1.0, 2.0], &[10.0, 10.0], 30.0)).unwrap(), 20.0);
        assert_eq!(value(&b, &r, &fixed(&[1.0, 2.0], &[10.0, 10.0], 15.0)).unwrap(), 10.0);
        let nonprefix = fixed(&[0.0, 1.0, 1.0], &[1.0, 1.0, 1.0], 1.0);
        assert_eq!(
            value(&bids(&[1.0, 0.0, 1.0]), &real(&[1.0, 1.0, 1.0]), &nonprefix).unwrap(),
            2.0
        );
    }

    #[test]
    fn free_and_empty_clicks() {
        let inst = fixed(&[0.0, 1.0], &[3.0, 0.0], 1.0);
        assert_eq!(value(&bids(&[1.0, 1.0]), &real(&[3.0, 0.0]), &inst).unwrap(), 3.0);
        assert_eq!(value(&bids(&[0.0, 1.0]), &real(&[3.0, 0.0]), &inst).unwrap(), 0.0);
    }

    #[test]
    fn bids_out_of_range_rejected() {
        assert!(BidVector::new(vec![1.5]).is_err());
        assert!(BidVector::new(vec![-0.1]).is_err());
    }

    #[test]
    fn click_weights_single_keyword() {
        let inst = Instance::new(
            vec![Keyword::weighted("a", 1.0, 2.0)],
            3.0,
            ClickModel::Fixed { clicks: vec![5.0] },
        )
        .unwrap();
        let t = inst.apply_click_weights().unwrap();
        assert_eq!(t.cpc(0), 0.5);
        assert_eq!(t.weight(0), 1.0);
        assert_eq!(t.model(), &ClickModel::Fixed { clicks: vec![10.0] });
    }

    #[test]
    fn click_weights_identity() {
        let inst = fixed(&[2.0, 1.0], &[5.0, 7.0], 10.0);
        assert_eq!(inst.apply_click_weights().unwrap(), inst.canonicalize());
    }

    #[test]
    fn click_weights_reject_zero() {
        let mut inst = fixed(&[1.0], &[1.0], 1.0);
        inst.keywords[0].weight = 0.0;
        assert!(matches!(
            inst.apply_click_weights(),
            Err(SboError::InvalidWeight { .. })
        ));
    }

    #[test]
    fn click_weights_proportional_scales_total() {
        let inst = Instance::new(
            vec![Keyword::weighted("a", 1.0, 2.0), Keyword::weighted("b", 3.0, 1.0)],
            5.0,
            ClickModel::Proportional {
                q: vec![0.5, 0.5],
                total_clicks: DiscretePmf::new([(10.0, 0.5), (20.0, 0.5)]).unwrap(),
            },
        )
        .unwrap();
        let t = inst.apply_click_weights().unwrap();
        let ClickModel::Proportional { q, total_clicks } = t.model() else {
            panic!("model kind changed");
        };
        // keyword a: 2 * 0.5 * C = 1.0 C; b: 0.5 C  ->  W = 1.5
        assert!((q[0] - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(total_clicks.points()[0].0, 15.0);
    }

    fn arb_case() -> impl Strategy<Value = (Vec<(f64, f64, f64, f64)>, f64)> {
        (
            prop::collection::vec((0.0f64..5.0, 0.1f64..4.0, 0.0f64..20.0, 0.0f64..=1.0), 1..7),
            0.5f64..50.0,
        )
    }

    proptest! {
        #[test]
        fn branch_forms_agree((rows, budget) in arb_case()) {
            let cpc: Vec<f64> = rows.iter().map(|r| r.0).collect();
            let clicks: Vec<f64> = rows.iter().map(|r| r.2).collect();
            let b: Vec<f64> = rows.iter().map(|r| r.3).collect();
            let inst = fixed(&cpc, &clicks, budget);
            let (cl, cost) = aggregate(&bids(&b), &real(&clicks), &inst).unwrap();
            let v = value(&bids(&b), &real(&clicks), &inst).unwrap();
            let alt = if cost > 0.0 { cl.min(budget * cl / cost) } else { cl };
            prop_assert!((v - alt).abs() <= 1e-12 * alt.max(1.0));
        }

        #[test]
        fn value_permutation_invariant((rows, budget) in arb_case(), seed in 0u64..1000) {
            let cpc: Vec<f64> = rows.iter().map(|r| r.0).collect();
            let clicks: Vec<f64> = rows.iter().map(|r| r.2).collect();
            let b: Vec<f64> = rows.iter().map(|r| r.3).collect();
            let inst = fixed(&cpc, &clicks, budget);
            let mut order: Vec<usize> = (0..cpc.len()).collect();
            order.rotate_left(seed as usize % cpc.len());
            let perm = inst.permuted(&order);
            let pb: Vec<f64> = order.iter().map(|&i| b[i]).collect();
            let pc: Vec<f64> = order.iter().map(|&i| clicks[i]).collect();
            let v1 = value(&bids(&b), &real(&clicks), &inst).unwrap();
            let v2 = value(&bids(&pb), &real(&pc), &perm).unwrap();
            prop_assert!((v1 - v2).abs() <= 1e-12 * v1.max(1.0));
        }

        #[test]
        fn canonicalize_idempotent((rows, budget) in arb_case()) {
            let cpc: Vec<f64> = rows.iter().map(|r| r.0).collect();
            let clicks: Vec<f64> = rows.iter().map(|r| r.2).collect();
            let once = fixed(&cpc, &clicks, budget).canonicalize();
            prop_assert!(once.is_canonical());
            prop_assert_eq!(once.canonicalize(), once);
        }

        #[test]
        fn weights_preserve_objective((rows, budget) in arb_case()) {
            let kws: Vec<Keyword> = rows
                .iter()
                .enumerate()
                .map(|(i, r)| Keyword::weighted(format!("k{i}"), r.0, r.1))
                .collect();
            let clicks: Vec<f64> = rows.iter().map(|r| r.2).collect();
            let b: Vec<f64> = rows.iter().map(|r| r.3).collect();
            let scen = ClickModel::Scenario { scenarios: vec![Scenario::new(1.0, clicks.clone())] };
            let inst = Instance::new(kws, budget, scen).unwrap();
            let (t, order) = inst.apply_click_weights_with_order().unwrap();
            let tb: Vec<f64> = order.iter().map(|&i| b[i]).collect();
            let ClickModel::Scenario { scenarios } = t.model() else { unreachable!() };
            let v1 = value(&bids(&b), &real(&clicks), &inst).unwrap();
            let v2 = value(&bids(&tb), &real(&scenarios[0].clicks), &t).unwrap();
            prop_assert!((v1 - v2).abs() <= 1e-9 * v1.max(1e-300));
        }
    }
}
