//! Brute-force oracles shared by the integration tests. None of them call
//! into the evaluators they are used to check.

#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::Rng;
use sbo::dist::rng_from_seed;
use sbo::gen::Graph;
use sbo::{BidVector, ClickModel, Instance, PrefixSolution};

/// `sum b w clicks / max(1, sum b cpc clicks / B)` written out directly.
pub fn objective(bids: &[f64], clicks: &[f64], inst: &Instance) -> f64 {
    let mut gained = 0.0;
    let mut cost = 0.0;
    for (i, (&b, &c)) in bids.iter().zip(clicks).enumerate() {
        gained += b * inst.weight(i) * c;
        cost += b * inst.cpc(i) * c;
    }
    if cost > inst.budget() {
        gained * inst.budget() / cost
    } else {
        gained
    }
}

/// Every joint outcome of the model with its probability.
pub fn joint_outcomes(inst: &Instance) -> Vec<(f64, Vec<f64>)> {
    match inst.model() {
        ClickModel::Fixed { clicks } => vec![(1.0, clicks.clone())],
        ClickModel::Proportional { q, total_clicks } => total_clicks
            .points()
            .iter()
            .map(|&(c, p)| (p, q.iter().map(|s| s * c).collect()))
            .collect(),
        ClickModel::Independent { pmfs } => {
            let mut out = vec![(1.0, Vec::new())];
            for pmf in pmfs {
                out = out
                    .into_iter()
                    .flat_map(|(p, prefix)| {
                        pmf.points().iter().map(move |&(c, pc)| {
                            let mut next = prefix.clone();
                            next.push(c);
                            (p * pc, next)
                        })
                    })
                    .collect();
            }
            out
        }
        ClickModel::Scenario { scenarios } => {
            scenarios.iter().map(|s| (s.prob, s.clicks.clone())).collect()
        }
    }
}

/// Expected objective by full enumeration of joint outcomes.
pub fn expected(bids: &[f64], inst: &Instance) -> f64 {
    joint_outcomes(inst)
        .iter()
        .map(|(p, clicks)| p * objective(bids, clicks, inst))
        .sum()
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1e-300)
}

/// Best integer bid vector value over all `2^n` masks under `eval`.
pub fn best_integer(n: usize, mut eval: impl FnMut(&BidVector) -> f64) -> (f64, u64) {
    let mut best = (f64::NEG_INFINITY, 0);
    for mask in 0u64..(1 << n) {
        let v = eval(&BidVector::from_mask(n, mask));
        if v > best.0 {
            best = (v, mask);
        }
    }
    best
}

/// Best fractional prefix on a `steps`-point grid per prefix end, for an
/// instance in cpc order.
pub fn best_prefix_on_grid(n: usize, steps: usize, mut eval: impl FnMut(&BidVector) -> f64) -> f64 {
    let mut best = eval(&BidVector::zeros(n));
    for istar in 1..=n {
        for k in 1..=steps {
            let frac = k as f64 / steps as f64;
            best = best.max(eval(&PrefixSolution::new(istar, frac).to_bids(n)));
        }
    }
    best
}

/// Every bid vector on the grid `{0, 1/steps, ..., 1}^n`.
pub fn for_each_grid_point(n: usize, steps: usize, mut f: impl FnMut(&BidVector)) {
    let mut idx = vec![0usize; n];
    loop {
        let bids: Vec<f64> = idx.iter().map(|&k| k as f64 / steps as f64).collect();
        f(&BidVector::new(bids).unwrap());
        let mut pos = 0;
        loop {
            if pos == n {
                return;
            }
            idx[pos] += 1;
            if idx[pos] <= steps {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// Seeded random bids with some exact zeros and ones.
pub fn random_bids(n: usize, seed: u64) -> BidVector {
    let mut rng = rng_from_seed(seed ^ 0x5eed_b1d5);
    let bids = (0..n)
        .map(|_| match rng.gen_range(0..4) {
            0 => 0.0,
            1 => 1.0,
            _ => rng.gen_range(0.0..1.0),
        })
        .collect();
    BidVector::new(bids).unwrap()
}

/// Direct check for a clique on `k` of the graph's nodes.
pub fn has_clique(graph: &Graph, k: usize) -> bool {
    let n = graph.node_count();
    let mut adj = vec![vec![false; n + 1]; n + 1];
    for &(u, v) in graph.edges() {
        adj[u][v] = true;
        adj[v][u] = true;
    }
    fn extend(adj: &[Vec<bool>], chosen: &mut Vec<usize>, next: usize, k: usize) -> bool {
        if chosen.len() == k {
            return true;
        }
        for v in next..adj.len() {
            if chosen.iter().all(|&u| adj[u][v]) {
                chosen.push(v);
                if extend(adj, chosen, v + 1, k) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    extend(&adj, &mut Vec::new(), 1, k)
}

fn all_pairs(n: usize) -> Vec<(usize, usize)> {
    (1..=n)
        .flat_map(|u| (u + 1..=n).map(move |v| (u, v)))
        .collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n);
            out.push(q);
        }
    }
    out
}

fn connected(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut seen = vec![false; n + 1];
    let mut stack = vec![1];
    seen[1] = true;
    while let Some(u) = stack.pop() {
        for &(a, b) in edges {
            let other = if a == u { b } else if b == u { a } else { continue };
            if !seen[other] {
                seen[other] = true;
                stack.push(other);
            }
        }
    }
    seen[1..].iter().all(|&s| s)
}

/// One representative per isomorphism class of graphs on exactly `n`
/// nodes, found by canonicalizing every edge subset over all relabelings.
pub fn graph_classes(n: usize, connected_only: bool) -> Vec<Graph> {
    let pairs = all_pairs(n);
    let index = |u: usize, v: usize| pairs.iter().position(|&e| e == (u.min(v), u.max(v))).unwrap();
    let perms = permutations(n);
    let maps: Vec<Vec<usize>> = perms
        .iter()
        .map(|p| pairs.iter().map(|&(u, v)| index(p[u - 1], p[v - 1])).collect())
        .collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u32..(1 << pairs.len()) {
        let canon = maps
            .iter()
            .map(|m| {
                (0..pairs.len())
                    .filter(|&e| mask >> e & 1 == 1)
                    .fold(0u32, |acc, e| acc | 1 << m[e])
            })
            .min()
            .unwrap();
        if !seen.insert(canon) {
            continue;
        }
        let edges: Vec<(usize, usize)> = (0..pairs.len())
            .filter(|&e| canon >> e & 1 == 1)
            .map(|e| pairs[e])
            .collect();
        if connected_only && !connected(n, &edges) {
            continue;
        }
        out.push(Graph::new(n, edges).unwrap());
    }
    out
}
