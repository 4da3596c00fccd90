//! Acceptance suite. Each criterion runs against its own oracle and time
//! limit and prints one PASS/FAIL line; the process fails if any does.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{
    best_integer, best_prefix_on_grid, expected, for_each_grid_point, graph_classes, has_clique,
    random_bids, rel_close,
};
use rand::Rng;
use sbo::cli::verify_reduction;
use sbo::dist::rng_from_seed;
use sbo::eval::{
    eval_exact, eval_fixed, eval_independent_exact, eval_independent_ptas, eval_monte_carlo,
    eval_proportional, eval_scenario,
};
use sbo::gen::{
    gap_optimum, gen_gap_example, gen_nonprefix_example, gen_random, Graph, RandomConfig,
};
use sbo::opt::{
    opt_fixed_fractional, opt_proportional_exact, opt_scenario_bruteforce, PrefixSolution,
};
use sbo::{aggregate, BidVector, ClickModel, Instance, ModelKind};

type Outcome = Result<String, String>;

/// Name, time limit in seconds, check.
type Criterion = (&'static str, u64, fn() -> Outcome);

fn check(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Instance size drawn uniformly from `1..=max` for the given seed.
fn size(seed: u64, max: usize) -> usize {
    rng_from_seed(seed.wrapping_mul(0x9e37_79b9)).gen_range(1..=max)
}

fn nonprefix_values() -> Outcome {
    let inst = gen_nonprefix_example();
    let full = eval_independent_exact(&BidVector::ones(3), &inst).map_err(|e| e.to_string())?.value;
    let skip = BidVector::new(vec![1.0, 0.0, 1.0]).unwrap();
    let skip = eval_independent_exact(&skip, &inst).map_err(|e| e.to_string())?.value;
    check((full - 1.75).abs() <= 1e-12, || format!("(1,1,1) gives {full}"))?;
    check((skip - 2.0).abs() <= 1e-12, || format!("(1,0,1) gives {skip}"))?;
    let best = best_prefix_on_grid(3, 10_000, |b| eval_independent_exact(b, &inst).unwrap().value);
    check(best < 2.0, || format!("a prefix reaches {best}"))?;
    Ok(format!("1.75 / 2.0, best prefix {best}"))
}

fn ptas_sandwich() -> Outcome {
    let eps = 0.1;
    let mut worst: f64 = 1.0;
    for seed in 0..200 {
        let n = size(seed, 8);
        let inst = gen_random(ModelKind::Independent, n, seed, &RandomConfig::default()).unwrap();
        let bids = random_bids(n, seed);
        let exact = eval_independent_exact(&bids, &inst).unwrap().value;
        let ptas = eval_independent_ptas(&bids, &inst, eps).unwrap().value;
        let slack = 1e-12 * exact.max(1e-300);
        check(exact <= ptas + slack && ptas <= (1.0 + eps) * exact + slack, || {
            format!("seed {seed}: exact {exact}, ptas {ptas}")
        })?;
        if exact > 0.0 {
            worst = worst.max(ptas / exact);
        }
    }
    Ok(format!("200 instances, worst ratio {worst:.6}"))
}

fn two_approximation() -> Outcome {
    let cfg = RandomConfig {
        max_support: 3,
        ..RandomConfig::default()
    };
    let mut worst = f64::INFINITY;
    for seed in 0..200 {
        let n = size(seed, 10);
        let inst = gen_random(ModelKind::Independent, n, seed, &cfg).unwrap();
        let prefix = (0..=n)
            .map(|len| {
                eval_independent_exact(&PrefixSolution::integer(len).to_bids(n), &inst)
                    .unwrap()
                    .value
            })
            .fold(0.0, f64::max);
        let (best, _) = best_integer(n, |b| eval_independent_exact(b, &inst).unwrap().value);
        check(prefix >= 0.5 * best * (1.0 - 1e-12), || {
            format!("seed {seed}: prefix {prefix}, integer optimum {best}")
        })?;
        if best > 0.0 {
            worst = worst.min(prefix / best);
        }
    }
    Ok(format!("200 instances, worst prefix/optimum {worst:.4}"))
}

fn proportional_exactness() -> Outcome {
    let cfg = RandomConfig {
        max_support: 6,
        ..RandomConfig::default()
    };
    for seed in 0..100 {
        let n = size(seed, 6);
        let inst = gen_random(ModelKind::Proportional, n, seed, &cfg).unwrap();
        let r = opt_proportional_exact(&inst).unwrap();
        let eval = |b: &BidVector| eval_proportional(b, &inst).unwrap().value;
        let mut grid = best_prefix_on_grid(n, 10_000, eval);
        if n <= 4 {
            for_each_grid_point(n, 10, |b| grid = grid.max(eval(b)));
        }
        check(r.value.value >= grid - 1e-6, || {
            format!("seed {seed}: optimizer {} below grid {grid}", r.value.value)
        })?;
        check(PrefixSolution::from_bids(&r.bids).is_some(), || {
            format!("seed {seed}: {:?} is not a prefix", r.bids)
        })?;
    }
    Ok("100 instances".into())
}

fn proportional_formula() -> Outcome {
    let cfg = RandomConfig {
        max_support: 6,
        weight_range: (0.5, 2.0),
        ..RandomConfig::default()
    };
    let mut worst: f64 = 0.0;
    for seed in 0..100 {
        let n = size(seed, 8);
        let inst = gen_random(ModelKind::Proportional, n, seed, &cfg).unwrap();
        let bids = random_bids(n, seed);
        let got = eval_proportional(&bids, &inst).unwrap().value;
        let want = expected(bids.as_slice(), &inst);
        check(rel_close(got, want, 1e-12), || format!("seed {seed}: {got} vs {want}"))?;
        if want > 0.0 {
            worst = worst.max((got - want).abs() / want);
        }
    }
    Ok(format!("100 instances, max rel err {worst:.1e}"))
}

fn prefix_gap() -> Outcome {
    let n = 10;
    let mut ratios = Vec::new();
    for c in [5.0, 10.0, 50.0, 100.0] {
        let inst = gen_gap_example(n, c, 1.0).unwrap();
        let opt = opt_scenario_bruteforce(&inst).unwrap().value.value;
        let target = gap_optimum(n, c, 1.0);
        check(rel_close(opt, target, 1e-12), || format!("c={c}: optimum {opt}, n alpha B {target}"))?;
        let prefix = best_prefix_on_grid(2 * n, 10_000, |b| eval_scenario(b, &inst).unwrap().value);
        let ratio = opt / prefix;
        let bound = 1.0 / (2.0 / (c + 1.0) + 1.0 / n as f64);
        check(ratio >= bound, || format!("c={c}: ratio {ratio} below {bound}"))?;
        ratios.push(ratio);
    }
    check(ratios.windows(2).all(|w| w[0] < w[1]), || format!("ratios not increasing: {ratios:?}"))?;
    Ok(format!("ratios {:?}", ratios.iter().map(|r| format!("{r:.3}")).collect::<Vec<_>>()))
}

fn clique_reduction() -> Outcome {
    let tri = Graph::new(3, vec![(1, 2), (2, 3), (1, 3)]).unwrap();
    let v = verify_reduction(&tri, 3).map_err(|e| e.to_string())?;
    check(v.has_clique && v.optimum >= v.target, || format!("triangle: {v}"))?;
    let c4 = Graph::new(4, vec![(1, 2), (2, 3), (3, 4), (1, 4)]).unwrap();
    let v = verify_reduction(&c4, 3).map_err(|e| e.to_string())?;
    check(!v.has_clique && v.optimum < v.target, || format!("4-cycle: {v}"))?;

    let mut graphs: Vec<Graph> = (3..=5)
        .flat_map(|n| graph_classes(n, false))
        .filter(|g| !g.edges().is_empty())
        .collect();
    let connected6 = graph_classes(6, true);
    check(connected6.len() == 112, || format!("{} connected 6-node classes", connected6.len()))?;
    graphs.extend(connected6);
    for g in &graphs {
        let v = verify_reduction(g, 3).map_err(|e| e.to_string())?;
        check(v.has_clique == has_clique(g, 3), || {
            format!("{} nodes, edges {:?}: {v}", g.node_count(), g.edges())
        })?;
    }
    Ok(format!("{} graphs agree with direct clique search", graphs.len()))
}

fn weight_substitution() -> Outcome {
    let cfg = RandomConfig {
        weight_range: (0.2, 5.0),
        ..RandomConfig::default()
    };
    for kind in ModelKind::ALL {
        for seed in 0..100 {
            let n = size(seed, 6);
            let inst = gen_random(kind, n, seed, &cfg).unwrap();
            let (plain, order) = inst.apply_click_weights_with_order().unwrap();
            let bids = random_bids(n, seed);
            let moved = BidVector::new(order.iter().map(|&i| bids.as_slice()[i]).collect()).unwrap();
            let a = eval_exact(&bids, &inst).unwrap().value;
            let b = eval_exact(&moved, &plain).unwrap().value;
            check(rel_close(a, b, 1e-9), || format!("{kind} seed {seed}: {a} vs {b}"))?;
            check(!plain.is_weighted(), || format!("{kind} seed {seed}: weights remain"))?;
        }
    }
    Ok("400 pairs".into())
}

fn fixed_model() -> Outcome {
    for seed in 0..50 {
        let n = size(seed, 4);
        let inst = gen_random(ModelKind::Fixed, n, seed, &RandomConfig::default()).unwrap();
        let r = opt_fixed_fractional(&inst).unwrap();
        let ClickModel::Fixed { clicks } = inst.model() else {
            unreachable!()
        };
        let realization = sbo::ClickRealization::new(clicks.clone()).unwrap();
        let (_, spent) = aggregate(&r.bids, &realization, &inst).unwrap();
        let (_, total) = aggregate(&BidVector::ones(n), &realization, &inst).unwrap();
        let want = inst.budget().min(total);
        check(rel_close(spent, want, 1e-12), || format!("seed {seed}: spends {spent}, expected {want}"))?;
        let mut beaten = None;
        for_each_grid_point(n, 10, |b| {
            let v = eval_fixed(b, &inst).unwrap().value;
            if v > r.value.value * (1.0 + 1e-12) {
                beaten = Some(v);
            }
        });
        check(beaten.is_none(), || format!("seed {seed}: grid point reaches {beaten:?}"))?;
    }
    Ok("50 seeds".into())
}

/// Moves bid mass from the last bid keyword to the first keyword not at
/// full bid, keeping `sum b q cpc` fixed.
fn interchange_step(bids: &[f64], inst: &Instance) -> Vec<f64> {
    let ClickModel::Proportional { q, .. } = inst.model() else {
        unreachable!()
    };
    let mut out = bids.to_vec();
    let j = bids.iter().rposition(|&b| b > 0.0).unwrap();
    let i = bids.iter().position(|&b| b < 1.0).unwrap();
    let (ri, rj) = (q[i] * inst.cpc(i), q[j] * inst.cpc(j));
    if ri == 0.0 {
        out[i] = 1.0;
        return out;
    }
    // raise b_i by x and lower b_j by x ri / rj
    let x = (1.0 - bids[i]).min(if rj > 0.0 { bids[j] * rj / ri } else { f64::INFINITY });
    out[i] += x;
    out[j] = if rj > 0.0 { (bids[j] - x * ri / rj).max(0.0) } else { bids[j] };
    out
}

fn interchange() -> Outcome {
    let cfg = RandomConfig {
        max_support: 6,
        ..RandomConfig::default()
    };
    let mut done = 0;
    let mut seed = 0u64;
    while done < 500 {
        seed += 1;
        let n = 2 + seed as usize % 5;
        let inst = gen_random(ModelKind::Proportional, n, seed, &cfg).unwrap();
        let bids = random_bids(n, seed);
        let first_gap = bids.as_slice().iter().position(|&b| b < 1.0);
        let last_bid = bids.as_slice().iter().rposition(|&b| b > 0.0);
        match (first_gap, last_bid) {
            (Some(i), Some(j)) if i < j => {}
            _ => continue,
        }
        let before = eval_proportional(&bids, &inst).unwrap().value;
        let moved = BidVector::new(interchange_step(bids.as_slice(), &inst)).unwrap();
        let after = eval_proportional(&moved, &inst).unwrap().value;
        check(after >= before - 1e-9, || format!("seed {seed}: {before} -> {after}"))?;
        done += 1;
    }
    Ok("500 non-prefix solutions".into())
}

fn monte_carlo() -> Outcome {
    let cfg = RandomConfig {
        weight_range: (0.5, 2.0),
        ..RandomConfig::default()
    };
    let mut trials = 0;
    let mut inside = 0;
    for kind in ModelKind::ALL {
        for seed in 0..13u64 {
            if trials == 50 {
                break;
            }
            let n = size(seed, 6);
            let inst = gen_random(kind, n, 1000 + seed, &cfg).unwrap();
            let bids = random_bids(n, seed);
            let exact = eval_exact(&bids, &inst).unwrap().value;
            let mc = eval_monte_carlo(&bids, &inst, 100_000, seed).unwrap();
            trials += 1;
            if mc.lower <= exact && exact <= mc.upper {
                inside += 1;
            }
        }
    }
    let share = inside as f64 / trials as f64;
    check(share >= 0.99, || format!("{inside} of {trials} within 3 standard errors"))?;
    Ok(format!("{inside} of {trials} within 3 standard errors"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("nonprefix example values", 1, nonprefix_values),
        ("independent PTAS sandwich", 30, ptas_sandwich),
        ("integer prefix 2-approximation", 60, two_approximation),
        ("proportional optimizer exactness", 30, proportional_exactness),
        ("proportional closed-form evaluation", 5, proportional_formula),
        ("prefix gap family", 10, prefix_gap),
        ("clique reduction", 120, clique_reduction),
        ("click weight substitution", 10, weight_substitution),
        ("fixed model fractional prefix", 10, fixed_model),
        ("proportional interchange step", 10, interchange),
        ("Monte Carlo consistency", 60, monte_carlo),
    ];
    let mut failed = 0;
    for (k, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > Duration::from_secs(*limit) => {
                Err(format!("{detail}; exceeded {limit}s limit"))
            }
            other => other,
        };
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        println!(
            "criterion {:>2} {tag} [{:.2}s / {limit}s] {name}: {detail}",
            k + 1,
            elapsed.as_secs_f64()
        );
        failed += outcome.is_err() as usize;
    }
    if failed == 0 {
        println!("acceptance: all {} criteria passed", criteria.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} criteria failed");
        ExitCode::FAILURE
    }
}
