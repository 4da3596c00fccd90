//! Independent click counts: the exact evaluator enumerates joint outcomes,
//! the PTAS convolves rounded cost distributions and is within `1 + eps`.

use std::time::Instant;

use sbo::eval::{eval_independent_exact, eval_independent_ptas};
use sbo::gen::{gen_random, RandomConfig};
use sbo::opt::opt_independent_prefix;
use sbo::{BidVector, Instance, ModelKind};

fn main() -> sbo::Result<()> {
    let cfg = RandomConfig {
        max_support: 5,
        ..RandomConfig::default()
    };
    let inst = gen_random(ModelKind::Independent, 8, 42, &cfg)?;
    // a tight budget makes the rounding visible
    let inst = Instance::new(inst.keywords().to_vec(), inst.budget() / 4.0, inst.model().clone())?;
    let bids = BidVector::new(vec![1.0, 1.0, 1.0, 0.8, 0.5, 0.2, 0.0, 0.0])?;

    let t = Instant::now();
    let exact = eval_independent_exact(&bids, &inst)?.value;
    println!("exact           {exact:.6}  ({:?})", t.elapsed());
    for eps in [0.5, 0.1, 0.01] {
        let t = Instant::now();
        let r = eval_independent_ptas(&bids, &inst, eps)?;
        println!(
            "ptas eps={eps:<5} {:.6}  ratio {:.6}  ({:?})",
            r.value,
            r.value / exact,
            t.elapsed()
        );
    }

    let best = opt_independent_prefix(&inst, 0.05)?;
    println!("best prefix {:?}: {:.6}", best.prefix, best.value.value);
    Ok(())
}
