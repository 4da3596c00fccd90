//! Seeded Monte Carlo estimates against exact values for each click model.

use sbo::eval::{eval_exact, eval_monte_carlo};
use sbo::gen::{gen_random, RandomConfig};
use sbo::{BidVector, ModelKind};

fn main() -> sbo::Result<()> {
    let bids = BidVector::new(vec![1.0, 1.0, 0.6, 0.3, 0.0])?;
    for kind in ModelKind::ALL {
        let inst = gen_random(kind, 5, 7, &RandomConfig::default())?;
        let exact = eval_exact(&bids, &inst)?.value;
        for samples in [1_000, 100_000] {
            let mc = eval_monte_carlo(&bids, &inst, samples, 1)?;
            println!(
                "{kind:>12} n={samples:<7} exact {exact:9.4}  mc {:9.4}  [{:.4}, {:.4}]",
                mc.value, mc.lower, mc.upper
            );
        }
    }
    Ok(())
}
