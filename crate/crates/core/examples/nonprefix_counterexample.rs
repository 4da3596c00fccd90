//! Three keywords where skipping the middle one beats every prefix bid.

use sbo::eval::eval_independent_exact;
use sbo::gen::gen_nonprefix_example;
use sbo::{BidVector, PrefixSolution};

fn main() -> sbo::Result<()> {
    let inst = gen_nonprefix_example();
    for (label, bids) in [
        ("(1, 1, 1)", BidVector::ones(3)),
        ("(1, 0, 1)", BidVector::new(vec![1.0, 0.0, 1.0])?),
    ] {
        println!("{label}: {}", eval_independent_exact(&bids, &inst)?.value);
    }

    let mut best = (0.0, PrefixSolution::integer(0));
    for step in 0..=3000 {
        let p = step as f64 / 1000.0;
        let istar = p.ceil() as usize;
        let prefix = PrefixSolution::new(istar, p - istar.saturating_sub(1) as f64);
        let v = eval_independent_exact(&prefix.to_bids(3), &inst)?.value;
        if v > best.0 {
            best = (v, prefix);
        }
    }
    println!("best prefix on a 0.001 grid: {:?} -> {}", best.1, best.0);
    Ok(())
}
