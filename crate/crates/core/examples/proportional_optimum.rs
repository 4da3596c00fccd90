//! Each keyword takes a fixed share of a random total. The exact optimizer
//! checks every breakpoint and interior stationary point of the prefix
//! curve; the sweep below shows the curve it maximizes.

use sbo::eval::eval_proportional;
use sbo::opt::opt_proportional_exact;
use sbo::{ClickModel, DiscretePmf, Instance, Keyword, PrefixSolution};

fn main() -> sbo::Result<()> {
    let total = DiscretePmf::new([(50.0, 0.5), (200.0, 0.3), (800.0, 0.2)])?;
    let inst = Instance::new(
        vec![
            Keyword::new("a", 0.5),
            Keyword::new("b", 1.0),
            Keyword::new("c", 2.0),
            Keyword::new("d", 4.0),
        ],
        150.0,
        ClickModel::Proportional {
            q: vec![0.3, 0.3, 0.2, 0.2],
            total_clicks: total,
        },
    )?;

    for step in 0..=16 {
        let p = step as f64 / 4.0;
        let istar = p.ceil() as usize;
        let prefix = PrefixSolution::new(istar, p - istar.saturating_sub(1) as f64);
        let v = eval_proportional(&prefix.to_bids(4), &inst)?.value;
        println!("prefix length {p:5.2}: {v:8.3}");
    }

    let best = opt_proportional_exact(&inst)?;
    println!("optimum {:?} -> {:.6}", best.bids.as_slice(), best.value.value);
    Ok(())
}
