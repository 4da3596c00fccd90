//! Clicks worth different amounts. Weighted instances reduce to unweighted
//! ones by scaling clicks up and cpc down, which may reorder keywords.

use sbo::eval::eval_exact;
use sbo::opt::opt_scenario_bruteforce;
use sbo::{BidVector, ClickModel, Instance, Keyword, Scenario};

fn main() -> sbo::Result<()> {
    let inst = Instance::new(
        vec![
            Keyword::weighted("brand", 1.0, 3.0),
            Keyword::weighted("generic", 0.5, 0.5),
            Keyword::weighted("competitor", 2.0, 1.0),
        ],
        20.0,
        ClickModel::Scenario {
            scenarios: vec![
                Scenario::new(0.6, vec![5.0, 20.0, 4.0]),
                Scenario::new(0.4, vec![12.0, 50.0, 10.0]),
            ],
        },
    )?;

    let (plain, order) = inst.apply_click_weights_with_order()?;
    for (pos, &i) in order.iter().enumerate() {
        println!("{:>10}: cpc' {:.3} at position {pos}", inst.keywords()[i].id, plain.cpc(pos));
    }

    let bids = BidVector::new(vec![1.0, 0.5, 0.0])?;
    let moved = BidVector::new(order.iter().map(|&i| bids.as_slice()[i]).collect())?;
    println!("weighted value   {}", eval_exact(&bids, &inst)?.value);
    println!("transformed      {}", eval_exact(&moved, &plain)?.value);

    let best = opt_scenario_bruteforce(&inst)?;
    println!("best integer bid {:?} -> {}", best.bids.as_slice(), best.value.value);
    Ok(())
}
