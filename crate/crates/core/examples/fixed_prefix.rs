//! Known click counts: the optimum bids fully on the cheapest keywords and
//! partially on one more, spending exactly the budget.

use sbo::opt::{opt_fixed_fractional, opt_fixed_integer};
use sbo::{ClickModel, Instance, Keyword};

fn main() -> sbo::Result<()> {
    let keywords = vec![
        Keyword::new("running shoes", 0.8),
        Keyword::new("trail shoes", 1.5),
        Keyword::new("marathon", 2.0),
        Keyword::new("sneakers", 3.5),
    ];
    let clicks = vec![40.0, 25.0, 30.0, 60.0];
    let inst = Instance::new(keywords, 120.0, ClickModel::Fixed { clicks })?;

    let frac = opt_fixed_fractional(&inst)?;
    println!("fractional bids {:?}", frac.bids.as_slice());
    println!("  prefix {:?}, clicks {}", frac.prefix, frac.value.value);

    let int = opt_fixed_integer(&inst)?;
    println!("integer bids    {:?}", int.bids.as_slice());
    println!("  clicks {}", int.value.value);
    Ok(())
}
