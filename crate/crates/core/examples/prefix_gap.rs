//! Scenario instances where every prefix bid loses a factor that grows
//! with `c`, while bidding on the odd keywords attains `n alpha B`.

use sbo::gen::{gap_optimum, gap_prefix_bound, gen_gap_example};
use sbo::opt::{opt_prefix_search, opt_scenario_bruteforce};

fn main() -> sbo::Result<()> {
    let n = 6;
    println!("{:>6} {:>12} {:>12} {:>8} {:>8}", "c", "optimum", "best prefix", "ratio", "bound");
    for c in [2.0, 5.0, 10.0, 50.0, 100.0] {
        let inst = gen_gap_example(n, c, 1.0)?;
        let opt = opt_scenario_bruteforce(&inst)?;
        assert!((opt.value.value - gap_optimum(n, c, 1.0)).abs() <= 1e-12 * opt.value.value);
        let prefix = opt_prefix_search(&inst, 0.05)?.value.value;
        println!(
            "{c:>6} {:>12.4e} {prefix:>12.4e} {:>8.3} {:>8.3}",
            opt.value.value,
            opt.value.value / prefix,
            opt.value.value / gap_prefix_bound(n, c, 1.0),
        );
    }
    Ok(())
}
