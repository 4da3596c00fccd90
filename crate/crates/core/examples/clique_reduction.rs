//! Encodes "does this graph have a k-clique?" as a scenario instance whose
//! optimum reaches the target V exactly when the clique exists.

use sbo::cli::verify_reduction;
use sbo::gen::{gen_clique_reduction, Graph};

fn main() -> sbo::Result<()> {
    let triangle = Graph::new(3, vec![(1, 2), (2, 3), (1, 3)])?;
    let square = Graph::new(4, vec![(1, 2), (2, 3), (3, 4), (1, 4)])?;
    let house = Graph::new(5, vec![(1, 2), (2, 3), (3, 4), (4, 1), (3, 5), (4, 5)])?;

    let red = gen_clique_reduction(&triangle, 3)?;
    println!("triangle, k = 3: {} keywords", red.instance.n());
    println!("{}", serde_json::to_string_pretty(&red.params).unwrap());

    for (name, g) in [("triangle", &triangle), ("4-cycle", &square), ("house", &house)] {
        println!("{name:>8}: {}", verify_reduction(g, 3)?);
    }
    Ok(())
}
