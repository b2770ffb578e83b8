//! Locate the bottleneck level and check which orbits cross it.
//!
//! `cargo run --example bottleneck_theorem`

use dstdmap::lattice::make_params;
use dstdmap::orbit::DEFAULT_STATE_BUDGET;
use dstdmap::theory::{solve_bottleneck, verify_boundedness_theorem};

fn main() -> anyhow::Result<()> {
    for (p, q, a, b) in [(1, 9, 0, 1), (1, 10, 0, 1), (3, 25, 0, 1), (2, 7, 1, 3), (5, 12, 1, 2)] {
        let params = make_params(p, q, a, b)?;
        let sol = solve_bottleneck(&params);
        match sol.j_star {
            None => println!("{params}: no bottleneck level"),
            Some(j) => {
                let report = verify_boundedness_theorem(&params, DEFAULT_STATE_BUDGET)?;
                println!(
                    "{params}: j* = {j}, {} cases, {}",
                    report.cases.len(),
                    if report.passed { "holds" } else { "FAILS" }
                );
                for c in report.cases.iter().take(4) {
                    println!("    {:<22} {}", c.id, c.observed);
                }
            }
        }
    }
    Ok(())
}
