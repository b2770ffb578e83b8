//! Count period-4 orbits for alpha = 1/(4k).
//!
//! `cargo run --release --example period4_census [k_max]`

use dstdmap::orbit::DEFAULT_STATE_BUDGET;
use dstdmap::theory::count_period4;

fn main() -> anyhow::Result<()> {
    let k_max: u64 = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(10);
    for k in 1..=k_max {
        let n = count_period4(k, DEFAULT_STATE_BUDGET)?;
        println!("k = {k:>3}  q = {:>4}  period-4 orbits: {n}", 4 * k);
    }
    Ok(())
}
