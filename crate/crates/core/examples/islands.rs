//! Sample periods on the levels near q/(2n+1), where islands sit.
//!
//! `cargo run --release --example islands [q]`

use dstdmap::analytics::{island_scan, median_period};

fn main() -> anyhow::Result<()> {
    let q: u64 = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(1001);
    for n in 0..4 {
        let samples = island_scan(q, n, 32)?;
        let escaping = samples.iter().filter(|s| s.winding != 0).count();
        println!(
            "n = {n}: {} samples, median period {}, {escaping} on the escaping orbit",
            samples.len(),
            median_period(&samples).unwrap_or(0)
        );
    }
    Ok(())
}
