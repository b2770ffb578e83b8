//! Smallest b such that some y0 = a/b escapes for alpha = 1/(4k).
//!
//! `cargo run --release --example seed_search [k_max]`

use std::time::Instant;

use dstdmap::orbit::DEFAULT_STATE_BUDGET;
use dstdmap::theory::search_escape_seed;

fn main() -> anyhow::Result<()> {
    let k_max: u64 = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(6);
    println!("{:>3} {:>5} {:>5} {:>9} {:>8}", "k", "a", "b", "period", "time");
    for k in 1..=k_max {
        let t = Instant::now();
        match search_escape_seed(k, 400, DEFAULT_STATE_BUDGET)? {
            Some(seed) => println!(
                "{k:>3} {:>5} {:>5} {:>9} {:>8.2?}",
                seed.a,
                seed.b,
                seed.orbit.period,
                t.elapsed()
            ),
            None => println!("{k:>3}  none with b <= 400"),
        }
    }
    Ok(())
}
