//! Time spent near the bottleneck, and how slowly the escaping orbit climbs.
//!
//! `cargo run --release --example dwell_and_window [q]`

use dstdmap::theory::{measure_dwell, verify_window_bound, window_width};

fn main() -> anyhow::Result<()> {
    let q: u64 = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(101);
    println!("dwell counts for q = {q}");
    for m in 1..=(q / 9).min(8) {
        let rep = measure_dwell(q, m, 0)?;
        println!("  m = {m:>2}: N = {:>4}, bound {:>4}", rep.n_m, rep.bound);
    }
    let report = verify_window_bound(q)?;
    println!("window width {} steps: {}", window_width(q), if report.passed { "climb stays below q" } else { "violated" });
    for c in &report.cases {
        println!("  {}: {}", c.id, c.observed);
    }
    Ok(())
}
