//! Orbit periods as Young diagrams scaled by 1/q, and the distance between two.
//!
//! `cargo run --release --example young_diagrams [q1] [q2]`

use dstdmap::analytics::{diagram_distance, young_diagram};
use dstdmap::orbit::DEFAULT_STATE_BUDGET;
use dstdmap::ReducedParams;

fn main() -> anyhow::Result<()> {
    let mut args = std::env::args().skip(1);
    let q1: u64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(950);
    let q2: u64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(952);
    let d1 = young_diagram(&ReducedParams::unit(q1)?, true, DEFAULT_STATE_BUDGET)?;
    let d2 = young_diagram(&ReducedParams::unit(q2)?, true, DEFAULT_STATE_BUDGET)?;
    for d in [&d1, &d2] {
        let head: Vec<String> = d.parts.iter().take(6).map(|p| format!("{:.3}", *p.numer() as f64 / *p.denom() as f64)).collect();
        println!("q = {:>4}: {} parts, largest {}", d.q, d.parts.len(), head.join(" "));
    }
    println!("sup distance: {:.6}", diagram_distance(&d1, &d2));
    Ok(())
}
