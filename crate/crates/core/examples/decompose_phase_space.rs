//! Split the whole torus for alpha = 1/992 into periodic orbits.
//!
//! `cargo run --release --example decompose_phase_space [q]`

use std::time::Instant;

use dstdmap::orbit::{decompose, period_partition};
use dstdmap::ReducedParams;

fn main() -> anyhow::Result<()> {
    let q: u64 = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(992);
    let params = ReducedParams::unit(q)?;
    let t = Instant::now();
    let d = decompose(&params)?;
    println!("{params}: {} orbits covering {} states in {:.2?}", d.orbits.len(), d.period_sum(), t.elapsed());
    println!("escaping orbits: {}", d.escaping_count());
    println!("longest period:  {}", d.max_period());
    let parts = period_partition(&d, false);
    println!("ten longest:     {:?}", &parts[..parts.len().min(10)]);
    for o in d.escaping() {
        println!("escaping: start {} period {} winding {:+}", o.representative, o.period, o.winding);
    }
    Ok(())
}
