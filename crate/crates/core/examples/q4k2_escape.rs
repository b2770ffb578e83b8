//! Escaping orbits for q = 4k + 2 started at height 1/2.
//!
//! `cargo run --release --example q4k2_escape [k_max]`

use dstdmap::lattice::{make_params, LatticeState};
use dstdmap::orbit::trace_orbit;
use dstdmap::theory::verify_q4k2;

fn main() -> anyhow::Result<()> {
    let k_max: u64 = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(12);
    println!("{:>4} {:>6} {:>10} {:>8}", "k", "q", "period", "winding");
    for k in 1..=k_max {
        let params = make_params(1, 4 * k + 2, 1, 2)?;
        let orbit = trace_orbit(LatticeState::new(4 * k - 1, 2 * k + 1), &params)?;
        let report = verify_q4k2(k, 100_000)?;
        anyhow::ensure!(report.passed, "k = {k}: {}", report.to_json());
        println!("{k:>4} {:>6} {:>10} {:>+8}", params.q(), orbit.period, orbit.winding);
    }
    Ok(())
}
