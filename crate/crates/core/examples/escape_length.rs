//! Length of the single escaping orbit for alpha = 1/q, odd q.
//!
//! `cargo run --release --example escape_length [q]`

use std::time::Instant;

use dstdmap::orbit::escape_length;
use dstdmap::theory::lower_bound_sum;

fn main() -> anyhow::Result<()> {
    let q: u64 = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(991);
    let t = Instant::now();
    let rec = escape_length(q)?;
    println!("l({q}) = {}  (l/q^2 = {:.6}, {:.2?})", rec.ell, rec.ratio_f64(), t.elapsed());
    println!("lower bound from dwell times: {}", lower_bound_sum(q));
    Ok(())
}
