//! Sweep l(q)/q^2 over a range of odd q and write it as CSV.
//!
//! `cargo run --release --example escape_sweep [from] [to] [out.csv]`

use std::fs::File;
use std::io::BufWriter;

use dstdmap::analytics::sweep_escape_lengths;
use dstdmap::io::write_sweep_csv;

fn main() -> anyhow::Result<()> {
    let mut args = std::env::args().skip(1);
    let from: u64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(101);
    let to: u64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(499);
    let sweep = sweep_escape_lengths(from, to)?;
    println!(
        "{} odd q in [{from}, {to}]: mean {:.5}, min {:.5}, max {:.5}",
        sweep.records.len(),
        sweep.mean_ratio,
        sweep.min_ratio,
        sweep.max_ratio
    );
    if let Some(path) = args.next() {
        write_sweep_csv(BufWriter::new(File::create(&path)?), &sweep)?;
        println!("wrote {path}");
    }
    Ok(())
}
