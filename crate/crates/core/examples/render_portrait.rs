//! Write 16-bit PGM phase portraits.
//!
//! `cargo run --release --example render_portrait [q] [dir]`

use std::fs::File;
use std::io::BufWriter;
use std::path::PathBuf;

use dstdmap::analytics::{render_portrait, PortraitMode};
use dstdmap::io::write_pgm;
use dstdmap::orbit::DEFAULT_STATE_BUDGET;
use dstdmap::ReducedParams;

fn main() -> anyhow::Result<()> {
    let mut args = std::env::args().skip(1);
    let q: u64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(201);
    let dir = PathBuf::from(args.next().unwrap_or_else(|| std::env::temp_dir().display().to_string()));
    let params = ReducedParams::unit(q)?;
    for (mode, name) in [(PortraitMode::PeriodShade, "period"), (PortraitMode::EscapeMask, "escape")] {
        let img = render_portrait(&params, mode, DEFAULT_STATE_BUDGET)?;
        let path = dir.join(format!("portrait_q{q}_{name}.pgm"));
        write_pgm(BufWriter::new(File::create(&path)?), &img)?;
        println!("{}x{} -> {}", img.width, img.height, path.display());
    }
    Ok(())
}
