//! Iterate the cylinder map in exact rational arithmetic.
//!
//! `cargo run --example exact_map`

use dstdmap::exact::{iterate_exact, rat, vertical_increment, CylinderPoint};

fn main() -> anyhow::Result<()> {
    let alpha = rat(2, 7);
    let start = CylinderPoint::new(rat(3, 10), rat(1, 3));
    let orbit = iterate_exact(&start, &alpha, 12)?;
    println!("alpha = {alpha}");
    for (n, pair) in orbit.windows(2).enumerate() {
        println!("{n:>3}  {}  dy = {:+}", pair[0], vertical_increment(&pair[0], &pair[1]));
    }

    // the reflection (x, y) -> (1 - x, -y) commutes with the map
    let mirrored = iterate_exact(&start.reflected(), &alpha, 12)?;
    assert!(orbit.iter().zip(&mirrored).all(|(a, b)| a.reflected() == *b));
    println!("reflected orbit agrees over {} steps", orbit.len() - 1);
    Ok(())
}
