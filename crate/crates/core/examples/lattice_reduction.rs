//! Rational points reduce to a finite torus; compare both iterations.
//!
//! `cargo run --example lattice_reduction`

use dstdmap::exact::{step_exact, vertical_increment};
use dstdmap::lattice::{embed, make_params, project, LatticeMap, LatticeState};

fn main() -> anyhow::Result<()> {
    // alpha = 3/10, y0 = 2/3: torus of 30 x 10 states
    let params = make_params(3, 10, 2, 3)?;
    let map = LatticeMap::new(params);
    println!("{params}: {} x {} states, delta = {}", params.bq(), params.q(), params.delta());

    let mut s = LatticeState::new(7, 4);
    let mut pt = embed(s, &params);
    for n in 0..10 {
        let next_pt = step_exact(&pt, &params.alpha());
        let (next, dj) = map.step_state(s);
        assert_eq!(project(&next_pt, &params)?, next);
        assert_eq!(i64::from(dj), vertical_increment(&pt, &next_pt));
        println!("{n:>2}  {s}  ->  {next}  dj = {dj:+}   (x, y) = {next_pt}");
        s = next;
        pt = next_pt;
    }
    Ok(())
}
