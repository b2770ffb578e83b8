//! Randomized checks of the exact map and of its lattice reduction.
//!
//! Each suite draws from a seeded ChaCha stream, so a seed fully determines
//! the cases and the verdict.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::exact::{step_exact, vertical_increment, CylinderPoint, Rational};
use crate::lattice::{embed, make_params, project, step_lattice, LatticeState, ReducedParams};

use super::{VerdictReport, VerdictScope};

fn random_rational(rng: &mut impl Rng, max_den: i64, lo: i64, hi: i64) -> Rational {
    let den = rng.gen_range(1..=max_den);
    let num = rng.gen_range(lo * den..hi * den);
    Rational::new(BigInt::from(num), BigInt::from(den))
}

fn random_params(rng: &mut impl Rng, max_bq: u64) -> ReducedParams {
    loop {
        let q = rng.gen_range(1..=max_bq);
        let b = rng.gen_range(1..=max_bq / q);
        let p = rng.gen_range(1..=3 * q);
        let a = rng.gen_range(0..b) as i64;
        if let Ok(params) = make_params(p, q, a, b) {
            return params;
        }
    }
}

/// `f(pt) + f((1,0) - pt) = (1, 0)` on random rational points and twists,
/// together with the level-set rule for the vertical step.
pub fn symmetry_suite(samples: usize, seed: u64) -> VerdictReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut v = VerdictReport::new("symmetry", VerdictScope::Range { from: 0, to: samples as u64 });
    let mut sym_fail = 0usize;
    let mut level_fail = 0usize;
    let mut first_bad = String::new();
    for i in 0..samples {
        let alpha = random_rational(&mut rng, 60, 0, 3);
        let pt = CylinderPoint::new(random_rational(&mut rng, 400, 0, 1), random_rational(&mut rng, 30, -40, 40));
        // exercise the singular lines now and then
        let pt = match i % 50 {
            0 => CylinderPoint::new(Rational::from_integer(0.into()), pt.y().clone()),
            1 => CylinderPoint::new(Rational::new(1.into(), 2.into()), pt.y().clone()),
            _ => pt,
        };
        let img = step_exact(&pt, &alpha);
        let mirror = step_exact(&pt.reflected(), &alpha);
        if img.reflected() != mirror {
            sym_fail += 1;
            if first_bad.is_empty() {
                first_bad = format!("alpha={alpha} pt={pt}");
            }
        }
        let dy = vertical_increment(&pt, &img);
        let singular = img.x() == &Rational::from_integer(0.into()) || img.x() == &Rational::new(1.into(), 2.into());
        if (dy == 0) != singular {
            level_fail += 1;
        }
    }
    v.case("point-symmetry", 0, sym_fail, sym_fail == 0);
    v.case("level-set", 0, level_fail, level_fail == 0);
    if !first_bad.is_empty() {
        v.case("first-failure", "-", first_bad, false);
    }
    v
}

/// Two points sharing a band `floor(bq x)` and a grid height share a band after one step.
pub fn band_suite(samples: usize, seed: u64) -> VerdictReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut v = VerdictReport::new("bands", VerdictScope::Range { from: 0, to: samples as u64 });
    let mut fails = 0usize;
    for _ in 0..samples {
        let params = random_params(&mut rng, 60);
        let bq = params.bq() as i64;
        let band = rng.gen_range(0..bq);
        let level = Rational::from_integer(BigInt::from(rng.gen_range(-50i64..50)));
        let y = params.y0() + level;
        let in_band = |rng: &mut ChaCha8Rng| {
            let den = rng.gen_range(1..=500i64);
            let off = Rational::new(BigInt::from(rng.gen_range(0..den)), BigInt::from(den * bq));
            Rational::new(BigInt::from(band), BigInt::from(bq)) + off
        };
        let a = CylinderPoint::new(in_band(&mut rng), y.clone());
        let b = CylinderPoint::new(in_band(&mut rng), y);
        let alpha = params.alpha();
        let scale = Rational::from_integer(BigInt::from(bq));
        let fa = (step_exact(&a, &alpha).x() * &scale).floor();
        let fb = (step_exact(&b, &alpha).x() * &scale).floor();
        if fa != fb {
            fails += 1;
        }
    }
    v.case("band-preserved", 0, fails, fails == 0);
    v
}

/// Lattice iteration against exact iteration of the embedded point.
///
/// For each random parameter set with `bq <= max_bq`, a random state is
/// embedded on the cylinder and both maps run `steps` times; the projected
/// exact state and its vertical increment must match the lattice at every step.
pub fn commutation_suite(param_sets: usize, steps: usize, max_bq: u64, seed: u64) -> Result<VerdictReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut v = VerdictReport::new("commutation", VerdictScope::Range { from: 1, to: max_bq });
    for case in 0..param_sets {
        let params = random_params(&mut rng, max_bq);
        let alpha = params.alpha();
        let mut s = LatticeState::new(rng.gen_range(0..params.bq()), rng.gen_range(0..params.q()));
        let mut pt = embed(s, &params);
        let mut mismatch = None;
        for n in 0..steps {
            let (ns, dj) = step_lattice(s, &params);
            let npt = step_exact(&pt, &alpha);
            let dy = vertical_increment(&pt, &npt);
            let projected = project(&npt, &params)?;
            if projected != ns || dy != dj as i64 {
                mismatch = Some(format!("step {n}: lattice {ns} dj={dj}, exact {projected} dy={dy}"));
                break;
            }
            s = ns;
            pt = npt;
        }
        let pass = mismatch.is_none();
        v.case(
            format!("set={case}/{params}"),
            format!("{steps} agreeing steps"),
            mismatch.unwrap_or_else(|| "agree".into()),
            pass,
        );
    }
    v.sort_cases();
    Ok(v)
}
