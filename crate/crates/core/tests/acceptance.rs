//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails. Run with `cargo test --test acceptance`.

use std::io::Cursor;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use anyhow::{ensure, Context, Result};
use dstdmap::analytics::{render_portrait, sweep_escape_lengths, PortraitMode};
use dstdmap::io::write_pgm;
use dstdmap::lattice::{make_params, ReducedParams};
use dstdmap::orbit::{decompose, decompose_with_budget, escape_length, DEFAULT_STATE_BUDGET};
use dstdmap::theory::properties::{band_suite, commutation_suite, symmetry_suite};
use dstdmap::theory::{
    count_period4, lower_bound_sum, measure_dwell, search_escape_seed, verify_boundedness_theorem, verify_q4k2,
    verify_window_bound, VerdictReport,
};
use rayon::prelude::*;

const SEED: u64 = 0x5eed;

type Criterion = (&'static str, fn() -> Result<String>);

fn report_ok(r: &VerdictReport) -> Result<()> {
    if let Some(c) = r.failures().next() {
        anyhow::bail!("{}: {} expected {}, observed {}", r.suite, c.id, c.expected, c.observed);
    }
    ensure!(r.passed, "{} did not pass", r.suite);
    Ok(())
}

fn ac1() -> Result<String> {
    let t = Instant::now();
    let rec = escape_length(991)?;
    let dt = t.elapsed();
    ensure!(rec.ell == 414639, "l(991) = {}", rec.ell);
    Ok(format!("l(991) = {} in {:.3}s (target < 1s)", rec.ell, dt.as_secs_f64()))
}

fn ac2() -> Result<String> {
    let t = Instant::now();
    let d = decompose(&ReducedParams::unit(992)?)?;
    let dt = t.elapsed();
    ensure!(d.period_sum() == 992 * 992, "partition sum {}", d.period_sum());
    ensure!(d.escaping_count() == 0, "{} escaping orbits", d.escaping_count());
    ensure!(d.max_period() == 6168, "max period {}", d.max_period());
    Ok(format!("{} orbits, 0 escaping, max period 6168 in {:.2}s (target < 30s)", d.orbits.len(), dt.as_secs_f64()))
}

fn ac3() -> Result<String> {
    let sweep = sweep_escape_lengths(101, 499)?;
    ensure!(sweep.records.len() == 200, "{} records", sweep.records.len());
    ensure!((0.38..=0.48).contains(&sweep.mean_ratio), "mean {}", sweep.mean_ratio);
    Ok(format!(
        "mean l/q^2 = {:.6} over 200 odd q (min {:.4}, max {:.4})",
        sweep.mean_ratio, sweep.min_ratio, sweep.max_ratio
    ))
}

fn ac4() -> Result<String> {
    (1..=200u64).into_par_iter().try_for_each(|q| -> Result<()> {
        let params = ReducedParams::unit(q)?;
        let d = decompose(&params)?;
        ensure!(d.period_sum() as u128 == params.state_count(), "q={q}: partition");
        let esc: Vec<_> = d.escaping().collect();
        if q % 2 == 0 {
            ensure!(esc.is_empty(), "q={q}: {} escaping orbits", esc.len());
        } else {
            ensure!(esc.len() == 1, "q={q}: {} escaping orbits", esc.len());
            ensure!(esc[0].period % 2 == 1 && esc[0].winding != 0, "q={q}: escaping orbit {:?}", esc[0]);
        }
        report_ok(&verify_boundedness_theorem(&params, DEFAULT_STATE_BUDGET)?)
    })?;
    Ok("q = 1..200: even q bounded, odd q one escaping orbit of odd period".into())
}

fn ac5() -> Result<String> {
    let expected_b = [3u64, 13, 11, 45, 57, 103];
    let table_a = [1u64, 4, 4, 1, 26, 36];
    let mut found = Vec::new();
    for k in 1..=6u64 {
        let seed = search_escape_seed(k, 200, DEFAULT_STATE_BUDGET)?.with_context(|| format!("k={k}: no seed"))?;
        found.push((k, seed.b, seed.a));
    }
    let summary: Vec<String> = found
        .iter()
        .map(|&(k, b, a)| {
            let note = if a == table_a[k as usize - 1] { "" } else { " (table a differs)" };
            format!("k={k} b={b} a={a}{note}")
        })
        .collect();
    for &(k, b, _) in &found {
        ensure!(b == expected_b[k as usize - 1], "k={k}: b={b}, expected {}", expected_b[k as usize - 1]);
    }
    Ok(summary.join(", "))
}

fn ac6() -> Result<String> {
    (1..=50u64).into_par_iter().try_for_each(|k| report_ok(&verify_q4k2(k, 100_000)?))?;
    Ok("k = 1..50 escape with the mod-4 invariant".into())
}

fn ac7() -> Result<String> {
    let qs: Vec<u64> = (3..=2001).step_by(2).collect();
    let worst = qs
        .par_iter()
        .map(|&q| -> Result<f64> {
            let ell = escape_length(q)?.ell;
            let lb = lower_bound_sum(q);
            ensure!(lb <= ell, "q={q}: bound {lb} > l {ell}");
            Ok(if ell == 0 { 0.0 } else { lb as f64 / ell as f64 })
        })
        .try_reduce(|| 0.0, |a, b| Ok(a.max(b)))?;
    Ok(format!("{} odd q up to 2001, largest bound/l = {:.4}", qs.len(), worst))
}

fn ac8() -> Result<String> {
    let mut cases = 0u64;
    for q in (9..=99u64).step_by(2) {
        for m in 1..=q / 9 {
            for s in 0..m {
                let rep = measure_dwell(q, m, s)?;
                let floor = ((q - 1) / (2 * m)) as i64 - 1;
                ensure!(rep.n_m as i64 >= floor, "q={q} m={m} s={s}: N={} < {floor}", rep.n_m);
                ensure!(rep.holds(), "q={q} m={m} s={s}: dwell report disagrees");
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} (q, m, s) cases"))
}

fn ac9() -> Result<String> {
    for q in [101u64, 331, 991] {
        report_ok(&verify_window_bound(q)?)?;
    }
    Ok("q = 101, 331, 991".into())
}

fn ac10() -> Result<String> {
    for k in 1..=25u64 {
        let n = count_period4(k, DEFAULT_STATE_BUDGET)?;
        ensure!(n == 2 * k - 1, "k={k}: {n} period-4 orbits");
    }
    Ok("k = 1..25 give 2k - 1 period-4 orbits".into())
}

fn ac11() -> Result<String> {
    report_ok(&commutation_suite(50, 10_000, 60, SEED)?)?;
    (3..=301u64).step_by(2).collect::<Vec<_>>().par_iter().try_for_each(|&q| -> Result<()> {
        let ell = escape_length(q)?.ell;
        let d = decompose(&ReducedParams::unit(q)?)?;
        let esc: Vec<_> = d.escaping().collect();
        ensure!(esc.len() == 1 && esc[0].period == ell, "q={q}: l={ell}, decomposition {:?}", esc);
        Ok(())
    })?;
    Ok("50 parameter sets x 1e4 steps; l(q) matches decomposition for odd q <= 301".into())
}

fn ac12() -> Result<String> {
    report_ok(&symmetry_suite(10_000, SEED))?;
    report_ok(&band_suite(10_000, SEED))?;
    let mut runs = 0;
    for (p, q, a, b) in [(1, 992, 0, 1), (1, 991, 0, 1), (3, 50, 1, 2), (7, 33, 2, 5), (1, 40, 3, 7)] {
        let params = make_params(p, q, a, b)?;
        let d = decompose_with_budget(&params, DEFAULT_STATE_BUDGET)?;
        ensure!(d.period_sum() as u128 == params.state_count(), "{params}: partition sum {}", d.period_sum());
        runs += 1;
    }
    let params = ReducedParams::unit(257)?;
    let encode = |mode| -> Result<Vec<u8>> {
        let mut buf = Cursor::new(Vec::new());
        write_pgm(&mut buf, &render_portrait(&params, mode, DEFAULT_STATE_BUDGET)?)?;
        Ok(buf.into_inner())
    };
    for mode in [PortraitMode::PeriodShade, PortraitMode::EscapeMask] {
        ensure!(encode(mode)? == encode(mode)?, "raster bytes differ between runs ({mode})");
    }
    Ok(format!("1e4 symmetry samples, 1e4 band samples, {runs} extra partitions, rasters identical"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("escape length q=991", ac1),
        ("decomposition q=992", ac2),
        ("mean escape ratio", ac3),
        ("boundedness sweep q<=200", ac4),
        ("escape seed table", ac5),
        ("q=4k+2 construction", ac6),
        ("lower bound", ac7),
        ("dwell", ac8),
        ("window bound", ac9),
        ("period-4 census", ac10),
        ("oracle equivalence", ac11),
        ("property suites", ac12),
    ];
    let mut failed = 0;
    let total = Instant::now();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = check();
        let dt: Duration = t.elapsed();
        match outcome {
            Ok(detail) => println!("PASS AC{:<2} {name}: {detail} [{:.2}s]", i + 1, dt.as_secs_f64()),
            Err(e) => {
                failed += 1;
                println!("FAIL AC{:<2} {name}: {e:#} [{:.2}s]", i + 1, dt.as_secs_f64());
            }
        }
    }
    println!("{} of {} criteria passed in {:.1}s", criteria.len() - failed, criteria.len(), total.elapsed().as_secs_f64());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
