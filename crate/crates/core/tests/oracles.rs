//! Independent oracles: orbits enumerated through the exact cylinder map and
//! a hash map, with no use of the torus step or the decomposition code.

use std::collections::HashMap;

use dstdmap::exact::{step_exact, vertical_increment, Rational};
use dstdmap::lattice::{embed, make_params, project, LatticeState, ReducedParams};
use dstdmap::orbit::{decompose, escape_length, period_partition, trace_orbit};
use dstdmap::theory::{lower_bound_sum, solve_bottleneck};

/// Successor and vertical move of every state, via the exact map.
fn exact_successors(params: &ReducedParams) -> HashMap<LatticeState, (LatticeState, i64)> {
    let alpha = params.alpha();
    let mut succ = HashMap::new();
    for j in 0..params.q() {
        for r in 0..params.bq() {
            let s = LatticeState::new(r, j);
            let pt = embed(s, params);
            let img = step_exact(&pt, &alpha);
            succ.insert(s, (project(&img, params).unwrap(), vertical_increment(&pt, &img)));
        }
    }
    succ
}

/// Cycles as (min state, period, lift).
fn brute_force_cycles(params: &ReducedParams) -> Vec<(LatticeState, u64, i64)> {
    let succ = exact_successors(params);
    let mut done: HashMap<LatticeState, bool> = HashMap::new();
    let mut keys: Vec<LatticeState> = succ.keys().copied().collect();
    keys.sort();
    let mut out = Vec::new();
    for s in keys {
        if done.contains_key(&s) {
            continue;
        }
        let (mut cur, mut n, mut lift, mut min) = (s, 0u64, 0i64, s);
        loop {
            done.insert(cur, true);
            let (next, d) = succ[&cur];
            n += 1;
            lift += d;
            cur = next;
            min = min.min(cur);
            if cur == s {
                break;
            }
        }
        out.push((min, n, lift));
    }
    out.sort();
    out
}

#[test]
fn q3_by_enumeration() {
    let params = ReducedParams::unit(3).unwrap();
    let cycles = brute_force_cycles(&params);
    assert_eq!(
        cycles,
        vec![
            (LatticeState::new(0, 0), 4, 0),
            (LatticeState::new(1, 0), 3, 3),
            (LatticeState::new(0, 1), 2, 0),
        ]
    );
    let d = decompose(&params).unwrap();
    let ours: Vec<_> = d.orbits.iter().map(|o| (o.representative, o.period, o.winding * 3)).collect();
    assert_eq!(ours, cycles);
}

#[test]
fn decomposition_matches_enumeration() {
    for (p, q, a, b) in [(1, 4, 0, 1), (1, 5, 0, 1), (1, 6, 1, 2), (2, 5, 1, 3), (3, 4, 1, 3), (1, 9, 0, 1), (5, 6, 2, 5), (1, 8, 4, 13)] {
        let params = make_params(p, q, a, b).unwrap();
        let oracle = brute_force_cycles(&params);
        let d = decompose(&params).unwrap();
        let ours: Vec<_> = d
            .orbits
            .iter()
            .map(|o| (o.representative, o.period, o.winding * params.q() as i64))
            .collect();
        assert_eq!(ours, oracle, "{params}");
    }
}

#[test]
fn escape_length_nine_by_enumeration() {
    let params = ReducedParams::unit(9).unwrap();
    let escaping: Vec<_> = brute_force_cycles(&params).into_iter().filter(|c| c.2 != 0).collect();
    assert_eq!(escaping.len(), 1);
    assert_eq!(escape_length(9).unwrap().ell, escaping[0].1);
    assert!(lower_bound_sum(9) <= escaping[0].1);
}

#[test]
fn q4k2_first_two_steps_by_exact_map() {
    // q = 6, y0 = 1/2, start (3, 3): two consecutive rises
    let params = make_params(1, 6, 1, 2).unwrap();
    let alpha = params.alpha();
    let p0 = embed(LatticeState::new(3, 3), &params);
    let p1 = step_exact(&p0, &alpha);
    let p2 = step_exact(&p1, &alpha);
    assert_eq!(vertical_increment(&p0, &p1), 1);
    assert_eq!(vertical_increment(&p1, &p2), 1);
    assert_eq!(project(&p1, &params).unwrap(), LatticeState::new(10, 4));
}

#[test]
fn bottleneck_by_search() {
    for (p, q, a, b) in [(1, 3, 0, 1), (1, 991, 0, 1), (3, 10, 2, 3), (1, 2, 1, 2), (7, 9, 1, 4)] {
        let params = make_params(p, q, a, b).unwrap();
        let target = params.bq() / 2;
        let brute: Vec<u64> = (0..params.bq())
            .filter(|&j| (p as u128 * (params.a() + params.b() * j) as u128 % params.bq() as u128) as u64 == target)
            .collect();
        let sol = solve_bottleneck(&params);
        assert_eq!(sol.solutions_mod_bq, brute, "{params}");
        assert_eq!(sol.j_star, brute.first().copied());
    }
}

#[test]
fn period_four_counts_by_enumeration() {
    for k in 1..=5u64 {
        let params = ReducedParams::unit(4 * k).unwrap();
        let n4 = brute_force_cycles(&params).iter().filter(|c| c.1 == 4).count() as u64;
        assert_eq!(n4, 2 * k - 1);
    }
}

#[test]
fn reflection_preserves_period_multiset() {
    // (x, y) -> (1 - x, -y) conjugates the map. It keeps the grid only when
    // bq is even and b divides 2a.
    for (p, q, a, b) in [(1, 8, 0, 1), (3, 10, 1, 2), (1, 5, 1, 2), (3, 14, 0, 1), (5, 12, 1, 2)] {
        let params = make_params(p, q, a, b).unwrap();
        let d = decompose(&params).unwrap();
        let mut mirrored: Vec<u64> = d
            .orbits
            .iter()
            .map(|o| {
                let pt = embed(o.representative, &params).reflected();
                let s = project(&pt, &params).unwrap();
                let m = trace_orbit(s, &params).unwrap();
                assert_eq!(m.winding, -o.winding, "{params}");
                m.period
            })
            .collect();
        mirrored.sort_unstable_by(|a, b| b.cmp(a));
        assert_eq!(mirrored, period_partition(&d, false), "{params}");
    }
}

#[test]
fn escape_orbit_climbs_on_the_cylinder() {
    // replay the q = 11 escaping orbit exactly: after l(11) steps the point
    // returns to its band, one winding (11 levels) higher or lower
    let params = ReducedParams::unit(11).unwrap();
    let ell = escape_length(11).unwrap().ell;
    let start = LatticeState::new(5, 5);
    let mut pt = embed(start, &params);
    let y0 = pt.y().clone();
    for _ in 0..ell {
        pt = step_exact(&pt, &params.alpha());
    }
    assert_eq!(project(&pt, &params).unwrap(), start);
    let climb: Rational = pt.y() - &y0;
    assert!(climb == Rational::from_integer(11.into()) || climb == Rational::from_integer((-11).into()));
}
