use num_integer::Integer;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lattice::{make_params, LatticeMap, ReducedParams};
use crate::orbit::{find_escaping_orbit, Orbit};

use super::{VerdictReport, VerdictScope};

/// Escaping orbit from the half-integer level for `q = 4k + 2`.
///
/// With `y0 = 1/2` the orbit of `(4k - 1, 2k + 1)` rises twice at once and
/// keeps `r_m + (m mod 2) = 3 (mod 4)` along the way. The mod-4 invariant is
/// checked on the first `min(period, max_check)` iterates; the winding always
/// needs the full period.
pub fn verify_q4k2(k: u64, max_check: u64) -> Result<VerdictReport> {
    if k == 0 {
        return Err(Error::invalid("k must be positive"));
    }
    let params = make_params(1, 4 * k + 2, 1, 2)?;
    let map = LatticeMap::new(params);
    let (r0, j0) = (4 * k - 1, 2 * k + 1);
    let limit = params.state_count() as u64;

    let (mut r, mut j) = (r0, j0);
    let mut m = 0u64;
    let mut lift = 0i64;
    let mut first_moves = Vec::with_capacity(2);
    let mut mod4_bad: Option<(u64, u64)> = None;
    loop {
        if m < max_check && mod4_bad.is_none() && (r + m % 2) % 4 != 3 {
            mod4_bad = Some((m, r));
        }
        let (nr, nj, dj) = map.step(r, j);
        r = nr;
        j = nj;
        m += 1;
        lift += dj as i64;
        if first_moves.len() < 2 {
            first_moves.push(dj);
        }
        if r == r0 && j == j0 {
            break;
        }
        if m > limit {
            return Err(Error::resource(format!("{params}: watchdog tripped")));
        }
    }
    let period = m;
    let q = params.q() as i64;

    let mut v = VerdictReport::new("q4k2", VerdictScope::Params(params));
    v.case("two-rises", "[1, 1]", format!("{first_moves:?}"), first_moves == [1, 1]);
    let checked = period.min(max_check);
    v.case(
        "mod4",
        format!("r_m + (m mod 2) = 3 (mod 4) for m < {checked}"),
        match mod4_bad {
            None => "holds".to_string(),
            Some((m, r)) => format!("fails at m={m} (r={r})"),
        },
        mod4_bad.is_none(),
    );
    v.case("winding", "nonzero", format!("{} (period {period})", lift / q), lift != 0 && lift % q == 0);
    Ok(v)
}

/// Smallest-denominator starting level with an escaping orbit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EscapeSeed {
    pub b: u64,
    pub a: u64,
    pub orbit: Orbit,
}

/// Searches `y0 = a/b` for `alpha = 1/(4k)`, ordered by `b` then `a`.
pub fn search_escape_seed(k: u64, b_max: u64, budget: u64) -> Result<Option<EscapeSeed>> {
    if k == 0 {
        return Err(Error::invalid("k must be positive"));
    }
    search_escape_seed_with(1, 4 * k, b_max, None, budget)
}

/// General search over `y0 = a/b`, `1 <= b <= b_max`, `0 <= a < b`,
/// `gcd(a, b) = 1`, optionally restricted to one numerator.
///
/// Candidates are checked in parallel batches, but the reported seed is
/// always the first in `(b, a)` order.
pub fn search_escape_seed_with(
    p: u64,
    q: u64,
    b_max: u64,
    a_only: Option<u64>,
    budget: u64,
) -> Result<Option<EscapeSeed>> {
    make_params(p, q, 0, 1)?;
    const BATCH: usize = 512;
    let mut b = 1;
    while b <= b_max {
        let mut batch: Vec<(u64, u64)> = Vec::with_capacity(BATCH);
        while b <= b_max && batch.len() < BATCH {
            match a_only {
                Some(a) => {
                    if a < b && a.gcd(&b) == 1 {
                        batch.push((b, a));
                    }
                }
                None => batch.extend((0..b).filter(|a| a.gcd(&b) == 1).map(|a| (b, a))),
            }
            b += 1;
        }
        let hit = batch.par_iter().find_map_first(|&(b, a)| {
            let run = || -> Result<Option<EscapeSeed>> {
                let params: ReducedParams = make_params(p, q, a as i64, b)?;
                Ok(find_escaping_orbit(&params, budget)?.map(|orbit| EscapeSeed { b, a, orbit }))
            };
            run().transpose()
        });
        if let Some(found) = hit {
            return found.map(Some);
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbit::DEFAULT_STATE_BUDGET;

    #[test]
    fn q4k2_first_case() {
        let v = verify_q4k2(1, 100_000).unwrap();
        assert!(v.passed, "{}", v.to_json());
    }

    #[test]
    fn q4k2_by_hand() {
        // k = 1: r0 = 3, j0 = 3, bq = 12; r1 = 3 + 1 + 6 = 10
        let params = make_params(1, 6, 1, 2).unwrap();
        let map = LatticeMap::new(params);
        let (r1, j1, d1) = map.step(3, 3);
        assert_eq!((r1, j1, d1), (10, 4, 1));
        assert_eq!((r1 + 1) % 4, 3);
        let (_, j2, d2) = map.step(r1, j1);
        assert_eq!((j2, d2), (5, 1));
    }

    #[test]
    fn seeds_for_small_k() {
        let s = search_escape_seed(1, 10, DEFAULT_STATE_BUDGET).unwrap().unwrap();
        assert_eq!((s.b, s.a), (3, 1));
        assert!(s.orbit.is_escaping());
        let s = search_escape_seed(2, 20, DEFAULT_STATE_BUDGET).unwrap().unwrap();
        assert_eq!((s.b, s.a), (13, 4));
    }

    #[test]
    fn seed_search_not_found() {
        assert_eq!(search_escape_seed(2, 12, DEFAULT_STATE_BUDGET).unwrap(), None);
        assert_eq!(search_escape_seed_with(1, 12, 200, Some(1), DEFAULT_STATE_BUDGET).unwrap(), None);
    }

    #[test]
    fn odd_q_escapes_with_integer_start() {
        let s = search_escape_seed_with(1, 7, 5, None, DEFAULT_STATE_BUDGET).unwrap().unwrap();
        assert_eq!((s.b, s.a), (1, 0));
    }
}
