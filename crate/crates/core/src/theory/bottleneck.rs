use crate::error::{Error, Result};
use crate::lattice::{LatticeMap, LatticeState, ReducedParams};
use crate::orbit::{decompose_with_budget, trace_orbit};

use super::{VerdictReport, VerdictScope};

/// Solutions of `p (a + b j) = floor(bq / 2) (mod bq)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BottleneckSolution {
    /// Class representative in `[0, q)`, if the congruence is solvable.
    pub j_star: Option<u64>,
    /// All `b` solutions `j* + kq` modulo `bq`, ascending.
    pub solutions_mod_bq: Vec<u64>,
}

impl BottleneckSolution {
    pub fn exists(&self) -> bool {
        self.j_star.is_some()
    }
}

/// `(g, x, y)` with `a x + b y = g = gcd(a, b)`.
fn extended_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut r0, mut r1) = (a, b);
    let (mut x0, mut x1) = (1i128, 0i128);
    let (mut y0, mut y1) = (0i128, 1i128);
    while r1 != 0 {
        let k = r0 / r1;
        (r0, r1) = (r1, r0 - k * r1);
        (x0, x1) = (x1, x0 - k * x1);
        (y0, y1) = (y1, y0 - k * y1);
    }
    (r0, x0, y0)
}

/// Solves `a x = c (mod m)`.
///
/// Returns `(x0, step)` with every solution of the form `x0 + k * step`,
/// `0 <= x0 < step`, or `None` when `gcd(a, m)` does not divide `c`.
pub fn solve_linear_congruence(a: u64, c: u64, m: u64) -> Option<(u64, u64)> {
    assert!(m > 0, "modulus must be positive");
    let (a, c, m) = (a as i128 % m as i128, c as i128 % m as i128, m as i128);
    let (g, x, _) = extended_gcd(a, m);
    if c % g != 0 {
        return None;
    }
    let step = m / g;
    let x0 = ((x % step) * ((c / g) % step)).rem_euclid(step);
    Some((x0 as u64, step as u64))
}

pub fn solve_bottleneck(params: &ReducedParams) -> BottleneckSolution {
    let bq = params.bq();
    let target = bq / 2;
    // p b j = floor(bq/2) - p a  (mod bq)
    let pa = (params.p() as u128 * params.a() as u128 % bq as u128) as u64;
    let rhs = (target + bq - pa) % bq;
    let coeff = (params.p() as u128 * params.b() as u128 % bq as u128) as u64;
    match solve_linear_congruence(coeff, rhs, bq) {
        Some((j0, step)) => {
            debug_assert_eq!(step, params.q());
            let j_star = j0 % params.q();
            let solutions_mod_bq = (0..params.b()).map(|k| j_star + k * params.q()).collect();
            BottleneckSolution { j_star: Some(j_star), solutions_mod_bq }
        }
        None => BottleneckSolution { j_star: None, solutions_mod_bq: Vec::new() },
    }
}

/// Horizontal positions at level `j*` of orbits that pass it in one
/// direction: `up` collects `r1` for `(r0, j*-1) -> (r1, j*) -> (r2, j*+1)`,
/// and the reverse otherwise.
fn crossings(map: &LatticeMap, j_star: u64, up: bool) -> Vec<u64> {
    let p = map.params();
    let q = p.q();
    let from = if up { (j_star + q - 1) % q } else { (j_star + 1) % q };
    let dir = if up { 1 } else { -1 };
    let mut out = Vec::new();
    for r in 0..p.bq() {
        let (r1, j1, d1) = map.step(r, from);
        if d1 != dir {
            continue;
        }
        let (_, _, d2) = map.step(r1, j1);
        if d2 == dir {
            out.push(r1);
        }
    }
    out.sort_unstable();
    out
}

/// Checks the boundedness theorem for one parameter set on the full decomposition.
///
/// Even `bq`: no escaping orbits and no orbit passes level `j*` in either
/// direction. Odd `bq`: exactly one escaping orbit, passing `j*` upward only
/// at `r = (bq - 1) / 2`.
pub fn verify_boundedness_theorem(params: &ReducedParams, budget: u64) -> Result<VerdictReport> {
    let sol = solve_bottleneck(params);
    let j_star = sol.j_star.ok_or_else(|| {
        Error::HypothesisViolation(format!(
            "{params}: floor(bq/2) - p a is not divisible by b, no bottleneck level"
        ))
    })?;
    let d = decompose_with_budget(params, budget)?;
    let map = LatticeMap::new(*params);
    let bq = params.bq();
    let mut v = VerdictReport::new("bottleneck", VerdictScope::Params(*params));
    v.case("j-star", "congruence holds", j_star, {
        let lhs = params.increment(j_star);
        lhs == bq / 2
    });
    v.case("partition", d.total_points, d.period_sum(), d.period_sum() == d.total_points);
    let parity_ok = d
        .orbits
        .iter()
        .all(|o| (o.period as i128 - o.winding as i128 * params.q() as i128) % 2 == 0);
    v.case("parity", "period = winding*q (mod 2)", if parity_ok { "holds" } else { "violated" }, parity_ok);

    let up = crossings(&map, j_star, true);
    if params.delta() == 0 {
        let down = crossings(&map, j_star, false);
        v.case("escaping-orbits", 0, d.escaping_count(), d.escaping_count() == 0);
        v.case("upward-crossings", "[]", format!("{up:?}"), up.is_empty());
        v.case("downward-crossings", "[]", format!("{down:?}"), down.is_empty());
    } else {
        let gate = (bq - 1) / 2;
        v.case("escaping-orbits", 1, d.escaping_count(), d.escaping_count() == 1);
        v.case("upward-crossings", format!("[{gate}]"), format!("{up:?}"), up == [gate]);
        let through = trace_orbit(LatticeState::new(gate, j_star), params)?;
        let on_escaping = through.is_escaping() && d.escaping().any(|o| *o == through);
        v.case(
            "escaping-through-gate",
            format!("({gate}, {j_star}) on the escaping orbit"),
            format!("period {} winding {}", through.period, through.winding),
            on_escaping,
        );
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::make_params;
    use crate::orbit::DEFAULT_STATE_BUDGET;

    #[test]
    fn egcd_identity() {
        for (a, b) in [(240, 46), (17, 5), (0, 7), (7, 0), (1, 1)] {
            let (g, x, y) = extended_gcd(a, b);
            assert_eq!(a * x + b * y, g);
        }
    }

    #[test]
    fn congruence_brute_force() {
        for m in 1..40u64 {
            for a in 0..m {
                for c in 0..m {
                    let brute: Vec<u64> = (0..m).filter(|x| (a * x) % m == c).collect();
                    match solve_linear_congruence(a, c, m) {
                        None => assert!(brute.is_empty(), "a={a} c={c} m={m}"),
                        Some((x0, step)) => {
                            let ours: Vec<u64> = (0..m / step).map(|k| x0 + k * step).collect();
                            assert_eq!(ours, brute, "a={a} c={c} m={m}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn bottleneck_examples() {
        let s = solve_bottleneck(&make_params(1, 3, 0, 1).unwrap());
        assert_eq!(s.j_star, Some(1));
        assert_eq!(s.solutions_mod_bq, vec![1]);
        let s = solve_bottleneck(&make_params(1, 2, 1, 2).unwrap());
        assert!(!s.exists());
        let s = solve_bottleneck(&make_params(1, 991, 0, 1).unwrap());
        assert_eq!(s.j_star, Some(495));
    }

    #[test]
    fn bottleneck_has_b_solutions() {
        for (p, q, a, b) in [(1, 5, 2, 1), (3, 7, 1, 3), (2, 9, 0, 1), (1, 3, 1, 2), (5, 4, 3, 5)] {
            let params = make_params(p, q, a, b).unwrap();
            let s = solve_bottleneck(&params);
            if let Some(j) = s.j_star {
                assert_eq!(s.solutions_mod_bq.len() as u64, params.b());
                for &jj in &s.solutions_mod_bq {
                    assert_eq!(jj % params.q(), j);
                    let lhs = (params.p() as u128 * (params.a() + params.b() * jj) as u128) % params.bq() as u128;
                    assert_eq!(lhs as u64, params.bq() / 2);
                }
            }
        }
    }

    #[test]
    fn theorem_small_cases() {
        let v = verify_boundedness_theorem(&make_params(1, 4, 0, 1).unwrap(), DEFAULT_STATE_BUDGET).unwrap();
        assert!(v.passed, "{}", v.to_json());
        let v = verify_boundedness_theorem(&make_params(1, 3, 0, 1).unwrap(), DEFAULT_STATE_BUDGET).unwrap();
        assert!(v.passed, "{}", v.to_json());
        let up = v.cases.iter().find(|c| c.id == "upward-crossings").unwrap();
        assert_eq!(up.observed, "[1]");
    }

    #[test]
    fn theorem_requires_hypothesis() {
        let err = verify_boundedness_theorem(&make_params(1, 2, 1, 2).unwrap(), DEFAULT_STATE_BUDGET).unwrap_err();
        assert!(matches!(err, Error::HypothesisViolation(_)));
    }

    #[test]
    fn theorem_with_fractional_start() {
        // every solvable (p, q, a, b) with small bq
        for q in 1..12u64 {
            for p in 1..6u64 {
                for b in 1..5u64 {
                    for a in 0..b {
                        let Ok(params) = make_params(p, q, a as i64, b) else { continue };
                        if !solve_bottleneck(&params).exists() {
                            continue;
                        }
                        let v = verify_boundedness_theorem(&params, DEFAULT_STATE_BUDGET).unwrap();
                        assert!(v.passed, "{params}: {}", v.to_json());
                    }
                }
            }
        }
    }
}
