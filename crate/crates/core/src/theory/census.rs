use crate::error::{Error, Result};
use crate::lattice::{LatticeState, ReducedParams};
use crate::orbit::{decompose_with_budget, trace_orbit};

use super::{VerdictReport, VerdictScope};

fn unit_4k(k: u64) -> Result<ReducedParams> {
    if k == 0 {
        return Err(Error::invalid("k must be positive"));
    }
    ReducedParams::unit(4 * k)
}

/// Number of orbits of exact period 4 for `alpha = 1/(4k)`, `y0 = 0`.
pub fn count_period4(k: u64, budget: u64) -> Result<u64> {
    let d = decompose_with_budget(&unit_4k(k)?, budget)?;
    Ok(d.orbits.iter().filter(|o| o.period == 4).count() as u64)
}

/// Census of period-4 orbits for `q = 4k`: the count is `2k - 1`, and the
/// origin and every `(r, k)` with `2k <= r < 3k - 1` have period 4.
pub fn verify_period4(k: u64, budget: u64) -> Result<VerdictReport> {
    let params = unit_4k(k)?;
    let count = count_period4(k, budget)?;
    let mut v = VerdictReport::new("period4", VerdictScope::Params(params));
    v.case("count", 2 * k - 1, count, count == 2 * k - 1);
    let origin = trace_orbit(LatticeState::new(0, 0), &params)?;
    v.case("origin", 4, origin.period, origin.period == 4);
    for r in 2 * k..3 * k - 1 {
        let o = trace_orbit(LatticeState::new(r, k), &params)?;
        v.case(format!("family/r={r}"), 4, o.period, o.period == 4);
    }
    Ok(v)
}
