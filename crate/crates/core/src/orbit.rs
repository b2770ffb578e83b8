//! Orbit tracing, full torus decomposition and the escape length `l(q)`.

use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{LatticeMap, LatticeState, ReducedParams};

/// Default cap on the number of torus states `decompose` will visit.
pub const DEFAULT_STATE_BUDGET: u64 = 200_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrbitClass {
    Bounded,
    Escaping,
}

impl fmt::Display for OrbitClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrbitClass::Bounded => "bounded",
            OrbitClass::Escaping => "escaping",
        })
    }
}

/// One periodic orbit of the torus map.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Orbit {
    /// Smallest state of the cycle in `(j, r)` order.
    pub representative: LatticeState,
    pub period: u64,
    /// Net vertical displacement over one period, in units of `q`.
    pub winding: i64,
}

impl Orbit {
    pub fn class(&self) -> OrbitClass {
        if self.winding == 0 {
            OrbitClass::Bounded
        } else {
            OrbitClass::Escaping
        }
    }

    pub fn is_escaping(&self) -> bool {
        self.winding != 0
    }
}

/// Partition of the whole torus into periodic orbits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub params: ReducedParams,
    /// Sorted by representative.
    pub orbits: Vec<Orbit>,
    pub total_points: u64,
}

impl Decomposition {
    pub fn escaping(&self) -> impl Iterator<Item = &Orbit> {
        self.orbits.iter().filter(|o| o.is_escaping())
    }

    pub fn escaping_count(&self) -> usize {
        self.escaping().count()
    }

    pub fn max_period(&self) -> u64 {
        self.orbits.iter().map(|o| o.period).max().unwrap_or(0)
    }

    pub fn period_sum(&self) -> u64 {
        self.orbits.iter().map(|o| o.period).sum()
    }
}

/// A decomposition together with the orbit index of every state
/// (state `(r, j)` at position `j * bq + r`).
#[derive(Clone, Debug)]
pub struct LabeledDecomposition {
    pub decomposition: Decomposition,
    pub labels: Vec<u32>,
}

impl LabeledDecomposition {
    pub fn orbit_of(&self, s: LatticeState) -> &Orbit {
        let bq = self.decomposition.params.bq();
        &self.decomposition.orbits[self.labels[(s.j * bq + s.r) as usize] as usize]
    }
}

/// `l(q)` with its ratio to `q^2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct EscapeRecord {
    pub q: u64,
    pub ell: u64,
    pub ratio: Ratio<u64>,
}

impl EscapeRecord {
    pub fn new(q: u64, ell: u64) -> Self {
        EscapeRecord { q, ell, ratio: Ratio::new(ell, q * q) }
    }

    pub fn ratio_f64(&self) -> f64 {
        *self.ratio.numer() as f64 / *self.ratio.denom() as f64
    }
}

fn check_budget(params: &ReducedParams, budget: u64) -> Result<u64> {
    let n = params.state_count();
    if n > budget as u128 {
        return Err(Error::resource(format!(
            "{params}: {n} states exceed the budget of {budget}"
        )));
    }
    Ok(n as u64)
}

/// Traces the cycle through `start` and classifies it.
pub fn trace_orbit(start: LatticeState, params: &ReducedParams) -> Result<Orbit> {
    start.validate(params)?;
    trace_with(&LatticeMap::new(*params), start)
}

pub(crate) fn trace_with(map: &LatticeMap, start: LatticeState) -> Result<Orbit> {
    let params = map.params();
    let limit = params.state_count();
    let (mut r, mut j) = (start.r, start.j);
    let mut rep = start;
    let mut period: u64 = 0;
    let mut lift: i64 = 0;
    loop {
        let (nr, nj, dj) = map.step(r, j);
        r = nr;
        j = nj;
        period += 1;
        lift += dj as i64;
        if r == start.r && j == start.j {
            break;
        }
        let s = LatticeState { r, j };
        if s < rep {
            rep = s;
        }
        if period as u128 > limit {
            return Err(Error::resource(format!(
                "{params}: orbit of {start} did not close within {limit} steps"
            )));
        }
    }
    finish(params, rep, period, lift)
}

fn finish(params: &ReducedParams, representative: LatticeState, period: u64, lift: i64) -> Result<Orbit> {
    let q = params.q() as i64;
    if lift % q != 0 {
        return Err(Error::InvariantViolation(format!(
            "{params}: orbit of {representative} has lift {lift}, not a multiple of q"
        )));
    }
    Ok(Orbit { representative, period, winding: lift / q })
}

struct Bitmap(Vec<u64>);

impl Bitmap {
    fn new(n: u64) -> Self {
        Bitmap(vec![0; n.div_ceil(64) as usize])
    }
    #[inline(always)]
    fn get(&self, i: u64) -> bool {
        self.0[(i >> 6) as usize] & (1 << (i & 63)) != 0
    }
    #[inline(always)]
    fn set(&mut self, i: u64) {
        self.0[(i >> 6) as usize] |= 1 << (i & 63);
    }
}

pub fn decompose(params: &ReducedParams) -> Result<Decomposition> {
    decompose_with_budget(params, DEFAULT_STATE_BUDGET)
}

/// Visits every state once, level-major, emitting one [`Orbit`] per cycle.
///
/// Scanning in `(j, r)` order means the first state met on a new cycle is
/// its smallest one, so representatives come out sorted.
pub fn decompose_with_budget(params: &ReducedParams, budget: u64) -> Result<Decomposition> {
    let total = check_budget(params, budget)?;
    let map = LatticeMap::new(*params);
    let bq = params.bq();
    let mut seen = Bitmap::new(total);
    let mut orbits = Vec::new();
    for j in 0..params.q() {
        for r in 0..bq {
            if seen.get(j * bq + r) {
                continue;
            }
            let (mut cr, mut cj) = (r, j);
            let mut period = 0u64;
            let mut lift = 0i64;
            loop {
                seen.set(cj * bq + cr);
                let (nr, nj, dj) = map.step(cr, cj);
                cr = nr;
                cj = nj;
                period += 1;
                lift += dj as i64;
                if cr == r && cj == j {
                    break;
                }
                if period > total {
                    return Err(Error::resource(format!("{params}: cycle watchdog tripped")));
                }
            }
            orbits.push(finish(params, LatticeState { r, j }, period, lift)?);
        }
    }
    Ok(Decomposition { params: *params, orbits, total_points: total })
}

/// Decomposition plus a per-state orbit index. Uses four bytes per state.
pub fn decompose_labeled(params: &ReducedParams, budget: u64) -> Result<LabeledDecomposition> {
    let total = check_budget(params, budget)?;
    let map = LatticeMap::new(*params);
    let bq = params.bq();
    let mut labels = vec![u32::MAX; total as usize];
    let mut orbits = Vec::new();
    for j in 0..params.q() {
        for r in 0..bq {
            if labels[(j * bq + r) as usize] != u32::MAX {
                continue;
            }
            let id = u32::try_from(orbits.len())
                .map_err(|_| Error::resource("more than 2^32 orbits"))?;
            let (mut cr, mut cj) = (r, j);
            let mut period = 0u64;
            let mut lift = 0i64;
            loop {
                labels[(cj * bq + cr) as usize] = id;
                let (nr, nj, dj) = map.step(cr, cj);
                cr = nr;
                cj = nj;
                period += 1;
                lift += dj as i64;
                if cr == r && cj == j {
                    break;
                }
            }
            orbits.push(finish(params, LatticeState { r, j }, period, lift)?);
        }
    }
    Ok(LabeledDecomposition {
        decomposition: Decomposition { params: *params, orbits, total_points: total },
        labels,
    })
}

/// First escaping orbit in scan order, stopping as soon as one is found.
pub fn find_escaping_orbit(params: &ReducedParams, budget: u64) -> Result<Option<Orbit>> {
    let total = check_budget(params, budget)?;
    let map = LatticeMap::new(*params);
    let bq = params.bq();
    let mut seen = Bitmap::new(total);
    for j in 0..params.q() {
        for r in 0..bq {
            if seen.get(j * bq + r) {
                continue;
            }
            let (mut cr, mut cj) = (r, j);
            let mut period = 0u64;
            let mut lift = 0i64;
            loop {
                seen.set(cj * bq + cr);
                let (nr, nj, dj) = map.step(cr, cj);
                cr = nr;
                cj = nj;
                period += 1;
                lift += dj as i64;
                if cr == r && cj == j {
                    break;
                }
            }
            if lift != 0 {
                return finish(params, LatticeState { r, j }, period, lift).map(Some);
            }
        }
    }
    Ok(None)
}

/// `l(q)` for `alpha = 1/q`, `y0 = 0`, odd `q >= 3`.
///
/// Follows the cycle through the bottleneck crossing `((q-1)/2, (q-1)/2)`
/// instead of decomposing the torus, so memory stays `O(q)`.
pub fn escape_length(q: u64) -> Result<EscapeRecord> {
    if q < 3 || q.is_multiple_of(2) {
        return Err(Error::invalid(format!("escape length needs odd q >= 3, got {q}")));
    }
    let params = ReducedParams::unit(q)?;
    let map = LatticeMap::new(params);
    let start = LatticeState::new((q - 1) / 2, (q - 1) / 2);
    let (mut r, mut j) = (start.r, start.j);
    let mut ell = 0u64;
    let mut lift = 0i64;
    let limit = q * q;
    loop {
        let (nr, nj, dj) = map.step(r, j);
        r = nr;
        j = nj;
        ell += 1;
        lift += dj as i64;
        if r == start.r && j == start.j {
            break;
        }
        if ell > limit {
            return Err(Error::resource(format!("q={q}: watchdog tripped")));
        }
    }
    if lift == 0 || ell.is_multiple_of(2) {
        return Err(Error::InvariantViolation(format!(
            "q={q}: bottleneck orbit has period {ell} and lift {lift}; expected odd and escaping"
        )));
    }
    Ok(EscapeRecord::new(q, ell))
}

/// Orbit periods in descending order, optionally without the escaping ones.
pub fn period_partition(d: &Decomposition, bounded_only: bool) -> Vec<u64> {
    let mut parts: Vec<u64> = d
        .orbits
        .iter()
        .filter(|o| !(bounded_only && o.is_escaping()))
        .map(|o| o.period)
        .collect();
    parts.sort_unstable_by(|a, b| b.cmp(a));
    parts
}
