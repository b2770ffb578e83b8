//! Lemmas controlling how slowly the escaping orbit climbs past the
//! bottleneck, for `alpha = 1/q`, `y0 = 0`, odd `q`.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::lattice::{LatticeMap, LatticeState, ReducedParams};

use super::{VerdictReport, VerdictScope};

fn unit_odd(q: u64, min_q: u64) -> Result<ReducedParams> {
    if q.is_multiple_of(2) || q < min_q {
        return Err(Error::invalid(format!("need odd q >= {min_q}, got {q}")));
    }
    ReducedParams::unit(q)
}

/// `sum_{k=1}^{floor(q/9)} (floor((q-1)/(2k)) - 1)`, a lower bound on `l(q)`.
pub fn lower_bound_sum(q: u64) -> u64 {
    (1..=q / 9).map(|k| (q - 1) / (2 * k) - 1).sum()
}

/// Time spent bouncing between levels `(q+1)/2 + m` and `(q+1)/2 + m - 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DwellReport {
    pub q: u64,
    pub m: u64,
    pub start_r: u64,
    /// Number of consecutive iterates, starting point included, on the two levels.
    pub n_m: u64,
    /// `floor((q-1)/(2m)) - 1`.
    pub bound: u64,
    /// The first two iterates after the start.
    pub first: [LatticeState; 2],
}

impl DwellReport {
    pub fn holds(&self) -> bool {
        self.n_m >= self.bound
    }
}

/// Starts at `((q+1)/2 + s, (q+1)/2 + m)` and counts iterates until the
/// orbit leaves the two levels.
pub fn measure_dwell(q: u64, m: u64, s: u64) -> Result<DwellReport> {
    let params = unit_odd(q, 9)?;
    if m == 0 || m > q / 9 {
        return Err(Error::invalid(format!("m must lie in [1, {}], got {m}", q / 9)));
    }
    if s >= m {
        return Err(Error::invalid(format!("s must lie in [0, {}], got {s}", m - 1)));
    }
    let map = LatticeMap::new(params);
    let half = q.div_ceil(2);
    let (hi, lo) = (half + m, half + m - 1);
    let start = LatticeState::new(half + s, hi);
    let cap = q * q;

    let (s1, _) = map.step_state(start);
    let (s2, _) = map.step_state(s1);

    let mut state = start;
    let mut n_m = 1u64;
    while n_m <= cap {
        let (next, _) = map.step_state(state);
        if next.j != hi && next.j != lo {
            break;
        }
        n_m += 1;
        state = next;
    }
    Ok(DwellReport { q, m, start_r: start.r, n_m, bound: (q - 1) / (2 * m) - 1, first: [s1, s2] })
}

/// Every orbit that rises twice from level `(q+1)/2 + m - 2` lands with
/// `r2` in `[(q-1)/2, (q-1)/2 + m - 1]`. Vacuously true if none rises twice.
pub fn verify_two_rise_confinement(q: u64, m: u64) -> Result<VerdictReport> {
    let params = unit_odd(q, 3)?;
    if m == 0 || m > (q - 1) / 2 {
        return Err(Error::invalid(format!("m must lie in [1, {}], got {m}", (q - 1) / 2)));
    }
    let map = LatticeMap::new(params);
    let j0 = q.div_ceil(2) + m - 2;
    let (lo, hi) = ((q - 1) / 2, (q - 1) / 2 + m - 1);
    let mut v = VerdictReport::new("two-rise", VerdictScope::Params(params));
    for r0 in 0..q {
        let (r1, j1, d1) = map.step(r0, j0);
        if d1 != 1 {
            continue;
        }
        let (r2, _, d2) = map.step(r1, j1);
        if d2 != 1 {
            continue;
        }
        v.case(format!("m={m}/r0={r0}"), format!("[{lo}, {hi}]"), r2, (lo..=hi).contains(&r2));
    }
    Ok(v)
}

/// `floor(q ln q)`.
pub fn window_width(q: u64) -> u64 {
    (q as f64 * (q as f64).ln()).floor() as u64
}

/// Along the escaping orbit, any `W = floor(q ln q)` consecutive iterates
/// (so `|n' - n| < q ln q`) span a vertical range below `q`.
///
/// Windows starting anywhere in the period are covered by following the
/// orbit `W - 1` steps past its return; the lift keeps accumulating there.
pub fn verify_window_bound(q: u64) -> Result<VerdictReport> {
    let params = unit_odd(q, 3)?;
    let map = LatticeMap::new(params);
    let width = window_width(q).max(1) as usize;
    let start = LatticeState::new((q - 1) / 2, (q - 1) / 2);

    let mut period: Option<u64> = None;
    let mut max_osc: i64 = 0;
    let mut worst_at = 0u64;
    // (index, lift) monotone queues for the sliding max and min
    let mut qmax: VecDeque<(u64, i64)> = VecDeque::new();
    let mut qmin: VecDeque<(u64, i64)> = VecDeque::new();
    let (mut r, mut j) = (start.r, start.j);
    let mut lift = 0i64;
    let mut n = 0u64;
    let cap = q * q + width as u64;
    loop {
        while qmax.back().is_some_and(|&(_, v)| v <= lift) {
            qmax.pop_back();
        }
        qmax.push_back((n, lift));
        while qmin.back().is_some_and(|&(_, v)| v >= lift) {
            qmin.pop_back();
        }
        qmin.push_back((n, lift));
        if n + 1 >= width as u64 {
            let lo_idx = n + 1 - width as u64;
            while qmax.front().is_some_and(|&(i, _)| i < lo_idx) {
                qmax.pop_front();
            }
            while qmin.front().is_some_and(|&(i, _)| i < lo_idx) {
                qmin.pop_front();
            }
            let osc = qmax.front().unwrap().1 - qmin.front().unwrap().1;
            if osc > max_osc {
                max_osc = osc;
                worst_at = lo_idx;
            }
            if let Some(p) = period {
                if lo_idx + 1 >= p {
                    break;
                }
            }
        }
        let (nr, nj, dj) = map.step(r, j);
        r = nr;
        j = nj;
        lift += dj as i64;
        n += 1;
        if period.is_none() && r == start.r && j == start.j {
            period = Some(n);
        }
        if n > cap {
            return Err(Error::resource(format!("q={q}: watchdog tripped")));
        }
    }
    let period = period.expect("loop exits only after the return");
    let mut v = VerdictReport::new("window", VerdictScope::Params(params));
    v.case(
        format!("q={q}/W={width}/period={period}"),
        format!("< {q}"),
        format!("{max_osc} (window starting at n={worst_at})"),
        max_osc < q as i64,
    );
    Ok(v)
}
