//! Sweeps of the escape length, Young diagrams of orbit periods, phase
//! portraits and island sampling.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lattice::{LatticeMap, LatticeState, ReducedParams};
use crate::orbit::{decompose_labeled, decompose_with_budget, escape_length, period_partition, trace_with, EscapeRecord};

/// `l(q)` over a range of odd `q`, with summary statistics of `l(q)/q^2`.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepResult {
    /// Strictly increasing in `q`.
    pub records: Vec<EscapeRecord>,
    pub mean_ratio: f64,
    pub min_ratio: f64,
    pub max_ratio: f64,
}

impl SweepResult {
    pub fn from_records(records: Vec<EscapeRecord>) -> Result<Self> {
        if records.is_empty() {
            return Err(Error::invalid("a sweep needs at least one record"));
        }
        if records.windows(2).any(|w| w[0].q >= w[1].q) {
            return Err(Error::invalid("sweep records must be strictly increasing in q"));
        }
        let ratios: Vec<f64> = records.iter().map(EscapeRecord::ratio_f64).collect();
        let mean_ratio = ratios.iter().sum::<f64>() / ratios.len() as f64;
        let min_ratio = ratios.iter().copied().fold(f64::INFINITY, f64::min);
        let max_ratio = ratios.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Ok(SweepResult { records, mean_ratio, min_ratio, max_ratio })
    }
}

/// `l(q)` for every odd `q` in `[q_from, q_to]`, computed in parallel and
/// returned in ascending `q`. Any failing `q` fails the sweep.
pub fn sweep_escape_lengths(q_from: u64, q_to: u64) -> Result<SweepResult> {
    if q_from < 3 || q_from > q_to {
        return Err(Error::invalid(format!("need 3 <= q_from <= q_to, got [{q_from}, {q_to}]")));
    }
    let qs: Vec<u64> = (q_from..=q_to).filter(|q| q % 2 == 1).collect();
    let records = qs
        .into_par_iter()
        .map(escape_length)
        .collect::<Result<Vec<_>>>()?;
    SweepResult::from_records(records)
}

/// Orbit periods as a partition, both axes scaled by `1/q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YoungDiagram {
    pub q: u64,
    /// Descending periods divided by `q`.
    pub parts: Vec<Ratio<u64>>,
    pub bounded_only: bool,
}

impl YoungDiagram {
    pub fn from_periods(q: u64, periods: &[u64], bounded_only: bool) -> Self {
        let mut periods = periods.to_vec();
        periods.sort_unstable_by(|a, b| b.cmp(a));
        let parts = periods.into_iter().map(|p| Ratio::new(p, q)).collect();
        YoungDiagram { q, parts, bounded_only }
    }

    /// Sum of the unscaled parts.
    pub fn total(&self) -> u64 {
        self.parts.iter().map(|p| (p * self.q).to_integer()).sum()
    }
}

pub fn young_diagram(params: &ReducedParams, bounded_only: bool, budget: u64) -> Result<YoungDiagram> {
    let d = decompose_with_budget(params, budget)?;
    Ok(YoungDiagram::from_periods(params.q(), &period_partition(&d, bounded_only), bounded_only))
}

/// Sup-distance between the scaled step functions of two diagrams.
///
/// Part `i` of a diagram occupies `[i/q, (i+1)/q)` horizontally; past the
/// last part the function is 0. Both functions are constant between
/// consecutive breakpoints, so checking every breakpoint is exact.
pub fn diagram_distance(d1: &YoungDiagram, d2: &YoungDiagram) -> f64 {
    let mut ts: Vec<Ratio<u64>> = (0..=d1.parts.len() as u64)
        .map(|i| Ratio::new(i, d1.q))
        .chain((0..=d2.parts.len() as u64).map(|i| Ratio::new(i, d2.q)))
        .collect();
    ts.sort_unstable();
    ts.dedup();
    let at = |d: &YoungDiagram, t: &Ratio<u64>| -> Ratio<i128> {
        let idx = (t * d.q).to_integer() as usize;
        match d.parts.get(idx) {
            Some(p) => Ratio::new(*p.numer() as i128, *p.denom() as i128),
            None => Ratio::from_integer(0),
        }
    };
    let best = ts
        .iter()
        .map(|t| {
            let diff = at(d1, t) - at(d2, t);
            if diff < Ratio::from_integer(0) {
                -diff
            } else {
                diff
            }
        })
        .max()
        .unwrap_or_else(|| Ratio::from_integer(0));
    *best.numer() as f64 / *best.denom() as f64
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PortraitMode {
    /// Shade by dense rank of the orbit period; shorter periods are lighter.
    PeriodShade,
    /// White on escaping orbits, black elsewhere.
    EscapeMask,
}

impl FromStr for PortraitMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "period" => Ok(PortraitMode::PeriodShade),
            "escape" => Ok(PortraitMode::EscapeMask),
            other => Err(Error::invalid(format!("unknown portrait mode '{other}'"))),
        }
    }
}

impl fmt::Display for PortraitMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PortraitMode::PeriodShade => "period",
            PortraitMode::EscapeMask => "escape",
        })
    }
}

/// 16-bit grayscale image of the torus: column `r`, row `q - 1 - j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PortraitRaster {
    pub width: u64,
    pub height: u64,
    pub mode: PortraitMode,
    /// Row-major, top row first.
    pub pixels: Vec<u16>,
}

impl PortraitRaster {
    pub fn get(&self, col: u64, row: u64) -> u16 {
        self.pixels[(row * self.width + col) as usize]
    }

    /// Pixel of lattice state `s`.
    pub fn at_state(&self, s: LatticeState) -> u16 {
        self.get(s.r, self.height - 1 - s.j)
    }
}

pub fn render_portrait(params: &ReducedParams, mode: PortraitMode, budget: u64) -> Result<PortraitRaster> {
    let labeled = decompose_labeled(params, budget)?;
    let orbits = &labeled.decomposition.orbits;
    let shade: Vec<u16> = match mode {
        PortraitMode::EscapeMask => orbits.iter().map(|o| if o.is_escaping() { u16::MAX } else { 0 }).collect(),
        PortraitMode::PeriodShade => {
            let mut distinct: Vec<u64> = orbits.iter().map(|o| o.period).collect();
            distinct.sort_unstable();
            distinct.dedup();
            let max_rank = (distinct.len() - 1) as u64;
            orbits
                .iter()
                .map(|o| {
                    if max_rank == 0 {
                        return u16::MAX;
                    }
                    let rank = distinct.binary_search(&o.period).expect("period present") as u64;
                    (65535 - 65535 * rank / max_rank) as u16
                })
                .collect()
        }
    };
    let (w, h) = (params.bq(), params.q());
    let mut pixels = vec![0u16; (w * h) as usize];
    for j in 0..h {
        let row = h - 1 - j;
        for r in 0..w {
            pixels[(row * w + r) as usize] = shade[labeled.labels[(j * w + r) as usize] as usize];
        }
    }
    Ok(PortraitRaster { width: w, height: h, mode, pixels })
}

/// One sampled orbit near an island level.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IslandSample {
    pub start: LatticeState,
    pub period: u64,
    pub winding: i64,
}

/// Traces `sample` evenly spaced starts on each level nearest `q/(2n+1)`
/// (for `alpha = 1/q`, `y0 = 0`). Exploratory: reports periods only.
pub fn island_scan(q: u64, n: u64, sample: u64) -> Result<Vec<IslandSample>> {
    if q < 3 {
        return Err(Error::invalid(format!("island scan needs q >= 3, got {q}")));
    }
    let params = ReducedParams::unit(q)?;
    let map = LatticeMap::new(params);
    let div = 2 * n + 1;
    let mut levels = vec![(q / div) % q, q.div_ceil(div) % q];
    levels.dedup();
    let mut starts = Vec::new();
    for &j in &levels {
        let mut rs: Vec<u64> = (0..sample.min(q)).map(|i| i * q / sample.min(q)).collect();
        rs.dedup();
        starts.extend(rs.into_iter().map(|r| LatticeState::new(r, j)));
    }
    starts
        .into_par_iter()
        .map(|start| {
            let o = trace_with(&map, start)?;
            Ok(IslandSample { start, period: o.period, winding: o.winding })
        })
        .collect()
}

/// Median of the reported periods (upper median for even counts).
pub fn median_period(samples: &[IslandSample]) -> Option<u64> {
    let mut p: Vec<u64> = samples.iter().map(|s| s.period).collect();
    p.sort_unstable();
    p.get(p.len() / 2).copied()
}
