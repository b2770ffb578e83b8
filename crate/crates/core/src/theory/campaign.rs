//! Named verification campaigns over parameter ranges, as run by `dsm verify`.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lattice::ReducedParams;
use crate::orbit::{escape_length, DEFAULT_STATE_BUDGET};

use super::{
    lower_bound_sum, measure_dwell, properties, verify_boundedness_theorem, verify_period4, verify_q4k2,
    verify_two_rise_confinement, verify_window_bound, VerdictReport, VerdictScope,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Symmetry,
    Bands,
    Bottleneck,
    Q4k2,
    Dwell,
    TwoRise,
    Window,
    Period4,
    LowerBound,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Symmetry,
        Suite::Bands,
        Suite::Bottleneck,
        Suite::Q4k2,
        Suite::Dwell,
        Suite::TwoRise,
        Suite::Window,
        Suite::Period4,
        Suite::LowerBound,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Symmetry => "symmetry",
            Suite::Bands => "bands",
            Suite::Bottleneck => "bottleneck",
            Suite::Q4k2 => "q4k2",
            Suite::Dwell => "dwell",
            Suite::TwoRise => "two-rise",
            Suite::Window => "window",
            Suite::Period4 => "period4",
            Suite::LowerBound => "lower-bound",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::invalid(format!("unknown suite '{s}'")))
    }
}

/// Range limits for a campaign. `None` picks the suite's default.
#[derive(Clone, Copy, Debug)]
pub struct CampaignOptions {
    pub q_max: Option<u64>,
    pub k_max: Option<u64>,
    pub budget: u64,
    pub samples: usize,
    pub seed: u64,
}

impl Default for CampaignOptions {
    fn default() -> Self {
        CampaignOptions { q_max: None, k_max: None, budget: DEFAULT_STATE_BUDGET, samples: 10_000, seed: 0x5eed }
    }
}

fn odd_range(from: u64, to: u64) -> Vec<u64> {
    (from..=to).filter(|q| q % 2 == 1).collect()
}

fn merged(suite: Suite, from: u64, to: u64, parts: Vec<VerdictReport>, key: &str) -> VerdictReport {
    VerdictReport::merge(suite.name(), VerdictScope::Range { from, to }, parts, |r| match &r.params {
        VerdictScope::Params(p) => format!("{key}={}", if key == "k" { p.q() / 4 } else { p.q() }),
        VerdictScope::Range { from, .. } => format!("{key}={from}"),
    })
}

pub fn run_suite(suite: Suite, opts: &CampaignOptions) -> Result<VerdictReport> {
    match suite {
        Suite::Symmetry => Ok(properties::symmetry_suite(opts.samples, opts.seed)),
        Suite::Bands => Ok(properties::band_suite(opts.samples, opts.seed)),
        Suite::Bottleneck => {
            let q_max = opts.q_max.unwrap_or(200);
            let parts = (1..=q_max)
                .into_par_iter()
                .map(|q| verify_boundedness_theorem(&ReducedParams::unit(q)?, opts.budget))
                .collect::<Result<Vec<_>>>()?;
            Ok(merged(suite, 1, q_max, parts, "q"))
        }
        Suite::Q4k2 => {
            let k_max = opts.k_max.unwrap_or(50);
            let parts = (1..=k_max)
                .into_par_iter()
                .map(|k| verify_q4k2(k, 100_000))
                .collect::<Result<Vec<_>>>()?;
            let mut v = VerdictReport::merge(suite.name(), VerdictScope::Range { from: 1, to: k_max }, parts, |r| {
                match &r.params {
                    VerdictScope::Params(p) => format!("k={}", (p.q() - 2) / 4),
                    VerdictScope::Range { from, .. } => format!("k={from}"),
                }
            });
            v.sort_cases();
            Ok(v)
        }
        Suite::Dwell => {
            let q_max = opts.q_max.unwrap_or(99);
            let cases: Vec<(u64, u64, u64)> = odd_range(9, q_max)
                .into_iter()
                .flat_map(|q| (1..=q / 9).flat_map(move |m| (0..m).map(move |s| (q, m, s))))
                .collect();
            let reports = cases
                .par_iter()
                .map(|&(q, m, s)| measure_dwell(q, m, s))
                .collect::<Result<Vec<_>>>()?;
            let mut v = VerdictReport::new(suite.name(), VerdictScope::Range { from: 9, to: q_max });
            for d in reports {
                v.case(
                    format!("q={}/m={}/s={}", d.q, d.m, d.start_r - d.q.div_ceil(2)),
                    format!(">= {}", d.bound),
                    d.n_m,
                    d.holds(),
                );
            }
            v.sort_cases();
            Ok(v)
        }
        Suite::TwoRise => {
            let q_max = opts.q_max.unwrap_or(99);
            let parts = odd_range(3, q_max)
                .into_par_iter()
                .map(|q| {
                    let subs = (1..=(q - 1) / 2)
                        .map(|m| verify_two_rise_confinement(q, m))
                        .collect::<Result<Vec<_>>>()?;
                    Ok(VerdictReport::merge(
                        "two-rise",
                        VerdictScope::Params(ReducedParams::unit(q)?),
                        subs,
                        |_| String::from("case"),
                    ))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(merged(suite, 3, q_max, parts, "q"))
        }
        Suite::Window => {
            let qs = match opts.q_max {
                // the dwell lemmas behind the bound need q >= 9; q = 5 is a counterexample
                Some(q_max) => odd_range(9, q_max),
                None => vec![101, 331, 991],
            };
            let (from, to) = (qs.first().copied().unwrap_or(0), qs.last().copied().unwrap_or(0));
            let parts = qs.into_par_iter().map(verify_window_bound).collect::<Result<Vec<_>>>()?;
            Ok(merged(suite, from, to, parts, "q"))
        }
        Suite::Period4 => {
            let k_max = opts.k_max.unwrap_or(25);
            let parts = (1..=k_max)
                .into_par_iter()
                .map(|k| verify_period4(k, opts.budget))
                .collect::<Result<Vec<_>>>()?;
            Ok(merged(suite, 1, k_max, parts, "k"))
        }
        Suite::LowerBound => {
            let q_max = opts.q_max.unwrap_or(2001);
            let rows = odd_range(3, q_max)
                .into_par_iter()
                .map(|q| escape_length(q).map(|rec| (q, lower_bound_sum(q), rec.ell)))
                .collect::<Result<Vec<_>>>()?;
            let mut v = VerdictReport::new(suite.name(), VerdictScope::Range { from: 3, to: q_max });
            for (q, bound, ell) in rows {
                v.case(format!("q={q}"), format!(">= {bound}"), ell, bound <= ell);
            }
            Ok(v)
        }
    }
}

/// Every suite in a fixed order.
pub fn run_all(opts: &CampaignOptions) -> Result<Vec<VerdictReport>> {
    Suite::ALL.iter().map(|&s| run_suite(s, opts)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn small_campaigns_pass() {
        let opts = CampaignOptions { q_max: Some(31), k_max: Some(4), samples: 200, ..Default::default() };
        for s in Suite::ALL {
            let v = run_suite(s, &opts).unwrap();
            assert!(v.passed, "{s}: {:?}", v.failures().collect::<Vec<_>>());
            assert!(!v.cases.is_empty(), "{s}");
        }
    }

    #[test]
    fn case_ids_are_prefixed_and_sorted() {
        let opts = CampaignOptions { k_max: Some(11), ..Default::default() };
        let v = run_suite(Suite::Period4, &opts).unwrap();
        assert!(v.cases[0].id.starts_with("k=1/"));
        assert!(v.cases.last().unwrap().id.starts_with("k=11/"));
    }
}
