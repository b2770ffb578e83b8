//! The `dsm` command-line tool.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error,
//! 3 resource or I/O error. Results go to standard output or files;
//! progress and diagnostics go to standard error.

use std::ffi::OsString;
use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;

use crate::analytics::{diagram_distance, island_scan, median_period, render_portrait, sweep_escape_lengths, young_diagram, PortraitMode};
use crate::config::CliConfig;
use crate::error::{Error, Result};
use crate::exact::{iterate_exact, Rational};
use crate::io::{format_sig17, write_decomposition_csv, write_pgm, write_sweep_csv, write_young_csv};
use crate::lattice::{embed, make_params, project, LatticeState, ReducedParams};
use crate::orbit::{decompose_labeled, decompose_with_budget, escape_length, trace_orbit};
use crate::theory::campaign::{run_all, run_suite, CampaignOptions, Suite};
use crate::theory::{search_escape_seed_with, VerdictReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "dsm", version, about = "Exact laboratory for the discontinuous standard map x' = x + (p/q) y mod 1, y' = y + sgn(x' - 1/2)")]
struct Cli {
    /// key=value config file (overrides $DSM_CONFIG)
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Maximum torus states a decomposition may visit
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Worker threads (0 = all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Directory for relative --out paths
    #[arg(long, global = true)]
    output_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
struct ParamArgs {
    /// Twist numerator
    #[arg(long, default_value_t = 1)]
    p: u64,
    /// Twist denominator
    #[arg(long)]
    q: u64,
    /// Initial height numerator
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    a: i64,
    /// Initial height denominator
    #[arg(long, default_value_t = 1)]
    b: u64,
}

impl ParamArgs {
    fn params(&self) -> Result<ReducedParams> {
        make_params(self.p, self.q, self.a, self.b)
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Trace one orbit of the torus map and classify it as bounded or escaping.
    ///
    /// Example: `orbit --q 3 --r 1 --j 0` is the period-3 escaping cycle of
    /// alpha = 1/3. With --exact the same cycle is replayed in exact rational
    /// arithmetic on the cylinder and must climb by winding * q.
    Orbit {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        r: u64,
        #[arg(long)]
        j: u64,
        /// Cross-check against the exact cylinder map
        #[arg(long)]
        exact: bool,
    },
    /// Decompose the whole torus Z_bq x Z_q into periodic orbits.
    ///
    /// For alpha = 1/992 every orbit is bounded and the longest period is 6168;
    /// for alpha = 1/991 one escaping orbit of length 414639 appears.
    Decompose {
        #[command(flatten)]
        params: ParamArgs,
        /// Write the per-state table r,j,orbit_id,period,winding
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Escape length l(q) of the unique escaping orbit for alpha = 1/q, y0 = 0, odd q.
    ///
    /// l(991) = 414639. Over a range, the ratio l(q)/q^2 averages about 0.43.
    Ell {
        #[arg(long, conflicts_with_all = ["q_from", "q_to"])]
        q: Option<u64>,
        #[arg(long, requires = "q_to")]
        q_from: Option<u64>,
        #[arg(long, requires = "q_from")]
        q_to: Option<u64>,
        /// Write the sweep as CSV (q,ell,ratio) instead of printing it
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Smallest-denominator start y0 = a/b with an escaping orbit for alpha = p/(4k).
    ///
    /// For p = 1 the minimal b for k = 1..6 is 3, 13, 11, 45, 57, 103.
    Search {
        #[arg(long)]
        k: u64,
        #[arg(long)]
        b_max: u64,
        #[arg(long, default_value_t = 1)]
        p: u64,
        /// Only try this numerator
        #[arg(long)]
        a: Option<u64>,
    },
    /// Run a verification campaign and print its JSON verdict.
    ///
    /// Suites: symmetry (point symmetry about (1/2, 0)), bands (band
    /// preservation), bottleneck (no escape for even q, a unique escaping orbit
    /// for odd q), q4k2 (escape from y0 = 1/2 when q = 4k + 2, mod-4 invariant),
    /// dwell (time spent near the bottleneck), two-rise (landing window after
    /// two rises), window (climb below q within q ln q steps), period4 (2k - 1
    /// orbits of period 4 when q = 4k), lower-bound (l(q) above the dwell sum),
    /// all.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long)]
        q_max: Option<u64>,
        #[arg(long)]
        k_max: Option<u64>,
        /// Random samples for symmetry and bands
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
        /// Write the JSON verdict to a file
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Render the torus as a 16-bit PGM phase portrait.
    ///
    /// `period` shades each orbit by the rank of its period (shorter is
    /// lighter); `escape` lights only the escaping orbit.
    Render {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        mode: PortraitMode,
        #[arg(long)]
        out: PathBuf,
    },
    /// Export the partition of the torus into orbit periods, scaled by 1/q.
    Young {
        #[command(flatten)]
        params: ParamArgs,
        /// Leave out escaping orbits
        #[arg(long)]
        bounded_only: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Sup-distance between the scaled Young diagrams of alpha = 1/q1 and 1/q2.
    Distance {
        #[arg(long)]
        q1: u64,
        #[arg(long)]
        q2: u64,
        #[arg(long)]
        bounded_only: bool,
    },
    /// Sample orbit periods near the island levels j = q/(2n+1) (alpha = 1/q).
    Islands {
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = 0)]
        n: u64,
        #[arg(long, default_value_t = 16)]
        sample: u64,
    },
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidArgument(_) | Error::HypothesisViolation(_) | Error::Parse(_) => EXIT_USAGE,
        Error::Resource(_) | Error::Io(_) => EXIT_RESOURCE,
        Error::InvariantViolation(_) => EXIT_VERIFY_FAILED,
    }
}

/// Parses `args` (program name first), runs the subcommand and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut (dyn Write + Send), stderr: &mut (dyn Write + Send)) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { stderr.write_all(text.as_bytes()) } else { stdout.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(cli, stdout, stderr) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

fn load_config(cli: &Cli) -> Result<CliConfig> {
    let mut cfg = match &cli.config {
        Some(path) => CliConfig::load(path)?,
        None => CliConfig::from_env()?,
    };
    if let Some(b) = cli.budget {
        cfg.memory_budget_states = b;
    }
    if let Some(t) = cli.threads {
        cfg.threads = t;
    }
    if let Some(d) = &cli.output_dir {
        cfg.output_dir = d.clone();
    }
    cfg.validate()?;
    Ok(cfg)
}

fn create(cfg: &CliConfig, path: &Path) -> Result<BufWriter<File>> {
    let path = cfg.resolve(path);
    if let Some(dir) = path.parent() {
        if !dir.as_os_str().is_empty() {
            fs::create_dir_all(dir)?;
        }
    }
    Ok(BufWriter::new(File::create(path)?))
}

fn execute(cli: Cli, stdout: &mut (dyn Write + Send), stderr: &mut (dyn Write + Send)) -> Result<i32> {
    let cfg = load_config(&cli)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads)
        .build()
        .map_err(|e| Error::resource(format!("thread pool: {e}")))?;
    pool.install(|| dispatch(cli.command, &cfg, stdout, stderr))
}

fn dispatch(cmd: Command, cfg: &CliConfig, out: &mut (dyn Write + Send), err: &mut (dyn Write + Send)) -> Result<i32> {
    let budget = cfg.memory_budget_states;
    match cmd {
        Command::Orbit { params, r, j, exact } => {
            let params = params.params()?;
            let start = LatticeState::new(r, j);
            let orbit = trace_orbit(start, &params)?;
            writeln!(out, "period={} winding={} class={}", orbit.period, orbit.winding, orbit.class())?;
            writeln!(out, "representative={}", orbit.representative)?;
            if exact {
                let pt = embed(start, &params);
                let path = iterate_exact(&pt, &params.alpha(), orbit.period as usize)?;
                let end = path.last().expect("non-empty");
                let climb = end.y() - pt.y();
                let expected = Rational::from_integer(BigInt::from(orbit.winding * params.q() as i64));
                let back = project(end, &params)?;
                writeln!(out, "exact start={pt} end={end} climb={climb}")?;
                if back != start || climb != expected {
                    writeln!(err, "exact replay disagrees: returned to {back}, climbed {climb}, expected {expected}")?;
                    return Ok(EXIT_VERIFY_FAILED);
                }
            }
        }
        Command::Decompose { params, out: path } => {
            let params = params.params()?;
            let d = match &path {
                Some(p) => {
                    let labeled = decompose_labeled(&params, budget)?;
                    write_decomposition_csv(create(cfg, p)?, &labeled)?;
                    labeled.decomposition
                }
                None => decompose_with_budget(&params, budget)?,
            };
            writeln!(
                out,
                "orbits={} escaping={} max_period={} total_points={}",
                d.orbits.len(),
                d.escaping_count(),
                d.max_period(),
                d.total_points
            )?;
            for o in d.escaping() {
                writeln!(out, "escaping representative={} period={} winding={}", o.representative, o.period, o.winding)?;
            }
        }
        Command::Ell { q, q_from, q_to, out: path } => {
            let (from, to) = match (q, q_from, q_to) {
                (Some(q), _, _) => (q, q),
                (None, Some(a), Some(b)) => (a, b),
                _ => return Err(Error::invalid("give --q or --q-from/--q-to")),
            };
            if from == to {
                let rec = escape_length(from)?;
                writeln!(out, "{},{},{}", rec.q, rec.ell, format_sig17(rec.ratio_f64()))?;
                if let Some(p) = path {
                    write_sweep_csv(create(cfg, &p)?, &sweep_escape_lengths(from, to)?)?;
                }
            } else {
                writeln!(err, "sweeping odd q in [{from}, {to}]")?;
                let sweep = sweep_escape_lengths(from, to)?;
                match path {
                    Some(p) => write_sweep_csv(create(cfg, &p)?, &sweep)?,
                    None => write_sweep_csv(&mut *out, &sweep)?,
                }
                writeln!(
                    err,
                    "records={} mean_ratio={} min_ratio={} max_ratio={}",
                    sweep.records.len(),
                    format_sig17(sweep.mean_ratio),
                    format_sig17(sweep.min_ratio),
                    format_sig17(sweep.max_ratio)
                )?;
            }
        }
        Command::Search { k, b_max, p, a } => {
            if k == 0 {
                return Err(Error::invalid("k must be positive"));
            }
            match search_escape_seed_with(p, 4 * k, b_max, a, budget)? {
                Some(seed) => writeln!(
                    out,
                    "k={k} b={} a={} representative={} period={} winding={}",
                    seed.b, seed.a, seed.orbit.representative, seed.orbit.period, seed.orbit.winding
                )?,
                None => writeln!(out, "k={k} not-found b_max={b_max}")?,
            }
        }
        Command::Verify { suite, q_max, k_max, samples, seed, out: path } => {
            let opts = CampaignOptions { q_max, k_max, budget, samples, seed };
            let reports: Vec<VerdictReport> = if suite == "all" {
                run_all(&opts)?
            } else {
                vec![run_suite(suite.parse::<Suite>()?, &opts)?]
            };
            for r in &reports {
                writeln!(err, "{} {} ({} cases)", if r.passed { "PASS" } else { "FAIL" }, r.suite, r.cases.len())?;
                for c in r.failures().take(5) {
                    writeln!(err, "  {}: expected {}, observed {}", c.id, c.expected, c.observed)?;
                }
            }
            let json = if reports.len() == 1 {
                reports[0].to_json()
            } else {
                serde_json::to_string_pretty(&reports).expect("verdicts serialize")
            };
            match path {
                Some(p) => {
                    let mut f = create(cfg, &p)?;
                    writeln!(f, "{json}")?;
                    f.flush()?;
                }
                None => writeln!(out, "{json}")?,
            }
            if reports.iter().any(|r| !r.passed) {
                return Ok(EXIT_VERIFY_FAILED);
            }
        }
        Command::Render { params, mode, out: path } => {
            let img = render_portrait(&params.params()?, mode, budget)?;
            write_pgm(create(cfg, &path)?, &img)?;
            writeln!(out, "wrote {}x{} {} portrait to {}", img.width, img.height, mode, cfg.resolve(&path).display())?;
        }
        Command::Young { params, bounded_only, out: path } => {
            let d = young_diagram(&params.params()?, bounded_only, budget)?;
            write_young_csv(create(cfg, &path)?, &d)?;
            writeln!(out, "wrote {} parts (sum {}) to {}", d.parts.len(), d.total(), cfg.resolve(&path).display())?;
        }
        Command::Distance { q1, q2, bounded_only } => {
            let d1 = young_diagram(&ReducedParams::unit(q1)?, bounded_only, budget)?;
            let d2 = young_diagram(&ReducedParams::unit(q2)?, bounded_only, budget)?;
            let largest = d1.parts.iter().chain(&d2.parts).max().map(|p| *p.numer() as f64 / *p.denom() as f64);
            writeln!(
                out,
                "q1={q1} q2={q2} distance={} largest_part={}",
                format_sig17(diagram_distance(&d1, &d2)),
                format_sig17(largest.unwrap_or(0.0))
            )?;
        }
        Command::Islands { q, n, sample } => {
            let samples = island_scan(q, n, sample)?;
            writeln!(out, "r,j,period,winding")?;
            for s in &samples {
                writeln!(out, "{},{},{},{}", s.start.r, s.start.j, s.period, s.winding)?;
            }
            if let Some(m) = median_period(&samples) {
                writeln!(err, "median period {m} over {} samples", samples.len())?;
            }
        }
    }
    Ok(EXIT_OK)
}
