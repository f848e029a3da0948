//! Monte Carlo estimation of satisfiability probabilities over a grid of
//! `(truth-value set, n, c)` cells.
//!
//! Every cell derives its seed from the master seed and its own parameters,
//! and every trial from the cell seed and its index, so output depends only
//! on the configuration, not on grid order or thread scheduling.

use num_integer::Integer;
use num_rational::Ratio;
use rayon::prelude::*;
use rsat_core::analytics::wilson_interval;
use rsat_core::rng::stream_seed;
use rsat_core::sampler::{sample_formula, GenConfig};
use rsat_core::solver::{decide, Decider, DEFAULT_BUDGET};
use rsat_core::{Error, TruthValueSpec};
use std::fmt::Write as _;

pub const CSV_HEADER: &str = "k,v,n,m,c,trials,sat,p_hat,ci_lo,ci_hi,seed";
pub const LIMITS_HEADER: &str = "k,v,n,m,c,limited,attempted,flagged";

/// Share of resource-limited trials above which a cell is flagged.
pub const LIMIT_FLAG_FRACTION: f64 = 0.01;

#[derive(Debug, thiserror::Error)]
pub enum SweepError {
    #[error("p_hat never crosses {0} downwards")]
    NoCrossing(f64),
    #[error("crossing estimation needs a single (k, v, n) slice")]
    MixedSlice,
    #[error("invalid ratio {0:?}")]
    BadRatio(String),
    #[error(transparent)]
    Core(#[from] Error),
}

/// Parses a clause-to-variable ratio exactly: `1.5`, `2`, or `3/2`.
pub fn parse_ratio(s: &str) -> Result<Ratio<u64>, SweepError> {
    let bad = || SweepError::BadRatio(s.to_string());
    let digits = |t: &str| -> Result<u64, SweepError> {
        if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        t.parse().map_err(|_| bad())
    };
    if let Some((num, den)) = s.split_once('/') {
        let den = digits(den)?;
        if den == 0 {
            return Err(bad());
        }
        return Ok(Ratio::new(digits(num)?, den));
    }
    match s.split_once('.') {
        None => Ok(Ratio::from_integer(digits(s)?)),
        Some((int, frac)) => {
            let int = if int.is_empty() { 0 } else { digits(int)? };
            let scale = 10u64.checked_pow(frac.len() as u32).ok_or_else(bad)?;
            let frac = digits(frac)?;
            let num = int.checked_mul(scale).and_then(|x| x.checked_add(frac)).ok_or_else(bad)?;
            Ok(Ratio::new(num, scale))
        }
    }
}

/// Exact decimal if the denominator divides a power of ten, else `num/den`.
pub fn format_ratio(c: &Ratio<u64>) -> String {
    let (num, den) = (*c.numer(), *c.denom());
    let mut scale = 1u64;
    let mut digits = 0usize;
    while scale % den != 0 {
        if digits == 18 {
            return format!("{num}/{den}");
        }
        scale *= 10;
        digits += 1;
    }
    let scaled = num * (scale / den);
    if digits == 0 {
        format!("{scaled}")
    } else {
        let (int, frac) = scaled.div_rem(&scale);
        format!("{int}.{frac:0digits$}")
    }
}

/// `m = round(c n)`, halves rounded up.
pub fn clauses_for(c: &Ratio<u64>, n: u32) -> usize {
    let (num, den) = (*c.numer() as u128, *c.denom() as u128);
    ((2 * num * n as u128 + den) / (2 * den)) as usize
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepConfig {
    pub k: usize,
    pub vspecs: Vec<TruthValueSpec>,
    pub ns: Vec<u32>,
    pub cs: Vec<Ratio<u64>>,
    pub trials: u64,
    pub seed: u64,
    pub decider: Decider,
    /// Branching budget per trial for the complete decider.
    pub budget: u64,
    /// Sample from F (distinct variables in each clause) rather than F'.
    pub distinct_vars: bool,
}

impl SweepConfig {
    pub fn new(k: usize, vspecs: Vec<TruthValueSpec>, ns: Vec<u32>, cs: Vec<Ratio<u64>>, trials: u64, seed: u64) -> Self {
        SweepConfig {
            k,
            vspecs,
            ns,
            cs,
            trials,
            seed,
            decider: Decider::Auto,
            budget: DEFAULT_BUDGET,
            distinct_vars: true,
        }
    }

    pub fn validate(&self) -> Result<(), Error> {
        if self.trials == 0 {
            return Err(Error::InvalidConfig("trials must be at least 1".into()));
        }
        if self.cs.iter().any(|c| *c.numer() == 0) {
            return Err(Error::InvalidConfig("every c must be positive".into()));
        }
        if self.vspecs.is_empty() || self.ns.is_empty() || self.cs.is_empty() {
            return Err(Error::InvalidConfig("empty grid".into()));
        }
        Ok(())
    }
}

/// One grid cell. `trials` counts decided trials only; resource-limited
/// ones are in `limited`.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepResult {
    pub k: usize,
    pub vspec: TruthValueSpec,
    pub n: u32,
    pub m: usize,
    pub c: Ratio<u64>,
    pub trials: u64,
    pub sat: u64,
    pub p_hat: f64,
    pub ci_lo: f64,
    pub ci_hi: f64,
    pub seed: u64,
    pub limited: u64,
}

impl SweepResult {
    pub fn attempted(&self) -> u64 {
        self.trials + self.limited
    }

    pub fn flagged(&self) -> bool {
        self.limited as f64 > LIMIT_FLAG_FRACTION * self.attempted() as f64
    }
}

fn vspec_code(v: TruthValueSpec) -> u64 {
    match v {
        TruthValueSpec::Finite(v) => v as u64,
        TruthValueSpec::Dyadic(l) => 1 << 32 | l as u64,
        TruthValueSpec::Continuous => 2 << 32,
    }
}

/// Seed of the cell, a function of the master seed and the cell parameters.
pub fn cell_seed(master: u64, k: usize, vspec: TruthValueSpec, n: u32, m: usize, distinct: bool) -> u64 {
    [k as u64, vspec_code(vspec), n as u64, m as u64, distinct as u64]
        .into_iter()
        .fold(master, stream_seed)
}

/// Runs one cell; trials execute in parallel.
pub fn run_cell(cfg: &SweepConfig, vspec: TruthValueSpec, n: u32, c: Ratio<u64>) -> Result<SweepResult, Error> {
    let m = clauses_for(&c, n);
    let seed = cell_seed(cfg.seed, cfg.k, vspec, n, m, cfg.distinct_vars);
    let outcomes: Vec<Option<bool>> = (0..cfg.trials)
        .into_par_iter()
        .map(|i| {
            let gen = GenConfig::new(cfg.k, n, m, vspec, cfg.distinct_vars, stream_seed(seed, i));
            let f = sample_formula(&gen)?;
            match decide(&f, cfg.decider, cfg.budget) {
                Ok(r) => Ok(Some(r.is_sat())),
                Err(Error::ResourceLimit(_)) => Ok(None),
                Err(e) => Err(e),
            }
        })
        .collect::<Result<_, Error>>()?;
    let sat = outcomes.iter().filter(|o| **o == Some(true)).count() as u64;
    let limited = outcomes.iter().filter(|o| o.is_none()).count() as u64;
    let trials = cfg.trials - limited;
    let (p_hat, ci_lo, ci_hi) = if trials == 0 {
        (f64::NAN, 0.0, 1.0)
    } else {
        let (lo, hi) = wilson_interval(sat, trials, 0.95)?;
        (sat as f64 / trials as f64, lo, hi)
    };
    Ok(SweepResult {
        k: cfg.k,
        vspec,
        n,
        m,
        c,
        trials,
        sat,
        p_hat,
        ci_lo,
        ci_hi,
        seed,
        limited,
    })
}

/// Thread pool capped by `RSAT_THREADS` when set.
pub fn thread_pool() -> Result<rayon::ThreadPool, Error> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(s) = std::env::var("RSAT_THREADS") {
        let threads: usize = s
            .parse()
            .ok()
            .filter(|&t| t > 0)
            .ok_or_else(|| Error::InvalidConfig(format!("RSAT_THREADS={s:?} is not a positive integer")))?;
        builder = builder.num_threads(threads);
    }
    builder
        .build()
        .map_err(|e| Error::InvalidConfig(format!("thread pool: {e}")))
}

/// All cells in grid order: truth-value set, then `n`, then `c`.
pub fn run_sweep(cfg: &SweepConfig) -> Result<Vec<SweepResult>, Error> {
    cfg.validate()?;
    let pool = thread_pool()?;
    pool.install(|| {
        let mut out = Vec::new();
        for &vspec in &cfg.vspecs {
            for &n in &cfg.ns {
                for &c in &cfg.cs {
                    out.push(run_cell(cfg, vspec, n, c)?);
                }
            }
        }
        Ok(out)
    })
}

pub fn write_csv(results: &[SweepResult]) -> String {
    let mut out = String::new();
    writeln!(out, "{CSV_HEADER}").unwrap();
    for r in results {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{:.6},{:.6},{:.6},{}",
            r.k,
            r.vspec,
            r.n,
            r.m,
            format_ratio(&r.c),
            r.trials,
            r.sat,
            r.p_hat,
            r.ci_lo,
            r.ci_hi,
            r.seed
        )
        .unwrap();
    }
    out
}

/// Per-cell counts of resource-limited trials.
pub fn write_limits(results: &[SweepResult]) -> String {
    let mut out = String::new();
    writeln!(out, "{LIMITS_HEADER}").unwrap();
    for r in results {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            r.k,
            r.vspec,
            r.n,
            r.m,
            format_ratio(&r.c),
            r.limited,
            r.attempted(),
            r.flagged()
        )
        .unwrap();
    }
    out
}

fn ratio_f64(c: &Ratio<u64>) -> f64 {
    *c.numer() as f64 / *c.denom() as f64
}

/// The `c` where `p_hat` first falls through `target`, interpolating
/// linearly between the two straddling cells.
pub fn estimate_crossing(results: &[SweepResult], target: f64) -> Result<f64, SweepError> {
    let Some(first) = results.first() else {
        return Err(SweepError::NoCrossing(target));
    };
    if results
        .iter()
        .any(|r| (r.k, r.vspec, r.n) != (first.k, first.vspec, first.n))
    {
        return Err(SweepError::MixedSlice);
    }
    let mut cells: Vec<&SweepResult> = results.iter().filter(|r| r.trials > 0).collect();
    cells.sort_by(|a, b| a.c.cmp(&b.c));
    for w in cells.windows(2) {
        let (a, b) = (w[0], w[1]);
        if a.p_hat >= target && b.p_hat < target {
            let (ca, cb) = (ratio_f64(&a.c), ratio_f64(&b.c));
            return Ok(ca + (a.p_hat - target) / (a.p_hat - b.p_hat) * (cb - ca));
        }
    }
    Err(SweepError::NoCrossing(target))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(c: &str) -> Ratio<u64> {
        parse_ratio(c).unwrap()
    }

    #[test]
    fn ratios() {
        assert_eq!(r("1.5"), Ratio::new(3, 2));
        assert_eq!(r("2"), Ratio::from_integer(2));
        assert_eq!(r(".25"), Ratio::new(1, 4));
        assert_eq!(r("3/2"), Ratio::new(3, 2));
        assert!(parse_ratio("1.5.1").is_err());
        assert!(parse_ratio("-1").is_err());
        assert!(parse_ratio("1/0").is_err());
        for s in ["1.5", "0.7", "2", "2.125", "1/3"] {
            assert_eq!(format_ratio(&r(s)), s);
        }
    }

    #[test]
    fn rounding_half_up() {
        assert_eq!(clauses_for(&r("1.5"), 3), 5);
        assert_eq!(clauses_for(&r("1.5"), 2000), 3000);
        assert_eq!(clauses_for(&r("0.25"), 2), 1);
        assert_eq!(clauses_for(&r("0.2"), 2), 0);
        assert_eq!(clauses_for(&r("1/3"), 2), 1);
    }

    fn cell(c: &str, p: f64) -> SweepResult {
        SweepResult {
            k: 2,
            vspec: TruthValueSpec::Continuous,
            n: 10,
            m: 0,
            c: r(c),
            trials: 10,
            sat: 0,
            p_hat: p,
            ci_lo: 0.0,
            ci_hi: 1.0,
            seed: 0,
            limited: 0,
        }
    }

    #[test]
    fn crossing() {
        let x = estimate_crossing(&[cell("2.2", 0.0), cell("1.8", 1.0)], 0.5).unwrap();
        assert!((x - 2.0).abs() < 1e-12);
        let x = estimate_crossing(&[cell("1", 1.0), cell("2", 0.8), cell("3", 0.2), cell("4", 0.6)], 0.5).unwrap();
        assert!((x - 2.5).abs() < 1e-12);
        assert!(matches!(
            estimate_crossing(&[cell("1", 0.9), cell("2", 0.7)], 0.5),
            Err(SweepError::NoCrossing(_))
        ));
        let mut other = cell("2", 0.0);
        other.n = 11;
        assert!(matches!(
            estimate_crossing(&[cell("1", 0.9), other], 0.5),
            Err(SweepError::MixedSlice)
        ));
    }

    #[test]
    fn flagging() {
        let mut c = cell("1", 0.5);
        c.trials = 99;
        c.limited = 1;
        assert!(!c.flagged());
        c.limited = 2;
        assert!(c.flagged());
    }

    #[test]
    fn cell_seeds_depend_on_parameters_only() {
        let a = cell_seed(1, 2, TruthValueSpec::Finite(2), 10, 15, true);
        assert_eq!(a, cell_seed(1, 2, TruthValueSpec::Finite(2), 10, 15, true));
        assert_ne!(a, cell_seed(1, 2, TruthValueSpec::Finite(3), 10, 15, true));
        assert_ne!(a, cell_seed(2, 2, TruthValueSpec::Finite(2), 10, 15, true));
        assert_ne!(
            cell_seed(1, 2, TruthValueSpec::Dyadic(2), 10, 15, true),
            cell_seed(1, 2, TruthValueSpec::Finite(2), 10, 15, true)
        );
    }

    #[test]
    fn sanity_cell_far_below_threshold() {
        let cfg = SweepConfig::new(2, vec![TruthValueSpec::Finite(2)], vec![50], vec![r("0.1")], 50, 3);
        let res = run_sweep(&cfg).unwrap();
        assert!(res[0].p_hat >= 0.98);
        assert_eq!(write_csv(&res), write_csv(&run_sweep(&cfg).unwrap()));
        assert!(write_csv(&res).starts_with("k,v,n,m,c,trials,sat,p_hat,ci_lo,ci_hi,seed\n2,finite:2,50,5,0.1,50,"));
    }

    #[test]
    fn limited_trials_are_excluded() {
        let mut cfg = SweepConfig::new(3, vec![TruthValueSpec::Continuous], vec![40], vec![r("4.25")], 6, 3);
        cfg.budget = 1;
        let res = run_sweep(&cfg).unwrap();
        assert_eq!(res[0].limited + res[0].trials, 6);
        assert!(res[0].limited > 0 && res[0].flagged());
        assert!(write_limits(&res).lines().nth(1).unwrap().ends_with(",true"));
    }
}
