//! The `rsat` command line.
//!
//! Exit codes: 0 success, 1 usage error, 2 I/O or parse error, 3 resource
//! limit reached.

use crate::format::{parse_certificate, parse_formula, render_certificate, render_formula, Certificate};
use crate::sweep::{
    estimate_crossing, parse_ratio, run_sweep, write_csv, write_limits, SweepConfig, SweepError,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use rsat_core::analytics::{
    bejar_bound, bejar_crossover, exact_factorial_moment, factorial_moment_bound, falling_factorial,
    thm1_root, thm1_value, STATED_K2_BOUND, STATED_K3_BOUND,
};
use rsat_core::sampler::{sample_formula, GenConfig};
use rsat_core::solver::{decide, Decider, DEFAULT_BUDGET};
use rsat_core::{
    find_bicycle, find_snake, occurrence_profile, verify_bicycle, verify_snake, Error, Formula,
    SearchOutcome, SolveResult, TruthValueSpec,
};
use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

#[derive(Parser, Debug)]
#[command(name = "rsat", version, about = "Regular signed k-SAT: random formulas, deciders, certificates and threshold sweeps")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sample a random formula.
    Gen(GenArgs),
    /// Decide a formula and print a witness if satisfiable.
    Solve(SolveArgs),
    /// Find or verify bicycle and snake certificates.
    #[command(subcommand)]
    Cert(CertCommand),
    /// Estimate satisfiability probabilities over a grid and print CSV.
    Sweep(SweepArgs),
    /// Print the closed-form threshold bounds.
    Bounds(BoundsArgs),
    /// Compare exact factorial moments of the occurrence profile with sampling.
    Moments(MomentsArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Model {
    /// Distinct variables within each clause.
    #[value(name = "F")]
    F,
    /// Variables drawn with replacement.
    #[value(name = "F'")]
    FPrime,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Kind {
    Bicycle,
    Snake,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    n: u32,
    #[arg(long)]
    m: usize,
    /// finite:<v>, dyadic:<lambda> or continuous.
    #[arg(long, value_parser = parse_vspec)]
    v: TruthValueSpec,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "F")]
    model: Model,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct InputArgs {
    /// Formula file.
    file: Option<PathBuf>,
    /// Read the formula from standard input.
    #[arg(long, conflicts_with = "file")]
    stdin: bool,
}

#[derive(Args, Debug)]
struct SolveArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, default_value = "auto", value_parser = parse_decider)]
    decider: Decider,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
}

#[derive(Subcommand, Debug)]
enum CertCommand {
    /// Search a formula for a certificate.
    Find {
        #[arg(long, value_enum)]
        kind: Kind,
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = 100_000_000)]
        budget: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a certificate against a formula.
    Verify {
        formula: PathBuf,
        certificate: PathBuf,
    },
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[arg(long)]
    k: usize,
    /// Comma-separated truth-value sets.
    #[arg(long, value_delimiter = ',', value_parser = parse_vspec, required = true)]
    v: Vec<TruthValueSpec>,
    #[arg(long, value_delimiter = ',', required = true)]
    n: Vec<u32>,
    /// Comma-separated ratios m/n, decimal or num/den.
    #[arg(long, value_delimiter = ',', required = true)]
    c: Vec<String>,
    #[arg(long, default_value_t = 100)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "auto", value_parser = parse_decider)]
    decider: Decider,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    #[arg(long, value_enum, default_value = "F")]
    model: Model,
    /// Write the CSV here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Per-cell counts of resource-limited trials [default: <out>.limits.csv
    /// with --out, otherwise only flagged cells are reported].
    #[arg(long)]
    limits: Option<PathBuf>,
    /// Also report where p_hat crosses this level in each slice.
    #[arg(long)]
    crossing: Option<f64>,
}

#[derive(Args, Debug)]
struct BoundsArgs {
    #[arg(long)]
    k: usize,
    /// Evaluate the first-moment expression at these ratios.
    #[arg(long, value_delimiter = ',')]
    c: Vec<f64>,
    /// Tabulate log_{8/7} v for these truth-value counts (k = 3).
    #[arg(long, value_delimiter = ',')]
    v: Vec<u64>,
}

#[derive(Args, Debug)]
struct MomentsArgs {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    m: u64,
    #[arg(long, default_value_t = 2)]
    k: usize,
    /// Comma-separated exponents d_1..d_n.
    #[arg(long, value_delimiter = ',', required = true)]
    d: Vec<u64>,
    #[arg(long, default_value_t = 100_000)]
    samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn parse_vspec(s: &str) -> Result<TruthValueSpec, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_decider(s: &str) -> Result<Decider, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// A failure with its exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn usage(message: impl ToString) -> Self {
        CliError {
            code: 1,
            message: message.to_string(),
        }
    }

    fn input(message: impl ToString) -> Self {
        CliError {
            code: 2,
            message: message.to_string(),
        }
    }

    fn limit(message: impl ToString) -> Self {
        CliError {
            code: 3,
            message: message.to_string(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::ResourceLimit(_) => CliError::limit(e),
            Error::InvalidConfig(_) | Error::WrongArity(_) | Error::DomainError(_) => CliError::usage(e),
            _ => CliError::input(e),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::input(e)
    }
}

struct Io<'a> {
    stdin: &'a mut dyn Read,
    stdout: &'a mut dyn Write,
    stderr: &'a mut dyn Write,
}

impl Io<'_> {
    fn read_input(&mut self, input: &InputArgs) -> Result<String, CliError> {
        match (&input.file, input.stdin) {
            (Some(path), _) => read_file(path),
            (None, true) => {
                let mut s = String::new();
                self.stdin.read_to_string(&mut s)?;
                Ok(s)
            }
            (None, false) => Err(CliError::usage("give a formula file or --stdin")),
        }
    }

    fn emit(&mut self, out: Option<&Path>, text: &str) -> Result<(), CliError> {
        match out {
            Some(path) => std::fs::write(path, text)
                .map_err(|e| CliError::input(format!("{}: {e}", path.display()))),
            None => Ok(self.stdout.write_all(text.as_bytes())?),
        }
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

fn read_formula(text: &str, origin: &str) -> Result<Formula, CliError> {
    parse_formula(text).map_err(|e| CliError::input(format!("{origin}: {e}")))
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if code == 0 { stdout } else { stderr };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    let mut io = Io { stdin, stdout, stderr };
    match dispatch(cli.command, &mut io) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(io.stderr, "rsat: {}", e.message);
            e.code
        }
    }
}

fn dispatch(cmd: Command, io: &mut Io) -> Result<(), CliError> {
    match cmd {
        Command::Gen(a) => gen(a, io),
        Command::Solve(a) => solve(a, io),
        Command::Cert(c) => cert(c, io),
        Command::Sweep(a) => sweep(a, io),
        Command::Bounds(a) => bounds(a, io),
        Command::Moments(a) => moments(a, io),
    }
}

fn gen(a: GenArgs, io: &mut Io) -> Result<(), CliError> {
    let cfg = GenConfig::new(a.k, a.n, a.m, a.v, a.model == Model::F, a.seed);
    let f = sample_formula(&cfg)?;
    io.emit(a.out.as_deref(), &render_formula(&f))
}

fn solve(a: SolveArgs, io: &mut Io) -> Result<(), CliError> {
    let text = io.read_input(&a.input)?;
    let f = read_formula(&text, &origin(&a.input))?;
    match decide(&f, a.decider, a.budget)? {
        SolveResult::Sat(w) => {
            writeln!(io.stdout, "SAT")?;
            let vals: Vec<String> = w.iter().map(|(var, x)| format!("{var}={x}")).collect();
            writeln!(io.stdout, "v {}", vals.join(" "))?;
        }
        SolveResult::Unsat => writeln!(io.stdout, "UNSAT")?,
    }
    Ok(())
}

fn origin(input: &InputArgs) -> String {
    input
        .file
        .as_ref()
        .map_or_else(|| "<stdin>".to_string(), |p| p.display().to_string())
}

fn cert(c: CertCommand, io: &mut Io) -> Result<(), CliError> {
    match c {
        CertCommand::Find {
            kind,
            input,
            budget,
            out,
        } => {
            let text = io.read_input(&input)?;
            let f = read_formula(&text, &origin(&input))?;
            let outcome = match kind {
                Kind::Bicycle => map_outcome(find_bicycle(&f, budget)?, Certificate::Bicycle),
                Kind::Snake => map_outcome(find_snake(&f, budget)?, Certificate::Snake),
            };
            match outcome {
                SearchOutcome::Found(cert) => io.emit(out.as_deref(), &render_certificate(&cert)),
                SearchOutcome::NotFound => {
                    let note = match kind {
                        Kind::Bicycle => " (search exhausted: the formula is satisfiable)",
                        Kind::Snake => "",
                    };
                    writeln!(io.stdout, "NONE{note}")?;
                    Ok(())
                }
                SearchOutcome::BudgetExhausted => {
                    writeln!(io.stdout, "BUDGET-EXHAUSTED")?;
                    Err(CliError::limit(format!("search budget of {budget} exhausted")))
                }
            }
        }
        CertCommand::Verify {
            formula,
            certificate,
        } => {
            let f = read_formula(&read_file(&formula)?, &formula.display().to_string())?;
            let cert = parse_certificate(&read_file(&certificate)?)
                .map_err(|e| CliError::input(format!("{}: {e}", certificate.display())))?;
            let ok = match &cert {
                Certificate::Bicycle(b) => verify_bicycle(&f, b)?,
                Certificate::Snake(s) => verify_snake(&f, s)?,
            };
            writeln!(io.stdout, "{}", if ok { "VALID" } else { "INVALID" })?;
            Ok(())
        }
    }
}

fn map_outcome<T>(o: SearchOutcome<T>, wrap: fn(T) -> Certificate) -> SearchOutcome<Certificate> {
    match o {
        SearchOutcome::Found(t) => SearchOutcome::Found(wrap(t)),
        SearchOutcome::NotFound => SearchOutcome::NotFound,
        SearchOutcome::BudgetExhausted => SearchOutcome::BudgetExhausted,
    }
}

fn sweep(a: SweepArgs, io: &mut Io) -> Result<(), CliError> {
    let cs = a
        .c
        .iter()
        .map(|s| parse_ratio(s))
        .collect::<Result<Vec<_>, _>>()
        .map_err(CliError::usage)?;
    let mut cfg = SweepConfig::new(a.k, a.v, a.n, cs, a.trials, a.seed);
    cfg.decider = a.decider;
    cfg.budget = a.budget;
    cfg.distinct_vars = a.model == Model::F;
    let results = run_sweep(&cfg)?;
    io.emit(a.out.as_deref(), &write_csv(&results))?;

    let limits_path = a.limits.or_else(|| {
        a.out.as_ref().map(|p| {
            let mut s = p.clone().into_os_string();
            s.push(".limits.csv");
            PathBuf::from(s)
        })
    });
    if let Some(path) = limits_path {
        std::fs::write(&path, write_limits(&results))
            .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    }
    for r in results.iter().filter(|r| r.flagged()) {
        writeln!(
            io.stderr,
            "warning: {} v={} n={} c={}: {} of {} trials hit the resource limit",
            r.k,
            r.vspec,
            r.n,
            crate::sweep::format_ratio(&r.c),
            r.limited,
            r.attempted()
        )?;
    }
    if let Some(target) = a.crossing {
        for &vspec in &cfg.vspecs {
            for &n in &cfg.ns {
                let slice: Vec<_> = results.iter().filter(|r| r.vspec == vspec && r.n == n).cloned().collect();
                match estimate_crossing(&slice, target) {
                    Ok(c) => writeln!(io.stderr, "crossing v={vspec} n={n}: c = {c:.4}")?,
                    Err(SweepError::NoCrossing(_)) => {
                        writeln!(io.stderr, "crossing v={vspec} n={n}: none")?
                    }
                    Err(e) => return Err(CliError::usage(e)),
                }
            }
        }
    }
    Ok(())
}

fn bounds(a: BoundsArgs, io: &mut Io) -> Result<(), CliError> {
    let k = a.k;
    let root = thm1_root(k)?;
    let out = &mut io.stdout;
    writeln!(out, "k = {k}")?;
    writeln!(out, "first-moment root: k c (1 - 2^-{k})^(c-1) = 1 at c = {root:.6}")?;
    match k {
        2 => writeln!(out, "reference: stated bound {STATED_K2_BOUND} (difference {:+.4})", STATED_K2_BOUND - root)?,
        3 => writeln!(out, "reference: stated bound {STATED_K3_BOUND} (difference {:+.4})", STATED_K3_BOUND - root)?,
        _ => {}
    }
    for &c in &a.c {
        let x = thm1_value(k, c)?;
        let verdict = if x < 1.0 { "a.a.n. satisfiable over [0,1]" } else { "inconclusive" };
        writeln!(out, "c = {c}: value {x:.6e} ({verdict})")?;
    }
    if k == 3 {
        for &v in &a.v {
            let b = bejar_bound(v)?;
            let better = if b > root { "continuous bound smaller" } else { "finite bound smaller" };
            writeln!(out, "v = {v}: log_8/7 v = {b:.6} ({better})")?;
        }
        writeln!(out, "crossover: log_8/7 v exceeds the root from v = {}", bejar_crossover())?;
    }
    Ok(())
}

fn moments(a: MomentsArgs, io: &mut Io) -> Result<(), CliError> {
    if a.d.len() != a.n as usize {
        return Err(CliError::usage(format!("--d needs {} entries, got {}", a.n, a.d.len())));
    }
    let exact = exact_factorial_moment(a.n, a.m, a.k, &a.d)?;
    let total: u64 = a.d.iter().sum();
    let bound = factorial_moment_bound(a.n, a.m, a.k, total);
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    for i in 0..a.samples {
        let seed = rsat_core::rng::stream_seed(a.seed, i);
        let f = sample_formula(&GenConfig::new(a.k, a.n, a.m as usize, TruthValueSpec::Finite(2), false, seed))?;
        let x: f64 = occurrence_profile(&f)
            .counts
            .iter()
            .zip(&a.d)
            .map(|(&r, &d)| falling_factorial(r, d).to_f64().unwrap_or(f64::INFINITY))
            .product();
        sum += x;
        sum_sq += x * x;
    }
    let out = &mut io.stdout;
    let to_f = |r: &num_rational::BigRational| r.to_f64().unwrap_or(f64::NAN);
    writeln!(out, "exact   {} = {:.6}", exact, to_f(&exact))?;
    writeln!(out, "bound   {} = {:.6}", bound, to_f(&bound))?;
    if a.samples > 1 {
        let ns = a.samples as f64;
        let mean = sum / ns;
        let se = ((sum_sq / ns - mean * mean) * ns / (ns - 1.0)).max(0.0).sqrt() / ns.sqrt();
        let z = if se > 0.0 { (mean - to_f(&exact)) / se } else { 0.0 };
        writeln!(out, "sampled {mean:.6} +/- {se:.6} over {} profiles (z = {z:+.2})", a.samples)?;
    }
    Ok(())
}
