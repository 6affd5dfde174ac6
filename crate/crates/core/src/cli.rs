//! The `legendre` command line.
//!
//! Exit codes: 0 on success, 1 when a `--verify` style check fails or the
//! output cannot be written, 2 on usage or input errors.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::alpha::Alpha;
use crate::charsum::{density_scan_primes, dirichlet_check, legendre_sum, Comparison, DirichletOutcome};
use crate::error::{Error, Result};
use crate::fourier::fourier_partial;
use crate::output::{render, render_one, term_rows, DensityRow, FourierRow, Format, MomentRow};
use crate::primes::{first_primes, sieve_primes};
use crate::randmodel::{
    decompose_rational, estimate_positivity, moment_direct, moment_monte_carlo, CoefficientSpec, Evaluator, Parity,
    SimulationConfig,
};
use crate::tails::{certify_neighborhood, constants_table, DConstants};

pub const THREADS_ENV: &str = "LEGENDRE_THREADS";

#[derive(Debug, Parser)]
#[command(name = "legendre", version, about = "Signs of partial sums of Legendre symbols")]
pub struct Cli {
    /// Worker threads; 0 lets the pool decide.
    #[arg(long, global = true, env = THREADS_ENV, default_value_t = 0)]
    pub threads: usize,
    /// csv or json; `certify` defaults to json, everything else to csv.
    #[arg(long, global = true)]
    pub format: Option<Format>,
    /// Also write the output to this file.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count primes with L(alpha, p) >= 0 (or > 0) among the first N primes.
    Density(DensityArgs),
    /// Check L(1/2, p) against (2 - (2/p)) h(-p) for primes in a range.
    Dirichlet(DirichletArgs),
    /// Compare truncated Fourier expansions with exact sums.
    FourierCheck(FourierArgs),
    /// Estimate P(L(a(alpha)) > 0) in the random multiplicative model.
    Simulate(SimulateArgs),
    /// Print the character decomposition of a rational alpha.
    Decompose(DecomposeArgs),
    /// Exact versus Monte Carlo moments of the truncated model series.
    Moments(MomentsArgs),
    /// Lower bound on the nonnegative density near alpha = 1/3.
    Certify(CertifyArgs),
    /// Recompute every constant of the certification chain.
    Constants,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ParityChoice {
    Plus,
    Minus,
    Both,
}

impl ParityChoice {
    fn parities(self) -> &'static [Parity] {
        match self {
            ParityChoice::Plus => &[Parity::Plus],
            ParityChoice::Minus => &[Parity::Minus],
            ParityChoice::Both => &Parity::BOTH,
        }
    }
}

#[derive(Debug, Args)]
pub struct DensityArgs {
    /// Repeat or comma-separate for several values; "a/b" is exact.
    #[arg(long, required = true, value_delimiter = ',', allow_hyphen_values = true)]
    pub alpha: Vec<Alpha>,
    #[arg(long, default_value_t = 1000)]
    pub primes: usize,
    #[arg(long, default_value = "ge")]
    pub mode: Comparison,
    /// Expected counts, one per alpha; exit 1 on mismatch.
    #[arg(long, value_delimiter = ',')]
    pub verify: Vec<u64>,
}

#[derive(Debug, Args)]
pub struct DirichletArgs {
    #[arg(long, default_value_t = 5)]
    pub min_p: u64,
    #[arg(long, default_value_t = 2000)]
    pub max_p: u64,
}

#[derive(Debug, Args)]
pub struct FourierArgs {
    #[arg(long, required = true, value_delimiter = ',')]
    pub alpha: Vec<Alpha>,
    #[arg(long, required = true, value_delimiter = ',')]
    pub p: Vec<u64>,
    #[arg(long, value_delimiter = ',', default_values_t = [1000, 10_000, 100_000])]
    pub terms: Vec<u64>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long)]
    pub alpha: Alpha,
    #[arg(long, value_enum, default_value_t = ParityChoice::Both)]
    pub parity: ParityChoice,
    #[arg(long, default_value_t = 10_000)]
    pub samples: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 100_000)]
    pub truncation: usize,
    #[arg(long, default_value_t = 1000)]
    pub prime_cutoff: u64,
    #[arg(long, default_value = "euler")]
    pub evaluator: Evaluator,
}

#[derive(Debug, Args)]
pub struct DecomposeArgs {
    #[arg(long)]
    pub alpha: Alpha,
    #[arg(long, value_enum, default_value_t = ParityChoice::Both)]
    pub parity: ParityChoice,
}

#[derive(Debug, Args)]
pub struct MomentsArgs {
    #[arg(long)]
    pub alpha: Alpha,
    #[arg(long, value_enum, default_value_t = ParityChoice::Both)]
    pub parity: ParityChoice,
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u32).range(1..=6))]
    pub k_max: u32,
    #[arg(long, default_value_t = 1000)]
    pub truncation: usize,
    #[arg(long, default_value_t = 10_000)]
    pub samples: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    #[arg(long)]
    pub alpha: Alpha,
    /// printed, recomputed or conservative (the larger of the two).
    #[arg(long, default_value = "conservative")]
    pub constants: DConstants,
    /// Exit 1 unless the report is certifying.
    #[arg(long)]
    pub verify: bool,
}

/// What a subcommand produced: the output body and whether a check failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub body: String,
    pub failures: Vec<String>,
}

impl Outcome {
    fn ok(body: String) -> Self {
        Outcome { body, failures: Vec::new() }
    }
}

fn density(args: &DensityArgs, format: Format) -> Result<Outcome> {
    if !args.verify.is_empty() && args.verify.len() != args.alpha.len() {
        return Err(Error::param("--verify", "one expected count per alpha"));
    }
    let primes = first_primes(args.primes)?;
    let reports = density_scan_primes(&args.alpha, &primes, args.mode)?;
    let mut failures = Vec::new();
    for (r, want) in reports.iter().zip(&args.verify) {
        if r.count() != *want {
            failures.push(format!("alpha = {}: counted {}, expected {}", r.alpha, r.count(), want));
        }
    }
    for r in reports.iter().filter(|r| r.boundary_hits > 0) {
        log::warn!("alpha = {}: {} boundary hits", r.alpha, r.boundary_hits);
    }
    let rows: Vec<DensityRow> = reports.iter().map(DensityRow::from).collect();
    Ok(Outcome {
        body: render(&rows, format)?,
        failures,
    })
}

fn dirichlet(args: &DirichletArgs, format: Format) -> Result<Outcome> {
    let table = sieve_primes(args.max_p.max(2))?;
    let mut rows = Vec::new();
    for &p in table.odd().iter().filter(|&&p| p >= args.min_p) {
        match dirichlet_check(p)? {
            DirichletOutcome::Checked(c) => rows.push(c),
            DirichletOutcome::Excluded { p, .. } => log::info!("p = {p} is outside the identity's range"),
        }
    }
    let failures = rows
        .iter()
        .filter(|c| !c.holds)
        .map(|c| format!("p = {}: L = {}, class number side = {}", c.p, c.lhs, c.rhs))
        .collect();
    Ok(Outcome {
        body: render(&rows, format)?,
        failures,
    })
}

fn fourier_check(args: &FourierArgs, format: Format) -> Result<Outcome> {
    let mut rows = Vec::new();
    for alpha in &args.alpha {
        for &p in &args.p {
            let exact = legendre_sum(alpha, p)?;
            for &terms in &args.terms {
                let f = fourier_partial(alpha, p, terms)?;
                rows.push(FourierRow {
                    alpha: *alpha,
                    p,
                    terms,
                    exact,
                    truncated: f.value,
                    abs_error: (f.value - exact as f64).abs(),
                });
            }
        }
    }
    Ok(Outcome::ok(render(&rows, format)?))
}

fn simulate(args: &SimulateArgs, format: Format) -> Result<Outcome> {
    let config = SimulationConfig {
        samples: args.samples,
        seed: args.seed,
        truncation: args.truncation,
        prime_cutoff: args.prime_cutoff,
        evaluator: args.evaluator,
    };
    let rows = args
        .parity
        .parities()
        .iter()
        .map(|&parity| estimate_positivity(&args.alpha, parity, &config))
        .collect::<Result<Vec<_>>>()?;
    Ok(Outcome::ok(render(&rows, format)?))
}

fn decompose(args: &DecomposeArgs, format: Format) -> Result<Outcome> {
    let mut rows = Vec::new();
    for &parity in args.parity.parities() {
        rows.extend(term_rows(&decompose_rational(&args.alpha, parity)?));
    }
    Ok(Outcome::ok(render(&rows, format)?))
}

fn moments(args: &MomentsArgs, format: Format) -> Result<Outcome> {
    args.alpha.check_unit_interval()?;
    let mut rows = Vec::new();
    for &parity in args.parity.parities() {
        let spec = CoefficientSpec::new(args.alpha, parity);
        let a = spec.coefficients(args.truncation);
        let mc = moment_monte_carlo(&spec, args.truncation, args.k_max, args.samples, args.seed)?;
        for m in mc {
            let direct = match moment_direct(&a, m.k) {
                Ok(v) => Some(v),
                Err(e @ Error::Resource { .. }) => {
                    log::warn!("k = {}: {e}", m.k);
                    None
                }
                Err(e) => return Err(e),
            };
            rows.push(MomentRow {
                alpha: args.alpha,
                parity,
                k: m.k,
                direct,
                mc_mean: m.mean,
                mc_std_error: m.std_error,
            });
        }
    }
    Ok(Outcome::ok(render(&rows, format)?))
}

fn certify(args: &CertifyArgs, format: Format) -> Result<Outcome> {
    let report = certify_neighborhood(&args.alpha, args.constants)?;
    let mut failures = Vec::new();
    if args.verify && !report.certified {
        failures.push(format!("alpha = {}: c_lower = {} is not certifying", report.alpha, report.c_lower));
    }
    Ok(Outcome {
        body: render_one(&report, format)?,
        failures,
    })
}

/// Runs a parsed command on the current thread pool.
pub fn execute(cli: &Cli) -> Result<Outcome> {
    let csv = cli.format.unwrap_or(Format::Csv);
    match &cli.command {
        Command::Density(a) => density(a, csv),
        Command::Dirichlet(a) => dirichlet(a, csv),
        Command::FourierCheck(a) => fourier_check(a, csv),
        Command::Simulate(a) => simulate(a, csv),
        Command::Decompose(a) => decompose(a, csv),
        Command::Moments(a) => moments(a, csv),
        Command::Certify(a) => certify(a, cli.format.unwrap_or(Format::Json)),
        Command::Constants => Ok(Outcome::ok(render(&constants_table()?, csv)?)),
    }
}

/// Parses `argv` (program name first), runs it, prints the body and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let _ = env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).try_init();
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build() {
        Ok(pool) => pool,
        Err(e) => {
            eprintln!("error: thread pool: {e}");
            return 2;
        }
    };
    let outcome = match pool.install(|| execute(&cli)) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    print!("{}", outcome.body);
    if let Some(path) = &cli.out {
        if let Err(e) = std::fs::write(path, &outcome.body) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return 1;
        }
    }
    for f in &outcome.failures {
        eprintln!("check failed: {f}");
    }
    if outcome.failures.is_empty() {
        0
    } else {
        1
    }
}
