//! `hankel`: command-line runner for the Hankel determinantal checks.
//!
//! Every check prints a JSON (or CSV) report, stores the deterministic part
//! under `<out>/<command>/<params-hash>.json` and exits with 0 for
//! pass/consistent, 1 for fail/counterexample, 2 when a Gröbner budget ran
//! out and 3 on usage errors.

mod checks;
mod report;
mod sweep;

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use hankel_core::groebner::{Budget, Engine, GbCache};
use hankel_core::polyring::{CoefficientField, MonomialOrder};

use checks::{run_check, Cell, Check, CheckError, Context};
use report::{Params, Report, RunInfo};

const USAGE_EXIT: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "hankel", version, about = "Exact checks on degenerate Hankel determinantal ideals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: GlobalOpts,
}

#[derive(Args, Debug, Clone)]
struct GlobalOpts {
    /// Coefficient field: `q` or `f<p>` for a prime p.
    #[arg(long, global = true, default_value = "q")]
    field: String,
    /// Monomial order for Gröbner computations: degrevlex or lex.
    #[arg(long, global = true, default_value = "degrevlex")]
    order: String,
    /// Seed for random evaluation points.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Maximum number of S-pair reductions per basis computation.
    #[arg(long, global = true)]
    budget_pairs: Option<usize>,
    /// Worker threads for sweeps (default: number of cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Results directory.
    #[arg(long, global = true, default_value = "results")]
    out: PathBuf,
    /// Cache root; bases live in `<dir>/gb`. Defaults to `$HANKEL_CACHE_DIR`
    /// or `cache`.
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    /// Run without the disk cache.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Output format; JSON by default, CSV for sweeps.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug, Clone)]
struct CellArgs {
    #[arg(long)]
    m: usize,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    t: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Determinant of H_m[r], its pure x_m term and the adjugate identity.
    Det(CellArgs),
    /// Partial derivatives as cofactor sums, Euler's identity, cofactor relations.
    Gradient(CellArgs),
    /// Non-vanishing of the Hessian through its three-variable degeneration.
    HessianCheck(CellArgs),
    /// Degenerated Hessian against the closed form.
    AppendixCheck(CellArgs),
    /// The Θ-submatrix determinant is a nonzero pure power.
    ThetaCheck(CellArgs),
    /// codim I_t(H_m[r]) against min{2(m-t)+1, 2m-t-r}.
    CodimMinors(CellArgs),
    /// Codimension of the gradient ideal.
    CodimGradient(CellArgs),
    /// I_t of H_{m,m}[r] equals I_t of H_{t,2m-t}[r].
    GpCheck(CellArgs),
    /// Poset of maximal minors of H_{m-1,m+1}.
    Poset(CellArgs),
    /// Three-term Plücker relations and the squared-minor identity.
    Pluecker(CellArgs),
    /// Partial derivatives written over the brackets of one level.
    LevelDecomp(CellArgs),
    /// Kernel of the special fiber map of the maximal minors.
    FiberKernel(CellArgs),
    /// Linear rank of the gradient ideal.
    LinearRank(CellArgs),
    /// Reduction number of the gradient ideal in the submaximal minors.
    ReductionCheck(CellArgs),
    /// Containments and codimensions of the two minimal primes.
    MinimalPrimes(CellArgs),
    /// Regularity of x_{2m-1}, x_{2m-2}, … modulo the gradient ideal.
    RegularSeq(CellArgs),
    /// Runs one check over a rectangular parameter range.
    Sweep(sweep::SweepArgs),
    /// Gröbner cache administration.
    #[command(subcommand)]
    Cache(CacheCommand),
}

#[derive(Subcommand, Debug)]
enum CacheCommand {
    /// Entry count and size on disk.
    Stats,
    /// Deletes every entry.
    Clear,
    /// Re-checks random entries and evicts the bad ones.
    Verify {
        #[arg(long, default_value_t = 3)]
        samples: usize,
    },
}

impl Command {
    fn as_check(&self) -> Option<(Check, &CellArgs)> {
        let c = match self {
            Command::Det(a) => (Check::Det, a),
            Command::Gradient(a) => (Check::Gradient, a),
            Command::HessianCheck(a) => (Check::HessianCheck, a),
            Command::AppendixCheck(a) => (Check::AppendixCheck, a),
            Command::ThetaCheck(a) => (Check::ThetaCheck, a),
            Command::CodimMinors(a) => (Check::CodimMinors, a),
            Command::CodimGradient(a) => (Check::CodimGradient, a),
            Command::GpCheck(a) => (Check::GpCheck, a),
            Command::Poset(a) => (Check::Poset, a),
            Command::Pluecker(a) => (Check::Pluecker, a),
            Command::LevelDecomp(a) => (Check::LevelDecomp, a),
            Command::FiberKernel(a) => (Check::FiberKernel, a),
            Command::LinearRank(a) => (Check::LinearRank, a),
            Command::ReductionCheck(a) => (Check::ReductionCheck, a),
            Command::MinimalPrimes(a) => (Check::MinimalPrimes, a),
            Command::RegularSeq(a) => (Check::RegularSeq, a),
            Command::Sweep(_) | Command::Cache(_) => return None,
        };
        Some(c)
    }
}

fn usage(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    eprintln!("run `hankel --help` for usage");
    ExitCode::from(USAGE_EXIT)
}

fn cache_root(opts: &GlobalOpts) -> PathBuf {
    opts.cache
        .clone()
        .or_else(|| std::env::var_os("HANKEL_CACHE_DIR").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("cache"))
}

fn open_cache(opts: &GlobalOpts) -> Result<Arc<GbCache>, String> {
    GbCache::open(cache_root(opts).join("gb"))
        .map(Arc::new)
        .map_err(|e| e.to_string())
}

pub struct Settings {
    field: CoefficientField,
    order: MonomialOrder,
    cache: Option<Arc<GbCache>>,
}

fn settings(opts: &GlobalOpts) -> Result<(Settings, Context), String> {
    let field = CoefficientField::parse(&opts.field).map_err(|e| e.to_string())?;
    let order = match MonomialOrder::parse(&opts.order) {
        Some(o @ (MonomialOrder::DegRevLex | MonomialOrder::Lex)) => o,
        _ => return Err(format!("unknown order `{}` (expected degrevlex or lex)", opts.order)),
    };
    let mut budget = Budget::default();
    if let Some(p) = opts.budget_pairs {
        budget.max_pair_reductions = p;
    }
    let mut engine = Engine::new(budget).with_order(order);
    let cache = if opts.no_cache { None } else { Some(open_cache(opts)?) };
    if let Some(c) = &cache {
        engine = engine.with_cache(c.clone());
    }
    let ctx = Context {
        field,
        order,
        seed: opts.seed,
        engine,
    };
    Ok((Settings { field, order, cache }, ctx))
}

fn params(cell: Cell, s: &Settings) -> Params {
    Params {
        m: cell.m,
        r: cell.r,
        t: cell.t,
        field: s.field.to_string(),
        order: s.order.to_string(),
    }
}

/// Runs one cell and writes its report files.
pub(crate) fn execute(check: Check, cell: Cell, s: &Settings, ctx: &Context, out: &std::path::Path) -> Result<(Report, RunInfo), CheckError> {
    let hits0 = s.cache.as_ref().map_or(0, |c| c.hits());
    let misses0 = s.cache.as_ref().map_or(0, |c| c.misses());
    let start = Instant::now();
    let o = run_check(check, cell, ctx)?;
    let info = RunInfo {
        timing_ms: start.elapsed().as_millis(),
        cache_hits: s.cache.as_ref().map_or(0, |c| c.hits()) - hits0,
        cache_misses: s.cache.as_ref().map_or(0, |c| c.misses()) - misses0,
    };
    let report = Report::new(check.name(), params(cell, s), ctx.seed, o.verdict, o.summary, o.witness);
    if let Err(e) = report.write(out, &info) {
        log::warn!("could not write results under {}: {e}", out.display());
    }
    Ok((report, info))
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { USAGE_EXIT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let opts = &cli.opts;
    if let Command::Cache(cmd) = &cli.command {
        let cache = match open_cache(opts) {
            Ok(c) => c,
            Err(e) => return usage(&e),
        };
        let value = match cmd {
            CacheCommand::Stats => json!(cache.stats()),
            CacheCommand::Clear => match cache.clear() {
                Ok(n) => json!({ "removed": n }),
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(1);
                }
            },
            CacheCommand::Verify { samples } => {
                let rep = cache.verify(*samples, opts.seed);
                for name in &rep.evicted {
                    log::warn!("evicted corrupted cache entry {name}");
                }
                json!(rep)
            }
        };
        println!("{}", serde_json::to_string_pretty(&value).expect("json"));
        return ExitCode::SUCCESS;
    }
    let (s, ctx) = match settings(opts) {
        Ok(x) => x,
        Err(e) => return usage(&e),
    };
    if let Command::Sweep(args) = &cli.command {
        return match sweep::run(args, &s, &ctx, &opts.out, opts.jobs, opts.format != Some(Format::Json)) {
            Ok(code) => ExitCode::from(code),
            Err(e) => usage(&e),
        };
    }
    let (check, a) = cli.command.as_check().expect("check command");
    let cell = Cell {
        m: a.m,
        r: a.r.unwrap_or(0),
        t: a.t,
    };
    match execute(check, cell, &s, &ctx, &opts.out) {
        Ok((report, info)) => {
            match opts.format.unwrap_or(Format::Json) {
                Format::Json => print!("{}", report.to_json_with(&info)),
                Format::Csv => println!("{}\n{}", Report::csv_header(), report.csv_row()),
            }
            ExitCode::from(report.verdict.exit_code() as u8)
        }
        Err(CheckError::Usage(msg)) => usage(&msg),
    }
}
