use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rghw_core::bounds::{
    alpha_value, corollary1_value, eq102_bound, eq103_bound, fig1_csv, fig1_table, gv_certify, gv_max_d, BoundReport,
    GvParams,
};
use rghw_core::rghw::{rghw_auto, rghw_profile};
use rghw_core::sss::{audit_scheme, AuditReport, RampScheme, Reconstruction};
use rghw_core::{lemma3_construct, Budget, CoordSet, Error, Felt, FieldSpec, NestedPair, PairFile};
use serde::Serialize;

mod exit {
    pub const USAGE: u8 = 2;
    pub const PRECONDITION: u8 = 3;
    pub const BUDGET: u8 = 4;
    pub const MISMATCH: u8 = 5;
}

/// Environment variable overriding every enumeration budget.
const BUDGET_ENV: &str = "RGHW_BUDGET";

#[derive(Parser, Debug)]
#[command(name = "rghw", version, about = "Relative generalized Hamming weights, GV certificates and ramp scheme audits")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    shared: Shared,
}

#[derive(Args, Debug)]
struct Shared {
    /// Seed for every random draw.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Limit for every exhaustive search (overrides RGHW_BUDGET).
    #[arg(long, global = true)]
    budget: Option<u64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// M_t or the full RGHW profile of a pair file.
    Rghw {
        #[arg(long)]
        pair: PathBuf,
        #[arg(long, conflicts_with = "profile")]
        t: Option<usize>,
        #[arg(long)]
        profile: bool,
    },
    /// Exact GV certificate for one d, or for every d with --max-d.
    Gv {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k1: usize,
        #[arg(long)]
        k2: usize,
        #[arg(long)]
        t: usize,
        #[arg(long, required_unless_present = "max_d", conflicts_with = "max_d")]
        d: Option<usize>,
        #[arg(long)]
        max_d: bool,
    },
    /// A single bound value, or a CSV over a grid with --step.
    Bounds {
        #[arg(long, value_enum)]
        curve: Curve,
        #[arg(long, default_value_t = 4.0)]
        q: f64,
        #[arg(long, default_value_t = 2)]
        t: u32,
        #[arg(long)]
        r1: Option<f64>,
        #[arg(long)]
        r2: Option<f64>,
        #[arg(long)]
        tau: Option<f64>,
        #[arg(long)]
        delta: Option<f64>,
        /// Tabulate over R1 (delta for `alpha`) from 0 to 1.
        #[arg(long)]
        step: Option<f64>,
    },
    /// Lower-bound comparison table as CSV.
    Fig1 {
        #[arg(long, default_value_t = 4.0)]
        q: f64,
        #[arg(long, default_value_t = 2)]
        t: u32,
        #[arg(long, default_value_t = 0.01)]
        step: f64,
    },
    /// Singleton-attaining pair file; --verify checks M_{k1-k2} by brute force.
    Lemma3 {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k1: usize,
        #[arg(long)]
        k2: usize,
        #[arg(long)]
        verify: bool,
    },
    /// Coalition thresholds of the ramp scheme versus the dual pair's RGHW.
    SssAudit {
        #[arg(long)]
        pair: PathBuf,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Curve {
    Eq102,
    Eq103,
    Alpha,
    Corollary1,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Core(Error),
    Mismatch(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => exit::USAGE,
            CliError::Core(Error::BudgetExceeded { .. }) => exit::BUDGET,
            CliError::Core(_) => exit::PRECONDITION,
            CliError::Mismatch(_) => exit::MISMATCH,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Mismatch(m) => f.write_str(m),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn budget(shared: &Shared) -> CliResult<Budget> {
    if let Some(limit) = shared.budget {
        return Ok(Budget::uniform(limit));
    }
    match std::env::var(BUDGET_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map(Budget::uniform)
            .map_err(|_| CliError::Usage(format!("{BUDGET_ENV} must be a nonnegative integer, got {v:?}"))),
        Err(_) => Ok(Budget::default()),
    }
}

fn read_pair(path: &Path) -> CliResult<NestedPair> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    let file: PairFile =
        serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("malformed pair file {}: {e}", path.display())))?;
    Ok(file.to_pair()?)
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("plain data serializes");
    s.push('\n');
    s
}

fn emit(shared: &Shared, text: &str) -> CliResult<()> {
    match &shared.out {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn require(name: &str, v: Option<f64>) -> CliResult<f64> {
    v.ok_or_else(|| CliError::Usage(format!("--{name} is required for this curve")))
}

#[derive(Serialize)]
struct RghwOut {
    n: usize,
    k1: usize,
    k2: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    t: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rghw: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    profile: Option<Vec<usize>>,
}

fn cmd_rghw(shared: &Shared, path: &Path, t: Option<usize>) -> CliResult<String> {
    let pair = read_pair(path)?;
    let budget = budget(shared)?;
    let mut out = RghwOut { n: pair.n(), k1: pair.k1(), k2: pair.k2(), t, rghw: None, profile: None };
    match t {
        Some(t) => out.rghw = Some(rghw_auto(&pair, t, &budget)?),
        None => {
            let profile = match rghw_profile(&pair, &budget) {
                Err(Error::BudgetExceeded { .. }) => {
                    (1..=pair.k1() - pair.k2()).map(|t| rghw_auto(&pair, t, &budget)).collect::<Result<_, _>>()?
                }
                other => other?,
            };
            out.profile = Some(profile);
        }
    }
    Ok(to_json(&out))
}

#[derive(Serialize)]
struct GvOut {
    #[serde(flatten)]
    params: GvParams,
    #[serde(flatten)]
    report: BoundReport,
}

#[derive(Serialize)]
struct GvMaxOut {
    q: u64,
    n: usize,
    k1: usize,
    k2: usize,
    t: usize,
    max_d: Option<usize>,
    reports: Vec<GvOut>,
}

fn cmd_gv(q: u64, n: usize, k1: usize, k2: usize, t: usize, d: Option<usize>) -> CliResult<String> {
    match d {
        Some(d) => {
            let params = GvParams { q, n, k1, k2, t, d };
            let report = gv_certify(&params)?;
            Ok(to_json(&GvOut { params, report }))
        }
        None => {
            let all = gv_max_d(q, n, k1, k2, t)?;
            let reports = all
                .reports
                .into_iter()
                .enumerate()
                .map(|(i, report)| GvOut { params: GvParams { q, n, k1, k2, t, d: t + i }, report })
                .collect();
            Ok(to_json(&GvMaxOut { q, n, k1, k2, t, max_d: all.max_d, reports }))
        }
    }
}

#[derive(Serialize)]
struct ValueOut {
    curve: &'static str,
    value: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    clamped: Option<bool>,
}

struct BoundArgs {
    q: f64,
    t: u32,
    r1: Option<f64>,
    r2: Option<f64>,
    tau: Option<f64>,
    delta: Option<f64>,
}

fn cmd_bounds(curve: Curve, a: &BoundArgs, step: Option<f64>) -> CliResult<String> {
    let (name, axis) = match curve {
        Curve::Eq102 => ("eq102", "R1"),
        Curve::Eq103 => ("eq103", "R1"),
        Curve::Alpha => ("alpha", "delta"),
        Curve::Corollary1 => ("corollary1", "R1"),
    };
    let eval = |x: Option<f64>| -> CliResult<(f64, Option<bool>)> {
        Ok(match curve {
            Curve::Eq102 => (eq102_bound(a.t, require("r1", x)?, a.q)?, None),
            Curve::Eq103 => (eq103_bound(a.t, require("r1", x)?, a.q)?, None),
            Curve::Alpha => (alpha_value(require("delta", x)?)?, None),
            Curve::Corollary1 => {
                let v = corollary1_value(require("tau", a.tau)?, require("r1", x)?, require("r2", a.r2)?)?;
                (v.value, Some(v.clamped))
            }
        })
    };
    match step {
        None => {
            let x = if matches!(curve, Curve::Alpha) { a.delta } else { a.r1 };
            let (value, clamped) = eval(x)?;
            Ok(to_json(&ValueOut { curve: name, value, clamped }))
        }
        Some(step) => {
            let mut csv = format!("{axis},{name}\n");
            for x in rghw_core::bounds::curves::rate_grid(step)? {
                let (value, _) = eval(Some(x))?;
                csv.push_str(&format!("{x:.9},{value:.9}\n"));
            }
            Ok(csv)
        }
    }
}

fn cmd_lemma3(shared: &Shared, q: u32, n: usize, k1: usize, k2: usize, verify: bool) -> CliResult<String> {
    let field = FieldSpec::new(q)?;
    let pair = lemma3_construct(&field, n, k1, k2)?;
    if verify {
        let t = k1 - k2;
        let m = rghw_auto(&pair, t, &budget(shared)?)?;
        let expected = n + t - k1;
        eprintln!("M_{t} = {m} (n + t - k1 = {expected})");
        if m != expected {
            return Err(CliError::Mismatch(format!("M_{t} = {m} differs from n + t - k1 = {expected}")));
        }
    }
    Ok(to_json(&PairFile::from_pair(&pair)))
}

#[derive(Serialize)]
struct SssOut {
    #[serde(flatten)]
    audit: AuditReport,
    seed: u64,
    /// Dealing a seeded random secret and reconstructing from all shares returns it.
    roundtrip: bool,
}

fn cmd_sss_audit(shared: &Shared, path: &Path) -> CliResult<(String, bool)> {
    let pair = read_pair(path)?;
    let scheme = RampScheme::from_pair(pair)?;
    let audit = audit_scheme(&scheme, &budget(shared)?)?;
    let q = scheme.field().q() as u64;
    // base-q digits of the seed
    let mut rest = shared.seed;
    let secret: Vec<Felt> = (0..scheme.secret_len())
        .map(|_| {
            let digit = Felt((rest % q) as u32);
            rest /= q;
            digit
        })
        .collect();
    let shares = scheme.deal(&secret, shared.seed)?;
    let roundtrip = scheme.reconstruct(&CoordSet::full(scheme.n()), &shares)? == Reconstruction::Secret(secret);
    let ok = audit.matches && roundtrip;
    Ok((to_json(&SssOut { audit, seed: shared.seed, roundtrip }), ok))
}

fn run(cli: Cli) -> CliResult<()> {
    let shared = &cli.shared;
    let text = match cli.command {
        Command::Rghw { pair, t, profile: _ } => cmd_rghw(shared, &pair, t)?,
        Command::Gv { q, n, k1, k2, t, d, max_d: _ } => cmd_gv(q, n, k1, k2, t, d)?,
        Command::Bounds { curve, q, t, r1, r2, tau, delta, step } => {
            cmd_bounds(curve, &BoundArgs { q, t, r1, r2, tau, delta }, step)?
        }
        Command::Fig1 { q, t, step } => fig1_csv(&fig1_table(q, t, step)?),
        Command::Lemma3 { q, n, k1, k2, verify } => cmd_lemma3(shared, q, n, k1, k2, verify)?,
        Command::SssAudit { pair } => {
            let (text, ok) = cmd_sss_audit(shared, &pair)?;
            emit(shared, &text)?;
            if !ok {
                return Err(CliError::Mismatch("coalition thresholds differ from the dual pair's RGHW".into()));
            }
            return Ok(());
        }
    };
    emit(shared, &text)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
