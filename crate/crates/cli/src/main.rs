//! `ratiovec`: compute and explore ratio vectors from the command line.
//!
//! Exit codes: 0 success or verdict true, 1 verdict false, 2 input error,
//! 3 numerical failure.

mod expr;
mod report;
mod scan;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use ratiovec::n3::RELATION_TOL;
use ratiovec::{
    check_bounds, conjecture_search, degenerate_check, find_order_violation_n3, is_ratio_vector_n3,
    membership_n4, monotonicity_classify_n3, ratio_vector, reconstruct_roots_n4, roots_from_sigma1_n3,
    sigma2_from_sigma1, solve_system_general, system_residual_n4, t4_monotone_sufficient, validate_instance,
    BoundsReport, Error, GeneralSolveResult, GeneralSolverConfig, MembershipReportN4, N4Candidate,
    SolveStatus, SolverConfig, MEMBERSHIP_TOL,
};

use report::Sink;
use scan::ScanOpts;

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Numerical(String),
    Io(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) | CliError::Io(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "input error: {m}"),
            CliError::Numerical(m) => write!(f, "numerical failure: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

pub fn lib_err(e: Error) -> CliError {
    match e {
        Error::ConvergenceFailure { .. } | Error::NegativeDiscriminant(_) | Error::DegenerateDenominator(_) => {
            CliError::Numerical(e.to_string())
        }
        other => CliError::Input(other.to_string()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Parser)]
#[command(name = "ratiovec", version, about = "Ratio vectors of polynomial-like functions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// JSON file with "roots", "mults" and optionally "sigmas".
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Tolerance of the membership test or solver (expression).
    #[arg(long, global = true, allow_hyphen_values = true)]
    tol: Option<String>,
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Objective evaluations for `conjecture`, starting points for `solve`.
    #[arg(long, global = true)]
    budget: Option<usize>,
    /// Defaults to json, or csv for scans.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Print nothing; report through the exit code only.
    #[arg(long, global = true)]
    quiet: bool,
}

/// Comma-separated numbers or expressions, e.g. `3/2,1,sqrt(2),2`.
#[derive(Args, Clone, Default)]
struct Values {
    #[arg(long, allow_hyphen_values = true)]
    roots: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    mults: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    sigmas: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Critical points and ratio vector of an instance.
    Ratios(Values),
    /// Check a ratio vector against its multiplicity bounds.
    Bounds(Values),
    /// Three-root theory.
    #[command(subcommand)]
    N3(N3Cmd),
    /// Four-root theory.
    #[command(subcommand)]
    N4(N4Cmd),
    /// Solve the root/ratio system for any number of roots.
    Solve(Values),
    /// Check that the all-ones ratio vector has no solution.
    Degenerate(Values),
    /// Search for two separated instances with the same ratio vector.
    Conjecture {
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[command(flatten)]
        values: Values,
    },
    /// Deterministic sampling campaigns.
    Scan {
        #[command(subcommand)]
        kind: ScanKind,
        /// Resume at sample index K.
        #[arg(long, global = true, default_value_t = 0)]
        skip: usize,
    },
}

#[derive(Subcommand)]
enum N3Cmd {
    /// Test whether (σ1, σ2) is a ratio vector.
    Check(Values),
    /// Roots (0, 1, r) with a prescribed first ratio.
    Invert {
        #[command(flatten)]
        values: Values,
        #[arg(long, allow_hyphen_values = true)]
        sigma1: String,
    },
    /// Decide whether σ1 < σ2 for every root placement.
    Classify(Values),
}

#[derive(Subcommand)]
enum N4Cmd {
    /// Membership test for (σ1, σ2, σ3).
    Member(Values),
    /// Roots (−1, 0, r, s) with the given ratio vector.
    Reconstruct(Values),
    /// Sufficient condition for σ1 < σ2 < σ3.
    T4(Values),
}

#[derive(Subcommand)]
enum ScanKind {
    /// Random instances against the ratio bounds.
    Bounds {
        #[arg(long, default_value_t = 5)]
        n: usize,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
    /// Three-root order of ratios on a multiplicity grid.
    Monotonicity {
        #[arg(long, default_value_t = 5)]
        max_mult: u32,
        /// Random placements per grid point.
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// Four-root instances satisfying the monotone sufficient condition.
    T4 {
        #[arg(long, default_value_t = 500)]
        samples: usize,
    },
    /// Three-root relation on random instances.
    T1 {
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
}

#[derive(Deserialize, Default)]
struct InputFile {
    roots: Option<Vec<f64>>,
    mults: Option<Vec<f64>>,
    sigmas: Option<Vec<f64>>,
}

/// Resolves command-line values over the input file.
struct Resolved {
    file: InputFile,
    values: Values,
}

impl Resolved {
    fn get(&self, name: &str, flag: &Option<String>, from_file: &Option<Vec<f64>>) -> Result<Vec<f64>, CliError> {
        match (flag, from_file) {
            (Some(s), _) => expr::parse_list(s).map_err(|e| CliError::Input(format!("--{name}: {e}"))),
            (None, Some(v)) => Ok(v.clone()),
            (None, None) => Err(CliError::Input(format!("missing --{name} (or \"{name}\" in --input)"))),
        }
    }
    fn roots(&self) -> Result<Vec<f64>, CliError> {
        self.get("roots", &self.values.roots, &self.file.roots)
    }
    fn mults(&self) -> Result<Vec<f64>, CliError> {
        self.get("mults", &self.values.mults, &self.file.mults)
    }
    fn sigmas(&self) -> Result<Vec<f64>, CliError> {
        self.get("sigmas", &self.values.sigmas, &self.file.sigmas)
    }
}

fn fixed<const K: usize>(name: &str, v: Vec<f64>) -> Result<[f64; K], CliError> {
    let len = v.len();
    v.try_into()
        .map_err(|_| CliError::Input(format!("--{name}: expected {K} values, got {len}")))
}

#[derive(Serialize)]
struct RatiosReport {
    roots: Vec<f64>,
    mults: Vec<f64>,
    sigmas: Vec<f64>,
    critical_points: Vec<f64>,
}

#[derive(Serialize)]
struct WithInstance<T> {
    roots: Vec<f64>,
    mults: Vec<f64>,
    #[serde(flatten)]
    report: T,
}

#[derive(Serialize)]
struct N3CheckReport {
    mults: [f64; 3],
    sigmas: [f64; 2],
    is_ratio_vector: bool,
    relation_residual: f64,
    bounds_ok: bool,
}

#[derive(Serialize)]
struct N3InvertReport {
    mults: [f64; 3],
    roots: [f64; 3],
    sigmas: [f64; 2],
}

#[derive(Serialize)]
struct N3ClassifyReport {
    mults: [f64; 3],
    always: bool,
    #[serde(rename = "A")]
    a: bool,
    #[serde(rename = "B")]
    b: bool,
    #[serde(rename = "C")]
    c: bool,
    h1_nonnegative: bool,
    linear_nonnegative: bool,
    stated_rule: bool,
    /// An `r` with `σ1 ≥ σ2` for roots `(0, 1, r)`, when one exists.
    violation_r: Option<f64>,
}

#[derive(Serialize)]
struct N4Report<T> {
    mults: [f64; 4],
    sigmas: [f64; 3],
    #[serde(flatten)]
    report: T,
}

#[derive(Serialize)]
struct Reconstruction {
    member: bool,
    roots: Option<[f64; 4]>,
    residuals: Option<[f64; 3]>,
}

#[derive(Serialize)]
struct Flag {
    mults: Vec<f64>,
    #[serde(flatten)]
    value: std::collections::BTreeMap<&'static str, bool>,
}

fn flag(mults: Vec<f64>, name: &'static str, value: bool) -> Flag {
    Flag {
        mults,
        value: [(name, value)].into(),
    }
}

#[derive(Serialize)]
struct SolveReport {
    mults: Vec<f64>,
    sigmas: Vec<f64>,
    #[serde(flatten)]
    result: GeneralSolveResult,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let quiet = cli.quiet;
    match configure_threads().and_then(|()| run(cli)) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            if !quiet {
                eprintln!("ratiovec: {e}");
            }
            ExitCode::from(e.exit_code())
        }
    }
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("RATIOVEC_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| CliError::Input(format!("RATIOVEC_THREADS must be a positive integer, got {raw:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Io(e.to_string()))
}

fn read_input(path: &Option<PathBuf>) -> Result<InputFile, CliError> {
    let Some(path) = path else {
        return Ok(InputFile::default());
    };
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// Returns the verdict: `true` maps to exit code 0, `false` to 1.
fn run(cli: Cli) -> Result<bool, CliError> {
    let file = read_input(&cli.input)?;
    let tol = cli
        .tol
        .as_deref()
        .map(|t| expr::parse_expr(t).map_err(|e| CliError::Input(format!("--tol: {e}"))))
        .transpose()?;
    if tol.is_some_and(|t| t <= 0.0) {
        return Err(CliError::Input("--tol must be positive".into()));
    }
    let is_scan = matches!(cli.command, Command::Scan { .. });
    let format = cli.format.unwrap_or(if is_scan { Format::Csv } else { Format::Json });
    let open = || Sink::open(cli.output.as_deref(), format, cli.quiet);
    let with = |values: &Values| Resolved {
        file: InputFile {
            roots: file.roots.clone(),
            mults: file.mults.clone(),
            sigmas: file.sigmas.clone(),
        },
        values: values.clone(),
    };

    match &cli.command {
        Command::Ratios(v) => {
            let v = with(v);
            let p = validate_instance(&v.roots()?, &v.mults()?).map_err(lib_err)?;
            let rv = ratio_vector(&p, &SolverConfig::default()).map_err(lib_err)?;
            open()?.report(&RatiosReport {
                roots: p.roots().to_vec(),
                mults: p.mults().to_vec(),
                sigmas: rv.sigmas,
                critical_points: rv.critical_points,
            })?;
            Ok(true)
        }
        Command::Bounds(v) => {
            let v = with(v);
            let p = validate_instance(&v.roots()?, &v.mults()?).map_err(lib_err)?;
            let rv = ratio_vector(&p, &SolverConfig::default()).map_err(lib_err)?;
            let rep: BoundsReport = check_bounds(&rv);
            let inside = rep.all_strictly_inside;
            open()?.report(&WithInstance {
                roots: p.roots().to_vec(),
                mults: p.mults().to_vec(),
                report: rep,
            })?;
            Ok(inside)
        }
        Command::N3(cmd) => n3(cmd, &with, tol, &open),
        Command::N4(cmd) => n4(cmd, &with, tol, &open),
        Command::Solve(v) => {
            let v = with(v);
            let (mults, sigmas) = (v.mults()?, v.sigmas()?);
            let mut cfg = GeneralSolverConfig::default();
            if let Some(t) = tol {
                cfg.tol = t;
            }
            if let Some(b) = cli.budget {
                cfg.starts = b;
            }
            let result = solve_system_general(&mults, &sigmas, &cfg).map_err(lib_err)?;
            let found = result.status == SolveStatus::RealOrderedSolution;
            open()?.report(&SolveReport { mults, sigmas, result })?;
            Ok(found)
        }
        Command::Degenerate(v) => {
            let mults = with(v).mults()?;
            let mut cfg = GeneralSolverConfig::default();
            if let Some(b) = cli.budget {
                cfg.starts = b;
            }
            let degenerate = degenerate_check(&mults, &cfg).map_err(lib_err)?;
            open()?.report(&flag(mults, "degenerate", degenerate))?;
            Ok(degenerate)
        }
        Command::Conjecture { n, values } => {
            let v = with(values);
            let mults = if v.values.mults.is_some() || v.file.mults.is_some() {
                v.mults()?
            } else {
                vec![1.0; *n]
            };
            let rep = conjecture_search(mults.len(), &mults, cli.budget.unwrap_or(10_000), cli.seed)
                .map_err(lib_err)?;
            open()?.report(&rep)?;
            Ok(true)
        }
        Command::Scan { kind, skip } => {
            let mut opts = ScanOpts {
                seed: cli.seed,
                samples: 0,
                skip: *skip,
                tol: tol.unwrap_or(RELATION_TOL),
            };
            let mut sink = open()?;
            match kind {
                ScanKind::Bounds { n, samples } => {
                    opts.samples = *samples;
                    let rows = scan::bounds(*n, &opts)?;
                    sink.rows(&rows)?;
                    Ok(rows.iter().all(|r| r.inside))
                }
                ScanKind::Monotonicity { max_mult, samples } => {
                    let rows = scan::monotonicity(*max_mult, *samples, &opts)?;
                    sink.rows(&rows)?;
                    Ok(rows.iter().all(|r| r.consistent))
                }
                ScanKind::T4 { samples } => {
                    opts.samples = *samples;
                    let rows = scan::t4(&opts)?;
                    sink.rows(&rows)?;
                    Ok(rows.iter().all(|r| r.monotone))
                }
                ScanKind::T1 { samples } => {
                    opts.samples = *samples;
                    let rows = scan::t1(&opts)?;
                    sink.rows(&rows)?;
                    Ok(rows.iter().all(|r| r.member))
                }
            }
        }
    }
}

fn n3(
    cmd: &N3Cmd,
    with: &dyn Fn(&Values) -> Resolved,
    tol: Option<f64>,
    open: &dyn Fn() -> Result<Sink, CliError>,
) -> Result<bool, CliError> {
    match cmd {
        N3Cmd::Check(v) => {
            let v = with(v);
            let mults = fixed::<3>("mults", v.mults()?)?;
            let sigmas = fixed::<2>("sigmas", v.sigmas()?)?;
            let verdict =
                is_ratio_vector_n3(mults, sigmas[0], sigmas[1], tol.unwrap_or(RELATION_TOL)).map_err(lib_err)?;
            open()?.report(&N3CheckReport {
                mults,
                sigmas,
                is_ratio_vector: verdict.is_ratio_vector,
                relation_residual: verdict.relation_residual,
                bounds_ok: verdict.bounds_ok,
            })?;
            Ok(verdict.is_ratio_vector)
        }
        N3Cmd::Invert { values, sigma1 } => {
            let mults = fixed::<3>("mults", with(values).mults()?)?;
            let u = expr::parse_expr(sigma1).map_err(|e| CliError::Input(format!("--sigma1: {e}")))?;
            let r = roots_from_sigma1_n3(mults, u).map_err(lib_err)?;
            let sigma2 = sigma2_from_sigma1(mults, u).map_err(lib_err)?;
            open()?.report(&N3InvertReport {
                mults,
                roots: [0.0, 1.0, r],
                sigmas: [u, sigma2],
            })?;
            Ok(true)
        }
        N3Cmd::Classify(v) => {
            let mults = fixed::<3>("mults", with(v).mults()?)?;
            let verdict = monotonicity_classify_n3(mults).map_err(lib_err)?;
            let violation_r = if verdict.always_sigma1_lt_sigma2 {
                None
            } else {
                find_order_violation_n3(mults).map_err(lib_err)?
            };
            open()?.report(&N3ClassifyReport {
                mults,
                always: verdict.always_sigma1_lt_sigma2,
                a: verdict.condition_a,
                b: verdict.condition_b,
                c: verdict.condition_c,
                h1_nonnegative: verdict.endpoint_nonnegative,
                linear_nonnegative: verdict.linear_nonnegative,
                stated_rule: verdict.stated_rule,
                violation_r,
            })?;
            Ok(verdict.always_sigma1_lt_sigma2)
        }
    }
}

fn n4(
    cmd: &N4Cmd,
    with: &dyn Fn(&Values) -> Resolved,
    tol: Option<f64>,
    open: &dyn Fn() -> Result<Sink, CliError>,
) -> Result<bool, CliError> {
    let candidate = |v: &Resolved| -> Result<([f64; 4], [f64; 3], N4Candidate), CliError> {
        let mults = fixed::<4>("mults", v.mults()?)?;
        let sigmas = fixed::<3>("sigmas", v.sigmas()?)?;
        let c = N4Candidate::new(mults, sigmas).map_err(lib_err)?;
        Ok((mults, sigmas, c))
    };
    match cmd {
        N4Cmd::Member(v) => {
            let (mults, sigmas, c) = candidate(&with(v))?;
            let report: MembershipReportN4 = membership_n4(&c, tol.unwrap_or(MEMBERSHIP_TOL));
            let verdict = report.verdict;
            open()?.report(&N4Report { mults, sigmas, report })?;
            Ok(verdict)
        }
        N4Cmd::Reconstruct(v) => {
            let (mults, sigmas, c) = candidate(&with(v))?;
            let report = match reconstruct_roots_n4(&c) {
                Ok((r, s)) => Reconstruction {
                    member: true,
                    roots: Some([-1.0, 0.0, r, s]),
                    residuals: Some(system_residual_n4(r, s, &c)),
                },
                Err(Error::NotAMember) => Reconstruction {
                    member: false,
                    roots: None,
                    residuals: None,
                },
                Err(e) => return Err(lib_err(e)),
            };
            let member = report.member;
            open()?.report(&N4Report { mults, sigmas, report })?;
            Ok(member)
        }
        N4Cmd::T4(v) => {
            let mults = fixed::<4>("mults", with(v).mults()?)?;
            let sufficient = t4_monotone_sufficient(mults);
            if let Some(index) = mults.iter().position(|m| !(*m > 0.0)) {
                return Err(lib_err(Error::NonPositiveMultiplicity {
                    index,
                    value: mults[index],
                }));
            }
            open()?.report(&flag(mults.to_vec(), "sufficient", sufficient))?;
            Ok(sufficient)
        }
    }
}
