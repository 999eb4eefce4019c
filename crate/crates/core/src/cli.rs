//! Command-line front end. Exit codes: 0 success, 1 usage, 2 data, 3 numerical.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::error::{Error, Result};
use crate::instance::{LassoInstance, LassoVariant, LogRegInstance, SvmInstance, WarmStart};
use crate::io::synth::{self, SynthSpec};
use crate::io::{
    load_dataset, read_report, sparse_pairs, to_labels, write_dataset, ReportFile, ScreenRecord, SolutionRecord,
};
use crate::matrix::SparseColMatrix;
use crate::report::ScreeningReport;
use crate::safe_lasso::{lambda_max, screen, ScreenOptions};
use crate::safe_logreg::{default_dual_point, dual_point_from_primal, screen_logreg_with, LogRegScreenOptions};
use crate::safe_svm::{default_reference, screen_svm, SvmScreenOptions};
use crate::solvers::{duality_gap_lasso, kkt_threshold, tr_threshold, SolveOptions};
use crate::workflows::{solve_memory_limited, solve_path_recursive, MemoryOptions, PathOptions, PathSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DATA: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "safescreen", version, about = "Safe feature elimination for sparse learning problems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Screen features at one penalty.
    Screen(ScreenArgs),
    /// Solve a LASSO path with recursive screening.
    Path(PathArgs),
    /// Solve a LASSO problem under a feature budget.
    Memsolve(MemsolveArgs),
    /// Zero small coefficients of an approximate LASSO solution.
    Threshold(ThresholdArgs),
    /// Time screening along a penalty grid.
    Bench(BenchArgs),
    /// Write a seeded synthetic dataset.
    Synth(SynthArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq)]
enum Task {
    Lasso,
    Svm,
    Logreg,
}

impl Task {
    fn name(self) -> &'static str {
        match self {
            Task::Lasso => "lasso",
            Task::Svm => "svm",
            Task::Logreg => "logreg",
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Rule {
    Kkt,
    Tr,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum SynthTask {
    Regression,
    Classification,
}

#[derive(Args, Debug)]
struct DataArgs {
    /// svmlight file, or dense CSV (response first) when the name ends in .csv
    #[arg(long)]
    data: PathBuf,
    /// The CSV file has a header row
    #[arg(long)]
    header: bool,
}

#[derive(Args, Debug)]
struct LassoArgs {
    /// Fit an unpenalized intercept
    #[arg(long, conflicts_with = "elastic")]
    intercept: bool,
    /// Add an elastic-net term (ε/2)‖w‖²
    #[arg(long, value_name = "EPS")]
    elastic: Option<f64>,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct LambdaArgs {
    /// Absolute penalty
    #[arg(long)]
    lambda: Option<f64>,
    /// Penalty as a fraction of the task's reference penalty
    #[arg(long)]
    lambda_frac: Option<f64>,
}

#[derive(Args, Debug)]
struct ScreenArgs {
    #[arg(long, value_enum, default_value = "lasso")]
    task: Task,
    #[command(flatten)]
    data: DataArgs,
    #[command(flatten)]
    lambda: LambdaArgs,
    /// Report with a solution at a larger penalty (lasso and logreg)
    #[arg(long)]
    warm_start: Option<PathBuf>,
    /// Include per-feature test values
    #[arg(long)]
    certificates: bool,
    #[command(flatten)]
    lasso: LassoArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
#[group(id = "penalties", required = true, multiple = false, args = ["lambdas", "grid"])]
struct PathArgs {
    #[command(flatten)]
    data: DataArgs,
    /// Comma-separated, strictly decreasing absolute penalties
    #[arg(long)]
    lambdas: Option<String>,
    /// `log:lo:hi:count`, as fractions of lambda_max
    #[arg(long)]
    grid: Option<String>,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    #[arg(long, default_value_t = 100_000)]
    max_iters: usize,
    /// Solve every point on all features
    #[arg(long)]
    no_screen: bool,
    #[command(flatten)]
    lasso: LassoArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct MemsolveArgs {
    #[command(flatten)]
    data: DataArgs,
    #[command(flatten)]
    lambda: LambdaArgs,
    /// Most features any single solve may use
    #[arg(long)]
    budget: usize,
    /// Acceptable shortfall below the budget (default budget/10)
    #[arg(long)]
    eps_f: Option<usize>,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    #[command(flatten)]
    lasso: LassoArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ThresholdArgs {
    #[command(flatten)]
    data: DataArgs,
    /// Report holding the solution to threshold
    #[arg(long)]
    solution: PathBuf,
    #[arg(long)]
    lambda: f64,
    #[arg(long, value_enum)]
    rule: Rule,
    #[arg(long, default_value_t = 2.0)]
    alpha: f64,
    /// Relative accuracy of the solution (default: its certified gap)
    #[arg(long)]
    eps: Option<f64>,
    #[command(flatten)]
    lasso: LassoArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct BenchArgs {
    #[arg(long, value_enum, default_value = "lasso")]
    task: Task,
    #[command(flatten)]
    data: DataArgs,
    /// `log:lo:hi:count`, as fractions of the reference penalty
    #[arg(long)]
    grid: String,
    #[command(flatten)]
    lasso: LassoArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SynthArgs {
    #[arg(long, value_enum, default_value = "regression")]
    task: SynthTask,
    #[arg(long, default_value_t = 50)]
    m: usize,
    #[arg(long, default_value_t = 100)]
    n: usize,
    #[arg(long, default_value_t = 1.0)]
    density: f64,
    #[arg(long, default_value_t = 5)]
    support: usize,
    #[arg(long, default_value_t = 0.1)]
    noise: f64,
    #[arg(long, default_value_t = synth::DEFAULT_SEED)]
    seed: u64,
    /// Output dataset (.csv for CSV, svmlight otherwise)
    #[arg(long)]
    out: PathBuf,
}

/// Exit code and stderr tag for an error.
pub fn classify(err: &Error) -> (i32, &'static str) {
    match err {
        Error::InvalidArgument(_) => (EXIT_USAGE, "usage"),
        Error::Dimension(_)
        | Error::IndexOutOfRange { .. }
        | Error::InvalidData(_)
        | Error::Parse { .. }
        | Error::Io(_)
        | Error::Json(_)
        | Error::BudgetInfeasible { .. } => (EXIT_DATA, "data"),
        Error::InvalidGeometry(_) | Error::NotConverged { .. } | Error::Numerical(_) => {
            (EXIT_NUMERICAL, "numerical")
        }
    }
}

/// Parses `argv` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return EXIT_OK;
            }
            let rendered = e.render().to_string();
            let body = rendered.strip_prefix("error: ").unwrap_or(&rendered);
            eprint!("error[usage]: {body}");
            return EXIT_USAGE;
        }
    };
    if let Err(msg) = configure_threads() {
        eprintln!("error[usage]: {msg}");
        return EXIT_USAGE;
    }
    match dispatch(cli.command) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let (code, tag) = classify(&e);
            eprintln!("error[{tag}]: {e}");
            code
        }
    }
}

fn configure_threads() -> std::result::Result<(), String> {
    let Ok(raw) = std::env::var("SAFESCREEN_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|n| *n > 0)
        .ok_or_else(|| format!("SAFESCREEN_THREADS must be a positive integer, got {raw:?}"))?;
    // a pool built earlier in the process is kept
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

fn dispatch(cmd: Command) -> Result<()> {
    let start = Instant::now();
    let (mut report, out) = match cmd {
        Command::Screen(a) => (cmd_screen(&a)?, a.out),
        Command::Path(a) => (cmd_path(&a)?, a.out),
        Command::Memsolve(a) => (cmd_memsolve(&a)?, a.out),
        Command::Threshold(a) => (cmd_threshold(&a)?, a.out),
        Command::Bench(a) => (cmd_bench(&a)?, a.out),
        Command::Synth(a) => return cmd_synth(&a),
    };
    report.timings.total_seconds = start.elapsed().as_secs_f64();
    emit(&report, out.as_deref())
}

fn emit(report: &ReportFile, out: Option<&Path>) -> Result<()> {
    match out {
        Some(p) => crate::io::write_report(p, report),
        None => {
            let mut stdout = std::io::stdout().lock();
            serde_json::to_writer_pretty(&mut stdout, report)?;
            writeln!(stdout)?;
            Ok(())
        }
    }
}

fn positive(name: &str, v: f64) -> Result<f64> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(Error::InvalidArgument(format!("{name} must be positive and finite, got {v}")))
    }
}

fn resolve_lambda(l: &LambdaArgs, reference: f64) -> Result<f64> {
    match (l.lambda, l.lambda_frac) {
        (Some(v), _) => positive("--lambda", v),
        (None, Some(f)) => positive("--lambda-frac", f).and_then(|f| positive("resolved lambda", f * reference)),
        (None, None) => Err(Error::InvalidArgument("one of --lambda or --lambda-frac is required".into())),
    }
}

/// Parses `log:lo:hi:count` into decreasing fractions.
fn parse_grid(spec: &str) -> Result<Vec<f64>> {
    let bad = || Error::InvalidArgument(format!("grid must look like log:lo:hi:count, got {spec:?}"));
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 4 || parts[0] != "log" {
        return Err(bad());
    }
    let lo: f64 = parts[1].parse().map_err(|_| bad())?;
    let hi: f64 = parts[2].parse().map_err(|_| bad())?;
    let count: usize = parts[3].parse().map_err(|_| bad())?;
    Ok(PathSpec::log_spaced(hi, lo, count)?.lambdas().to_vec())
}

fn parse_lambdas(list: &str) -> Result<Vec<f64>> {
    list.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| Error::InvalidArgument(format!("bad lambda {t:?}")))
        })
        .collect()
}

struct LassoSetup {
    original: LassoInstance,
    solved: LassoInstance,
}

impl LassoSetup {
    fn load(data: &DataArgs, lasso: &LassoArgs) -> Result<Self> {
        let (x, y) = load_dataset(&data.data, data.header)?;
        let variant = match (lasso.intercept, lasso.elastic) {
            (true, _) => LassoVariant::Intercept,
            (false, Some(eps)) => LassoVariant::Elastic(positive("--elastic", eps)?),
            (false, None) => LassoVariant::Plain,
        };
        let original = LassoInstance::new(x, y, variant)?;
        let solved = match variant {
            LassoVariant::Plain => original.clone(),
            LassoVariant::Intercept => original.center()?,
            LassoVariant::Elastic(_) => original.elasticize()?,
        };
        Ok(Self { original, solved })
    }

    fn intercept(&self, w: &[f64]) -> Result<f64> {
        match self.original.variant() {
            LassoVariant::Intercept => self.original.intercept_for(w),
            _ => Ok(0.0),
        }
    }

    fn variant_name(&self) -> String {
        match self.original.variant() {
            LassoVariant::Plain => "plain".into(),
            LassoVariant::Intercept => "intercept".into(),
            LassoVariant::Elastic(e) => format!("elastic:{e}"),
        }
    }
}

fn load_classification(data: &DataArgs) -> Result<(SparseColMatrix, Vec<f64>, bool)> {
    let (x, response) = load_dataset(&data.data, data.header)?;
    let (labels, remapped) = to_labels(&response);
    Ok((x, labels, remapped))
}

fn report_solutions(path: &Path) -> Result<Vec<SolutionRecord>> {
    let rep = read_report(path)?;
    if rep.solutions.is_empty() {
        return Err(Error::InvalidData(format!("{} holds no solution", path.display())));
    }
    Ok(rep.solutions)
}

/// The solution recorded at `lambda`, or the only one in the report.
fn solution_at(path: &Path, n: usize, lambda: f64) -> Result<Vec<f64>> {
    let sols = report_solutions(path)?;
    if let Some(s) = sols.iter().find(|s| (s.lambda - lambda).abs() <= 1e-12 * lambda) {
        return s.dense(n);
    }
    if let [only] = sols.as_slice() {
        return only.dense(n);
    }
    let have: Vec<String> = sols.iter().map(|s| format!("{:?}", s.lambda)).collect();
    Err(Error::InvalidData(format!(
        "{} has no solution at lambda {lambda:?}; it has {}",
        path.display(),
        have.join(", ")
    )))
}

/// The solution with the smallest penalty not below `lambda`, falling back to
/// the largest one.
fn warm_solution(path: &Path, n: usize, lambda: f64) -> Result<(f64, Vec<f64>)> {
    let sols = report_solutions(path)?;
    let above = sols.iter().filter(|s| s.lambda >= lambda).min_by(|a, b| a.lambda.total_cmp(&b.lambda));
    let pick = above
        .or_else(|| sols.iter().max_by(|a, b| a.lambda.total_cmp(&b.lambda)))
        .expect("non-empty");
    Ok((pick.lambda, pick.dense(n)?))
}

fn fill_screen(report: &mut ReportFile, r: &ScreeningReport) {
    report.lambda = Some(r.lambda);
    report.eliminated_count = Some(r.eliminated.len());
    report.kept_indices = Some(r.kept.clone());
    report.certificates = r
        .certificates
        .as_ref()
        .map(|c| c.iter().map(|&v| if v.is_finite() { v } else { f64::MAX }).collect());
}

fn cmd_screen(a: &ScreenArgs) -> Result<ReportFile> {
    let mut config = json!({
        "data": a.data.data,
        "task": a.task.name(),
        "certificates": a.certificates,
        "warm_start": a.warm_start,
    });
    let (report, screened) = match a.task {
        Task::Lasso => {
            let setup = LassoSetup::load(&a.data, &a.lasso)?;
            let inst = &setup.solved;
            let lmax = lambda_max(inst);
            let lambda = resolve_lambda(&a.lambda, lmax)?;
            let ws = match &a.warm_start {
                Some(p) => {
                    let (l0, w0) = warm_solution(p, inst.n_cols(), lambda)?;
                    WarmStart::from_solution(inst, l0, w0)?
                }
                None => WarmStart::default_for(inst),
            };
            config["variant"] = json!(setup.variant_name());
            let r = screen(inst, lambda, &ws, ScreenOptions { certificates: a.certificates })?;
            let mut rep = ReportFile::new("screen", "lasso", inst.n_cols(), setup.original.n_rows());
            rep.lambda_ref = Some(lmax);
            (rep, r)
        }
        Task::Svm => {
            if a.warm_start.is_some() {
                return Err(Error::InvalidArgument("--warm-start is not supported for svm".into()));
            }
            let (x, labels, remapped) = load_classification(&a.data)?;
            let inst = SvmInstance::new(x, labels)?;
            let (l0, g0) = default_reference(&inst)?;
            let lambda = resolve_lambda(&a.lambda, l0)?;
            config["labels_remapped"] = json!(remapped);
            let r = screen_svm(&inst, lambda, l0, g0, SvmScreenOptions { certificates: a.certificates })?;
            let mut rep = ReportFile::new("screen", "svm", inst.n_cols(), inst.data().n_rows());
            rep.lambda_ref = Some(l0);
            (rep, r)
        }
        Task::Logreg => {
            let (x, labels, remapped) = load_classification(&a.data)?;
            let inst = LogRegInstance::new(x, labels)?;
            let reference = default_dual_point(&inst).lambda0;
            let lambda = resolve_lambda(&a.lambda, reference)?;
            let dp = match &a.warm_start {
                Some(p) => dual_point_from_primal(&inst, &warm_solution(p, inst.n_cols(), lambda)?.1)?,
                None => default_dual_point(&inst),
            };
            config["labels_remapped"] = json!(remapped);
            let r = screen_logreg_with(&inst, lambda, &dp, LogRegScreenOptions { certificates: a.certificates })?;
            let mut rep = ReportFile::new("screen", "logreg", inst.n_cols(), inst.data().n_rows());
            rep.lambda_ref = Some(reference);
            (rep, r)
        }
    };
    let mut report = report;
    fill_screen(&mut report, &screened);
    config["lambda"] = json!(screened.lambda);
    report.config = config;
    Ok(report)
}

fn cmd_path(a: &PathArgs) -> Result<ReportFile> {
    let setup = LassoSetup::load(&a.data, &a.lasso)?;
    let inst = &setup.solved;
    let lmax = lambda_max(inst);
    let lambdas = match (&a.lambdas, &a.grid) {
        (Some(list), _) => parse_lambdas(list)?,
        (None, Some(g)) => parse_grid(g)?.into_iter().map(|f| f * lmax).collect(),
        (None, None) => return Err(Error::InvalidArgument("one of --lambdas or --grid is required".into())),
    };
    let path = PathSpec::new(lambdas)?;
    let opts = PathOptions {
        solve: SolveOptions {
            tol: a.tol,
            max_iters: a.max_iters,
            warm_w: None,
        },
        screening: !a.no_screen,
        recertify: true,
    };
    let result = solve_path_recursive(inst, &path, &opts)?;
    let mut report = ReportFile::new("path", "lasso", inst.n_cols(), setup.original.n_rows());
    report.lambda_ref = Some(lmax);
    for rec in &result.records {
        report.solutions.push(SolutionRecord {
            lambda: rec.log.lambda,
            solution: sparse_pairs(&rec.w),
            intercept: setup.intercept(&rec.w)?,
            objective: Some(rec.log.objective),
            gap: Some(rec.log.full_gap.unwrap_or(rec.log.gap)),
        });
    }
    report.stages = result.records.into_iter().map(|r| r.log).collect();
    report.config = json!({
        "data": a.data.data,
        "lambdas": path.lambdas(),
        "tol": a.tol,
        "max_iters": a.max_iters,
        "screening": !a.no_screen,
        "variant": setup.variant_name(),
    });
    Ok(report)
}

fn cmd_memsolve(a: &MemsolveArgs) -> Result<ReportFile> {
    let setup = LassoSetup::load(&a.data, &a.lasso)?;
    let inst = &setup.solved;
    let lmax = lambda_max(inst);
    let lambda = resolve_lambda(&a.lambda, lmax)?;
    let opts = MemoryOptions {
        solve: SolveOptions::with_tol(a.tol),
        eps_f: a.eps_f,
        ..MemoryOptions::default()
    };
    let result = solve_memory_limited(inst, lambda, a.budget, &opts)?;
    let mut report = ReportFile::new("memsolve", "lasso", inst.n_cols(), setup.original.n_rows());
    report.lambda = Some(lambda);
    report.lambda_ref = Some(lmax);
    let last = result.stages.last();
    report.solutions.push(SolutionRecord {
        lambda,
        solution: sparse_pairs(&result.w),
        intercept: setup.intercept(&result.w)?,
        objective: last.map(|s| s.objective),
        gap: last.and_then(|s| s.full_gap),
    });
    report.stages = result.stages;
    report.config = json!({
        "data": a.data.data,
        "lambda": lambda,
        "budget": a.budget,
        "eps_f": a.eps_f.unwrap_or(a.budget / 10),
        "tol": a.tol,
        "variant": setup.variant_name(),
    });
    Ok(report)
}

fn cmd_threshold(a: &ThresholdArgs) -> Result<ReportFile> {
    let setup = LassoSetup::load(&a.data, &a.lasso)?;
    let inst = &setup.solved;
    let lambda = positive("--lambda", a.lambda)?;
    let w = solution_at(&a.solution, inst.n_cols(), lambda)?;
    let eps = match a.eps {
        Some(e) => e,
        None => {
            let gap = duality_gap_lasso(inst, lambda, &w)?;
            let lower = inst.objective(lambda, &w)? - gap;
            if lower > 0.0 {
                gap / lower
            } else {
                0.0
            }
        }
    };
    let out = match a.rule {
        Rule::Kkt => kkt_threshold(&w, inst, lambda)?,
        Rule::Tr => tr_threshold(&w, inst, lambda, eps, a.alpha)?,
    };
    let mut report = ReportFile::new("threshold", "lasso", inst.n_cols(), setup.original.n_rows());
    report.lambda = Some(lambda);
    report.solutions.push(SolutionRecord {
        lambda,
        solution: sparse_pairs(&out),
        intercept: setup.intercept(&out)?,
        objective: Some(inst.objective(lambda, &out)?),
        gap: Some(duality_gap_lasso(inst, lambda, &out)?),
    });
    report.config = json!({
        "data": a.data.data,
        "solution": a.solution,
        "lambda": lambda,
        "rule": format!("{:?}", a.rule).to_lowercase(),
        "alpha": a.alpha,
        "eps": eps,
        "variant": setup.variant_name(),
    });
    Ok(report)
}

fn cmd_bench(a: &BenchArgs) -> Result<ReportFile> {
    let fractions = parse_grid(&a.grid)?;
    let mut records = Vec::new();
    let mut timed = |lambda: f64, f: &dyn Fn(f64) -> Result<ScreeningReport>| -> Result<()> {
        let t = Instant::now();
        let r = f(lambda)?;
        records.push(ScreenRecord {
            lambda,
            kept_count: r.kept.len(),
            eliminated_count: r.eliminated.len(),
            seconds: t.elapsed().as_secs_f64(),
        });
        Ok(())
    };
    let (mut report, reference) = match a.task {
        Task::Lasso => {
            let setup = LassoSetup::load(&a.data, &a.lasso)?;
            let inst = &setup.solved;
            let lmax = lambda_max(inst);
            let ws = WarmStart::default_for(inst);
            for f in &fractions {
                timed(f * lmax, &|l| screen(inst, l, &ws, ScreenOptions::default()))?;
            }
            (ReportFile::new("bench", "lasso", inst.n_cols(), setup.original.n_rows()), lmax)
        }
        Task::Svm => {
            let (x, labels, _) = load_classification(&a.data)?;
            let inst = SvmInstance::new(x, labels)?;
            let (l0, g0) = default_reference(&inst)?;
            for f in &fractions {
                timed(f * l0, &|l| screen_svm(&inst, l, l0, g0, SvmScreenOptions::default()))?;
            }
            (ReportFile::new("bench", "svm", inst.n_cols(), inst.data().n_rows()), l0)
        }
        Task::Logreg => {
            let (x, labels, _) = load_classification(&a.data)?;
            let inst = LogRegInstance::new(x, labels)?;
            let dp = default_dual_point(&inst);
            for f in &fractions {
                timed(f * dp.lambda0, &|l| screen_logreg_with(&inst, l, &dp, LogRegScreenOptions::default()))?;
            }
            (ReportFile::new("bench", "logreg", inst.n_cols(), inst.data().n_rows()), dp.lambda0)
        }
    };
    report.lambda_ref = Some(reference);
    report.screening = records;
    report.config = json!({ "data": a.data.data, "task": a.task.name(), "grid": a.grid });
    Ok(report)
}

fn cmd_synth(a: &SynthArgs) -> Result<()> {
    let spec = SynthSpec {
        m: a.m,
        n: a.n,
        density: a.density,
        support: a.support,
        noise: a.noise,
        seed: a.seed,
    };
    let (x, y) = match a.task {
        SynthTask::Regression => synth::generate(&spec)?,
        SynthTask::Classification => synth::generate_classification(&spec)?,
    };
    write_dataset(&a.out, &x, &y)
}
