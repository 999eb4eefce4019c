//! Screening-driven solve loops for the LASSO: λ bisection against a
//! feature budget, the memory-limited solve built on it, and the recursive
//! warm-started path.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::{LassoInstance, WarmStart};
use crate::report::{ScreeningReport, SolverResult};
use crate::safe_lasso::{screen, ScreenOptions};
use crate::solvers::{duality_gap_lasso, solve_lasso, SolveOptions};

pub const BISECT_MAX_ITERS: usize = 200;
pub const MAX_STAGES: usize = 1000;
/// A stage must lower λ by at least this fraction of λ0, or it is forced to
/// `max(λ_d, 0.9·λ0)`.
pub const MIN_STAGE_PROGRESS: f64 = 1e-3;

/// Stage progress below which the previous solve is tightened first.
const SLOW_STAGE_PROGRESS: f64 = 1e-2;

/// Tightest tolerance a stalled memory-limited stage is re-solved to.
const REFINE_TOL_FLOOR: f64 = 1e-15;

/// A strictly decreasing sequence of positive penalties.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PathSpec {
    lambdas: Vec<f64>,
}

impl PathSpec {
    pub fn new(lambdas: Vec<f64>) -> Result<Self> {
        if lambdas.is_empty() {
            return Err(Error::InvalidArgument("path has no lambdas".into()));
        }
        if lambdas.iter().any(|l| !(*l > 0.0) || !l.is_finite()) {
            return Err(Error::InvalidArgument("lambdas must be positive and finite".into()));
        }
        if lambdas.windows(2).any(|p| p[1] >= p[0]) {
            return Err(Error::InvalidArgument("lambdas must be strictly decreasing".into()));
        }
        Ok(Self { lambdas })
    }

    /// `count` log-spaced values from `hi` down to `lo`.
    pub fn log_spaced(hi: f64, lo: f64, count: usize) -> Result<Self> {
        if count == 0 || !(lo > 0.0) || !(hi >= lo) {
            return Err(Error::InvalidArgument(format!(
                "bad log grid: hi {hi}, lo {lo}, count {count}"
            )));
        }
        if count == 1 {
            return Self::new(vec![hi]);
        }
        let (a, b) = (hi.ln(), lo.ln());
        let step = (b - a) / (count - 1) as f64;
        Self::new((0..count).map(|i| (a + step * i as f64).exp()).collect())
    }

    pub fn lambdas(&self) -> &[f64] {
        &self.lambdas
    }
}

/// One solved point of a path or one stage of a memory-limited solve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StageLog {
    pub stage: usize,
    pub lambda: f64,
    /// Features left after screening (the size of the solved problem).
    pub kept: usize,
    /// Gap certified on the problem actually solved.
    pub gap: f64,
    /// Gap of the expanded solution on the full problem, when re-checked.
    pub full_gap: Option<f64>,
    pub objective: f64,
    pub sweeps: usize,
    pub coordinate_updates: usize,
    pub bisection_steps: usize,
    pub seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PathRecord {
    pub log: StageLog,
    pub w: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PathResult {
    pub records: Vec<PathRecord>,
}

impl PathResult {
    pub fn total_sweeps(&self) -> usize {
        self.records.iter().map(|r| r.log.sweeps).sum()
    }

    pub fn total_coordinate_updates(&self) -> usize {
        self.records.iter().map(|r| r.log.coordinate_updates).sum()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PathOptions {
    pub solve: SolveOptions,
    /// Screen before each solve; off gives the plain warm-started path.
    pub screening: bool,
    /// Re-check every reduced solution on the full problem.
    pub recertify: bool,
}

impl Default for PathOptions {
    fn default() -> Self {
        Self {
            solve: SolveOptions::default(),
            screening: true,
            recertify: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MemoryOptions {
    pub solve: SolveOptions,
    /// Acceptable shortfall below the budget; `None` means `budget / 10`.
    pub eps_f: Option<usize>,
    pub max_stages: usize,
}

impl Default for MemoryOptions {
    fn default() -> Self {
        Self {
            solve: SolveOptions::default(),
            eps_f: None,
            max_stages: MAX_STAGES,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Bisection {
    pub lambda: f64,
    pub report: ScreeningReport,
    pub iterations: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MemorySolveResult {
    pub w: Vec<f64>,
    pub stages: Vec<StageLog>,
}

/// Largest-progress penalty whose screened problem fits `budget`: bisects on
/// `[0, λ0]` until `budget − eps_f ≤ kept ≤ budget`. When the kept count jumps
/// over that window, returns the smallest tested λ with `kept ≤ budget`.
pub fn bisect_lambda(inst: &LassoInstance, ws: &WarmStart, budget: usize, eps_f: usize) -> Result<Bisection> {
    let (mut lo, mut hi) = (0.0, ws.lambda0());
    let mut best: Option<Bisection> = None;
    let mut fewest: Option<(f64, usize)> = None;
    for it in 1..=BISECT_MAX_ITERS {
        let lambda = 0.5 * (lo + hi);
        if !(lambda > 0.0) || lambda == lo || lambda == hi {
            break;
        }
        let report = screen(inst, lambda, ws, ScreenOptions::default())?;
        let kept = report.kept.len();
        if fewest.is_none_or(|(_, k)| kept < k) {
            fewest = Some((lambda, kept));
        }
        if kept <= budget {
            let done = budget - kept <= eps_f;
            if best.as_ref().is_none_or(|b| lambda < b.lambda) {
                best = Some(Bisection {
                    lambda,
                    report,
                    iterations: it,
                });
            }
            if done {
                break;
            }
            hi = lambda;
        } else {
            lo = lambda;
        }
        if let Some(b) = best.as_mut() {
            b.iterations = it;
        }
    }
    best.ok_or_else(|| {
        let (best_lambda, best_kept) = fewest.unwrap_or((ws.lambda0(), inst.n_cols()));
        Error::BudgetInfeasible {
            budget,
            best_lambda,
            best_kept,
        }
    })
}

fn scatter(n: usize, kept: &[usize], reduced: &[f64]) -> Vec<f64> {
    let mut w = vec![0.0; n];
    for (&k, &v) in kept.iter().zip(reduced) {
        w[k] = v;
    }
    w
}

/// Solves the problem restricted to `kept`, warm-started from `w_full`.
fn solve_reduced(
    inst: &LassoInstance,
    lambda: f64,
    kept: &[usize],
    w_full: &[f64],
    opts: &SolveOptions,
) -> Result<(Vec<f64>, SolverResult)> {
    let reduced = inst.select_features(kept);
    let warm: Vec<f64> = kept.iter().map(|&k| w_full[k]).collect();
    let ropts = SolveOptions {
        warm_w: Some(warm),
        ..opts.clone()
    };
    let res = solve_lasso(&reduced, lambda, &ropts)?.require_converged()?;
    Ok((scatter(inst.n_cols(), kept, &res.w), res))
}

/// Checks a reduced solution against the full problem. Screening is safe, so
/// a much larger full gap means a feature was wrongly discarded.
fn recertify(inst: &LassoInstance, lambda: f64, w: &[f64], res: &SolverResult, tol: f64) -> Result<f64> {
    let full_gap = duality_gap_lasso(inst, lambda, w)?;
    let allowed = 10.0 * res.duality_gap.max(tol * res.objective) + 1e-12 * res.objective;
    if full_gap > allowed {
        return Err(Error::Numerical(format!(
            "full-problem gap {full_gap:e} exceeds {allowed:e} at lambda {lambda:e}: screening discarded an active feature"
        )));
    }
    Ok(full_gap)
}

/// Solves at `lambda_d` while never handing the solver more than `budget`
/// features: each stage bisects for a penalty whose screened problem fits,
/// solves it and uses the solution as the next warm start. A stage whose
/// successor could barely move is re-solved at a tighter tolerance, which is
/// kept for the rest of the run.
pub fn solve_memory_limited(
    inst: &LassoInstance,
    lambda_d: f64,
    budget: usize,
    opts: &MemoryOptions,
) -> Result<MemorySolveResult> {
    if !(lambda_d > 0.0) || !lambda_d.is_finite() {
        return Err(Error::InvalidArgument(format!("lambda_d must be > 0, got {lambda_d}")));
    }
    if budget == 0 {
        return Err(Error::InvalidArgument("budget must be >= 1".into()));
    }
    let eps_f = opts.eps_f.unwrap_or(budget / 10);
    let n = inst.n_cols();
    let mut ws = WarmStart::default_for(inst);
    let mut w = vec![0.0; n];
    let mut stages = Vec::new();
    let mut solve = opts.solve.clone();

    for _ in 0..opts.max_stages {
        let start = Instant::now();
        let (mut lambda, mut report, steps) = if lambda_d >= ws.lambda0() {
            let r = screen(inst, lambda_d, &ws, ScreenOptions::default())?;
            (lambda_d, r, 0)
        } else {
            let b = bisect_lambda(inst, &ws, budget, eps_f)?;
            (b.lambda, b.report, b.iterations)
        };
        if lambda < lambda_d {
            lambda = lambda_d;
            report = screen(inst, lambda, &ws, ScreenOptions::default())?;
        } else if lambda > (1.0 - MIN_STAGE_PROGRESS) * ws.lambda0() && lambda > lambda_d {
            lambda = lambda_d.max(0.9 * ws.lambda0());
            report = screen(inst, lambda, &ws, ScreenOptions::default())?;
        }
        if report.kept.len() > budget {
            return Err(Error::BudgetInfeasible {
                budget,
                best_lambda: lambda,
                best_kept: report.kept.len(),
            });
        }
        let mut next = None;
        // a loose solve widens the next safe region; when the next stage
        // could barely move, re-solve tighter and keep that tolerance
        for refine in [false, true] {
            if refine {
                let slow = next
                    .as_ref()
                    .is_some_and(|n: &WarmStart| n.lambda0() > (1.0 - SLOW_STAGE_PROGRESS) * ws.lambda0());
                if !slow || solve.tol * 1e-3 < REFINE_TOL_FLOOR {
                    break;
                }
                solve.tol *= 1e-3;
            }
            let (w_new, res) = solve_reduced(inst, lambda, &report.kept, &w, &solve)?;
            let full_gap = recertify(inst, lambda, &w_new, &res, solve.tol)?;
            w = w_new;
            stages.push(StageLog {
                stage: stages.len(),
                lambda,
                kept: report.kept.len(),
                gap: res.duality_gap,
                full_gap: Some(full_gap),
                objective: res.objective,
                sweeps: res.iterations,
                coordinate_updates: res.coordinate_updates,
                bisection_steps: if refine { 0 } else { steps },
                seconds: start.elapsed().as_secs_f64(),
            });
            if lambda == lambda_d {
                return Ok(MemorySolveResult { w, stages });
            }
            next = Some(WarmStart::from_solution(inst, lambda, w.clone())?);
        }
        ws = next.expect("solved at least once");
    }
    Err(Error::Numerical(format!(
        "memory-limited solve did not reach lambda_d within {} stages",
        opts.max_stages
    )))
}

/// Solves along `path`, screening each point with the previous solution as
/// warm start and re-checking each reduced solution on the full problem.
pub fn solve_path_recursive(inst: &LassoInstance, path: &PathSpec, opts: &PathOptions) -> Result<PathResult> {
    let n = inst.n_cols();
    let mut ws = WarmStart::default_for(inst);
    let mut w = vec![0.0; n];
    let all: Vec<usize> = (0..n).collect();
    let mut records = Vec::with_capacity(path.lambdas().len());

    for (stage, &lambda) in path.lambdas().iter().enumerate() {
        let start = Instant::now();
        let kept = if opts.screening {
            screen(inst, lambda, &ws, ScreenOptions::default())?.kept
        } else {
            all.clone()
        };
        let (w_new, res) = solve_reduced(inst, lambda, &kept, &w, &opts.solve)?;
        let full_gap = if opts.recertify && opts.screening {
            Some(recertify(inst, lambda, &w_new, &res, opts.solve.tol)?)
        } else {
            None
        };
        w = w_new;
        records.push(PathRecord {
            log: StageLog {
                stage,
                lambda,
                kept: kept.len(),
                gap: res.duality_gap,
                full_gap,
                objective: res.objective,
                sweeps: res.iterations,
                coordinate_updates: res.coordinate_updates,
                bisection_steps: 0,
                seconds: start.elapsed().as_secs_f64(),
            },
            w: w.clone(),
        });
        if opts.screening {
            ws = WarmStart::from_solution(inst, lambda, w.clone())?;
        }
    }
    Ok(PathResult { records })
}
