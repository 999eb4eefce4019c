//! Acceptance run: one PASS/FAIL line per criterion. Exits nonzero if any fails.

mod common;

use std::time::Instant;

use rand::Rng;
use rayon::prelude::*;

use common::suites::{self, Tally};
use common::*;
use safescreen::io::synth::{generate, SynthSpec};
use safescreen::matrix::{norm1, norm_inf, norm_sq};
use safescreen::safe_lasso::{self, rho_profile};
use safescreen::safe_logreg::{default_dual_point, dual_point_from_primal, screen_logreg, screen_logreg_with};
use safescreen::safe_svm::{default_reference, screen_svm};
use safescreen::solvers::{solve_hinge, solve_lasso, solve_logreg, tr_threshold, SolveOptions};
use safescreen::workflows::{solve_memory_limited, solve_path_recursive, MemoryOptions, PathOptions, PathSpec};
use safescreen::{LassoInstance, LassoVariant, LogRegInstance, ScreeningReport, SvmInstance, WarmStart};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

/// Eliminated features whose solution entry exceeds `tol`.
fn violations(report: &ScreeningReport, w: &[f64], tol: f64) -> usize {
    report.eliminated.iter().filter(|&&k| w[k].abs() > tol).count()
}

fn lasso_solve(inst: &LassoInstance, lambda: f64, tol: f64) -> Vec<f64> {
    solve_lasso(inst, lambda, &SolveOptions { tol, max_iters: 1_000_000, warm_w: None })
        .and_then(|r| r.require_converged())
        .expect("reference LASSO solve")
        .w
}

const FRACTIONS: [f64; 4] = [0.95, 0.8, 0.5, 0.3];

fn ac1() -> Outcome {
    let start = Instant::now();
    let per: Vec<(usize, usize, usize)> = (0..200u64)
        .into_par_iter()
        .map(|seed| {
            let mut r = rng(1000 + seed);
            let m = r.gen_range(10..=100);
            let n = r.gen_range(10..=200);
            let density = if seed % 2 == 0 { 1.0 } else { r.gen_range(0.05..0.3) };
            let inst = random_lasso(&mut r, m, n, density);
            let lmax = safe_lasso::lambda_max(&inst);
            let default = WarmStart::default_for(&inst);
            let mut solved: Vec<(f64, Vec<f64>)> = Vec::new();
            let (mut screens, mut bad, mut dropped) = (0, 0, 0);
            for f in std::iter::once(0.99).chain(FRACTIONS) {
                let lambda = f * lmax;
                let w = lasso_solve(&inst, lambda, 1e-9);
                if f < 0.99 {
                    let mut reports = vec![safe_lasso::screen(&inst, lambda, &default, Default::default()).unwrap()];
                    for (l0, w0) in &solved {
                        let ws = WarmStart::from_solution(&inst, *l0, w0.clone()).unwrap();
                        reports.push(safe_lasso::screen(&inst, lambda, &ws, Default::default()).unwrap());
                    }
                    for rep in &reports {
                        screens += 1;
                        bad += violations(rep, &w, 1e-6);
                        dropped += rep.eliminated.len();
                    }
                }
                solved.push((lambda, w));
            }
            (screens, bad, dropped)
        })
        .collect();
    let secs = start.elapsed().as_secs_f64();
    let screens: usize = per.iter().map(|p| p.0).sum();
    let bad: usize = per.iter().map(|p| p.1).sum();
    let dropped: usize = per.iter().map(|p| p.2).sum();
    outcome(
        bad == 0 && secs < 120.0,
        format!(
            "LASSO safety: 200 instances, {screens} screens (default + warm), {dropped} eliminations, \
             {bad} violations of |w*_k| <= 1e-6; {secs:.1} s (limit 120 s)"
        ),
    )
}

fn ac2() -> Outcome {
    let start = Instant::now();
    let svm: Vec<(usize, usize, usize)> = (0..100u64)
        .into_par_iter()
        .map(|seed| {
            let mut r = rng(2000 + seed);
            let m = r.gen_range(4..=40);
            let n = r.gen_range(1..=12);
            let z = random_matrix(&mut r, m, n, if seed % 2 == 0 { 1.0 } else { 0.5 });
            let labels = planted_labels(&mut r, &z);
            let inst = SvmInstance::new(z, labels).unwrap();
            let (l_bar, g_max) = default_reference(&inst).unwrap();
            let opts = SolveOptions::with_tol(1e-12);
            let (mut screens, mut bad, mut dropped) = (0, 0, 0);
            let mut prev: Option<(f64, f64)> = None;
            for f in FRACTIONS {
                let lambda = f * l_bar;
                let sol = solve_hinge(&inst, lambda, &opts).unwrap();
                let mut reports = vec![screen_svm(&inst, lambda, l_bar, g_max, Default::default()).unwrap()];
                if let Some((l0, g0)) = prev {
                    reports.push(screen_svm(&inst, lambda, l0, g0, Default::default()).unwrap());
                }
                for rep in &reports {
                    screens += 1;
                    bad += violations(rep, &sol.w, 1e-5);
                    dropped += rep.eliminated.len();
                }
                let lower = sol.objective - sol.duality_gap;
                if lower > 0.0 {
                    prev = Some((lambda, lower));
                }
            }
            (screens, bad, dropped)
        })
        .collect();
    let logreg: Vec<(usize, usize, usize, usize)> = (0..100u64)
        .into_par_iter()
        .map(|seed| {
            let mut r = rng(3000 + seed);
            let m = r.gen_range(6..=60);
            let n = r.gen_range(1..=30);
            let z = random_matrix(&mut r, m, n, if seed % 2 == 0 { 1.0 } else { 0.5 });
            let labels = planted_labels(&mut r, &z);
            let inst = LogRegInstance::new(z, labels).unwrap();
            let dp = default_dual_point(&inst);
            let opts = SolveOptions { tol: 1e-9, max_iters: 2_000_000, warm_w: None };
            let (mut screens, mut bad, mut dropped, mut unsolved) = (0, 0, 0, 0);
            let mut prev: Option<Vec<f64>> = None;
            for f in FRACTIONS {
                let lambda = f * dp.lambda0;
                let sol = match solve_logreg(&inst, lambda, &opts).and_then(|s| s.require_converged()) {
                    Ok(s) => s,
                    Err(_) => {
                        // no reference solution to check against
                        unsolved += 1;
                        prev = None;
                        continue;
                    }
                };
                let mut reports = vec![screen_logreg(&inst, lambda, Default::default()).unwrap()];
                if let Some(w0) = &prev {
                    let dp0 = dual_point_from_primal(&inst, w0).unwrap();
                    reports.push(screen_logreg_with(&inst, lambda, &dp0, Default::default()).unwrap());
                }
                for rep in &reports {
                    screens += 1;
                    bad += violations(rep, &sol.w, 1e-5);
                    dropped += rep.eliminated.len();
                }
                prev = Some(sol.w);
            }
            (screens, bad, dropped, unsolved)
        })
        .collect();
    let secs = start.elapsed().as_secs_f64();
    let sum = |v: &[(usize, usize, usize)]| v.iter().fold((0, 0, 0), |a, p| (a.0 + p.0, a.1 + p.1, a.2 + p.2));
    let (s1, b1, d1) = sum(&svm);
    let (s2, b2, d2) = sum(&logreg.iter().map(|p| (p.0, p.1, p.2)).collect::<Vec<_>>());
    let u2: usize = logreg.iter().map(|p| p.3).sum();
    outcome(
        b1 == 0 && b2 == 0 && u2 == 0 && secs < 300.0,
        format!(
            "hinge/logistic safety: hinge 100 instances, {s1} screens, {d1} eliminations, {b1} violations; \
             logistic 100 instances, {s2} screens, {d2} eliminations, {b2} violations (|w*_k| <= 1e-5), {u2} unconverged solves; \
             {secs:.1} s (limit 300 s)"
        ),
    )
}

fn ac3() -> Outcome {
    let start = Instant::now();
    let n = 500;
    let runs: Vec<(&str, Tally)> = vec![
        ("f_interp", suites::f_interp_vs_lp(31, n)),
        ("phi_pair", suites::phi_pair_vs_kinks(32, n)),
        ("p_hinge_neg", suites::p_hinge_vs_enumeration(33, n)),
        ("g_breakpoint", suites::g_breakpoint_vs_kinks(34, n)),
        ("lasso p_value", suites::lasso_p_value_vs_lagrangian(35, n)),
        ("logistic fixed-nu", suites::logistic_fixed_nu_vs_grid(36, n)),
        ("logistic two-sample", suites::logistic_two_sample_vs_dual(37, n)),
    ];
    let secs = start.elapsed().as_secs_f64();
    let pass = runs.iter().all(|(_, t)| t.failed == 0 && t.checked >= n) && secs < 60.0;
    let parts: Vec<String> = runs.iter().map(|(name, t)| format!("{name}: {}", t.summary())).collect();
    outcome(pass, format!("closed forms vs oracles: {}; {secs:.1} s (limit 60 s)", parts.join("; ")))
}

fn ac4() -> Outcome {
    let mismatches: usize = (0..100u64)
        .into_par_iter()
        .map(|seed| {
            let mut r = rng(4000 + seed);
            let (m, n) = (r.gen_range(5..=60), r.gen_range(5..=120));
            let inst = random_lasso(&mut r, m, n, if seed % 2 == 0 { 1.0 } else { 0.3 });
            let lmax = safe_lasso::lambda_max(&inst);
            let rho = rho_profile(&inst);
            let ws = WarmStart::default_for(&inst);
            let mut bad = 0;
            for _ in 0..5 {
                let lambda = r.gen_range(0.05..1.0) * lmax;
                let rep = safe_lasso::screen(&inst, lambda, &ws, Default::default()).unwrap();
                let want: Vec<usize> = (0..n).filter(|&k| lambda > rho[k] * lmax).collect();
                if rep.eliminated != want {
                    bad += 1;
                }
            }
            bad
        })
        .sum();
    outcome(
        mismatches == 0,
        format!("default test equals the rho_k rule: 100 instances x 5 penalties, {mismatches} set mismatches"),
    )
}

fn ac5() -> Outcome {
    let counts: Vec<[bool; 3]> = (0..20u64)
        .into_par_iter()
        .map(|seed| {
            let mut r = rng(5000 + seed);
            let (m, n) = (r.gen_range(5..=50), r.gen_range(2..=40));
            let inst = random_lasso(&mut r, m, n, 0.5);
            let lmax = safe_lasso::lambda_max(&inst);
            let lasso = safe_lasso::screen(&inst, 1.01 * lmax, &WarmStart::default_for(&inst), Default::default())
                .unwrap()
                .eliminated
                .len()
                == n;

            let z = random_matrix(&mut r, m, n, 0.7);
            let labels = random_labels(&mut r, m);
            let svm_inst = SvmInstance::new(z.clone(), labels.clone()).unwrap();
            let (l_bar, g_max) = default_reference(&svm_inst).unwrap();
            let svm = screen_svm(&svm_inst, 1.01 * l_bar, l_bar, g_max, Default::default())
                .unwrap()
                .eliminated
                .len()
                == n;

            let lr = LogRegInstance::new(z, labels).unwrap();
            let l0 = default_dual_point(&lr).lambda0;
            let logreg = screen_logreg(&lr, 1.01 * l0, Default::default()).unwrap().eliminated.len() == n;
            [lasso, svm, logreg]
        })
        .collect();
    let tally = |i: usize| counts.iter().filter(|c| c[i]).count();
    let (a, b, c) = (tally(0), tally(1), tally(2));
    outcome(
        a == 20 && b == 20 && c == 20,
        format!("all-elimination above the reference penalty: LASSO {a}/20, hinge {b}/20, logistic {c}/20"),
    )
}

fn synth_50_400() -> LassoInstance {
    let spec = SynthSpec { m: 50, n: 400, density: 1.0, support: 10, noise: 0.1, seed: 42 };
    let (x, y) = generate(&spec).unwrap();
    LassoInstance::plain(x, y).unwrap()
}

fn ac6() -> Outcome {
    let inst = synth_50_400();
    let lmax = safe_lasso::lambda_max(&inst);
    let path = PathSpec::log_spaced(lmax, 0.03 * lmax, 20).unwrap();
    let solve = SolveOptions { tol: 1e-12, max_iters: 1_000_000, warm_w: None };
    let screened = PathOptions { solve: solve.clone(), screening: true, recertify: true };
    let full = PathOptions { solve, screening: false, recertify: false };
    let (a, b) = rayon::join(
        || solve_path_recursive(&inst, &path, &screened),
        || solve_path_recursive(&inst, &path, &full),
    );
    let (a, b) = match (a, b) {
        (Ok(a), Ok(b)) => (a, b),
        (a, b) => return outcome(false, format!("path solve failed: {:?} / {:?}", a.err(), b.err())),
    };
    let diff = a
        .records
        .iter()
        .zip(&b.records)
        .map(|(p, q)| p.w.iter().zip(&q.w).map(|(u, v)| (u - v).abs()).fold(0.0, f64::max))
        .fold(0.0, f64::max);
    let (su, fu) = (a.total_coordinate_updates(), b.total_coordinate_updates());
    let (ss, fs) = (a.total_sweeps(), b.total_sweeps());
    outcome(
        diff <= 1e-6 && su < fu,
        format!(
            "path equivalence (50 x 400, 20 penalties in [0.03, 1] lambda_max): max |w_screened - w_full| = {diff:.2e} \
             (limit 1e-6); coordinate updates screened {su} < full {fu}; sweeps screened {ss}, full {fs}"
        ),
    )
}

fn ac7() -> Outcome {
    let inst = synth_50_400();
    let lmax = safe_lasso::lambda_max(&inst);
    let lambda_d = 0.3 * lmax;
    let opts = MemoryOptions {
        solve: SolveOptions { tol: 1e-12, max_iters: 1_000_000, warm_w: None },
        ..MemoryOptions::default()
    };
    let res = match solve_memory_limited(&inst, lambda_d, 40, &opts) {
        Ok(r) => r,
        Err(e) => return outcome(false, format!("memory-limited solve failed: {e}")),
    };
    let reference = lasso_solve(&inst, lambda_d, 1e-12);
    let diff = res.w.iter().zip(&reference).map(|(u, v)| (u - v).abs()).fold(0.0, f64::max);
    let max_kept = res.stages.iter().map(|s| s.kept).max().unwrap_or(0);
    let final_lambda = res.stages.last().map_or(f64::NAN, |s| s.lambda);
    let kept: Vec<String> = res.stages.iter().map(|s| s.kept.to_string()).collect();
    outcome(
        diff <= 1e-6 && max_kept <= 40 && final_lambda == lambda_d,
        format!(
            "memory-limited solve (50 x 400, M = 40, lambda_d = 0.3 lambda_max): {} stages, kept per stage [{}], \
             max |w - w_full| = {diff:.2e} (limit 1e-6)",
            res.stages.len(),
            kept.join(", ")
        ),
    )
}

fn ac8() -> Outcome {
    let per: Vec<(usize, usize, usize)> = (0..50u64)
        .into_par_iter()
        .map(|seed| {
            let mut r = rng(8000 + seed);
            let inst = random_lasso(&mut r, 30, 60, if seed % 2 == 0 { 1.0 } else { 0.4 });
            let lambda = r.gen_range(0.05..0.6) * safe_lasso::lambda_max(&inst);
            let phi = solve_lasso(&inst, lambda, &SolveOptions { tol: 1e-10, max_iters: 1_000_000, warm_w: None })
                .unwrap()
                .objective;
            let (mut checks, mut bad, mut zeroed) = (0, 0, 0);
            for eps in [1e-4, 1e-8] {
                let w = lasso_solve(&inst, lambda, eps);
                for alpha in [1.5, 2.0, 3.0, 4.0] {
                    let t = tr_threshold(&w, &inst, lambda, eps, alpha).unwrap();
                    checks += 1;
                    zeroed += w.iter().zip(&t).filter(|(a, b)| **a != 0.0 && **b == 0.0).count();
                    if inst.objective(lambda, &t).unwrap() > (1.0 + alpha * eps) * phi {
                        bad += 1;
                    }
                }
            }
            (checks, bad, zeroed)
        })
        .collect();
    let checks: usize = per.iter().map(|p| p.0).sum();
    let bad: usize = per.iter().map(|p| p.1).sum();
    let zeroed: usize = per.iter().map(|p| p.2).sum();
    outcome(
        bad == 0,
        format!(
            "thresholding bound: 50 instances x 8 (alpha, eps), {checks} checks, {zeroed} entries zeroed, \
             {bad} objectives above (1 + alpha eps) phi"
        ),
    )
}

fn ac9() -> Outcome {
    let per: Vec<(f64, f64, f64)> = (0..20u64)
        .into_par_iter()
        .map(|seed| {
            let mut r = rng(9000 + seed);
            let (m, n) = (r.gen_range(10..=50), r.gen_range(5..=60));
            let x = random_matrix(&mut r, m, n, 0.5);
            let mut y = random_vec(&mut r, m);
            let shift = 3.0 * normal(&mut r);
            y.iter_mut().for_each(|v| *v += shift);

            // intercept: centered solve, then ν = ȳ − x̄^T w
            let orig = LassoInstance::new(x.clone(), y.clone(), LassoVariant::Intercept).unwrap();
            let centered = orig.center().unwrap();
            let lambda = 0.3 * safe_lasso::lambda_max(&centered);
            let w = lasso_solve(&centered, lambda, 1e-12);
            let nu = orig.intercept_for(&w).unwrap();
            let xw = x.mat_vec(&w).unwrap();
            let resid: Vec<f64> = xw.iter().zip(&y).map(|(a, b)| a + nu - b).collect();
            // ∂/∂ν ½‖Xw + ν1 − y‖² = Σ residuals
            let grad_nu = resid.iter().sum::<f64>().abs();
            // subgradient condition for w on the original objective
            let corr = x.tr_mat_vec(&resid);
            let kkt = corr
                .iter()
                .zip(&w)
                .map(|(c, wk)| if *wk != 0.0 { (c + lambda * wk.signum()).abs() } else { (c.abs() - lambda).max(0.0) })
                .fold(0.0, f64::max)
                / lambda;

            // elastic: objective identity on random w
            let eps = r.gen_range(0.01..2.0);
            let el = LassoInstance::new(x.clone(), y.clone(), LassoVariant::Elastic(eps)).unwrap().elasticize().unwrap();
            let plain = LassoInstance::plain(x, y).unwrap();
            let mut worst = 0.0f64;
            for _ in 0..20 {
                let w = random_vec(&mut r, n);
                let direct = plain.objective(lambda, &w).unwrap() + 0.5 * eps * norm_sq(&w);
                let via = el.objective(lambda, &w).unwrap();
                worst = worst.max((via - direct).abs() / direct.abs().max(1.0));
            }
            debug_assert!(norm1(&w) >= 0.0 && norm_inf(&w) >= 0.0);
            (grad_nu, kkt, worst)
        })
        .collect();
    let grad = per.iter().map(|p| p.0).fold(0.0, f64::max);
    let kkt = per.iter().map(|p| p.1).fold(0.0, f64::max);
    let ident = per.iter().map(|p| p.2).fold(0.0, f64::max);
    outcome(
        grad <= 1e-8 && ident <= 1e-10,
        format!(
            "transforms: intercept gradient max {grad:.2e} (limit 1e-8), relative KKT residual of w {kkt:.2e}; \
             elastic objective identity max relative error {ident:.2e} (limit 1e-10), 20 instances each"
        ),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("AC1", ac1),
        ("AC2", ac2),
        ("AC3", ac3),
        ("AC4", ac4),
        ("AC5", ac5),
        ("AC6", ac6),
        ("AC7", ac7),
        ("AC8", ac8),
        ("AC9", ac9),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let t = Instant::now();
        let o = f();
        let status = if o.pass { "PASS" } else { "FAIL" };
        println!("{name} {status} {} [{:.1} s]", o.detail, t.elapsed().as_secs_f64());
        if !o.pass {
            failed += 1;
        }
    }
    println!("acceptance: {} passed, {failed} failed", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
