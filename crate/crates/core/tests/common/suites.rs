//! Randomized oracle comparisons, shared by the `oracles` tests and the acceptance run.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use safescreen::safe_lasso::{self, LassoDualGeometry};
use safescreen::safe_logreg::{p_log, p_log_fixed_nu};
use safescreen::safe_svm::{breakpoint_values, f_interp, g_breakpoint, p_hinge_neg, phi_pair, ClassSplitVector};
use safescreen::solvers::{solve_lasso, SolveOptions};
use safescreen::WarmStart;

use super::*;

#[derive(Debug, Default)]
pub struct Tally {
    pub checked: usize,
    pub failed: usize,
    pub first_failure: Option<String>,
}

impl Tally {
    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(what());
            }
        }
    }

    pub fn summary(&self) -> String {
        match &self.first_failure {
            None => format!("{} inputs, 0 mismatches", self.checked),
            Some(f) => format!("{} inputs, {} mismatches, first: {f}", self.checked, self.failed),
        }
    }
}

fn small_vec(r: &mut ChaCha8Rng, lo: usize, hi: usize) -> Vec<f64> {
    let p = r.gen_range(lo..=hi);
    (0..p)
        .map(|_| if r.gen::<f64>() < 0.15 { 0.0 } else { 2.0 * normal(r) })
        .collect()
}

fn abs_sum(v: &[f64]) -> f64 {
    v.iter().map(|x| x.abs()).sum()
}

pub fn f_interp_vs_lp(seed: u64, trials: usize) -> Tally {
    let mut r = rng(seed);
    let mut t = Tally::default();
    for _ in 0..trials {
        let x = sorted_desc(small_vec(&mut r, 1, 9));
        let p = x.len() as f64;
        let h = if r.gen::<f64>() < 0.3 { r.gen_range(0..=x.len()) as f64 } else { r.gen::<f64>() * p };
        let (got, want) = (f_interp(h, &x), lp_top_sum(h, &x));
        t.record(close(got, want, 1e-12, abs_sum(&x)), || format!("h={h} x={x:?}: {got} vs {want}"));
    }
    t
}

pub fn phi_pair_vs_kinks(seed: u64, trials: usize) -> Tally {
    let mut r = rng(seed);
    let mut t = Tally::default();
    for _ in 0..trials {
        let (plus, minus) = (small_vec(&mut r, 1, 7), small_vec(&mut r, 1, 7));
        let split = ClassSplitVector::new(plus.clone(), minus.clone()).unwrap();
        let (got, want) = (phi_pair(&split), phi_pair_kinks(&plus, &minus));
        let scale = abs_sum(&plus) + abs_sum(&minus);
        t.record(close(got, want, 1e-12, scale), || format!("{plus:?} {minus:?}: {got} vs {want}"));
    }
    t
}

pub fn p_hinge_vs_enumeration(seed: u64, trials: usize) -> Tally {
    let mut r = rng(seed);
    let mut t = Tally::default();
    for _ in 0..trials {
        let (plus, minus) = (small_vec(&mut r, 1, 5), small_vec(&mut r, 1, 5));
        let split = ClassSplitVector::new(plus.clone(), minus.clone()).unwrap();
        let cap = split.m_under();
        let gamma = if r.gen::<f64>() < 0.2 {
            2.0 * r.gen_range(0..=cap) as f64
        } else {
            2.0 * cap as f64 * r.gen::<f64>()
        };
        let (got, want) = (p_hinge_neg(gamma, &split), p_hinge_enum(gamma, &plus, &minus));
        let scale = abs_sum(&plus) + abs_sum(&minus);
        t.record(close(got, want, 1e-10, scale), || format!("γ={gamma} {plus:?} {minus:?}: {got} vs {want}"));
    }
    t
}

pub fn g_breakpoint_vs_kinks(seed: u64, trials: usize) -> Tally {
    let mut r = rng(seed);
    let mut t = Tally::default();
    for _ in 0..trials {
        let z = small_vec(&mut r, 1, 10);
        let (got, want) = (g_breakpoint(&z), g_kinks(&z));
        let scale = z.len() as f64 + abs_sum(&z);
        let ok = close(got, want, 1e-12, scale) && got <= g_grid(&z, 2000) + 1e-12 * scale;
        t.record(ok, || format!("{z:?}: {got} vs {want}"));
        let zs = sorted_desc(z);
        for (j, v) in breakpoint_values(&zs) {
            let want = v_direct(&zs, j);
            let scale = j as f64 + abs_sum(&zs);
            t.record(close(v, want, 1e-12, scale), || format!("V_{j} {zs:?}: {v} vs {want}"));
        }
    }
    t
}

/// Compares `p_value` on both signs of every column of `trials` random
/// small instances, with default and (exact or loose) warm starts and λ on
/// both sides of λ0.
pub fn lasso_p_value_vs_lagrangian(seed: u64, trials: usize) -> Tally {
    let mut r = rng(seed);
    let mut t = Tally::default();
    let mut instances = 0;
    let mut round = 0;
    while instances < trials {
        round += 1;
        let (m, n) = (r.gen_range(2..=8), r.gen_range(1..=6));
        let inst = random_lasso(&mut r, m, n, if round % 2 == 0 { 1.0 } else { 0.6 });
        let lmax = safe_lasso::lambda_max(&inst);
        if lmax <= 0.0 {
            continue;
        }
        let ws = if r.gen::<f64>() < 0.25 {
            WarmStart::default_for(&inst)
        } else {
            let l0 = lmax * r.gen_range(0.1..0.95);
            let tol = if r.gen::<bool>() { 1e-12 } else { 1e-3 };
            let w0 = solve_lasso(&inst, l0, &SolveOptions::with_tol(tol)).unwrap().w;
            WarmStart::from_solution(&inst, l0, w0).unwrap()
        };
        let lambda = ws.lambda0() * r.gen_range(0.05..1.2);
        let Ok(geom) = LassoDualGeometry::new(ws.theta0(), inst.y(), lambda, ws.lambda0(), ws.gap0()) else {
            continue;
        };
        instances += 1;
        for k in 0..n {
            let col = inst.design().col_dense(k);
            for sign in [1.0, -1.0] {
                let x: Vec<f64> = col.iter().map(|v| sign * v).collect();
                let got = geom.p_value(&column_stats(&x, ws.theta0(), inst.y())).unwrap();
                let want = lasso_p_lagrangian(geom.gamma, ws.gap0(), geom.use_halfspace, &x, inst.y(), ws.theta0());
                let scale = x.iter().map(|v| v * v).sum::<f64>().sqrt() * geom.norm_y_sq.sqrt();
                t.record(close(got, want, 1e-10, scale), || format!("k={k} λ={lambda}: {got} vs {want}"));
            }
        }
    }
    t
}

pub fn logistic_fixed_nu_vs_grid(seed: u64, trials: usize) -> Tally {
    let mut r = rng(seed);
    let mut t = Tally::default();
    for _ in 0..trials {
        let c = small_vec(&mut r, 1, 8);
        let gamma = c.len() as f64 * std::f64::consts::LN_2 * r.gen_range(0.0..0.99);
        let got = p_log_fixed_nu(gamma, &c).unwrap();
        let want = p_log_mu_grid(gamma, &c);
        t.record(close(got, want, 1e-6, abs_sum(&c)), || format!("γ={gamma} c={c:?}: {got} vs {want}"));
    }
    t
}

pub fn logistic_two_sample_vs_dual(seed: u64, trials: usize) -> Tally {
    let mut r = rng(seed);
    let mut t = Tally::default();
    for _ in 0..trials {
        let (x1, x2) = (2.0 * normal(&mut r), 2.0 * normal(&mut r));
        let gamma = 2.0 * std::f64::consts::LN_2 * r.gen_range(0.0..0.99);
        let got = p_log(gamma, &[x1, x2], &[1.0, -1.0]).unwrap();
        let want = p_log_two_samples(gamma, x1, x2);
        t.record(close(got, want, 1e-6, x1.abs() + x2.abs()), || format!("γ={gamma} x=({x1},{x2}): {got} vs {want}"));
    }
    t
}
