use nalgebra::{DMatrix, DVector};

use super::{check_lambda, soft_threshold, SolveOptions};
use crate::error::{Error, Result};
use crate::instance::LogRegInstance;
use crate::matrix::{dot, norm1, norm_inf, norm_sq};
use crate::report::SolverResult;
use crate::safe_logreg::{flog, gamma_scaled, logistic_dual, optimal_intercept, LogRegDualPoint};

const CHECK_EVERY: usize = 10;
const ROUNDING: f64 = 8.0 * f64::EPSILON;
const POLISH_MAX_SUPPORT: usize = 500;
const POLISH_STEPS: usize = 30;
const STALL: f64 = 1e-11;

struct Smooth<'a> {
    inst: &'a LogRegInstance,
}

impl Smooth<'_> {
    fn margins(&self, w: &[f64], v: f64) -> Result<Vec<f64>> {
        let data = self.inst.data();
        let mut xi = data.signed().mat_vec(w)?;
        for (x, y) in xi.iter_mut().zip(data.labels()) {
            *x += y * v;
        }
        Ok(xi)
    }

    fn value(&self, w: &[f64], v: f64) -> Result<f64> {
        Ok(self.margins(w, v)?.iter().map(|&x| flog(x)).sum())
    }

    fn value_grad(&self, w: &[f64], v: f64) -> Result<(f64, Vec<f64>, f64)> {
        let xi = self.margins(w, v)?;
        let f = xi.iter().map(|&x| flog(x)).sum();
        let theta: Vec<f64> = xi.iter().map(|&x| -1.0 / (1.0 + x.exp())).collect();
        let gw = self.inst.data().signed().tr_mat_vec(&theta);
        let gv = dot(&theta, self.inst.data().labels());
        Ok((f, gw, gv))
    }
}

/// Certified gap at `w`: the intercept is re-optimized, the induced dual
/// point is made orthogonal to the labels and scaled into the feasible set.
/// Returns `(gap, intercept, primal)`.
fn certify(inst: &LogRegInstance, lambda: f64, w: &[f64]) -> Result<(f64, f64, f64)> {
    let data = inst.data();
    let base = data.signed().mat_vec(w)?;
    let v = optimal_intercept(&base, data.labels());
    let primal: f64 = base
        .iter()
        .zip(data.labels())
        .map(|(s, y)| flog(s + y * v))
        .sum::<f64>()
        + lambda * norm1(w);
    let mut theta = logistic_dual(&base, data.labels(), v);
    let shift = dot(&theta, data.labels()) / data.n_rows() as f64;
    for (t, y) in theta.iter_mut().zip(data.labels()) {
        *t = (*t - shift * y).clamp(-1.0, 0.0);
    }
    let corr = norm_inf(&data.signed().tr_mat_vec(&theta));
    let dp = LogRegDualPoint {
        theta0: theta,
        lambda0: corr.max(f64::MIN_POSITIVE),
        v0: v,
        is_default: false,
    };
    let dual = gamma_scaled(&dp, lambda);
    Ok(((primal - dual).max(0.0), v, primal))
}

/// Newton steps on the smooth problem restricted to the support of `w` with
/// its signs frozen. Returns the iterate with the smallest stationarity
/// residual, or `None` when the support is too large, the Hessian is
/// singular or a sign would flip.
fn polish(inst: &LogRegInstance, lambda: f64, w: &[f64], v: f64) -> Result<Option<(Vec<f64>, f64)>> {
    let support: Vec<usize> = (0..w.len()).filter(|&k| w[k] != 0.0).collect();
    if support.len() > POLISH_MAX_SUPPORT {
        return Ok(None);
    }
    let data = inst.data();
    let m = data.n_rows();
    let d = support.len() + 1;
    let mut a = DMatrix::<f64>::zeros(m, d);
    for (j, &k) in support.iter().enumerate() {
        for (i, x) in data.signed().col(k).iter() {
            a[(i, j)] = x;
        }
    }
    for (i, y) in data.labels().iter().enumerate() {
        a[(i, d - 1)] = *y;
    }
    let sign: Vec<f64> = support.iter().map(|&k| w[k].signum()).collect();
    let mut u = DVector::<f64>::from_iterator(d, support.iter().map(|&k| w[k]).chain([v]));

    let residual = |u: &DVector<f64>| -> (DVector<f64>, DVector<f64>) {
        let xi = &a * u;
        let p = xi.map(|x| 1.0 / (1.0 + x.exp()));
        let mut g = -(a.transpose() * &p);
        for j in 0..d - 1 {
            g[j] += lambda * sign[j];
        }
        (g, p.map(|q| q * (1.0 - q)))
    };

    let (mut g, mut curv) = residual(&u);
    let mut best = (g.amax(), u.clone());
    for _ in 0..POLISH_STEPS {
        let mut h = a.transpose() * DMatrix::from_diagonal(&curv) * &a;
        let ridge = 1e-14 * h.diagonal().amax().max(f64::MIN_POSITIVE);
        for j in 0..d {
            h[(j, j)] += ridge;
        }
        let Some(chol) = h.cholesky() else {
            break;
        };
        let next = &u - chol.solve(&g);
        if (0..d - 1).any(|j| next[j] * sign[j] <= 0.0) || next.iter().any(|x| !x.is_finite()) {
            break;
        }
        u = next;
        (g, curv) = residual(&u);
        let r = g.amax();
        if r >= best.0 {
            break;
        }
        best = (r, u.clone());
    }
    let u = best.1;
    let mut out = vec![0.0; w.len()];
    for (j, &k) in support.iter().enumerate() {
        out[k] = u[j];
    }
    Ok(Some((out, u[d - 1])))
}

/// Certified duality gap of `w` (intercept re-optimized).
pub fn duality_gap_logreg(inst: &LogRegInstance, lambda: f64, w: &[f64]) -> Result<f64> {
    if w.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidArgument("w has non-finite entries".into()));
    }
    Ok(certify(inst, lambda, w)?.0)
}

/// Accelerated proximal gradient with backtracking and monotone restarts for
/// `Σ f_log(y_i(z_i^T w + v)) + λ‖w‖₁`. Once the objective stalls, a Newton
/// polish on the current support is tried; the returned gap is always the
/// certified one.
pub fn solve_logreg(inst: &LogRegInstance, lambda: f64, opts: &SolveOptions) -> Result<SolverResult> {
    solve_logreg_traced(inst, lambda, opts).map(|r| r.0)
}

/// As [`solve_logreg`], also returning the objective after every accepted step.
pub fn solve_logreg_traced(
    inst: &LogRegInstance,
    lambda: f64,
    opts: &SolveOptions,
) -> Result<(SolverResult, Vec<f64>)> {
    check_lambda(lambda)?;
    let n = inst.n_cols();
    opts.validate(n)?;
    let smooth = Smooth { inst };
    let mut w = opts.start(n);
    let mut v = optimal_intercept(&inst.data().signed().mat_vec(&w)?, inst.data().labels());
    let mut obj = smooth.value(&w, v)? + lambda * norm1(&w);
    let mut trace = vec![obj];

    let (mut yw, mut yv) = (w.clone(), v);
    let mut t: f64 = 1.0;
    let mut lip: f64 = 1.0;
    let (mut gap, mut v_cert, mut primal) = certify(inst, lambda, &w)?;
    let mut converged = gap <= opts.tol * primal;
    let mut iters = 0;
    let mut restarted = false;
    let mut checked_obj = obj;

    while !converged && iters < opts.max_iters {
        iters += 1;
        let (f_y, gw, gv) = smooth.value_grad(&yw, yv)?;
        if !restarted {
            lip = (lip / 2.0).max(1e-12);
        }
        let (nw, nv, f_new) = loop {
            let nw: Vec<f64> = yw
                .iter()
                .zip(&gw)
                .map(|(a, g)| soft_threshold(a - g / lip, lambda / lip))
                .collect();
            let nv = yv - gv / lip;
            let dw: Vec<f64> = nw.iter().zip(&yw).map(|(a, b)| a - b).collect();
            let dv = nv - yv;
            let f_new = smooth.value(&nw, nv)?;
            let model = f_y + dot(&gw, &dw) + gv * dv + 0.5 * lip * (norm_sq(&dw) + dv * dv);
            if f_new <= model + ROUNDING * f_y.abs() || lip > 1e300 {
                break (nw, nv, f_new);
            }
            lip *= 2.0;
        };
        let obj_new = f_new + lambda * norm1(&nw);
        // descent is judged up to rounding so the iterates keep converging
        // once objective differences fall below machine precision
        if obj_new > obj + ROUNDING * obj.abs() {
            if restarted {
                // a plain prox step failed to descend: the model is too loose
                lip *= 4.0;
                if lip > 1e200 {
                    break;
                }
            }
            // momentum overshoot: restart from the current iterate
            yw.clone_from(&w);
            yv = v;
            t = 1.0;
            restarted = true;
            continue;
        }
        restarted = false;
        let t_next = 0.5 * (1.0 + (1.0 + 4.0 * t * t).sqrt());
        let beta = (t - 1.0) / t_next;
        yw = nw.iter().zip(&w).map(|(a, b)| a + beta * (a - b)).collect();
        yv = nv + beta * (nv - v);
        w = nw;
        v = nv;
        t = t_next;
        obj = obj_new;
        trace.push(obj);

        if iters % CHECK_EVERY == 0 {
            (gap, v_cert, primal) = certify(inst, lambda, &w)?;
            converged = gap <= opts.tol * primal;
            // near the optimum the objective stops resolving progress, so
            // finish with Newton on the support and keep it if it certifies better
            if !converged && checked_obj - obj <= STALL * obj.abs() {
                if let Some((pw, pv)) = polish(inst, lambda, &w, v)? {
                    let p_obj = smooth.value(&pw, pv)? + lambda * norm1(&pw);
                    let (p_gap, p_v, p_primal) = certify(inst, lambda, &pw)?;
                    if p_gap < gap && p_obj <= obj + ROUNDING * obj.abs() {
                        w = pw;
                        v = pv;
                        yw.clone_from(&w);
                        yv = v;
                        t = 1.0;
                        obj = p_obj;
                        trace.push(obj);
                        (gap, v_cert, primal) = (p_gap, p_v, p_primal);
                        converged = gap <= opts.tol * primal;
                    }
                }
            }
            checked_obj = obj;
        }
    }
    if !converged {
        (gap, v_cert, primal) = certify(inst, lambda, &w)?;
        converged = gap <= opts.tol * primal;
    }
    Ok((
        SolverResult {
            w,
            intercept: v_cert,
            objective: primal,
            duality_gap: gap,
            iterations: iters,
            coordinate_updates: iters * n,
            converged,
        },
        trace,
    ))
}
