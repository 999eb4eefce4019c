//! Safe feature elimination for ℓ1-penalized logistic regression.
//!
//! `P_log(γ, x) = min_{μ>0, ν} −γμ + μ Σ f_log((x_i + y_i ν)/μ)` has no
//! closed form; it is evaluated by a golden-section search over ν wrapped
//! around a bracketed search over μ. Every evaluated `(μ, ν)` is an upper
//! bound on `P_log`, so an inexact search only makes the test more conservative.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::instance::LogRegInstance;
use crate::matrix::{norm_inf, ColumnView};
use crate::report::ScreeningReport;

const LN2: f64 = std::f64::consts::LN_2;
const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Relative bracket width at which the μ search stops.
const MU_TOL: f64 = 1e-10;
const MU_MAX_ITERS: usize = 200;
const NU_TOL: f64 = 1e-9;

/// `log(1 + e^{−x})`, stable for large `|x|`.
pub fn flog(x: f64) -> f64 {
    if x >= 0.0 {
        (-x).exp().ln_1p()
    } else {
        -x + x.exp().ln_1p()
    }
}

/// Conjugate of [`flog`]: `(−t) log(−t) + (t+1) log(t+1)` on `[−1, 0]`,
/// +∞ elsewhere.
pub fn flog_conj(t: f64) -> f64 {
    if !(-1.0..=0.0).contains(&t) {
        return f64::INFINITY;
    }
    xlogx(-t) + xlogx(1.0 + t)
}

fn xlogx(a: f64) -> f64 {
    if a <= 0.0 {
        0.0
    } else {
        a * a.ln()
    }
}

/// A feasible dual point for the logistic problem, and the penalty at which
/// it becomes dual feasible.
#[derive(Debug, Clone, PartialEq)]
pub struct LogRegDualPoint {
    /// Entries in `[−1, 0]`, orthogonal to the labels.
    pub theta0: Vec<f64>,
    /// `‖X^T θ0‖∞` over screening columns `x_k = y ∘ z_k`.
    pub lambda0: f64,
    /// Intercept at which `θ0` was generated.
    pub v0: f64,
    /// True for the closed-form `w0 = 0` point, which is dual optimal at `λ0`.
    pub is_default: bool,
}

/// Dual point of `w0 = 0`: `θ0(i) = −m₋/m` on positives, `−m₊/m` on negatives.
pub fn default_dual_point(inst: &LogRegInstance) -> LogRegDualPoint {
    let data = inst.data();
    let (mp, mm) = (data.m_plus() as f64, data.m_minus() as f64);
    let m = mp + mm;
    let theta0: Vec<f64> = data
        .labels()
        .iter()
        .map(|&y| if y > 0.0 { -mm / m } else { -mp / m })
        .collect();
    let lambda0 = norm_inf(&data.signed().tr_mat_vec(&theta0));
    LogRegDualPoint {
        theta0,
        lambda0,
        v0: (mp / mm).ln(),
        is_default: true,
    }
}

/// Dual point generated by a primal weight vector `w0`: the intercept is
/// re-optimized by bisection so that `y^T θ0 = 0`, then
/// `θ0(i) = −1/(1 + exp(y_i z_i^T w0 + y_i v0))`.
pub fn dual_point_from_primal(inst: &LogRegInstance, w0: &[f64]) -> Result<LogRegDualPoint> {
    if w0.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidArgument("w0 has non-finite entries".into()));
    }
    let data = inst.data();
    let base = data.signed().mat_vec(w0)?;
    let v0 = optimal_intercept(&base, data.labels());
    let theta0 = logistic_dual(&base, data.labels(), v0);
    let lambda0 = norm_inf(&data.signed().tr_mat_vec(&theta0));
    Ok(LogRegDualPoint {
        theta0,
        lambda0,
        v0,
        is_default: false,
    })
}

/// `θ(i) = −1/(1 + exp(s_i + y_i v))` for base margins `s`.
pub(crate) fn logistic_dual(base: &[f64], labels: &[f64], v: f64) -> Vec<f64> {
    base.iter()
        .zip(labels)
        .map(|(s, y)| -1.0 / (1.0 + (s + y * v).exp()))
        .collect()
}

/// Intercept minimizing `Σ f_log(s_i + y_i v)`: root of the increasing map
/// `v ↦ Σ y_i θ_i(v)`.
pub(crate) fn optimal_intercept(base: &[f64], labels: &[f64]) -> f64 {
    let deriv = |v: f64| -> f64 {
        base.iter()
            .zip(labels)
            .map(|(s, y)| -y / (1.0 + (s + y * v).exp()))
            .sum()
    };
    let (mut lo, mut hi) = (-1.0, 1.0);
    while deriv(lo) > 0.0 && lo > -1e300 {
        lo *= 2.0;
    }
    while deriv(hi) < 0.0 && hi < 1e300 {
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let d = deriv(mid);
        if d.abs() <= 1e-10 * labels.len() as f64 * 1e-2 || mid == lo || mid == hi {
            return mid;
        }
        if d > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// `γ(λ) = −m₊ f*(−(λ/λ0)(m₋/m)) − m₋ f*(−(λ/λ0)(m₊/m))`: the dual-scaling
/// bound for the default dual point.
pub fn gamma_lambda(lambda: f64, lambda0: f64, m_plus: usize, m_minus: usize) -> f64 {
    let s = (lambda / lambda0).min(1.0);
    let (mp, mm) = (m_plus as f64, m_minus as f64);
    let m = mp + mm;
    -mp * flog_conj(-s * mm / m) - mm * flog_conj(-s * mp / m)
}

/// `max_{0 ≤ s ≤ λ/λ0} −Σ f*(s θ0_i)` for an arbitrary dual point.
pub fn gamma_scaled(dp: &LogRegDualPoint, lambda: f64) -> f64 {
    let peak = norm_inf(&dp.theta0);
    let s_dom = if peak > 0.0 { 1.0 / peak } else { f64::INFINITY };
    let s_hi = (lambda / dp.lambda0).min(s_dom);
    let value = |s: f64| -> f64 { -dp.theta0.iter().map(|t| flog_conj(s * t)).sum::<f64>() };
    // concave in s: golden section for the max
    let (mut a, mut b) = (0.0, s_hi);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (value(c), value(d));
    for _ in 0..200 {
        if (b - a) <= 1e-13 * s_hi.max(1e-300) {
            break;
        }
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = value(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = value(d);
        }
    }
    value(s_hi).max(fc).max(fd).max(0.0)
}

/// A logistic test direction `c(ν) = x + ν y`, stored sparsely: the nonzero
/// entries with their labels plus the count of zero rows in each class.
#[derive(Debug, Clone, PartialEq)]
pub struct LogisticDirection {
    entries: Vec<(f64, f64)>,
    zeros_plus: usize,
    zeros_minus: usize,
}

impl LogisticDirection {
    pub fn from_column(col: ColumnView<'_>, labels: &[f64], sign: f64) -> Self {
        let m_plus = labels.iter().filter(|l| **l > 0.0).count();
        let mut entries = Vec::with_capacity(col.nnz());
        let mut nz_plus = 0;
        for (i, x) in col.iter() {
            if labels[i] > 0.0 {
                nz_plus += 1;
            }
            entries.push((sign * x, labels[i]));
        }
        let nz_minus = entries.len() - nz_plus;
        Self {
            entries,
            zeros_plus: m_plus - nz_plus,
            zeros_minus: labels.len() - m_plus - nz_minus,
        }
    }

    /// Dense `c` with `ν` fixed at zero (labels are irrelevant then).
    pub fn from_dense(c: &[f64]) -> Self {
        Self {
            entries: c.iter().filter(|v| **v != 0.0).map(|&v| (v, 1.0)).collect(),
            zeros_plus: c.iter().filter(|v| **v == 0.0).count(),
            zeros_minus: 0,
        }
    }

    pub fn m(&self) -> usize {
        self.entries.len() + self.zeros_plus + self.zeros_minus
    }

    fn max_abs(&self) -> f64 {
        self.entries.iter().fold(0.0, |m, (x, _)| m.max(x.abs()))
    }

    /// `Σ (c_i)₊` and `Σ (−c_i)₊` at a given ν.
    fn pos_neg_sums(&self, nu: f64) -> (f64, f64) {
        let mut pos = self.zeros_plus as f64 * nu.max(0.0) + self.zeros_minus as f64 * (-nu).max(0.0);
        let mut neg = self.zeros_plus as f64 * (-nu).max(0.0) + self.zeros_minus as f64 * nu.max(0.0);
        for &(x, y) in &self.entries {
            let c = x + y * nu;
            pos += c.max(0.0);
            neg += (-c).max(0.0);
        }
        (pos, neg)
    }

    /// `F(μ, ν) = −γμ + μ Σ f_log(c_i(ν)/μ)` for `μ > 0`.
    pub fn objective(&self, gamma: f64, mu: f64, nu: f64) -> f64 {
        let mut s = self.zeros_plus as f64 * flog(nu / mu) + self.zeros_minus as f64 * flog(-nu / mu);
        for &(x, y) in &self.entries {
            s += flog((x + y * nu) / mu);
        }
        mu * (s - gamma)
    }

    /// Value and minimizer of `min_{μ>0} F(μ, ν)` at fixed ν.
    fn min_over_mu(&self, gamma: f64, nu: f64) -> Result<(f64, f64)> {
        let kappa = self.m() as f64 * LN2 - gamma;
        if !(kappa > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "gamma {gamma} must be below m log 2 = {}",
                self.m() as f64 * LN2
            )));
        }
        let (pos, neg) = self.pos_neg_sums(nu);
        // F(μ) → Σ(−c)₊ as μ → 0⁺
        let f0 = neg;
        // f_log(t) ≥ log 2 − t/2 gives F(μ) ≥ κμ − ½Σc, so F ≥ f0 beyond mu_u
        let mu_u = (0.5 * pos + f0) / kappa;
        if mu_u == 0.0 {
            return Ok((0.0, 0.0));
        }
        let f = |mu: f64| if mu <= 0.0 { f0 } else { self.objective(gamma, mu, nu) };
        let (mut a, mut b) = (0.0, mu_u);
        let mut c = b - INV_PHI * (b - a);
        let mut d = a + INV_PHI * (b - a);
        let (mut fc, mut fd) = (f(c), f(d));
        let mut converged = false;
        for _ in 0..MU_MAX_ITERS {
            if b - a <= MU_TOL * mu_u {
                converged = true;
                break;
            }
            if fc <= fd {
                b = d;
                d = c;
                fd = fc;
                c = b - INV_PHI * (b - a);
                fc = f(c);
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + INV_PHI * (b - a);
                fd = f(d);
            }
        }
        if !converged {
            return Err(Error::Numerical("mu search did not converge".into()));
        }
        let (mu, val) = if fc <= fd { (c, fc) } else { (d, fd) };
        if val < f0 {
            Ok((val, mu))
        } else {
            Ok((f0, 0.0))
        }
    }

    /// Upper bound on `P_log(γ, x)` from the nested ν/μ search.
    pub fn p_log(&self, gamma: f64) -> Result<f64> {
        let at_zero = self.min_over_mu(gamma, 0.0)?.0;
        let h = |nu: f64| self.min_over_mu(gamma, nu).map(|r| r.0);
        let mut bound = 1.0 + self.max_abs();
        let mut best = at_zero;
        for _ in 0..40 {
            let (a0, b0) = (-bound, bound);
            let (mut a, mut b) = (a0, b0);
            let mut c = b - INV_PHI * (b - a);
            let mut d = a + INV_PHI * (b - a);
            let (mut fc, mut fd) = (h(c)?, h(d)?);
            while b - a > NU_TOL * bound {
                if fc <= fd {
                    b = d;
                    d = c;
                    fd = fc;
                    c = b - INV_PHI * (b - a);
                    fc = h(c)?;
                } else {
                    a = c;
                    c = d;
                    fc = fd;
                    d = a + INV_PHI * (b - a);
                    fd = h(d)?;
                }
            }
            let (nu, val) = if fc <= fd { (c, fc) } else { (d, fd) };
            best = best.min(val);
            let margin = 1e-3 * bound;
            if nu - a0 > margin && b0 - nu > margin {
                break;
            }
            bound *= 4.0;
        }
        Ok(best)
    }
}

/// `min_{μ>0} −γμ + μ Σ f_log(c_i/μ)` (ν fixed at zero).
pub fn p_log_fixed_nu(gamma: f64, c: &[f64]) -> Result<f64> {
    LogisticDirection::from_dense(c)
        .min_over_mu(gamma, 0.0)
        .map(|r| r.0)
}

/// `P_log(γ, x)` with ν optimized: never above [`p_log_fixed_nu`].
pub fn p_log(gamma: f64, x: &[f64], labels: &[f64]) -> Result<f64> {
    if x.len() != labels.len() {
        return Err(Error::Dimension("x and labels lengths differ".into()));
    }
    let m_plus = labels.iter().filter(|l| **l > 0.0).count();
    let mut zeros_plus = 0;
    let mut zeros_minus = 0;
    let mut entries = Vec::new();
    for (&xi, &yi) in x.iter().zip(labels) {
        if xi != 0.0 {
            entries.push((xi, yi));
        } else if yi > 0.0 {
            zeros_plus += 1;
        } else {
            zeros_minus += 1;
        }
    }
    debug_assert!(zeros_plus <= m_plus);
    LogisticDirection {
        entries,
        zeros_plus,
        zeros_minus,
    }
    .p_log(gamma)
}

#[derive(Debug, Clone, Copy, Default)]
pub struct LogRegScreenOptions {
    pub certificates: bool,
}

/// Screens with the default (`w0 = 0`) dual point.
pub fn screen_logreg(
    inst: &LogRegInstance,
    lambda: f64,
    opts: LogRegScreenOptions,
) -> Result<ScreeningReport> {
    let dp = default_dual_point(inst);
    screen_logreg_with(inst, lambda, &dp, opts)
}

/// Screens with an explicit dual point.
pub fn screen_logreg_with(
    inst: &LogRegInstance,
    lambda: f64,
    dp: &LogRegDualPoint,
    opts: LogRegScreenOptions,
) -> Result<ScreeningReport> {
    if !(lambda > 0.0) {
        return Err(Error::InvalidArgument(format!("lambda must be > 0, got {lambda}")));
    }
    let data = inst.data();
    let n = inst.n_cols();
    let m = data.n_rows() as f64;
    if dp.theta0.len() != data.n_rows() {
        return Err(Error::Dimension("dual point length != n_rows".into()));
    }
    let gamma_cap = m * LN2;
    let raw_gamma = if dp.is_default {
        if lambda > dp.lambda0 {
            // θ0 is dual optimal for every λ ≥ λ0, so w★ = 0
            let gamma = gamma_lambda(dp.lambda0, dp.lambda0, data.m_plus(), data.m_minus());
            return Ok(ScreeningReport::all_eliminated(lambda, gamma, n));
        }
        gamma_lambda(lambda, dp.lambda0, data.m_plus(), data.m_minus())
    } else {
        gamma_scaled(dp, lambda)
    };
    let gamma = (raw_gamma - 1e-12 * gamma_cap).clamp(0.0, gamma_cap * (1.0 - 1e-12));

    let x = data.signed();
    let tests = (0..n)
        .into_par_iter()
        .map(|k| {
            let up = LogisticDirection::from_column(x.col(k), data.labels(), 1.0).p_log(gamma)?;
            let down = LogisticDirection::from_column(x.col(k), data.labels(), -1.0).p_log(gamma)?;
            Ok(up.max(down))
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(ScreeningReport::from_tests(lambda, gamma, tests, opts.certificates))
}
