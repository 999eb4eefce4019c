//! Safe feature elimination for the LASSO.
//!
//! The dual optimum is localized in the intersection of the ball
//! `{θ : G(θ) ≥ γ}` (γ from dual scaling of a known dual point) and the
//! half-space `{θ : g^T(θ − θ0) ≥ 0}` given by optimality of θ0 at λ0.
//! Feature k is dropped when `|θ^T x_k| < λ` over that whole set.
//!
//! A warm start from a solver is only approximately optimal. If `(w0, θ0)`
//! has gap `δ` at λ0, the exact optimum lies within `(2δ)^{1/2}` of θ0, and
//! the half-space is pushed back far enough to contain every plane that
//! optimum could induce.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::instance::{LassoInstance, LassoVariant, WarmStart};
use crate::matrix::{dot, norm_inf, norm_sq};
use crate::report::ScreeningReport;

/// Radicands within this fraction of their scale below zero are treated as round-off.
const RADICAND_TOL: f64 = 1e-10;

/// `‖X^T y‖∞`: the smallest penalty at which `w = 0` is optimal.
pub fn lambda_max(inst: &LassoInstance) -> f64 {
    norm_inf(&inst.design().tr_mat_vec(inst.y()))
}

/// Dual-scaling lower bound on the optimal value at `lambda`:
///
/// `γ = β0²/(2α0) · (1 − (1 − (α0/β0)(λ/λ0))₊²)`
///
/// with `α0 = ‖θ0‖²`, `β0 = |y^T θ0|`. Degenerate `α0 = 0` or `β0 = 0` give 0.
pub fn gamma_bound(alpha0: f64, beta0: f64, lambda: f64, lambda0: f64) -> f64 {
    if alpha0 <= 0.0 || beta0 <= 0.0 {
        return 0.0;
    }
    let t = (1.0 - (alpha0 / beta0) * (lambda / lambda0)).max(0.0);
    beta0 * beta0 / (2.0 * alpha0) * (1.0 - t * t)
}

/// Per-feature inner products the closed form needs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ColumnStats {
    /// `θ0^T x`
    pub theta0_dot: f64,
    /// `y^T x`
    pub y_dot: f64,
    /// `‖x‖²`
    pub norm_sq: f64,
    /// `‖x − (g^T x/‖g‖²) g‖²` taken from the vectors. When absent it is
    /// derived from the inner products, which loses accuracy for x nearly parallel to g.
    pub perp_sq: Option<f64>,
}

impl ColumnStats {
    pub fn from_dense(x: &[f64], theta0: &[f64], y: &[f64]) -> Self {
        let g: Vec<f64> = theta0.iter().zip(y).map(|(t, y)| t + y).collect();
        Self {
            theta0_dot: dot(x, theta0),
            y_dot: dot(x, y),
            norm_sq: norm_sq(x),
            perp_sq: perp_sq(x, &g),
        }
    }

    /// `g^T x` with `g = θ0 + y`.
    pub fn g_dot(&self) -> f64 {
        self.theta0_dot + self.y_dot
    }

    /// Stats of `−x`.
    pub fn negated(&self) -> Self {
        Self {
            theta0_dot: -self.theta0_dot,
            y_dot: -self.y_dot,
            norm_sq: self.norm_sq,
            perp_sq: self.perp_sq,
        }
    }
}

/// Scalars of the dual localization set for one `(warm start, λ)` pair.
#[derive(Debug, Clone, PartialEq)]
pub struct LassoDualGeometry {
    pub gamma: f64,
    pub alpha0: f64,
    pub beta0: f64,
    pub norm_y_sq: f64,
    /// `‖g‖²`, `g = θ0 + y`.
    pub g_norm_sq: f64,
    /// `D(γ) = (‖y‖² − 2γ)^{1/2}`
    pub d: f64,
    /// Distance from the ball center `−y` to the cutting plane, along `g`.
    /// Equals `‖g‖` for an exactly optimal warm start.
    pub offset: f64,
    /// `D̃(γ) = (D² − offset²)^{1/2}`
    pub d_tilde: f64,
    /// False when `λ > λ0`: the half-space is only valid for penalties below λ0.
    pub use_halfspace: bool,
}

impl LassoDualGeometry {
    /// `gap0` is the primal-dual gap of the warm start at `lambda0` (0 when exact).
    pub fn new(theta0: &[f64], y: &[f64], lambda: f64, lambda0: f64, gap0: f64) -> Result<Self> {
        if theta0.len() != y.len() {
            return Err(Error::Dimension("theta0 and y lengths differ".into()));
        }
        if !(lambda > 0.0) || !(lambda0 > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "penalties must be positive (lambda {lambda}, lambda0 {lambda0})"
            )));
        }
        let alpha0 = norm_sq(theta0);
        let beta0 = dot(y, theta0).abs();
        let norm_y_sq = norm_sq(y);
        let gamma = gamma_bound(alpha0, beta0, lambda, lambda0);
        let g: Vec<f64> = theta0.iter().zip(y).map(|(t, y)| t + y).collect();
        let g_norm_sq = norm_sq(&g);

        let d_sq = norm_y_sq - 2.0 * gamma;
        let d = checked_sqrt(d_sq, norm_y_sq, "D(γ)²")?;
        let g_norm = g_norm_sq.sqrt();
        let offset = if g_norm > 0.0 {
            let radius = (2.0 * gap0.max(0.0)).sqrt();
            g_norm - radius * (d + 2.0 * g_norm) / g_norm
        } else {
            0.0
        };
        let use_halfspace = lambda <= lambda0 && g_norm > 0.0 && offset > -d;
        let d_tilde = if use_halfspace {
            checked_sqrt(d_sq - offset * offset, norm_y_sq, "D̃(γ)²")?
        } else {
            0.0
        };
        Ok(Self {
            gamma,
            alpha0,
            beta0,
            norm_y_sq,
            g_norm_sq,
            d,
            offset,
            d_tilde,
            use_halfspace,
        })
    }

    /// `P(γ, x) = max { θ^T x : G(θ) ≥ γ, g^T(θ − θ0) ≥ 0 }` in closed form.
    pub fn p_value(&self, s: &ColumnStats) -> Result<f64> {
        let norm = s.norm_sq.max(0.0).sqrt();
        let ball_only = -s.y_dot + norm * self.d;
        if !self.use_halfspace {
            return Ok(ball_only);
        }
        let g_dot = s.g_dot();
        let g_norm = self.g_norm_sq.sqrt();
        if self.offset * g_norm * norm >= self.d * g_dot {
            let psi_sq = s.perp_sq.unwrap_or(s.norm_sq - g_dot * g_dot / self.g_norm_sq);
            let psi = checked_sqrt(psi_sq, s.norm_sq, "Ψ²")?;
            // the plane's closest point to −y, dotted with x
            let center_dot = if self.offset == g_norm {
                s.theta0_dot
            } else {
                -s.y_dot + self.offset * g_dot / g_norm
            };
            Ok(center_dot + psi * self.d_tilde)
        } else {
            Ok(ball_only)
        }
    }

    /// `max(P(γ, x), P(γ, −x))`.
    pub fn test_value(&self, s: &ColumnStats) -> Result<f64> {
        Ok(self.p_value(s)?.max(self.p_value(&s.negated())?))
    }
}

/// Squared distance from `x` to the line through `g`; `None` for `g = 0`.
fn perp_sq(x: &[f64], g: &[f64]) -> Option<f64> {
    let gg = norm_sq(g);
    if !(gg > 0.0) {
        return None;
    }
    let c = dot(x, g) / gg;
    Some(x.iter().zip(g).map(|(a, b)| (a - c * b).powi(2)).sum())
}

/// Below this fraction of `‖x‖²`, `Ψ²` is recomputed from the vectors.
const PERP_RECOMPUTE: f64 = 1e-6;

fn checked_sqrt(v: f64, scale: f64, what: &str) -> Result<f64> {
    if v >= 0.0 {
        Ok(v.sqrt())
    } else if v >= -RADICAND_TOL * scale.max(f64::MIN_POSITIVE) {
        Ok(0.0)
    } else {
        Err(Error::InvalidGeometry(format!(
            "{what} = {v:e} is negative beyond round-off (scale {scale:e})"
        )))
    }
}

/// Default-test fraction `ρ_k`: with `w0 = 0`, feature k is eliminated iff `λ > ρ_k λmax`.
pub fn rho_default(inst: &LassoInstance, k: usize) -> Result<f64> {
    if k >= inst.n_cols() {
        return Err(Error::IndexOutOfRange { index: k, len: inst.n_cols() });
    }
    Ok(rho_from_parts(
        norm_sq(inst.y()).sqrt(),
        inst.design().col_norm_sq(k).sqrt(),
        inst.design().col_dot(k, inst.y()).abs(),
        lambda_max(inst),
    ))
}

/// `ρ_k` for every feature.
pub fn rho_profile(inst: &LassoInstance) -> Vec<f64> {
    let y_norm = norm_sq(inst.y()).sqrt();
    let xty = inst.design().tr_mat_vec(inst.y());
    let lmax = norm_inf(&xty);
    xty.iter()
        .enumerate()
        .map(|(k, c)| rho_from_parts(y_norm, inst.design().col_norm_sq(k).sqrt(), c.abs(), lmax))
        .collect()
}

fn rho_from_parts(y_norm: f64, x_norm: f64, abs_corr: f64, lambda_max: f64) -> f64 {
    if lambda_max <= 0.0 {
        return 0.0;
    }
    let yx = y_norm * x_norm;
    (yx + abs_corr) / (yx + lambda_max)
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ScreenOptions {
    /// Keep the per-feature test values in the report.
    pub certificates: bool,
}

/// Runs the test on every feature of a plain-variant instance.
///
/// Callers apply [`LassoInstance::center`] or [`LassoInstance::elasticize`]
/// first for the other variants.
pub fn screen(
    inst: &LassoInstance,
    lambda: f64,
    ws: &WarmStart,
    opts: ScreenOptions,
) -> Result<ScreeningReport> {
    if inst.variant() != LassoVariant::Plain {
        return Err(Error::InvalidArgument(
            "screen expects a plain instance; center or elasticize first".into(),
        ));
    }
    if ws.theta0().len() != inst.n_rows() || ws.w0().len() != inst.n_cols() {
        return Err(Error::Dimension("warm start does not match the instance".into()));
    }
    let geom = LassoDualGeometry::new(ws.theta0(), inst.y(), lambda, ws.lambda0(), ws.gap0())?;
    let design = inst.design();
    let xt_theta = design.tr_mat_vec(ws.theta0());
    let xt_y = design.tr_mat_vec(inst.y());
    let g: Vec<f64> = ws.theta0().iter().zip(inst.y()).map(|(t, y)| t + y).collect();

    let tests = (0..inst.n_cols())
        .into_par_iter()
        .map(|k| {
            let mut s = ColumnStats {
                theta0_dot: xt_theta[k],
                y_dot: xt_y[k],
                norm_sq: design.col_norm_sq(k),
                perp_sq: None,
            };
            if geom.use_halfspace {
                let gd = s.g_dot();
                if s.norm_sq - gd * gd / geom.g_norm_sq < PERP_RECOMPUTE * s.norm_sq {
                    s.perp_sq = perp_sq(&design.col_dense(k), &g);
                }
            }
            geom.test_value(&s)
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(ScreeningReport::from_tests(lambda, geom.gamma, tests, opts.certificates))
}
