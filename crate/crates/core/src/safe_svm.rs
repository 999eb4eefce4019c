//! Safe feature elimination for the ℓ1-penalized hinge loss.
//!
//! Everything reduces to sorted partial sums of the two class halves of a
//! screening column `x_k = y ∘ z_k`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::instance::SvmInstance;
use crate::matrix::ColumnView;
use crate::report::ScreeningReport;

/// The entries of a column split by class, each half sorted descending.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassSplitVector {
    pub plus: Vec<f64>,
    pub minus: Vec<f64>,
}

impl ClassSplitVector {
    /// Sorts both halves descending. Both must be nonempty.
    pub fn new(mut plus: Vec<f64>, mut minus: Vec<f64>) -> Result<Self> {
        if plus.is_empty() || minus.is_empty() {
            return Err(Error::InvalidData("both classes must be nonempty".into()));
        }
        plus.sort_by(|a, b| b.total_cmp(a));
        minus.sort_by(|a, b| b.total_cmp(a));
        Ok(Self { plus, minus })
    }

    /// Splits a sparse column by label; absent rows contribute zeros.
    pub fn from_column(col: ColumnView<'_>, labels: &[f64]) -> Result<Self> {
        let m_plus = labels.iter().filter(|l| **l > 0.0).count();
        let mut plus = Vec::with_capacity(m_plus);
        let mut minus = Vec::with_capacity(labels.len() - m_plus);
        for (i, x) in col.iter() {
            if labels[i] > 0.0 {
                plus.push(x);
            } else {
                minus.push(x);
            }
        }
        plus.resize(m_plus, 0.0);
        minus.resize(labels.len() - m_plus, 0.0);
        Self::new(plus, minus)
    }

    /// Split of the negated column.
    pub fn negated(&self) -> Self {
        Self {
            plus: self.plus.iter().rev().map(|v| -v).collect(),
            minus: self.minus.iter().rev().map(|v| -v).collect(),
        }
    }

    pub fn m_under(&self) -> usize {
        self.plus.len().min(self.minus.len())
    }

    /// `x̄_j = x⁺_[j] + x⁻_[j]`, `j < m̲`; nonincreasing.
    pub fn bar(&self) -> Vec<f64> {
        self.plus.iter().zip(&self.minus).map(|(a, b)| a + b).collect()
    }
}

/// Piecewise-linear interpolation of the sum of the `h` largest entries of a
/// descending-sorted `x`. Returns −∞ outside `[0, len]`.
pub fn f_interp(h: f64, x: &[f64]) -> f64 {
    let p = x.len();
    if !(0.0..=p as f64).contains(&h) {
        return f64::NEG_INFINITY;
    }
    let q = (h.floor() as usize).min(p);
    let r = h - q as f64;
    let head: f64 = x[..q].iter().sum();
    if r > 0.0 {
        head + r * x[q.min(p - 1)]
    } else {
        head
    }
}

/// `min_ν Σ(x⁺_i + ν)₊ + Σ(x⁻_i − ν)₊ = Σ_{j ≤ m̲} (x̄_j)₊`.
pub fn phi_pair(split: &ClassSplitVector) -> f64 {
    split.bar().iter().map(|v| v.max(0.0)).sum()
}

/// `P_hi(γ, −x)` for the column whose class split is given: the maximum of
/// `u^T x` over `0 ≤ u ≤ 1` with equal class sums, each at least `γ/2`.
///
/// Returns +∞ when `γ` lies outside `[0, 2m̲]` (the set is empty).
pub fn p_hinge_neg(gamma: f64, split: &ClassSplitVector) -> f64 {
    let m_under = split.m_under();
    let gamma_max = 2.0 * m_under as f64;
    if !(gamma >= 0.0) || gamma > gamma_max * (1.0 + 1e-12) + 1e-12 {
        return f64::INFINITY;
    }
    let half = (gamma / 2.0).min(m_under as f64);
    let q = (half.floor() as usize).min(m_under);
    let r = half - q as f64;
    let bar = split.bar();
    let head: f64 = bar[..q].iter().sum();
    let tail: f64 = bar[q..].iter().map(|v| v.max(0.0)).sum();
    let partial = if q < m_under { r * (-bar[q]).max(0.0) } else { 0.0 };
    head - partial + tail
}

/// Objective values `V_j = (Σ_{i<j} z_i − (j−1) z_j)/(1 − z_j)` at every
/// negative breakpoint, `z` sorted descending, produced by the O(1)-per-step
/// recursion. Returned as `(j, V_j)` with 1-based `j`.
pub fn breakpoint_values(z: &[f64]) -> Vec<(usize, f64)> {
    let mut sorted: Vec<f64> = z.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let first_neg = match sorted.iter().position(|v| *v < 0.0) {
        Some(j) => j,
        None => return Vec::new(),
    };
    let head: f64 = sorted[..first_neg].iter().sum();
    let mut out = Vec::with_capacity(sorted.len() - first_neg);
    // 1-based index j = first_neg + 1
    let zj = sorted[first_neg];
    let mut v = (head - first_neg as f64 * zj) / (1.0 - zj);
    out.push((first_neg + 1, v));
    for idx in first_neg..sorted.len() - 1 {
        let (zj, zn) = (sorted[idx], sorted[idx + 1]);
        let j = (idx + 1) as f64;
        v = (1.0 - zj) / (1.0 - zn) * v - j * (zn - zj) / (1.0 - zn);
        out.push((idx + 2, v));
    }
    out
}

/// `G(z) = min_{0 ≤ κ ≤ 1} Σ (1 − κ + κ z_i)₊`.
pub fn g_breakpoint(z: &[f64]) -> f64 {
    let p = z.len() as f64;
    let s_plus: f64 = z.iter().filter(|v| **v > 0.0).sum();
    if s_plus == 0.0 && !z.iter().any(|v| *v > 0.0) {
        return 0.0;
    }
    let best = breakpoint_values(z)
        .into_iter()
        .map(|(_, v)| v)
        .fold(f64::INFINITY, f64::min);
    p.min(s_plus).min(best)
}

/// Upper bound `λ̄max` on the smallest penalty with `w = 0` optimal.
pub fn lambda_max_bar(inst: &SvmInstance) -> Result<f64> {
    let data = inst.data();
    let x = data.signed();
    let vals = (0..x.n_cols())
        .into_par_iter()
        .map(|k| {
            let split = ClassSplitVector::from_column(x.col(k), data.labels())?;
            let up: f64 = split.bar().iter().sum();
            let down: f64 = split.negated().bar().iter().sum();
            Ok(up.max(down))
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(vals.into_iter().fold(0.0, f64::max))
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SvmScreenOptions {
    pub certificates: bool,
}

/// Hinge-loss test given `λ0 ≥ λ` whose optimal value `γ0` is known.
///
/// For `λ ≤ λ0` this is the breakpoint form
/// `λ > (2λ0/γ0) max(G(γ0/(2λ0) x̄_k), G(γ0/(2λ0) x̲_k))`. For `λ > λ0` the
/// scaled point is not available and `γ0` itself (still a lower bound, since
/// the optimal value is nondecreasing in λ) is used with the closed form.
pub fn screen_svm(
    inst: &SvmInstance,
    lambda: f64,
    lambda0: f64,
    gamma0: f64,
    opts: SvmScreenOptions,
) -> Result<ScreeningReport> {
    if !(gamma0 > 0.0) {
        return Err(Error::InvalidArgument(format!("gamma0 must be > 0, got {gamma0}")));
    }
    let gamma_max = inst.gamma_max();
    if gamma0 > gamma_max * (1.0 + 1e-12) {
        return Err(Error::InvalidArgument(format!(
            "gamma0 {gamma0} exceeds gamma_max {gamma_max}"
        )));
    }
    if !(lambda > 0.0) || !(lambda0 >= 0.0) {
        return Err(Error::InvalidArgument("penalties must be positive".into()));
    }
    let data = inst.data();
    let x = data.signed();
    let scaled = lambda <= lambda0;
    let c = gamma0 / (2.0 * lambda0);
    let tests = (0..x.n_cols())
        .into_par_iter()
        .map(|k| {
            let split = ClassSplitVector::from_column(x.col(k), data.labels())?;
            let neg = split.negated();
            let t = if scaled {
                let up: Vec<f64> = split.bar().iter().map(|v| c * v).collect();
                let down: Vec<f64> = neg.bar().iter().map(|v| c * v).collect();
                g_breakpoint(&up).max(g_breakpoint(&down)) / c
            } else {
                p_hinge_neg(gamma0, &split).max(p_hinge_neg(gamma0, &neg))
            };
            Ok(t)
        })
        .collect::<Result<Vec<f64>>>()?;
    let gamma_used = if scaled { gamma0 * lambda / lambda0 } else { gamma0 };
    Ok(ScreeningReport::from_tests(lambda, gamma_used, tests, opts.certificates))
}

/// Default pair `(λ̄max, γmax)` for [`screen_svm`].
pub fn default_reference(inst: &SvmInstance) -> Result<(f64, f64)> {
    Ok((lambda_max_bar(inst)?, inst.gamma_max()))
}
