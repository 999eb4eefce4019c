use crate::error::{Error, Result};
use crate::instance::LassoInstance;
use crate::matrix::norm_sq;

/// Correlation factor of the KKT rule.
pub const KKT_FACTOR: f64 = 0.9999;

/// Zeroes `w_k` whenever `|x_k^T(Xw − y)| ≤ 0.9999·λ`.
pub fn kkt_threshold(w: &[f64], inst: &LassoInstance, lambda: f64) -> Result<Vec<f64>> {
    let r = inst.residual(w)?;
    let corr = inst.design().tr_mat_vec(&r);
    Ok(w.iter()
        .zip(&corr)
        .map(|(&wk, c)| if c.abs() <= KKT_FACTOR * lambda { 0.0 } else { wk })
        .collect())
}

/// Zeroing order: nonzero entries by ascending magnitude (index breaks ties).
fn zeroing_order(w: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..w.len()).filter(|&k| w[k] != 0.0).collect();
    order.sort_by(|&a, &b| w[a].abs().total_cmp(&w[b].abs()).then(a.cmp(&b)));
    order
}

/// Incrementally maintained `C(τ) = ½‖Xδ‖² + δ^T X^T(Xw − y)` after zeroing
/// each successive entry of [`zeroing_order`]; entry `j` is the value once
/// `j + 1` entries are zeroed.
pub fn threshold_c_trace(w: &[f64], inst: &LassoInstance) -> Result<Vec<(usize, f64)>> {
    let r = inst.residual(w)?;
    let corr = inst.design().tr_mat_vec(&r);
    let mut x_delta = vec![0.0; inst.n_rows()];
    let mut cross = 0.0;
    let mut out = Vec::new();
    for k in zeroing_order(w) {
        inst.design().col_axpy(k, -w[k], &mut x_delta);
        cross -= w[k] * corr[k];
        out.push((k, 0.5 * norm_sq(&x_delta) + cross));
    }
    Ok(out)
}

/// Zeroes the largest magnitude prefix `|w_k| ≤ τ` whose objective increase
/// `C(τ)` stays within `κ·P(w)`, `κ = (1+αε)/(1+ε) − 1`.
///
/// When `w` is `ε`-accurate in relative terms, the result is `αε`-accurate.
pub fn tr_threshold(w: &[f64], inst: &LassoInstance, lambda: f64, eps: f64, alpha: f64) -> Result<Vec<f64>> {
    if !(alpha > 1.0) {
        return Err(Error::InvalidArgument(format!("alpha must be > 1, got {alpha}")));
    }
    if !(eps >= 0.0) || !eps.is_finite() {
        return Err(Error::InvalidArgument(format!("eps must be finite and >= 0, got {eps}")));
    }
    let kappa = (1.0 + alpha * eps) / (1.0 + eps) - 1.0;
    let budget = kappa * inst.objective(lambda, w)?;
    let order = zeroing_order(w);
    let trace = threshold_c_trace(w, inst)?;
    let mut best = 0;
    for j in 0..trace.len() {
        // only whole tie groups correspond to a threshold τ
        let group_end = j + 1 == order.len() || w[order[j + 1]].abs() != w[order[j]].abs();
        if group_end && trace[j].1 <= budget {
            best = j + 1;
        }
    }
    let mut out = w.to_vec();
    for &k in &order[..best] {
        out[k] = 0.0;
    }
    Ok(out)
}
