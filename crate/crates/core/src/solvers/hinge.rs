//! Exact ℓ1-penalized hinge solver: the problem is a linear program, solved
//! by a dense primal simplex started from the all-slack basis `ξ = 1`.

use super::{check_lambda, SolveOptions};
use crate::error::{Error, Result};
use crate::instance::SvmInstance;
use crate::report::SolverResult;

const PIVOT_TOL: f64 = 1e-11;
const COST_TOL: f64 = 1e-11;
/// Degenerate pivots tolerated before switching to Bland's rule.
const DEGENERATE_STREAK: usize = 50;

struct Tableau {
    rows: usize,
    cols: usize,
    a: Vec<f64>,
    rhs: Vec<f64>,
    cost: Vec<f64>,
    reduced: Vec<f64>,
    basis: Vec<usize>,
}

impl Tableau {
    fn at(&self, i: usize, j: usize) -> f64 {
        self.a[i * self.cols + j]
    }

    fn entering(&self, bland: bool) -> Option<usize> {
        if bland {
            return (0..self.cols).find(|&j| self.reduced[j] < -COST_TOL);
        }
        let mut best = None;
        let mut best_val = -COST_TOL;
        for j in 0..self.cols {
            if self.reduced[j] < best_val {
                best_val = self.reduced[j];
                best = Some(j);
            }
        }
        best
    }

    fn leaving(&self, j: usize) -> Option<usize> {
        let mut best: Option<(usize, f64)> = None;
        for i in 0..self.rows {
            let aij = self.at(i, j);
            if aij > PIVOT_TOL {
                let ratio = self.rhs[i] / aij;
                best = match best {
                    None => Some((i, ratio)),
                    Some((bi, br)) => {
                        if ratio < br - 1e-14 || (ratio <= br + 1e-14 && self.basis[i] < self.basis[bi]) {
                            Some((i, ratio))
                        } else {
                            Some((bi, br))
                        }
                    }
                };
            }
        }
        best.map(|b| b.0)
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let cols = self.cols;
        let p = self.at(r, c);
        for j in 0..cols {
            self.a[r * cols + j] /= p;
        }
        self.rhs[r] /= p;
        self.a[r * cols + c] = 1.0;
        let pivot_row: Vec<f64> = self.a[r * cols..(r + 1) * cols].to_vec();
        for i in 0..self.rows {
            if i == r {
                continue;
            }
            let f = self.a[i * cols + c];
            if f != 0.0 {
                for j in 0..cols {
                    self.a[i * cols + j] -= f * pivot_row[j];
                }
                self.a[i * cols + c] = 0.0;
                self.rhs[i] -= f * self.rhs[r];
                if self.rhs[i] < 0.0 && self.rhs[i] > -1e-12 {
                    self.rhs[i] = 0.0;
                }
            }
        }
        let f = self.reduced[c];
        for j in 0..cols {
            self.reduced[j] -= f * pivot_row[j];
        }
        self.reduced[c] = 0.0;
        self.basis[r] = c;
    }
}

/// Solves `min Σ (1 − y_i(z_i^T w + v))₊ + λ‖w‖₁` exactly.
///
/// The reported gap compares the direct hinge objective with the value of
/// the simplex dual multipliers; `iterations` counts pivots.
pub fn solve_hinge(inst: &SvmInstance, lambda: f64, opts: &SolveOptions) -> Result<SolverResult> {
    check_lambda(lambda)?;
    let n = inst.n_cols();
    opts.validate(n)?;
    if opts.warm_w.is_some() {
        return Err(Error::InvalidArgument("the hinge solver does not take a warm start".into()));
    }
    let data = inst.data();
    let m = data.n_rows();
    let x = data.signed().to_dense_rows();
    let labels = data.labels();

    // columns: w+ (n), w- (n), v+, v-, ξ (m), s (m)
    let cols = 2 * n + 2 + 2 * m;
    let xi0 = 2 * n + 2;
    let mut a = vec![0.0; m * cols];
    for i in 0..m {
        let row = &mut a[i * cols..(i + 1) * cols];
        for k in 0..n {
            row[k] = x[i][k];
            row[n + k] = -x[i][k];
        }
        row[2 * n] = labels[i];
        row[2 * n + 1] = -labels[i];
        row[xi0 + i] = 1.0;
        row[xi0 + m + i] = -1.0;
    }
    let mut cost = vec![0.0; cols];
    cost[..2 * n].iter_mut().for_each(|c| *c = lambda);
    cost[xi0..xi0 + m].iter_mut().for_each(|c| *c = 1.0);
    // reduced costs for basis ξ: c_j − Σ_i a_ij
    let mut reduced = cost.clone();
    for i in 0..m {
        for j in 0..cols {
            reduced[j] -= a[i * cols + j];
        }
    }
    let mut tab = Tableau {
        rows: m,
        cols,
        a,
        rhs: vec![1.0; m],
        cost,
        reduced,
        basis: (xi0..xi0 + m).collect(),
    };

    let mut pivots = 0;
    let mut streak = 0;
    let mut optimal = false;
    while pivots < opts.max_iters {
        let Some(c) = tab.entering(streak >= DEGENERATE_STREAK) else {
            optimal = true;
            break;
        };
        let Some(r) = tab.leaving(c) else {
            return Err(Error::Numerical("hinge LP reported unbounded".into()));
        };
        if tab.rhs[r] <= 1e-14 {
            streak += 1;
        } else {
            streak = 0;
        }
        tab.pivot(r, c);
        pivots += 1;
    }

    let mut values = vec![0.0; cols];
    for (i, &b) in tab.basis.iter().enumerate() {
        values[b] = tab.rhs[i].max(0.0);
    }
    let w: Vec<f64> = (0..n).map(|k| values[k] - values[n + k]).collect();
    let v = values[2 * n] - values[2 * n + 1];
    let objective = inst.objective(lambda, &w, v)?;
    // π_i = c_ξi − reduced(ξ_i); the dual objective is Σ π_i
    let dual: f64 = (0..m).map(|i| tab.cost[xi0 + i] - tab.reduced[xi0 + i]).sum();
    let gap = if optimal {
        (objective - dual).max(0.0)
    } else {
        f64::INFINITY
    };
    let converged = optimal && gap <= opts.tol * objective.max(1.0);
    Ok(SolverResult {
        w,
        intercept: v,
        objective,
        duality_gap: gap,
        iterations: pivots,
        coordinate_updates: pivots,
        converged,
    })
}
