//! Instance generators and brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub mod suites;

use safescreen::safe_lasso::ColumnStats;
use safescreen::safe_logreg::{flog, flog_conj};
use safescreen::{LassoInstance, SparseColMatrix};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn normal(rng: &mut ChaCha8Rng) -> f64 {
    rng.sample(StandardNormal)
}

/// Gaussian entries, each stored with probability `density`.
pub fn random_matrix(rng: &mut ChaCha8Rng, m: usize, n: usize, density: f64) -> SparseColMatrix {
    let mut trip = Vec::new();
    for k in 0..n {
        for i in 0..m {
            if density >= 1.0 || rng.gen::<f64>() < density {
                trip.push((i, k, normal(rng)));
            }
        }
    }
    SparseColMatrix::from_triplets(m, n, trip).unwrap()
}

pub fn random_vec(rng: &mut ChaCha8Rng, len: usize) -> Vec<f64> {
    (0..len).map(|_| normal(rng)).collect()
}

/// Response with a planted sparse signal plus noise.
pub fn random_lasso(rng: &mut ChaCha8Rng, m: usize, n: usize, density: f64) -> LassoInstance {
    let x = random_matrix(rng, m, n, density);
    let mut w = vec![0.0; n];
    for _ in 0..(n / 10).max(1) {
        w[rng.gen_range(0..n)] = normal(rng);
    }
    let mut y = x.mat_vec(&w).unwrap();
    for v in &mut y {
        *v += 0.5 * normal(rng);
    }
    if y.iter().all(|v| *v == 0.0) {
        y[0] = 1.0;
    }
    LassoInstance::plain(x, y).unwrap()
}

/// ±1 labels with both classes present.
pub fn random_labels(rng: &mut ChaCha8Rng, m: usize) -> Vec<f64> {
    assert!(m >= 2);
    let mut l: Vec<f64> = (0..m).map(|_| if rng.gen::<bool>() { 1.0 } else { -1.0 }).collect();
    l[0] = 1.0;
    l[1] = -1.0;
    l
}

/// Labels correlated with a planted linear score, so the problems are not pure noise.
pub fn planted_labels(rng: &mut ChaCha8Rng, z: &SparseColMatrix) -> Vec<f64> {
    let n = z.n_cols();
    let mut w = vec![0.0; n];
    for _ in 0..(n / 4).max(1) {
        w[rng.gen_range(0..n)] = normal(rng);
    }
    let s = z.mat_vec(&w).unwrap();
    let mut l: Vec<f64> = s.iter().map(|v| if v + 0.3 * normal(rng) > 0.0 { 1.0 } else { -1.0 }).collect();
    if l.iter().all(|v| *v == l[0]) {
        l[0] = -l[0];
    }
    l
}

pub fn close(a: f64, b: f64, tol: f64, scale: f64) -> bool {
    (a - b).abs() <= tol * scale.max(1.0)
}

/// `max {u^T x : 0 ≤ u ≤ 1, 1^T u = h}` by enumerating LP vertices: a set of
/// `⌊h⌋` ones plus at most one fractional entry.
pub fn lp_top_sum(h: f64, x: &[f64]) -> f64 {
    let p = x.len();
    if h < 0.0 || h > p as f64 {
        return f64::NEG_INFINITY;
    }
    let q = h.floor() as usize;
    let r = h - q as f64;
    let mut best = f64::NEG_INFINITY;
    for mask in 0u32..(1 << p) {
        if mask.count_ones() as usize != q {
            continue;
        }
        let base: f64 = (0..p).filter(|i| mask & (1 << i) != 0).map(|i| x[i]).sum();
        if r == 0.0 {
            best = best.max(base);
        } else {
            for j in (0..p).filter(|j| mask & (1 << j) == 0) {
                best = best.max(base + r * x[j]);
            }
        }
    }
    best
}

/// `min_ν Σ(x⁺_i + ν)₊ + Σ(x⁻_i − ν)₊` over the kinks `{−x⁺_i} ∪ {x⁻_i}`.
pub fn phi_pair_kinks(plus: &[f64], minus: &[f64]) -> f64 {
    let eval = |nu: f64| -> f64 {
        plus.iter().map(|x| (x + nu).max(0.0)).sum::<f64>() + minus.iter().map(|x| (x - nu).max(0.0)).sum::<f64>()
    };
    plus.iter()
        .map(|x| -x)
        .chain(minus.iter().copied())
        .map(eval)
        .fold(f64::INFINITY, f64::min)
}

/// `max {u^T x : u ∈ [0,1]^m, Σ_{+} u = Σ_{−} u ≥ γ/2}`: for a common class
/// sum `t` the best value is the sum of the two top-`t` sums, which is
/// concave and piecewise linear in `t` with kinks at the integers.
pub fn p_hinge_enum(gamma: f64, plus: &[f64], minus: &[f64]) -> f64 {
    let cap = plus.len().min(minus.len()) as f64;
    let lo = gamma / 2.0;
    if lo > cap {
        return f64::INFINITY;
    }
    let mut ts = vec![lo, cap];
    let mut t = lo.ceil();
    while t <= cap {
        ts.push(t);
        t += 1.0;
    }
    ts.into_iter()
        .map(|t| lp_top_sum(t, plus) + lp_top_sum(t, minus))
        .fold(f64::NEG_INFINITY, f64::max)
}

fn g_objective(kappa: f64, z: &[f64]) -> f64 {
    z.iter().map(|zi| (1.0 - kappa + kappa * zi).max(0.0)).sum()
}

/// `min_{0≤κ≤1} Σ(1 − κ + κ z_i)₊` over the kinks `{0, 1} ∪ {1/(1 − z_j) : z_j < 0}`.
pub fn g_kinks(z: &[f64]) -> f64 {
    let mut best = g_objective(0.0, z).min(g_objective(1.0, z));
    for &zj in z.iter().filter(|v| **v < 0.0) {
        best = best.min(g_objective(1.0 / (1.0 - zj), z));
    }
    best
}

/// Same minimum on a uniform grid of `points` values of κ.
pub fn g_grid(z: &[f64], points: usize) -> f64 {
    (0..=points)
        .map(|i| g_objective(i as f64 / points as f64, z))
        .fold(f64::INFINITY, f64::min)
}

/// `V_j = (Σ_{i<j} z_i − (j−1) z_j)/(1 − z_j)` for 1-based `j`, `z` sorted descending.
pub fn v_direct(z_sorted: &[f64], j: usize) -> f64 {
    let head: f64 = z_sorted[..j - 1].iter().sum();
    let zj = z_sorted[j - 1];
    (head - (j - 1) as f64 * zj) / (1.0 - zj)
}

/// Golden-section minimum of a convex function on `[a, b]`.
pub fn golden_min(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, iters: usize) -> (f64, f64) {
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..iters {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
    }
    let candidates = [(a, f(a)), (b, f(b)), (c, fc), (d, fd)];
    candidates.into_iter().fold((a, f64::INFINITY), |acc, p| if p.1 < acc.1 { p } else { acc })
}

/// `max θ^T x` over `{‖θ + y‖ ≤ D} ∩ {g^T(θ + y) ≥ h‖g‖}` through the dual
/// `min_{μ ≥ 0} −y^T x + D‖x + μg‖ − μ h ‖g‖`, solved numerically from the
/// raw vectors. `D² = ‖y‖² − 2γ`, `g = θ0 + y`, and `h` is pulled back from
/// `‖g‖` by the warm-start gap.
pub fn lasso_p_lagrangian(gamma: f64, gap0: f64, halfspace: bool, x: &[f64], y: &[f64], theta0: &[f64]) -> f64 {
    let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(p, q)| p * q).sum::<f64>();
    let g: Vec<f64> = theta0.iter().zip(y).map(|(t, v)| t + v).collect();
    let gn = dot(&g, &g).sqrt();
    let yx = dot(y, x);
    let d = (dot(y, y) - 2.0 * gamma).max(0.0).sqrt();
    if !halfspace {
        return -yx + d * dot(x, x).sqrt();
    }
    let radius = (2.0 * gap0).sqrt();
    let h = gn - radius * (d + 2.0 * gn) / gn;
    let f = |mu: f64| -> f64 {
        let v: Vec<f64> = x.iter().zip(&g).map(|(a, b)| a + mu * b).collect();
        -yx + d * dot(&v, &v).sqrt() - mu * h * gn
    };
    // the slope at infinity is (D − h)‖g‖ ≥ 0; grow the bracket until f rises
    let mut hi = 1.0;
    while f(2.0 * hi) < f(hi) && hi < 1e12 {
        hi *= 2.0;
    }
    golden_min(f, 0.0, 2.0 * hi, 300).1
}

/// Membership in the set of [`lasso_p_lagrangian`].
pub fn lasso_set_contains(gamma: f64, gap0: f64, halfspace: bool, theta: &[f64], y: &[f64], theta0: &[f64]) -> bool {
    let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(p, q)| p * q).sum::<f64>();
    let shifted: Vec<f64> = theta.iter().zip(y).map(|(t, v)| t + v).collect();
    let d = (dot(y, y) - 2.0 * gamma).max(0.0).sqrt();
    if dot(&shifted, &shifted).sqrt() > d {
        return false;
    }
    if !halfspace {
        return true;
    }
    let g: Vec<f64> = theta0.iter().zip(y).map(|(t, v)| t + v).collect();
    let gn = dot(&g, &g).sqrt();
    let h = gn - (2.0 * gap0).sqrt() * (d + 2.0 * gn) / gn;
    dot(&g, &shifted) >= h * gn
}

pub fn column_stats(x: &[f64], theta0: &[f64], y: &[f64]) -> ColumnStats {
    ColumnStats::from_dense(x, theta0, y)
}

/// Fixed-ν logistic bound `min_{μ>0} −γμ + μ Σ f_log(c_i/μ)` on a log grid
/// refined by golden section around the best grid point.
pub fn p_log_mu_grid(gamma: f64, c: &[f64]) -> f64 {
    let f = |mu: f64| mu * (c.iter().map(|ci| flog(ci / mu)).sum::<f64>() - gamma);
    let f0: f64 = c.iter().map(|ci| (-ci).max(0.0)).sum();
    let grid: Vec<f64> = (0..=4000).map(|i| 10f64.powf(-8.0 + 12.0 * i as f64 / 4000.0)).collect();
    let (i_best, _) = grid
        .iter()
        .enumerate()
        .map(|(i, &mu)| (i, f(mu)))
        .fold((0, f64::INFINITY), |acc, p| if p.1 < acc.1 { p } else { acc });
    let lo = grid[i_best.saturating_sub(1)];
    let hi = grid[(i_best + 1).min(grid.len() - 1)];
    let refined = golden_min(f, lo, hi, 200).1;
    refined.min(f0)
}

/// `P_log(γ, x)` for one positive and one negative sample, from the dual
/// side: `θ1 = θ2 = t`, `−2 f*(t) ≥ γ`, so the maximum of `t (x1 + x2)` sits
/// at an end of the feasible interval around `t = −½`.
pub fn p_log_two_samples(gamma: f64, x1: f64, x2: f64) -> f64 {
    let feasible = |t: f64| -2.0 * flog_conj(t) >= gamma;
    assert!(feasible(-0.5));
    let edge = |mut inside: f64, mut outside: f64| {
        for _ in 0..200 {
            let mid = 0.5 * (inside + outside);
            if feasible(mid) {
                inside = mid;
            } else {
                outside = mid;
            }
        }
        inside
    };
    let left = if feasible(-1.0) { -1.0 } else { edge(-0.5, -1.0) };
    let right = if feasible(0.0) { 0.0 } else { edge(-0.5, 0.0) };
    let s = x1 + x2;
    (left * s).max(right * s)
}

pub fn sorted_desc(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(|a, b| b.total_cmp(a));
    v
}
