//! Problem data for the three penalized losses, plus the LASSO warm start.

use crate::error::{Error, Result};
use crate::matrix::{dot, norm_inf, CenteredMatrix, Design, SparseColMatrix};

/// Which LASSO-family objective the instance describes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LassoVariant {
    /// `½‖Xw − y‖² + λ‖w‖₁`
    Plain,
    /// `½‖Xw + ν1 − y‖² + λ‖w‖₁` with a free intercept ν.
    Intercept,
    /// `½‖Xw − y‖² + λ‖w‖₁ + ½ε‖w‖²`
    Elastic(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct LassoInstance {
    design: Design,
    y: Vec<f64>,
    variant: LassoVariant,
}

impl LassoInstance {
    pub fn new(design: impl Into<Design>, y: Vec<f64>, variant: LassoVariant) -> Result<Self> {
        let design = design.into();
        if y.len() != design.n_rows() {
            return Err(Error::Dimension(format!(
                "response length {} != n_rows {}",
                y.len(),
                design.n_rows()
            )));
        }
        if y.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidData("response has non-finite entries".into()));
        }
        if let LassoVariant::Elastic(eps) = variant {
            if !(eps >= 0.0) || !eps.is_finite() {
                return Err(Error::InvalidArgument(format!("elastic-net weight {eps} must be >= 0")));
            }
        }
        Ok(Self { design, y, variant })
    }

    pub fn plain(x: SparseColMatrix, y: Vec<f64>) -> Result<Self> {
        Self::new(x, y, LassoVariant::Plain)
    }

    pub fn design(&self) -> &Design {
        &self.design
    }

    pub fn y(&self) -> &[f64] {
        &self.y
    }

    pub fn variant(&self) -> LassoVariant {
        self.variant
    }

    pub fn n_rows(&self) -> usize {
        self.design.n_rows()
    }

    pub fn n_cols(&self) -> usize {
        self.design.n_cols()
    }

    /// Residual `Xw − y`.
    pub fn residual(&self, w: &[f64]) -> Result<Vec<f64>> {
        let mut r = self.design.mat_vec(w)?;
        r.iter_mut().zip(&self.y).for_each(|(r, y)| *r -= y);
        Ok(r)
    }

    /// Plain LASSO objective `½‖Xw − y‖² + λ‖w‖₁` (ignores the variant).
    pub fn objective(&self, lambda: f64, w: &[f64]) -> Result<f64> {
        let r = self.residual(w)?;
        Ok(0.5 * dot(&r, &r) + lambda * crate::matrix::norm1(w))
    }

    /// Restriction to a subset of features, same response.
    pub fn select_features(&self, cols: &[usize]) -> LassoInstance {
        LassoInstance {
            design: self.design.select_columns(cols),
            y: self.y.clone(),
            variant: self.variant,
        }
    }

    /// Removes the free intercept: columns and response are mean-centered.
    /// The centered design stays implicit so sparsity is preserved.
    pub fn center(&self) -> Result<LassoInstance> {
        if self.variant != LassoVariant::Intercept {
            return Err(Error::InvalidArgument("center requires the intercept variant".into()));
        }
        let x = match &self.design {
            Design::Sparse(x) => x.clone(),
            Design::Centered(_) => {
                return Err(Error::InvalidArgument("design is already centered".into()))
            }
        };
        let m = self.y.len().max(1) as f64;
        let y_mean = self.y.iter().sum::<f64>() / m;
        let y = self.y.iter().map(|v| v - y_mean).collect();
        Ok(LassoInstance {
            design: Design::Centered(CenteredMatrix::new(x)),
            y,
            variant: LassoVariant::Plain,
        })
    }

    /// Intercept `ν = ȳ − x̄^T w` that is optimal for a given `w` in the
    /// intercept problem. Call on the original (uncentered) instance.
    pub fn intercept_for(&self, w: &[f64]) -> Result<f64> {
        if w.len() != self.n_cols() {
            return Err(Error::Dimension("weight length != n_cols".into()));
        }
        let m = self.y.len().max(1) as f64;
        let y_mean = self.y.iter().sum::<f64>() / m;
        let xw_mean = self.design.mat_vec(w)?.iter().sum::<f64>() / m;
        Ok(y_mean - xw_mean)
    }

    /// Rewrites the elastic net as a plain LASSO on `[X; √ε I]`, `[y; 0]`.
    pub fn elasticize(&self) -> Result<LassoInstance> {
        let eps = match self.variant {
            LassoVariant::Elastic(eps) if eps > 0.0 => eps,
            LassoVariant::Elastic(eps) => {
                return Err(Error::InvalidArgument(format!(
                    "elastic-net weight must be > 0, got {eps}"
                )))
            }
            _ => return Err(Error::InvalidArgument("elasticize requires the elastic variant".into())),
        };
        let x = match &self.design {
            Design::Sparse(x) => x,
            Design::Centered(_) => {
                return Err(Error::InvalidArgument("elasticize expects an uncentered design".into()))
            }
        };
        let (m, n) = (x.n_rows(), x.n_cols());
        let s = eps.sqrt();
        let triplets = (0..n)
            .flat_map(|k| x.col(k).iter().map(move |(i, v)| (i, k, v)))
            .chain((0..n).map(|k| (m + k, k, s)));
        let x_el = SparseColMatrix::from_triplets(m + n, n, triplets)?;
        let mut y = self.y.clone();
        y.resize(m + n, 0.0);
        Ok(LassoInstance {
            design: Design::Sparse(x_el),
            y,
            variant: LassoVariant::Plain,
        })
    }
}

/// Labeled data shared by the hinge and logistic problems.
///
/// `signed` holds the screening columns `x_k = y ∘ z_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledData {
    z: SparseColMatrix,
    signed: SparseColMatrix,
    labels: Vec<f64>,
    m_plus: usize,
    m_minus: usize,
}

impl LabeledData {
    pub fn new(z: SparseColMatrix, labels: Vec<f64>) -> Result<Self> {
        if labels.len() != z.n_rows() {
            return Err(Error::Dimension(format!(
                "label count {} != n_rows {}",
                labels.len(),
                z.n_rows()
            )));
        }
        if let Some(l) = labels.iter().find(|l| **l != 1.0 && **l != -1.0) {
            return Err(Error::InvalidData(format!("label {l} is not ±1")));
        }
        let m_plus = labels.iter().filter(|l| **l > 0.0).count();
        let m_minus = labels.len() - m_plus;
        if m_plus == 0 || m_minus == 0 {
            return Err(Error::InvalidData("both classes must be present".into()));
        }
        let signed = z.scale_rows(&labels)?;
        Ok(Self {
            z,
            signed,
            labels,
            m_plus,
            m_minus,
        })
    }

    pub fn z(&self) -> &SparseColMatrix {
        &self.z
    }

    /// Matrix whose column k is `y ∘ z_k`.
    pub fn signed(&self) -> &SparseColMatrix {
        &self.signed
    }

    pub fn labels(&self) -> &[f64] {
        &self.labels
    }

    pub fn m_plus(&self) -> usize {
        self.m_plus
    }

    pub fn m_minus(&self) -> usize {
        self.m_minus
    }

    pub fn n_rows(&self) -> usize {
        self.z.n_rows()
    }

    pub fn n_cols(&self) -> usize {
        self.z.n_cols()
    }

    /// Margins `y_i (z_i^T w + v)`.
    pub fn margins(&self, w: &[f64], v: f64) -> Result<Vec<f64>> {
        let mut s = self.signed.mat_vec(w)?;
        s.iter_mut().zip(&self.labels).for_each(|(s, y)| *s += y * v);
        Ok(s)
    }

    pub fn select_features(&self, cols: &[usize]) -> LabeledData {
        LabeledData {
            z: self.z.select_columns(cols),
            signed: self.signed.select_columns(cols),
            labels: self.labels.clone(),
            m_plus: self.m_plus,
            m_minus: self.m_minus,
        }
    }
}

/// ℓ1-penalized hinge-loss classification data.
#[derive(Debug, Clone, PartialEq)]
pub struct SvmInstance {
    data: LabeledData,
}

impl SvmInstance {
    pub fn new(z: SparseColMatrix, labels: Vec<f64>) -> Result<Self> {
        Ok(Self {
            data: LabeledData::new(z, labels)?,
        })
    }

    pub fn data(&self) -> &LabeledData {
        &self.data
    }

    pub fn m_under(&self) -> usize {
        self.data.m_plus.min(self.data.m_minus)
    }

    /// Optimal value at `w = 0`: `2 min(m₊, m₋)`.
    pub fn gamma_max(&self) -> f64 {
        2.0 * self.m_under() as f64
    }

    pub fn n_cols(&self) -> usize {
        self.data.n_cols()
    }

    /// `Σ (1 − y_i(z_i^T w + v))₊ + λ‖w‖₁`.
    pub fn objective(&self, lambda: f64, w: &[f64], v: f64) -> Result<f64> {
        let s = self.data.margins(w, v)?;
        Ok(s.iter().map(|s| (1.0 - s).max(0.0)).sum::<f64>() + lambda * crate::matrix::norm1(w))
    }
}

/// ℓ1-penalized logistic regression data.
#[derive(Debug, Clone, PartialEq)]
pub struct LogRegInstance {
    data: LabeledData,
}

impl LogRegInstance {
    pub fn new(z: SparseColMatrix, labels: Vec<f64>) -> Result<Self> {
        Ok(Self {
            data: LabeledData::new(z, labels)?,
        })
    }

    pub fn data(&self) -> &LabeledData {
        &self.data
    }

    pub fn n_cols(&self) -> usize {
        self.data.n_cols()
    }

    /// `Σ log(1 + exp(−y_i(z_i^T w + v))) + λ‖w‖₁`.
    pub fn objective(&self, lambda: f64, w: &[f64], v: f64) -> Result<f64> {
        let s = self.data.margins(w, v)?;
        Ok(s.iter().map(|&s| crate::safe_logreg::flog(s)).sum::<f64>()
            + lambda * crate::matrix::norm1(w))
    }
}

/// A solved LASSO point `(λ0, w0, θ0 = Xw0 − y)` used to tighten screening.
#[derive(Debug, Clone, PartialEq)]
pub struct WarmStart {
    lambda0: f64,
    w0: Vec<f64>,
    theta0: Vec<f64>,
    gap0: f64,
}

impl WarmStart {
    /// Checks `θ0 = Xw0 − y` (relative 1e-10) and dual feasibility at `λ0`.
    pub fn new(inst: &LassoInstance, lambda0: f64, w0: Vec<f64>, theta0: Vec<f64>) -> Result<Self> {
        if !(lambda0 > 0.0) || !lambda0.is_finite() {
            return Err(Error::InvalidArgument(format!("lambda0 must be > 0, got {lambda0}")));
        }
        if theta0.len() != inst.n_rows() {
            return Err(Error::Dimension("theta0 length != n_rows".into()));
        }
        let r = inst.residual(&w0)?;
        let scale = 1.0 + norm_inf(&r).max(norm_inf(inst.y()));
        if r.iter().zip(&theta0).any(|(a, b)| (a - b).abs() > 1e-10 * scale) {
            return Err(Error::InvalidArgument("theta0 != X w0 - y".into()));
        }
        let xt_theta = inst.design().tr_mat_vec(&theta0);
        let corr = norm_inf(&xt_theta);
        if corr > lambda0 * (1.0 + 1e-10) {
            return Err(Error::InvalidArgument(format!(
                "theta0 infeasible at lambda0: ‖X^T θ0‖∞ = {corr:e} > {lambda0:e}"
            )));
        }
        // P(w0) − G(θ0) at λ0 reduces to λ0‖w0‖₁ + w0^T X^T θ0
        let raw_gap = lambda0 * crate::matrix::norm1(&w0) + crate::matrix::dot(&w0, &xt_theta);
        let gap0 = raw_gap.max(0.0) + 1e-14 * crate::matrix::norm_sq(inst.y());
        Ok(Self { lambda0, w0, theta0, gap0 })
    }

    /// `w0 = 0`, `θ0 = −y`, `λ0 = λmax`.
    pub fn default_for(inst: &LassoInstance) -> Self {
        let lambda0 = crate::safe_lasso::lambda_max(inst).max(f64::MIN_POSITIVE);
        Self {
            lambda0,
            w0: vec![0.0; inst.n_cols()],
            theta0: inst.y().iter().map(|v| -v).collect(),
            gap0: 0.0,
        }
    }

    /// Warm start from an (approximately) optimal `w0` at `lambda`. `λ0` is
    /// raised to `‖X^T θ0‖∞` when the inexact residual overshoots `lambda`.
    pub fn from_solution(inst: &LassoInstance, lambda: f64, w0: Vec<f64>) -> Result<Self> {
        let theta0 = inst.residual(&w0)?;
        let corr = norm_inf(&inst.design().tr_mat_vec(&theta0));
        Self::new(inst, lambda.max(corr), w0, theta0)
    }

    pub fn lambda0(&self) -> f64 {
        self.lambda0
    }

    pub fn w0(&self) -> &[f64] {
        &self.w0
    }

    pub fn theta0(&self) -> &[f64] {
        &self.theta0
    }

    /// Primal-dual gap of `(w0, θ0)` at `λ0`, padded for round-off; zero for
    /// the default start, whose dual point is exact.
    pub fn gap0(&self) -> f64 {
        self.gap0
    }
}
