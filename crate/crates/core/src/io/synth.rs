//! Seeded synthetic regression and classification data.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::SparseColMatrix;

pub const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SynthSpec {
    pub m: usize,
    pub n: usize,
    /// Probability that an entry of X is stored; 1 gives a dense design.
    pub density: f64,
    /// Nonzeros of the planted coefficient vector.
    pub support: usize,
    /// Standard deviation of the additive response noise.
    pub noise: f64,
    pub seed: u64,
}

impl Default for SynthSpec {
    fn default() -> Self {
        Self {
            m: 50,
            n: 100,
            density: 1.0,
            support: 5,
            noise: 0.1,
            seed: DEFAULT_SEED,
        }
    }
}

/// Gaussian design, `y = X w + noise` with a random sparse `w`.
pub fn generate(spec: &SynthSpec) -> Result<(SparseColMatrix, Vec<f64>)> {
    if spec.m == 0 || spec.n == 0 {
        return Err(Error::InvalidArgument("m and n must be >= 1".into()));
    }
    if !(spec.density > 0.0 && spec.density <= 1.0) {
        return Err(Error::InvalidArgument(format!("density must be in (0, 1], got {}", spec.density)));
    }
    if !(spec.noise >= 0.0) {
        return Err(Error::InvalidArgument("noise must be >= 0".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut triplets = Vec::new();
    for k in 0..spec.n {
        for i in 0..spec.m {
            if spec.density >= 1.0 || rng.gen::<f64>() < spec.density {
                let v: f64 = rng.sample(StandardNormal);
                triplets.push((i, k, v));
            }
        }
    }
    let x = SparseColMatrix::from_triplets(spec.m, spec.n, triplets)?;
    let mut w = vec![0.0; spec.n];
    for _ in 0..spec.support.min(spec.n) {
        let k = rng.gen_range(0..spec.n);
        let sign = if rng.gen::<bool>() { 1.0 } else { -1.0 };
        w[k] = sign * (0.5 + rng.gen::<f64>());
    }
    let mut y = x.mat_vec(&w)?;
    for v in &mut y {
        let e: f64 = rng.sample(StandardNormal);
        *v += spec.noise * e;
    }
    Ok((x, y))
}

/// As [`generate`], with the response replaced by its sign. Both classes are
/// guaranteed: if the signs agree, the smallest response flips.
pub fn generate_classification(spec: &SynthSpec) -> Result<(SparseColMatrix, Vec<f64>)> {
    let (x, y) = generate(spec)?;
    let mut labels: Vec<f64> = y.iter().map(|v| if *v > 0.0 { 1.0 } else { -1.0 }).collect();
    if labels.len() >= 2 && labels.iter().all(|l| *l == labels[0]) {
        let pick = if labels[0] > 0.0 {
            (0..y.len()).min_by(|&a, &b| y[a].total_cmp(&y[b]))
        } else {
            (0..y.len()).max_by(|&a, &b| y[a].total_cmp(&y[b]))
        };
        if let Some(i) = pick {
            labels[i] = -labels[i];
        }
    }
    Ok((x, labels))
}
