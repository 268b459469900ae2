//! Dynamic time warping distance and its month-swap permutation test.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::CohortError;
use crate::stats::SplitRng;

pub const DEFAULT_PERMUTATIONS: usize = 2000;

/// Standardizes with the sample mean and sample standard deviation. A
/// constant series maps to zeros.
pub fn z_score(x: &[f64]) -> Vec<f64> {
    let n = x.len() as f64;
    let mean = x.iter().sum::<f64>() / n;
    if x.len() < 2 {
        return vec![0.0; x.len()];
    }
    let var = x.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    let sd = var.sqrt();
    if sd > 0.0 {
        x.iter().map(|v| (v - mean) / sd).collect()
    } else {
        vec![0.0; x.len()]
    }
}

/// `D(i,j) = (a_i - b_j)^2 + min(D(i-1,j), D(i,j-1), D(i-1,j-1))` with
/// `D(0,0) = 0` and infinite borders; returns `D(n, m)`.
fn dtw_raw(a: &[f64], b: &[f64]) -> f64 {
    let m = b.len();
    let mut prev = vec![f64::INFINITY; m + 1];
    let mut cur = vec![f64::INFINITY; m + 1];
    prev[0] = 0.0;
    for &ai in a {
        cur[0] = f64::INFINITY;
        for j in 1..=m {
            let cost = (ai - b[j - 1]).powi(2);
            cur[j] = cost + prev[j].min(cur[j - 1]).min(prev[j - 1]);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[m]
}

pub fn dtw_distance(a: &[f64], b: &[f64], z_scored: bool) -> Result<f64, CohortError> {
    if a.is_empty() || b.is_empty() {
        return Err(CohortError::EmptySeries);
    }
    if z_scored {
        Ok(dtw_raw(&z_score(a), &z_score(b)))
    } else {
        Ok(dtw_raw(a, b))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DtwTestResult {
    pub d_obs: f64,
    pub permutations: usize,
    /// Permuted distances at least as large as `d_obs`.
    pub exceed: usize,
    pub p_value: f64,
    pub z_scored: bool,
}

/// Each replicate swaps the two values of every month independently with
/// probability 1/2; `p = (1 + #{d_b >= d_obs}) / (1 + B)`. Series are
/// standardized once, before any swapping. Replicate `b` draws from stream
/// `b` of `seed`.
pub fn dtw_permutation_test(
    a: &[f64],
    b: &[f64],
    permutations: usize,
    seed: u64,
    z_scored: bool,
) -> Result<DtwTestResult, CohortError> {
    if a.len() != b.len() {
        return Err(CohortError::LengthMismatch(a.len(), b.len()));
    }
    if a.len() < 3 {
        return Err(CohortError::TooShort { len: a.len(), needed: 3 });
    }
    if permutations == 0 {
        return Err(CohortError::Invalid("permutation count must be positive".into()));
    }
    let (a, b) = if z_scored {
        (z_score(a), z_score(b))
    } else {
        (a.to_vec(), b.to_vec())
    };
    let d_obs = dtw_raw(&a, &b);
    let root = SplitRng::new(seed);
    let mut pa = a.clone();
    let mut pb = b.clone();
    let mut exceed = 0;
    for rep in 0..permutations {
        let mut rng = root.stream(rep as u64);
        for t in 0..a.len() {
            if rng.random_bool(0.5) {
                pa[t] = b[t];
                pb[t] = a[t];
            } else {
                pa[t] = a[t];
                pb[t] = b[t];
            }
        }
        if dtw_raw(&pa, &pb) >= d_obs {
            exceed += 1;
        }
    }
    Ok(DtwTestResult {
        d_obs,
        permutations,
        exceed,
        p_value: (1 + exceed) as f64 / (1 + permutations) as f64,
        z_scored,
    })
}
