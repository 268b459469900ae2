//! Ordinary least squares with classical inference.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::dist::{sf, Distribution};
use super::StatsError;

/// Singular values below this fraction of the largest one count as zero.
pub const RANK_TOLERANCE: f64 = 1e-10;

/// Column-major regressor stack with labels.
#[derive(Debug, Clone, PartialEq)]
pub struct DesignMatrix {
    rows: usize,
    labels: Vec<String>,
    columns: Vec<Vec<f64>>,
}

impl DesignMatrix {
    /// Empty design with `rows` observations and no columns.
    pub fn new(rows: usize) -> Self {
        DesignMatrix {
            rows,
            labels: Vec::new(),
            columns: Vec::new(),
        }
    }

    /// Design whose first column is the all-ones intercept.
    pub fn with_intercept(rows: usize) -> Self {
        DesignMatrix::new(rows).column("const", vec![1.0; rows])
    }

    /// Appends a column.
    ///
    /// Panics if `values.len()` differs from the row count.
    pub fn column(mut self, label: impl Into<String>, values: Vec<f64>) -> Self {
        self.push(label, values);
        self
    }

    pub fn push(&mut self, label: impl Into<String>, values: Vec<f64>) {
        assert_eq!(values.len(), self.rows, "column length must equal row count");
        self.labels.push(label.into());
        self.columns.push(values);
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn col(&self, j: usize) -> &[f64] {
        &self.columns[j]
    }

    pub fn row(&self, i: usize) -> Vec<f64> {
        self.columns.iter().map(|c| c[i]).collect()
    }

    /// Sub-design keeping the listed columns in the given order.
    pub fn select(&self, keep: &[usize]) -> DesignMatrix {
        DesignMatrix {
            rows: self.rows,
            labels: keep.iter().map(|&j| self.labels[j].clone()).collect(),
            columns: keep.iter().map(|&j| self.columns[j].clone()).collect(),
        }
    }

    pub fn to_matrix(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.rows, self.cols(), |i, j| self.columns[j][i])
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegressionFit {
    pub labels: Vec<String>,
    pub coefficients: Vec<f64>,
    pub std_errors: Vec<f64>,
    pub t_stats: Vec<f64>,
    pub p_values: Vec<f64>,
    pub residuals: Vec<f64>,
    pub rss: f64,
    pub n: usize,
    pub k: usize,
}

impl RegressionFit {
    pub fn dof(&self) -> usize {
        self.n - self.k
    }

    /// Linear prediction for one regressor row.
    pub fn predict(&self, row: &[f64]) -> f64 {
        debug_assert_eq!(row.len(), self.k);
        self.coefficients.iter().zip(row).map(|(b, x)| b * x).sum()
    }

    pub fn coefficient(&self, label: &str) -> Option<f64> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|i| self.coefficients[i])
    }
}

/// Least-squares fit via thin SVD.
///
/// Standard errors come from `s^2 (X'X)^{-1}` with `s^2 = RSS / (n - k)`;
/// p-values are two-sided under Student-t with `n - k` degrees of freedom.
pub fn ols_fit(x: &DesignMatrix, y: &[f64]) -> Result<RegressionFit, StatsError> {
    let n = x.rows();
    let k = x.cols();
    if y.len() != n {
        return Err(StatsError::DimensionMismatch {
            expected: n,
            actual: y.len(),
        });
    }
    if k == 0 || n <= k {
        return Err(StatsError::InsufficientObservations { n, k });
    }
    let xm = x.to_matrix();
    let svd = xm.clone().svd(true, true);
    let s = &svd.singular_values;
    let s_max = s.max();
    let s_min = s.min();
    if !(s_max > 0.0) || s_min <= RANK_TOLERANCE * s_max {
        return Err(StatsError::RankDeficient { k });
    }
    let u = svd.u.as_ref().expect("u requested");
    let v_t = svd.v_t.as_ref().expect("v_t requested");
    let yv = DVector::from_column_slice(y);

    let uty = u.transpose() * &yv;
    let scaled = DVector::from_fn(k, |i, _| uty[i] / s[i]);
    let beta = v_t.transpose() * scaled;

    let fitted = &xm * &beta;
    let residuals: Vec<f64> = y.iter().zip(fitted.iter()).map(|(a, b)| a - b).collect();
    let rss: f64 = residuals.iter().map(|e| e * e).sum();

    let dof = (n - k) as f64;
    let sigma2 = rss / dof;
    // diag((X'X)^{-1}) = sum_j V_ij^2 / s_j^2
    let std_errors: Vec<f64> = (0..k)
        .map(|i| {
            let var: f64 = (0..k).map(|j| (v_t[(j, i)] / s[j]).powi(2)).sum();
            (sigma2 * var).sqrt()
        })
        .collect();

    let coefficients: Vec<f64> = beta.iter().copied().collect();
    let mut t_stats = Vec::with_capacity(k);
    let mut p_values = Vec::with_capacity(k);
    for (b, se) in coefficients.iter().zip(&std_errors) {
        let t = if *se > 0.0 {
            b / se
        } else if *b == 0.0 {
            0.0
        } else {
            b.signum() * f64::INFINITY
        };
        let p = (2.0 * sf(Distribution::StudentT { df: dof }, t.abs())?).min(1.0);
        t_stats.push(t);
        p_values.push(p);
    }

    Ok(RegressionFit {
        labels: x.labels().to_vec(),
        coefficients,
        std_errors,
        t_stats,
        p_values,
        residuals,
        rss,
        n,
        k,
    })
}

/// True when the columns of `x` are linearly independent at [`RANK_TOLERANCE`].
pub fn has_full_column_rank(x: &DesignMatrix) -> bool {
    let k = x.cols();
    if k == 0 {
        return true;
    }
    if x.rows() < k {
        return false;
    }
    let s = x.to_matrix().singular_values();
    let s_max = s.max();
    s_max > 0.0 && s.min() > RANK_TOLERANCE * s_max
}

/// Greedy left-to-right column screen: a column is kept only if it raises
/// the rank of the columns kept before it.
pub fn independent_columns(x: &DesignMatrix) -> Vec<usize> {
    let mut kept: Vec<usize> = Vec::with_capacity(x.cols());
    for j in 0..x.cols() {
        kept.push(j);
        if !has_full_column_rank(&x.select(&kept)) {
            kept.pop();
        }
    }
    kept
}

/// Fits after dropping collinear columns. Returns the fit and the indices
/// of the columns of `x` that were kept.
pub fn ols_fit_dropping_collinear(
    x: &DesignMatrix,
    y: &[f64],
) -> Result<(RegressionFit, Vec<usize>), StatsError> {
    let kept = independent_columns(x);
    let fit = if kept.len() == x.cols() {
        ols_fit(x, y)?
    } else {
        ols_fit(&x.select(&kept), y)?
    };
    Ok((fit, kept))
}
