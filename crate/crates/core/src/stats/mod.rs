//! Numerical engine shared by the cohort and lead-lag analyses: OLS with
//! classical inference, nested F-tests, distribution functions, Newey-West
//! long-run variance, BIC lag selection and seeded random streams.

pub mod bic;
pub mod dist;
pub mod ftest;
pub mod hac;
pub mod lagged;
pub mod ols;
pub mod rng;

use thiserror::Error;

pub use bic::{bic, select_lag_bic, select_lag_bic_horizon, LagChoice, ModelKind};
pub use dist::{cdf, normal_cdf, sf, Distribution};
pub use ftest::{f_test_from_rss, nested_f_test, FTest};
pub use hac::newey_west_lrv;
pub use lagged::{ExogLags, LagSpec};
pub use ols::{ols_fit, ols_fit_dropping_collinear, DesignMatrix, RegressionFit};
pub use rng::SplitRng;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StatsError {
    #[error("design matrix is rank deficient ({k} columns)")]
    RankDeficient { k: usize },
    #[error("need more observations than regressors (n = {n}, k = {k})")]
    InsufficientObservations { n: usize, k: usize },
    #[error("length mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("models are not nested: {0}")]
    NotNested(String),
    #[error("invalid degrees of freedom: {0}")]
    InvalidDof(String),
    #[error("series of length {len} too short, need at least {needed}")]
    SeriesTooShort { len: usize, needed: usize },
    #[error("no candidate lag leaves positive residual degrees of freedom")]
    NoFeasibleLag,
    #[error("ARDL lag selection needs an exogenous series")]
    MissingExogenous,
}
