//! Per-lag Granger causality F-tests.

use serde::{Deserialize, Serialize};

use super::LeadLagError;
use crate::series::{align_pair, MetricSeries, Occupation, Source};
use crate::stats::{f_test_from_rss, ols_fit, ols_fit_dropping_collinear, ExogLags, LagSpec};

pub const DEFAULT_MAX_LAG: usize = 7;
pub const DEFAULT_GRANGER_ALPHA: f64 = 0.01;

/// Whether column `p` of a grid tests lags `1..=p` of `x` or lag `p` alone.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LagMode {
    #[default]
    UpTo,
    Exact,
}

/// F-test of "x does not Granger-cause y" at one lag order. The two RSS
/// values and degrees of freedom are kept so `(f, p_value)` can be
/// recomputed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrangerResult {
    pub target: String,
    pub occupation: Option<Occupation>,
    pub source: Option<Source>,
    pub lag: usize,
    pub mode: LagMode,
    pub n_obs: usize,
    pub rss_restricted: f64,
    pub rss_unrestricted: f64,
    pub f: f64,
    pub p_value: f64,
    pub df_num: usize,
    pub df_den: usize,
    pub significant: bool,
}

/// Effective sample size after losing `lag` initial observations.
pub fn effective_obs(len: usize, lag: usize) -> usize {
    len.saturating_sub(lag)
}

/// Residual dof of the unrestricted model, `T - 2p - 1` with `T` the
/// effective sample, for the up-to-`p` design.
pub fn granger_dof(len: usize, lag: usize, mode: LagMode) -> isize {
    let k = match mode {
        LagMode::UpTo => 2 * lag + 1,
        LagMode::Exact => lag + 2,
    };
    effective_obs(len, lag) as isize - k as isize
}

/// Restricted: `y_t` on an intercept and `y_{t-1..t-p}`. Unrestricted adds
/// `x_{t-1..t-p}` (or only `x_{t-p}` in exact mode). Exogenous columns
/// collinear with the rest are dropped; with none left the test has no
/// power and returns `F = 0, p = 1`.
pub fn granger_test(y: &[f64], x: &[f64], lag: usize, mode: LagMode, alpha: f64) -> Result<GrangerResult, LeadLagError> {
    if y.len() != x.len() {
        return Err(LeadLagError::LengthMismatch(y.len(), x.len()));
    }
    if lag == 0 {
        return Err(LeadLagError::Infeasible("lag must be at least 1".into()));
    }
    if granger_dof(y.len(), lag, mode) < 1 {
        return Err(LeadLagError::InsufficientData {
            len: y.len(),
            lag,
        });
    }
    let mean = y.iter().sum::<f64>() / y.len() as f64;
    if y.iter().all(|v| *v == mean) {
        return Err(LeadLagError::ConstantTarget);
    }
    let restricted_spec = LagSpec::ar(lag, 1);
    let unrestricted_spec = LagSpec {
        ar_lags: lag,
        exog: match mode {
            LagMode::UpTo => ExogLags::UpTo(lag),
            LagMode::Exact => ExogLags::Exactly(lag),
        },
        horizon: 1,
    };
    let origin = lag - 1;
    let (xr, target) = restricted_spec.design(y, None, origin);
    let (xu, target_u) = unrestricted_spec.design(y, Some(x), origin);
    debug_assert_eq!(target, target_u);
    let restricted = ols_fit(&xr, &target)?;
    let (unrestricted, kept) = ols_fit_dropping_collinear(&xu, &target)?;
    let q = kept.iter().filter(|&&j| j > lag).count();
    let (f, p_value, df_num, df_den) = if q == 0 {
        (0.0, 1.0, 0, unrestricted.dof())
    } else {
        let t = f_test_from_rss(restricted.rss, unrestricted.rss, q, unrestricted.dof())?;
        (t.f, t.p_value, t.df_num, t.df_den)
    };
    Ok(GrangerResult {
        target: String::new(),
        occupation: None,
        source: None,
        lag,
        mode,
        n_obs: target.len(),
        rss_restricted: restricted.rss,
        rss_unrestricted: unrestricted.rss,
        f,
        p_value,
        df_num,
        df_den,
        significant: p_value < alpha,
    })
}

/// Recomputes `(F, p)` from the stored RSS pair.
pub fn recompute(result: &GrangerResult) -> Result<(f64, f64), LeadLagError> {
    if result.df_num == 0 {
        return Ok((0.0, 1.0));
    }
    let t = f_test_from_rss(result.rss_restricted, result.rss_unrestricted, result.df_num, result.df_den)?;
    Ok((t.f, t.p_value))
}

/// One grid column: a result, or the reason the lag was skipped.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrangerCell {
    pub lag: usize,
    pub result: Option<GrangerResult>,
    pub skipped: Option<String>,
}

/// Granger tests at every lag `1..=max_lag` on the common block of `y`
/// and `x`.
pub fn granger_grid(
    y: &MetricSeries,
    x: &MetricSeries,
    max_lag: usize,
    alpha: f64,
    mode: LagMode,
) -> Result<Vec<GrangerCell>, LeadLagError> {
    let (_, yv, xv) = align_pair(y, x)?;
    Ok((1..=max_lag)
        .map(|lag| match granger_test(&yv, &xv, lag, mode, alpha) {
            Ok(mut r) => {
                r.target = y.metric.clone();
                r.occupation = y.occupation.clone();
                r.source = x.source;
                GrangerCell {
                    lag,
                    result: Some(r),
                    skipped: None,
                }
            }
            Err(e) => GrangerCell {
                lag,
                result: None,
                skipped: Some(e.to_string()),
            },
        })
        .collect())
}
