use serde::{Deserialize, Serialize};

use super::lagged::LagSpec;
use super::ols::ols_fit_dropping_collinear;
use super::StatsError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Ar,
    Ardl,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LagChoice {
    pub lag: usize,
    /// `(lag, bic)` for every candidate that was fitted.
    pub criteria: Vec<(usize, f64)>,
    /// Candidates that had no positive residual degrees of freedom.
    pub skipped: Vec<usize>,
}

/// `n ln(RSS/n) + k ln(n)`.
pub fn bic(rss: f64, n: usize, k: usize) -> f64 {
    let nf = n as f64;
    nf * (rss / nf).ln() + k as f64 * nf.ln()
}

/// Lag order by BIC for one-step models.
pub fn select_lag_bic(
    y: &[f64],
    x: Option<&[f64]>,
    candidates: &[usize],
    kind: ModelKind,
) -> Result<LagChoice, StatsError> {
    select_lag_bic_horizon(y, x, candidates, kind, 1)
}

/// Lag order by BIC for direct `horizon`-step models.
///
/// Every feasible candidate is fitted on the same sample, aligned at the
/// largest feasible candidate, so the criteria are comparable. Ties go to
/// the smaller lag.
pub fn select_lag_bic_horizon(
    y: &[f64],
    x: Option<&[f64]>,
    candidates: &[usize],
    kind: ModelKind,
    horizon: usize,
) -> Result<LagChoice, StatsError> {
    if kind == ModelKind::Ardl && x.is_none() {
        return Err(StatsError::MissingExogenous);
    }
    let spec_for = |p: usize| match kind {
        ModelKind::Ar => LagSpec::ar(p, horizon),
        ModelKind::Ardl => LagSpec::ardl(p, horizon),
    };
    let mut lags: Vec<usize> = candidates.iter().copied().filter(|&p| p > 0).collect();
    lags.sort_unstable();
    lags.dedup();

    let feasible = |p: usize| {
        let spec = spec_for(p);
        spec.usable(y.len(), spec.first_origin()) > spec.n_params()
    };
    let (fit_lags, skipped): (Vec<usize>, Vec<usize>) = lags.iter().partition(|&&p| feasible(p));
    let align = *fit_lags.last().ok_or(StatsError::NoFeasibleLag)? - 1;

    let mut criteria = Vec::with_capacity(fit_lags.len());
    let mut best: Option<(usize, f64)> = None;
    for &p in &fit_lags {
        let (design, target) = spec_for(p).design(y, x, align);
        let (fit, _) = ols_fit_dropping_collinear(&design, &target)?;
        let value = bic(fit.rss, fit.n, fit.k);
        criteria.push((p, value));
        match best {
            Some((_, b)) if !(value < b) => {}
            _ => best = Some((p, value)),
        }
    }
    let (lag, _) = best.ok_or(StatsError::NoFeasibleLag)?;
    Ok(LagChoice {
        lag,
        criteria,
        skipped,
    })
}
